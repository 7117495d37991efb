#include "fracns/trajectory.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fracns/dyadic.h"
#include "fracns/errors.h"
#include "fracns/norms.h"
#include "fracns/operators.h"

namespace fracns {

void NormTrajectory::append(double t,
                            const std::vector<std::pair<std::string, double>>& row) {
    if (!times.empty() && t <= times.back())
        throw NonMonotoneTime("trajectory rows must have strictly increasing times");
    if (names.empty()) {
        for (const auto& [name, value] : row) {
            names.push_back(name);
            series.emplace(name, std::vector<double>{});
        }
        if (series.size() != row.size())
            throw InvalidConfig("trajectory row has duplicate column names");
    } else {
        if (row.size() != names.size())
            throw InvalidConfig("trajectory row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i].first != names[i])
                throw InvalidConfig("trajectory row columns do not match the header");
    }
    times.push_back(t);
    for (const auto& [name, value] : row) series[name].push_back(value);
}

const std::vector<double>& NormTrajectory::values(const std::string& name) const {
    auto it = series.find(name);
    if (it == series.end()) throw InvalidConfig("trajectory has no series named " + name);
    return it->second;
}

std::string s1_label(double s1) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "lam_%g", s1);
    return buf;
}

void record(const State& state, double t, const FunctionalConfig& cfg,
            const PhysParams& params, const std::vector<double>& s1_list,
            NormTrajectory& traj,
            const std::vector<std::pair<std::string, double>>& extras) {
    std::vector<std::pair<std::string, double>> row;
    row.reserve(8 + s1_list.size() + extras.size());
    const NormRequest hs = NormRequest::hs(cfg.s);
    row.emplace_back("L2_a", state.a.l2_norm());
    row.emplace_back("L2_u", std::hypot(state.u1.l2_norm(), state.u2.l2_norm()));
    row.emplace_back("Hs", std::sqrt(std::pow(norm(state.a, hs), 2) +
                                     std::pow(norm(state.u1, hs), 2) +
                                     std::pow(norm(state.u2, hs), 2)));
    row.emplace_back("E0", energy_E0(state, cfg, params));
    row.emplace_back("D0", dissipation_D0(state, cfg, params));
    row.emplace_back("ball_energy", ball_energy(state, t, cfg));
    State centered = state;
    centered.a.set_mean(0.0);
    centered.u1.set_mean(0.0);
    centered.u2.set_mean(0.0);
    const DyadicPartition part(state.grid());
    row.emplace_back("besov_minus1",
                     besov_vector(centered, -1.0, NormRequest::infinity(), part));
    for (double s1 : s1_list) {
        const double v = std::sqrt(std::pow(lambda_s(state.a, s1).l2_norm(), 2) +
                                   std::pow(lambda_s(state.u1, s1).l2_norm(), 2) +
                                   std::pow(lambda_s(state.u2, s1).l2_norm(), 2));
        row.emplace_back(s1_label(s1), v);
    }
    for (const auto& extra : extras) row.push_back(extra);
    traj.append(t, row);
}

void write_csv(const NormTrajectory& traj, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw InvalidConfig("cannot open for writing: " + tmp);
        out << "t";
        for (const auto& name : traj.names) out << "," << name;
        out << "\n";
        char buf[40];
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", traj.times[i]);
            out << buf;
            for (const auto& name : traj.names) {
                std::snprintf(buf, sizeof buf, "%.17g", traj.series.at(name)[i]);
                out << "," << buf;
            }
            out << "\n";
        }
        if (!out.good()) throw InvalidConfig("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidConfig("atomic rename failed for " + path);
}

NormTrajectory read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidConfig("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw InvalidConfig("empty CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols;
    {
        std::stringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) cols.push_back(cell);
    }
    if (cols.empty() || cols[0] != "t")
        throw InvalidConfig("CSV header must start with the t column: " + path);
    NormTrajectory traj;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
        if (vals.size() != cols.size())
            throw InvalidConfig("CSV row width does not match the header: " + path);
        std::vector<std::pair<std::string, double>> row;
        for (std::size_t c = 1; c < cols.size(); ++c) row.emplace_back(cols[c], vals[c]);
        traj.append(vals[0], row);
    }
    return traj;
}

} // namespace fracns
