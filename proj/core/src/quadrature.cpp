#include "fracns/quadrature.h"

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "fracns/errors.h"

namespace fracns {

namespace {

GaussRule make_rule(int order) {
    // Roots of P_n by Newton iteration from the Chebyshev-like seed; only the
    // lower half is computed, the rest follows by symmetry.
    GaussRule rule;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);
    const int half = (order + 1) / 2;
    const double pi = 4.0 * std::atan(1.0);
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // One clean-up step keeps the root at full precision.
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= order; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = order * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > 1024) throw InvalidConfig("gauss_legendre: order out of range");
    static std::map<int, GaussRule> cache;
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, int order) {
    const GaussRule& rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p];
        const double b = edges[p + 1];
        const double mid = 0.5 * (a + b);
        const double rad = 0.5 * (b - a);
        double acc = 0.0;
        for (int q = 0; q < order; ++q) acc += rule.weights[q] * f(mid + rad * rule.nodes[q]);
        total += rad * acc;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f,
                          std::vector<double> edges, double rel_tol,
                          int order, int max_levels) {
    if (edges.size() < 2) throw InvalidConfig("integrate_adaptive: need at least one panel");
    double prev = integrate_panels(f, edges, order);
    for (int level = 0; level < max_levels; ++level) {
        std::vector<double> fine;
        fine.reserve(2 * edges.size());
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            fine.push_back(edges[p]);
            fine.push_back(0.5 * (edges[p] + edges[p + 1]));
        }
        fine.push_back(edges.back());
        edges.swap(fine);
        const double cur = integrate_panels(f, edges, order);
        const double scale = std::max(std::abs(cur), std::abs(prev));
        if (scale == 0.0 || std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw QuadratureNotConverged("integrate_adaptive: panel doubling did not settle");
}

} // namespace fracns
