#ifndef FRACNS_QUADRATURE_H
#define FRACNS_QUADRATURE_H

#include <functional>
#include <vector>

namespace fracns {

// Gauss-Legendre rule on [-1, 1]; nodes ascending.  Cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Fixed-order composite quadrature over consecutive panels.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, int order);

// Panel-doubling refinement: accepted once two consecutive levels agree to
// rel_tol (relative, with |value| as the scale).  Throws QuadratureNotConverged
// when max_levels refinements are exhausted.
double integrate_adaptive(const std::function<double(double)>& f,
                          std::vector<double> edges, double rel_tol,
                          int order = 32, int max_levels = 6);

} // namespace fracns

#endif
