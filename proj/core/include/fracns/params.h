#ifndef FRACNS_PARAMS_H
#define FRACNS_PARAMS_H

#include "fracns/errors.h"

namespace fracns {

// Physical parameters of the fractional-dissipation system.  The viscosity
// normalization mu = 1, nu = -1 is fixed; the pressure law is P(rho) = rho^gamma.
struct PhysParams {
    double beta = 0.5;   // dissipation exponent, 1/2 <= beta < 1
    double gamma = 1.0;  // adiabatic exponent, >= 1

    void validate() const {
        if (!(beta >= 0.5 && beta < 1.0))
            throw InvalidConfig("beta must lie in [1/2, 1)");
        if (!(gamma >= 1.0))
            throw InvalidConfig("gamma must be >= 1");
    }
};

} // namespace fracns

#endif
