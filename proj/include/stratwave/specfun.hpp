#pragma once

#include <complex>

namespace stratwave::specfun {

/// Value plus a truncation-error bound from the series/asymptotic tail.
struct Result {
    double value = 0.0;
    double est_error = 0.0;
};

/// Airy function of the first kind, z in [-50, 50].
/// Maclaurin series for |z| <= 8, standard asymptotic expansions beyond.
double airy_ai(double z);
double airy_ai_deriv(double z);
Result airy_ai_full(double z);

struct BesselJ0Y0 {
    double j0, y0;
    double dj0, dy0;  // d/dx
    double est_error;
};

/// J0, Y0 and derivatives for x in (0, 1e3]; power series for x <= 12,
/// Hankel-type asymptotic expansion beyond.
BesselJ0Y0 bessel_j0y0(double x);

/// Outgoing Hankel function of order zero, H0 = J0 + i Y0.
std::complex<double> hankel0(double x);

}  // namespace stratwave::specfun
