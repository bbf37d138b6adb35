// Self-contained Airy and Bessel evaluations used as oracles by the rest of
// the library.  Internals run in long double: near the series/asymptotic
// switch points the alternating sums lose ~5 digits to cancellation, which
// would break the absolute accuracy targets in plain double.

#include "stratwave/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace stratwave::specfun {

namespace {

using ld = long double;

constexpr ld kPi = 3.14159265358979323846264338328L;
constexpr ld kEulerGamma = 0.577215664901532860606512090082L;

// Ai(0) = 3^(-2/3)/Gamma(2/3), -Ai'(0) = 3^(-1/3)/Gamma(1/3)
constexpr ld kAi0 = 0.355028053887817239260063186004L;
constexpr ld kAip0 = 0.258819403792806798405183560189L;

struct AiryPair {
    ld ai, aip, err;
};

// Maclaurin series: Ai = c1 f - c2 g with
//   f = sum (1/3)_k 3^k z^{3k}/(3k)!,  g = sum (2/3)_k 3^k z^{3k+1}/(3k+1)!
AiryPair airy_series(ld z) {
    const ld z3 = z * z * z;
    ld f = 1.0L, g = z, fp = 0.0L, gp = 1.0L;
    ld tf = 1.0L, tg = z, tfp = 0.5L * z * z, tgp = 1.0L;
    ld maxmag = 1.0L;
    for (int k = 1; k < 120; ++k) {
        tf *= z3 / ld(3 * k * (3 * k - 1));
        tg *= z3 / ld((3 * k + 1) * (3 * k));
        tgp *= z3 / ld(3 * k * (3 * k - 2));
        if (k > 1) tfp *= z3 / ld((3 * k - 1) * (3 * k - 3));
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        ld m = std::fabs(tf) + std::fabs(tg);
        maxmag = std::max(maxmag, m);
        if (m < 1e-24L * maxmag && k > 4) break;
    }
    ld ai = kAi0 * f - kAip0 * g;
    ld aip = kAi0 * fp - kAip0 * gp;
    ld err = maxmag * 1e-18L;
    return {ai, aip, err};
}

// u_k, v_k coefficients of the Airy asymptotic expansions (DLMF 9.7):
//   u_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1))
//   v_k = -u_k (6k+1)/(6k-1)
AiryPair airy_asym_pos(ld z) {
    const ld zeta = 2.0L / 3.0L * z * std::sqrt(z);
    ld u = 1.0L, sum = 1.0L, sump = 1.0L, sign = 1.0L;
    ld last = 1.0L, err = 0.0L;
    for (int k = 1; k < 80; ++k) {
        u *= ld(6 * k - 5) * ld(6 * k - 3) * ld(6 * k - 1) / (216.0L * k * (2 * k - 1));
        ld term = u / std::pow(zeta, ld(k));
        if (term > last) {
            err = term;
            break;
        }
        sign = -sign;
        sum += sign * term;
        sump += sign * (-(6.0L * k + 1) / (6.0L * k - 1)) * term;
        last = term;
        err = term;
        if (term < 1e-25L) break;
    }
    ld pref = std::exp(-zeta) / (2.0L * std::sqrt(kPi) * std::pow(z, 0.25L));
    return {pref * sum, -std::pow(z, 0.25L) * std::exp(-zeta) / (2.0L * std::sqrt(kPi)) * sump,
            pref * err};
}

AiryPair airy_asym_neg(ld zneg) {
    const ld z = -zneg;  // z > 0, evaluate Ai(-z)
    const ld zeta = 2.0L / 3.0L * z * std::sqrt(z);
    // P = sum (-1)^k u_{2k} zeta^{-2k},   Q = sum (-1)^k u_{2k+1} zeta^{-2k-1}
    ld u = 1.0L;
    ld P = 1.0L, Q = 0.0L, Pv = 1.0L, Qv = 0.0L;
    ld last = 1e30L, err = 0.0L;
    int j = 0;  // running index of u_j
    ld signk = 1.0L;
    for (int k = 0; k < 40; ++k) {
        // u_{2k+1}
        ++j;
        u *= ld(6 * j - 5) * ld(6 * j - 3) * ld(6 * j - 1) / (216.0L * j * (2 * j - 1));
        ld t1 = u / std::pow(zeta, ld(2 * k + 1));
        if (t1 > last) {
            err = t1;
            break;
        }
        Q += signk * t1;
        Qv += signk * (-(6.0L * j + 1) / (6.0L * j - 1)) * t1;
        last = t1;
        // u_{2k+2}
        ++j;
        u *= ld(6 * j - 5) * ld(6 * j - 3) * ld(6 * j - 1) / (216.0L * j * (2 * j - 1));
        ld t2 = u / std::pow(zeta, ld(2 * k + 2));
        if (t2 > last) {
            err = t2;
            break;
        }
        signk = -signk;
        P += signk * t2;
        Pv += signk * (-(6.0L * j + 1) / (6.0L * j - 1)) * t2;
        last = t2;
        err = t2;
        if (t2 < 1e-25L) break;
    }
    ld c = std::cos(zeta - kPi / 4.0L), s = std::sin(zeta - kPi / 4.0L);
    ld z14 = std::pow(z, 0.25L);
    ld ai = (c * P + s * Q) / (std::sqrt(kPi) * z14);
    // d/dx Ai at x = -z  (DLMF 9.7.11)
    ld aip = (s * Pv - c * Qv) * z14 / std::sqrt(kPi);
    return {ai, aip, err / std::sqrt(kPi)};
}

AiryPair airy_eval(double zd) {
    if (!(zd >= -50.0 && zd <= 50.0))
        throw std::domain_error("airy_ai: argument outside supported range [-50, 50]");
    ld z = zd;
    if (std::fabs(zd) <= 8.0) return airy_series(z);
    if (zd > 0) return airy_asym_pos(z);
    return airy_asym_neg(z);
}

}  // namespace

double airy_ai(double z) { return double(airy_eval(z).ai); }
double airy_ai_deriv(double z) { return double(airy_eval(z).aip); }

Result airy_ai_full(double z) {
    auto r = airy_eval(z);
    return {double(r.ai), double(r.err)};
}

namespace {

BesselJ0Y0 bessel_series(ld x) {
    const ld q = x * x / 4.0L;
    ld term = 1.0L;       // (-1)^k q^k / (k!)^2
    ld j0 = 1.0L, s = 0.0L, j0p = 0.0L, sp = 0.0L;
    ld hk = 0.0L, maxmag = 1.0L;
    for (int k = 1; k < 80; ++k) {
        term *= -q / ld(k) / ld(k);
        hk += 1.0L / ld(k);
        j0 += term;
        s -= term * hk;  // (-1)^{k+1} H_k q^k/(k!)^2
        // derivative pieces: d/dx q^k = k q^{k-1} x/2
        ld dterm = term * ld(k) / q * (x / 2.0L);
        j0p += dterm;
        sp -= dterm * hk;
        maxmag = std::max(maxmag, std::fabs(term) * (1.0L + hk));
        if (std::fabs(term) * (1.0L + hk) < 1e-24L * maxmag && k > 4) break;
    }
    ld lg = std::log(x / 2.0L) + kEulerGamma;
    ld y0 = 2.0L / kPi * (lg * j0 + s);
    ld y0p = 2.0L / kPi * (j0 / x + lg * j0p + sp);
    return {double(j0), double(y0), double(j0p), double(y0p), double(maxmag * 1e-18L)};
}

// Hankel asymptotic expansion: with c_k = ((2k-1)!!)^2/(k! 8^k) and w = x - pi/4,
//   J0 = sqrt(2/(pi x)) (P cos w + Q sin w),  Y0 = sqrt(2/(pi x)) (P sin w - Q cos w)
//   P = sum (-1)^k c_{2k} x^{-2k},  Q = sum (-1)^k c_{2k+1} x^{-2k-1}
BesselJ0Y0 bessel_asym(ld x) {
    ld c = 1.0L;
    ld P = 1.0L, Q = 0.0L, dP = 0.0L, dQ = 0.0L;
    ld last = 1e30L, err = 0.0L;
    int j = 0;
    ld sk = 1.0L;
    for (int k = 0; k < 40; ++k) {
        ++j;
        c *= ld(2 * j - 1) * ld(2 * j - 1) / (8.0L * j);
        ld t1 = c / std::pow(x, ld(2 * k + 1));
        if (t1 > last) {
            err = t1;
            break;
        }
        Q += sk * t1;
        dQ += sk * t1 * ld(-(2 * k + 1)) / x;
        last = t1;
        ++j;
        c *= ld(2 * j - 1) * ld(2 * j - 1) / (8.0L * j);
        ld t2 = c / std::pow(x, ld(2 * k + 2));
        if (t2 > last) {
            err = t2;
            break;
        }
        sk = -sk;
        P += sk * t2;
        dP += sk * t2 * ld(-(2 * k + 2)) / x;
        last = t2;
        err = t2;
        if (t2 < 1e-25L) break;
    }
    ld w = x - kPi / 4.0L;
    ld cw = std::cos(w), sw = std::sin(w);
    ld amp = std::sqrt(2.0L / (kPi * x));
    ld j0 = amp * (P * cw + Q * sw);
    ld y0 = amp * (P * sw - Q * cw);
    // derivative of amp*(P cw + Q sw) etc.
    ld damp = -0.5L * amp / x;
    ld j0p = damp * (P * cw + Q * sw) + amp * (dP * cw - P * sw + dQ * sw + Q * cw);
    ld y0p = damp * (P * sw - Q * cw) + amp * (dP * sw + P * cw - dQ * cw + Q * sw);
    return {double(j0), double(y0), double(j0p), double(y0p), double(amp * err)};
}

}  // namespace

BesselJ0Y0 bessel_j0y0(double x) {
    if (!(x > 0.0 && x <= 1e3))
        throw std::domain_error("bessel_j0y0: argument outside supported range (0, 1e3]");
    if (x <= 12.0) return bessel_series(x);
    return bessel_asym(x);
}

std::complex<double> hankel0(double x) {
    auto b = bessel_j0y0(x);
    return {b.j0, b.y0};
}

}  // namespace stratwave::specfun
