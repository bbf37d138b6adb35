#pragma once

// Fundamental solution of the gravity Helmholtz equation (Delta + E + x2)u = 0
// and its source gradients, evaluated by trapezoid quadrature along complex
// contours through the saddle points of the phase  psi(t) = a/t + b t - t^3/12
// after the substitution t = e^s.

#include <span>
#include <vector>

#include "stratwave/geometry.hpp"

namespace stratwave {

/// Parameters a = |x-y|^2/4, b = (x2+y2)/2 + E that determine the phase.
struct PhaseParams {
    double a = 0.0;
    double b = 0.0;
    double energy = 0.0;
};

PhaseParams phase_params(Point2 x, Point2 y, double energy);

/// A: classically allowed (real ray travel times), F: forbidden,
/// D: deep forbidden (relevant saddle below Im s = -pi/3).
enum class Region { A, F, D };

/// Positive roots t+- of t^4/4 - b t^2 + a = 0 (principal branches).
std::pair<cplx, cplx> ray_travel_times(const PhaseParams& p);

Region classify_region(const PhaseParams& p);

struct SaddleSet {
    cplx t_minus, t_plus;     // travel times, principal roots
    cplx s_minus, s_plus;     // principal logs of the travel times
    cplx s0;                  // saddle in the strip Im s in (-pi, 0]; equals
                              // s_minus in region A, the relevant complex
                              // saddle in F/D
    double sigma_minus = 0.0; // widths |d^2/ds^2 psi(e^s)|^{-1/2}
    double sigma_plus = 0.0;
};

SaddleSet saddle_points(const PhaseParams& p);

struct FsConfig {
    double h0 = 0.35;      // node-spacing scale relative to saddle width
    double h_max = 0.05;   // absolute node-spacing cap
    int n_min = 43;        // minimum nodes per interval
    double eps = 1e-14;    // truncation threshold on the integrand magnitude
    double beta = 1.3;     // endpoint jump factor
    bool derivs = true;    // also compute dPhi/dy1, dPhi/dy2
};

struct Interval {
    double lo = 0.0, hi = 0.0;
    double sigma = 0.0;  // minimum saddle width in this interval
    double h = 0.0;      // node spacing (filled by finish_plan)
    int n = 0;           // node count ceil(length/h)
};

/// Contour s = gamma(alpha) = alpha + i g(alpha) + shift, parametrized by the
/// real part alpha; four analytic families depending on the region.
struct ContourPlan {
    enum class Family { AllowedPair, ForbiddenShallow, Deep, HelmholtzSingle };

    Region region = Region::A;
    Family family = Family::AllowedPair;
    PhaseParams params;
    SaddleSet saddles;
    double shift_im = 0.0;  // pure-imaginary contour shift (negative or 0)
    bool degenerate_left = false;  // a = 0: s_minus at -infinity

    // family parameters
    double re_sm = 0.0, re_sp = 0.0;  // anchors for AllowedPair
    double re_s0 = 0.0, im_s0 = 0.0;  // anchor for F/D/Helmholtz

    std::vector<Interval> intervals;

    double g(double alpha) const;
    double g_prime(double alpha) const;
    cplx gamma(double alpha) const { return {alpha, g(alpha) + shift_im}; }
    cplx gamma_prime(double alpha) const { return {1.0, g_prime(alpha)}; }

    int total_nodes() const;
};

/// Contour family, saddle data and shift (intervals left empty).
ContourPlan plan_contour(const PhaseParams& p, const FsConfig& cfg);

/// Fill plan.intervals: truncation endpoints where the integrand magnitude
/// falls below cfg.eps, one or two intervals in region A depending on the
/// sampled minimum between the saddles.  Throws if the endpoint search fails
/// to converge.
void truncate_intervals(ContourPlan& plan, const FsConfig& cfg);

/// h = min(h_max, length/n_min, sigma * h0)
double node_spacing(double interval_length, double sigma, const FsConfig& cfg);

/// plan + truncate + spacing in one call.
ContourPlan finish_plan(const PhaseParams& p, const FsConfig& cfg);

struct FsValue {
    cplx phi;
    cplx dphi_dy1;
    cplx dphi_dy2;
};

struct FsEval {
    FsValue value;
    Region region = Region::A;
    int nodes = 0;
};

/// Phi(x, y) and, when cfg.derivs, its source gradients.  Throws if x == y.
FsValue eval_phi(Point2 x, Point2 y, double energy, const FsConfig& cfg = {});
FsEval eval_phi_detailed(Point2 x, Point2 y, double energy, const FsConfig& cfg = {});

/// Element-wise eval_phi over many targets; parallelized, results independent
/// of the thread count.  Errors carry the offending target index.
std::vector<FsValue> eval_phi_batch(std::span<const Point2> targets, Point2 y, double energy,
                                    const FsConfig& cfg = {});

/// Contour integral with the plain Helmholtz phase a/t + E t (no gravity
/// terms); equals (i/4) H0^(1)(sqrt(E) |x-y|), used as a cross-check.
cplx helmholtz_mode_phi(Point2 x, Point2 y, double energy, const FsConfig& cfg = {});

}  // namespace stratwave
