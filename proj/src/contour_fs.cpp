#include "stratwave/contour_fs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stratwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// constants of the two-saddle contour family
const double kCm = 0.5 * std::tan((kPi * kPi - 2.0 * kPi) / (4.0 + 2.0 * kPi));
const double kCp = 0.25 * std::tan((kPi * kPi - 6.0 * kPi) / (12.0 + 2.0 * kPi));

constexpr double kDFloor = 0.05;    // smallest endpoint distance from a saddle
constexpr int kMaxTruncIter = 200;  // beta multiplications per endpoint
constexpr int kMinSamples = 32;     // crude-minimization sample count

// principal log mapped into the strip Im s in (-pi, 0]
cplx strip_log(cplx t) {
    double ph = std::arg(t);
    if (ph > 0.0) ph -= kPi;
    return {std::log(std::abs(t)), ph};
}

double saddle_width(double a, cplx t) {
    if (t == cplx(0.0)) return kInf;
    cplx curv = 2.0 * a / t - 0.5 * t * t * t;  // d^2/ds^2 psi(e^s) at the saddle
    double m = std::abs(curv);
    return m > 0.0 ? 1.0 / std::sqrt(m) : kInf;
}

Region classify_from(const PhaseParams& p, const SaddleSet& s) {
    if (p.b >= std::sqrt(p.a)) return Region::A;
    return s.s0.imag() >= -kPi / 3.0 ? Region::F : Region::D;
}

}  // namespace

PhaseParams phase_params(Point2 x, Point2 y, double energy) {
    Point2 d = x - y;
    return {0.25 * (d.x1 * d.x1 + d.x2 * d.x2), 0.5 * (x.x2 + y.x2) + energy, energy};
}

std::pair<cplx, cplx> ray_travel_times(const PhaseParams& p) {
    // roots of t^4/4 - b t^2 + a = 0: t^2 = b +- sqrt(b^2 - a).  The smaller
    // pair is rationalized through t-^2 t+^2 = 4a to avoid the cancellation
    // b - sqrt(b^2 - a) when a << b^2.
    cplx w = std::sqrt(cplx(p.b * p.b - p.a, 0.0));
    cplx big = p.b >= 0.0 ? cplx(p.b, 0.0) + w : cplx(p.b, 0.0) - w;
    cplx t_big = std::sqrt(2.0 * big);
    cplx t_small = p.a == 0.0 ? cplx(0.0) : std::sqrt(2.0 * p.a / big);
    if (p.b >= 0.0) return {t_small, t_big};
    return {t_big, t_small};
}

SaddleSet saddle_points(const PhaseParams& p) {
    auto [tm, tp] = ray_travel_times(p);
    SaddleSet s;
    s.t_minus = tm;
    s.t_plus = tp;
    s.s_minus = (tm == cplx(0.0)) ? cplx(-kInf, 0.0) : std::log(tm);
    s.s_plus = (tp == cplx(0.0)) ? cplx(-kInf, 0.0) : std::log(tp);
    s.sigma_minus = saddle_width(p.a, tm);
    s.sigma_plus = saddle_width(p.a, tp);
    if (p.b >= std::sqrt(p.a)) {
        s.s0 = s.s_minus;
    } else {
        // relevant complex saddle: the strip image closest to the real axis,
        // on the tie (both at Im = -pi/2) the one with more negative Re
        cplx um = strip_log(tm == cplx(0.0) ? tp : tm);
        cplx up = strip_log(tp == cplx(0.0) ? tm : tp);
        if (um.imag() != up.imag())
            s.s0 = um.imag() > up.imag() ? um : up;
        else
            s.s0 = um.real() <= up.real() ? um : up;
    }
    return s;
}

Region classify_region(const PhaseParams& p) { return classify_from(p, saddle_points(p)); }

double ContourPlan::g(double alpha) const {
    switch (family) {
        case Family::AllowedPair: {
            double bm = (1.0 / kPi + 0.5) * std::atan(2.0 * (alpha - re_sm + kCm)) -
                        (kPi / 4.0 - 0.5);
            double bp = (1.0 / kPi + 1.0 / 6.0) * std::atan(-4.0 * (alpha - re_sp - kCp)) -
                        (kPi / 12.0 - 0.5);
            return bm * bp;
        }
        case Family::ForbiddenShallow: {
            double u = alpha - re_s0;
            double t = (std::atan(u) - kPi) / 3.0;
            return im_s0 + (t - im_s0) * (1.0 - std::exp(-u * u));
        }
        case Family::Deep:
            return (std::atan(alpha - re_s0) - kPi) / 3.0;
        case Family::HelmholtzSingle:
            return std::atan(alpha - re_s0);
    }
    return 0.0;
}

double ContourPlan::g_prime(double alpha) const {
    switch (family) {
        case Family::AllowedPair: {
            double um = 2.0 * (alpha - re_sm + kCm);
            double up = -4.0 * (alpha - re_sp - kCp);
            double bm = (1.0 / kPi + 0.5) * std::atan(um) - (kPi / 4.0 - 0.5);
            double bp = (1.0 / kPi + 1.0 / 6.0) * std::atan(up) - (kPi / 12.0 - 0.5);
            double dbm = (1.0 / kPi + 0.5) * 2.0 / (1.0 + um * um);
            double dbp = -(1.0 / kPi + 1.0 / 6.0) * 4.0 / (1.0 + up * up);
            return dbm * bp + bm * dbp;
        }
        case Family::ForbiddenShallow: {
            double u = alpha - re_s0;
            double t = (std::atan(u) - kPi) / 3.0;
            double e = std::exp(-u * u);
            return (1.0 - e) / (3.0 * (1.0 + u * u)) + (t - im_s0) * 2.0 * u * e;
        }
        case Family::Deep: {
            double u = alpha - re_s0;
            return 1.0 / (3.0 * (1.0 + u * u));
        }
        case Family::HelmholtzSingle: {
            double u = alpha - re_s0;
            return 1.0 / (1.0 + u * u);
        }
    }
    return 0.0;
}

int ContourPlan::total_nodes() const {
    int n = 0;
    for (const auto& iv : intervals) n += iv.n;
    return n;
}

namespace {

// log-magnitude of the full integrand at contour parameter alpha:
// -Im psi + log|gamma'|, plus a bound on the largest derivative prefactor
// when derivatives are requested (those factors must not be truncated away).
// Works in log space so that far-out probe points over/underflow gracefully.
double integrand_log_mag(const ContourPlan& plan, double alpha, bool with_prefactor) {
    const double a = plan.params.a;
    const double G = plan.g(alpha) + plan.shift_im;
    const double sinG = std::sin(G);
    double im_psi = 0.0;
    if (a != 0.0) im_psi -= a * std::exp(-alpha) * sinG;
    if (plan.family == ContourPlan::Family::HelmholtzSingle) {
        if (plan.params.energy != 0.0) im_psi += plan.params.energy * std::exp(alpha) * sinG;
    } else {
        if (plan.params.b != 0.0) im_psi += plan.params.b * std::exp(alpha) * sinG;
        im_psi -= std::exp(3.0 * alpha) * std::sin(3.0 * G) / 12.0;
    }
    double lm = -im_psi + std::log(std::abs(plan.gamma_prime(alpha)));
    if (with_prefactor && a != 0.0) {
        double lp = 0.5 * std::log(a) - alpha;           // log(sqrt(a) e^-alpha)
        double lq = alpha - std::log(2.0);               // log(e^alpha / 2)
        double lpf = std::max(lp, lq) + std::log1p(std::exp(-std::abs(lp - lq)));
        lm += std::max(0.0, lpf);
    }
    return lm;
}

// Search for one truncation endpoint at distance d from `anchor` in direction
// `dir`: expand d by beta while the integrand exceeds eps, otherwise contract
// until just inside the eps boundary.  `cap` bounds the distance (used for
// the inner endpoints of a two-interval split, where the integrand is known
// to dip below eps at the cap).
double endpoint_distance(const ContourPlan& plan, const FsConfig& cfg, double anchor, int dir,
                         double d_init, double sigma, double cap = kInf) {
    double d = std::min(d_init, cap);
    const bool pf = cfg.derivs;
    const double leps = std::log(cfg.eps);
    const double d_floor = std::min(kDFloor, 2.0 * sigma);
    double v = integrand_log_mag(plan, anchor + dir * d, pf);
    if (!(v <= leps)) {
        for (int it = 0;; ++it) {
            if (it >= kMaxTruncIter) throw std::runtime_error("truncation failed to converge");
            d = std::min(d * cfg.beta, cap);
            v = integrand_log_mag(plan, anchor + dir * d, pf);
            if (v <= leps || d >= cap) break;
        }
    } else {
        for (int it = 0; it < kMaxTruncIter; ++it) {
            double d2 = d / cfg.beta;
            if (d2 < d_floor) break;
            if (!(integrand_log_mag(plan, anchor + dir * d2, pf) <= leps)) break;
            d = d2;
        }
    }
    return d;
}

double initial_distance(double re_s) { return std::max(0.5 * std::abs(re_s), 1.0); }

}  // namespace

void truncate_intervals(ContourPlan& plan, const FsConfig& cfg) {
    plan.intervals.clear();
    const SaddleSet& sd = plan.saddles;

    if (plan.family == ContourPlan::Family::ForbiddenShallow ||
        plan.family == ContourPlan::Family::Deep) {
        double sigma = saddle_width(plan.params.a, std::exp(sd.s0));
        double dl =
            endpoint_distance(plan, cfg, plan.re_s0, -1, initial_distance(plan.re_s0), sigma);
        double dr =
            endpoint_distance(plan, cfg, plan.re_s0, +1, initial_distance(plan.re_s0), sigma);
        plan.intervals.push_back({plan.re_s0 - dl, plan.re_s0 + dr, sigma});
        return;
    }

    if (plan.degenerate_left) {
        // a = 0: no left saddle; the left endpoint comes purely from the eps
        // search started five units left of the remaining saddle
        double dl = endpoint_distance(plan, cfg, plan.re_sp, -1, 5.0, sd.sigma_plus);
        double dr = endpoint_distance(plan, cfg, plan.re_sp, +1, initial_distance(plan.re_sp),
                                      sd.sigma_plus);
        plan.intervals.push_back({plan.re_sp - dl, plan.re_sp + dr, sd.sigma_plus});
        return;
    }

    const double sm = plan.re_sm, sp = plan.re_sp;
    const double span = sp - sm;
    const double leps = std::log(cfg.eps);
    double vmin = kInf, amin = 0.5 * (sm + sp);
    if (span > 0.0) {
        for (int i = 0; i < kMinSamples; ++i) {
            double al = sm + span * i / double(kMinSamples - 1);
            double v = integrand_log_mag(plan, al, cfg.derivs);
            if (v < vmin) {
                vmin = v;
                amin = al;
            }
        }
    } else {
        vmin = integrand_log_mag(plan, sm, cfg.derivs);
    }

    if (vmin <= leps) {
        // two disjoint intervals split at the sampled minimum
        double dl1 = endpoint_distance(plan, cfg, sm, -1, initial_distance(sm));
        double dr1 = endpoint_distance(plan, cfg, sm, +1, initial_distance(sm), amin - sm);
        double dl2 = endpoint_distance(plan, cfg, sp, -1, initial_distance(sp), sp - amin);
        double dr2 = endpoint_distance(plan, cfg, sp, +1, initial_distance(sp));
        plan.intervals.push_back({sm - dl1, sm + dr1, sd.sigma_minus});
        plan.intervals.push_back({sp - dl2, sp + dr2, sd.sigma_plus});
    } else {
        double dl = endpoint_distance(plan, cfg, sm, -1, initial_distance(sm));
        double dr = endpoint_distance(plan, cfg, sp, +1, initial_distance(sp));
        plan.intervals.push_back({sm - dl, sp + dr, std::min(sd.sigma_minus, sd.sigma_plus)});
    }
}

double node_spacing(double interval_length, double sigma, const FsConfig& cfg) {
    if (!(interval_length > 0.0)) throw std::invalid_argument("node_spacing: length must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("node_spacing: sigma must be > 0");
    return std::min({cfg.h_max, interval_length / cfg.n_min, sigma * cfg.h0});
}

ContourPlan plan_contour(const PhaseParams& p, const FsConfig&) {
    ContourPlan plan;
    plan.params = p;
    plan.saddles = saddle_points(p);
    plan.region = classify_from(p, plan.saddles);
    const SaddleSet& sd = plan.saddles;

    if (plan.region == Region::A) {
        plan.family = ContourPlan::Family::AllowedPair;
        plan.re_sp = sd.s_plus.real();
        if (p.a == 0.0) {
            plan.degenerate_left = true;
            plan.re_sm = plan.re_sp - 5.0;
        } else {
            plan.re_sm = sd.s_minus.real();
        }
    } else {
        plan.family = plan.region == Region::F ? ContourPlan::Family::ForbiddenShallow
                                               : ContourPlan::Family::Deep;
        plan.re_s0 = sd.s0.real();
        plan.im_s0 = sd.s0.imag();
    }

    // Shift the contour off the real axis when the saddles nearly coalesce.
    // The depth is scaled so that |Psi'''| shift^3 stays O(1): near the
    // caustic |Psi'''| ~ (2b)^{3/2}, so shift ~ b^{-1/2}.  (b ~ E whenever
    // source and target sit near the x2 = 0 level.)
    bool near_coalesce = !plan.degenerate_left && std::abs(sd.s_plus - sd.s_minus) < 0.1;
    if (near_coalesce && plan.region != Region::D)
        plan.shift_im = p.b > 49.0 ? -0.7 / std::sqrt(p.b) : -0.1;
    return plan;
}

ContourPlan finish_plan(const PhaseParams& p, const FsConfig& cfg) {
    ContourPlan plan = plan_contour(p, cfg);
    truncate_intervals(plan, cfg);
    for (auto& iv : plan.intervals) {
        iv.h = node_spacing(iv.hi - iv.lo, iv.sigma, cfg);
        iv.n = int(std::ceil((iv.hi - iv.lo) / iv.h));
    }
    return plan;
}

namespace {

FsEval eval_plan(const ContourPlan& plan, Point2 x, Point2 y, const FsConfig& cfg) {
    const double a = plan.params.a, b = plan.params.b;
    cplx acc_w = 0.0, acc_winv = 0.0, acc_wt = 0.0;
    int nodes = 0;
    for (const auto& iv : plan.intervals) {
        const double heff = (iv.hi - iv.lo) / iv.n;
        cplx pw = 0.0, pwinv = 0.0, pwt = 0.0;
        for (int j = 0; j < iv.n; ++j) {
            double alpha = iv.lo + (j + 0.5) * heff;
            cplx t = std::exp(plan.gamma(alpha));
            cplx invt = 1.0 / t;
            cplx psi = a * invt + b * t - t * t * t / 12.0;
            cplx w = std::exp(cplx(0.0, 1.0) * psi) * plan.gamma_prime(alpha);
            pw += w;
            if (cfg.derivs) {
                pwinv += w * invt;
                pwt += w * t;
            }
        }
        acc_w += pw * heff;
        acc_winv += pwinv * heff;
        acc_wt += pwt * heff;
        nodes += iv.n;
    }
    const double c = 1.0 / (4.0 * kPi);
    FsEval out;
    out.value.phi = c * acc_w;
    if (cfg.derivs) {
        const cplx mihalf(0.0, -0.5);
        out.value.dphi_dy1 = c * mihalf * (x.x1 - y.x1) * acc_winv;
        out.value.dphi_dy2 = c * mihalf * ((x.x2 - y.x2) * acc_winv - acc_wt);
    }
    out.region = plan.region;
    out.nodes = nodes;
    return out;
}

}  // namespace

FsEval eval_phi_detailed(Point2 x, Point2 y, double energy, const FsConfig& cfg) {
    if (x.x1 == y.x1 && x.x2 == y.x2)
        throw std::invalid_argument(
            "source equals target: the fundamental solution has a logarithmic singularity");
    ContourPlan plan = finish_plan(phase_params(x, y, energy), cfg);
    return eval_plan(plan, x, y, cfg);
}

FsValue eval_phi(Point2 x, Point2 y, double energy, const FsConfig& cfg) {
    return eval_phi_detailed(x, y, energy, cfg).value;
}

std::vector<FsValue> eval_phi_batch(std::span<const Point2> targets, Point2 y, double energy,
                                    const FsConfig& cfg) {
    std::vector<FsValue> out(targets.size());
    std::string err;
    long err_index = -1;
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < long(targets.size()); ++i) {
        try {
            out[i] = eval_phi(targets[i], y, energy, cfg);
        } catch (const std::exception& e) {
#pragma omp critical
            if (err_index < 0 || i < err_index) {
                err_index = i;
                err = e.what();
            }
        }
    }
    if (err_index >= 0)
        throw std::runtime_error("eval_phi_batch: target " + std::to_string(err_index) + ": " +
                                 err);
    return out;
}

cplx helmholtz_mode_phi(Point2 x, Point2 y, double energy, const FsConfig& cfg) {
    if (!(energy > 0.0))
        throw std::invalid_argument("helmholtz_mode_phi: requires positive energy");
    if (x.x1 == y.x1 && x.x2 == y.x2)
        throw std::invalid_argument(
            "source equals target: the fundamental solution has a logarithmic singularity");
    PhaseParams p = phase_params(x, y, energy);
    ContourPlan plan;
    plan.params = p;
    plan.family = ContourPlan::Family::HelmholtzSingle;
    plan.region = Region::A;
    plan.re_s0 = 0.5 * std::log(p.a / energy);

    FsConfig c = cfg;
    c.derivs = false;
    double dl = endpoint_distance(plan, c, plan.re_s0, -1, initial_distance(plan.re_s0));
    double dr = endpoint_distance(plan, c, plan.re_s0, +1, initial_distance(plan.re_s0));
    Interval iv{plan.re_s0 - dl, plan.re_s0 + dr,
                1.0 / std::sqrt(2.0 * std::sqrt(p.a * energy))};
    iv.h = node_spacing(iv.hi - iv.lo, iv.sigma, c);
    iv.n = int(std::ceil((iv.hi - iv.lo) / iv.h));
    plan.intervals.push_back(iv);

    const double heff = (iv.hi - iv.lo) / iv.n;
    cplx sum = 0.0;
    for (int j = 0; j < iv.n; ++j) {
        double alpha = iv.lo + (j + 0.5) * heff;
        cplx t = std::exp(plan.gamma(alpha));
        cplx psi = p.a / t + energy * t;
        sum += std::exp(cplx(0.0, 1.0) * psi) * plan.gamma_prime(alpha);
    }
    return sum * heff / (4.0 * kPi);
}

}  // namespace stratwave
