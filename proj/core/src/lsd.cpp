#include "lspec/lsd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lspec/errors.hpp"
#include "lspec/quadrature.hpp"

namespace lspec {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kCUnit = 1e-8;  // |c-1| below this is treated as c = 1

double real_newton_polish(double y, double p, double q) {
    // f(y) = y^3 - p y^2 - q y - q on the real line
    for (int it = 0; it < 3; ++it) {
        const double f = ((y - p) * y - q) * y - q;
        const double fp = (3.0 * y - 2.0 * p) * y - q;
        if (fp == 0.0 || !std::isfinite(f / fp)) break;
        y -= f / fp;
    }
    return y;
}

} // namespace

namespace detail {

cd sqrt_upper(cd w) {
    cd s = std::sqrt(w);
    if (s.imag() > 0.0) return s;
    if (s.imag() < 0.0) return -s;
    return s.real() >= 0.0 ? s : -s;  // real axis: nonnegative real root
}

double density_eq11(double x, double c) {
    const double ax = std::fabs(x);
    const double y0 = y0_at(ax, c);
    if (1.0 + y0 <= 0.0) return 0.0;
    const double s = std::sqrt(1.0 + y0);
    const double t = (1.0 - c) / ax + 1.0 / s;
    const double arg = y0 * y0 / (1.0 + y0) - t * t;
    return arg <= 0.0 ? 0.0 : std::sqrt(arg) / (2.0 * c * kPi);
}

} // namespace detail

double lsd_point_mass(double c) {
    if (c <= 0.0) throw ConfigError("c must be > 0");
    return std::max(0.0, 1.0 - 1.0 / c);
}

double lsd_y1(double c) {
    if (c <= 0.0) throw ConfigError("c must be > 0");
    if (std::fabs(c - 1.0) <= kCUnit) throw ConfigError("y1 is defined for c != 1");
    const double a3 = (1.0 - c) * (1.0 - c) - 1.0;

    std::vector<double> real_roots;
    if (a3 == 0.0) {
        // c = 2: the cubic degenerates to y^2 + y - 1 = 0
        const double s = std::sqrt(5.0);
        real_roots = {(-1.0 - s) / 2.0, (-1.0 + s) / 2.0};
    } else {
        const CubicRoots r = solve_cubic(a3, 1.0, 1.0, -1.0);
        for (int i = 0; i < 3; ++i)
            if (r.is_real[i]) real_roots.push_back(r.roots[i].real());
    }

    bool found = false;
    double y1 = 0.0;
    for (double y : real_roots) {
        const bool in_range = c < 1.0 ? (y > 1.0) : (y > 0.0 && y < 1.0);
        if (!in_range) continue;
        if (found && std::fabs(y - y1) > 1e-9)
            throw Error("lsd_y1: multiple roots satisfy the range constraint");
        y1 = y;
        found = true;
    }
    if (!found) throw Error("lsd_y1: no real root in the stated range");
    return y1;
}

double lsd_boundary(double c) {
    if (c <= 0.0) throw ConfigError("c must be > 0");
    if (std::fabs(c - 1.0) <= kCUnit) return 2.0;
    const double y1 = lsd_y1(c);
    return (1.0 - c) * std::sqrt(1.0 + y1) / (y1 - 1.0);
}

double y0_at(double x, double c) {
    if (x == 0.0) throw Error("y0_at: x = 0 is a singular point");
    if (c <= 0.0) throw ConfigError("c must be > 0");
    const double x2 = x * x;
    const double p = ((1.0 - c) * (1.0 - c) - x2) / x2;
    const double q = 4.0 / x2;
    const CubicRoots r = solve_cubic(1.0, -p, -q, -q);

    bool have = false;
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (!r.is_real[i]) continue;
        const double y = r.roots[i].real();
        if (!have || y > best) {
            best = y;
            have = true;
        }
    }
    if (!have) {
        // near a discriminant zero the real root may carry a tiny imaginary
        // residue; fall back to the root of smallest |Im|
        int k = 0;
        for (int i = 1; i < 3; ++i)
            if (std::fabs(r.roots[i].imag()) < std::fabs(r.roots[k].imag())) k = i;
        best = r.roots[k].real();
    }
    return real_newton_polish(best, p, q);
}

cd y0_complex(cd z, double c) {
    const cd z2 = z * z;
    const cd p = (cd((1.0 - c) * (1.0 - c), 0.0) - z2) / z2;
    const cd q = 4.0 / z2;
    const CubicRoots r = solve_cubic(cd(1.0, 0.0), -p, -q, -q);

    int best = -1;
    for (int i = 0; i < 3; ++i) {
        const cd y = r.roots[i];
        if (std::abs(cd(1.0, 0.0) + y) <= 1e-12 * (1.0 + std::abs(y))) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        const cd b = r.roots[best];
        const double ay = std::abs(y), ab = std::abs(b);
        if (ay > ab ||
            (ay == ab && (y.real() > b.real() ||
                          (y.real() == b.real() && y.imag() > b.imag()))))
            best = i;
    }
    if (best < 0) throw Error("y0_complex: all roots singular");
    return r.roots[best];
}

namespace {

std::array<cd, 4> four_branches(cd z, double c) {
    const cd y0 = y0_complex(z, c);
    const cd s = detail::sqrt_upper(1.0 + y0);
    const cd t = (1.0 - c) / z;
    const cd y2 = y0 * y0 / (1.0 + y0);
    const cd sm = detail::sqrt_upper((t - 1.0 / s) * (t - 1.0 / s) - y2);
    const cd sp = detail::sqrt_upper((t + 1.0 / s) * (t + 1.0 / s) - y2);
    const double tc = 2.0 * c;
    return {(t + s + sm) / tc, (t + s - sm) / tc, (t - s + sp) / tc,
            (t - s - sp) / tc};
}

double quartic_residual(cd m, cd z, double c) {
    const cd lhs = (1.0 - c * c * m * m) *
                   (c + c * z * m - 1.0) * (c + c * z * m - 1.0);
    return std::abs(lhs - 1.0);
}

double cross2(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Pointwise necessary conditions for m to be the transform of a probability
// measure supported on [-d, d], plus the sign criterion of the limit theory
// (Im m for c < 1, Im(m + (c-1)/(cz)) for c >= 1).
bool pointwise_admissible(cd m, cd z, double c, double d) {
    const double v = z.imag();
    const double crit =
        c < 1.0 ? m.imag() : (m + (c - 1.0) / (c * z)).imag();
    if (!(crit > 0.0)) return false;
    if (!(m.imag() > 0.0)) return false;
    if (v * std::norm(m) > m.imag()) return false;  // Stieltjes disk
    // chord of the arc {1/(x-z) : x in [-d, d]}
    const cd wl = 1.0 / (-d - z), wr = 1.0 / (d - z), w0 = -1.0 / z;
    const cd e = wr - wl;
    if (cross2(e, m - wl) * cross2(e, w0 - wl) < 0.0) return false;
    return true;
}

// Track the physical branch from the far field (m ~ -1/z) down to v.
cd continue_from_far_field(double u, double v, double c, double d) {
    double cur_v = 4.0 * (1.0 + std::hypot(u, v) + d);
    cd zc(u, cur_v);
    auto cand = four_branches(zc, c);
    const cd tgt = -1.0 / zc;
    cd prev = cand[0];
    for (const cd& m : cand)
        if (std::abs(m - tgt) < std::abs(prev - tgt)) prev = m;

    while (cur_v > v) {
        double step_v = std::max(v, cur_v * 0.7);
        zc = cd(u, step_v);
        cand = four_branches(zc, c);
        std::array<double, 4> dist;
        for (int i = 0; i < 4; ++i) dist[i] = std::abs(cand[i] - prev);
        int k = 0;
        for (int i = 1; i < 4; ++i)
            if (dist[i] < dist[k]) k = i;
        double second = 1e300;
        for (int i = 0; i < 4; ++i)
            if (i != k) second = std::min(second, dist[i]);
        if (second < 2.0 * dist[k]) {
            // two branches nearly equidistant: retry with a shorter step
            step_v = std::max(v, cur_v * 0.9);
            zc = cd(u, step_v);
            cand = four_branches(zc, c);
            k = 0;
            for (int i = 1; i < 4; ++i)
                if (std::abs(cand[i] - prev) < std::abs(cand[k] - prev)) k = i;
        }
        prev = cand[k];
        cur_v = step_v;
    }
    return prev;
}

} // namespace

StieltjesEvaluation stieltjes_roots(cd z, double c) {
    if (c <= 0.0) throw ConfigError("c must be > 0");
    if (!(z.imag() > 0.0))
        throw HalfPlaneError("stieltjes_roots requires Im(z) > 0");

    StieltjesEvaluation ev;
    ev.z = z;
    ev.c = c;
    ev.m = four_branches(z, c);
    const double d = lsd_boundary(c);

    int count = 0, last = -1;
    for (int i = 0; i < 4; ++i) {
        ev.residual[i] = quartic_residual(ev.m[i], z, c);
        ev.admissible[i] = pointwise_admissible(ev.m[i], z, c, d);
        if (ev.admissible[i]) {
            ++count;
            last = i;
        }
    }

    if (count == 1) {
        ev.selected = last;
    } else if (count > 1) {
        const cd tracked = continue_from_far_field(z.real(), z.imag(), c, d);
        int k = -1;
        double best = 1e300;
        for (int i = 0; i < 4; ++i) {
            if (!ev.admissible[i]) continue;
            const double dd = std::abs(ev.m[i] - tracked);
            if (dd < best) {
                best = dd;
                k = i;
            }
        }
        ev.selected = k;
        ev.continuation_used = true;
    }
    return ev;
}

cd select_branch(const StieltjesEvaluation& ev, double c) {
    (void)c;
    if (ev.selected < 0) {
        int count = 0;
        for (bool a : ev.admissible) count += a;
        throw BranchAmbiguityError(
            "no single admissible Stieltjes branch (z too close to the real "
            "axis or numeric breakdown)",
            count);
    }
    return ev.m[ev.selected];
}

LsdModel::LsdModel(double c) : c_(c) {
    if (c <= 0.0) throw ConfigError("c must be > 0");
    d_ = lsd_boundary(c);
    atom_ = lsd_point_mass(c);

    // cumulative-mass anchors on the substituted axis t = sqrt(x)
    const int K = 64;
    const double td = std::sqrt(d_);
    anchor_t_.resize(K + 1);
    anchor_h_.resize(K + 1);
    anchor_t_[0] = 0.0;
    anchor_h_[0] = 0.0;
    const auto integrand = [this](double t) { return 2.0 * t * density(t * t); };
    for (int k = 1; k <= K; ++k) {
        anchor_t_[k] = td * double(k) / K;
        anchor_h_[k] =
            anchor_h_[k - 1] +
            gk_integrate(integrand, anchor_t_[k - 1], anchor_t_[k], 2e-10);
    }
    half_ = anchor_h_[K];
}

double LsdModel::density(double x) const {
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    const double ax = std::fabs(x);
    if (ax > d_) return 0.0;
    if (ax < 1e-120) {
        // analytic x -> 0 limits; the cubic coefficients would overflow
        if (std::fabs(c_ - 1.0) <= kCUnit)
            return std::sqrt(2.0 / ax) / (2.0 * kPi);
        if (c_ < 1.0)
            return std::sqrt(c_ * (2.0 - c_)) / (kPi * c_ * (1.0 - c_));
        return 1.0 / (kPi * c_ * (c_ - 1.0));
    }
    const double y0 = y0_at(ax, c_);
    if (1.0 + y0 <= 0.0) return 0.0;
    const double s = std::sqrt(1.0 + y0);
    // equal to y0^2/(1+y0) - ((1-c)/|x| + 1/sqrt(1+y0))^2 via the defining
    // cubic; this form avoids the cancellation of the two O(1/x^2) terms
    const double arg = 4.0 * (1.0 + y0) / (x * x * y0 * y0) - 2.0 -
                       2.0 * (1.0 - c_) / (ax * s);
    return arg <= 0.0 ? 0.0 : std::sqrt(arg) / (2.0 * c_ * kPi);
}

double LsdModel::mass_to(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= d_) return half_;
    const double t = std::sqrt(u);
    const double td = anchor_t_.back();
    const int K = int(anchor_t_.size()) - 1;
    int k = std::min(K - 1, std::max(0, int(t / td * K)));
    while (k > 0 && anchor_t_[k] > t) --k;
    while (k < K - 1 && anchor_t_[k + 1] <= t) ++k;
    const auto integrand = [this](double s) { return 2.0 * s * density(s * s); };
    return anchor_h_[k] + gk_integrate(integrand, anchor_t_[k], t, 1e-9);
}

double LsdModel::cdf(double x) const {
    if (x <= -d_) return 0.0;
    if (x >= d_) return 1.0;
    if (x < 0.0) return half_ - mass_to(-x);
    return std::min(1.0, atom_ + half_ + mass_to(x));
}

double LsdModel::cdf_left(double x) const {
    if (x == 0.0) return half_;
    return cdf(x);
}

cd LsdModel::stieltjes(cd z) const {
    return select_branch(stieltjes_roots(z, c_), c_);
}

double mp_upper_edge(double c) { return (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c)); }

double mp_density(double x, double c) {
    if (c <= 0.0) throw ConfigError("c must be > 0");
    const double s = std::sqrt(c);
    const double bm = (1.0 - s) * (1.0 - s), bp = (1.0 + s) * (1.0 + s);
    if (x <= bm || x >= bp) return 0.0;
    return std::sqrt((bp - x) * (x - bm)) / (2.0 * kPi * c * x);
}

MarchenkoPastur::MarchenkoPastur(double ratio) : c(ratio), atom(lsd_point_mass(ratio)) {}

double MarchenkoPastur::cdf(double x) const {
    const double s = std::sqrt(c);
    const double bm = (1.0 - s) * (1.0 - s), bp = (1.0 + s) * (1.0 + s);
    double acc = x >= 0.0 ? atom : 0.0;
    if (x > bm) {
        const double hi = std::min(x, bp);
        acc += gk_integrate(
            [this](double t) { return 2.0 * t * mp_density(t * t, c); },
            std::sqrt(bm), std::sqrt(hi), 1e-9);
    }
    return std::min(1.0, acc);
}

double MarchenkoPastur::cdf_left(double x) const {
    if (x == 0.0) return 0.0;
    return cdf(x);
}

} // namespace lspec
