#include "lmcf/solitons.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "lmcf/generators.hpp"

namespace lmcf {

std::string to_string(SolitonKind k) {
    switch (k) {
        case SolitonKind::minimal: return "minimal";
        case SolitonKind::shrinker: return "shrinker";
        case SolitonKind::expander: return "expander";
        case SolitonKind::translator: return "translator";
    }
    return "minimal";
}

SolitonKind soliton_kind_from_string(const std::string& s) {
    for (auto k : {SolitonKind::minimal, SolitonKind::shrinker, SolitonKind::expander, SolitonKind::translator})
        if (to_string(k) == s) return k;
    throw SolitonError("unknown soliton kind '" + s + "'");
}

SolitonSpec SolitonSpec::standard(SolitonKind kind) {
    SolitonSpec s;
    s.kind = kind;
    if (kind == SolitonKind::shrinker) s.lambda = -0.5;
    if (kind == SolitonKind::expander) s.lambda = 0.5;
    return s;
}

void SolitonSpec::validate() const {
    switch (kind) {
        case SolitonKind::minimal:
        case SolitonKind::translator:
            if (lambda != 0.0) throw SolitonError(to_string(kind) + " solitons have lambda = 0");
            break;
        case SolitonKind::shrinker:
            if (!(lambda < 0.0)) throw SolitonError("shrinkers need lambda < 0");
            break;
        case SolitonKind::expander:
            if (!(lambda > 0.0)) throw SolitonError("expanders need lambda > 0");
            break;
    }
    if (alpha && !(*alpha > 0.0 && *alpha < pi)) throw SolitonError("alpha must lie in (0, pi)");
    if (!(scale > 0.0)) throw SolitonError("scale must be positive");
    if (kind == SolitonKind::translator && translator_speed != 1.0) throw SolitonError("translator speed is fixed at 1");
}

double soliton_residual(const ProfileCurve& curve, const SolitonSpec& spec) {
    spec.validate();
    const RefinedFrame f = refined_frame(curve);
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!f.interior[i]) continue;
        const Vec2 p = curve[i];
        const Vec2 n = f.normal[i];
        double r;
        if (spec.kind == SolitonKind::translator) {
            r = f.signed_curvature[i] - spec.translator_speed * n.x;
        } else {
            const double gn = dot(p, n);
            r = f.signed_curvature[i] - gn / norm2(p) - spec.lambda * gn;
        }
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

SolitonProfile circle_shrinker(double lambda, std::size_t samples) {
    if (lambda == 0.0) throw SolitonError("no minimal circle about the origin");
    if (!(lambda < 0.0)) throw SolitonError("circle solitons about the origin need lambda < 0");
    SolitonSpec spec = SolitonSpec::standard(SolitonKind::shrinker);
    spec.lambda = lambda;
    ProfileCurve c = circle(std::sqrt(-2.0 / lambda), samples);
    const double res = soliton_residual(c, spec);
    return {spec, std::move(c), res};
}

SolitonProfile grim_reaper(std::size_t samples, double y_margin) {
    if (samples < 16) throw SolitonError("grim_reaper needs at least 16 samples");
    if (!(y_margin > 0.0 && y_margin < pi / 2)) throw SolitonError("y_margin must lie in (0, pi/2)");
    // Arclength from the tip is s = asinh(tan y), so y = atan(sinh s).
    const double s_max = std::asinh(std::tan(pi / 2 - y_margin));
    const double h = 2.0 * s_max / static_cast<double>(samples - 1);
    if (h > 0.1)
        throw SolitonError("y_margin too small for " + std::to_string(samples) +
                           " samples: tail spacing would exceed 0.1");
    std::vector<Vec2> pts(samples);
    double res = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = -s_max + h * static_cast<double>(i);
        const double y = std::atan(std::sinh(s));
        pts[i] = {-std::log(std::cos(y)), y};
        // x(y) = -log cos y: tangent (sin y, cos y), left normal (-cos y, sin y),
        // signed curvature -x''/|gamma'|^3 = -cos y.
        const double dx = std::tan(y), ddx = 1.0 / (std::cos(y) * std::cos(y));
        const double speed = std::sqrt(1.0 + dx * dx);
        const double kappa = -ddx / (speed * speed * speed);
        const double e1_normal = -1.0 / speed;
        res = std::max(res, std::abs(kappa - e1_normal));
    }
    SolitonSpec spec = SolitonSpec::standard(SolitonKind::translator);
    return {spec, ProfileCurve(std::move(pts), Topology::open), res};
}

SolitonProfile lawlor_profile(double c, double window, double spacing) {
    if (!(c > 0.0)) throw SolitonError("c must be positive");
    if (!(window > 2.0 * std::sqrt(c))) throw SolitonError("window must exceed 2 sqrt(c)");
    ProfileCurve curve = arc(pi / 2, c, window, spacing);
    // y = sqrt(x^2 + c): kappa = c / r^3 and <gamma, N> = c / r, so the radial
    // term c / r^3 cancels the curvature.
    double res = 0.0;
    for (const Vec2 p : curve.points()) {
        const double dy = p.x / p.y, ddy = c / (p.y * p.y * p.y);
        const double speed = std::sqrt(1.0 + dy * dy);
        const double kappa = ddy / (speed * speed * speed);
        const double gn = (p.y - p.x * dy) / speed;
        res = std::max(res, std::abs(kappa - gn / norm2(p)));
    }
    SolitonSpec spec = SolitonSpec::standard(SolitonKind::minimal);
    spec.alpha = pi / 2;
    return {spec, std::move(curve), res};
}

namespace {

using State = std::array<double, 3>;  // x, y, psi

double lambda_of(SolitonKind kind) {
    switch (kind) {
        case SolitonKind::shrinker: return -0.5;
        case SolitonKind::expander: return 0.5;
        case SolitonKind::minimal: return 0.0;
        case SolitonKind::translator: break;
    }
    throw SolitonError("translators are not shot from a vertex");
}

struct ProfileOde {
    double lambda;
    void operator()(const State& s, State& ds, double) const {
        const double c = std::cos(s[2]), sn = std::sin(s[2]);
        const double r2 = s[0] * s[0] + s[1] * s[1];
        if (r2 < 1e-24) throw SolitonError("shooting trajectory reached the origin");
        const double gn = -s[0] * sn + s[1] * c;
        ds = {c, sn, gn * (1.0 / r2 + lambda)};
        if (std::abs(ds[2]) > 1e8) throw SolitonError("curvature blow-up while shooting");
    }
};

using Dense = boost::numeric::odeint::dense_output_runge_kutta<
    boost::numeric::odeint::controlled_runge_kutta<boost::numeric::odeint::runge_kutta_dopri5<State>>>;

Dense make_stepper(double tol) {
    return boost::numeric::odeint::make_dense_output(tol, tol, boost::numeric::odeint::runge_kutta_dopri5<State>());
}

struct HalfBranch {
    std::vector<State> samples;  // at arclength k * step
    double step = 0.0;
    std::optional<double> closure;  // arclength of the first return to x = 0
};

// Samples the right half-branch at arclengths k * step up to `length`. When
// stop_at_axis is set, integration ends at the first return to the y-axis.
HalfBranch integrate_branch(double lambda, double d, double length, double step, double tol, bool stop_at_axis) {
    ProfileOde ode{lambda};
    Dense stepper = make_stepper(tol);
    stepper.initialize(State{0.0, d, 0.0}, 0.0, std::min(step, 1e-3 * d));
    HalfBranch out;
    out.step = step;
    out.samples.push_back(State{0.0, d, 0.0});
    std::size_t k = 1;
    while (static_cast<double>(k) * step <= length * (1.0 + 1e-12)) {
        const double prev_t = stepper.current_time();
        const State prev = stepper.current_state();
        stepper.do_step(ode);
        const double cur_t = stepper.current_time();
        if (stop_at_axis && prev_t > 0.0 && prev[0] > 0.0 && stepper.current_state()[0] <= 0.0) {
            auto x_at = [&](double t) {
                State s;
                stepper.calc_state(t, s);
                return s[0];
            };
            boost::math::tools::eps_tolerance<double> tol_fn(50);
            auto [a, b] = boost::math::tools::bisect(x_at, prev_t, cur_t, tol_fn);
            out.closure = 0.5 * (a + b);
            return out;
        }
        while (static_cast<double>(k) * step <= std::min(cur_t, length * (1.0 + 1e-12))) {
            State s;
            stepper.calc_state(static_cast<double>(k) * step, s);
            out.samples.push_back(s);
            ++k;
        }
    }
    return out;
}

// Least-squares fit phi(r) = phi_inf + a / r^2 over the given samples.
double extrapolated_polar_angle(const std::vector<State>& samples, std::size_t from) {
    double su = 0, sp = 0, suu = 0, sup = 0;
    double n = 0;
    double prev = std::atan2(samples[from][1], samples[from][0]);
    for (std::size_t i = from; i < samples.size(); ++i) {
        double phi = std::atan2(samples[i][1], samples[i][0]);
        while (phi - prev > pi) phi -= 2.0 * pi;
        while (phi - prev < -pi) phi += 2.0 * pi;
        prev = phi;
        const double u = 1.0 / (samples[i][0] * samples[i][0] + samples[i][1] * samples[i][1]);
        su += u;
        sp += phi;
        suu += u * u;
        sup += u * phi;
        n += 1.0;
    }
    const double det = n * suu - su * su;
    if (std::abs(det) < 1e-300) return sp / n;
    return (suu * sp - su * sup) / det;
}

std::vector<Vec2> points_of(const std::vector<State>& s) {
    std::vector<Vec2> p;
    p.reserve(s.size());
    for (const State& q : s) p.push_back({q[0], q[1]});
    return p;
}

}  // namespace

ShotProfile shoot_profile(SolitonKind kind, double vertex_distance, double max_arclength, const ShootOptions& options) {
    const double lambda = lambda_of(kind);
    if (!(vertex_distance > 0.0)) throw SolitonError("vertex_distance must be positive");
    if (!(max_arclength > 8.0 * options.spacing)) throw SolitonError("max_arclength too short for the spacing");
    const double d = vertex_distance;
    SolitonSpec spec = SolitonSpec::standard(kind);
    // Vertex curvature is of order 1/d; keep the samples well inside that scale.
    ShootOptions opts = options;
    opts.spacing = std::min(options.spacing, d / 64.0);

    if (kind == SolitonKind::shrinker) {
        const HalfBranch probe = integrate_branch(lambda, d, max_arclength, opts.spacing, opts.tolerance, true);
        if (probe.closure) {
            // Resample the closed half at a spacing dividing its length exactly.
            const double len = *probe.closure;
            const auto m = static_cast<std::size_t>(std::max(4.0, std::round(len / opts.spacing)));
            HalfBranch half = integrate_branch(lambda, d, len, len / static_cast<double>(m), opts.tolerance, false);
            if (half.samples.size() != m + 1) throw SolitonError("closed branch resampling lost its end point");
            const State end = half.samples.back();
            std::vector<Vec2> pts = points_of(half.samples);
            pts.back().x = 0.0;  // on the axis up to the root tolerance
            for (std::size_t i = m - 1; i >= 1; --i) pts.push_back({-half.samples[i][0], half.samples[i][1]});
            ShotProfile out{{spec, ProfileCurve(std::move(pts), Topology::closed), 0.0}, d, std::nullopt, std::nullopt};
            double defect = std::remainder(std::abs(end[2]) - pi, 2.0 * pi);
            out.closure_defect = std::abs(defect);
            out.profile.residual = soliton_residual(out.profile.curve, spec);
            return out;
        }
    }

    const HalfBranch half = integrate_branch(lambda, d, max_arclength, opts.spacing, opts.tolerance, false);
    const std::size_t m = half.samples.size() - 1;
    if (m < 8) throw SolitonError("too few samples along the branch");
    const double phi = extrapolated_polar_angle(half.samples, m / 2);
    const double phi_check = extrapolated_polar_angle(half.samples, (3 * m) / 4);
    if (std::abs(phi - phi_check) > 1e-3)
        throw SolitonError("asymptotic angle not converged by arclength " + std::to_string(max_arclength));
    const double alpha = pi - 2.0 * phi;
    if (!(alpha > 0.0 && alpha < pi))
        throw SolitonError("branch does not open into a cone about the y-axis (alpha = " + std::to_string(alpha) + ")");

    std::vector<Vec2> pts;
    pts.reserve(2 * m + 1);
    for (std::size_t i = m; i >= 1; --i) pts.push_back({-half.samples[i][0], half.samples[i][1]});
    for (std::size_t i = 0; i <= m; ++i) pts.push_back({half.samples[i][0], half.samples[i][1]});
    spec.alpha = alpha;
    AsymptoticData asym{alpha, pi / 2};
    ShotProfile out{{spec, ProfileCurve(std::move(pts), Topology::open, asym), 0.0},
                    d, alpha, std::nullopt};
    out.profile.residual = soliton_residual(out.profile.curve, spec);
    return out;
}

ShotProfile expander_for_angle(double alpha, const ExpanderSearch& search) {
    if (!(alpha > 0.0 && alpha < pi / 2)) throw SolitonError("expander angle must lie in (0, pi/2)");
    auto shoot = [&](double d) {
        const double len = std::max(search.min_arclength, search.arclength_factor * d);
        return shoot_profile(SolitonKind::expander, d, len, search.shoot);
    };
    // Opening angle falls from near pi/2 (small vertex distance, Lawlor-like
    // core) towards 0 (large distance, nearly flat); checked, not assumed.
    double lo = search.d_min, hi = search.d_max;
    ShotProfile p_lo = shoot(lo), p_hi = shoot(hi);
    const double a_lo = *p_lo.opening_angle - alpha, a_hi = *p_hi.opening_angle - alpha;
    if (!(a_lo > 0.0 && a_hi < 0.0))
        throw SolitonError("no bracket for alpha = " + std::to_string(alpha) + " in vertex distances [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        ShotProfile p = shoot(mid);
        const double diff = *p.opening_angle - alpha;
        if (std::abs(diff) < search.angle_tolerance) return p;
        if (diff > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * hi) break;
    }
    throw SolitonError("bisection for alpha = " + std::to_string(alpha) + " did not reach the angle tolerance");
}

ShotProfile closed_shrinker_search(double d_lo, double d_hi, double max_arclength, const ShootOptions& options) {
    if (!(d_lo > 0.0 && d_hi > d_lo)) throw SolitonError("need 0 < d_lo < d_hi");
    auto defect = [&](double d) {
        try {
            const ShotProfile p = shoot_profile(SolitonKind::shrinker, d, max_arclength, options);
            return p.closure_defect ? *p.closure_defect : pi;
        } catch (const SolitonError&) {
            return pi;
        }
    };
    std::uintmax_t iters = 200;
    const auto [d, f] = boost::math::tools::brent_find_minima(defect, d_lo, d_hi, 40, iters);
    ShotProfile best = shoot_profile(SolitonKind::shrinker, d, max_arclength, options);
    if (!best.closure_defect) throw SolitonError("no closing shrinker in the searched range");
    (void)f;
    return best;
}

}  // namespace lmcf
