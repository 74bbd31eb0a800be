#include "lmcf/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <functional>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "lmcf/kernels.hpp"

namespace lmcf {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double proxy_epsilon(const ProfileCurve& curve) {
    return std::min(default_origin_epsilon(curve), 1e-2 * curve.min_spacing());
}

// Contiguous tail of frames whose K^2 is within a factor 10 of the last.
std::size_t final_decade_start(const std::vector<ProxySample>& h) {
    const double floor = h.back().K / std::sqrt(10.0);
    std::size_t i = h.size() - 1;
    while (i > 0 && h[i - 1].K >= floor) --i;
    return i;
}

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rss = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += r * r;
    }
    return f;
}

// Grid search followed by Brent refinement around the best grid point.
std::pair<double, double> minimize(const std::function<double(double)>& f, double lo, double hi, int grid) {
    const double step = (hi - lo) / grid;
    double best_x = lo, best_f = inf;
    for (int i = 0; i <= grid; ++i) {
        const double x = lo + step * i;
        const double v = f(x);
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
    }
    const double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    const auto r = boost::math::tools::brent_find_minima(f, a, b, 30);
    if (r.second < best_f) return {r.first, r.second};
    return {best_x, best_f};
}

Vec2 mirror_aware_offset(Vec2 a, Vec2 b) {
    // gamma and -gamma are the same surface: compare against the nearer image.
    return norm2(b - a) <= norm2(b + a) ? b - a : b + a;
}

}  // namespace

ProxyValue curvature_proxy(const ProfileCurve& curve) {
    kernels::FieldBuffers f;
    kernels::compute_fields(curve.points(), curve.closed(), proxy_epsilon(curve), f);
    ProxyValue out;
    const std::size_t n = curve.size();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.one_sided[i]) continue;
        double k = std::abs(f.kappa[i]);
        if (!f.regularized[i]) k = std::max(k, std::abs(f.radial[i]));
        if (k > out.K) {
            out.K = k;
            arg = i;
        }
    }
    out.location = curve[arg];
    const std::size_t prev = arg > 0 ? arg - 1 : (curve.closed() ? n - 1 : arg);
    const std::size_t next = arg + 1 < n ? arg + 1 : (curve.closed() ? 0 : arg);
    out.spacing = 0.5 * (distance(curve[prev], curve[arg]) + distance(curve[arg], curve[next]));
    return out;
}

std::vector<ProxySample> proxy_history(const Trajectory& traj) {
    std::vector<ProxySample> h;
    h.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots) {
        const auto p = curvature_proxy(s.curve);
        h.push_back({s.time, p.K, p.location, p.spacing});
    }
    return h;
}

SingularityEstimate estimate_singularity(const Trajectory& traj) {
    if (traj.snapshots.empty()) throw AnalysisError("empty trajectory");
    const auto h = proxy_history(traj);
    const std::size_t start = final_decade_start(h);
    const std::size_t count = h.size() - start;
    if (count < 8)
        throw AnalysisError("only " + std::to_string(count) +
                            " snapshots in the final decade of K^2; at least 8 are needed");

    SingularityEstimate e;
    e.frames_in_final_decade = count;
    std::vector<double> t, y;
    for (std::size_t i = start; i < h.size(); ++i) {
        t.push_back(h[i].time);
        y.push_back(1.0 / (h[i].K * h[i].K));
    }
    const double t_last = t.back();
    const double span = t_last - t.front();
    if (!(span > 0.0)) throw AnalysisError("final decade spans no time");
    const LineFit lin = least_squares(t, y);
    if (!(lin.slope < 0.0)) throw AnalysisError("curvature proxy is not growing over the final decade");
    e.T_linear = -lin.intercept / lin.slope;

    // log K = a - q log(T - t); choose T minimizing the regression residual.
    std::vector<double> logk;
    for (std::size_t i = start; i < h.size(); ++i) logk.push_back(std::log(h[i].K));
    auto rss = [&](double z) {
        const double T = t_last + std::exp(z);
        std::vector<double> x(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) x[i] = std::log(T - t[i]);
        return least_squares(x, logk).rss;
    };
    const double K_last = h.back().K;
    const double z_lo = std::log(1e-4 / (K_last * K_last)), z_hi = std::log(10.0 * span);
    const double z = minimize(rss, std::min(z_lo, z_hi - 1.0), z_hi, 80).first;
    e.T_power = t_last + std::exp(z);
    {
        std::vector<double> x(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) x[i] = std::log(e.T_power - t[i]);
        e.power_exponent = -least_squares(x, logk).slope;
    }

    e.disagreement = !(e.T_linear > t_last) || std::abs(e.T_power - e.T_linear) > 0.05 * span;
    e.T_hat = e.disagreement ? e.T_power : e.T_linear;
    // A curve that is entirely at the singular scale (a shrinking round
    // point) or shrank a hundredfold as a whole collapses to its centroid,
    // not to an arbitrary argmax.
    const ProfileCurve& last = traj.back().curve;
    const bool whole = extent(last) * K_last <= 20.0 || extent(last) < 0.01 * extent(traj.snapshots.front().curve);
    e.w_hat = whole ? centroid(last) : h.back().location;
    // A neck within a couple of its own widths of the origin pinches at the origin.
    if (norm(e.w_hat) * K_last <= 2.0) e.w_hat = Vec2{};

    for (std::size_t i = start + 1; i < h.size(); ++i) {
        const Vec2 d = mirror_aware_offset(h[i - 1].location, h[i].location);
        const double approach = std::abs(norm(h[i].location - e.w_hat) - norm(h[i - 1].location - e.w_hat));
        if (norm(d) > 10.0 * h[i].spacing_at_location + approach) ++e.argmax_jumps;
    }
    return e;
}

std::string to_string(TypeVerdict v) {
    switch (v) {
        case TypeVerdict::type_I: return "I";
        case TypeVerdict::type_II: return "II";
        case TypeVerdict::none: return "none";
        case TypeVerdict::inconclusive: return "inconclusive";
    }
    return "none";
}

TypeVerdict type_verdict_from_string(const std::string& s) {
    if (s == "I") return TypeVerdict::type_I;
    if (s == "II") return TypeVerdict::type_II;
    if (s == "none") return TypeVerdict::none;
    if (s == "inconclusive") return TypeVerdict::inconclusive;
    throw AnalysisError("unknown verdict: " + s);
}

Classification classify_type(const Trajectory& traj, double T_hat, const ClassifyOptions& options) {
    Classification c;
    for (const auto& s : traj.snapshots) {
        if (!(s.time < T_hat)) continue;
        const double K = curvature_proxy(s.curve).K;
        const double tau = T_hat - s.time;
        c.monitor.push_back({s.time, tau, K * K * tau});
    }
    if (c.monitor.size() < 3) return c;

    const double tau_last = c.monitor.back().tau;
    std::vector<double> decade;
    std::vector<double> x, y;
    for (const auto& m : c.monitor) {
        if (m.tau <= 10.0 * tau_last) decade.push_back(m.value);
        if (m.tau >= 10.0 * tau_last && m.tau <= 1000.0 * tau_last) {
            x.push_back(std::log(1.0 / m.tau));
            y.push_back(std::log(m.value));
        }
    }
    if (decade.size() < 3) return c;
    std::vector<double> sorted = decade;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    c.final_ratio = decade.back() / median;
    c.final_growth = decade.back() / decade.front();
    c.drift_exponent = x.size() >= 3 ? least_squares(x, y).slope : 0.0;

    if (c.final_growth > options.growth_factor)
        c.verdict = TypeVerdict::type_II;
    else if (c.final_ratio < options.bounded_ratio && c.drift_exponent < options.max_type1_drift)
        c.verdict = TypeVerdict::type_I;
    else
        c.verdict = TypeVerdict::inconclusive;
    return c;
}

RescaledCurve type1_rescale_one(const Trajectory& traj, Vec2 w, double T_hat, double sigma) {
    if (!(sigma > 0.0)) throw AnalysisError("sigma must be positive");
    const double tau_req = 1.0 / (sigma * sigma);
    const Snapshot* best = nullptr;
    double best_gap = inf;
    for (const auto& s : traj.snapshots) {
        if (!(s.time < T_hat)) continue;
        const double gap = std::abs(std::log((T_hat - s.time) / tau_req));
        if (gap < best_gap) {
            best_gap = gap;
            best = &s;
        }
    }
    if (!best || best_gap > std::log(2.0))
        throw AnalysisError("sigma = " + std::to_string(sigma) + " is beyond the resolved range of the trajectory");
    RescaledCurve r;
    r.sigma_requested = sigma;
    r.sigma = 1.0 / std::sqrt(T_hat - best->time);
    r.time = best->time;
    const ProfileCurve shifted = w == Vec2{} ? best->curve : best->curve.translated(-w);
    r.curve = shifted.scaled(r.sigma);
    r.origin = -r.sigma * w;
    return r;
}

std::vector<RescaledCurve> type1_rescale(const Trajectory& traj, Vec2 w, double T_hat, std::span<const double> sigmas) {
    std::vector<RescaledCurve> out;
    for (double s : sigmas) out.push_back(type1_rescale_one(traj, w, T_hat, s));
    return out;
}

Type2Sequence type2_rescale(const Trajectory& traj, TypeVerdict verdict, std::size_t max_frames) {
    if (verdict == TypeVerdict::type_I || verdict == TypeVerdict::none)
        throw AnalysisError("Type II rescaling needs a Type II or inconclusive verdict, got " + to_string(verdict));
    if (traj.snapshots.empty()) throw AnalysisError("empty trajectory");
    const auto h = proxy_history(traj);
    std::size_t start = final_decade_start(h);
    if (h.size() - start > max_frames) start = h.size() - max_frames;
    Type2Sequence seq;
    for (std::size_t i = start; i < h.size(); ++i) {
        const auto& s = traj.snapshots[i];
        RescaledCurve r;
        r.sigma_requested = h[i].K;
        r.sigma = h[i].K;
        r.time = s.time;
        r.curve = s.curve.translated(-h[i].location).scaled(h[i].K);
        r.origin = -h[i].K * h[i].location;
        seq.curves.push_back(std::move(r));
        if (i > start) {
            const Vec2 d = mirror_aware_offset(h[i - 1].location, h[i].location);
            // Motion of the argmax along the curve as the singularity forms is expected;
            // discount its change of distance to the final argmax.
            const Vec2 w = h.back().location;
            const double approach = std::abs(norm(h[i].location - w) - norm(h[i - 1].location - w));
            if (norm(d) > 10.0 * h[i].spacing_at_location + approach) seq.unstable = true;
        }
    }
    return seq;
}

std::vector<RescaledCurve> blow_down(std::span<const RescaledCurve> curves, std::span<const double> lambdas,
                                     double window_radius) {
    std::vector<RescaledCurve> out;
    for (const auto& c : curves)
        for (double l : lambdas) {
            if (!(l > 0.0)) throw AnalysisError("blow-down factors must be positive");
            double reach = 0.0;
            for (const Vec2 p : c.curve.points()) reach = std::max(reach, norm(p));
            if (reach / l < window_radius)
                throw AnalysisError("blow-down by " + std::to_string(l) + " exhausts the window");
            RescaledCurve r = c;
            r.sigma_requested = c.sigma_requested / l;
            r.sigma = c.sigma / l;
            r.curve = c.curve.scaled(1.0 / l);
            r.origin = c.origin / l;
            out.push_back(std::move(r));
        }
    return out;
}

namespace {

// The curve restricted to the comparison window: vertices inside it, and
// the segments that come within 1.5 window radii of its centre.
struct Target {
    std::vector<Vec2> vertices;
    kernels::SegmentSet segments;
    std::vector<Polyline> lines;
    double radius = 0.0;
    std::shared_ptr<const kernels::SegmentGrid> grid;  // over `segments`
};

Target make_target(const ProfileCurve& curve, const MatchOptions& o) {
    Target t;
    t.radius = o.window_radius;
    Polyline line(curve.points());
    if (curve.closed()) line.push_back(curve[0]);
    t.lines.push_back(line);
    if (o.with_mirror) {
        Polyline m(line);
        for (Vec2& p : m) p = 2.0 * o.origin - p;
        // Already symmetric (figure-eight about its centre): the mirror would double every branch.
        if (kernels::directed_hausdorff_serial(m, line) > 0.05 * curve.max_spacing()) t.lines.push_back(std::move(m));
    }
    const double r2 = o.window_radius * o.window_radius;
    const double reach = 1.5 * o.window_radius;
    for (const auto& l : t.lines) {
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (norm2(l[i]) <= r2) t.vertices.push_back(l[i]);
            if (i + 1 < l.size() && kernels::point_segment_distance({}, l[i], l[i + 1]) <= reach) {
                t.segments.start.push_back(l[i]);
                t.segments.end.push_back(l[i + 1]);
            }
        }
    }
    if (t.vertices.size() < 2) throw AnalysisError("curve has fewer than two vertices in the comparison window");
    t.grid = std::make_shared<kernels::SegmentGrid>(t.segments, o.window_radius / 75.0);
    return t;
}

double model_step(const Target& t) { return t.radius / 150.0; }

struct Comparison {
    double hausdorff = inf;
    double mean = inf;  // mean distance from the windowed vertices to the model
};

Comparison compare(const Target& t, const std::vector<Polyline>& model) {
    kernels::SegmentSet segs;
    std::vector<Vec2> inside;
    const double r2 = t.radius * t.radius;
    for (const auto& l : model)
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (norm2(l[i]) <= r2) inside.push_back(l[i]);
            if (i + 1 < l.size()) {
                segs.start.push_back(l[i]);
                segs.end.push_back(l[i + 1]);
            }
        }
    Comparison c;
    if (inside.empty()) return c;
    const kernels::SegmentGrid grid(std::move(segs), 2.0 * model_step(t));
    double to_model = 0.0, sum = 0.0;
    for (const Vec2 p : t.vertices) {
        const double d = grid.nearest(p);
        to_model = std::max(to_model, d);
        sum += d;
    }
    double to_curve = 0.0;
    for (const Vec2 p : inside) to_curve = std::max(to_curve, t.grid->nearest(p));
    c.hausdorff = std::max(to_model, to_curve);
    c.mean = sum / static_cast<double>(t.vertices.size());
    return c;
}

double model_distance(const Target& t, const std::vector<Polyline>& model) { return compare(t, model).hausdorff; }

// Fitting objective: the Hausdorff distance is often decided by one feature
// (a neck gap, say) and flat in the other parameters; a small mean-distance
// term breaks those ties.
double objective(const Target& t, const std::vector<Polyline>& model) {
    const Comparison c = compare(t, model);
    return std::isfinite(c.hausdorff) ? c.hausdorff + 0.01 * c.mean : inf;
}

Polyline straight_line(Vec2 through, double angle, double half_length, double step) {
    const Vec2 d{std::cos(angle), std::sin(angle)};
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_length / step));
    Polyline l;
    for (std::size_t i = 0; i <= n; ++i) l.push_back(through + (-half_length + 2.0 * half_length * i / n) * d);
    return l;
}

double line_half_length(const Target& t, Vec2 origin) { return 1.5 * t.radius + norm(origin); }

std::vector<Polyline> line_pair_model(const Target& t, Vec2 origin, double theta) {
    const double L = line_half_length(t, origin);
    return {straight_line(origin, theta, L, model_step(t)), straight_line(origin, theta + pi / 2, L, model_step(t))};
}

std::vector<Polyline> circle_model(const Target& t, Vec2 center, double radius) {
    const auto n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(2.0 * pi * radius / model_step(t))));
    Polyline l;
    for (std::size_t i = 0; i <= n; ++i) {
        const double a = 2.0 * pi * i / n;
        l.push_back(center + radius * Vec2{std::cos(a), std::sin(a)});
    }
    return {l};
}

// Grim Reaper with tip at `tip`, opening in direction theta, unit tip curvature.
std::vector<Polyline> grim_reaper_model(const Target& t, Vec2 tip, double theta) {
    const double reach = 1.5 * t.radius + norm(tip);
    const double S = reach + std::log(2.0) + 1.0;
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * S / model_step(t)));
    Polyline l;
    for (std::size_t i = 0; i <= n; ++i) {
        const double s = -S + 2.0 * S * i / n;
        const Vec2 p{std::log(std::cosh(s)), std::atan(std::sinh(s))};
        l.push_back(tip + rotate(p, theta));
    }
    return {l};
}

// Both branches of the rotated hyperbola y^2 - x^2 = c centred at `center`.
std::vector<Polyline> lawlor_model(const Target& t, Vec2 center, double theta, double c) {
    const double X = 1.5 * t.radius + norm(center);
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * X / model_step(t)));
    Polyline up, down;
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = -X + 2.0 * X * i / n;
        const double y = std::sqrt(x * x + c);
        up.push_back(center + rotate({x, y}, theta));
        down.push_back(center + rotate({x, -y}, theta));
    }
    return {up, down};
}

ModelFit fit_line_pair(const Target& t, const MatchOptions& o) {
    auto f = [&](double th) { return objective(t, line_pair_model(t, o.origin, th)); };
    const double th = std::fmod(minimize(f, 0.0, pi / 2, 90).first + pi / 2, pi / 2);
    return {"line_pair", model_distance(t, line_pair_model(t, o.origin, th)), {{"theta", th}}, "", 0.0};
}

ModelFit fit_line(const Target& t, const MatchOptions& o) {
    const double L = line_half_length(t, o.origin);
    auto f = [&](double th) { return objective(t, {straight_line(o.origin, th, L, model_step(t))}); };
    const double theta = std::fmod(minimize(f, 0.0, pi, 180).first + pi, pi);
    const double d = model_distance(t, {straight_line(o.origin, theta, L, model_step(t))});
    const int mult = line_multiplicity(t.lines, o.origin, theta, t.radius, std::max(2.0 * d, 0.1));
    return {"line", d, {{"theta", theta}, {"multiplicity", static_cast<double>(mult)}}, "", 0.0};
}

ModelFit fit_circle(const Target& t, const MatchOptions& o, double radius, const std::string& name) {
    Vec2 c = o.origin;
    auto dist = [&](Vec2 center) { return objective(t, circle_model(t, center, radius)); };
    // Start from whichever of the origin image and the windowed centroid fits better.
    Vec2 mean{};
    for (const Vec2 p : t.vertices) mean += p;
    mean = mean / static_cast<double>(t.vertices.size());
    if (dist(mean) < dist(c)) c = mean;
    double best = dist(c);
    double range = 0.5 * t.radius;
    for (int round = 0; round < 4; ++round, range *= 0.5) {
        const auto rx = minimize([&](double x) { return dist({x, c.y}); }, c.x - range, c.x + range, 8);
        if (rx.second < best) {
            best = rx.second;
            c.x = rx.first;
        }
        const auto ry = minimize([&](double y) { return dist({c.x, y}); }, c.y - range, c.y + range, 8);
        if (ry.second < best) {
            best = ry.second;
            c.y = ry.first;
        }
    }
    best = model_distance(t, circle_model(t, c, radius));
    return {name, best, {{"cx", c.x}, {"cy", c.y}, {"radius", radius}}, "", 0.0};
}

ModelFit fit_grim_reaper(const Target& t) {
    Vec2 tip{};
    auto dist = [&](Vec2 p, double th) { return objective(t, grim_reaper_model(t, p, th)); };
    auto [theta, best] = minimize([&](double th) { return dist(tip, th); }, 0.0, 2.0 * pi, 72);
    double range = 0.5;
    for (int round = 0; round < 3; ++round, range *= 0.5) {
        const auto rx = minimize([&](double x) { return dist({x, tip.y}, theta); }, tip.x - range, tip.x + range, 8);
        if (rx.second < best) {
            best = rx.second;
            tip.x = rx.first;
        }
        const auto ry = minimize([&](double y) { return dist({tip.x, y}, theta); }, tip.y - range, tip.y + range, 8);
        if (ry.second < best) {
            best = ry.second;
            tip.y = ry.first;
        }
        const auto rt = minimize([&](double th) { return dist(tip, th); }, theta - 0.2 * range, theta + 0.2 * range, 8);
        if (rt.second < best) {
            best = rt.second;
            theta = rt.first;
        }
    }
    theta = std::fmod(std::fmod(theta, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
    best = model_distance(t, grim_reaper_model(t, tip, theta));
    return {"grim_reaper", best, {{"theta", theta}, {"tip_x", tip.x}, {"tip_y", tip.y}}, "", 0.0};
}

ModelFit fit_lawlor(const Target& t, const MatchOptions& o) {
    // A neck narrower than 0.2 is indistinguishable from the line pair at window scale.
    const double z_lo = std::log(0.04), z_hi = std::log(4.0 * t.radius * t.radius);
    double theta = 0.0, z = 0.0;
    auto dist = [&](double th, double zz) { return objective(t, lawlor_model(t, o.origin, th, std::exp(zz))); };
    double best = inf;
    for (int i = 0; i < 12; ++i) {
        const double zz = z_lo + (z_hi - z_lo) * i / 11.0;
        const auto r = minimize([&](double th) { return dist(th, zz); }, 0.0, pi, 36);
        if (r.second < best) {
            best = r.second;
            theta = r.first;
            z = zz;
        }
    }
    double range = (z_hi - z_lo) / 11.0;
    for (int round = 0; round < 3; ++round, range *= 0.5) {
        const auto rz = minimize([&](double zz) { return dist(theta, zz); }, std::max(z_lo, z - range),
                                 std::min(z_hi, z + range), 8);
        if (rz.second < best) {
            best = rz.second;
            z = rz.first;
        }
        const auto rt = minimize([&](double th) { return dist(th, z); }, theta - 0.1, theta + 0.1, 8);
        if (rt.second < best) {
            best = rt.second;
            theta = rt.first;
        }
    }
    theta = std::fmod(std::fmod(theta, pi) + pi, pi);
    best = model_distance(t, lawlor_model(t, o.origin, theta, std::exp(z)));
    return {"lawlor", best, {{"theta", theta}, {"c", std::exp(z)}}, "", 0.0};
}

}  // namespace

std::vector<std::string> shrinker_models() { return {"line_pair", "line", "circle_2", "circle_sqrt2"}; }
std::vector<std::string> ancient_models() { return {"grim_reaper", "lawlor", "line"}; }

namespace {

const std::vector<std::string>& catalog() {
    static const std::vector<std::string> names{"line_pair", "line", "circle_2", "circle_sqrt2", "grim_reaper",
                                                "lawlor"};
    return names;
}

}  // namespace

int line_multiplicity(const std::vector<Polyline>& lines, Vec2 origin, double theta, double window_radius,
                      double tolerance) {
    const Vec2 d{std::cos(theta), std::sin(theta)};
    const Vec2 n = rot90(d);
    constexpr int stations = 20;
    std::vector<int> counts;
    for (int k = 0; k < stations; ++k) {
        const double u = -0.8 * window_radius + (k + 0.5) * 1.6 * window_radius / stations;
        int count = 0;
        for (const auto& l : lines)
            for (std::size_t i = 0; i + 1 < l.size(); ++i) {
                const double a = dot(l[i] - origin, d) - u;
                const double b = dot(l[i + 1] - origin, d) - u;
                // Half-open test so a vertex on the station is counted once.
                if ((a <= 0.0 && b > 0.0) || (a > 0.0 && b <= 0.0)) {
                    const Vec2 p = l[i] + (a / (a - b)) * (l[i + 1] - l[i]);
                    if (std::abs(dot(p - origin, n)) <= tolerance) ++count;
                }
            }
        counts.push_back(count);
    }
    std::vector<int> sorted = counts;
    std::sort(sorted.begin(), sorted.end());
    int mode = sorted.front(), mode_n = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (static_cast<int>(j - i) > mode_n) {
            mode_n = static_cast<int>(j - i);
            mode = sorted[i];
        }
        i = j;
    }
    return mode_n > 0.8 * stations ? mode : 0;
}

double line_pair_distance(const ProfileCurve& curve, double theta, const MatchOptions& options) {
    const Target t = make_target(curve, options);
    return model_distance(t, line_pair_model(t, options.origin, theta));
}

std::vector<Polyline> model_polylines(const ModelFit& fit, Vec2 origin, double window_radius) {
    Target t;
    t.radius = window_radius;
    const auto& p = fit.parameters;
    auto get = [&](const char* k) {
        const auto it = p.find(k);
        if (it == p.end()) throw AnalysisError("fit of " + fit.model + " lacks parameter " + k);
        return it->second;
    };
    if (fit.model == "line_pair") return line_pair_model(t, origin, get("theta"));
    if (fit.model == "line") return {straight_line(origin, get("theta"), line_half_length(t, origin), model_step(t))};
    if (fit.model == "circle_2" || fit.model == "circle_sqrt2")
        return circle_model(t, {get("cx"), get("cy")}, get("radius"));
    if (fit.model == "grim_reaper") return grim_reaper_model(t, {get("tip_x"), get("tip_y")}, get("theta"));
    if (fit.model == "lawlor") return lawlor_model(t, origin, get("theta"), get("c"));
    throw AnalysisError("no polylines for model " + fit.model);
}

std::vector<ModelFit> fit_all_models(const ProfileCurve& curve, const MatchOptions& options) {
    if (!(options.window_radius > 0.0)) throw AnalysisError("window radius must be positive");
    const Target t = make_target(curve, options);
    const auto& names = options.models.empty() ? catalog() : options.models;
    std::vector<ModelFit> fits;
    for (const auto& name : names) {
        if (name == "line_pair")
            fits.push_back(fit_line_pair(t, options));
        else if (name == "line")
            fits.push_back(fit_line(t, options));
        else if (name == "circle_2")
            fits.push_back(fit_circle(t, options, 2.0, name));
        else if (name == "circle_sqrt2")
            fits.push_back(fit_circle(t, options, std::sqrt(2.0), name));
        else if (name == "grim_reaper")
            fits.push_back(fit_grim_reaper(t));
        else if (name == "lawlor")
            fits.push_back(fit_lawlor(t, options));
        else
            throw AnalysisError("unknown model: " + name);
    }
    std::stable_sort(fits.begin(), fits.end(), [](const ModelFit& a, const ModelFit& b) { return a.distance < b.distance; });
    return fits;
}

ModelFit match_model(const ProfileCurve& curve, const MatchOptions& options) {
    const auto fits = fit_all_models(curve, options);
    ModelFit best = fits.front();
    if (fits.size() > 1) {
        best.runner_up = fits[1].model;
        best.runner_up_distance = fits[1].distance;
    }
    if (best.distance > options.unmatched_above) {
        ModelFit u;
        u.model = "unmatched";
        u.distance = best.distance;
        u.parameters = best.parameters;
        u.runner_up = best.model;
        u.runner_up_distance = best.distance;
        return u;
    }
    return best;
}

SingularityReport analyze(const Trajectory& traj, const AnalysisOptions& options) {
    SingularityReport rep;
    const auto reason = traj.termination.reason;
    if (reason != StopReason::sup_velocity && reason != StopReason::min_radius) {
        rep.verdict = TypeVerdict::none;
        rep.notes.push_back("run stopped on " + to_string(reason) + ", not on a blow-up threshold");
        return rep;
    }
    try {
        rep.estimate = estimate_singularity(traj);
    } catch (const AnalysisError& e) {
        rep.verdict = TypeVerdict::inconclusive;
        rep.notes.push_back(e.what());
        return rep;
    }
    const auto& est = *rep.estimate;
    if (est.disagreement) rep.notes.push_back("linear and power-law singular-time estimates disagree");
    rep.classification = classify_type(traj, est.T_hat, options.classify);
    rep.verdict = rep.classification->verdict;

    std::vector<double> sigmas = options.sigmas;
    if (sigmas.empty()) {
        const double tau_last = est.T_hat - traj.back().time;
        for (double s = 10.0; tau_last > 0.0 && s * s * tau_last <= 1.0; s *= 2.0) sigmas.push_back(s);
    }
    for (double sigma : sigmas) {
        try {
            const auto r = type1_rescale_one(traj, est.w_hat, est.T_hat, sigma);
            MatchOptions mo;
            mo.window_radius = options.type1_window;
            mo.origin = r.origin;
            mo.models = shrinker_models();
            rep.type1_fits.emplace_back(sigma, match_model(r.curve, mo));
            rep.type1_curve = r;
            rep.blowup_match = rep.type1_fits.back().second;
        } catch (const AnalysisError& e) {
            rep.notes.push_back(e.what());
        }
    }

    if (rep.verdict == TypeVerdict::type_I) return rep;
    const auto seq = type2_rescale(traj, rep.verdict, options.type2_frames);
    rep.type2_unstable = seq.unstable;
    if (seq.unstable) rep.notes.push_back("argmax of the curvature proxy jumps between Type II frames");
    if (!seq.curves.empty()) {
        const auto& last = seq.curves.back();
        MatchOptions mo;
        mo.window_radius = options.type2_window;
        mo.origin = last.origin;
        mo.models = ancient_models();
        try {
            rep.type2_match = match_model(last.curve, mo);
        } catch (const AnalysisError& e) {
            rep.notes.push_back(e.what());
        }
        const std::vector<RescaledCurve> one{last};
        try {
            const auto downs = blow_down(one, options.blowdown_lambdas, options.blowdown_window);
            const auto& d = downs.back();
            MatchOptions bo;
            bo.window_radius = options.blowdown_window;
            bo.origin = d.origin;
            bo.models = shrinker_models();
            rep.blowdown_match = match_model(d.curve, bo);
            if (rep.blowup_match && rep.blowup_match->model == "line_pair")
                rep.blowdown_to_type1 = line_pair_distance(d.curve, rep.blowup_match->parameters.at("theta"), bo);
        } catch (const AnalysisError& e) {
            rep.notes.push_back(e.what());
        }
    }
    return rep;
}

}  // namespace lmcf
