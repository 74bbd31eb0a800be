#include "lmcf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "lmcf/kernels.hpp"

namespace lmcf {

std::string to_string(Topology t) { return t == Topology::closed ? "closed" : "open"; }

Topology topology_from_string(const std::string& s) {
    if (s == "closed") return Topology::closed;
    if (s == "open") return Topology::open;
    throw GeometryError("unknown topology '" + s + "'");
}

Vec2 AsymptoticData::ray_direction(int side) const {
    const double a = ray_angle(side);
    return {std::cos(a), std::sin(a)};
}

namespace {

double wrap_angle(double a) {
    a = std::fmod(a + pi, 2.0 * pi);
    if (a < 0) a += 2.0 * pi;
    return a - pi;
}

}  // namespace

ProfileCurve::ProfileCurve(std::vector<Vec2> points, Topology topology,
                           std::optional<AsymptoticData> asymptotics, double ray_tolerance)
    : points_(std::move(points)), topology_(topology), asymptotics_(asymptotics) {
    const std::size_t n = points_.size();
    if (n < min_points)
        throw GeometryError("profile curve needs at least 8 points, got " + std::to_string(n));
    for (const Vec2 p : points_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError("non-finite curve point");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (points_[i] == points_[i + 1])
            throw GeometryError("consecutive curve points coincide at index " + std::to_string(i));
    if (closed() && points_.front() == points_.back())
        throw GeometryError("closed curve must not duplicate its first point");

    if (asymptotics_) {
        if (!(asymptotics_->alpha > 0.0 && asymptotics_->alpha < pi))
            throw GeometryError("asymptotic angle must lie in (0, pi)");
        if (closed()) throw GeometryError("asymptotic data given for a closed curve");
        for (const Vec2 end : {points_.front(), points_.back()}) {
            if (norm(end) == 0.0) throw GeometryError("open-curve endpoint at the origin");
            const double phi = polar_angle(end);
            const double dev = std::min(std::abs(wrap_angle(phi - asymptotics_->ray_angle(-1))),
                                        std::abs(wrap_angle(phi - asymptotics_->ray_angle(+1))));
            if (dev > ray_tolerance)
                throw GeometryError("open-curve endpoint is " + std::to_string(dev) +
                                    " rad away from the asymptotic rays");
        }
    }
    orientation_ = (closed() && signed_area(*this) < 0.0) ? Orientation::negative : Orientation::positive;
}

double ProfileCurve::min_spacing() const {
    double h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < segment_count(); ++i) h = std::min(h, distance(points_[i], segment_end(i)));
    return h;
}

double ProfileCurve::max_spacing() const {
    double h = 0.0;
    for (std::size_t i = 0; i < segment_count(); ++i) h = std::max(h, distance(points_[i], segment_end(i)));
    return h;
}

ProfileCurve ProfileCurve::scaled(double factor) const {
    std::vector<Vec2> pts(points_);
    for (Vec2& p : pts) p *= factor;
    return ProfileCurve(std::move(pts), topology_, factor > 0 ? asymptotics_ : std::nullopt);
}

ProfileCurve ProfileCurve::rotated(double angle) const {
    std::vector<Vec2> pts(points_);
    for (Vec2& p : pts) p = rotate(p, angle);
    auto asym = asymptotics_;
    if (asym) asym->bisector += angle;
    return ProfileCurve(std::move(pts), topology_, asym);
}

ProfileCurve ProfileCurve::translated(Vec2 offset) const {
    std::vector<Vec2> pts(points_);
    for (Vec2& p : pts) p += offset;
    return ProfileCurve(std::move(pts), topology_, std::nullopt);
}

ProfileCurve ProfileCurve::negated() const {
    std::vector<Vec2> pts(points_);
    for (Vec2& p : pts) p = -p;
    auto asym = asymptotics_;
    if (asym) asym->bisector += pi;
    return ProfileCurve(std::move(pts), topology_, asym);
}

ProfileCurve ProfileCurve::reversed() const {
    std::vector<Vec2> pts(points_.rbegin(), points_.rend());
    if (closed()) std::rotate(pts.begin(), pts.end() - 1, pts.end());
    return ProfileCurve(std::move(pts), topology_, asymptotics_);
}

double signed_area(const ProfileCurve& curve) {
    const auto& p = curve.points();
    double a = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
    return 0.5 * a;
}

double length(const ProfileCurve& curve) {
    double len = 0.0;
    for (std::size_t i = 0; i < curve.segment_count(); ++i) len += distance(curve[i], curve.segment_end(i));
    return len;
}

double extent(const ProfileCurve& curve) {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi = -lo;
    for (const Vec2 p : curve.points()) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return norm(hi - lo);
}

double aspect_ratio(const ProfileCurve& curve) {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi = -lo;
    for (const Vec2 p : curve.points()) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    if (!(hi.x > lo.x)) throw GeometryError("aspect ratio of a curve with zero width");
    return (hi.y - lo.y) / (hi.x - lo.x);
}

Vec2 centroid(const ProfileCurve& curve) {
    // Length-weighted centroid of the polyline.
    Vec2 c{};
    double total = 0.0;
    for (std::size_t i = 0; i < curve.segment_count(); ++i) {
        const Vec2 a = curve[i], b = curve.segment_end(i);
        const double w = distance(a, b);
        c += w * 0.5 * (a + b);
        total += w;
    }
    return c / total;
}

double default_origin_epsilon(const ProfileCurve& curve) { return 1e-4 * extent(curve); }

namespace {

// Cubic spline of one coordinate over strictly increasing knots: natural
// end conditions, or periodic (y.back() == y.front()) for closed curves.
class CubicSpline {
public:
    CubicSpline(std::vector<double> t, std::vector<double> y, bool periodic)
        : t_(std::move(t)), y_(std::move(y)), m_(t_.size(), 0.0) {
        const std::size_t n = t_.size();
        if (n < 3) return;
        if (periodic)
            solve_periodic();
        else
            solve_natural();
    }

    double operator()(double x, std::size_t seg) const {
        const double h = t_[seg + 1] - t_[seg];
        const double a = (t_[seg + 1] - x) / h, b = (x - t_[seg]) / h;
        return a * y_[seg] + b * y_[seg + 1] + ((a * a * a - a) * m_[seg] + (b * b * b - b) * m_[seg + 1]) * h * h / 6.0;
    }

private:
    double slope(std::size_t i) const { return (y_[i + 1] - y_[i]) / (t_[i + 1] - t_[i]); }

    void solve_natural() {
        const std::size_t n = t_.size();
        std::vector<double> diag(n, 1.0), upper(n, 0.0), lower(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = t_[i] - t_[i - 1], h1 = t_[i + 1] - t_[i];
            lower[i] = h0;
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * (slope(i) - slope(i - 1));
        }
        thomas(lower, diag, upper, rhs);
        m_ = rhs;
    }

    // Cyclic tridiagonal system for m_0..m_{N-1} (m_N = m_0), solved by
    // Sherman-Morrison on top of the Thomas algorithm.
    void solve_periodic() {
        const std::size_t N = t_.size() - 1;
        auto h = [&](std::size_t i) { return t_[i + 1] - t_[i]; };
        std::vector<double> lower(N), diag(N), upper(N), rhs(N);
        for (std::size_t i = 0; i < N; ++i) {
            const std::size_t im = (i + N - 1) % N;
            lower[i] = h(im);
            upper[i] = h(i);
            diag[i] = 2.0 * (h(im) + h(i));
            rhs[i] = 6.0 * (slope(i) - slope(im));
        }
        const double alpha = upper[N - 1];  // couples row N-1 to column 0
        const double beta = lower[0];       // couples row 0 to column N-1
        const double gamma = -diag[0];
        std::vector<double> d = diag;
        d[0] -= gamma;
        d[N - 1] -= alpha * beta / gamma;
        std::vector<double> u(N, 0.0);
        u[0] = gamma;
        u[N - 1] = alpha;
        std::vector<double> lo = lower, up = upper, d2 = d;
        lo[0] = 0.0;
        up[N - 1] = 0.0;
        thomas(lo, d, up, rhs);
        thomas(lo, d2, up, u);
        const double vx = rhs[0] + beta / gamma * rhs[N - 1];
        const double vz = u[0] + beta / gamma * u[N - 1];
        const double f = vx / (1.0 + vz);
        for (std::size_t i = 0; i < N; ++i) m_[i] = rhs[i] - f * u[i];
        m_[N] = m_[0];
    }

    // Solves in place; rhs receives the solution and diag is overwritten.
    static void thomas(const std::vector<double>& lower, std::vector<double>& diag, const std::vector<double>& upper,
                       std::vector<double>& rhs) {
        const std::size_t n = diag.size();
        for (std::size_t i = 1; i < n; ++i) {
            const double w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        rhs[n - 1] /= diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }

    std::vector<double> t_, y_, m_;
};

// Parametric spline through the curve nodes in cumulative chord length,
// periodic for closed curves.
class CurveSpline {
public:
    explicit CurveSpline(const ProfileCurve& curve) {
        const auto& p = curve.points();
        const std::size_t n = p.size();
        const std::size_t last = curve.closed() ? n : n - 1;
        std::vector<double> t, xs, ys;
        double u = 0.0;
        for (std::size_t i = 0; i <= last; ++i) {
            if (i > 0) u += distance(p[i - 1], p[i % n]);
            t.push_back(u);
            xs.push_back(p[i % n].x);
            ys.push_back(p[i % n].y);
        }
        segments_ = last;
        span_ = t.back();
        knots_ = t;
        x_ = std::make_unique<CubicSpline>(t, xs, curve.closed());
        y_ = std::make_unique<CubicSpline>(t, ys, curve.closed());
    }

    /// Chord-length span covering the curve once.
    double span() const { return span_; }
    std::size_t segments() const { return segments_; }
    double knot(std::size_t seg) const { return knots_[seg]; }

    Vec2 operator()(double u, std::size_t seg) const { return {(*x_)(u, seg), (*y_)(u, seg)}; }

private:
    std::vector<double> knots_;
    std::unique_ptr<CubicSpline> x_, y_;
    std::size_t segments_ = 0;
    double span_ = 0.0;
};

// Arclength table over the spline with 16 sub-samples per segment. When
// node_spacing is given the table accumulates ds / spacing instead of ds,
// with the spacing interpolated linearly along each segment.
struct ArcTable {
    std::vector<double> u, s;
    std::vector<std::size_t> seg;
};

ArcTable arc_table(const CurveSpline& spline, std::span<const double> node_spacing) {
    constexpr std::size_t sub = 16;
    const std::size_t segs = spline.segments();
    const std::size_t n = node_spacing.size();
    ArcTable tab;
    tab.u.reserve(segs * sub + 1);
    double s = 0.0;
    Vec2 prev = spline(spline.knot(0), 0);
    tab.u.push_back(spline.knot(0));
    tab.seg.push_back(0);
    tab.s.push_back(0.0);
    for (std::size_t k = 0; k < segs; ++k) {
        const double u0 = spline.knot(k), u1 = spline.knot(k + 1);
        for (std::size_t j = 1; j <= sub; ++j) {
            const double f = static_cast<double>(j) / sub;
            const double u = u0 + (u1 - u0) * f;
            const Vec2 q = spline(u, k);
            double ds = distance(prev, q);
            if (n > 0) {
                const double fm = (static_cast<double>(j) - 0.5) / sub;
                ds /= (1.0 - fm) * node_spacing[k] + fm * node_spacing[(k + 1) % n];
            }
            s += ds;
            prev = q;
            tab.u.push_back(u);
            tab.seg.push_back(k);
            tab.s.push_back(s);
        }
    }
    return tab;
}

ProfileCurve resample_table(const ProfileCurve& curve, const CurveSpline& spline, const ArcTable& tab,
                            std::size_t intervals) {
    const double total = tab.s.back();
    const std::size_t count = curve.closed() ? intervals : intervals + 1;
    std::vector<Vec2> out;
    out.reserve(count);
    std::size_t cursor = 1;
    for (std::size_t i = 0; i < count; ++i) {
        if (i == 0) {
            out.push_back(curve[0]);
            continue;
        }
        if (!curve.closed() && i + 1 == count) {
            out.push_back(curve.points().back());
            continue;
        }
        const double target = total * static_cast<double>(i) / static_cast<double>(intervals);
        while (cursor + 1 < tab.s.size() && tab.s[cursor] < target) ++cursor;
        const double s0 = tab.s[cursor - 1], s1 = tab.s[cursor];
        const double w = s1 > s0 ? (target - s0) / (s1 - s0) : 0.0;
        const double u = tab.u[cursor - 1] + w * (tab.u[cursor] - tab.u[cursor - 1]);
        out.push_back(spline(u, tab.seg[cursor]));
    }
    return ProfileCurve(std::move(out), curve.topology(), curve.asymptotics());
}

ProfileCurve resample_intervals(const ProfileCurve& curve, std::size_t intervals) {
    const CurveSpline spline(curve);
    return resample_table(curve, spline, arc_table(spline, {}), intervals);
}

}  // namespace

ProfileCurve resample(const ProfileCurve& curve, double target_spacing) {
    if (!(target_spacing > 0.0)) throw GeometryError("target spacing must be positive");
    const double len = length(curve);
    if (len < 8.0 * target_spacing)
        throw GeometryError("curve length " + std::to_string(len) + " below 8 x target spacing");
    const auto intervals = static_cast<std::size_t>(std::max(8.0, std::round(len / target_spacing)));
    return resample_intervals(curve, intervals);
}

ProfileCurve resample_graded(const ProfileCurve& curve, std::span<const double> node_spacing) {
    if (node_spacing.size() != curve.size()) throw GeometryError("one target spacing per node required");
    for (double h : node_spacing)
        if (!(h > 0.0) || !std::isfinite(h)) throw GeometryError("target spacings must be positive and finite");
    const CurveSpline spline(curve);
    const ArcTable tab = arc_table(spline, node_spacing);
    auto intervals = static_cast<std::size_t>(std::max(8.0, std::round(tab.s.back())));
    if (curve.closed() && intervals % 2) ++intervals;
    return resample_table(curve, spline, tab, intervals);
}

ProfileCurve resample_count(const ProfileCurve& curve, std::size_t count) {
    if (count < ProfileCurve::min_points) throw GeometryError("resample count below 8");
    return resample_intervals(curve, curve.closed() ? count : count - 1);
}

CurvatureField curvature(const ProfileCurve& curve) {
    kernels::FieldBuffers f;
    kernels::compute_fields(curve.points(), curve.closed(), 0.0, f);
    CurvatureField out;
    const std::size_t n = curve.size();
    out.vector.resize(n);
    out.signed_value = f.kappa;
    out.tangent = f.tangent;
    out.normal = f.normal;
    out.one_sided.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.vector[i] = f.kappa[i] * f.normal[i];
        out.one_sided[i] = f.one_sided[i] != 0;
    }
    return out;
}

std::vector<Vec2> radial_term(const ProfileCurve& curve, double origin_epsilon) {
    kernels::FieldBuffers f;
    kernels::compute_fields(curve.points(), curve.closed(), origin_epsilon, f);
    std::vector<Vec2> out(curve.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.radial[i] * f.normal[i];
    return out;
}

std::vector<Vec2> flow_velocity(const ProfileCurve& curve, double origin_epsilon) {
    kernels::FieldBuffers f;
    kernels::compute_fields(curve.points(), curve.closed(), origin_epsilon, f);
    std::vector<Vec2> out(curve.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (f.kappa[i] - f.radial[i]) * f.normal[i];
    return out;
}

RefinedFrame refined_frame(const ProfileCurve& curve) {
    const auto& p = curve.points();
    const std::size_t n = p.size();
    const CurvatureField plain = curvature(curve);
    RefinedFrame out;
    out.signed_curvature = plain.signed_value;
    out.tangent = plain.tangent;
    out.normal = plain.normal;
    out.interior.assign(n, false);
    auto at = [&](std::ptrdiff_t i) {
        const auto m = static_cast<std::ptrdiff_t>(n);
        return p[static_cast<std::size_t>(((i % m) + m) % m)];
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!curve.closed() && (i < 2 || i + 2 >= n)) continue;
        const auto k = static_cast<std::ptrdiff_t>(i);
        const auto near = kernels::node_geometry(at(k - 1), p[i], at(k + 1), 0.0);
        const auto far = kernels::node_geometry(at(k - 2), p[i], at(k + 2), 0.0);
        out.signed_curvature[i] = (4.0 * near.kappa - far.kappa) / 3.0;
        out.tangent[i] = unit((4.0 * near.tangent - far.tangent) / 3.0);
        out.normal[i] = rot90(out.tangent[i]);
        out.interior[i] = true;
    }
    return out;
}

WindingTurning winding_and_turning(const ProfileCurve& curve, double origin_epsilon) {
    if (!curve.closed()) throw GeometryError("winding and turning numbers need a closed curve");
    const auto& p = curve.points();
    const std::size_t n = p.size();
    WindingTurning out;

    bool meets_origin = false;
    for (std::size_t i = 0; i < n; ++i)
        if (kernels::point_segment_distance({}, p[i], p[(i + 1) % n]) < origin_epsilon) meets_origin = true;
    if (!meets_origin) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = p[i], b = p[(i + 1) % n];
            sum += std::atan2(cross(a, b), dot(a, b));
        }
        const double w = sum / (2.0 * pi);
        out.winding = static_cast<int>(std::lround(w));
        out.winding_residual = std::abs(w - *out.winding);
    }

    double turn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = p[(i + 1) % n] - p[i];
        const Vec2 e1 = p[(i + 2) % n] - p[(i + 1) % n];
        turn += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    const double t = turn / (2.0 * pi);
    out.turning = static_cast<int>(std::lround(t));
    out.turning_residual = std::abs(t - out.turning);
    if (out.turning_residual > 0.01)
        throw GeometryError("turning number residual " + std::to_string(out.turning_residual) +
                            " exceeds 0.01; curve is under-resolved");
    return out;
}

std::vector<double> lagrangian_angle(const ProfileCurve& curve, double origin_epsilon) {
    const RefinedFrame frame = refined_frame(curve);
    const auto& p = curve.points();
    std::vector<double> theta(p.size(), std::numeric_limits<double>::quiet_NaN());
    bool have_prev = false;
    double prev = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (norm(p[i]) < origin_epsilon) continue;
        double value = polar_angle(frame.tangent[i]) + polar_angle(p[i]);
        if (have_prev) value = prev + wrap_angle(value - prev);
        theta[i] = value;
        prev = value;
        have_prev = true;
    }
    return theta;
}

double angle_oscillation(std::span<const double> angles) {
    std::vector<double> v;
    for (double a : angles) {
        if (std::isnan(a)) continue;
        double r = std::fmod(a, 2.0 * pi);
        if (r < 0) r += 2.0 * pi;
        v.push_back(r);
    }
    if (v.size() < 2) return 0.0;
    std::sort(v.begin(), v.end());
    double gap = v.front() + 2.0 * pi - v.back();
    for (std::size_t i = 1; i < v.size(); ++i) gap = std::max(gap, v[i] - v[i - 1]);
    return 2.0 * pi - gap;
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.empty() || b.empty()) throw GeometryError("Hausdorff distance of an empty set");
    const bool big = a.size() * b.size() >= kernels::parallel_threshold * 64;
    if (big) return std::max(kernels::directed_hausdorff_parallel(a, b), kernels::directed_hausdorff_parallel(b, a));
    return std::max(kernels::directed_hausdorff_serial(a, b), kernels::directed_hausdorff_serial(b, a));
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b, const Window& window) {
    std::vector<Vec2> wa, wb;
    std::copy_if(a.begin(), a.end(), std::back_inserter(wa), [&](Vec2 p) { return window.contains(p); });
    std::copy_if(b.begin(), b.end(), std::back_inserter(wb), [&](Vec2 p) { return window.contains(p); });
    if (wa.empty() || wb.empty()) throw GeometryError("empty intersection with comparison window");
    return hausdorff_distance(wa, wb);
}

std::vector<Polyline> as_polylines(const ProfileCurve& curve, bool with_mirror) {
    std::vector<Polyline> out;
    Polyline line(curve.points());
    if (curve.closed()) line.push_back(curve[0]);
    out.push_back(line);
    if (with_mirror) {
        Polyline mirror(line);
        for (Vec2& p : mirror) p = -p;
        // Skip the mirror when -gamma traces the same set (figure-eight, centred circles).
        const double self = kernels::directed_hausdorff_serial(mirror, line);
        const double h = curve.max_spacing();
        if (self > 1e-9 * std::max(extent(curve), h)) out.push_back(std::move(mirror));
    }
    return out;
}

namespace {

kernels::SegmentSet segments_of(std::span<const Polyline> lines) {
    kernels::SegmentSet s;
    for (const auto& l : lines)
        for (std::size_t i = 0; i + 1 < l.size(); ++i) {
            s.start.push_back(l[i]);
            s.end.push_back(l[i + 1]);
        }
    return s;
}

std::vector<Vec2> vertices_in(std::span<const Polyline> lines, const Window& window) {
    std::vector<Vec2> v;
    for (const auto& l : lines)
        for (const Vec2 p : l)
            if (window.contains(p)) v.push_back(p);
    return v;
}

}  // namespace

double polyline_hausdorff(std::span<const Polyline> a, std::span<const Polyline> b, const Window& window) {
    const auto va = vertices_in(a, window);
    const auto vb = vertices_in(b, window);
    if (va.empty() || vb.empty()) throw GeometryError("empty intersection with comparison window");
    const auto sa = segments_of(a);
    const auto sb = segments_of(b);
    return std::max(kernels::directed_segment_distance(va, sb), kernels::directed_segment_distance(vb, sa));
}

CurveDiagnostics diagnostics(const ProfileCurve& curve, double origin_epsilon) {
    kernels::FieldBuffers f;
    kernels::compute_fields(curve.points(), curve.closed(), origin_epsilon, f);
    CurveDiagnostics d;
    d.length = length(curve);
    d.min_radius = std::numeric_limits<double>::infinity();
    for (const Vec2 p : curve.points()) d.min_radius = std::min(d.min_radius, norm(p));
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (f.one_sided[i]) continue;
        d.sup_curvature = std::max(d.sup_curvature, std::abs(f.kappa[i]));
        d.sup_velocity = std::max(d.sup_velocity, std::abs(f.kappa[i] - f.radial[i]));
    }
    if (curve.closed()) {
        try {
            const auto wt = winding_and_turning(curve, origin_epsilon);
            d.winding_number = wt.winding;
            d.turning_number = wt.turning;
        } catch (const GeometryError&) {
            // under-resolved turning: left empty
        }
    }
    const auto theta = lagrangian_angle(curve, origin_epsilon);
    d.lagrangian_angle_oscillation = angle_oscillation(theta);
    return d;
}

}  // namespace lmcf
