#include "lmcf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lmcf::kernels {

void FieldBuffers::resize(std::size_t n) {
    tangent.resize(n);
    normal.resize(n);
    kappa.resize(n);
    radial.resize(n);
    regularized.resize(n);
    one_sided.resize(n);
}

namespace {

void store(FieldBuffers& out, std::size_t i, const NodeGeometry& g, bool one_sided) {
    out.tangent[i] = g.tangent;
    out.normal[i] = g.normal;
    out.kappa[i] = g.kappa;
    out.radial[i] = g.radial;
    out.regularized[i] = g.regularized ? 1 : 0;
    out.one_sided[i] = one_sided ? 1 : 0;
}

void fill_node(std::span<const Vec2> pts, bool closed, double eps, FieldBuffers& out, std::size_t i) {
    const std::size_t n = pts.size();
    if (closed) {
        store(out, i, node_geometry(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n], eps), false);
        return;
    }
    if (i > 0 && i + 1 < n) {
        store(out, i, node_geometry(pts[i - 1], pts[i], pts[i + 1], eps), false);
        return;
    }
    // Endpoint: curvature of the circle through the three end nodes.
    const bool first = (i == 0);
    const Vec2 a = first ? pts[0] : pts[n - 3];
    const Vec2 b = first ? pts[1] : pts[n - 2];
    const Vec2 c = first ? pts[2] : pts[n - 1];
    NodeGeometry g = node_geometry(a, b, c, eps);
    g.tangent = unit(first ? pts[1] - pts[0] : pts[n - 1] - pts[n - 2]);
    g.normal = rot90(g.tangent);
    const Vec2 p = pts[i];
    const double r2 = norm2(p);
    if (r2 < eps * eps) {
        g.regularized = true;
        g.radial = 0.5 * g.kappa;
    } else {
        g.regularized = false;
        g.radial = dot(p, g.normal) / r2;
    }
    store(out, i, g, true);
}

}  // namespace

void compute_fields_serial(std::span<const Vec2> pts, bool closed, double eps, FieldBuffers& out) {
    const std::size_t n = pts.size();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) fill_node(pts, closed, eps, out, i);
}

void compute_fields_parallel(std::span<const Vec2> pts, bool closed, double eps, FieldBuffers& out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pts.size());
    out.resize(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) fill_node(pts, closed, eps, out, static_cast<std::size_t>(i));
}

void compute_fields(std::span<const Vec2> pts, bool closed, double eps, FieldBuffers& out) {
    if (pts.size() >= parallel_threshold)
        compute_fields_parallel(pts, closed, eps, out);
    else
        compute_fields_serial(pts, closed, eps, out);
}

namespace {

// Inner loop of the early-break Hausdorff scan: returns the squared distance
// from p to B, or any value <= cmax2 as soon as p is known not to raise the max.
double nearest2(Vec2 p, std::span<const Vec2> b, double cmax2, std::size_t& hint) {
    const std::size_t first = hint;
    const std::size_t m = b.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = (first + k) % m;
        const double d = norm2(p - b[j]);
        if (d < best) {
            best = d;
            hint = j;
            if (best <= cmax2) break;
        }
    }
    return best;
}

}  // namespace

double directed_hausdorff_serial(std::span<const Vec2> a, std::span<const Vec2> b) {
    double cmax2 = 0.0;
    std::size_t hint = 0;
    for (const Vec2 p : a) cmax2 = std::max(cmax2, nearest2(p, b, cmax2, hint));
    return std::sqrt(cmax2);
}

double directed_hausdorff_parallel(std::span<const Vec2> a, std::span<const Vec2> b) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    double result = 0.0;
#pragma omp parallel
    {
        double cmax2 = 0.0;
        std::size_t hint = 0;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) cmax2 = std::max(cmax2, nearest2(a[static_cast<std::size_t>(i)], b, cmax2, hint));
#pragma omp critical
        result = std::max(result, cmax2);
    }
    return std::sqrt(result);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

namespace {

double nearest_segment(Vec2 p, const SegmentSet& segs, double cmax, std::size_t& hint) {
    const std::size_t m = segs.size();
    const std::size_t first = hint;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = (first + k) % m;
        const double d = point_segment_distance(p, segs.start[j], segs.end[j]);
        if (d < best) {
            best = d;
            hint = j;
            if (best <= cmax) break;
        }
    }
    return best;
}

}  // namespace

double directed_segment_distance_serial(std::span<const Vec2> pts, const SegmentSet& segs) {
    double cmax = 0.0;
    std::size_t hint = 0;
    for (const Vec2 p : pts) cmax = std::max(cmax, nearest_segment(p, segs, cmax, hint));
    return cmax;
}

double directed_segment_distance_parallel(std::span<const Vec2> pts, const SegmentSet& segs) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pts.size());
    double result = 0.0;
#pragma omp parallel
    {
        double cmax = 0.0;
        std::size_t hint = 0;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) cmax = std::max(cmax, nearest_segment(pts[static_cast<std::size_t>(i)], segs, cmax, hint));
#pragma omp critical
        result = std::max(result, cmax);
    }
    return result;
}

double directed_segment_distance(std::span<const Vec2> pts, const SegmentSet& segs) {
    if (pts.size() * segs.size() >= parallel_threshold * 64)
        return directed_segment_distance_parallel(pts, segs);
    return directed_segment_distance_serial(pts, segs);
}

SegmentGrid::SegmentGrid(SegmentSet segs_in, double cell) : segs_(std::move(segs_in)), cell_(cell) {
    const SegmentSet& segs = segs_;
    if (segs.size() == 0 || !(cell > 0.0)) return;
    Vec2 hi = segs.start[0];
    lo_ = hi;
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (const Vec2 p : {segs.start[i], segs.end[i]}) {
            lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
    // About one segment per cell on average, whatever the requested size.
    cell = std::max(cell, std::sqrt((hi.x - lo_.x) * (hi.y - lo_.y) / static_cast<double>(segs.size())));
    cell_ = cell;
    nx_ = static_cast<std::size_t>((hi.x - lo_.x) / cell) + 1;
    ny_ = static_cast<std::size_t>((hi.y - lo_.y) / cell) + 1;
    if (nx_ * ny_ > 16 * segs.size() + 4096) {
        // Too sparse to be worth it; queries fall back to brute force.
        nx_ = ny_ = 0;
        return;
    }
    auto range = [&](std::size_t i, std::size_t& x0, std::size_t& x1, std::size_t& y0, std::size_t& y1) {
        const Vec2 a = segs.start[i], b = segs.end[i];
        x0 = static_cast<std::size_t>((std::min(a.x, b.x) - lo_.x) / cell);
        x1 = static_cast<std::size_t>((std::max(a.x, b.x) - lo_.x) / cell);
        y0 = static_cast<std::size_t>((std::min(a.y, b.y) - lo_.y) / cell);
        y1 = static_cast<std::size_t>((std::max(a.y, b.y) - lo_.y) / cell);
    };
    offsets_.assign(nx_ * ny_ + 1, 0);
    std::size_t x0, x1, y0, y1;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        range(i, x0, x1, y0, y1);
        for (std::size_t y = y0; y <= y1; ++y)
            for (std::size_t x = x0; x <= x1; ++x) ++offsets_[y * nx_ + x + 1];
    }
    for (std::size_t c = 0; c < nx_ * ny_; ++c) offsets_[c + 1] += offsets_[c];
    items_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        range(i, x0, x1, y0, y1);
        for (std::size_t y = y0; y <= y1; ++y)
            for (std::size_t x = x0; x <= x1; ++x) items_[fill[y * nx_ + x]++] = i;
    }
}

double SegmentGrid::nearest(Vec2 p) const {
    const SegmentSet& s = segs_;
    double best = std::numeric_limits<double>::infinity();
    if (nx_ == 0) {
        for (std::size_t j = 0; j < s.size(); ++j) best = std::min(best, point_segment_distance(p, s.start[j], s.end[j]));
        return best;
    }
    const auto NX = static_cast<std::ptrdiff_t>(nx_), NY = static_cast<std::ptrdiff_t>(ny_);
    // Points outside the grid start from the nearest boundary cell.
    auto clamp_index = [](double f, std::ptrdiff_t n) {
        if (!(f > 0.0)) return std::ptrdiff_t{0};
        return std::min(static_cast<std::ptrdiff_t>(f), n - 1);
    };
    const std::ptrdiff_t cx = clamp_index((p.x - lo_.x) / cell_, NX), cy = clamp_index((p.y - lo_.y) / cell_, NY);
    // Distance from p to the union of cells [x0, x1] x [y0, y1] (empty ranges give infinity).
    auto box_distance = [&](std::ptrdiff_t x0, std::ptrdiff_t x1, std::ptrdiff_t y0, std::ptrdiff_t y1) {
        x0 = std::max<std::ptrdiff_t>(x0, 0);
        y0 = std::max<std::ptrdiff_t>(y0, 0);
        x1 = std::min(x1, NX - 1);
        y1 = std::min(y1, NY - 1);
        if (x0 > x1 || y0 > y1) return std::numeric_limits<double>::infinity();
        const double bx0 = lo_.x + static_cast<double>(x0) * cell_, bx1 = lo_.x + static_cast<double>(x1 + 1) * cell_;
        const double by0 = lo_.y + static_cast<double>(y0) * cell_, by1 = lo_.y + static_cast<double>(y1 + 1) * cell_;
        const double dx = std::max({bx0 - p.x, 0.0, p.x - bx1}), dy = std::max({by0 - p.y, 0.0, p.y - by1});
        return std::sqrt(dx * dx + dy * dy);
    };
    const std::ptrdiff_t rmax = std::max(NX, NY);
    for (std::ptrdiff_t r = 0; r <= rmax; ++r) {
        for (std::ptrdiff_t y = cy - r; y <= cy + r; ++y) {
            if (y < 0 || y >= NY) continue;
            const bool edge_row = y == cy - r || y == cy + r;
            for (std::ptrdiff_t x = cx - r; x <= cx + r; x += (edge_row || r == 0) ? 1 : 2 * r) {
                if (x < 0 || x >= NX) continue;
                const std::size_t c = static_cast<std::size_t>(y * NX + x);
                for (std::size_t k = offsets_[c]; k < offsets_[c + 1]; ++k) {
                    const std::size_t j = items_[k];
                    best = std::min(best, point_segment_distance(p, s.start[j], s.end[j]));
                }
            }
        }
        // Every unvisited cell lies in one of the four slabs around the block.
        const double bound = std::min({box_distance(0, cx - r - 1, 0, NY - 1), box_distance(cx + r + 1, NX - 1, 0, NY - 1),
                                       box_distance(cx - r, cx + r, 0, cy - r - 1),
                                       box_distance(cx - r, cx + r, cy + r + 1, NY - 1)});
        if (best <= bound) return best;
    }
    return best;
}

}  // namespace lmcf::kernels
