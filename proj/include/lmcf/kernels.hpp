#pragma once

// Per-node and pairwise kernels. Each kernel has a serial reference and an
// OpenMP variant; both evaluate the same arithmetic per element, so their
// outputs are bitwise identical (the only reductions are max/min).

#include <cstddef>
#include <span>
#include <vector>

#include "lmcf/vec2.hpp"

namespace lmcf::kernels {

struct NodeGeometry {
    Vec2 tangent;
    Vec2 normal;
    double kappa = 0.0;   // signed curvature along normal
    double radial = 0.0;  // <gamma, N> / |gamma|^2, or kappa/2 when regularized
    bool regularized = false;
};

/// Circumcircle curvature at p from its neighbours, plus the radial term.
inline NodeGeometry node_geometry(Vec2 prev, Vec2 p, Vec2 next, double origin_epsilon) {
    NodeGeometry g;
    const Vec2 chord = next - prev;
    const double chord_len = norm(chord);
    g.tangent = chord / chord_len;
    g.normal = rot90(g.tangent);
    const double a = norm(p - prev);
    const double b = norm(next - p);
    g.kappa = 2.0 * cross(p - prev, next - p) / (a * b * chord_len);
    const double r2 = norm2(p);
    if (r2 < origin_epsilon * origin_epsilon) {
        g.regularized = true;
        g.radial = 0.5 * g.kappa;
    } else {
        g.radial = dot(p, g.normal) / r2;
    }
    return g;
}

struct FieldBuffers {
    std::vector<Vec2> tangent;
    std::vector<Vec2> normal;
    std::vector<double> kappa;
    std::vector<double> radial;
    std::vector<unsigned char> regularized;
    std::vector<unsigned char> one_sided;

    void resize(std::size_t n);
    std::size_t size() const { return kappa.size(); }
};

/// Fills node geometry for every node. Open-curve endpoints use the
/// circumcircle of the first/last three nodes and a one-sided tangent.
void compute_fields_serial(std::span<const Vec2> pts, bool closed, double origin_epsilon, FieldBuffers& out);
void compute_fields_parallel(std::span<const Vec2> pts, bool closed, double origin_epsilon, FieldBuffers& out);

/// Dispatches to the OpenMP kernel above the size where threading pays off.
void compute_fields(std::span<const Vec2> pts, bool closed, double origin_epsilon, FieldBuffers& out);

inline constexpr std::size_t parallel_threshold = 4096;

/// sup_{a in A} inf_{b in B} |a - b|.
double directed_hausdorff_serial(std::span<const Vec2> a, std::span<const Vec2> b);
double directed_hausdorff_parallel(std::span<const Vec2> a, std::span<const Vec2> b);

/// A segment list flattened from polylines: segment i joins start[i] and end[i].
struct SegmentSet {
    std::vector<Vec2> start;
    std::vector<Vec2> end;
    std::size_t size() const { return start.size(); }
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// sup over points of the distance to the nearest segment.
double directed_segment_distance_serial(std::span<const Vec2> pts, const SegmentSet& segs);
double directed_segment_distance_parallel(std::span<const Vec2> pts, const SegmentSet& segs);
double directed_segment_distance(std::span<const Vec2> pts, const SegmentSet& segs);

/// Uniform bucket grid over a segment set for nearest-segment queries.
class SegmentGrid {
public:
    /// A non-positive cell disables bucketing.
    SegmentGrid(SegmentSet segs, double cell);
    /// Distance from p to the nearest segment (exact, also outside the grid box).
    double nearest(Vec2 p) const;

private:
    SegmentSet segs_;
    double cell_;
    Vec2 lo_;
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<std::size_t> offsets_;  // CSR layout: cell c holds items[offsets[c] .. offsets[c+1])
    std::vector<std::size_t> items_;
};

}  // namespace lmcf::kernels
