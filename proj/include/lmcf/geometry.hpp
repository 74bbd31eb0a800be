#pragma once

// Discrete differential geometry of planar profile curves.
//
// A profile curve gamma in C generates the circle-invariant Lagrangian
// {(gamma(s) cos phi, gamma(s) sin phi)} in C^2. Only gamma is represented;
// gamma and -gamma describe the same surface, so a single branch is stored.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmcf/vec2.hpp"

namespace lmcf {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Topology { closed, open };
enum class Orientation { positive, negative };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

/// Asymptotic rays of an open profile: two rays from the origin at polar
/// angles bisector +/- alpha/2, alpha being the opening angle that contains
/// the curve.
struct AsymptoticData {
    double alpha = pi / 2;
    double bisector = pi / 2;

    double ray_angle(int side) const { return bisector + (side < 0 ? -0.5 : 0.5) * alpha; }
    Vec2 ray_direction(int side) const;
};

class ProfileCurve {
public:
    static constexpr std::size_t min_points = 8;
    /// Angular tolerance for open-curve endpoints relative to the asymptotic rays.
    static constexpr double default_ray_tolerance = 0.1;

    ProfileCurve() = default;
    ProfileCurve(std::vector<Vec2> points, Topology topology,
                 std::optional<AsymptoticData> asymptotics = std::nullopt,
                 double ray_tolerance = default_ray_tolerance);

    const std::vector<Vec2>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    Vec2 operator[](std::size_t i) const { return points_[i]; }
    Topology topology() const { return topology_; }
    bool closed() const { return topology_ == Topology::closed; }
    const std::optional<AsymptoticData>& asymptotics() const { return asymptotics_; }
    Orientation orientation() const { return orientation_; }

    std::size_t segment_count() const { return closed() ? size() : size() - 1; }
    Vec2 segment_end(std::size_t i) const { return points_[(i + 1) % size()]; }

    double min_spacing() const;
    double max_spacing() const;
    /// max/min consecutive spacing; the post-resampling contract keeps this <= 4.
    double spacing_ratio() const { return max_spacing() / min_spacing(); }

    ProfileCurve scaled(double factor) const;
    ProfileCurve rotated(double angle) const;
    /// Translation moves the asymptotic rays off the origin, so they are dropped.
    ProfileCurve translated(Vec2 offset) const;
    /// The other branch -gamma of the same Lagrangian.
    ProfileCurve negated() const;
    ProfileCurve reversed() const;

private:
    std::vector<Vec2> points_;
    Topology topology_ = Topology::closed;
    std::optional<AsymptoticData> asymptotics_;
    Orientation orientation_ = Orientation::positive;
};

double signed_area(const ProfileCurve& curve);
double length(const ProfileCurve& curve);
/// Diagonal of the axis-aligned bounding box.
double extent(const ProfileCurve& curve);
/// Bounding-box height over width.
double aspect_ratio(const ProfileCurve& curve);
Vec2 centroid(const ProfileCurve& curve);
/// Default regularization radius about the origin: 1e-4 of the curve extent.
double default_origin_epsilon(const ProfileCurve& curve);

/// Uniform-arclength resampling through a cubic spline in chord length.
/// Open curves keep both endpoints.
ProfileCurve resample(const ProfileCurve& curve, double target_spacing);
/// Non-uniform resampling: node_spacing[i] is the desired spacing near node
/// i, interpolated linearly in between. The node count follows from the
/// integral of ds / spacing.
ProfileCurve resample_graded(const ProfileCurve& curve, std::span<const double> node_spacing);
/// Resample to an exact node count (closed: n nodes, open: n nodes incl. ends).
ProfileCurve resample_count(const ProfileCurve& curve, std::size_t count);

struct CurvatureField {
    std::vector<Vec2> vector;        // kappa = k N
    std::vector<double> signed_value;  // k, positive when turning left
    std::vector<Vec2> tangent;
    std::vector<Vec2> normal;        // left normal
    std::vector<bool> one_sided;     // open-curve endpoints: lower accuracy
};

/// Three-point circumcircle curvature; second order on smooth curves.
CurvatureField curvature(const ProfileCurve& curve);

/// gamma_perp / |gamma|^2 per node; within origin_epsilon of the origin the
/// regularized limit kappa/2 is returned.
std::vector<Vec2> radial_term(const ProfileCurve& curve, double origin_epsilon);

/// kappa - gamma_perp/|gamma|^2, the velocity of the equivariant flow.
std::vector<Vec2> flow_velocity(const ProfileCurve& curve, double origin_epsilon);

/// Curvature/tangent/normal from Richardson-combined three-point stencils at
/// spacings h and 2h: fourth order on uniform samples and exact on circles.
/// Open curves fall back to plain stencils at the two nodes next to each end.
struct RefinedFrame {
    std::vector<double> signed_curvature;
    std::vector<Vec2> tangent;
    std::vector<Vec2> normal;
    std::vector<bool> interior;  // false where the refinement was unavailable
};
RefinedFrame refined_frame(const ProfileCurve& curve);

struct WindingTurning {
    std::optional<int> winding;  // empty when the curve meets the origin
    int turning = 0;
    double winding_residual = 0.0;
    double turning_residual = 0.0;
};

/// Winding number about the origin and turning number of a closed curve.
/// Throws when the turning residual exceeds 0.01 (under-resolution).
WindingTurning winding_and_turning(const ProfileCurve& curve, double origin_epsilon);

/// Lagrangian angle arg(gamma') + arg(gamma), unwrapped along the curve.
/// Samples within origin_epsilon of the origin are NaN.
std::vector<double> lagrangian_angle(const ProfileCurve& curve, double origin_epsilon);

/// Length of the shortest arc of the circle containing all angles (NaNs
/// ignored); 0 for a constant angle, close to 2 pi when the values wrap.
double angle_oscillation(std::span<const double> angles);

struct Window {
    Vec2 center{};
    double radius = std::numeric_limits<double>::infinity();
    bool contains(Vec2 p) const { return norm2(p - center) <= radius * radius; }
};

/// Symmetric sup-inf distance between point sets.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);
/// Same, restricted to the window; throws when either restriction is empty.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b, const Window& window);

using Polyline = std::vector<Vec2>;

/// Polylines of a curve; closed curves repeat the first point at the end.
/// with_mirror appends the -gamma branch when it is not already the same set.
std::vector<Polyline> as_polylines(const ProfileCurve& curve, bool with_mirror = false);

/// Hausdorff distance between polyline families, measuring point-to-segment
/// distances from the vertices that lie in the window.
double polyline_hausdorff(std::span<const Polyline> a, std::span<const Polyline> b, const Window& window);

struct CurveDiagnostics {
    double length = 0.0;
    double min_radius = 0.0;
    double sup_curvature = 0.0;
    double sup_velocity = 0.0;
    std::optional<int> winding_number;
    std::optional<int> turning_number;
    double lagrangian_angle_oscillation = 0.0;
};

CurveDiagnostics diagnostics(const ProfileCurve& curve, double origin_epsilon);

}  // namespace lmcf
