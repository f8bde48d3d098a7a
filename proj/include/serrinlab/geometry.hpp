#pragma once

#include <Eigen/Core>
#include <string>
#include <variant>
#include <vector>

namespace serrinlab {

using Vec2 = Eigen::Vector2d;

struct Circle {
    Vec2 center;
    double radius;
};

struct Ellipse {
    Vec2 center;
    Vec2 semi_axes;   // (a, b)
    double rotation;  // radians, ccw
};

struct Polygon {
    std::vector<Vec2> vertices;  // ccw, simple
};

struct BoundarySample {
    Vec2 point;
    Vec2 tangent;  // unit, ccw orientation
    double arc_position;
    bool at_vertex = false;
};

/// Relative tolerances of the moving-plane engine, scaled by the diameter.
inline constexpr double kContainTolRel = 1e-9;   // containment slack
inline constexpr double kTTolRel = 1e-10;        // critical-time bracket width
inline constexpr double kStepBackFactor = 10.0;  // step_back = 10 * t_tol
inline constexpr double kPlaneTolRel = 1e-6;     // case I vs II separation
inline constexpr double kClassTolRel = 1e-5;     // gates Unresolved
inline constexpr double kMirrorTolRel = 1e-7;    // two-sided symmetry match
inline constexpr int kBoundarySampleCount = 4096;

/// Bounded planar domain with a circle / ellipse / simple ccw polygon
/// boundary. Boundary samples at roughly equal arc length are built once and
/// shared; the object is immutable afterwards.
class PlanarDomain {
public:
    static PlanarDomain make_circle(const Vec2& center, double radius);
    static PlanarDomain make_ellipse(const Vec2& center, const Vec2& semi_axes, double rotation);
    static PlanarDomain make_polygon(std::vector<Vec2> vertices);

    /// Distance to the boundary, positive inside.
    double signed_distance(const Vec2& x) const;
    bool contains(const Vec2& x) const { return signed_distance(x) > 0.0; }
    bool contains_origin() const { return contains(Vec2::Zero()); }
    /// Outward unit normal at (a point close to) the boundary.
    Vec2 outward_normal(const Vec2& p) const;
    /// Arc length from a fixed anchor to the boundary point nearest p.
    double arc_position(const Vec2& p) const;
    /// sup of x . xi over the closure.
    double support(const Vec2& xi) const;

    double diameter() const { return diameter_; }
    double perimeter() const { return perimeter_; }
    void bounding_box(Vec2& lo, Vec2& hi) const;
    const std::vector<BoundarySample>& boundary_samples() const { return samples_; }
    const std::variant<Circle, Ellipse, Polygon>& shape() const { return shape_; }
    std::string kind_name() const;

private:
    PlanarDomain() = default;
    void finalize();

    std::variant<Circle, Ellipse, Polygon> shape_;
    double diameter_ = 0.0;
    double perimeter_ = 0.0;
    Vec2 bbox_lo_ = Vec2::Zero(), bbox_hi_ = Vec2::Zero();
    std::vector<BoundarySample> samples_;
    std::vector<double> ell_param_, ell_arclen_;  // ellipse arc-length table
};

/// Unit direction in the plane; normalized on construction.
class Direction {
public:
    explicit Direction(const Vec2& v);
    Direction(double x, double y) : Direction(Vec2(x, y)) {}
    const Vec2& xi() const { return xi_; }
    Direction opposite() const;

private:
    Vec2 xi_;
};

/// Reflection in the plane {x . xi = t}: x -> 2 (t - x . xi) xi + x.
Vec2 reflect_point(const Direction& xi, double t, const Vec2& x);

/// Checks reflect o reflect = id and R_t^xi = R_{-t}^{-xi} at x.
bool reflect_identity_check(const Direction& xi, double t, const Vec2& x, double tol = 1e-12);

/// True iff the reflection of Omega cap {x . xi < t} stays inside Omega
/// (boundary-sample test; an empty cap is contained by convention).
bool cap_contained(const PlanarDomain& domain, const Direction& xi, double t);

enum class TangencyCase { CaseI, CaseII, Unresolved };

struct CriticalReflection {
    Direction xi;
    double t_critical;
    TangencyCase tangency = TangencyCase::Unresolved;
    Vec2 contact = Vec2::Zero();  // tangency point (case I off the plane, case II on it)
    double gap = 0.0;             // residual clearance when Unresolved
    bool degenerate_contact = false;  // vertex contact or a continuum of contacts
    std::vector<Vec2> cap;            // reflected left-boundary arc at t_critical
};

/// Largest t with the reflected cap contained for all smaller t, located by a
/// forward scan plus bisection, with the tangency classified at the critical
/// position.
CriticalReflection critical_time(const PlanarDomain& domain, const Direction& xi);

struct SerrinInequality {
    double t_plus;
    double t_minus;
    double sum;
};

/// Computes t(xi) + t(-xi) and checks the sum against 2 * t_tol; a violation
/// is an engine defect and throws.
SerrinInequality serrin_inequality(const PlanarDomain& domain, const Direction& xi);

struct SymmetryResult {
    Direction xi;
    bool is_symmetric;
    double t_plus;
    double t_minus;
    double sum;
    double t_mirror;  // candidate symmetry-plane offset (support midpoint)
};

/// Sweeps n equally spaced directions and marks those in which the domain is
/// invariant under reflection across the support-midpoint plane.
std::vector<SymmetryResult> symmetry_planes(const PlanarDomain& domain, int n_directions);

}  // namespace serrinlab
