#include "serrinlab/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <thread>

#include "serrinlab/common.hpp"

namespace serrinlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double a) {
    while (a < 0.0) a += 2.0 * kPi;
    while (a >= 2.0 * kPi) a -= 2.0 * kPi;
    return a;
}

Vec2 rotate(const Vec2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b, double* tproj = nullptr) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if (tproj) *tproj = t;
    return (p - (a + t * ab)).norm();
}

// Closest point on the axis-aligned ellipse (x/a)^2 + (y/b)^2 = 1 to a query
// in the closed first quadrant. Root of F(t) on (-min(a,b)^2, inf).
Vec2 closest_point_ellipse_q1(double a, double b, double u, double v) {
    if (u == 0.0 && v == 0.0) return (a <= b) ? Vec2(a, 0.0) : Vec2(0.0, b);  // minor-axis end
    if (v == 0.0) {
        const double num = a * a - b * b;
        if (a >= b && num > 0.0 && u < num / a) {
            const double x = a * a * u / num;
            const double q = 1.0 - (x / a) * (x / a);
            return {x, b * std::sqrt(std::max(0.0, q))};
        }
        // fall through to the generic solve when the foot is the vertex region
        if (u >= a) return {a, 0.0};
    }
    if (u == 0.0) {
        const double num = b * b - a * a;
        if (b > a && num > 0.0 && v < num / b) {
            const double y = b * b * v / num;
            const double q = 1.0 - (y / b) * (y / b);
            return {a * std::sqrt(std::max(0.0, q)), y};
        }
        if (v >= b) return {0.0, b};
    }

    const double bmin2 = std::min(a, b) * std::min(a, b);
    auto F = [&](double t) {
        const double fx = a * u / (t + a * a);
        const double fy = b * v / (t + b * b);
        return fx * fx + fy * fy - 1.0;
    };
    double lo = -bmin2 + 1e-300;
    // ensure F(lo) > 0 by nudging off the pole
    {
        double shift = bmin2 * 1e-14 + 1e-300;
        while (!(F(-bmin2 + shift) > 0.0) && shift < bmin2) shift *= 16.0;
        lo = -bmin2 + shift;
        if (!(F(lo) > 0.0)) lo = -bmin2 + bmin2 * 1e-14;
    }
    double hi = std::max({a * u - a * a, b * v - b * b, 0.0}) + std::max({a * u, b * v, 1e-30});
    while (F(hi) > 0.0) hi = 2.0 * hi + 1.0;
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = F(t);
        if (f > 0.0)
            lo = t;
        else
            hi = t;
        // Newton on F, safeguarded by the bracket
        const double fx = a * u / (t + a * a);
        const double fy = b * v / (t + b * b);
        const double dF = -2.0 * (fx * fx / (t + a * a) + fy * fy / (t + b * b));
        double next = (dF < 0.0) ? t - f / dF : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-16 * (std::abs(t) + bmin2)) {
            t = next;
            break;
        }
        t = next;
    }
    return {a * a * u / (t + a * a), b * b * v / (t + b * b)};
}

// Signed distance in the ellipse's local frame, positive inside.
double ellipse_signed_distance_local(double a, double b, const Vec2& p) {
    const double u = std::abs(p.x()), v = std::abs(p.y());
    const Vec2 cp = closest_point_ellipse_q1(a, b, u, v);
    const double d = (Vec2(u, v) - cp).norm();
    const double implicit = (p.x() / a) * (p.x() / a) + (p.y() / b) * (p.y() / b);
    return implicit < 1.0 ? d : -d;
}

bool polygon_contains(const std::vector<Vec2>& vs, const Vec2& p) {
    bool inside = false;
    const size_t n = vs.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& vi = vs[i];
        const Vec2& vj = vs[j];
        if ((vi.y() > p.y()) != (vj.y() > p.y())) {
            const double xc = vi.x() + (p.y() - vi.y()) * (vj.x() - vi.x()) / (vj.y() - vi.y());
            if (p.x() < xc) inside = !inside;
        }
    }
    return inside;
}

double polygon_signed_distance(const std::vector<Vec2>& vs, const Vec2& p) {
    double dmin = std::numeric_limits<double>::infinity();
    const size_t n = vs.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
        dmin = std::min(dmin, point_segment_distance(p, vs[j], vs[i]));
    return polygon_contains(vs, p) ? dmin : -dmin;
}

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SERRIN_LAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return static_cast<int>(hw);
}

}  // namespace

// ---------------------------------------------------------------------------
// PlanarDomain

PlanarDomain PlanarDomain::make_circle(const Vec2& center, double radius) {
    if (!(radius > 0.0)) throw validation_error("circle: radius must be > 0");
    PlanarDomain d;
    d.shape_ = Circle{center, radius};
    d.finalize();
    return d;
}

PlanarDomain PlanarDomain::make_ellipse(const Vec2& center, const Vec2& semi_axes,
                                        double rotation) {
    if (!(semi_axes.x() > 0.0) || !(semi_axes.y() > 0.0))
        throw validation_error("ellipse: semi-axes must be > 0");
    PlanarDomain d;
    d.shape_ = Ellipse{center, semi_axes, rotation};
    d.finalize();
    return d;
}

PlanarDomain PlanarDomain::make_polygon(std::vector<Vec2> vertices) {
    const size_t n = vertices.size();
    if (n < 3) throw validation_error("polygon: need at least 3 vertices");
    double area2 = 0.0;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((vertices[i] - vertices[j]).norm() == 0.0)
            throw validation_error("polygon: repeated consecutive vertex");
        area2 += vertices[j].x() * vertices[i].y() - vertices[i].x() * vertices[j].y();
    }
    if (!(area2 > 0.0)) throw validation_error("polygon: vertices must be counterclockwise");
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = i + 1; k < n; ++k) {
            // skip adjacent edges (sharing a vertex)
            if (k == i || (k + 1) % n == i || (i + 1) % n == k) continue;
            if (segments_properly_intersect(vertices[i], vertices[(i + 1) % n], vertices[k],
                                            vertices[(k + 1) % n]))
                throw validation_error("polygon: boundary is self-intersecting");
        }
    }
    PlanarDomain d;
    d.shape_ = Polygon{std::move(vertices)};
    d.finalize();
    return d;
}

void PlanarDomain::finalize() {
    samples_.clear();
    if (const Circle* c = std::get_if<Circle>(&shape_)) {
        perimeter_ = 2.0 * kPi * c->radius;
        diameter_ = 2.0 * c->radius;
        bbox_lo_ = c->center - Vec2(c->radius, c->radius);
        bbox_hi_ = c->center + Vec2(c->radius, c->radius);
        const int n = kBoundarySampleCount;
        samples_.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * kPi * i / n;
            BoundarySample s;
            s.point = c->center + c->radius * Vec2(std::cos(th), std::sin(th));
            s.tangent = Vec2(-std::sin(th), std::cos(th));
            s.arc_position = c->radius * th;
            samples_.push_back(s);
        }
    } else if (const Ellipse* e = std::get_if<Ellipse>(&shape_)) {
        const double a = e->semi_axes.x(), b = e->semi_axes.y();
        diameter_ = 2.0 * std::max(a, b);
        const double dx = std::hypot(a * std::cos(e->rotation), b * std::sin(e->rotation));
        const double dy = std::hypot(a * std::sin(e->rotation), b * std::cos(e->rotation));
        bbox_lo_ = e->center - Vec2(dx, dy);
        bbox_hi_ = e->center + Vec2(dx, dy);
        // arc-length table over the parameter
        const int m = 8 * kBoundarySampleCount;
        ell_param_.resize(m + 1);
        ell_arclen_.resize(m + 1);
        Vec2 prev(a, 0.0);
        ell_param_[0] = 0.0;
        ell_arclen_[0] = 0.0;
        for (int j = 1; j <= m; ++j) {
            const double t = 2.0 * kPi * j / m;
            const Vec2 pt(a * std::cos(t), b * std::sin(t));
            ell_param_[j] = t;
            ell_arclen_[j] = ell_arclen_[j - 1] + (pt - prev).norm();
            prev = pt;
        }
        perimeter_ = ell_arclen_[m];
        const int n = kBoundarySampleCount;
        samples_.reserve(n);
        int j = 0;
        for (int i = 0; i < n; ++i) {
            const double target = perimeter_ * i / n;
            while (j + 1 <= m && ell_arclen_[j + 1] < target) ++j;
            const double seg = ell_arclen_[j + 1] - ell_arclen_[j];
            const double w = seg > 0.0 ? (target - ell_arclen_[j]) / seg : 0.0;
            const double t = ell_param_[j] + w * (ell_param_[j + 1] - ell_param_[j]);
            BoundarySample s;
            s.point = e->center + rotate(Vec2(a * std::cos(t), b * std::sin(t)), e->rotation);
            s.tangent = rotate(Vec2(-a * std::sin(t), b * std::cos(t)), e->rotation).normalized();
            s.arc_position = target;
            samples_.push_back(s);
        }
    } else {
        const Polygon& poly = std::get<Polygon>(shape_);
        const size_t n = poly.vertices.size();
        perimeter_ = 0.0;
        bbox_lo_ = bbox_hi_ = poly.vertices[0];
        diameter_ = 0.0;
        for (size_t i = 0; i < n; ++i) {
            perimeter_ += (poly.vertices[(i + 1) % n] - poly.vertices[i]).norm();
            bbox_lo_ = bbox_lo_.cwiseMin(poly.vertices[i]);
            bbox_hi_ = bbox_hi_.cwiseMax(poly.vertices[i]);
            for (size_t k = i + 1; k < n; ++k)
                diameter_ = std::max(diameter_, (poly.vertices[i] - poly.vertices[k]).norm());
        }
        const double h_arc = perimeter_ / kBoundarySampleCount;
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const Vec2& v0 = poly.vertices[i];
            const Vec2& v1 = poly.vertices[(i + 1) % n];
            const double len = (v1 - v0).norm();
            const Vec2 tan = (v1 - v0) / len;
            const int steps = std::max(1, static_cast<int>(std::ceil(len / h_arc)));
            for (int k = 0; k < steps; ++k) {
                BoundarySample s;
                const double w = static_cast<double>(k) / steps;
                s.point = v0 + w * (v1 - v0);
                s.tangent = tan;
                s.arc_position = acc + w * len;
                s.at_vertex = (k == 0);
                samples_.push_back(s);
            }
            acc += len;
        }
    }
}

double PlanarDomain::signed_distance(const Vec2& x) const {
    if (const Circle* c = std::get_if<Circle>(&shape_)) return c->radius - (x - c->center).norm();
    if (const Ellipse* e = std::get_if<Ellipse>(&shape_)) {
        const Vec2 local = rotate(x - e->center, -e->rotation);
        return ellipse_signed_distance_local(e->semi_axes.x(), e->semi_axes.y(), local);
    }
    return polygon_signed_distance(std::get<Polygon>(shape_).vertices, x);
}

Vec2 PlanarDomain::outward_normal(const Vec2& p) const {
    if (const Circle* c = std::get_if<Circle>(&shape_)) {
        const Vec2 d = p - c->center;
        const double n = d.norm();
        return n > 0.0 ? Vec2(d / n) : Vec2(1.0, 0.0);
    }
    if (const Ellipse* e = std::get_if<Ellipse>(&shape_)) {
        const Vec2 local = rotate(p - e->center, -e->rotation);
        const double a = e->semi_axes.x(), b = e->semi_axes.y();
        Vec2 n_local(local.x() / (a * a), local.y() / (b * b));
        const double n = n_local.norm();
        if (n == 0.0) return Vec2(1.0, 0.0);
        return rotate(n_local / n, e->rotation);
    }
    const auto& vs = std::get<Polygon>(shape_).vertices;
    const size_t n = vs.size();
    double best = std::numeric_limits<double>::infinity();
    Vec2 normal(1.0, 0.0);
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const double d = point_segment_distance(p, vs[j], vs[i]);
        if (d < best) {
            best = d;
            const Vec2 tan = (vs[i] - vs[j]).normalized();
            normal = Vec2(tan.y(), -tan.x());  // outward for ccw orientation
        }
    }
    return normal;
}

double PlanarDomain::arc_position(const Vec2& p) const {
    if (const Circle* c = std::get_if<Circle>(&shape_)) {
        const Vec2 d = p - c->center;
        return c->radius * wrap_angle(std::atan2(d.y(), d.x()));
    }
    if (const Ellipse* e = std::get_if<Ellipse>(&shape_)) {
        const Vec2 local = rotate(p - e->center, -e->rotation);
        const double t =
            wrap_angle(std::atan2(local.y() / e->semi_axes.y(), local.x() / e->semi_axes.x()));
        const auto it = std::lower_bound(ell_param_.begin(), ell_param_.end(), t);
        size_t j = std::min<size_t>(std::distance(ell_param_.begin(), it), ell_param_.size() - 1);
        if (j == 0) return 0.0;
        const double seg = ell_param_[j] - ell_param_[j - 1];
        const double w = seg > 0.0 ? (t - ell_param_[j - 1]) / seg : 0.0;
        return ell_arclen_[j - 1] + w * (ell_arclen_[j] - ell_arclen_[j - 1]);
    }
    const auto& vs = std::get<Polygon>(shape_).vertices;
    const size_t n = vs.size();
    double best = std::numeric_limits<double>::infinity();
    double arc = 0.0, acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& v0 = vs[i];
        const Vec2& v1 = vs[(i + 1) % n];
        double tproj;
        const double d = point_segment_distance(p, v0, v1, &tproj);
        const double len = (v1 - v0).norm();
        if (d < best) {
            best = d;
            arc = acc + tproj * len;
        }
        acc += len;
    }
    return arc;
}

double PlanarDomain::support(const Vec2& xi) const {
    if (const Circle* c = std::get_if<Circle>(&shape_)) return c->center.dot(xi) + c->radius;
    if (const Ellipse* e = std::get_if<Ellipse>(&shape_)) {
        const Vec2 xi_local = rotate(xi, -e->rotation);
        return e->center.dot(xi) + std::hypot(e->semi_axes.x() * xi_local.x(),
                                              e->semi_axes.y() * xi_local.y());
    }
    const auto& vs = std::get<Polygon>(shape_).vertices;
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : vs) best = std::max(best, v.dot(xi));
    return best;
}

void PlanarDomain::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = bbox_lo_;
    hi = bbox_hi_;
}

std::string PlanarDomain::kind_name() const {
    if (std::holds_alternative<Circle>(shape_)) return "circle";
    if (std::holds_alternative<Ellipse>(shape_)) return "ellipse";
    return "polygon";
}

// ---------------------------------------------------------------------------
// Reflections

Direction::Direction(const Vec2& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw validation_error("Direction: zero or non-finite");
    xi_ = v / n;
}

Direction Direction::opposite() const {
    Direction d(*this);
    d.xi_ = -xi_;
    return d;
}

Vec2 reflect_point(const Direction& xi, double t, const Vec2& x) {
    return 2.0 * (t - x.dot(xi.xi())) * xi.xi() + x;
}

bool reflect_identity_check(const Direction& xi, double t, const Vec2& x, double tol) {
    const double scale = 1.0 + x.norm() + std::abs(t);
    const Vec2 twice = reflect_point(xi, t, reflect_point(xi, t, x));
    if ((twice - x).norm() > tol * scale) return false;
    const Vec2 other = reflect_point(xi.opposite(), -t, x);
    return (reflect_point(xi, t, x) - other).norm() <= tol * scale;
}

// ---------------------------------------------------------------------------
// Moving plane

namespace {

bool cap_contained_tol(const PlanarDomain& domain, const Direction& xi, double t, double tol) {
    for (const BoundarySample& q : domain.boundary_samples()) {
        const double s = q.point.dot(xi.xi());
        const Vec2 r = reflect_point(xi, t, q.point);
        if (s < t) {
            // reflected left boundary must not leave the closure
            if (domain.signed_distance(r) < -tol) return false;
        } else {
            // boundary right of the plane must not dip into the open cap
            if (domain.signed_distance(r) > tol) return false;
        }
    }
    return true;
}

// The public containment slack (kContainTolRel) would bias the located
// critical time by about its own size, an order above t_tol; the bisection
// therefore runs on a tighter predicate, limited only by signed-distance
// roundoff.
constexpr double kBisectionContainTolRel = 1e-11;

}  // namespace

bool cap_contained(const PlanarDomain& domain, const Direction& xi, double t) {
    return cap_contained_tol(domain, xi, t, kContainTolRel * domain.diameter());
}

namespace {

struct Crossing {
    Vec2 point;
    double orth;  // 1 - |tangent . xi|
    bool at_vertex;
};

void classify_tangency(const PlanarDomain& domain, const Direction& xi, CriticalReflection& cr) {
    const double diam = domain.diameter();
    const double t = cr.t_critical;
    const auto& samples = domain.boundary_samples();
    const size_t n = samples.size();
    const double h_arc = domain.perimeter() / static_cast<double>(n);
    const double plane_tol = kPlaneTolRel * diam;
    const double class_tol = kClassTolRel * diam;

    // plane crossings of the boundary, with an orthogonality measure
    std::vector<Crossing> crossings;
    for (size_t i = 0; i < n; ++i) {
        const size_t j = (i + 1) % n;
        const double si = samples[i].point.dot(xi.xi()) - t;
        const double sj = samples[j].point.dot(xi.xi()) - t;
        if (si == 0.0 || (si < 0.0) != (sj < 0.0)) {
            const double w = (si == sj) ? 0.0 : std::clamp(si / (si - sj), 0.0, 1.0);
            Crossing c;
            c.point = samples[i].point + w * (samples[j].point - samples[i].point);
            const double m1 = 1.0 - std::abs(samples[i].tangent.dot(xi.xi()));
            const double m2 = 1.0 - std::abs(samples[j].tangent.dot(xi.xi()));
            c.orth = std::min(m1, m2);
            c.at_vertex = samples[i].at_vertex || samples[j].at_vertex ||
                          (samples[i].tangent - samples[j].tangent).norm() > 1e-9;
            crossings.push_back(c);
        }
    }

    const Crossing* best_crossing = nullptr;
    for (const Crossing& c : crossings)
        if (!best_crossing || c.orth < best_crossing->orth) best_crossing = &c;
    if (best_crossing && best_crossing->orth <= 1e-4) {
        cr.tangency = TangencyCase::CaseII;
        cr.contact = best_crossing->point;
        cr.degenerate_contact = best_crossing->at_vertex;
        return;
    }

    // off-plane contact search among the reflected left-boundary samples
    const double excl = std::max(2.0 * h_arc, 10.0 * plane_tol);
    const double coincidence_tol = 100.0 * kContainTolRel * diam;
    double best_clear = std::numeric_limits<double>::infinity();
    Vec2 best_point = Vec2::Zero();
    bool best_vertex = false;
    long searched = 0, coincident = 0, ties = 0;
    for (const BoundarySample& q : samples) {
        const double s = q.point.dot(xi.xi());
        if (t - s <= excl) continue;
        ++searched;
        const Vec2 r = reflect_point(xi, t, q.point);
        const double clear = std::abs(domain.signed_distance(r));
        if (clear <= coincidence_tol) ++coincident;
        if (clear < best_clear) {
            best_clear = clear;
            best_point = r;
            best_vertex = q.at_vertex;
        }
    }
    for (const BoundarySample& q : samples) {
        const double s = q.point.dot(xi.xi());
        if (t - s <= excl) continue;
        const Vec2 r = reflect_point(xi, t, q.point);
        if (std::abs(domain.signed_distance(r)) <= best_clear + 10.0 * kContainTolRel * diam) ++ties;
    }

    if (searched > 0 && coincident * 4 >= searched) {
        // the reflected arc lies along the boundary: symmetric tangency
        cr.tangency = TangencyCase::CaseII;
        cr.contact = best_crossing ? best_crossing->point : best_point;
        cr.degenerate_contact = true;
        return;
    }
    if (best_clear <= class_tol) {
        cr.tangency = TangencyCase::CaseI;
        cr.contact = best_point;
        cr.degenerate_contact = best_vertex || ties > std::max<long>(8, searched / 20);
        return;
    }
    cr.tangency = TangencyCase::Unresolved;
    cr.gap = best_clear;
}

}  // namespace

CriticalReflection critical_time(const PlanarDomain& domain, const Direction& xi) {
    const double t_lo = -domain.support(-xi.xi());
    const double t_hi = domain.support(xi.xi());
    const double t_tol = kTTolRel * domain.diameter();
    const double pred_tol = kBisectionContainTolRel * domain.diameter();

    // forward scan for the first loss of containment, then bisection
    const int nscan = 256;
    double lo = t_lo, hi = t_hi;
    bool found = false;
    double prev = t_lo;
    for (int k = 1; k <= nscan; ++k) {
        const double t = t_lo + (t_hi - t_lo) * k / nscan;
        if (!cap_contained_tol(domain, xi, t, pred_tol)) {
            lo = prev;
            hi = t;
            found = true;
            break;
        }
        prev = t;
    }
    if (!found) {
        lo = t_hi;
        hi = t_hi;
    }
    while (hi - lo > t_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (cap_contained_tol(domain, xi, mid, pred_tol))
            lo = mid;
        else
            hi = mid;
    }

    CriticalReflection cr{xi, 0.5 * (lo + hi), TangencyCase::Unresolved, Vec2::Zero(), 0.0,
                          false, {}};
    classify_tangency(domain, xi, cr);
    for (const BoundarySample& q : domain.boundary_samples()) {
        if (q.point.dot(xi.xi()) < cr.t_critical)
            cr.cap.push_back(reflect_point(xi, cr.t_critical, q.point));
    }
    return cr;
}

SerrinInequality serrin_inequality(const PlanarDomain& domain, const Direction& xi) {
    SerrinInequality out{};
    out.t_plus = critical_time(domain, xi).t_critical;
    out.t_minus = critical_time(domain, xi.opposite()).t_critical;
    out.sum = out.t_plus + out.t_minus;
    const double bound = 2.0 * kTTolRel * domain.diameter();
    if (out.sum > bound)
        throw std::logic_error("geometry engine defect: t(xi) + t(-xi) = " +
                               std::to_string(out.sum) + " exceeds " + std::to_string(bound));
    return out;
}

namespace {

bool mirror_invariant(const PlanarDomain& domain, const Direction& xi, double t) {
    const double tol = kMirrorTolRel * domain.diameter();
    for (const BoundarySample& q : domain.boundary_samples()) {
        const Vec2 r = reflect_point(xi, t, q.point);
        if (std::abs(domain.signed_distance(r)) > tol) return false;
    }
    return true;
}

}  // namespace

std::vector<SymmetryResult> symmetry_planes(const PlanarDomain& domain, int n_directions) {
    if (n_directions < 4) throw validation_error("symmetry_planes: need at least 4 directions");
    const int n = n_directions;
    std::vector<Direction> dirs;
    dirs.reserve(n);
    for (int k = 0; k < n; ++k) {
        if (n % 2 == 0 && k >= n / 2) {
            dirs.push_back(dirs[k - n / 2].opposite());  // exact negation
        } else {
            const double th = 2.0 * kPi * k / n;
            dirs.emplace_back(std::cos(th), std::sin(th));
        }
    }

    // critical times for every direction (and the opposites, if n is odd)
    const bool paired = (n % 2 == 0);
    std::vector<Direction> jobs = dirs;
    if (!paired)
        for (int k = 0; k < n; ++k) jobs.push_back(dirs[k].opposite());

    std::vector<double> t_of(jobs.size());
    const int workers = std::min<int>(thread_budget(), static_cast<int>(jobs.size()));
    std::vector<std::future<void>> futures;
    std::atomic<size_t> next{0};
    for (int w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                t_of[i] = critical_time(domain, jobs[i]).t_critical;
            }
        }));
    for (auto& f : futures) f.get();

    std::vector<SymmetryResult> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        SymmetryResult r{dirs[k], false, 0.0, 0.0, 0.0, 0.0};
        r.t_plus = t_of[k];
        r.t_minus = paired ? t_of[(k + n / 2) % n] : t_of[n + k];
        r.sum = r.t_plus + r.t_minus;
        const double lo = -domain.support(-dirs[k].xi());
        const double hi = domain.support(dirs[k].xi());
        r.t_mirror = 0.5 * (lo + hi);
        r.is_symmetric = mirror_invariant(domain, dirs[k], r.t_mirror);
        out.push_back(r);
    }
    return out;
}

}  // namespace serrinlab
