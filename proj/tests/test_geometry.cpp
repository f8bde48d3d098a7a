#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grid_oracle.hpp"
#include "serrinlab/common.hpp"
#include "serrinlab/geometry.hpp"
#include "test_support.hpp"

using namespace serrinlab;

namespace {

PlanarDomain unit_circle() { return PlanarDomain::make_circle({0.0, 0.0}, 1.0); }
PlanarDomain offset_circle() { return PlanarDomain::make_circle({0.3, 0.0}, 1.0); }
PlanarDomain wide_ellipse() { return PlanarDomain::make_ellipse({0.0, 0.0}, {2.0, 1.0}, 0.0); }
PlanarDomain unit_square() {
    return PlanarDomain::make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}
PlanarDomain l_polygon() {
    return PlanarDomain::make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

std::vector<PlanarDomain> builtin_domains() {
    return {unit_circle(), offset_circle(), wide_ellipse(), unit_square(), l_polygon()};
}

}  // namespace

TEST_CASE("reflection formula") {
    const Direction ex(1.0, 0.0);
    CHECK((reflect_point(ex, 0.0, {3.0, 5.0}) - Vec2(-3.0, 5.0)).norm() <= 1e-15);
    CHECK((reflect_point(ex, 2.0, {5.0, 1.0}) - Vec2(-1.0, 1.0)).norm() <= 1e-15);
    // points on the plane are fixed
    const Direction d(0.6, 0.8);
    const Vec2 on_plane = 1.7 * d.xi() + 3.0 * Vec2(-d.xi().y(), d.xi().x());
    CHECK((reflect_point(d, 1.7, on_plane) - on_plane).norm() <= 1e-14);
}

TEST_CASE("involution and opposite-direction identity, 1000 random trials") {
    for (int trial = 0; trial < 1000; ++trial) {
        const Direction xi(test_support::uniform(-1, 1), test_support::uniform(-1, 1));
        const double t = test_support::uniform(-5, 5);
        const Vec2 x(test_support::uniform(-10, 10), test_support::uniform(-10, 10));
        CHECK(reflect_identity_check(xi, t, x, 1e-12));
    }
}

TEST_CASE("signed distance of the shapes") {
    CHECK(unit_circle().signed_distance({0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(unit_circle().signed_distance({2.0, 0.0}) == doctest::Approx(-1.0));
    const PlanarDomain e = wide_ellipse();
    CHECK(e.signed_distance({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.signed_distance({2.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.signed_distance({0.0, 1.5}) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(e.signed_distance({3.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-12));
    const PlanarDomain sq = unit_square();
    CHECK(sq.signed_distance({0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(sq.signed_distance({0.5, -0.25}) == doctest::Approx(-0.25));
    CHECK(l_polygon().signed_distance({1.5, 1.5}) == doctest::Approx(-0.5));
    CHECK(l_polygon().signed_distance({0.5, 0.5}) == doctest::Approx(0.5));
    // a rotated ellipse: the point on the rotated long axis
    const PlanarDomain rot = PlanarDomain::make_ellipse({0, 0}, {2.0, 1.0}, M_PI / 4);
    const Vec2 tip(2.0 * std::cos(M_PI / 4), 2.0 * std::sin(M_PI / 4));
    CHECK(rot.signed_distance(tip) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(PlanarDomain::make_circle({0, 0}, 0.0), validation_error);
    CHECK_THROWS_AS(PlanarDomain::make_polygon({{0, 0}, {1, 0}}), validation_error);
    // clockwise
    CHECK_THROWS_AS(PlanarDomain::make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}),
                    validation_error);
    // bowtie
    CHECK_THROWS_AS(PlanarDomain::make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                    validation_error);
    CHECK_THROWS_AS(Direction(0.0, 0.0), validation_error);
    CHECK(unit_circle().contains_origin());
    CHECK_FALSE(unit_square().contains_origin());  // origin is a corner
}

TEST_CASE("cap containment on the circle and the square") {
    const PlanarDomain disk = unit_circle();
    const Direction ex(1.0, 0.0);
    CHECK(cap_contained(disk, ex, -0.5));
    CHECK_FALSE(cap_contained(disk, ex, 0.1));
    const PlanarDomain sq = unit_square();
    CHECK(cap_contained(sq, ex, 0.4));
    CHECK_FALSE(cap_contained(sq, ex, 0.6));
    // dense-grid oracle agrees
    CHECK(grid_oracle::cap_contained(sq, ex, 0.4));
    CHECK_FALSE(grid_oracle::cap_contained(sq, ex, 0.6));
    // empty cap is contained by convention
    CHECK(cap_contained(disk, ex, -1.5));
}

TEST_CASE("monotone containment in t") {
    const Direction d(0.6, -0.8);
    for (const PlanarDomain& domain : builtin_domains()) {
        const double t_c = critical_time(domain, d).t_critical;
        const double lo = -domain.support(-d.xi());
        bool contained_above = true;  // walking downward from t_c
        for (int k = 0; k <= 12; ++k) {
            const double t = t_c - (t_c - lo) * k / 12.0 - 1e-6 * domain.diameter();
            const bool now = cap_contained(domain, d, t);
            CHECK((now || !contained_above || k == 0));
            if (!now) contained_above = false;
        }
        CHECK(contained_above);  // never fails below the critical position
    }
}

TEST_CASE("critical time of circles") {
    const CriticalReflection centered = critical_time(unit_circle(), Direction(1.0, 0.0));
    CHECK(std::abs(centered.t_critical) <= 1e-9);
    CHECK(centered.tangency == TangencyCase::CaseII);
    // any direction by full symmetry
    const CriticalReflection diag = critical_time(unit_circle(), Direction(1.0, 1.0));
    CHECK(std::abs(diag.t_critical) <= 1e-9);
    CHECK(diag.tangency == TangencyCase::CaseII);

    const CriticalReflection off = critical_time(offset_circle(), Direction(1.0, 0.0));
    CHECK(off.t_critical == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(off.tangency == TangencyCase::CaseII);
}

TEST_CASE("critical time of the ellipse in a diagonal direction") {
    const Direction diag(1.0, 1.0);
    const CriticalReflection cr = critical_time(wide_ellipse(), diag);
    CHECK(cr.t_critical < 0.0);
    // frozen from an offline 2400^2 dense-grid oracle
    CHECK(cr.t_critical == doctest::Approx(-0.94769).epsilon(5e-3));
    const auto oracle = grid_oracle::critical_time(wide_ellipse(), diag);
    CHECK(std::abs(cr.t_critical - oracle.t_critical) <=
          std::max(kTTolRel * wide_ellipse().diameter(), 2.0 * oracle.h_grid));
    // the boundary crossing at the critical plane is within half a degree of
    // orthogonal, so the tangency sits at the I/II transition; the engine
    // must classify it one way or the other, not punt
    CHECK(cr.tangency != TangencyCase::Unresolved);
}

TEST_CASE("critical times of the L-polygon, derived by hand") {
    const PlanarDomain L = l_polygon();
    // sweeping right: the reflected upper arm first pokes into the notch at
    // x = 0.5; sweeping left: the lower arm exits the domain below x = 1
    CHECK(critical_time(L, Direction(1.0, 0.0)).t_critical == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(critical_time(L, Direction(-1.0, 0.0)).t_critical ==
          doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(critical_time(L, Direction(0.0, 1.0)).t_critical == doctest::Approx(0.5).epsilon(1e-8));
    // the mirror direction stops early at the notch corner, not at the plane
    // of symmetry
    CHECK(critical_time(L, Direction(1.0, -1.0)).t_critical ==
          doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-7));
    CHECK(critical_time(L, Direction(1.0, 1.0)).t_critical ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("serrin inequality examples") {
    const SerrinInequality off = serrin_inequality(offset_circle(), Direction(1.0, 0.0));
    CHECK(off.t_plus == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(off.t_minus == doctest::Approx(-0.3).epsilon(1e-8));
    CHECK(std::abs(off.sum) <= 2.0 * kTTolRel * offset_circle().diameter());

    const SerrinInequality sq = serrin_inequality(unit_square(), Direction(1.0, 0.0));
    CHECK(sq.t_plus == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(sq.t_minus == doctest::Approx(-0.5).epsilon(1e-8));

    const SerrinInequality L = serrin_inequality(l_polygon(), Direction(1.0, 0.0));
    CHECK(L.t_plus == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(L.t_minus == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(L.sum < -0.4);
}

TEST_CASE("the inequality holds over a 64-direction sweep of every domain") {
    for (const PlanarDomain& domain : builtin_domains()) {
        const auto sweep = symmetry_planes(domain, 64);
        REQUIRE(sweep.size() == 64);
        const double bound = 2.0 * kTTolRel * domain.diameter();
        for (const SymmetryResult& r : sweep) CHECK(r.sum <= bound);
    }
}

TEST_CASE("critical time agrees with the 512^2 grid oracle") {
    for (const PlanarDomain& domain : builtin_domains()) {
        for (int k = 0; k < 8; ++k) {
            const double th = 2.0 * M_PI * k / 8 + 0.2;  // avoid privileged axes
            const Direction d(std::cos(th), std::sin(th));
            const double engine = critical_time(domain, d).t_critical;
            const auto oracle = grid_oracle::critical_time(domain, d);
            CHECK(std::abs(engine - oracle.t_critical) <=
                  std::max(kTTolRel * domain.diameter(), 2.0 * oracle.h_grid));
        }
    }
}

TEST_CASE("symmetry signature of the built-in domains") {
    // circles: symmetric in every direction regardless of the center
    for (const SymmetryResult& r : symmetry_planes(PlanarDomain::make_circle({0.3, 0.2}, 0.8), 64))
        CHECK(r.is_symmetric);

    // ellipse: exactly the two axes
    const auto ell = symmetry_planes(wide_ellipse(), 8);
    int count = 0;
    for (const SymmetryResult& r : ell) {
        const bool axis = std::abs(std::abs(r.xi.xi().x()) - 1.0) < 1e-12 ||
                          std::abs(std::abs(r.xi.xi().y()) - 1.0) < 1e-12;
        CHECK(r.is_symmetric == axis);
        count += r.is_symmetric;
    }
    CHECK(count == 4);  // +/- of both axes

    // L-polygon: exactly the diagonal mirror (normal (1,-1)/sqrt(2))
    const auto L = symmetry_planes(l_polygon(), 64);
    int sym_count = 0;
    for (const SymmetryResult& r : L) {
        const bool mirror_normal = std::abs(r.xi.xi().x() + r.xi.xi().y()) < 1e-9;
        CHECK(r.is_symmetric == mirror_normal);
        sym_count += r.is_symmetric;
    }
    CHECK(sym_count == 2);
}

TEST_CASE("only the circle is symmetric in all 64 directions") {
    const auto domains = builtin_domains();
    for (size_t i = 0; i < domains.size(); ++i) {
        const auto sweep = symmetry_planes(domains[i], 64);
        const bool all = std::all_of(sweep.begin(), sweep.end(),
                                     [](const SymmetryResult& r) { return r.is_symmetric; });
        const bool is_circle = std::holds_alternative<Circle>(domains[i].shape());
        CHECK(all == is_circle);
    }
}

TEST_CASE("containment flips across the critical time by one step_back") {
    struct Probe {
        PlanarDomain domain;
        Direction xi;
    };
    const std::vector<Probe> probes = {{unit_circle(), Direction(1.0, 0.0)},
                                       {unit_circle(), Direction(0.6, 0.8)},
                                       {offset_circle(), Direction(1.0, 0.0)},
                                       {wide_ellipse(), Direction(1.0, 0.0)},
                                       {unit_square(), Direction(1.0, 0.0)},
                                       {l_polygon(), Direction(1.0, 0.0)}};
    for (const Probe& p : probes) {
        const double t_c = critical_time(p.domain, p.xi).t_critical;
        const double step_back = kStepBackFactor * kTTolRel * p.domain.diameter();
        CHECK(cap_contained(p.domain, p.xi, t_c - step_back));
        CHECK_FALSE(cap_contained(p.domain, p.xi, t_c + step_back));
    }
}

TEST_CASE("cap polyline lies right of the plane and inside the closure") {
    const PlanarDomain e = wide_ellipse();
    const Direction d(0.8, 0.6);
    const CriticalReflection cr = critical_time(e, d);
    REQUIRE(!cr.cap.empty());
    for (const Vec2& p : cr.cap) {
        CHECK(p.dot(d.xi()) >= cr.t_critical - 1e-12);
        CHECK(e.signed_distance(p) >= -1e-6 * e.diameter());
    }
}
