#include "axis_checks.hpp"
#include "shapes.hpp"

#include <doctest.h>

using namespace filling;

namespace {

int count_kind(const MedialAxis &m, BranchCase c)
{
    int n = 0;
    for (const Branch &b : m.branches())
        n += b.kind == c;
    return n;
}

int section_count(const MedialAxis &m)
{
    return int(m.piece_count() - m.junction_piece_count());
}

} // namespace

TEST_CASE("radius_at closed forms")
{
    const Branch p = Branch::edge_point({ 0, 0 }, { 1, 0 }, { 0, 1 }, 1.0, -2, 2);
    CHECK(radius_at(p, 0) == doctest::Approx(1.0));
    CHECK(radius_at(p, 1) == doctest::Approx(2.0));
    const Branch l = Branch::edge_edge({ 0, 0 }, { 1, 0 }, 0.5, 0.0, 0, 3);
    CHECK(radius_at(l, 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(radius_at(l, 3.5), DomainError);
    CHECK_THROWS_AS(radius_at(p, -2.1), DomainError);
}

TEST_CASE("parabola arclength inverse")
{
    const Branch p = Branch::edge_point({ 0, 0 }, { 1, 0 }, { 0, 1 }, 0.7, -2, 2);
    for (double t0 : { -1.5, 0.0, 0.4 })
        for (double s : { -0.3, 0.01, 1.2 }) {
            const double t = p.param_at_arclength(t0, s);
            CHECK(p.arclength_to(t) - p.arclength_to(t0) == doctest::Approx(s).epsilon(1e-12));
        }
}

TEST_CASE("square axis")
{
    const MedialAxis m = compute_medial_axis(shapes::square2());
    CHECK(m.branches().size() == 4);
    CHECK(count_kind(m, BranchCase::EdgeEdge) == 4);
    REQUIRE(m.junctions().size() == 1);
    CHECK(m.junctions()[0].degree == 4);
    CHECK(m.junctions()[0].radius == doctest::Approx(1.0));
    CHECK(norm(m.junctions()[0].position) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.piece_count() == 5);
    CHECK(m.diagnostics().empty());
}

TEST_CASE("square point_at")
{
    const MedialAxis m = compute_medial_axis(shapes::square2());
    int corner_piece = -1;
    for (size_t i = 0; i < m.piece_count(); ++i) {
        if (m.piece(int(i)).is_junction())
            continue;
        if (dist(m.point_at(int(i), 0).position, { 1, 1 }) < 1e-9)
            corner_piece = int(i);
    }
    REQUIRE(corner_piece >= 0);
    const PiecePoint end = m.point_at(corner_piece, 1);
    CHECK(norm(end.position) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(end.radius == doctest::Approx(1.0));
    CHECK(m.point_at(corner_piece, 0).radius == doctest::Approx(0.0).epsilon(1e-12));
    double prev = -1;
    for (int k = 0; k <= 20; ++k) {
        const double r = m.point_at(corner_piece, k / 20.0).radius;
        CHECK(r > prev);
        prev = r;
    }
    const PiecePoint mid = m.point_at(corner_piece, 0.5);
    CHECK(mid.position.x == doctest::Approx(mid.position.y));
    const int junction_piece = int(m.piece_count()) - 1;
    REQUIRE(m.piece(junction_piece).is_junction());
    CHECK_THROWS_AS(m.point_at(junction_piece, 0.5), DomainError);
    CHECK_THROWS_AS(m.point_at(corner_piece, 1.5), DomainError);
}

TEST_CASE("equilateral triangle axis")
{
    const MedialAxis m = compute_medial_axis(shapes::equilateral2());
    CHECK(m.branches().size() == 3);
    REQUIRE(m.junctions().size() == 1);
    CHECK(m.junctions()[0].radius == doctest::Approx(1 / std::sqrt(3.0)));
    CHECK(m.junctions()[0].degree == 3);
    CHECK(m.piece_count() == 4);
}

TEST_CASE("L hexagon has the reflex-vertex parabola")
{
    const Polygon L = shapes::l_hexagon();
    const MedialAxis m = compute_medial_axis(L);
    const BoundaryFeature reflex { BoundaryFeature::Kind::Vertex, 3 };
    REQUIRE(L.vertex(3) == Point(1, 1));
    int with_bottom = 0, total = 0;
    for (const Branch &b : m.branches()) {
        if (b.kind != BranchCase::EdgePoint)
            continue;
        ++total;
        CHECK((b.parents[0] == reflex || b.parents[1] == reflex));
        const BoundaryFeature edge = b.parents[0] == reflex ? b.parents[1] : b.parents[0];
        REQUIRE(edge.kind == BoundaryFeature::Kind::Edge);
        const Point a = L.edge_start(size_t(edge.index));
        const Point c = L.edge_end(size_t(edge.index));
        if (a.y == 0 && c.y == 0)
            ++with_bottom;
        for (int k = 0; k <= 50; ++k) {
            const double t = b.t_a + (b.t_b - b.t_a) * k / 50;
            const Point x = b.position(t);
            const double r = radius_at(b, t);
            CHECK(std::abs(dist(x, { 1, 1 }) - r) <= 1e-6);
            CHECK(std::abs(point_segment_distance(x, a, c) - r) <= 1e-6);
        }
    }
    CHECK(with_bottom == 1);
    CHECK(total == 2);
    // arm junctions at (1.5, 0.5) and (0.5, 1.5), central one on the diagonal
    REQUIRE(m.junctions().size() == 3);
    const double c = 2 - std::sqrt(2.0);
    int central = 0;
    for (const JunctionPoint &j : m.junctions())
        if (dist(j.position, { c, c }) < 1e-9) {
            ++central;
            CHECK(j.radius == doctest::Approx(c));
        }
    CHECK(central == 1);
}

TEST_CASE("dumbbell splits its vertex-vertex branch at the radius minimum")
{
    const MedialAxis m = compute_medial_axis(shapes::dumbbell());
    CHECK(m.diagnostics().empty());
    int pp = -1;
    for (size_t b = 0; b < m.branches().size(); ++b)
        if (m.branches()[b].kind == BranchCase::PointPoint)
            pp = int(b);
    REQUIRE(pp >= 0);
    CHECK(count_kind(m, BranchCase::PointPoint) == 1);
    const Branch &br = m.branches()[size_t(pp)];
    // numeric minimum of r along the branch
    double tmin = br.t_a, rmin = 1e9;
    for (int k = 0; k <= 10000; ++k) {
        const double t = br.t_a + (br.t_b - br.t_a) * k / 10000;
        if (br.radius_unchecked(t) < rmin) {
            rmin = br.radius_unchecked(t);
            tmin = t;
        }
    }
    CHECK(br.position(tmin).x == doctest::Approx(0).epsilon(1e-3));
    CHECK(rmin == doctest::Approx(0.5).epsilon(1e-6));
    int pieces_on_pp = 0;
    for (const Piece &p : m.pieces())
        for (const PieceSegment &s : p.segments)
            if (s.branch == pp)
                ++pieces_on_pp;
    CHECK(pieces_on_pp == 2);
    for (size_t i = 0; i < m.piece_count(); ++i) {
        if (m.piece(int(i)).is_junction())
            continue;
        double prev = -1;
        for (int k = 0; k <= 50; ++k) {
            const double r = m.point_at(int(i), k / 50.0).radius;
            CHECK(r >= prev - 1e-12);
            prev = r;
        }
    }
    CHECK(axis_checks::is_tree(m));
}

TEST_CASE("rectangle axis has a flat central branch")
{
    const MedialAxis m = compute_medial_axis(shapes::rectangle4x1());
    CHECK(m.junctions().size() == 2);
    CHECK(m.branches().size() == 5);
    CHECK(m.piece_count() == 7);
    CHECK(axis_checks::is_tree(m));
}

TEST_CASE("axis properties on assorted polygons")
{
    std::mt19937_64 rng(11);
    std::vector<Polygon> polys { shapes::square2(), shapes::equilateral2(), shapes::triangle_30_60_90(),
                                 shapes::l_hexagon(), shapes::dumbbell(), shapes::rectangle4x1() };
    for (int k = 0; k < 6; ++k)
        polys.push_back(shapes::random_star(rng, 6 + k));
    for (int k = 0; k < 4; ++k)
        polys.push_back(shapes::random_convex(rng, 5 + k));
    for (const Polygon &p : polys) {
        const MedialAxis m = compute_medial_axis(p);
        CAPTURE(p.size());
        CHECK(m.diagnostics().empty());
        for (const auto &d : m.diagnostics())
            MESSAGE(d);
        const auto rep = axis_checks::tangency(m, 100, rng);
        CHECK(rep.failures == 0);
        CHECK(axis_checks::is_tree(m));
        CHECK(axis_checks::max_radius_slope(m, 200) <= 1 + 1e-9);
        CHECK(axis_checks::coverage_fraction(m, 1000, 20000, rng) >= 1 - 1e-4);
    }
}
