#include "filling/local_opt.hpp"

#include "shapes.hpp"

#include <doctest.h>

using namespace filling;

namespace {

std::vector<int> sections(const MedialAxis &m)
{
    std::vector<int> s;
    for (size_t i = 0; i < m.piece_count(); ++i)
        if (!m.piece(int(i)).is_junction())
            s.push_back(int(i));
    return s;
}

int junction_piece(const MedialAxis &m)
{
    for (size_t i = 0; i < m.piece_count(); ++i)
        if (m.piece(int(i)).is_junction())
            return int(i);
    return -1;
}

} // namespace

TEST_CASE("square, one disc on a section ends on the junction")
{
    const MedialAxis m = compute_medial_axis(shapes::square2());
    Way w(m.piece_count(), 0);
    w[size_t(sections(m)[0])] = 1;
    const LocalResult r = local_maximum(m, w, {}, {});
    CHECK(r.reclassified);
    CHECK(r.solution.way[size_t(junction_piece(m))] == 1);
    CHECK(std::abs(r.solution.phi - M_PI / 4) <= 1e-9);
}

TEST_CASE("triangle N=1: the junction way is best")
{
    const MedialAxis m = compute_medial_axis(shapes::equilateral2());
    const auto ways = all_ways(m, 1);
    CHECK(ways.size() == 4);
    const auto res = enumerate_local_maxima(m, ways, {});
    double best = 0;
    Way best_way;
    for (const auto &r : res)
        if (r.solution.phi > best) {
            best = r.solution.phi;
            best_way = r.solution.way;
        }
    CHECK(best_way[size_t(junction_piece(m))] == 1);
    CHECK(std::abs(best - M_PI / (3 * std::sqrt(3.0))) <= 1e-9);
}

TEST_CASE("equilateral triangle N=2: mirror starts give mirror maxima")
{
    const MedialAxis m = compute_medial_axis(shapes::equilateral2());
    const auto s = sections(m);
    REQUIRE(s.size() == 3);
    Way w(m.piece_count(), 0);
    w[size_t(s[0])] = 1;
    w[size_t(s[1])] = 1;
    std::vector<Placement> a { { s[0], 0.3 }, { s[1], 0.7 } };
    std::vector<Placement> b { { s[0], 0.7 }, { s[1], 0.3 } };
    const LocalResult ra = local_maximum(m, w, {}, {}, &a);
    const LocalResult rb = local_maximum(m, w, {}, {}, &b);
    CHECK(std::abs(ra.solution.phi - rb.solution.phi) <= 1e-9);
    REQUIRE(ra.solution.discs.size() == 2);
    // one large and one small disc
    CHECK(std::abs(ra.solution.discs[0].radius - ra.solution.discs[1].radius) > 0.1);
    // the mirrored solution reflects across the axis through the apex
    std::vector<double> xa, xb;
    for (const Disc &d : ra.solution.discs) xa.push_back(d.center.x);
    for (const Disc &d : rb.solution.discs) xb.push_back(2 - d.center.x);
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    CHECK(xa[0] == doctest::Approx(xb[0]).epsilon(1e-5));
    CHECK(xa[1] == doctest::Approx(xb[1]).epsilon(1e-5));
}

TEST_CASE("rectangle plateau: the ascent does not move the disc")
{
    const MedialAxis m = compute_medial_axis(shapes::rectangle4x1());
    int flat = -1;
    for (int p : sections(m))
        if (std::abs(m.point_at(p, 0).radius - m.point_at(p, 1).radius) < 1e-12)
            flat = p;
    REQUIRE(flat >= 0);
    Way w(m.piece_count(), 0);
    w[size_t(flat)] = 1;
    for (double u : { 0.2, 0.5, 0.7 }) {
        std::vector<Placement> init { { flat, u } };
        const LocalResult r = local_maximum(m, w, {}, {}, &init);
        CHECK(r.solution.placements[0].u == u);
        CHECK(r.iterations == 0);
        CHECK(r.solution.phi == doctest::Approx(M_PI * 0.25 / 4).epsilon(1e-12));
    }
}

TEST_CASE("ascent invariants")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        const Polygon p = trial % 2 ? shapes::random_star(rng, 7) : shapes::random_convex(rng, 6);
        const MedialAxis m = compute_medial_axis(p);
        const auto s = sections(m);
        Way w(m.piece_count(), 0);
        for (int k = 0; k < 5; ++k)
            ++w[size_t(s[size_t(k) % s.size()])];
        const auto init = spread_placements(m, w);
        std::vector<Disc> d0;
        for (const Placement &pl : init)
            d0.push_back(m.disc_at(pl));
        const LocalResult r = local_maximum(m, w, {}, {});
        CHECK(r.solution.phi >= union_area(d0) / polygon_area(p) - 1e-15);
        for (size_t k = 0; k + 1 < r.solution.placements.size(); ++k) {
            const auto &a = r.solution.placements[k], &b = r.solution.placements[k + 1];
            if (a.piece == b.piece)
                CHECK(a.u <= b.u);
        }
        for (const Disc &d : r.solution.discs) {
            CHECK(std::abs(nearest_boundary(p, d.center).distance - d.radius) <= 1e-8);
            CHECK(disc_inside(p, d, p.tol()));
        }
        int total = 0;
        for (int c : r.solution.way)
            total += c;
        CHECK(total == 5);
    }
}

TEST_CASE("all_ways matches brute-force counting")
{
    const MedialAxis m = compute_medial_axis(shapes::equilateral2());
    CHECK(all_ways(m, 10).size() == 121);
    CHECK(all_ways(m, 0).size() == 1);
}
