#include "filling/coverage.hpp"

#include "axis_checks.hpp"
#include "shapes.hpp"

#include <doctest.h>

using namespace filling;

namespace {

// Monte-Carlo estimate of the union area and its standard deviation.
std::pair<double, double> mc_union(const std::vector<Disc> &discs, int samples, std::mt19937_64 &rng)
{
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Disc &d : discs) {
        x0 = std::min(x0, d.center.x - d.radius);
        y0 = std::min(y0, d.center.y - d.radius);
        x1 = std::max(x1, d.center.x + d.radius);
        y1 = std::max(y1, d.center.y + d.radius);
    }
    std::uniform_real_distribution<double> X(x0, x1), Y(y0, y1);
    int hit = 0;
    for (int s = 0; s < samples; ++s) {
        const Point q { X(rng), Y(rng) };
        for (const Disc &d : discs)
            if (norm2(q - d.center) < d.radius * d.radius) {
                ++hit;
                break;
            }
    }
    const double box = (x1 - x0) * (y1 - y0);
    const double p = double(hit) / samples;
    return { p * box, std::sqrt(p * (1 - p) / samples) * box };
}

int first_section(const MedialAxis &m, auto pred)
{
    for (size_t i = 0; i < m.piece_count(); ++i)
        if (!m.piece(int(i)).is_junction() && pred(int(i)))
            return int(i);
    return -1;
}

std::vector<Disc> discs_at(const MedialAxis &m, const std::vector<Placement> &pl)
{
    std::vector<Disc> d;
    for (const Placement &p : pl)
        d.push_back(m.disc_at(p));
    return d;
}

} // namespace

TEST_CASE("union_area spot values")
{
    CHECK(union_area({}) == 0);
    CHECK(union_area({ { { 0, 0 }, 1 } }) == doctest::Approx(M_PI));
    const double two = 2 * M_PI - (2 * std::acos(0.5) - 0.5 * std::sqrt(3.0));
    CHECK(union_area({ { { 0, 0 }, 1 }, { { 1, 0 }, 1 } }) == doctest::Approx(two).epsilon(1e-12));
    CHECK(two == doctest::Approx(5.05482).epsilon(1e-5));
    CHECK(union_area({ { { 0, 0 }, 1 }, { { 0, 0 }, 0.5 } }) == doctest::Approx(M_PI));
    CHECK(union_area({ { { 0, 0 }, 1 }, { { 0, 0 }, 1 } }) == doctest::Approx(M_PI));
    CHECK(union_area({ { { 0, 0 }, 1 }, { { 2, 0 }, 1 } }) == doctest::Approx(2 * M_PI));
    CHECK(union_area({ { { 0, 0 }, 1 }, { { 5, 0 }, 0 } }) == doctest::Approx(M_PI));
}

TEST_CASE("two overlapping discs against Monte Carlo")
{
    std::mt19937_64 rng(3);
    const std::vector<Disc> d { { { 0, 0 }, 1 }, { { 1, 0 }, 1 } };
    auto [est, sd] = mc_union(d, 2000000, rng);
    CHECK(std::abs(est - union_area(d)) <= 3 * sd);
}

TEST_CASE("union_area against Monte Carlo on random sets")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Disc> d;
        const int n = 1 + trial;
        for (int k = 0; k < n; ++k)
            d.push_back({ { 2 * U(rng), 2 * U(rng) }, 0.1 + 0.6 * U(rng) });
        auto [est, sd] = mc_union(d, 200000, rng);
        CHECK(std::abs(est - union_area(d)) <= 3 * sd + 1e-12);
    }
}

TEST_CASE("lens area")
{
    const Disc a { { 0, 0 }, 1 }, b { { 1, 0 }, 1 };
    CHECK(lens_area(a, b) == doctest::Approx(2 * std::acos(0.5) - 0.5 * std::sqrt(3.0)));
    CHECK(union_area({ a, b }) == doctest::Approx(2 * M_PI - lens_area(a, b)));
}

TEST_CASE("contributions")
{
    {
        const auto rep = contributions({ { { 0, 0 }, 1 }, { { 0, 0 }, 1 } });
        CHECK(rep.contribution[0] == doctest::Approx(M_PI / 2));
        CHECK(rep.contribution[1] == doctest::Approx(M_PI / 2));
        CHECK(rep.unique[0] == doctest::Approx(0).epsilon(1e-12));
    }
    {
        const auto rep = contributions({ { { 0, 0 }, 1 }, { { 3, 0 }, 1 } });
        CHECK(rep.contribution[0] == doctest::Approx(M_PI));
        CHECK(rep.contribution[1] == doctest::Approx(M_PI));
    }
    {
        const std::vector<Disc> chain { { { 0, 0 }, 1 }, { { 1.2, 0 }, 1 }, { { 2.4, 0 }, 1 } };
        const auto rep = contributions(chain);
        const double sum = rep.contribution[0] + rep.contribution[1] + rep.contribution[2];
        CHECK(std::abs(sum - union_area(chain)) <= 1e-9 * union_area(chain));
        CHECK(rep.contribution[0] == doctest::Approx(rep.contribution[2]));
        // outer discs: lens with the middle counted half
        const double lens = lens_area(chain[0], chain[1]);
        const double triple = region_area(chain, {});
        CHECK(rep.contribution[0] == doctest::Approx(M_PI - lens / 2 + triple / 2 - triple / 3 ));
    }
}

TEST_CASE("contribution sum identity on random sets")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Disc> d;
        const int n = 2 + trial % 11;
        for (int k = 0; k < n; ++k)
            d.push_back({ { 2 * U(rng), 2 * U(rng) }, 0.1 + 0.8 * U(rng) });
        const auto rep = contributions(d);
        double sum = 0;
        for (double c : rep.contribution)
            sum += c;
        const double ua = union_area(d);
        CHECK(std::abs(sum - ua) <= 1e-9 * ua);
        for (size_t k = 0; k < d.size(); ++k)
            CHECK(rep.unique[k] == doctest::Approx(unique_area(int(k), d)).epsilon(1e-9));
    }
}

TEST_CASE("region_area against Monte Carlo")
{
    std::mt19937_64 rng(23);
    const std::vector<Disc> in { { { 0, 0 }, 1 }, { { 1, 0.2 }, 0.9 } };
    const std::vector<Disc> out { { { 0.5, 0.5 }, 0.4 } };
    std::uniform_real_distribution<double> X(-1, 2), Y(-1, 1.2);
    const int samples = 2000000;
    int hit = 0;
    for (int s = 0; s < samples; ++s) {
        const Point q { X(rng), Y(rng) };
        bool ok = true;
        for (const Disc &d : in) ok = ok && norm2(q - d.center) < d.radius * d.radius;
        for (const Disc &d : out) ok = ok && norm2(q - d.center) >= d.radius * d.radius;
        hit += ok;
    }
    const double box = 3 * 2.2;
    const double p = double(hit) / samples;
    CHECK(std::abs(p * box - region_area(in, out)) <= 3 * std::sqrt(p * (1 - p) / samples) * box);
}

TEST_CASE("phi spot values")
{
    CHECK(phi({ { { 0, 0 }, 1 } }, shapes::square2()) == doctest::Approx(M_PI / 4));
    CHECK(phi({}, shapes::square2()) == 0);
    const Point inc { 1, 1 / std::sqrt(3.0) };
    CHECK(phi({ { inc, 1 / std::sqrt(3.0) } }, shapes::equilateral2()) == doctest::Approx(0.604600).epsilon(1e-6));
    CHECK_THROWS_AS(phi({ { { 0, 0 }, 1.01 } }, shapes::square2()), ValidationError);
}

TEST_CASE("neighbors")
{
    const MedialAxis sq = compute_medial_axis(shapes::square2());
    const int p0 = first_section(sq, [](int) { return true; });
    {
        const std::vector<Placement> pl { { p0, 0.2 }, { p0, 0.5 }, { p0, 0.8 } };
        const auto nb = neighbors(sq, pl);
        CHECK(nb[1].size() == 2);
        CHECK(nb[0].size() == 1);
    }
    CHECK(neighbors(sq, { { p0, 0.5 } })[0].empty());

    const MedialAxis tri = compute_medial_axis(shapes::equilateral2());
    std::vector<Placement> pl;
    int jp = -1;
    for (size_t i = 0; i < tri.piece_count(); ++i) {
        if (tri.piece(int(i)).is_junction())
            jp = int(i);
        else
            pl.push_back({ int(i), 0.5 });
    }
    REQUIRE(jp >= 0);
    {
        // junction unoccupied: each section disc sees the other two
        const auto nb = neighbors(tri, pl);
        for (const auto &v : nb)
            CHECK(v.size() == 2);
    }
    pl.push_back({ jp, 0 });
    const auto nb = neighbors(tri, pl);
    CHECK(nb[3].size() == 3);
    for (int k = 0; k < 3; ++k)
        CHECK(nb[size_t(k)] == std::vector<int> { 3 });
    CHECK_THROWS_AS(neighbors(tri, { { 99, 0 } }), DomainError);
}

TEST_CASE("unique area of the middle disc on a constant-radius section")
{
    const MedialAxis m = compute_medial_axis(shapes::rectangle4x1());
    const int flat = first_section(m, [&](int p) {
        return std::abs(m.point_at(p, 0).radius - m.point_at(p, 1).radius) < 1e-12;
    });
    REQUIRE(flat >= 0);
    const double len = m.piece(flat).length;
    const double d = 0.6;  // outer discs do not meet each other
    const std::vector<Placement> pl { { flat, 0.5 - d / len }, { flat, 0.5 }, { flat, 0.5 + d / len } };
    const auto discs = discs_at(m, pl);
    const auto nb = neighbors(m, pl);
    const double expected = M_PI * 0.25 - 2 * lens_area(discs[0], discs[1]);
    CHECK(unique_area(1, discs, nb[1]) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(unique_area(1, discs) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(unique_area(0, { discs[0] }, {}) == doctest::Approx(M_PI * 0.25));
}

TEST_CASE("neighbor-only unique area equals the full-set value")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const Polygon p = trial % 2 ? shapes::random_star(rng, 7) : shapes::random_convex(rng, 6);
        const MedialAxis m = compute_medial_axis(p);
        std::vector<Placement> pl;
        std::uniform_int_distribution<size_t> pick(0, m.piece_count() - 1);
        while (pl.size() < 6) {
            const int pc = int(pick(rng));
            if (m.piece(pc).is_junction())
                continue;
            pl.push_back({ pc, U(rng) });
        }
        const auto discs = discs_at(m, pl);
        const auto nb = neighbors(m, pl);
        for (int k = 0; k < 6; ++k)
            CHECK(std::abs(unique_area(k, discs, nb[size_t(k)]) - unique_area(k, discs)) <= 1e-9);
    }
}

TEST_CASE("discs between two others cover their overlap")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0, 1);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const Polygon p = trial % 2 ? shapes::random_star(rng, 8) : shapes::random_convex(rng, 7);
        const MedialAxis m = compute_medial_axis(p);
        std::uniform_int_distribution<size_t> pick(0, m.piece_count() - 1);
        for (int k = 0; k < 20; ++k) {
            int pc;
            do pc = int(pick(rng)); while (m.piece(pc).is_junction());
            const Placement start { pc, U(rng) };
            const double total = 0.6 * p.bbox_diag() * U(rng);
            const auto pts = axis_checks::walk(m, start, U(rng) < 0.5 ? 1 : -1, { total * U(rng), total }, rng);
            if (pts.size() != 2)
                continue;
            const Disc A = m.disc_at(start), B = m.disc_at(pts[0]), C = m.disc_at(pts[1]);
            const double ac = region_area({ A, C }, {});
            CHECK(region_area({ A, C }, { B }) <= 1e-9 * ac);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("an occupied junction isolates the two sides")
{
    // L hexagon: the central junction separates the bottom arm from the left arm.
    const MedialAxis m = compute_medial_axis(shapes::l_hexagon());
    const double c = 2 - std::sqrt(2.0);
    int jp = -1;
    for (size_t i = 0; i < m.piece_count(); ++i)
        if (m.piece(int(i)).is_junction() && dist(m.disc_at({ int(i), 0 }).center, { c, c }) < 1e-9)
            jp = int(i);
    REQUIRE(jp >= 0);
    const int node = m.piece_node(jp, 0);
    std::vector<int> sides;
    for (const PieceEnd &e : m.node_pieces(node))
        if (e.piece != jp)
            sides.push_back(e.piece);
    REQUIRE(sides.size() == 3);
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    const Disc J = m.disc_at({ jp, 0 });
    std::vector<Disc> other { m.disc_at({ sides[1], 0.3 }), m.disc_at({ sides[1], 0.8 }), m.disc_at({ sides[2], 0.5 }) };
    auto other_unique = [&](const std::vector<Disc> &side) {
        std::vector<Disc> fixed = side;
        fixed.push_back(J);
        std::vector<Disc> all = fixed;
        all.insert(all.end(), other.begin(), other.end());
        return union_area(all) - union_area(fixed);
    };
    const double ref = other_unique({ m.disc_at({ sides[0], 0.5 }), m.disc_at({ sides[0], 0.9 }) });
    for (int k = 0; k < 20; ++k) {
        const double v = other_unique({ m.disc_at({ sides[0], U(rng) }), m.disc_at({ sides[0], U(rng) }) });
        CHECK(std::abs(v - ref) <= 1e-9);
    }
}

TEST_CASE("replacing one disc: exposure difference equals the union difference")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Disc> d;
        const int n = 2 + trial % 10;
        for (int i = 0; i < n; ++i)
            d.push_back({ { U(rng) * 3, U(rng) * 3 }, 0.3 + U(rng) });
        const ArcExposure ex(d);
        const size_t k = size_t(trial) % d.size();
        const Disc a { { d[k].center.x + 0.3 * (U(rng) - 0.5), d[k].center.y + 0.3 * (U(rng) - 0.5) }, d[k].radius * (0.8 + 0.4 * U(rng)) };
        const Disc b { { d[k].center.x + 0.3 * (U(rng) - 0.5), d[k].center.y }, d[k].radius * (0.8 + 0.4 * U(rng)) };
        std::vector<Disc> da = d, db = d;
        da[k] = a;
        db[k] = b;
        CHECK(std::abs(ex.replace_difference(k, a, b) - (union_area(da) - union_area(db))) <= 1e-11);
    }
}
