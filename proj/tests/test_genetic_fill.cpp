#include "filling/genetic_fill.hpp"
#include "filling/heuristic_fill.hpp"

#include "shapes.hpp"

#include <doctest.h>

using namespace filling;

namespace {

GAConfig quick(int seeds)
{
    GAConfig c;
    c.seeds = seeds;
    return c;
}

} // namespace

TEST_CASE("enforce_maximal grows and snaps")
{
    const MedialAxis m = compute_medial_axis(shapes::square2());
    GeneticFill ga(m, {});
    std::mt19937_64 rng(1);

    Genome g;
    g.centers = { { 0, 0 }, { 0.9, 0 }, { 0.9, 0.85 } };
    ga.enforce_maximal(g, rng);
    CHECK(g.centers[0].x == 0);
    CHECK(std::abs(g.radii[0] - 1) <= 1e-12);
    CHECK(g.centers[1].x == 0.9);
    CHECK(g.centers[1].y == 0);
    CHECK(std::abs(g.radii[1] - 0.1) <= 1e-12);
    CHECK(std::abs(g.centers[2].x - 0.875) <= 1e-12);
    CHECK(std::abs(g.centers[2].y - 0.875) <= 1e-12);
    CHECK(std::abs(g.radii[2] - 0.125) <= 1e-12);

    const double before = phi({ { { 0.9, 0.85 }, 0.1 } }, m.polygon());
    const double after = phi({ { g.centers[2], g.radii[2] } }, m.polygon());
    CHECK(after >= before);
}

TEST_CASE("centers outside the polygon are moved inside")
{
    const MedialAxis m = compute_medial_axis(shapes::l_hexagon());
    GeneticFill ga(m, {});
    std::mt19937_64 rng(3);
    Genome g;
    g.centers = { { 1.5, 1.5 }, { 3, -1 } };
    ga.enforce_maximal(g, rng);
    for (size_t i = 0; i < g.centers.size(); ++i) {
        CHECK(m.polygon().contains(g.centers[i]));
        CHECK(disc_inside(m.polygon(), { g.centers[i], g.radii[i] }, m.polygon().tol()));
    }
}

TEST_CASE("rank weights are 1 / sqrt(rank)")
{
    const auto w = GeneticFill::rank_weights(4);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(w[3] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("a population of one with all elites is unchanged")
{
    const MedialAxis m = compute_medial_axis(shapes::square2());
    GAConfig c;
    c.best_fraction = 1;
    c.mutation_fraction = 0;
    c.crossover_fraction = 0;
    GeneticFill ga(m, c);
    std::mt19937_64 rng(5);
    const std::vector<Genome> pop { ga.random_genome(3, rng) };
    const auto next = ga.next_generation(pop, rng);
    REQUIRE(next.size() == 1);
    CHECK(next[0].centers == pop[0].centers);
    CHECK(next[0].phi == pop[0].phi);
}

TEST_CASE("crossover takes the first C sorted discs from the first parent")
{
    const MedialAxis m = compute_medial_axis(shapes::square2());
    GeneticFill ga(m, {});
    Genome a, b;
    // Width 2: keys x * 2 + y.
    a.centers = { { 0.5, 0 }, { -0.5, 0 }, { 0, 0.2 } };
    b.centers = { { 0.6, 0.1 }, { -0.6, 0.1 }, { 0, -0.3 } };
    const Genome c = ga.crossover(a, b, 2);
    REQUIRE(c.centers.size() == 3);
    CHECK(c.centers[0] == Point { -0.5, 0 });
    CHECK(c.centers[1] == Point { 0, 0.2 });
    CHECK(c.centers[2] == Point { 0.6, 0.1 });
}

TEST_CASE("elitism keeps the best fitness")
{
    const MedialAxis m = compute_medial_axis(shapes::l_hexagon());
    GeneticFill ga(m, {});
    std::mt19937_64 rng(11);
    std::vector<Genome> pop;
    for (int i = 0; i < 200; ++i)
        pop.push_back(ga.random_genome(2, rng));
    std::sort(pop.begin(), pop.end(), [](const Genome &x, const Genome &y) { return x.phi > y.phi; });
    double best = pop[0].phi;
    for (int gen = 0; gen < 30; ++gen) {
        pop = ga.next_generation(pop, rng);
        CHECK(pop[0].phi >= best);
        best = pop[0].phi;
    }
}

TEST_CASE("GA closed forms at N=1")
{
    const MedialAxis sq = compute_medial_axis(shapes::square2());
    CHECK(std::abs(GeneticFill(sq, quick(2)).run(1).phi - M_PI / 4) <= 1e-4);
    const MedialAxis tri = compute_medial_axis(shapes::equilateral2());
    CHECK(std::abs(GeneticFill(tri, quick(2)).run(1).phi - M_PI / (3 * std::sqrt(3.0))) <= 1e-4);
}

TEST_CASE("GA and HA agree on the triangle at N=3")
{
    const MedialAxis m = compute_medial_axis(shapes::equilateral2());
    const FillingSolution g = GeneticFill(m, quick(2)).run(3);
    HeuristicFill ha(m, {});
    const auto trace = ha.run(3);
    CHECK(std::abs(g.phi - trace.back().solution.phi) <= 1e-4);
    validate_solution(g, m.polygon(), 1e-10);
}

TEST_CASE("GA is deterministic for a seed")
{
    const MedialAxis m = compute_medial_axis(shapes::right_triangle());
    const FillingSolution a = GeneticFill(m, quick(1)).run(2);
    const FillingSolution b = GeneticFill(m, quick(1)).run(2);
    CHECK(a.phi == b.phi);
    CHECK(a.way == b.way);
}
