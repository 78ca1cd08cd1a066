#ifndef filling_genetic_fill_hpp_
#define filling_genetic_fill_hpp_

#include "filling/coverage.hpp"

#include <cstdint>
#include <random>

namespace filling {

struct Genome {
    std::vector<Point> centers;
    std::vector<double> radii;
    double phi { 0 };
};

struct GAConfig {
    int      population_multiplier { 100 };
    double   best_fraction { 0.05 };
    double   mutation_fraction { 0.60 };
    double   crossover_fraction { 0.35 };
    int      stall_generations { 200 };
    double   stall_tol { 1e-10 };
    int      max_generations { 100000 };
    int      seeds { 10 };
    uint64_t seed { 1 };
    double   locate_tol { 1e-3 };  // junction capture, relative to bbox diagonal
};

// Corner region of a convex vertex: the kite between the vertex, the far end
// of its straight axis branch and the two tangent points of that end disc.
struct Corner {
    Point vertex;
    Vec   bisector;   // unit, into the polygon
    Point end;        // far end of the straight branch
    Vec   d1, d2;     // unit edge directions away from the vertex
};

class GeneticFill {
public:
    GeneticFill(const MedialAxis &m, GAConfig cfg);

    // Moves centers inside, snaps centers in a corner region onto the corner
    // bisector, sets radii to the boundary distance and scores the genome.
    void enforce_maximal(Genome &g, std::mt19937_64 &rng) const;

    // Next population from a scored population sorted best first.
    std::vector<Genome> next_generation(const std::vector<Genome> &pop, std::mt19937_64 &rng) const;

    // Selection weights 1/sqrt(rank) for ranks 1..size.
    static std::vector<double> rank_weights(size_t size);

    // Child with the first c discs of a and the rest of b, both sorted by x w + y.
    Genome crossover(const Genome &a, const Genome &b, size_t c) const;

    Genome random_genome(int n, std::mt19937_64 &rng) const;

    // One seeded run; the best genome found.
    Genome run_seed(int n, uint64_t seed) const;

    // Best over cfg.seeds seeds, converted to axis placements.
    FillingSolution run(int n) const;

    // Axis placements and maximal discs for a genome.
    FillingSolution to_solution(const Genome &g) const;

    const std::vector<Corner>& corners() const { return m_corners; }
    int generations() const { return m_generations; }

private:
    Point random_point(std::mt19937_64 &rng) const;
    Point move_inside(const Point &q, std::mt19937_64 &rng) const;
    Point snap_corner(const Point &q) const;
    void  mutate(Genome &g, std::mt19937_64 &rng) const;
    void  score(Genome &g) const;

    const MedialAxis   &m_axis;
    GAConfig            m_cfg;
    double              m_area;
    double              m_width;
    std::vector<Corner> m_corners;
    mutable int         m_generations { 0 };
};

} // namespace filling

#endif
