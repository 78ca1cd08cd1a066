#ifndef filling_coverage_hpp_
#define filling_coverage_hpp_

#include "filling/medial_axis.hpp"

#include <string>
#include <vector>

namespace filling {

// Distribution of discs over the pieces of a medial axis.
using Way = std::vector<int>;

struct FillingSolution {
    std::vector<Disc>      discs;
    std::vector<Placement> placements;  // parallel to discs; may be empty
    double                 phi { 0 };
    Way                    way;
    std::string            method;
    bool                   converged { true };
    std::vector<std::string> diagnostics;
};

struct OverlapReport {
    std::vector<double> unique;        // area covered by disc k only
    std::vector<double> contribution;  // sum over j of area(D_k with multiplicity j) / j
    std::vector<std::vector<double>> lens;  // pairwise intersection areas
};

// Area of the intersection of two discs.
double lens_area(const Disc &a, const Disc &b);

// Exact area of the union, from the uncovered boundary arcs of every circle.
double union_area(const std::vector<Disc> &discs);

// Area of the set inside every disc of `in` and outside every disc of `out`.
double region_area(const std::vector<Disc> &in, const std::vector<Disc> &out);

OverlapReport contributions(const std::vector<Disc> &discs);

// Boundary arcs of a disc configuration that are uncovered, or covered by a
// single disc only. Answers how the union area changes when one disc is
// replaced, without recomputing the union.
class ArcExposure {
public:
    explicit ArcExposure(std::vector<Disc> discs);

    // union_area with disc k replaced by a, minus the same with b.
    double replace_difference(size_t k, const Disc &a, const Disc &b) const;

    const std::vector<Disc>& discs() const { return m_discs; }

private:
    struct Arc {
        double t0, t1;
        int    owner;  // -1: uncovered; otherwise the only covering disc
    };

    std::vector<Disc>             m_discs;
    std::vector<std::vector<Arc>> m_arcs;
    double                        m_eps;
};

// Covered fraction of the polygon. Throws ValidationError if a disc leaves
// the polygon by more than its tolerance.
double phi(const std::vector<Disc> &discs, const Polygon &p);

// Disc counts per piece.
Way way_of(const MedialAxis &m, const std::vector<Placement> &placements);

// Discs reachable from each other along the axis without passing another
// center. Throws DomainError for placements that reference no piece.
std::vector<std::vector<int>> neighbors(const MedialAxis &m, const std::vector<Placement> &placements);

// Area covered only by disc k, computed against the given neighbor list.
double unique_area(int k, const std::vector<Disc> &discs, const std::vector<int> &nbrs);
// Same, against every other disc.
double unique_area(int k, const std::vector<Disc> &discs);

// Recomputes radii from placements, phi and way; throws if the stored phi
// disagrees beyond tol.
void validate_solution(const FillingSolution &s, const Polygon &p, double phi_tol);

} // namespace filling

#endif
