#ifndef filling_local_opt_hpp_
#define filling_local_opt_hpp_

#include "filling/coverage.hpp"

#include <optional>

namespace filling {

struct AscentConfig {
    double fd_step { 1e-6 };
    double grad_tol { 1e-8 };   // projected gradient, phi per unit u
    double phi_tol { 1e-10 };
    int    max_iters { 500 };
    double snap_tol { 1e-6 };
    bool   snap { true };
};

struct LocalResult {
    FillingSolution solution;     // discs of the way; phi of those discs alone
    double          objective { 0 };  // union area of the way's discs and the fixed discs
    Way             requested;
    bool            reclassified { false };
    int             iterations { 0 };
};

// Initial coordinates u = (i - 1/2) / n on every section piece of the way.
std::vector<Placement> spread_placements(const MedialAxis &m, const Way &way);

// Local maximum of the covered area for a way, holding `fixed` discs (for
// instance occupied junctions bounding the part) in place. Junction entries of
// the way place a disc at the junction. Discs that reach a piece end next to
// an unoccupied junction are moved onto it and the ascent restarts.
LocalResult local_maximum(const MedialAxis &m, const Way &way, const std::vector<Disc> &fixed,
                          const AscentConfig &cfg, const std::vector<Placement> *init = nullptr);

// One ascent per way; results that end on the same way are merged keeping the
// best objective.
std::vector<LocalResult> enumerate_local_maxima(const MedialAxis &m, const std::vector<Way> &ways,
                                                const AscentConfig &cfg);

// Every way of n discs over the pieces with junction entries in {0, 1}.
std::vector<Way> all_ways(const MedialAxis &m, int n);

} // namespace filling

#endif
