#ifndef filling_heuristic_fill_hpp_
#define filling_heuristic_fill_hpp_

#include "filling/local_opt.hpp"

#include <functional>
#include <map>

namespace filling {

struct HAConfig {
    int          neighborhood { 2 };   // A: hops from a deoccupied junction
    bool         enumerate_all { false };
    bool         pin_junctions { false };
    AscentConfig ascent;
};

struct HAStep {
    int             n { 0 };
    FillingSolution solution;
    int             candidates { 0 };
    int             searches { 0 };   // local_maximum invocations for this N
};

// Pieces within `hops` steps of a piece in the piece graph, the piece itself
// included.
std::vector<int> pieces_within(const MedialAxis &m, int piece, int hops);

// Candidate ways for N discs grown from the best way for N - 1.
std::vector<Way> neighborhood_ways(const Way &best_prev, const MedialAxis &m, int hops);

class HeuristicFill {
public:
    HeuristicFill(const MedialAxis &m, HAConfig cfg);

    // Best solution over the candidates for n discs, given the best way for
    // n - 1 (empty for n = 1).
    HAStep step(const Way &prev, int n);

    // Solutions for N = 1..n_max.
    std::vector<HAStep> run(int n_max, const std::function<void(const HAStep &)> &progress = {});

    // Combined solution for a way, from per-part optimizations (cached).
    FillingSolution evaluate(const Way &way);

    int searches() const { return m_searches; }

private:
    struct PartResult {
        std::vector<Placement> placements;  // discs of the part only
    };

    const MedialAxis &m_axis;
    HAConfig          m_cfg;
    double            m_area;
    int               m_searches { 0 };
    std::map<std::pair<std::vector<int>, Way>, PartResult> m_cache;
    std::vector<Placement> m_warm;  // best placements of the previous N
};

// Total way searches of a completed run.
int way_search_count(const std::vector<HAStep> &trace);

} // namespace filling

#endif
