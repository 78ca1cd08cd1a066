#ifndef filling_compare_hpp_
#define filling_compare_hpp_

#include "filling/genetic_fill.hpp"
#include "filling/heuristic_fill.hpp"

#include <functional>
#include <string>

namespace filling {

struct CompareRow {
    std::string polygon;
    bool        convex { false };
    int         n { 0 };
    double      phi_ha { 0 };
    double      phi_ga { 0 };
    Way         way_ha;
    Way         way_ga;
    bool        way_match { false };
    int         searches { 0 };
    double      seconds_ha { 0 };
    double      seconds_ga { 0 };
};

// Shares over a set of rows, in percent.
struct CompareSummary {
    int    instances { 0 };
    double way_match { 0 };
    double best_way_ha { 0 };  // ways differ and HA reaches the higher phi
    double best_way_ga { 0 };  // ways differ and GA reaches the higher phi
    double best_phi_ha { 0 };  // phi_HA >= phi_GA - tol
};

std::vector<CompareRow> compare_polygon(const std::string &name, const MedialAxis &m, int n_max, const HAConfig &ha,
                                        const GAConfig &ga,
                                        const std::function<void(const CompareRow &)> &progress = {});

CompareSummary summarize(const std::vector<CompareRow> &rows, double tol = 1e-4);

std::string rows_csv(const std::vector<CompareRow> &rows);

// Table with convex, concave and overall lines.
std::string summary_markdown(const std::vector<CompareRow> &rows, double tol = 1e-4);

} // namespace filling

#endif
