#include "filling/compare.hpp"

#include "filling/io.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace filling {

namespace {

bool is_convex(const Polygon &p)
{
    for (size_t i = 0; i < p.size(); ++i)
        if (p.is_reflex(i))
            return false;
    return true;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::vector<CompareRow> compare_polygon(const std::string &name, const MedialAxis &m, int n_max, const HAConfig &ha,
                                        const GAConfig &ga, const std::function<void(const CompareRow &)> &progress)
{
    std::vector<CompareRow> rows;
    HeuristicFill h(m, ha);
    GeneticFill g(m, ga);
    Way prev;
    for (int n = 1; n <= n_max; ++n) {
        CompareRow row;
        row.polygon = name;
        row.convex = is_convex(m.polygon());
        row.n = n;
        auto t0 = std::chrono::steady_clock::now();
        const HAStep st = h.step(prev, n);
        row.seconds_ha = seconds_since(t0);
        prev = st.solution.way;
        row.phi_ha = st.solution.phi;
        row.way_ha = st.solution.way;
        row.searches = st.searches;
        t0 = std::chrono::steady_clock::now();
        const FillingSolution gs = g.run(n);
        row.seconds_ga = seconds_since(t0);
        row.phi_ga = gs.phi;
        row.way_ga = gs.way;
        row.way_match = row.way_ha == row.way_ga;
        if (progress)
            progress(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

CompareSummary summarize(const std::vector<CompareRow> &rows, double tol)
{
    CompareSummary s;
    s.instances = int(rows.size());
    if (rows.empty())
        return s;
    int match = 0, ha = 0, ga = 0, phi = 0;
    for (const CompareRow &r : rows) {
        if (r.way_match)
            ++match;
        else if (r.phi_ha >= r.phi_ga)
            ++ha;
        else
            ++ga;
        if (r.phi_ha >= r.phi_ga - tol)
            ++phi;
    }
    const double k = 100.0 / double(rows.size());
    s.way_match = match * k;
    s.best_way_ha = ha * k;
    s.best_way_ga = ga * k;
    s.best_phi_ha = phi * k;
    return s;
}

std::string rows_csv(const std::vector<CompareRow> &rows)
{
    std::ostringstream o;
    o << "polygon,convex,N,phi_ha,phi_ga,way_ha,way_ga,way_match,searches,seconds_ha,seconds_ga\n";
    char buf[64];
    for (const CompareRow &r : rows) {
        o << r.polygon << "," << (r.convex ? 1 : 0) << "," << r.n << ",";
        std::snprintf(buf, sizeof buf, "%.12f,%.12f,", r.phi_ha, r.phi_ga);
        o << buf << way_string(r.way_ha) << "," << way_string(r.way_ga) << "," << (r.way_match ? 1 : 0) << ","
          << r.searches << ",";
        std::snprintf(buf, sizeof buf, "%.3f,%.3f\n", r.seconds_ha, r.seconds_ga);
        o << buf;
    }
    return o.str();
}

std::string summary_markdown(const std::vector<CompareRow> &rows, double tol)
{
    std::vector<CompareRow> convex, concave;
    for (const CompareRow &r : rows)
        (r.convex ? convex : concave).push_back(r);
    std::ostringstream o;
    o << "| | instances | way match | best way HA | best way GA | best phi HA |\n";
    o << "|---|---|---|---|---|---|\n";
    char buf[160];
    auto line = [&](const char *label, const std::vector<CompareRow> &set) {
        if (set.empty())
            return;
        const CompareSummary s = summarize(set, tol);
        std::snprintf(buf, sizeof buf, "| %s | %d | %.2f%% | %.2f%% | %.2f%% | %.2f%% |\n", label, s.instances, s.way_match,
                      s.best_way_ha, s.best_way_ga, s.best_phi_ha);
        o << buf;
    };
    line("convex", convex);
    line("concave", concave);
    line("all", rows);
    return o.str();
}

} // namespace filling
