#include "filling/compare.hpp"
#include "filling/continuum.hpp"
#include "filling/genetic_fill.hpp"
#include "filling/heuristic_fill.hpp"
#include "filling/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace filling;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string polygon;
    std::string corpus;
    std::string solution;
    int         n { 1 };
    int         n_max { 10 };
    std::string method { "ha" };
    uint64_t    seed { 1 };
    int         seeds { 10 };
    int         pop_mult { 100 };
    int         neighborhood { 2 };
    bool        enumerate_all { false };
    bool        pin_junctions { false };
    std::string json_out;
    std::string svg_out;
    std::string csv_out;
    long        k { 4 };
    long        j { 1 };
};

HAConfig ha_config(const Options &o)
{
    HAConfig c;
    c.neighborhood = o.neighborhood;
    c.enumerate_all = o.enumerate_all;
    c.pin_junctions = o.pin_junctions;
    return c;
}

GAConfig ga_config(const Options &o)
{
    GAConfig c;
    c.seed = o.seed;
    c.seeds = o.seeds;
    c.population_multiplier = o.pop_mult;
    return c;
}

void emit_json(const std::string &path, const json &j)
{
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_text(path, j.dump(2) + "\n");
}

void warn_unconverged(const FillingSolution &s)
{
    if (!s.converged)
        std::printf("warning,%s,N=%zu,optimizer did not converge\n", s.method.c_str(), s.discs.size());
}

int cmd_ma(const Options &o)
{
    const MedialAxis m = compute_medial_axis(read_polygon(o.polygon));
    emit_json(o.json_out, axis_to_json(m));
    if (!o.svg_out.empty())
        write_text(o.svg_out, render_svg(m.polygon(), &m, {}));
    return 0;
}

FillingSolution run_ha(const MedialAxis &m, const Options &o)
{
    HeuristicFill ha(m, ha_config(o));
    FillingSolution s;
    if (o.enumerate_all) {
        s = ha.step({}, o.n).solution;
    } else {
        const auto trace = ha.run(o.n);
        s = trace.back().solution;
    }
    std::printf("ways searched: %d\n", ha.searches());
    return s;
}

int cmd_fill(const Options &o)
{
    const Polygon p = read_polygon(o.polygon);
    const MedialAxis m = compute_medial_axis(p);
    std::vector<FillingSolution> out;
    if (o.method == "ha" || o.method == "both")
        out.push_back(run_ha(m, o));
    if (o.method == "ga" || o.method == "both")
        out.push_back(GeneticFill(m, ga_config(o)).run(o.n));
    for (const FillingSolution &s : out) {
        validate_solution(s, p, 1e-10);
        warn_unconverged(s);
        std::printf("%s phi = %.9f way = %s\n", s.method.c_str(), s.phi, way_string(s.way).c_str());
    }
    if (!o.json_out.empty()) {
        if (out.size() == 1) {
            emit_json(o.json_out, solution_to_json(out[0], p));
        } else {
            json arr = json::array();
            for (const FillingSolution &s : out)
                arr.push_back(solution_to_json(s, p));
            emit_json(o.json_out, arr);
        }
    }
    if (!o.svg_out.empty())
        write_text(o.svg_out, render_svg(p, &m, out.front().discs));
    return 0;
}

int cmd_sweep(const Options &o)
{
    const Polygon p = read_polygon(o.polygon);
    const MedialAxis m = compute_medial_axis(p);
    HeuristicFill ha(m, ha_config(o));
    std::ofstream csv;
    if (!o.csv_out.empty()) {
        csv.open(o.csv_out);
        if (!csv)
            throw ValidationError("cannot write " + o.csv_out);
    }
    const std::string header = "N,phi,way,searches,seconds\n";
    std::cout << header;
    if (csv)
        csv << header;
    if (!o.json_out.empty())
        fs::create_directories(o.json_out);
    auto t0 = std::chrono::steady_clock::now();
    ha.run(o.n_max, [&](const HAStep &st) {
        validate_solution(st.solution, p, 1e-10);
        warn_unconverged(st.solution);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%.12f,%s,%d,%.3f\n", st.n, st.solution.phi,
                      way_string(st.solution.way).c_str(), st.searches, secs);
        std::cout << buf << std::flush;
        if (csv)
            csv << buf << std::flush;
        if (!o.json_out.empty())
            write_text(o.json_out + "/solution_" + std::to_string(st.n) + ".json",
                       solution_to_json(st.solution, p).dump(2) + "\n");
    });
    std::printf("ways searched: %d\n", ha.searches());
    return 0;
}

int cmd_compare(const Options &o)
{
    std::vector<fs::path> files;
    if (fs::is_directory(o.corpus))
        for (const auto &e : fs::directory_iterator(o.corpus))
            if (e.path().extension() == ".json")
                files.push_back(e.path());
    if (files.empty())
        throw ValidationError("no polygon files in " + o.corpus);
    std::sort(files.begin(), files.end());
    std::vector<CompareRow> rows;
    for (const fs::path &f : files) {
        const MedialAxis m = compute_medial_axis(read_polygon(f.string()));
        auto part = compare_polygon(f.stem().string(), m, o.n_max, ha_config(o), ga_config(o), [](const CompareRow &r) {
            std::fprintf(stderr, "%s N=%d ha %.10f ga %.10f %s\n", r.polygon.c_str(), r.n, r.phi_ha, r.phi_ga,
                         r.way_match ? "match" : "differ");
        });
        rows.insert(rows.end(), part.begin(), part.end());
    }
    if (!o.csv_out.empty())
        write_text(o.csv_out, rows_csv(rows));
    std::cout << summary_markdown(rows);
    return 0;
}

int cmd_continuum(const Options &o)
{
    const MedialAxis m = compute_medial_axis(read_polygon(o.polygon));
    emit_json(o.json_out, plan_to_json(allocate(m, o.n)));
    return 0;
}

int cmd_ways(const Options &o)
{
    std::cout << count_ways(o.n, o.k, o.j) << "\n";
    return 0;
}

int cmd_check(const Options &o)
{
    std::ifstream in(o.solution);
    if (!in)
        throw ValidationError("cannot read " + o.solution);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ValidationError(o.solution + ": " + e.what());
    }
    const Polygon p = polygon_from_json(j.at("polygon"));
    const FillingSolution s = solution_from_json(j);
    validate_solution(s, p, 1e-10);
    std::printf("ok phi = %.9f\n", s.phi);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app { "Optimal filling of simple polygons with maximal discs" };
    app.require_subcommand(1);
    Options o;

    auto *ma = app.add_subcommand("ma", "medial axis as JSON");
    ma->add_option("polygon", o.polygon)->required();
    ma->add_option("--json", o.json_out);
    ma->add_option("--svg", o.svg_out);

    auto *fill = app.add_subcommand("fill", "fill a polygon with N discs");
    fill->add_option("polygon", o.polygon)->required();
    fill->add_option("-n", o.n)->required()->check(CLI::PositiveNumber);
    fill->add_option("--method", o.method)->check(CLI::IsMember({ "ha", "ga", "both" }));
    auto add_common = [&](CLI::App *c) {
        c->add_option("--seed", o.seed);
        c->add_option("--seeds", o.seeds)->check(CLI::PositiveNumber);
        c->add_option("--pop-mult", o.pop_mult)->check(CLI::PositiveNumber);
        c->add_option("--neighborhood", o.neighborhood)->check(CLI::NonNegativeNumber);
        c->add_flag("--enumerate-all", o.enumerate_all);
        c->add_flag("--pin-junctions", o.pin_junctions);
    };
    add_common(fill);
    fill->add_option("--json", o.json_out);
    fill->add_option("--svg", o.svg_out);

    auto *sweep = app.add_subcommand("sweep", "HA for N = 1..n-max");
    sweep->add_option("polygon", o.polygon)->required();
    sweep->add_option("--n-max", o.n_max)->check(CLI::PositiveNumber);
    add_common(sweep);
    sweep->add_option("--csv", o.csv_out);
    sweep->add_option("--json", o.json_out, "directory for per-N solution files");

    auto *cmp = app.add_subcommand("compare", "HA against GA over a corpus directory");
    cmp->add_option("corpus", o.corpus)->required();
    cmp->add_option("--n-max", o.n_max)->check(CLI::PositiveNumber);
    add_common(cmp);
    cmp->add_option("--csv", o.csv_out);

    auto *cont = app.add_subcommand("continuum", "large-N allocation");
    cont->add_option("polygon", o.polygon)->required();
    cont->add_option("-n", o.n)->required()->check(CLI::PositiveNumber);
    cont->add_option("--json", o.json_out);

    auto *ways = app.add_subcommand("ways", "number of ways");
    ways->add_option("-n", o.n)->required()->check(CLI::NonNegativeNumber);
    ways->add_option("--k", o.k)->required();
    ways->add_option("--j", o.j)->required();

    auto *check = app.add_subcommand("check", "re-validate a solution file");
    check->add_option("solution", o.solution)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*ma)
            return cmd_ma(o);
        if (*fill)
            return cmd_fill(o);
        if (*sweep)
            return cmd_sweep(o);
        if (*cmp)
            return cmd_compare(o);
        if (*cont)
            return cmd_continuum(o);
        if (*ways)
            return cmd_ways(o);
        if (*check)
            return cmd_check(o);
    } catch (const ValidationError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DomainError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 2;
}
