#include "filling/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace filling {

Polygon polygon_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw ValidationError("polygon JSON needs a \"vertices\" array");
    std::vector<Point> v;
    for (const json &p : j["vertices"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ValidationError("each vertex must be [x, y]");
        v.push_back({ p[0].get<double>(), p[1].get<double>() });
    }
    return Polygon(v);
}

json polygon_to_json(const Polygon &p)
{
    json v = json::array();
    for (const Point &q : p.vertices())
        v.push_back({ q.x, q.y });
    return { { "vertices", v } };
}

Polygon read_polygon(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ValidationError(path + ": " + e.what());
    }
    return polygon_from_json(j.contains("polygon") ? j["polygon"] : j);
}

json solution_to_json(const FillingSolution &s, const Polygon &p)
{
    json discs = json::array();
    for (size_t i = 0; i < s.discs.size(); ++i) {
        json d = { { "x", s.discs[i].center.x }, { "y", s.discs[i].center.y }, { "r", s.discs[i].radius } };
        if (i < s.placements.size()) {
            d["piece"] = s.placements[i].piece;
            d["u"] = s.placements[i].u;
        }
        discs.push_back(d);
    }
    json out = { { "polygon", polygon_to_json(p) }, { "n", s.discs.size() }, { "discs", discs }, { "phi", s.phi },
                 { "way", s.way }, { "method", s.method } };
    if (!s.converged)
        out["converged"] = false;
    if (!s.diagnostics.empty())
        out["diagnostics"] = s.diagnostics;
    return out;
}

FillingSolution solution_from_json(const json &j)
{
    FillingSolution s;
    for (const json &d : j.at("discs")) {
        s.discs.push_back({ { d.at("x").get<double>(), d.at("y").get<double>() }, d.at("r").get<double>() });
        if (d.contains("piece"))
            s.placements.push_back({ d["piece"].get<int>(), d.value("u", 0.0) });
    }
    s.phi = j.at("phi").get<double>();
    s.way = j.value("way", Way {});
    s.method = j.value("method", std::string());
    s.converged = j.value("converged", true);
    return s;
}

json axis_to_json(const MedialAxis &m)
{
    json branches = json::array();
    for (const Branch &b : m.branches()) {
        json parents = json::array();
        for (const BoundaryFeature &f : b.parents)
            parents.push_back({ { "kind", f.kind == BoundaryFeature::Kind::Edge ? "edge" : "vertex" }, { "index", f.index } });
        json params = { { "t_a", b.t_a }, { "t_b", b.t_b } };
        switch (b.kind) {
        case BranchCase::EdgeEdge:
            params["c"] = b.c;
            params["r0"] = b.r0;
            break;
        case BranchCase::EdgePoint:
            params["r0"] = b.r0;
            break;
        case BranchCase::PointPoint:
            params["a"] = b.a;
            break;
        }
        const Point pa = b.position(b.t_a), pb = b.position(b.t_b);
        branches.push_back({ { "case", to_string(b.kind) },
                             { "parents", parents },
                             { "radius", params },
                             { "origin", { b.origin.x, b.origin.y } },
                             { "ex", { b.ex.x, b.ex.y } },
                             { "ey", { b.ey.x, b.ey.y } },
                             { "from", { pa.x, pa.y } },
                             { "to", { pb.x, pb.y } },
                             { "nodes", { b.node_a, b.node_b } } });
    }
    json junctions = json::array();
    for (const JunctionPoint &jp : m.junctions())
        junctions.push_back({ { "x", jp.position.x }, { "y", jp.position.y }, { "r", jp.radius }, { "degree", jp.degree } });
    json pieces = json::array();
    for (const Piece &pc : m.pieces()) {
        json segs = json::array();
        for (const PieceSegment &s : pc.segments)
            segs.push_back({ { "branch", s.branch }, { "t_from", s.t_from }, { "t_to", s.t_to } });
        pieces.push_back({ { "kind", pc.is_junction() ? "junction" : "section" },
                           { "length", pc.length },
                           { "segments", segs },
                           { "junction", pc.junction } });
    }
    return { { "polygon", polygon_to_json(m.polygon()) }, { "branches", branches }, { "junctions", junctions },
             { "pieces", pieces }, { "diagnostics", m.diagnostics() } };
}

json plan_to_json(const AllocationPlan &plan)
{
    json branches = json::array();
    for (const ContinuumPiece &c : plan.pieces)
        branches.push_back({ { "piece", c.piece },
                             { "case", c.kind },
                             { "excluded", c.excluded },
                             { "C_i", c.constant },
                             { "f_i", c.fraction },
                             { "N_i", c.count },
                             { "uncovered", c.uncovered } });
    return { { "n", plan.n }, { "branches", branches }, { "predicted_uncovered", plan.predicted_uncovered },
             { "predicted_phi", plan.predicted_phi }, { "diagnostics", plan.diagnostics } };
}

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::string render_svg(const Polygon &p, const MedialAxis *axis, const std::vector<Disc> &discs)
{
    const BoundingBox &bb = p.bbox();
    const double pad = 0.05 * p.bbox_diag();
    const double scale = 600 / std::max(bb.width(), bb.height());
    auto X = [&](double x) { return num((x - bb.min.x + pad) * scale); };
    auto Y = [&](double y) { return num((bb.max.y - y + pad) * scale); };
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num((bb.width() + 2 * pad) * scale)
      << "\" height=\"" << num((bb.height() + 2 * pad) * scale) << "\">\n";
    o << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < p.size(); ++i)
        o << (i ? " " : "") << X(p.vertex(i).x) << "," << Y(p.vertex(i).y);
    o << "\"/>\n";
    for (const Disc &d : discs)
        o << "<circle cx=\"" << X(d.center.x) << "\" cy=\"" << Y(d.center.y) << "\" r=\"" << num(d.radius * scale)
          << "\" fill=\"steelblue\" fill-opacity=\"0.4\" stroke=\"steelblue\" stroke-width=\"0.5\"/>\n";
    if (axis) {
        for (const Branch &b : axis->branches()) {
            const int steps = b.is_straight() ? 1 : 32;
            o << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4,3\" points=\"";
            for (int i = 0; i <= steps; ++i) {
                const Point q = b.position(b.t_a + (b.t_b - b.t_a) * i / steps);
                o << (i ? " " : "") << X(q.x) << "," << Y(q.y);
            }
            o << "\"/>\n";
        }
        for (const JunctionPoint &j : axis->junctions())
            o << "<circle cx=\"" << X(j.position.x) << "\" cy=\"" << Y(j.position.y) << "\" r=\"3\" fill=\"black\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string way_string(const Way &w)
{
    std::string s;
    for (size_t i = 0; i < w.size(); ++i)
        s += (i ? " " : "") + std::to_string(w[i]);
    return s;
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write " + path);
    out << text;
}

} // namespace filling
