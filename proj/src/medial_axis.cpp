#include "filling/medial_axis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

namespace filling {

const char* to_string(BranchCase c)
{
    switch (c) {
    case BranchCase::EdgeEdge:   return "edge-edge";
    case BranchCase::EdgePoint:  return "edge-point";
    case BranchCase::PointPoint: return "point-point";
    }
    return "?";
}

// ---------------------------------------------------------------- Branch

Branch Branch::edge_edge(Point origin, Vec dir, double c, double r0, double t_a, double t_b)
{
    Branch b;
    b.kind = BranchCase::EdgeEdge;
    b.origin = origin;
    b.ex = dir;
    b.ey = perp(dir);
    b.c = c;
    b.r0 = r0;
    b.t_a = t_a;
    b.t_b = t_b;
    return b;
}

Branch Branch::edge_point(Point origin, Vec ex, Vec ey, double r0, double t_a, double t_b)
{
    Branch b;
    b.kind = BranchCase::EdgePoint;
    b.origin = origin;
    b.ex = ex;
    b.ey = ey;
    b.r0 = r0;
    b.t_a = t_a;
    b.t_b = t_b;
    return b;
}

Branch Branch::point_point(Point midpoint, Vec dir, double a, double t_a, double t_b)
{
    Branch b;
    b.kind = BranchCase::PointPoint;
    b.origin = midpoint;
    b.ex = dir;
    b.ey = perp(dir);
    b.a = a;
    b.t_a = t_a;
    b.t_b = t_b;
    return b;
}

Point Branch::position(double t) const
{
    if (kind == BranchCase::EdgePoint)
        return origin + ex * (2 * r0 * t) + ey * (r0 * t * t);
    return origin + ex * t;
}

double Branch::radius_unchecked(double t) const
{
    switch (kind) {
    case BranchCase::EdgeEdge:   return c * t + r0;
    case BranchCase::EdgePoint:  return r0 * (t * t + 1);
    case BranchCase::PointPoint: return std::sqrt(a * a + t * t);
    }
    return 0;
}

double Branch::radius_slope(double t) const
{
    switch (kind) {
    case BranchCase::EdgeEdge:   return c;
    case BranchCase::EdgePoint:  return 2 * r0 * t;
    case BranchCase::PointPoint: {
        const double r = std::sqrt(a * a + t * t);
        return r > 0 ? t / r : 0;
    }
    }
    return 0;
}

double Branch::speed(double t) const
{
    if (kind == BranchCase::EdgePoint)
        return 2 * r0 * std::sqrt(1 + t * t);
    return 1;
}

double Branch::arclength_to(double t) const
{
    if (kind == BranchCase::EdgePoint)
        return r0 * (t * std::sqrt(1 + t * t) + std::asinh(t));
    return t;
}

double Branch::param_at_arclength(double t0, double s) const
{
    if (kind != BranchCase::EdgePoint)
        return t0 + s;
    if (s == 0)
        return t0;
    const double target = arclength_to(t0) + s;
    // arclength_to is strictly increasing; bracket then Newton with bisection fallback.
    double lo = t0, hi = t0;
    double step = std::max(1e-3, std::abs(s) / speed(t0));
    if (s > 0) {
        hi = t0 + step;
        while (arclength_to(hi) < target) { lo = hi; step *= 2; hi = t0 + step; }
    } else {
        lo = t0 - step;
        while (arclength_to(lo) > target) { hi = lo; step *= 2; lo = t0 - step; }
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = arclength_to(t) - target;
        if (f > 0) hi = t; else lo = t;
        double next = t - f / speed(t);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) {
            t = next;
            break;
        }
        t = next;
    }
    return t;
}

std::optional<double> Branch::interior_minimum(double tol) const
{
    if (kind == BranchCase::EdgeEdge)
        return std::nullopt;
    if (t_a < 0 && t_b > 0 &&
        std::abs(arclength_to(0) - arclength_to(t_a)) > tol &&
        std::abs(arclength_to(t_b) - arclength_to(0)) > tol)
        return 0.0;
    return std::nullopt;
}

double radius_at(const Branch &b, double t)
{
    const double slack = 1e-12 * std::max({ 1.0, std::abs(b.t_a), std::abs(b.t_b) });
    if (t < b.t_a - slack || t > b.t_b + slack)
        throw DomainError("branch parameter outside [t_a, t_b]");
    return b.radius_unchecked(std::clamp(t, b.t_a, b.t_b));
}

// ---------------------------------------------------------------- construction

namespace {

struct Quad {
    double c0 { 0 }, c1 { 0 }, c2 { 0 };
    double operator()(double t) const { return c0 + t * (c1 + t * c2); }
};

Quad operator+(const Quad &a, const Quad &b) { return { a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2 }; }
Quad operator-(const Quad &a, const Quad &b) { return { a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2 }; }
Quad operator-(const Quad &a) { return { -a.c0, -a.c1, -a.c2 }; }
Quad constant(double v) { return { v, 0, 0 }; }

// Product of two polynomials whose result stays within degree 2.
Quad mul_low(const Quad &a, const Quad &b)
{
    return { a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0 };
}

using Intervals = std::vector<std::pair<double, double>>;

void real_roots(const Quad &q, std::vector<double> &out)
{
    if (q.c2 == 0) {
        if (q.c1 != 0)
            out.push_back(-q.c0 / q.c1);
        return;
    }
    const double disc = q.c1 * q.c1 - 4 * q.c2 * q.c0;
    if (disc < 0) {
        // Near-tangent: report the vertex so the sign test can split there.
        out.push_back(-q.c1 / (2 * q.c2));
        return;
    }
    const double sq = std::sqrt(disc);
    const double w = -0.5 * (q.c1 + (q.c1 >= 0 ? sq : -sq));
    out.push_back(w / q.c2);
    if (w != 0)
        out.push_back(q.c0 / w);
}

// Sub-intervals of [lo, hi] where q < 0.
Intervals where_negative(const Quad &q, double lo, double hi)
{
    std::vector<double> cuts { lo, hi };
    std::vector<double> roots;
    real_roots(q, roots);
    for (double r : roots)
        if (r > lo && r < hi)
            cuts.push_back(r);
    std::sort(cuts.begin(), cuts.end());
    Intervals out;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a))
            continue;
        if (q(0.5 * (a + b)) < 0) {
            if (!out.empty() && out.back().second >= a)
                out.back().second = b;
            else
                out.emplace_back(a, b);
        }
    }
    return out;
}

Intervals intersect(const Intervals &x, const Intervals &y)
{
    Intervals out;
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const double a = std::max(x[i].first, y[j].first);
        const double b = std::min(x[i].second, y[j].second);
        if (b > a)
            out.emplace_back(a, b);
        if (x[i].second < y[j].second) ++i; else ++j;
    }
    return out;
}

Intervals subtract(const Intervals &x, const Intervals &y)
{
    Intervals out;
    for (auto [a, b] : x) {
        double cur = a;
        for (auto [c, d] : y) {
            if (d <= cur || c >= b)
                continue;
            if (c > cur)
                out.emplace_back(cur, c);
            cur = std::max(cur, d);
            if (cur >= b)
                break;
        }
        if (cur < b)
            out.emplace_back(cur, b);
    }
    return out;
}

struct Site {
    bool  is_edge { true };
    int   index { -1 };   // edge index or vertex index
    Point p;              // edge start or vertex position
    Vec   dir;            // edge unit direction
    Vec   normal;         // edge inward normal
    double len { 0 };
};

// Bisector of two sites in polynomial form: position X(t) and, except for
// PointPoint, a polynomial radius R(t).
struct Bisector {
    BranchCase kind { BranchCase::EdgeEdge };
    Quad   xq, yq;
    Quad   rq;           // EdgeEdge, EdgePoint
    double a { 0 };      // PointPoint
    Point  focus;        // EdgePoint / PointPoint: a reflex parent
    Branch proto;        // geometry without the parameter range

    Point position(double t) const { return { xq(t), yq(t) }; }
    double radius(double t) const
    {
        if (kind == BranchCase::PointPoint)
            return std::sqrt(a * a + t * t);
        return rq(t);
    }
};

Quad project(const Bisector &b, const Vec &n, const Point &p)
{
    return { n.x * b.xq.c0 + n.y * b.yq.c0 - dot(n, p), n.x * b.xq.c1 + n.y * b.yq.c1,
             n.x * b.xq.c2 + n.y * b.yq.c2 };
}

double site_distance(const Site &s, const Point &q)
{
    if (s.is_edge)
        return point_segment_distance(q, s.p, s.p + s.dir * s.len);
    return dist(q, s.p);
}

// Parameter range where the third site k is strictly closer than the pair.
Intervals closer_region(const Bisector &b, const Site &k, double lo, double hi)
{
    if (k.is_edge) {
        const Quad L = project(b, k.normal, k.p);
        const Quad S = project(b, k.dir, k.p);
        Intervals slab = intersect(where_negative(-S, lo, hi), where_negative(S - constant(k.len), lo, hi));
        if (slab.empty())
            return slab;
        if (b.kind == BranchCase::PointPoint) {
            // L is linear on straight branches.
            const Quad F { L.c0 * L.c0 - b.a * b.a, 2 * L.c0 * L.c1, L.c1 * L.c1 - 1 };
            return intersect(slab, where_negative(F, lo, hi));
        }
        return intersect(slab, intersect(where_negative(L - b.rq, lo, hi), where_negative(-L - b.rq, lo, hi)));
    }
    if (b.kind == BranchCase::EdgeEdge) {
        const Quad dx = b.xq - constant(k.p.x);
        const Quad dy = b.yq - constant(k.p.y);
        const Quad F = mul_low(dx, dx) + mul_low(dy, dy) - mul_low(b.rq, b.rq);
        return where_negative(F, lo, hi);
    }
    // |X - Q|^2 - |X - P|^2 is linear in X.
    const Vec d = b.focus - k.p;
    const Quad F = Quad { 2 * (d.x * b.xq.c0 + d.y * b.yq.c0) + norm2(k.p) - norm2(b.focus),
                          2 * (d.x * b.xq.c1 + d.y * b.yq.c1), 2 * (d.x * b.xq.c2 + d.y * b.yq.c2) };
    return where_negative(F, lo, hi);
}

std::optional<Bisector> edge_edge_bisector(const Site &e1, const Site &e2)
{
    const Vec dn = e1.normal - e2.normal;
    if (norm(dn) < 1e-12)
        return std::nullopt;
    const double rhs = dot(e1.normal, e1.p) - dot(e2.normal, e2.p);
    Vec dir = normalized(perp(dn));
    double c = dot(e1.normal, dir);
    if (c < 0) {
        dir = dir * -1.0;
        c = -c;
    }
    const Point m1 = e1.p + e1.dir * (0.5 * e1.len);
    const Point m2 = e2.p + e2.dir * (0.5 * e2.len);
    const Point mid = (m1 + m2) * 0.5;
    const Point base = mid - dn * ((dot(dn, mid) - rhs) / norm2(dn));
    const double r0 = dot(e1.normal, base - e1.p);

    Bisector b;
    b.kind = BranchCase::EdgeEdge;
    b.xq = { base.x, dir.x, 0 };
    b.yq = { base.y, dir.y, 0 };
    b.rq = { r0, c, 0 };
    b.proto = Branch::edge_edge(base, dir, c, r0, 0, 0);
    return b;
}

std::optional<Bisector> edge_point_bisector(const Site &e, const Site &v, double tol)
{
    const double h = dot(e.normal, v.p - e.p);
    if (h <= tol)
        return std::nullopt;
    const double r0 = 0.5 * h;
    const Point origin = v.p - e.normal * r0;
    const Vec ex = e.dir, ey = e.normal;
    Bisector b;
    b.kind = BranchCase::EdgePoint;
    b.xq = { origin.x, 2 * r0 * ex.x, r0 * ey.x };
    b.yq = { origin.y, 2 * r0 * ex.y, r0 * ey.y };
    b.rq = { r0, 0, r0 };
    b.focus = v.p;
    b.proto = Branch::edge_point(origin, ex, ey, r0, 0, 0);
    return b;
}

Bisector point_point_bisector(const Site &v1, const Site &v2)
{
    const Point mid = (v1.p + v2.p) * 0.5;
    const Vec dir = normalized(perp(v2.p - v1.p));
    const double a = 0.5 * dist(v1.p, v2.p);
    Bisector b;
    b.kind = BranchCase::PointPoint;
    b.xq = { mid.x, dir.x, 0 };
    b.yq = { mid.y, dir.y, 0 };
    b.a = a;
    b.focus = v1.p;
    b.proto = Branch::point_point(mid, dir, a, 0, 0);
    return b;
}

BoundaryFeature feature_of(const Site &s)
{
    return { s.is_edge ? BoundaryFeature::Kind::Edge : BoundaryFeature::Kind::Vertex, s.index };
}

bool is_endpoint_of(const Polygon &p, const Site &edge, const Site &vertex)
{
    const size_t n = p.size();
    return size_t(vertex.index) == size_t(edge.index) || size_t(vertex.index) == (size_t(edge.index) + 1) % n;
}

} // namespace

MedialAxis compute_medial_axis(const Polygon &poly)
{
    const double diag = poly.bbox_diag();
    const double tol = poly.tol();
    if (polygon_area(poly) <= tol * diag)
        throw ValidationError("polygon area is below tolerance");

    std::vector<Site> sites;
    for (size_t i = 0; i < poly.size(); ++i) {
        Site s;
        s.is_edge = true;
        s.index = int(i);
        s.p = poly.edge_start(i);
        s.dir = poly.edge_direction(i);
        s.normal = poly.inward_normal(i);
        s.len = poly.edge_length(i);
        sites.push_back(s);
    }
    for (size_t i = 0; i < poly.size(); ++i) {
        if (!poly.is_reflex(i))
            continue;
        Site s;
        s.is_edge = false;
        s.index = int(i);
        s.p = poly.vertex(i);
        sites.push_back(s);
    }

    const Point center = (poly.bbox().min + poly.bbox().max) * 0.5;
    std::vector<Branch> branches;
    std::vector<std::string> diagnostics;

    for (size_t i = 0; i < sites.size(); ++i) {
        for (size_t j = i + 1; j < sites.size(); ++j) {
            const Site &s1 = sites[i];
            const Site &s2 = sites[j];
            std::optional<Bisector> bis;
            if (s1.is_edge && s2.is_edge) {
                bis = edge_edge_bisector(s1, s2);
            } else if (s1.is_edge != s2.is_edge) {
                const Site &e = s1.is_edge ? s1 : s2;
                const Site &v = s1.is_edge ? s2 : s1;
                if (is_endpoint_of(poly, e, v))
                    continue;
                bis = edge_point_bisector(e, v, tol);
            } else {
                bis = point_point_bisector(s1, s2);
            }
            if (!bis)
                continue;

            double lo, hi;
            if (bis->kind == BranchCase::EdgePoint) {
                const double r0 = bis->proto.r0;
                const double reach = dist(bis->proto.origin, center) + 2 * diag;
                hi = std::sqrt(reach / r0) + 1;
                lo = -hi;
            } else {
                const double reach = dist(bis->proto.origin, center) + 2 * diag;
                lo = -reach;
                hi = reach;
            }

            Intervals allowed { { lo, hi } };
            if (bis->kind == BranchCase::EdgeEdge) {
                for (const Site *e : { &s1, &s2 }) {
                    const Quad S = project(*bis, e->dir, e->p);
                    allowed = intersect(allowed, where_negative(-S, lo, hi));
                    allowed = intersect(allowed, where_negative(S - constant(e->len), lo, hi));
                }
                allowed = intersect(allowed, where_negative(-bis->rq, lo, hi));
            } else if (bis->kind == BranchCase::EdgePoint) {
                const Site &e = s1.is_edge ? s1 : s2;
                const Quad S = project(*bis, e.dir, e.p);
                allowed = intersect(allowed, where_negative(-S, lo, hi));
                allowed = intersect(allowed, where_negative(S - constant(e.len), lo, hi));
            }

            for (size_t k = 0; k < sites.size() && !allowed.empty(); ++k) {
                if (k == i || k == j)
                    continue;
                Intervals excluded = closer_region(*bis, sites[k], lo, hi);
                Intervals deep;
                for (auto [a, b] : excluded) {
                    const double t = 0.5 * (a + b);
                    if (bis->radius(t) - site_distance(sites[k], bis->position(t)) > tol)
                        deep.emplace_back(a, b);
                }
                allowed = subtract(allowed, deep);
            }

            for (auto [ta, tb] : allowed) {
                Branch br = bis->proto;
                br.t_a = ta;
                br.t_b = tb;
                if (br.length() <= tol)
                    continue;
                const double tm = 0.5 * (ta + tb);
                const Point pm = br.position(tm);
                if (!poly.contains(pm))
                    continue;
                const double rm = br.radius_unchecked(tm);
                const double dm = nearest_boundary(poly, pm).distance;
                if (std::abs(rm - dm) > 1e-6 * diag) {
                    std::ostringstream os;
                    os << "dropped inconsistent " << to_string(br.kind) << " candidate (radius " << rm
                       << ", boundary distance " << dm << ")";
                    diagnostics.push_back(os.str());
                    continue;
                }
                br.parents = { feature_of(s1), feature_of(s2) };
                if (br.length() < 1e-6 * diag) {
                    std::ostringstream os;
                    os << "short " << to_string(br.kind) << " branch of length " << br.length();
                    diagnostics.push_back(os.str());
                }
                branches.push_back(br);
            }
        }
    }

    // Cluster branch endpoints into nodes.
    const double merge_tol = 10 * tol;
    std::vector<AxisNode> nodes;
    std::vector<int> weights;
    auto node_for = [&](const Point &p) {
        for (size_t n = 0; n < nodes.size(); ++n)
            if (dist(nodes[n].position, p) <= merge_tol)
                return int(n);
        AxisNode node;
        node.position = p;
        nodes.push_back(node);
        return int(nodes.size() - 1);
    };
    for (size_t b = 0; b < branches.size(); ++b) {
        branches[b].node_a = node_for(branches[b].position(branches[b].t_a));
        branches[b].node_b = node_for(branches[b].position(branches[b].t_b));
    }
    // Drop degenerate loops created by merging.
    std::vector<Branch> kept;
    for (const Branch &b : branches)
        if (b.node_a != b.node_b)
            kept.push_back(b);
    branches.swap(kept);
    for (size_t b = 0; b < branches.size(); ++b) {
        nodes[size_t(branches[b].node_a)].branches.push_back(int(b));
        nodes[size_t(branches[b].node_b)].branches.push_back(int(b));
    }

    // Compact away nodes that lost all branches.
    std::vector<int> remap(nodes.size(), -1);
    std::vector<AxisNode> compact;
    for (size_t n = 0; n < nodes.size(); ++n) {
        if (nodes[n].branches.empty())
            continue;
        remap[n] = int(compact.size());
        compact.push_back(nodes[n]);
    }
    nodes.swap(compact);
    for (Branch &b : branches) {
        b.node_a = remap[size_t(b.node_a)];
        b.node_b = remap[size_t(b.node_b)];
    }

    for (AxisNode &n : nodes) {
        Point sum { 0, 0 };
        for (int b : n.branches) {
            const Branch &br = branches[size_t(b)];
            const bool at_a = &nodes[size_t(br.node_a)] == &n;
            sum += br.position(at_a ? br.t_a : br.t_b);
        }
        // A branch whose both ends sit on this node was dropped above.
        n.position = sum / double(n.branches.size());
        n.radius = poly.contains(n.position) ? nearest_boundary(poly, n.position).distance : 0.0;
        const size_t deg = n.branches.size();
        n.kind = deg == 1 ? AxisNode::Kind::End
               : deg == 2 ? AxisNode::Kind::Transition
                          : AxisNode::Kind::Junction;
        if (deg == 1 && n.radius > 1e-6 * diag) {
            std::ostringstream os;
            os << "end point with positive radius " << n.radius;
            diagnostics.push_back(os.str());
        }
    }

    // Split nodes at interior radius minima.
    for (size_t b = 0; b < branches.size(); ++b) {
        if (auto t = branches[b].interior_minimum(merge_tol)) {
            AxisNode split;
            split.kind = AxisNode::Kind::Split;
            split.position = branches[b].position(*t);
            split.radius = branches[b].radius_unchecked(*t);
            split.split_branch = int(b);
            split.split_param = *t;
            nodes.push_back(split);
        }
    }

    MedialAxis axis(poly, std::move(branches), std::move(nodes));
    for (std::string &d : diagnostics)
        axis.add_diagnostic(std::move(d));

    // Tree check on the branch graph.
    size_t graph_nodes = 0;
    for (const AxisNode &n : axis.nodes())
        if (n.kind != AxisNode::Kind::Split)
            ++graph_nodes;
    if (axis.branches().size() + 1 != graph_nodes)
        axis.add_diagnostic("medial axis graph is not a tree: " + std::to_string(axis.branches().size()) +
                            " branches, " + std::to_string(graph_nodes) + " nodes");
    return axis;
}

// ---------------------------------------------------------------- MedialAxis

MedialAxis::MedialAxis(Polygon polygon, std::vector<Branch> branches, std::vector<AxisNode> nodes)
    : m_polygon(std::move(polygon)), m_branches(std::move(branches)), m_nodes(std::move(nodes))
{
    for (size_t n = 0; n < m_nodes.size(); ++n) {
        const AxisNode &node = m_nodes[n];
        if (node.kind != AxisNode::Kind::Junction)
            continue;
        JunctionPoint j;
        j.position = node.position;
        j.radius = node.radius;
        j.degree = int(node.branches.size());
        j.branches = node.branches;
        j.node = int(n);
        m_junctions.push_back(j);
    }
    m_pieces = decompose_pieces(*this);
    build_piece_graph();
}

size_t MedialAxis::junction_piece_count() const
{
    return size_t(std::count_if(m_pieces.begin(), m_pieces.end(), [](const Piece &p) { return p.is_junction(); }));
}

int MedialAxis::piece_node(int piece, int end) const
{
    const Piece &p = m_pieces[size_t(piece)];
    if (p.is_junction())
        return p.node_start;
    return end == 0 ? p.node_start : p.node_end;
}

void MedialAxis::build_piece_graph()
{
    m_node_pieces.assign(m_nodes.size(), {});
    m_node_junction_piece.assign(m_nodes.size(), -1);
    m_piece_adjacency.assign(m_pieces.size(), {});
    for (size_t i = 0; i < m_pieces.size(); ++i) {
        const Piece &p = m_pieces[i];
        if (p.is_junction()) {
            m_node_pieces[size_t(p.node_start)].push_back({ int(i), 0 });
            m_node_junction_piece[size_t(p.node_start)] = int(i);
        } else {
            m_node_pieces[size_t(p.node_start)].push_back({ int(i), 0 });
            m_node_pieces[size_t(p.node_end)].push_back({ int(i), 1 });
        }
    }
    for (size_t n = 0; n < m_nodes.size(); ++n) {
        const auto &ends = m_node_pieces[n];
        const int jp = m_node_junction_piece[n];
        if (jp >= 0) {
            for (const PieceEnd &e : ends)
                if (e.piece != jp) {
                    m_piece_adjacency[size_t(jp)].push_back(e.piece);
                    m_piece_adjacency[size_t(e.piece)].push_back(jp);
                }
            continue;
        }
        for (size_t a = 0; a < ends.size(); ++a)
            for (size_t b = a + 1; b < ends.size(); ++b)
                if (ends[a].piece != ends[b].piece) {
                    m_piece_adjacency[size_t(ends[a].piece)].push_back(ends[b].piece);
                    m_piece_adjacency[size_t(ends[b].piece)].push_back(ends[a].piece);
                }
    }
    for (auto &adj : m_piece_adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
}

PiecePoint MedialAxis::point_at(int piece, double u) const
{
    if (piece < 0 || size_t(piece) >= m_pieces.size())
        throw DomainError("piece index out of range");
    const Piece &p = m_pieces[size_t(piece)];
    if (p.is_junction())
        throw DomainError("point_at on a junction piece: its point is fixed");
    if (!(u >= -1e-12 && u <= 1 + 1e-12))
        throw DomainError("piece coordinate outside [0, 1]");
    const double s = std::clamp(u, 0.0, 1.0) * p.length;
    const PieceSegment *seg = &p.segments.back();
    for (const PieceSegment &cand : p.segments)
        if (s <= cand.s_end) {
            seg = &cand;
            break;
        }
    const Branch &b = m_branches[size_t(seg->branch)];
    const double local = std::clamp(s - seg->s_begin, 0.0, seg->s_end - seg->s_begin);
    const double dir = seg->t_to >= seg->t_from ? 1.0 : -1.0;
    double t = b.param_at_arclength(seg->t_from, dir * local);
    t = std::clamp(t, std::min(seg->t_from, seg->t_to), std::max(seg->t_from, seg->t_to));
    return { b.position(t), b.radius_unchecked(t) };
}

PiecePoint MedialAxis::evaluate(const Placement &pl) const
{
    const Piece &p = m_pieces[size_t(pl.piece)];
    if (p.is_junction()) {
        const JunctionPoint &j = m_junctions[size_t(p.junction)];
        return { j.position, j.radius };
    }
    return point_at(pl.piece, std::clamp(pl.u, 0.0, 1.0));
}

Disc MedialAxis::disc_at(const Placement &pl) const
{
    const PiecePoint pp = evaluate(pl);
    return { pp.position, pp.radius };
}

Placement MedialAxis::locate(const Point &q, double junction_tol) const
{
    for (size_t i = 0; i < m_pieces.size(); ++i) {
        const Piece &p = m_pieces[i];
        if (p.is_junction() && dist(m_junctions[size_t(p.junction)].position, q) <= junction_tol)
            return { int(i), 0 };
    }
    Placement best;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < m_pieces.size(); ++i) {
        const Piece &p = m_pieces[i];
        if (p.is_junction()) {
            const double d = dist(m_junctions[size_t(p.junction)].position, q);
            if (d < best_d) {
                best_d = d;
                best = { int(i), 0 };
            }
            continue;
        }
        for (const PieceSegment &seg : p.segments) {
            const Branch &b = m_branches[size_t(seg.branch)];
            const double tmin = std::min(seg.t_from, seg.t_to);
            const double tmax = std::max(seg.t_from, seg.t_to);
            auto dist_at = [&](double t) { return dist(b.position(t), q); };
            double t_best;
            if (b.is_straight()) {
                t_best = std::clamp(dot(q - b.origin, b.ex), tmin, tmax);
            } else {
                const int samples = 64;
                t_best = tmin;
                double d_best = dist_at(tmin);
                for (int k = 1; k <= samples; ++k) {
                    const double t = tmin + (tmax - tmin) * k / samples;
                    const double d = dist_at(t);
                    if (d < d_best) {
                        d_best = d;
                        t_best = t;
                    }
                }
                double lo = std::max(tmin, t_best - (tmax - tmin) / samples);
                double hi = std::min(tmax, t_best + (tmax - tmin) / samples);
                const double gr = 0.5 * (std::sqrt(5.0) - 1);
                for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
                    const double m1 = hi - gr * (hi - lo);
                    const double m2 = lo + gr * (hi - lo);
                    if (dist_at(m1) < dist_at(m2)) hi = m2; else lo = m1;
                }
                t_best = 0.5 * (lo + hi);
            }
            const double d = dist_at(t_best);
            if (d < best_d) {
                best_d = d;
                const double s = seg.s_begin + std::abs(b.arclength_to(t_best) - b.arclength_to(seg.t_from));
                best = { int(i), p.length > 0 ? std::clamp(s / p.length, 0.0, 1.0) : 0.0 };
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------- pieces

namespace {

struct Segment {
    int    branch { -1 };
    double t_min { 0 };   // parameter at the minimum-radius end
    double t_max { 0 };
    int    node_min { -1 };
    int    node_max { -1 };
    bool   flat { false };
};

struct Chain {
    std::deque<std::pair<int, bool>> segs;  // (segment, traversed min -> max)
    int  start { -1 };
    int  end { -1 };
    bool flexible { false };
    bool alive { true };

    void reverse()
    {
        std::reverse(segs.begin(), segs.end());
        for (auto &s : segs)
            s.second = !s.second;
        std::swap(start, end);
    }
};

} // namespace

std::vector<Piece> decompose_pieces(const MedialAxis &m)
{
    const auto &branches = m.branches();
    const auto &nodes = m.nodes();
    const double flat_tol = 1e-12;

    std::vector<Segment> segs;
    for (size_t b = 0; b < branches.size(); ++b) {
        const Branch &br = branches[b];
        std::vector<std::pair<double, int>> cuts { { br.t_a, br.node_a } };
        for (size_t n = 0; n < nodes.size(); ++n)
            if (nodes[n].kind == AxisNode::Kind::Split && nodes[n].split_branch == int(b))
                cuts.emplace_back(nodes[n].split_param, int(n));
        cuts.emplace_back(br.t_b, br.node_b);
        std::sort(cuts.begin(), cuts.end());
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            Segment s;
            s.branch = int(b);
            const double ra = br.radius_unchecked(cuts[k].first);
            const double rb = br.radius_unchecked(cuts[k + 1].first);
            s.flat = br.kind == BranchCase::EdgeEdge && br.c <= flat_tol;
            const bool forward = s.flat || rb >= ra;
            s.t_min = forward ? cuts[k].first : cuts[k + 1].first;
            s.t_max = forward ? cuts[k + 1].first : cuts[k].first;
            s.node_min = forward ? cuts[k].second : cuts[k + 1].second;
            s.node_max = forward ? cuts[k + 1].second : cuts[k].second;
            segs.push_back(s);
        }
    }

    std::vector<Chain> chains(segs.size());
    std::vector<int> chain_of(segs.size());
    std::vector<std::vector<int>> node_segs(nodes.size());
    for (size_t i = 0; i < segs.size(); ++i) {
        chains[i].segs.push_back({ int(i), true });
        chains[i].start = segs[i].node_min;
        chains[i].end = segs[i].node_max;
        chains[i].flexible = segs[i].flat;
        chain_of[i] = int(i);
        node_segs[size_t(segs[i].node_min)].push_back(int(i));
        node_segs[size_t(segs[i].node_max)].push_back(int(i));
    }

    auto absorb = [&](int into, int from) {
        // Appends chain `from` after chain `into`; into.end == from.start.
        for (auto &s : chains[size_t(from)].segs) {
            chains[size_t(into)].segs.push_back(s);
            chain_of[size_t(s.first)] = into;
        }
        chains[size_t(into)].end = chains[size_t(from)].end;
        chains[size_t(into)].flexible = chains[size_t(into)].flexible && chains[size_t(from)].flexible;
        chains[size_t(from)].alive = false;
    };

    for (size_t n = 0; n < nodes.size(); ++n) {
        if (nodes[n].kind != AxisNode::Kind::Transition || node_segs[n].size() != 2)
            continue;
        const int c1 = chain_of[size_t(node_segs[n][0])];
        const int c2 = chain_of[size_t(node_segs[n][1])];
        if (c1 == c2)
            continue;
        Chain &a = chains[size_t(c1)];
        Chain &b = chains[size_t(c2)];
        const int node = int(n);
        // Orient flexible chains so that `a` ends at the node and `b` starts there.
        if (a.flexible && a.end != node) a.reverse();
        if (b.flexible && b.start != node) b.reverse();
        if (a.end == node && b.start == node) {
            absorb(c1, c2);
        } else if (b.end == node && a.start == node) {
            absorb(c2, c1);
        } else if (a.flexible && b.end == node) {
            a.reverse();
            absorb(c2, c1);
        } else if (b.flexible && a.start == node) {
            b.reverse();
            absorb(c2, c1);
        }
    }

    std::vector<Piece> pieces;
    for (const Chain &c : chains) {
        if (!c.alive)
            continue;
        Piece p;
        p.kind = Piece::Kind::BranchSection;
        p.node_start = c.start;
        p.node_end = c.end;
        double s = 0;
        for (auto [si, fwd] : c.segs) {
            const Segment &sg = segs[size_t(si)];
            const Branch &br = branches[size_t(sg.branch)];
            PieceSegment ps;
            ps.branch = sg.branch;
            ps.t_from = fwd ? sg.t_min : sg.t_max;
            ps.t_to = fwd ? sg.t_max : sg.t_min;
            ps.s_begin = s;
            s += std::abs(br.arclength_to(ps.t_to) - br.arclength_to(ps.t_from));
            ps.s_end = s;
            p.segments.push_back(ps);
        }
        p.length = s;
        pieces.push_back(p);
    }
    for (size_t j = 0; j < m.junctions().size(); ++j) {
        Piece p;
        p.kind = Piece::Kind::Junction;
        p.junction = int(j);
        p.node_start = p.node_end = m.junctions()[j].node;
        pieces.push_back(p);
    }
    return pieces;
}

} // namespace filling
