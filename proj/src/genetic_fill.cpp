#include "filling/genetic_fill.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace filling {

GeneticFill::GeneticFill(const MedialAxis &m, GAConfig cfg)
    : m_axis(m), m_cfg(cfg), m_area(polygon_area(m.polygon()))
{
    const Polygon &p = m.polygon();
    m_width = std::max(p.bbox().width(), p.bbox().height());
    const double tol = 10 * p.tol();
    for (size_t ni = 0; ni < m.nodes().size(); ++ni) {
        const AxisNode &node = m.nodes()[ni];
        if (node.kind != AxisNode::Kind::End || node.branches.size() != 1)
            continue;
        const Branch &b = m.branches()[size_t(node.branches[0])];
        if (b.kind != BranchCase::EdgeEdge)
            continue;
        for (size_t i = 0; i < p.size(); ++i) {
            if (p.is_reflex(i) || dist(p.vertex(i), node.position) > tol)
                continue;
            const int other = b.node_a == int(ni) ? b.node_b : b.node_a;
            if (other < 0)
                break;
            Corner c;
            c.vertex = p.vertex(i);
            c.end = m.nodes()[size_t(other)].position;
            c.bisector = normalized(c.end - c.vertex);
            c.d1 = normalized(p.vertex(i + p.size() - 1) - c.vertex);
            c.d2 = p.edge_direction(i);
            m_corners.push_back(c);
            break;
        }
    }
}

Point GeneticFill::random_point(std::mt19937_64 &rng) const
{
    const BoundingBox &bb = m_axis.polygon().bbox();
    std::uniform_real_distribution<double> ux(bb.min.x, bb.max.x), uy(bb.min.y, bb.max.y);
    for (;;) {
        const Point q { ux(rng), uy(rng) };
        if (m_axis.polygon().contains(q))
            return q;
    }
}

Point GeneticFill::move_inside(const Point &q, std::mt19937_64 &rng) const
{
    const Polygon &p = m_axis.polygon();
    if (p.contains(q) && nearest_boundary(p, q).distance > p.tol())
        return q;
    // Reflect across the nearest boundary point, a small step inside.
    const BoundaryDistance nb = nearest_boundary(p, q);
    const double step = 1e-6 * p.bbox_diag();
    Vec v = nb.foot - q;
    if (norm(v) > 0) {
        const Point r = nb.foot + normalized(v) * step;
        if (p.contains(r) && nearest_boundary(p, r).distance > p.tol())
            return r;
        const Point s = q + v * 2.0;
        if (p.contains(s) && nearest_boundary(p, s).distance > p.tol())
            return s;
    }
    return random_point(rng);
}

Point GeneticFill::snap_corner(const Point &q) const
{
    for (const Corner &c : m_corners) {
        const Vec w = q - c.vertex;
        const double a = dot(w, c.d1), b = dot(w, c.d2);
        if (a > 0 && b > 0 && a < dot(c.end - c.vertex, c.d1) && b < dot(c.end - c.vertex, c.d2)) {
            const double len = dist(c.end, c.vertex);
            const double t = std::clamp(dot(w, c.bisector), 0.0, len);
            return c.vertex + c.bisector * t;
        }
    }
    return q;
}

void GeneticFill::score(Genome &g) const
{
    std::vector<Disc> d(g.centers.size());
    for (size_t i = 0; i < d.size(); ++i)
        d[i] = { g.centers[i], g.radii[i] };
    g.phi = union_area(d) / m_area;
}

void GeneticFill::enforce_maximal(Genome &g, std::mt19937_64 &rng) const
{
    const Polygon &p = m_axis.polygon();
    g.radii.resize(g.centers.size());
    for (size_t i = 0; i < g.centers.size(); ++i) {
        Point q = move_inside(g.centers[i], rng);
        q = snap_corner(q);
        g.centers[i] = q;
        g.radii[i] = nearest_boundary(p, q).distance;
    }
    score(g);
}

std::vector<double> GeneticFill::rank_weights(size_t size)
{
    std::vector<double> w(size);
    for (size_t r = 0; r < size; ++r)
        w[r] = 1 / std::sqrt(double(r + 1));
    return w;
}

Genome GeneticFill::crossover(const Genome &a, const Genome &b, size_t c) const
{
    auto sorted = [&](std::vector<Point> v) {
        std::stable_sort(v.begin(), v.end(), [&](const Point &x, const Point &y) {
            return x.x * m_width + x.y < y.x * m_width + y.y;
        });
        return v;
    };
    const std::vector<Point> sa = sorted(a.centers), sb = sorted(b.centers);
    Genome child;
    for (size_t i = 0; i < sa.size(); ++i)
        child.centers.push_back(i < c ? sa[i] : sb[i]);
    return child;
}

void GeneticFill::mutate(Genome &g, std::mt19937_64 &rng) const
{
    if (g.centers.empty())
        return;
    std::uniform_int_distribution<size_t> pick(0, g.centers.size() - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> unit(-1, 1);
    Point &q = g.centers[pick(rng)];
    int k = kind(rng);
    if (k == 3 && m_axis.junctions().empty())
        k = 0;
    switch (k) {
    case 0:
        q = random_point(rng);
        break;
    case 1:
    case 2: {
        const double reach = k == 1 ? m_width / 2 : m_width / 200;
        q = q + Vec { unit(rng) * reach, unit(rng) * reach };
        break;
    }
    default: {
        std::uniform_int_distribution<size_t> j(0, m_axis.junctions().size() - 1);
        q = m_axis.junctions()[j(rng)].position;
    }
    }
}

Genome GeneticFill::random_genome(int n, std::mt19937_64 &rng) const
{
    Genome g;
    for (int i = 0; i < n; ++i)
        g.centers.push_back(random_point(rng));
    enforce_maximal(g, rng);
    return g;
}

std::vector<Genome> GeneticFill::next_generation(const std::vector<Genome> &pop, std::mt19937_64 &rng) const
{
    const size_t size = pop.size();
    if (size == 0)
        return {};
    const std::vector<double> w = rank_weights(size);
    std::discrete_distribution<size_t> parent(w.begin(), w.end());
    size_t best = size_t(std::lround(m_cfg.best_fraction * double(size)));
    best = std::clamp<size_t>(best, 1, size);
    size_t mutated = std::min(size - best, size_t(std::lround(m_cfg.mutation_fraction * double(size))));
    if (m_cfg.crossover_fraction <= 0)
        mutated = size - best;
    std::vector<Genome> next(pop.begin(), pop.begin() + long(best));
    for (size_t i = 0; i < mutated; ++i) {
        Genome g = pop[parent(rng)];
        mutate(g, rng);
        enforce_maximal(g, rng);
        next.push_back(std::move(g));
    }
    const size_t n = pop[0].centers.size();
    std::uniform_int_distribution<size_t> cut(1, std::max<size_t>(n, 1));
    while (next.size() < size) {
        const Genome &a = pop[parent(rng)];
        const Genome &b = pop[parent(rng)];
        Genome g = crossover(a, b, cut(rng));
        enforce_maximal(g, rng);
        next.push_back(std::move(g));
    }
    std::stable_sort(next.begin(), next.end(), [](const Genome &a, const Genome &b) { return a.phi > b.phi; });
    return next;
}

Genome GeneticFill::run_seed(int n, uint64_t seed) const
{
    std::mt19937_64 rng(seed);
    const size_t size = size_t(std::max(1, m_cfg.population_multiplier * n));
    std::vector<Genome> pop;
    pop.reserve(size);
    for (size_t i = 0; i < size; ++i)
        pop.push_back(random_genome(n, rng));
    std::stable_sort(pop.begin(), pop.end(), [](const Genome &a, const Genome &b) { return a.phi > b.phi; });
    double best = pop[0].phi;
    int stall = 0;
    for (int gen = 0; gen < m_cfg.max_generations && stall < m_cfg.stall_generations; ++gen) {
        pop = next_generation(pop, rng);
        ++m_generations;
        if (pop[0].phi > best + m_cfg.stall_tol) {
            best = pop[0].phi;
            stall = 0;
        } else {
            ++stall;
        }
    }
    return pop[0];
}

FillingSolution GeneticFill::to_solution(const Genome &g) const
{
    const MedialAxis &m = m_axis;
    const double tol = m_cfg.locate_tol * m.polygon().bbox_diag();
    std::vector<Placement> placements;
    for (const Point &q : g.centers)
        placements.push_back(m.locate(q, tol));
    std::stable_sort(placements.begin(), placements.end(), [](const Placement &a, const Placement &b) {
        return a.piece != b.piece ? a.piece < b.piece : a.u < b.u;
    });
    FillingSolution s;
    s.placements = placements;
    for (const Placement &pl : placements)
        s.discs.push_back(m.disc_at(pl));
    s.way = way_of(m, placements);
    s.phi = union_area(s.discs) / m_area;
    s.method = "ga";
    s.converged = true;
    char buf[64];
    std::snprintf(buf, sizeof buf, "genome phi %.12f", g.phi);
    s.diagnostics.push_back(buf);
    return s;
}

FillingSolution GeneticFill::run(int n) const
{
    Genome best;
    bool have = false;
    for (int s = 0; s < std::max(1, m_cfg.seeds); ++s) {
        Genome g = run_seed(n, m_cfg.seed * 1000003ULL + uint64_t(s));
        if (!have || g.phi > best.phi) {
            best = std::move(g);
            have = true;
        }
    }
    return to_solution(best);
}

} // namespace filling
