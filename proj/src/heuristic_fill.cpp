#include "filling/heuristic_fill.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace filling {

std::vector<int> pieces_within(const MedialAxis &m, int piece, int hops)
{
    std::vector<int> depth(m.piece_count(), -1);
    std::queue<int> q;
    depth[size_t(piece)] = 0;
    q.push(piece);
    std::vector<int> out;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        out.push_back(v);
        if (depth[size_t(v)] == hops)
            continue;
        for (int w : m.piece_neighbors(v))
            if (depth[size_t(w)] < 0) {
                depth[size_t(w)] = depth[size_t(v)] + 1;
                q.push(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Way> neighborhood_ways(const Way &best_prev, const MedialAxis &m, int hops)
{
    const size_t k = m.piece_count();
    Way prev = best_prev.empty() ? Way(k, 0) : best_prev;
    std::set<Way> seen;
    std::vector<Way> out;
    auto add = [&](const Way &w) {
        if (seen.insert(w).second)
            out.push_back(w);
    };
    for (size_t p = 0; p < k; ++p) {
        if (m.piece(int(p)).is_junction() && prev[p] > 0)
            continue;
        Way w = prev;
        ++w[p];
        add(w);
    }
    for (size_t j = 0; j < k; ++j) {
        if (!m.piece(int(j)).is_junction() || prev[j] == 0)
            continue;
        std::vector<int> near = pieces_within(m, int(j), hops);
        near.erase(std::remove(near.begin(), near.end(), int(j)), near.end());
        for (size_t a = 0; a < near.size(); ++a)
            for (size_t b = a; b < near.size(); ++b) {
                Way w = prev;
                w[j] = 0;
                ++w[size_t(near[a])];
                ++w[size_t(near[b])];
                bool ok = true;
                for (int p : { near[a], near[b] })
                    if (m.piece(p).is_junction() && w[size_t(p)] > 1)
                        ok = false;
                if (ok)
                    add(w);
            }
    }
    return out;
}

HeuristicFill::HeuristicFill(const MedialAxis &m, HAConfig cfg)
    : m_axis(m), m_cfg(cfg), m_area(polygon_area(m.polygon()))
{
}

FillingSolution HeuristicFill::evaluate(const Way &way)
{
    const MedialAxis &m = m_axis;
    const size_t k = m.piece_count();
    std::vector<Placement> placements;
    std::vector<char> occupied(k, 0);
    for (size_t p = 0; p < k; ++p)
        if (m.piece(int(p)).is_junction() && way[p] > 0) {
            occupied[p] = 1;
            placements.push_back({ int(p), 0 });
        }

    std::vector<char> done(k, 0);
    bool converged = true;
    for (size_t start = 0; start < k; ++start) {
        if (done[start] || occupied[start])
            continue;
        std::vector<int> part;
        std::set<int> bounding;
        std::vector<int> stack { int(start) };
        done[start] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            part.push_back(v);
            for (int w : m.piece_neighbors(v)) {
                if (occupied[size_t(w)]) {
                    bounding.insert(w);
                } else if (!done[size_t(w)]) {
                    done[size_t(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(part.begin(), part.end());
        Way counts;
        int total = 0;
        for (int p : part) {
            counts.push_back(way[size_t(p)]);
            total += way[size_t(p)];
        }
        if (total == 0)
            continue;
        std::vector<int> key = part;
        key.push_back(-1);
        key.insert(key.end(), bounding.begin(), bounding.end());
        auto it = m_cache.find({ key, counts });
        if (it == m_cache.end()) {
            Way sub(k, 0);
            for (int p : part)
                sub[size_t(p)] = way[size_t(p)];
            for (int j : bounding)
                sub[size_t(j)] = 1;
            // Warm start: pieces whose count is unchanged keep their previous coordinates.
            std::vector<Placement> init;
            for (int j : bounding)
                init.push_back({ j, 0 });
            for (int p : part) {
                const int c = way[size_t(p)];
                if (c == 0)
                    continue;
                std::vector<Placement> prev;
                for (const Placement &pl : m_warm)
                    if (pl.piece == p)
                        prev.push_back(pl);
                if (m.piece(p).is_junction()) {
                    init.push_back({ p, 0 });
                    continue;
                }
                std::vector<double> u;
                for (const Placement &q : prev)
                    u.push_back(q.u);
                std::sort(u.begin(), u.end());
                if (int(u.size()) > c)
                    u.clear();
                // Extra discs go into the middle of the widest gaps.
                while (int(u.size()) < c) {
                    double best_gap = -1, at = 0.5;
                    double last = 0;
                    for (size_t i = 0; i <= u.size(); ++i) {
                        const double next = i < u.size() ? u[i] : 1.0;
                        if (next - last > best_gap) {
                            best_gap = next - last;
                            at = 0.5 * (last + next);
                        }
                        last = next;
                    }
                    u.insert(std::upper_bound(u.begin(), u.end(), at), at);
                }
                for (double x : u)
                    init.push_back({ p, x });
            }
            const LocalResult r = local_maximum(m, sub, {}, m_cfg.ascent, &init);
            ++m_searches;
            converged = converged && r.solution.converged;
            PartResult pr;
            for (const Placement &pl : r.solution.placements)
                if (!bounding.count(pl.piece))
                    pr.placements.push_back(pl);
            it = m_cache.emplace(std::make_pair(key, counts), std::move(pr)).first;
        }
        placements.insert(placements.end(), it->second.placements.begin(), it->second.placements.end());
    }

    std::stable_sort(placements.begin(), placements.end(), [](const Placement &a, const Placement &b) {
        return a.piece != b.piece ? a.piece < b.piece : a.u < b.u;
    });
    FillingSolution s;
    s.placements = placements;
    for (const Placement &pl : placements)
        s.discs.push_back(m.disc_at(pl));
    s.way = way_of(m, placements);
    s.phi = union_area(s.discs) / m_area;
    s.method = "ha";
    s.converged = converged;
    if (s.way != way)
        s.diagnostics.push_back("way reclassified during ascent");
    return s;
}

HAStep HeuristicFill::step(const Way &prev, int n)
{
    const MedialAxis &m = m_axis;
    const int before = m_searches;
    std::vector<Way> cands;
    const int junctions = int(m.junction_piece_count());
    if (m_cfg.enumerate_all) {
        cands = all_ways(m, n);
    } else if (m_cfg.pin_junctions && n >= junctions) {
        Way base(m.piece_count(), 0);
        for (size_t p = 0; p < m.piece_count(); ++p)
            if (m.piece(int(p)).is_junction())
                base[p] = 1;
        bool all_pinned = !prev.empty();
        for (size_t p = 0; p < m.piece_count() && all_pinned; ++p)
            if (m.piece(int(p)).is_junction() && prev[p] == 0)
                all_pinned = false;
        if (n == junctions || !all_pinned) {
            if (n == junctions)
                cands.push_back(base);
            else
                for (const Way &w : all_ways(m, n)) {
                    bool ok = true;
                    for (size_t p = 0; p < w.size(); ++p)
                        if (m.piece(int(p)).is_junction() && w[p] == 0)
                            ok = false;
                    if (ok)
                        cands.push_back(w);
                }
        } else {
            for (size_t p = 0; p < m.piece_count(); ++p)
                if (!m.piece(int(p)).is_junction()) {
                    Way w = prev;
                    ++w[p];
                    cands.push_back(w);
                }
        }
    } else {
        cands = neighborhood_ways(prev, m, m_cfg.neighborhood);
    }

    HAStep st;
    st.n = n;
    st.candidates = int(cands.size());
    bool have = false;
    for (const Way &w : cands) {
        FillingSolution s = m_cfg.enumerate_all ? FillingSolution {} : evaluate(w);
        if (m_cfg.enumerate_all) {
            const LocalResult r = local_maximum(m, w, {}, m_cfg.ascent);
            ++m_searches;
            s = r.solution;
            s.method = "ha";
        }
        if (!have || s.phi > st.solution.phi + 1e-12 ||
            (std::abs(s.phi - st.solution.phi) <= 1e-12 && s.way < st.solution.way)) {
            st.solution = std::move(s);
            have = true;
        }
    }
    st.searches = m_searches - before;
    return st;
}

std::vector<HAStep> HeuristicFill::run(int n_max, const std::function<void(const HAStep &)> &progress)
{
    std::vector<HAStep> out;
    Way prev;
    for (int n = 1; n <= n_max; ++n) {
        HAStep st = step(prev, n);
        prev = st.solution.way;
        m_warm = st.solution.placements;
        if (progress)
            progress(st);
        out.push_back(std::move(st));
    }
    return out;
}

int way_search_count(const std::vector<HAStep> &trace)
{
    int total = 0;
    for (const HAStep &s : trace)
        total += s.searches;
    return total;
}

} // namespace filling
