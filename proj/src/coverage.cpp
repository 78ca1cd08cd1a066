#include "filling/coverage.hpp"

#include <algorithm>
#include <numeric>

namespace filling {

namespace {

constexpr double two_pi = 2 * M_PI;

// Relationship between circle i and disc j as seen from circle i's boundary.
enum class Cover { None, All, Arc };

struct ArcCover {
    Cover  kind { Cover::None };
    double start { 0 };  // in [0, 2pi)
    double width { 0 };
};

bool identical(const Disc &a, const Disc &b, double eps)
{
    return dist(a.center, b.center) <= eps && std::abs(a.radius - b.radius) <= eps;
}

double scale_eps(const std::vector<Disc> &discs)
{
    double s = 0;
    for (const Disc &d : discs)
        s = std::max({ s, d.radius, std::abs(d.center.x), std::abs(d.center.y) });
    return 1e-12 * std::max(s, 1e-300);
}

// Portion of circle i covered by the interior of disc j. Identical discs:
// the lower index covers the higher one.
ArcCover cover_of(const std::vector<Disc> &discs, size_t i, size_t j, double eps)
{
    const Disc &a = discs[i];
    const Disc &b = discs[j];
    if (b.radius <= 0)
        return {};
    const double dx = b.center.x - a.center.x;
    const double dy = b.center.y - a.center.y;
    const double d2 = dx * dx + dy * dy;
    const double rsum = a.radius + b.radius;
    if (d2 >= rsum * rsum)
        return {};
    if (identical(a, b, eps))
        return { j < i ? Cover::All : Cover::None, 0, 0 };
    const double d = std::sqrt(d2);
    if (d + a.radius <= b.radius)
        return { Cover::All, 0, 0 };
    if (d + b.radius <= a.radius)
        return {};
    const double cosw = (a.radius * a.radius + d2 - b.radius * b.radius) / (2 * a.radius * d);
    if (cosw >= 1 || cosw <= -1)
        return cosw <= -1 ? ArcCover { Cover::All, 0, 0 } : ArcCover {};
    const double w = std::acos(cosw);
    const double mid = std::atan2(dy, dx);
    double start = std::fmod(mid - w, two_pi);
    if (start < 0)
        start += two_pi;
    return { Cover::Arc, start, 2 * w };
}

// Green's theorem integral (x dy - y dx) / 2 over the arc of circle d from
// angle t0 to t1, with coordinates relative to o.
double arc_integral(const Disc &d, const Point &o, double t0, double t1)
{
    const double cx = d.center.x - o.x;
    const double cy = d.center.y - o.y;
    const double r = d.radius;
    return 0.5 * (r * r * (t1 - t0) + r * (cx * (std::sin(t1) - std::sin(t0)) - cy * (std::cos(t1) - std::cos(t0))));
}

struct Event {
    double angle;
    int    delta;
    int    disc;
};

// Splits circle i into elementary arcs and calls f(t0, t1, depth, covering,
// sum) for each, where covering lists the discs whose interior contains the
// arc (only when need_set) and sum is the sum of their indices.
template <class F>
void for_each_arc(const std::vector<Disc> &discs, size_t i, double eps, bool need_set, F &&f)
{
    thread_local std::vector<Event> events;
    thread_local std::vector<int> always;
    events.clear();
    always.clear();
    long sum = 0;
    for (size_t j = 0; j < discs.size(); ++j) {
        if (j == i)
            continue;
        const ArcCover c = cover_of(discs, i, j, eps);
        if (c.kind == Cover::All) {
            always.push_back(int(j));
            sum += long(j);
        } else if (c.kind == Cover::Arc) {
            const double end = c.start + c.width;
            if (end <= two_pi) {
                events.push_back({ c.start, +1, int(j) });
                events.push_back({ end, -1, int(j) });
            } else {
                events.push_back({ c.start, +1, int(j) });
                events.push_back({ two_pi, -1, int(j) });
                events.push_back({ 0, +1, int(j) });
                events.push_back({ end - two_pi, -1, int(j) });
            }
        }
    }
    std::sort(events.begin(), events.end(), [](const Event &a, const Event &b) {
        if (a.angle != b.angle)
            return a.angle < b.angle;
        return a.delta < b.delta;
    });
    std::vector<int> active;
    int depth = int(always.size());
    double prev = 0;
    std::vector<int> covering;
    if (need_set)
        active.reserve(events.size());
    auto emit = [&](double t0, double t1) {
        if (t1 <= t0)
            return;
        if (need_set) {
            covering = always;
            covering.insert(covering.end(), active.begin(), active.end());
        }
        f(t0, t1, depth, covering, sum);
    };
    for (const Event &e : events) {
        emit(prev, e.angle);
        prev = std::max(prev, e.angle);
        depth += e.delta;
        sum += e.delta * long(e.disc);
        if (need_set) {
            if (e.delta > 0)
                active.push_back(e.disc);
            else
                active.erase(std::find(active.begin(), active.end(), e.disc));
        }
    }
    emit(prev, two_pi);
}

Point centroid(const std::vector<Disc> &discs)
{
    Point o { 0, 0 };
    if (discs.empty())
        return o;
    for (const Disc &d : discs)
        o += d.center;
    return o / double(discs.size());
}

} // namespace

double lens_area(const Disc &a, const Disc &b)
{
    const double d = dist(a.center, b.center);
    const double r1 = a.radius, r2 = b.radius;
    if (d >= r1 + r2)
        return 0;
    if (d <= std::abs(r1 - r2))
        return M_PI * std::pow(std::min(r1, r2), 2);
    const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0));
    return r1 * r1 * (a1 - 0.5 * std::sin(2 * a1)) + r2 * r2 * (a2 - 0.5 * std::sin(2 * a2));
}

double union_area(const std::vector<Disc> &discs)
{
    const double eps = scale_eps(discs);
    const Point o = centroid(discs);
    double area = 0;
    for (size_t i = 0; i < discs.size(); ++i) {
        if (discs[i].radius <= 0)
            continue;
        for_each_arc(discs, i, eps, false, [&](double t0, double t1, int depth, const std::vector<int> &, long) {
            if (depth == 0)
                area += arc_integral(discs[i], o, t0, t1);
        });
    }
    return area;
}

double region_area(const std::vector<Disc> &in, const std::vector<Disc> &out)
{
    if (in.empty())
        return 0;
    std::vector<Disc> all = in;
    all.insert(all.end(), out.begin(), out.end());
    const size_t n_in = in.size();
    const double eps = scale_eps(all);
    const Point o = centroid(all);
    double area = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        if (all[i].radius <= 0) {
            if (i < n_in)
                return 0;
            continue;
        }
        for_each_arc(all, i, eps, true, [&](double t0, double t1, int, const std::vector<int> &cov, long) {
            size_t in_count = 0;
            bool in_out = false;
            for (int j : cov) {
                if (size_t(j) < n_in) ++in_count;
                else in_out = true;
            }
            if (in_out)
                return;
            const size_t need = i < n_in ? n_in - 1 : n_in;
            if (in_count != need)
                return;
            const double g = arc_integral(all[i], o, t0, t1);
            area += i < n_in ? g : -g;
        });
    }
    return std::max(area, 0.0);
}

OverlapReport contributions(const std::vector<Disc> &discs)
{
    const size_t n = discs.size();
    const double eps = scale_eps(discs);
    const Point o = centroid(discs);
    // above[k][j] = area of D_k where the multiplicity is at least j + 1
    std::vector<std::vector<double>> above(n, std::vector<double>(n + 2, 0.0));
    for (size_t i = 0; i < n; ++i) {
        if (discs[i].radius <= 0)
            continue;
        for_each_arc(discs, i, eps, true, [&](double t0, double t1, int depth, const std::vector<int> &cov, long) {
            const double g = arc_integral(discs[i], o, t0, t1);
            for (int j = 0; j <= depth; ++j)
                above[i][size_t(j)] += g;
            for (int k : cov)
                above[size_t(k)][size_t(depth)] += g;
        });
    }
    OverlapReport rep;
    rep.unique.resize(n);
    rep.contribution.resize(n);
    for (size_t k = 0; k < n; ++k) {
        double c = 0;
        for (size_t j = 0; j + 1 < above[k].size(); ++j)
            c += (above[k][j] - above[k][j + 1]) / double(j + 1);
        rep.contribution[k] = c;
        rep.unique[k] = above[k][0] - above[k][1];
    }
    rep.lens.assign(n, std::vector<double>(n, 0.0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            rep.lens[a][b] = rep.lens[b][a] = lens_area(discs[a], discs[b]);
    return rep;
}

ArcExposure::ArcExposure(std::vector<Disc> discs)
    : m_discs(std::move(discs)), m_arcs(m_discs.size()), m_eps(scale_eps(m_discs))
{
    for (size_t i = 0; i < m_discs.size(); ++i) {
        if (m_discs[i].radius <= 0)
            continue;
        for_each_arc(m_discs, i, m_eps, false, [&](double t0, double t1, int depth, const std::vector<int> &, long sum) {
            if (depth > 1)
                return;
            const int owner = depth == 0 ? -1 : int(sum);
            auto &arcs = m_arcs[i];
            if (!arcs.empty() && arcs.back().owner == owner && arcs.back().t1 == t0)
                arcs.back().t1 = t1;
            else
                arcs.push_back({ t0, t1, owner });
        });
    }
}

double ArcExposure::replace_difference(size_t k, const Disc &a, const Disc &b) const
{
    const Point o = m_discs[k].center;
    thread_local std::vector<Disc> work;
    work = m_discs;
    double total = 0;
    // Uncovered boundary of the replacing disc.
    for (int side = 0; side < 2; ++side) {
        const Disc &d = side == 0 ? a : b;
        const double sign = side == 0 ? 1 : -1;
        if (d.radius <= 0)
            continue;
        work[k] = d;
        for_each_arc(work, k, m_eps, false, [&](double t0, double t1, int depth, const std::vector<int> &, long) {
            if (depth == 0)
                total += sign * arc_integral(d, o, t0, t1);
        });
    }
    // Boundary of the other circles exposed without disc k, lying inside the
    // replacing disc, is lost from the union.
    for (size_t i = 0; i < m_discs.size(); ++i) {
        if (i == k || m_arcs[i].empty())
            continue;
        for (int side = 0; side < 2; ++side) {
            const Disc &d = side == 0 ? a : b;
            const double sign = side == 0 ? -1 : 1;
            work[k] = d;
            const ArcCover c = cover_of(work, i, k, m_eps);
            if (c.kind == Cover::None)
                continue;
            double lo[2] = { 0, 0 }, hi[2] = { two_pi, 0 };
            int parts = 1;
            if (c.kind == Cover::Arc) {
                lo[0] = c.start;
                hi[0] = std::min(two_pi, c.start + c.width);
                if (c.start + c.width > two_pi) {
                    lo[1] = 0;
                    hi[1] = c.start + c.width - two_pi;
                    parts = 2;
                }
            }
            for (const Arc &arc : m_arcs[i]) {
                if (arc.owner != -1 && arc.owner != int(k))
                    continue;
                for (int p = 0; p < parts; ++p) {
                    const double t0 = std::max(arc.t0, lo[p]), t1 = std::min(arc.t1, hi[p]);
                    if (t1 > t0)
                        total += sign * arc_integral(m_discs[i], o, t0, t1);
                }
            }
        }
    }
    return total;
}

double phi(const std::vector<Disc> &discs, const Polygon &p)
{
    for (const Disc &d : discs)
        if (!disc_inside(p, d, p.tol()))
            throw ValidationError("disc leaves the polygon");
    return union_area(discs) / polygon_area(p);
}

Way way_of(const MedialAxis &m, const std::vector<Placement> &placements)
{
    Way w(m.piece_count(), 0);
    for (const Placement &pl : placements) {
        if (pl.piece < 0 || size_t(pl.piece) >= m.piece_count())
            throw DomainError("placement references no piece");
        ++w[size_t(pl.piece)];
    }
    return w;
}

std::vector<std::vector<int>> neighbors(const MedialAxis &m, const std::vector<Placement> &placements)
{
    const size_t n = placements.size();
    std::vector<std::vector<int>> on_piece(m.piece_count());
    for (size_t i = 0; i < n; ++i) {
        const int p = placements[i].piece;
        if (p < 0 || size_t(p) >= m.piece_count())
            throw DomainError("placement references no piece");
        on_piece[size_t(p)].push_back(int(i));
    }
    for (auto &v : on_piece)
        std::stable_sort(v.begin(), v.end(), [&](int a, int b) { return placements[size_t(a)].u < placements[size_t(b)].u; });

    std::vector<std::vector<int>> nb(n);
    auto link = [&](int a, int b) {
        if (a == b)
            return;
        nb[size_t(a)].push_back(b);
        nb[size_t(b)].push_back(a);
    };

    // First disc reached when walking from `node` away from piece `from`.
    auto walk = [&](int disc, int from, int node) {
        struct Step { int from; int node; };
        std::vector<Step> stack { { from, node } };
        std::vector<char> seen(m.piece_count(), 0);
        seen[size_t(from)] = 1;
        while (!stack.empty()) {
            const Step s = stack.back();
            stack.pop_back();
            const int jp = m.junction_piece_at(s.node);
            std::vector<PieceEnd> next;
            if (jp >= 0 && jp != s.from) {
                next.push_back({ jp, 0 });
            } else {
                for (const PieceEnd &e : m.node_pieces(s.node))
                    if (e.piece != s.from && e.piece != jp)
                        next.push_back(e);
            }
            for (const PieceEnd &e : next) {
                if (seen[size_t(e.piece)])
                    continue;
                seen[size_t(e.piece)] = 1;
                const auto &ds = on_piece[size_t(e.piece)];
                if (m.piece(e.piece).is_junction()) {
                    if (!ds.empty()) {
                        for (int d : ds)
                            link(disc, d);
                    } else {
                        stack.push_back({ e.piece, s.node });
                    }
                    continue;
                }
                if (!ds.empty()) {
                    link(disc, e.end == 0 ? ds.front() : ds.back());
                } else {
                    stack.push_back({ e.piece, m.piece_node(e.piece, 1 - e.end) });
                }
            }
        }
    };

    for (size_t p = 0; p < m.piece_count(); ++p) {
        const auto &ds = on_piece[p];
        if (ds.empty())
            continue;
        if (m.piece(int(p)).is_junction()) {
            for (size_t a = 0; a < ds.size(); ++a)
                for (size_t b = a + 1; b < ds.size(); ++b)
                    link(ds[a], ds[b]);
            walk(ds.front(), int(p), m.piece_node(int(p), 0));
            continue;
        }
        for (size_t a = 0; a + 1 < ds.size(); ++a)
            link(ds[a], ds[a + 1]);
        walk(ds.front(), int(p), m.piece_node(int(p), 0));
        walk(ds.back(), int(p), m.piece_node(int(p), 1));
    }
    // Discs sharing a junction see the same outside neighbors.
    for (size_t p = 0; p < m.piece_count(); ++p) {
        const auto &ds = on_piece[p];
        if (!m.piece(int(p)).is_junction() || ds.size() < 2)
            continue;
        for (size_t a = 1; a < ds.size(); ++a)
            for (int q : std::vector<int>(nb[size_t(ds[0])]))
                link(ds[a], q);
    }
    for (auto &v : nb) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return nb;
}

double unique_area(int k, const std::vector<Disc> &discs, const std::vector<int> &nbrs)
{
    std::vector<Disc> out;
    for (int j : nbrs)
        if (j != k)
            out.push_back(discs[size_t(j)]);
    return region_area({ discs[size_t(k)] }, out);
}

double unique_area(int k, const std::vector<Disc> &discs)
{
    std::vector<int> all(discs.size());
    std::iota(all.begin(), all.end(), 0);
    return unique_area(k, discs, all);
}

void validate_solution(const FillingSolution &s, const Polygon &p, double phi_tol)
{
    const double recomputed = phi(s.discs, p);
    if (std::abs(recomputed - s.phi) > phi_tol)
        throw ValidationError("stored phi " + std::to_string(s.phi) + " differs from recomputed " +
                              std::to_string(recomputed));
}

} // namespace filling
