#include "filling/local_opt.hpp"

#include <algorithm>
#include <map>

namespace filling {

namespace {

struct Problem {
    const MedialAxis      &m;
    std::vector<int>       piece_of;   // variable -> piece
    std::vector<Disc>      context;    // junction discs of the way and fixed discs
    double                 scale;      // 1 / polygon area

    Disc disc(int k, double u) const { return m.disc_at({ piece_of[size_t(k)], u }); }

    std::vector<Disc> discs(const std::vector<double> &u) const
    {
        std::vector<Disc> d;
        d.reserve(u.size() + context.size());
        for (size_t k = 0; k < u.size(); ++k)
            d.push_back(disc(int(k), u[k]));
        d.insert(d.end(), context.begin(), context.end());
        return d;
    }

    double value(const std::vector<double> &u) const { return union_area(discs(u)) * scale; }

    // Central difference of the covered area in u_k.
    double partial(const ArcExposure &ex, const std::vector<double> &u, size_t k, double h) const
    {
        const double up = std::min(1.0, u[k] + h);
        const double lo = std::max(0.0, u[k] - h);
        if (up <= lo)
            return 0;
        return ex.replace_difference(k, disc(int(k), up), disc(int(k), lo)) / (up - lo) * scale;
    }

    std::vector<double> gradient(const std::vector<double> &u, double h) const
    {
        const ArcExposure ex(discs(u));
        std::vector<double> g(u.size(), 0.0);
        for (size_t k = 0; k < u.size(); ++k)
            g[k] = partial(ex, u, k, h);
        return g;
    }

    // Variables whose discs meet disc k (with some slack for perturbations).
    std::vector<std::vector<int>> interactions(const std::vector<double> &u) const
    {
        const std::vector<Disc> all = discs(u);
        const double slack = 1e-3 * m.polygon().bbox_diag();
        std::vector<std::vector<int>> out(u.size());
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = i + 1; j < u.size(); ++j)
                if (dist(all[i].center, all[j].center) < all[i].radius + all[j].radius + slack) {
                    out[i].push_back(int(j));
                    out[j].push_back(int(i));
                }
        return out;
    }

    // Finite-difference Hessian of a sparse problem: variables that share no
    // interacting disc are perturbed together.
    std::vector<double> hessian(const std::vector<double> &u, const std::vector<double> &g, double fd,
                                double step) const
    {
        const size_t n = u.size();
        const auto nb = interactions(u);
        std::vector<int> color(n, -1);
        int colors = 0;
        for (size_t j = 0; j < n; ++j) {
            std::vector<char> used(size_t(colors) + 1, 0);
            auto mark = [&](int v) {
                if (color[size_t(v)] >= 0)
                    used[size_t(color[size_t(v)])] = 1;
            };
            for (int a : nb[j]) {
                mark(a);
                for (int b : nb[size_t(a)])
                    mark(b);
            }
            int c = 0;
            while (used[size_t(c)])
                ++c;
            color[j] = c;
            colors = std::max(colors, c + 1);
        }
        std::vector<double> H(n * n, 0.0);
        for (int c = 0; c < colors; ++c) {
            std::vector<double> up = u;
            std::vector<double> delta(n, 0.0);
            for (size_t j = 0; j < n; ++j)
                if (color[j] == c) {
                    delta[j] = u[j] + step <= 1 ? step : -step;
                    up[j] = u[j] + delta[j];
                }
            const ArcExposure ex(discs(up));
            for (size_t j = 0; j < n; ++j) {
                if (color[j] != c)
                    continue;
                std::vector<int> rows = nb[j];
                rows.push_back(int(j));
                for (int i : rows)
                    H[size_t(i) * n + j] = (partial(ex, up, size_t(i), fd) - g[size_t(i)]) / delta[j];
            }
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                const double s = 0.5 * (H[i * n + j] + H[j * n + i]);
                H[i * n + j] = H[j * n + i] = s;
            }
        return H;
    }
};

void project(std::vector<double> &u, const std::vector<int> &piece_of)
{
    for (double &x : u)
        x = std::clamp(x, 0.0, 1.0);
    // Variables of one piece are contiguous; keep them sorted.
    size_t a = 0;
    while (a < u.size()) {
        size_t b = a;
        while (b < u.size() && piece_of[b] == piece_of[a])
            ++b;
        std::sort(u.begin() + long(a), u.begin() + long(b));
        a = b;
    }
}

// Solves (A + mu I) x = b for symmetric A, raising mu until the shifted
// matrix is positive definite.
std::vector<double> shifted_solve(std::vector<double> A, size_t n, const std::vector<double> &b)
{
    double scale = 0;
    for (size_t i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(A[i * n + i]));
    if (scale == 0)
        scale = 1;
    double mu = 0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<double> L(n * n, 0.0);
        bool ok = true;
        for (size_t j = 0; j < n && ok; ++j) {
            double d = A[j * n + j] + mu;
            for (size_t k = 0; k < j; ++k)
                d -= L[j * n + k] * L[j * n + k];
            if (!(d > 1e-14 * scale)) {
                ok = false;
                break;
            }
            L[j * n + j] = std::sqrt(d);
            for (size_t i = j + 1; i < n; ++i) {
                double s = A[i * n + j];
                for (size_t k = 0; k < j; ++k)
                    s -= L[i * n + k] * L[j * n + k];
                L[i * n + j] = s / L[j * n + j];
            }
        }
        if (ok) {
            std::vector<double> y(n), x(n);
            for (size_t i = 0; i < n; ++i) {
                double s = b[i];
                for (size_t k = 0; k < i; ++k)
                    s -= L[i * n + k] * y[k];
                y[i] = s / L[i * n + i];
            }
            for (size_t i = n; i-- > 0;) {
                double s = y[i];
                for (size_t k = i + 1; k < n; ++k)
                    s -= L[k * n + i] * x[k];
                x[i] = s / L[i * n + i];
            }
            return x;
        }
        mu = mu == 0 ? 1e-8 * scale : mu * 4;
    }
    return b;
}

struct AscentOutcome {
    std::vector<double> u;
    double value { 0 };
    int iterations { 0 };
    bool converged { false };
};

// Projected Newton ascent with an active set at the bounds and Armijo
// backtracking on the projected path.
AscentOutcome ascend(const Problem &pb, std::vector<double> u, const AscentConfig &cfg)
{
    const size_t n = u.size();
    project(u, pb.piece_of);
    AscentOutcome out;
    double f = pb.value(u);
    if (n == 0) {
        out.u = u;
        out.value = f;
        out.converged = true;
        return out;
    }
    std::vector<double> g = pb.gradient(u, cfg.fd_step);
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        std::vector<size_t> free;
        double pg_norm = 0;
        for (size_t i = 0; i < n; ++i) {
            const bool active = (u[i] <= 0 && g[i] < 0) || (u[i] >= 1 && g[i] > 0);
            if (!active) {
                free.push_back(i);
                pg_norm = std::max(pg_norm, std::abs(g[i]));
            }
        }
        if (pg_norm <= cfg.grad_tol) {
            out.converged = true;
            break;
        }
        const std::vector<double> H = pb.hessian(u, g, cfg.fd_step, 1e-5);
        const size_t nf = free.size();
        std::vector<double> A(nf * nf), b(nf);
        for (size_t a = 0; a < nf; ++a) {
            b[a] = g[free[a]];
            for (size_t c = 0; c < nf; ++c)
                A[a * nf + c] = -H[free[a] * n + free[c]];
        }
        const std::vector<double> step = shifted_solve(A, nf, b);
        std::vector<double> d(n, 0.0);
        for (size_t a = 0; a < nf; ++a)
            d[free[a]] = step[a];

        bool accepted = false;
        std::vector<double> trial(n);
        double f_trial = f;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            if (attempt == 1) {
                // Newton direction failed: fall back to a short gradient step.
                double gmax = 0;
                for (size_t i : free)
                    gmax = std::max(gmax, std::abs(g[i]));
                std::fill(d.begin(), d.end(), 0.0);
                for (size_t i : free)
                    d[i] = g[i] * (0.1 / gmax);
            }
            double alpha = 1;
            for (int bt = 0; bt < 40; ++bt) {
                for (size_t i = 0; i < n; ++i)
                    trial[i] = u[i] + alpha * d[i];
                project(trial, pb.piece_of);
                double gain = 0;
                for (size_t i = 0; i < n; ++i)
                    gain += g[i] * (trial[i] - u[i]);
                f_trial = pb.value(trial);
                if (f_trial > f && f_trial >= f + 1e-4 * gain) {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
        }
        if (!accepted) {
            out.converged = true;
            break;
        }
        const double improvement = f_trial - f;
        u = trial;
        f = f_trial;
        g = pb.gradient(u, cfg.fd_step);
        if (improvement <= cfg.phi_tol) {
            out.converged = true;
            ++it;
            break;
        }
    }
    out.u = u;
    out.value = f;
    out.iterations = it;
    return out;
}

} // namespace

std::vector<Placement> spread_placements(const MedialAxis &m, const Way &way)
{
    std::vector<Placement> pl;
    for (size_t p = 0; p < way.size(); ++p) {
        const int n = way[p];
        if (m.piece(int(p)).is_junction()) {
            if (n > 0)
                pl.push_back({ int(p), 0 });
            continue;
        }
        for (int i = 0; i < n; ++i)
            pl.push_back({ int(p), (i + 0.5) / n });
    }
    return pl;
}

LocalResult local_maximum(const MedialAxis &m, const Way &way, const std::vector<Disc> &fixed,
                          const AscentConfig &cfg, const std::vector<Placement> *init)
{
    if (way.size() != m.piece_count())
        throw ValidationError("way length differs from the piece count");
    for (size_t p = 0; p < way.size(); ++p) {
        if (way[p] < 0)
            throw ValidationError("negative disc count in way");
        if (m.piece(int(p)).is_junction() && way[p] > 1)
            throw ValidationError("junction pieces hold at most one disc");
    }
    const double area = polygon_area(m.polygon());

    std::vector<Placement> current = init ? *init : spread_placements(m, way);
    Way cur_way = way_of(m, current);
    if (cur_way != way)
        throw ValidationError("initial placements do not match the way");

    LocalResult res;
    res.requested = way;
    bool converged = true;
    for (;;) {
        Problem pb { m, {}, {}, 1 / area };
        std::vector<double> u;
        std::vector<Placement> sorted = current;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Placement &a, const Placement &b) {
            return a.piece != b.piece ? a.piece < b.piece : a.u < b.u;
        });
        std::vector<Placement> junction_pl;
        for (const Placement &pl : sorted) {
            if (m.piece(pl.piece).is_junction()) {
                junction_pl.push_back(pl);
                pb.context.push_back(m.disc_at(pl));
            } else {
                pb.piece_of.push_back(pl.piece);
                u.push_back(pl.u);
            }
        }
        pb.context.insert(pb.context.end(), fixed.begin(), fixed.end());
        const AscentOutcome a = ascend(pb, u, cfg);
        res.iterations += a.iterations;
        converged = converged && a.converged;

        current.clear();
        for (size_t k = 0; k < a.u.size(); ++k)
            current.push_back({ pb.piece_of[k], a.u[k] });
        current.insert(current.end(), junction_pl.begin(), junction_pl.end());
        cur_way = way_of(m, current);

        bool snapped = false;
        if (cfg.snap) {
            for (Placement &pl : current) {
                if (m.piece(pl.piece).is_junction())
                    continue;
                int end = -1;
                if (pl.u <= cfg.snap_tol) end = 0;
                else if (pl.u >= 1 - cfg.snap_tol) end = 1;
                if (end < 0)
                    continue;
                const int jp = m.junction_piece_at(m.piece_node(pl.piece, end));
                if (jp < 0 || cur_way[size_t(jp)] > 0)
                    continue;
                --cur_way[size_t(pl.piece)];
                ++cur_way[size_t(jp)];
                pl = { jp, 0 };
                snapped = true;
            }
        }
        if (!snapped) {
            res.objective = a.value * area;
            break;
        }
        res.reclassified = true;
    }

    std::stable_sort(current.begin(), current.end(), [](const Placement &a, const Placement &b) {
        return a.piece != b.piece ? a.piece < b.piece : a.u < b.u;
    });
    FillingSolution &s = res.solution;
    s.placements = current;
    for (const Placement &pl : current)
        s.discs.push_back(m.disc_at(pl));
    s.way = cur_way;
    s.phi = union_area(s.discs) / area;
    s.converged = converged;
    if (!converged)
        s.diagnostics.push_back("ascent stopped at the iteration limit");
    if (res.reclassified)
        s.diagnostics.push_back("no interior maximum for the requested way; discs moved onto junctions");
    return res;
}

std::vector<LocalResult> enumerate_local_maxima(const MedialAxis &m, const std::vector<Way> &ways,
                                                const AscentConfig &cfg)
{
    std::map<Way, LocalResult> best;
    for (const Way &w : ways) {
        LocalResult r = local_maximum(m, w, {}, cfg);
        auto it = best.find(r.solution.way);
        if (it == best.end())
            best.emplace(r.solution.way, std::move(r));
        else if (r.objective > it->second.objective)
            it->second = std::move(r);
    }
    std::vector<LocalResult> out;
    for (auto &kv : best)
        out.push_back(std::move(kv.second));
    return out;
}

std::vector<Way> all_ways(const MedialAxis &m, int n)
{
    std::vector<Way> out;
    Way w(m.piece_count(), 0);
    auto rec = [&](auto &&self, size_t p, int left) -> void {
        if (p + 1 == w.size()) {
            if (m.piece(int(p)).is_junction() && left > 1)
                return;
            w[p] = left;
            out.push_back(w);
            w[p] = 0;
            return;
        }
        const int cap = m.piece(int(p)).is_junction() ? std::min(1, left) : left;
        for (int k = 0; k <= cap; ++k) {
            w[p] = k;
            self(self, p + 1, left - k);
        }
        w[p] = 0;
    };
    if (!w.empty())
        rec(rec, 0, n);
    return out;
}

} // namespace filling
