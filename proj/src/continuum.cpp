#include "filling/continuum.hpp"

#include "filling/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace filling {

double edge_edge_integrand(double slope, double r)
{
    const double s = std::max(0.0, 1 - slope * slope);
    return s * std::sqrt(s) / (12 * r);
}

double edge_point_integrand(double r0, double t)
{
    const double q = 1 + t * t;
    const double kappa = 1 / (2 * r0 * q * std::sqrt(q));
    return r0 * kappa / (12 * r0 * q);
}

namespace {

double simpson_step(const std::function<double(double)> &f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol)
        return left + right + delta / 15;
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)> &f, double a, double b, double tol)
{
    if (a == b)
        return 0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

double cube_root_integral(const Branch &b, double t0, double t1)
{
    if (t1 < t0)
        std::swap(t0, t1);
    switch (b.kind) {
    case BranchCase::EdgeEdge: {
        // C^(1/3) = k r^(-1/3) with r = c t + r0, integrated in closed form.
        const double c = b.c;
        const double k = std::sqrt(std::max(0.0, 1 - c * c)) / std::cbrt(12.0);
        if (c <= 1e-14) {
            const double r = b.r0;
            return r > 0 ? k * (t1 - t0) / std::cbrt(r) : 0;
        }
        auto prim = [&](double t) {
            const double r = std::max(0.0, c * t + b.r0);
            return 1.5 / c * std::cbrt(r * r);
        };
        return k * (prim(t1) - prim(t0));
    }
    case BranchCase::EdgePoint: {
        auto f = [&](double t) { return std::cbrt(edge_point_integrand(b.r0, t)); };
        const double scale = std::cbrt(1 / (24 * b.r0)) * std::max(1e-300, t1 - t0);
        return adaptive_simpson(f, t0, t1, 1e-12 * scale);
    }
    case BranchCase::PointPoint:
        return 0;
    }
    return 0;
}

namespace {

ContinuumPiece describe(const MedialAxis &m, int piece)
{
    const Piece &pc = m.piece(piece);
    if (pc.is_junction())
        throw DomainError("continuum model is defined on branch sections only");
    ContinuumPiece out;
    out.piece = piece;
    bool ee = false, ep = false, pp = false;
    for (const PieceSegment &s : pc.segments) {
        const Branch &b = m.branches()[size_t(s.branch)];
        ee = ee || b.kind == BranchCase::EdgeEdge;
        ep = ep || b.kind == BranchCase::EdgePoint;
        pp = pp || b.kind == BranchCase::PointPoint;
        out.S += cube_root_integral(b, s.t_from, s.t_to);
    }
    if (!ee && !ep) {
        out.kind = "point-point";
        out.excluded = true;
        out.S = 0;
    } else if (ee && !ep && !pp) {
        out.kind = "edge-edge";
        out.alpha = 1.0 / 3;
    } else if (ep && !ee && !pp) {
        out.kind = "edge-point";
        out.alpha = 5.0 / 6;
    } else {
        out.kind = "mixed";
    }
    out.constant = out.S * out.S * out.S;
    return out;
}

// Area left open on a piece holding no discs: the union of its maximal discs
// minus what the discs at its two ends cover.
double empty_piece_gap(const MedialAxis &m, int piece)
{
    std::vector<Disc> all;
    const int samples = 200;
    for (int i = 0; i <= samples; ++i)
        all.push_back(m.disc_at({ piece, double(i) / samples }));
    const std::vector<Disc> ends { all.front(), all.back() };
    return std::max(0.0, union_area(all) - union_area(ends));
}

} // namespace

double piece_constant(const MedialAxis &m, int piece)
{
    const ContinuumPiece c = describe(m, piece);
    if (c.excluded)
        throw DomainError("point-point branches carry no continuum density");
    return c.constant;
}

AllocationPlan allocate(const MedialAxis &m, int n)
{
    AllocationPlan plan;
    plan.n = n;
    double total = 0;
    for (size_t p = 0; p < m.piece_count(); ++p) {
        if (m.piece(int(p)).is_junction())
            continue;
        plan.pieces.push_back(describe(m, int(p)));
        total += plan.pieces.back().S;
    }
    if (!(total > 0))
        throw DomainError("every branch section is excluded from the continuum model");
    for (ContinuumPiece &c : plan.pieces)
        c.fraction = c.S / total;

    // Largest remainder, ties to the larger constant.
    int assigned = 0;
    std::vector<size_t> order(plan.pieces.size());
    std::vector<double> rem(plan.pieces.size());
    for (size_t i = 0; i < plan.pieces.size(); ++i) {
        const double exact = plan.pieces[i].fraction * n;
        plan.pieces[i].count = int(std::floor(exact));
        rem[i] = exact - plan.pieces[i].count;
        assigned += plan.pieces[i].count;
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (rem[a] != rem[b])
            return rem[a] > rem[b];
        return plan.pieces[a].constant > plan.pieces[b].constant;
    });
    for (size_t i = 0; assigned < n && i < order.size(); ++i, ++assigned)
        ++plan.pieces[order[i]].count;

    for (ContinuumPiece &c : plan.pieces) {
        if (c.excluded)
            continue;
        if (c.count > 0) {
            c.uncovered = c.constant / (double(c.count) * c.count);
        } else {
            c.uncovered = empty_piece_gap(m, c.piece);
            plan.diagnostics.push_back("piece " + std::to_string(c.piece) + " receives no discs");
        }
        plan.predicted_uncovered += c.uncovered;
    }
    plan.predicted_phi = 1 - plan.predicted_uncovered / polygon_area(m.polygon());
    return plan;
}

double predicted_uncovered(const MedialAxis &m, int n)
{
    return allocate(m, n).predicted_uncovered;
}

std::vector<DensitySample> density_profile(const MedialAxis &m, int piece, int n, int samples_per_segment)
{
    const ContinuumPiece c = describe(m, piece);
    std::vector<DensitySample> out;
    if (c.excluded || c.S <= 0)
        return out;
    for (const PieceSegment &s : m.piece(piece).segments) {
        const Branch &b = m.branches()[size_t(s.branch)];
        for (int i = 0; i <= samples_per_segment; ++i) {
            const double t = s.t_from + (s.t_to - s.t_from) * i / samples_per_segment;
            const double r = b.radius_unchecked(t);
            double C = 0;
            if (b.kind == BranchCase::EdgeEdge)
                C = r > 0 ? edge_edge_integrand(b.c, r) : 0;
            else if (b.kind == BranchCase::EdgePoint)
                C = edge_point_integrand(b.r0, t);
            const double rho = r > 0 || b.kind != BranchCase::EdgeEdge ? n * std::cbrt(C) / c.S
                                                                        : std::numeric_limits<double>::infinity();
            out.push_back({ s.branch, t, r, rho });
        }
    }
    return out;
}

double two_disc_gap(double d, double r, double r_prime, bool both_sides)
{
    const double s = std::max(0.0, 1 - r_prime * r_prime);
    const double a = d * d * d * s * std::sqrt(s) / (24 * r);
    return both_sides ? 2 * a : a;
}

double constant_curvature_constant(double length, double kappa, double r)
{
    return length * length * length * (kappa * kappa * r + 1 / r) / 12;
}

std::vector<double> constant_curvature_fractions(const std::vector<double> &length, const std::vector<double> &kappa,
                                                 const std::vector<double> &r)
{
    std::vector<double> f(length.size());
    for (size_t i = 0; i < f.size(); ++i)
        f[i] = std::cbrt(constant_curvature_constant(length[i], kappa[i], r[i]));
    const double sum = std::accumulate(f.begin(), f.end(), 0.0);
    for (double &x : f)
        x /= sum;
    return f;
}

namespace {

std::vector<double> normalized_cot(const std::vector<double> &angles, double factor)
{
    std::vector<double> f(angles.size());
    for (size_t i = 0; i < f.size(); ++i) {
        const double a = angles[i] * factor;
        f[i] = std::abs(a - M_PI / 2) < 1e-15 ? 0 : std::cos(a) / std::sin(a);
    }
    const double sum = std::accumulate(f.begin(), f.end(), 0.0);
    for (double &x : f)
        x /= sum;
    return f;
}

} // namespace

std::vector<double> triangle_cot_fractions(const std::vector<double> &angles)
{
    return normalized_cot(angles, 1.0);
}

std::vector<double> triangle_half_angle_fractions(const std::vector<double> &angles)
{
    return normalized_cot(angles, 0.5);
}

boost::multiprecision::cpp_int count_ways(long n, long k, long j)
{
    using boost::multiprecision::cpp_int;
    if (n < 0 || j < 0 || k <= j)
        throw DomainError("count_ways needs 0 <= j < k and n >= 0");
    auto binom = [](long a, long b) {
        cpp_int r = 1;
        if (b < 0 || b > a)
            return cpp_int(0);
        for (long i = 1; i <= b; ++i)
            r = r * (a - b + i) / i;
        return r;
    };
    cpp_int total = 0;
    for (long m = 0; m <= std::min(j, n); ++m)
        total += binom(j, m) * binom(n - m + k - j - 1, k - j - 1);
    return total;
}

} // namespace filling
