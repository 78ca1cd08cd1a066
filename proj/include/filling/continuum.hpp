#ifndef filling_continuum_hpp_
#define filling_continuum_hpp_

#include "filling/medial_axis.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <string>
#include <vector>

namespace filling {

// Continuum model of one branch-section piece. The optimal density along the
// piece is rho = N C^(1/3) / S with S = integral of C^(1/3), which gives an
// uncovered area of S^3 / N^2.
struct ContinuumPiece {
    int         piece { -1 };
    std::string kind;           // "edge-edge", "edge-point", "mixed" or "point-point"
    double      alpha { 0 };    // density exponent rho ~ r^-alpha (0 when mixed)
    double      S { 0 };        // integral of C^(1/3) over the piece
    double      constant { 0 }; // S^3: uncovered area times N^2
    bool        excluded { false };
    double      fraction { 0 };
    int         count { 0 };
    double      uncovered { 0 };
};

struct AllocationPlan {
    int                         n { 0 };
    std::vector<ContinuumPiece> pieces;
    double                      predicted_uncovered { 0 };
    double                      predicted_phi { 0 };
    std::vector<std::string>    diagnostics;
};

struct DensitySample {
    int    branch { -1 };
    double t { 0 };
    double r { 0 };
    double rho { 0 };   // discs per unit of the branch parameter
};

// C for an edge-edge branch: (1 - r'^2)^(3/2) / (12 r).
double edge_edge_integrand(double slope, double r);
// C for a parabolic branch in its canonical parameter: (1/12) r0 kappa / r.
double edge_point_integrand(double r0, double t);

double adaptive_simpson(const std::function<double(double)> &f, double a, double b, double tol);

// Integral of C^(1/3) over [t0, t1] of a branch; zero for point-point branches.
double cube_root_integral(const Branch &b, double t0, double t1);

// Uncovered area times N^2 for discs spread optimally over a piece. Throws
// DomainError for junction pieces and pieces made only of point-point branches.
double piece_constant(const MedialAxis &m, int piece);

// Cube-root allocation of n discs over the branch-section pieces.
AllocationPlan allocate(const MedialAxis &m, int n);

// Predicted 1 - phi times the polygon area for n discs.
double predicted_uncovered(const MedialAxis &m, int n);

// Optimal density along a piece holding n discs.
std::vector<DensitySample> density_profile(const MedialAxis &m, int piece, int n, int samples_per_segment = 64);

// Uncovered area between two overlapping maximal discs a distance d apart and
// one tangent edge.
double two_disc_gap(double d, double r, double r_prime, bool both_sides = false);

// Uncovered area times N^2 on a section of constant curvature and radius.
double constant_curvature_constant(double length, double kappa, double r);

// Fractions over sections of constant curvature and radius.
std::vector<double> constant_curvature_fractions(const std::vector<double> &length, const std::vector<double> &kappa,
                                                 const std::vector<double> &r);

// cot(theta_i) / sum cot(theta_k) over the interior angles of a triangle.
std::vector<double> triangle_cot_fractions(const std::vector<double> &angles);
// cot(theta_i / 2) / sum cot(theta_k / 2).
std::vector<double> triangle_half_angle_fractions(const std::vector<double> &angles);

// Ways of n discs over k pieces of which j are junctions holding 0 or 1 disc.
boost::multiprecision::cpp_int count_ways(long n, long k, long j);

} // namespace filling

#endif
