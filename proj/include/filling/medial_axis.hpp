#ifndef filling_medial_axis_hpp_
#define filling_medial_axis_hpp_

#include "filling/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace filling {

// The three kinds of medial-axis branches of a simple polygon, named after
// the pair of boundary features generating them.
enum class BranchCase {
    EdgeEdge,   // two edges: straight segment, r(t) = c t + r0
    EdgePoint,  // edge and reflex vertex: parabola, r(t) = r0 (t^2 + 1)
    PointPoint  // two reflex vertices: straight segment, r(t) = sqrt(a^2 + t^2)
};

const char* to_string(BranchCase c);

// A parameterized medial-axis branch.
//
// Straight branches (EdgeEdge, PointPoint) are x(t) = origin + dir * t with a
// unit direction, so t is arclength. Parabolic branches use the canonical
// frame of their parent pair: the frame origin is the parabola vertex, ey
// points from the directrix (the edge) to the focus (the reflex vertex), and
// x(t) = origin + ex * (2 r0 t) + ey * (r0 t^2).
struct Branch {
    BranchCase kind { BranchCase::EdgeEdge };

    Point  origin;
    Vec    ex { 1, 0 };
    Vec    ey { 0, 1 };
    double c  { 0 };   // EdgeEdge slope dr/dt, in [0, 1]
    double r0 { 0 };   // EdgeEdge radius at t = 0; EdgePoint minimum radius
    double a  { 0 };   // PointPoint half distance between the reflex vertices

    double t_a { 0 };
    double t_b { 0 };

    std::array<BoundaryFeature, 2> parents {};
    int node_a { -1 };  // axis node at t_a
    int node_b { -1 };  // axis node at t_b

    static Branch edge_edge(Point origin, Vec dir, double c, double r0, double t_a, double t_b);
    static Branch edge_point(Point origin, Vec ex, Vec ey, double r0, double t_a, double t_b);
    static Branch point_point(Point midpoint, Vec dir, double a, double t_a, double t_b);

    bool is_straight() const { return kind != BranchCase::EdgePoint; }

    // Unchecked evaluation, valid for any t.
    Point  position(double t) const;
    double radius_unchecked(double t) const;
    // dr/dt
    double radius_slope(double t) const;
    // |dx/dt|
    double speed(double t) const;
    // Signed arclength from 0 to t.
    double arclength_to(double t) const;
    double length() const { return std::abs(arclength_to(t_b) - arclength_to(t_a)); }
    // Parameter reached from t0 after travelling signed arclength s.
    double param_at_arclength(double t0, double s) const;
    // Parameter of the interior radius minimum, if the branch has one.
    std::optional<double> interior_minimum(double tol) const;
};

// Closed-form radius of a branch. Throws DomainError when t is outside
// [t_a, t_b] (beyond a relative tolerance).
double radius_at(const Branch &b, double t);

struct AxisNode {
    enum class Kind { End, Junction, Transition, Split };
    Kind             kind { Kind::End };
    Point            position;
    double           radius { 0 };
    std::vector<int> branches;       // incident branches
    int              split_branch { -1 };
    double           split_param { 0 };
};

struct JunctionPoint {
    Point            position;
    double           radius { 0 };
    int              degree { 0 };
    std::vector<int> branches;
    int              node { -1 };
};

// Portion of a branch traversed by a branch-section piece, in the direction
// of increasing radius.
struct PieceSegment {
    int    branch { -1 };
    double t_from { 0 };
    double t_to   { 0 };
    double s_begin { 0 };  // arclength offset within the piece
    double s_end   { 0 };
};

struct Piece {
    enum class Kind { BranchSection, Junction };
    Kind kind { Kind::BranchSection };

    std::vector<PieceSegment> segments;  // BranchSection only
    double length { 0 };
    int junction { -1 };                 // Junction only

    int node_start { -1 };  // axis node at u = 0 (minimum radius end)
    int node_end   { -1 };  // axis node at u = 1

    bool is_junction() const { return kind == Kind::Junction; }
};

struct PiecePoint {
    Point  position;
    double radius { 0 };
};

// Where a disc center sits on the axis: a branch-section piece and a
// normalized arclength coordinate u in [0, 1], or a junction piece.
struct Placement {
    int    piece { -1 };
    double u { 0 };

    bool operator==(const Placement &o) const = default;
};

// Attachment of a piece end to an axis node.
struct PieceEnd {
    int piece { -1 };
    int end { 0 };  // 0: u = 0 end, 1: u = 1 end; junction pieces use 0
};

class MedialAxis {
public:
    MedialAxis(Polygon polygon, std::vector<Branch> branches, std::vector<AxisNode> nodes);

    const Polygon& polygon() const { return m_polygon; }
    const std::vector<Branch>& branches() const { return m_branches; }
    const std::vector<AxisNode>& nodes() const { return m_nodes; }
    const std::vector<JunctionPoint>& junctions() const { return m_junctions; }
    const std::vector<Piece>& pieces() const { return m_pieces; }
    const Piece& piece(int i) const { return m_pieces[size_t(i)]; }
    size_t piece_count() const { return m_pieces.size(); }
    size_t junction_piece_count() const;

    // Pieces adjacent in the piece graph (a tree).
    const std::vector<int>& piece_neighbors(int piece) const { return m_piece_adjacency[size_t(piece)]; }
    // Piece ends attached to a node; junction pieces appear with end 0.
    const std::vector<PieceEnd>& node_pieces(int node) const { return m_node_pieces[size_t(node)]; }
    // Junction piece sitting on a node, or -1.
    int junction_piece_at(int node) const { return m_node_junction_piece[size_t(node)]; }
    // Node where a piece end is attached.
    int piece_node(int piece, int end) const;

    // Position and maximal-disc radius at a normalized coordinate of a branch
    // section. Throws DomainError for junction pieces or u outside [0, 1].
    PiecePoint point_at(int piece, double u) const;
    // As point_at, but junction pieces are allowed (u is ignored) and u is clamped.
    PiecePoint evaluate(const Placement &p) const;
    Disc disc_at(const Placement &p) const;

    // Nearest axis placement to an arbitrary point. Points within
    // junction_tol of a junction map onto that junction piece.
    Placement locate(const Point &q, double junction_tol) const;

    const std::vector<std::string>& diagnostics() const { return m_diagnostics; }
    void add_diagnostic(std::string msg) { m_diagnostics.push_back(std::move(msg)); }

private:
    friend std::vector<Piece> decompose_pieces(const MedialAxis &m);
    void build_piece_graph();

    Polygon                           m_polygon;
    std::vector<Branch>               m_branches;
    std::vector<AxisNode>             m_nodes;
    std::vector<JunctionPoint>        m_junctions;
    std::vector<Piece>                m_pieces;
    std::vector<std::vector<int>>     m_piece_adjacency;
    std::vector<std::vector<PieceEnd>> m_node_pieces;
    std::vector<int>                  m_node_junction_piece;
    std::vector<std::string>          m_diagnostics;
};

// Medial axis of a simple polygon, built from the pairwise bisectors of the
// boundary sites (edges and reflex vertices) clipped to where no third site is
// closer. Throws ValidationError for degenerate polygons.
MedialAxis compute_medial_axis(const Polygon &p);

// Splits branches at interior radius minima and chains monotone sections
// through degree-2 nodes. Junctions become singleton pieces.
std::vector<Piece> decompose_pieces(const MedialAxis &m);

} // namespace filling

#endif
