#ifndef filling_geometry_hpp_
#define filling_geometry_hpp_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace filling {

// Raised when input data (polygon, solution file, options) is malformed.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an operation is called outside its domain (point outside the
// polygon, parameter out of range, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x { 0 };
    double y { 0 };

    Point() = default;
    constexpr Point(double x_, double y_) : x(x_), y(y_) {}

    Point  operator+(const Point &o) const { return { x + o.x, y + o.y }; }
    Point  operator-(const Point &o) const { return { x - o.x, y - o.y }; }
    Point  operator*(double s) const { return { x * s, y * s }; }
    Point  operator/(double s) const { return { x / s, y / s }; }
    Point& operator+=(const Point &o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(const Point &o) { x -= o.x; y -= o.y; return *this; }
    bool   operator==(const Point &o) const = default;
};

using Vec = Point;

inline double dot(const Vec &a, const Vec &b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec &a, const Vec &b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec &a) { return std::hypot(a.x, a.y); }
inline double norm2(const Vec &a) { return a.x * a.x + a.y * a.y; }
inline double dist(const Point &a, const Point &b) { return norm(a - b); }
inline Vec    perp(const Vec &a) { return { -a.y, a.x }; }
inline Vec    normalized(const Vec &a) { return a / norm(a); }

struct Disc {
    Point  center;
    double radius { 0 };

    double area() const { return M_PI * radius * radius; }
};

struct BoundingBox {
    Point min;
    Point max;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double diagonal() const { return std::hypot(width(), height()); }
};

// Boundary feature nearest to a query point: an edge (perpendicular foot
// inside the segment) or a vertex.
struct BoundaryFeature {
    enum class Kind { Edge, Vertex };
    Kind kind { Kind::Edge };
    int  index { -1 };

    bool operator==(const BoundaryFeature &o) const = default;
};

struct BoundaryDistance {
    double          distance { 0 };
    BoundaryFeature feature;
    Point           foot;
};

// Simple polygon, counter-clockwise, without repeated or collinear vertices.
// Construction normalizes the input and throws ValidationError when the
// vertex loop cannot be made valid.
class Polygon {
public:
    explicit Polygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return m_vertices; }
    size_t size() const { return m_vertices.size(); }
    const Point& vertex(size_t i) const { return m_vertices[i % m_vertices.size()]; }
    // Edge i runs from vertex(i) to vertex(i + 1).
    Point edge_start(size_t i) const { return vertex(i); }
    Point edge_end(size_t i) const { return vertex(i + 1); }
    Vec   edge_direction(size_t i) const { return normalized(edge_end(i) - edge_start(i)); }
    // Unit normal pointing into the polygon interior.
    Vec   inward_normal(size_t i) const { return perp(edge_direction(i)); }
    double edge_length(size_t i) const { return dist(edge_start(i), edge_end(i)); }

    // Interior angle at vertex i is larger than pi.
    bool is_reflex(size_t i) const;
    // Interior angle at vertex i, in radians.
    double interior_angle(size_t i) const;

    const BoundingBox& bbox() const { return m_bbox; }
    double bbox_diag() const { return m_bbox.diagonal(); }
    // Tolerance for all geometric comparisons: 1e-9 of the bounding box diagonal.
    double tol() const { return 1e-9 * m_bbox.diagonal(); }

    double signed_area() const;
    bool   contains(const Point &q) const;

private:
    std::vector<Point> m_vertices;
    BoundingBox        m_bbox;
};

double polygon_area(const Polygon &p);

// Minimum distance from an interior point to the polygon boundary.
// Throws DomainError when q is outside or on the boundary.
BoundaryDistance distance_to_boundary(const Polygon &p, const Point &q);

// Same as distance_to_boundary() but defined for any point (no inside check).
BoundaryDistance nearest_boundary(const Polygon &p, const Point &q);

// Disc lies inside the polygon up to tol.
bool disc_inside(const Polygon &p, const Disc &d, double tol);

double point_segment_distance(const Point &q, const Point &a, const Point &b);

} // namespace filling

#endif
