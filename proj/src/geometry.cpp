#include "filling/geometry.hpp"

#include <algorithm>
#include <limits>

namespace filling {

namespace {

BoundingBox compute_bbox(const std::vector<Point> &pts)
{
    BoundingBox bb { pts.front(), pts.front() };
    for (const Point &p : pts) {
        bb.min.x = std::min(bb.min.x, p.x);
        bb.min.y = std::min(bb.min.y, p.y);
        bb.max.x = std::max(bb.max.x, p.x);
        bb.max.y = std::max(bb.max.y, p.y);
    }
    return bb;
}

double shoelace(const std::vector<Point> &pts)
{
    double a = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        const Point &p = pts[i];
        const Point &q = pts[(i + 1) % pts.size()];
        a += cross(p, q);
    }
    return 0.5 * a;
}

int orientation(const Point &a, const Point &b, const Point &c, double tol)
{
    const double d = cross(b - a, c - a);
    const double scale = std::max(norm(b - a), norm(c - a));
    if (std::abs(d) <= tol * scale)
        return 0;
    return d > 0 ? 1 : -1;
}

bool on_segment(const Point &a, const Point &b, const Point &q, double tol)
{
    return point_segment_distance(q, a, b) <= tol;
}

bool segments_intersect(const Point &a, const Point &b, const Point &c, const Point &d, double tol)
{
    const int o1 = orientation(a, b, c, tol);
    const int o2 = orientation(a, b, d, tol);
    const int o3 = orientation(c, d, a, tol);
    const int o4 = orientation(c, d, b, tol);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
        return true;
    return on_segment(a, b, c, tol) || on_segment(a, b, d, tol) ||
           on_segment(c, d, a, tol) || on_segment(c, d, b, tol);
}

} // namespace

double point_segment_distance(const Point &q, const Point &a, const Point &b)
{
    const Vec ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0)
        return dist(q, a);
    const double s = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
    return dist(q, a + ab * s);
}

Polygon::Polygon(std::vector<Point> vertices)
{
    for (const Point &p : vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw ValidationError("polygon vertex has a non-finite coordinate");
    if (vertices.size() < 3)
        throw ValidationError("polygon needs at least 3 vertices");

    const double tol = 1e-9 * compute_bbox(vertices).diagonal();
    if (!(tol > 0))
        throw ValidationError("polygon is degenerate (zero extent)");

    // Drop repeated vertices, then collinear ones, until nothing changes.
    bool changed = true;
    while (changed && vertices.size() >= 3) {
        changed = false;
        for (size_t i = 0; i < vertices.size() && vertices.size() >= 3; ++i) {
            const size_t n = vertices.size();
            const Point &prev = vertices[(i + n - 1) % n];
            const Point &cur  = vertices[i];
            const Point &next = vertices[(i + 1) % n];
            if (dist(prev, cur) <= tol ||
                (point_segment_distance(cur, prev, next) <= tol && dot(cur - prev, next - cur) > 0)) {
                vertices.erase(vertices.begin() + long(i));
                changed = true;
                break;
            }
        }
    }
    if (vertices.size() < 3)
        throw ValidationError("polygon has fewer than 3 distinct, non-collinear vertices");

    const double area = shoelace(vertices);
    if (std::abs(area) <= tol * tol)
        throw ValidationError("polygon has zero area");
    if (area < 0)
        std::reverse(vertices.begin(), vertices.end());

    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Point &a = vertices[i];
        const Point &b = vertices[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const Point &c = vertices[j];
            const Point &d = vertices[(j + 1) % n];
            if (adjacent) {
                // Adjacent edges share one vertex; they must not fold back.
                const Point &shared = (j == i + 1) ? b : a;
                const Point &other_ab = (j == i + 1) ? a : b;
                const Point &other_cd = (j == i + 1) ? d : c;
                if (orientation(other_ab, shared, other_cd, tol) == 0 &&
                    dot(other_ab - shared, other_cd - shared) > 0)
                    throw ValidationError("polygon edges " + std::to_string(i) + " and " +
                                          std::to_string(j) + " overlap");
                continue;
            }
            if (segments_intersect(a, b, c, d, tol))
                throw ValidationError("polygon is not simple: edges " + std::to_string(i) +
                                      " and " + std::to_string(j) + " intersect");
        }
    }

    m_vertices = std::move(vertices);
    m_bbox = compute_bbox(m_vertices);
}

bool Polygon::is_reflex(size_t i) const
{
    const size_t n = m_vertices.size();
    const Point &prev = vertex(i + n - 1);
    const Point &cur  = vertex(i);
    const Point &next = vertex(i + 1);
    return cross(cur - prev, next - cur) < 0;
}

double Polygon::interior_angle(size_t i) const
{
    const size_t n = m_vertices.size();
    const Vec a = vertex(i + n - 1) - vertex(i);
    const Vec b = vertex(i + 1) - vertex(i);
    double ang = std::atan2(cross(b, a), dot(b, a));
    if (ang < 0)
        ang += 2 * M_PI;
    return ang;
}

double Polygon::signed_area() const
{
    return shoelace(m_vertices);
}

bool Polygon::contains(const Point &q) const
{
    bool inside = false;
    const size_t n = m_vertices.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point &a = m_vertices[i];
        const Point &b = m_vertices[j];
        if ((a.y > q.y) != (b.y > q.y)) {
            const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (q.x < x)
                inside = !inside;
        }
    }
    return inside;
}

double polygon_area(const Polygon &p)
{
    return p.signed_area();
}

BoundaryDistance nearest_boundary(const Polygon &p, const Point &q)
{
    BoundaryDistance best;
    best.distance = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < p.size(); ++i) {
        const Point a = p.edge_start(i);
        const Vec ab = p.edge_end(i) - a;
        const double s = dot(q - a, ab) / norm2(ab);
        BoundaryDistance cand;
        if (s <= 0) {
            cand.foot = a;
            cand.feature = { BoundaryFeature::Kind::Vertex, int(i) };
        } else if (s >= 1) {
            cand.foot = p.edge_end(i);
            cand.feature = { BoundaryFeature::Kind::Vertex, int((i + 1) % p.size()) };
        } else {
            cand.foot = a + ab * s;
            cand.feature = { BoundaryFeature::Kind::Edge, int(i) };
        }
        cand.distance = dist(q, cand.foot);
        if (cand.distance < best.distance)
            best = cand;
    }
    return best;
}

BoundaryDistance distance_to_boundary(const Polygon &p, const Point &q)
{
    if (!p.contains(q))
        throw DomainError("point is not inside the polygon");
    BoundaryDistance d = nearest_boundary(p, q);
    if (d.distance <= p.tol())
        throw DomainError("point lies on the polygon boundary");
    return d;
}

bool disc_inside(const Polygon &p, const Disc &d, double tol)
{
    if (!std::isfinite(d.radius) || d.radius < 0)
        return false;
    if (!p.contains(d.center))
        return nearest_boundary(p, d.center).distance <= tol && d.radius <= tol;
    return nearest_boundary(p, d.center).distance >= d.radius - tol;
}

} // namespace filling
