#pragma once

#include <array>
#include <cmath>

#include "triconic/error.hpp"

namespace triconic {

struct Point2 {
    double x = 0, y = 0;

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator-() const { return {-x, -y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    Point2 operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Point2&) const = default;
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }
inline double dot(const Point2& p, const Point2& q) { return p.x * q.x + p.y * q.y; }
inline double cross(const Point2& p, const Point2& q) { return p.x * q.y - p.y * q.x; }
inline double norm(const Point2& p) { return std::hypot(p.x, p.y); }
inline Point2 unit(const Point2& p) { return p / norm(p); }
inline Point2 perp(const Point2& p) { return {-p.y, p.x}; }
inline Point2 midpoint(const Point2& p, const Point2& q) { return (p + q) * 0.5; }
inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double distance(const Point2& p, const Point2& q);
// Positive iff p, q, r are counterclockwise.
double signed_area(const Point2& p, const Point2& q, const Point2& r);

class Triangle {
public:
    // Throws DegenerateTriangle for (near-)collinear vertices.
    Triangle(const Point2& a, const Point2& b, const Point2& c);

    Point2 A, B, C;
    double a, b, c;  // a = |BC|, b = |CA|, c = |AB|
    double p;        // semiperimeter

    const Point2& vertex(int i) const { return i == 0 ? A : (i == 1 ? B : C); }
    double side(int i) const { return i == 0 ? a : (i == 1 ? b : c); }
    double area() const { return std::fabs(signed_area(A, B, C)); }
    double diameter() const;  // longest side
};

Triangle equilateral(double side = 1.0);

struct BaryCoords {
    double u = 0, v = 0, w = 0;

    double operator[](int i) const { return i == 0 ? u : (i == 1 ? v : w); }
    // Scaled so the max-abs component is 1 and the first entry above 1e-12 relative is positive.
    BaryCoords normalized() const;
};

bool projectively_equal(const BaryCoords& p, const BaryCoords& q, double tol);

enum class LineFrame { cartesian, barycentric };

// l x + m y + n z = 0 (barycentric) or l x + m y + n = 0 (Cartesian).
struct LineEq {
    double l = 0, m = 0, n = 0;
    LineFrame frame = LineFrame::cartesian;
};

Point2 bary_to_cartesian(const Triangle& t, const BaryCoords& b);
BaryCoords cartesian_to_bary(const Triangle& t, const Point2& p);
LineEq line_bary_to_cartesian(const Triangle& t, const LineEq& l);

LineEq line_through(const Point2& p, const Point2& q);
// Throws ParallelLines.
Point2 line_intersection(const LineEq& l1, const LineEq& l2);
double point_line_distance(const Point2& p, const LineEq& l);
Point2 project_onto_line(const Point2& p, const LineEq& l);

// Scale-aware: twice the area compared to the squared longest pairwise distance.
bool collinear(const Point2& p, const Point2& q, const Point2& r, double tol = -1);
// Scale-aware: distance of the l1/l2 crossing from l3 relative to the magnitude of the
// configuration. Lines must be Cartesian.
bool concurrent(const LineEq& l1, const LineEq& l2, const LineEq& l3, double tol = -1);

Point2 reflect_about_point(const Point2& p, const Point2& center);
Point2 reflect_about_line(const Point2& p, const LineEq& l);

}  // namespace triconic
