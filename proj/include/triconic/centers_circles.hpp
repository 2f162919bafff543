#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "triconic/core_geometry.hpp"

namespace triconic {

struct Circle {
    Point2 center;
    double radius = 0;
};

enum class CenterId {
    X3, X4, X6, X7, X8, X20, X55, X175, X176, X478, X5452,
    incenter, excenterA, excenterB, excenterC,
};

const char* to_string(CenterId id);
std::optional<CenterId> center_id_from_string(const std::string& s);

// Barycentrics from the coefficient table. Only for ids with a closed barycentric form
// (X3, X4, X6, X7, X8, X20, X55, incenter, excenters); throws DomainError otherwise.
BaryCoords center_barycentrics(const Triangle& t, CenterId id);
// Any id; X175/X176 via Soddy circles, X478/X5452 via the triad conics.
// Throws PointAtInfinity (e.g. X175 in the line regime).
Point2 classic_center(const Triangle& t, CenterId id);

Circle incircle(const Triangle& t);
Circle circumcircle(const Triangle& t);
std::array<Circle, 3> excircles(const Triangle& t);

// A1, A2 on BC, B1, B2 on CA, C1, C2 on AB; |BA1| = |CA2| = p - a and cyclic,
// A1 beyond B, A2 beyond C, B1 beyond C, B2 beyond A, C1 beyond A, C2 beyond B.
std::array<Point2, 6> excircle_tangency_points(const Triangle& t);

struct TouchTriangles {
    std::array<Point2, 3> intouch;  // on BC, CA, AB
    std::array<Point2, 3> extouch;
};
TouchTriangles intouch_extouch(const Triangle& t);

std::array<Circle, 3> kissing_circles(const Triangle& t);

enum class SoddyRegime { contains, line, external };
const char* to_string(SoddyRegime r);

struct SoddyConfig {
    std::array<Circle, 3> kissing;
    Circle inner;
    SoddyRegime regime = SoddyRegime::contains;
    double k_out = 0;          // signed outer curvature (Descartes)
    Circle outer;              // contains / external regimes
    LineEq outer_line;         // line regime (unit normal, Cartesian)
};

// tan(A/2) + tan(B/2) + tan(C/2)
double half_tangent_sum(const Triangle& t);

// Throws TrilaterationInconsistent.
SoddyConfig soddy(const Triangle& t);

struct SoddyCenters {
    Point2 x176;
    std::optional<Point2> x175;   // absent in the line regime
    Point2 x175_direction;        // unit normal of the Soddy line when x175 is at infinity
};
SoddyCenters soddy_centers(const Triangle& t);

// Point at distances d from the three centers; least-squares via radical axes.
// Throws TrilaterationInconsistent when the residual exceeds tol * scale.
Point2 trilaterate(const std::array<Point2, 3>& c, const std::array<double, 3>& d, double tol = 1e-8);

// Throw DegenerateResult when the result is collinear or at infinity.
Triangle anticevian_triangle(const Triangle& t, const BaryCoords& q);
Triangle cevian_triangle(const Triangle& t, const BaryCoords& q);
Triangle reflection_triangle(const Triangle& t, const Point2& q);
Triangle medial_triangle(const Triangle& t);
Triangle excentral_triangle(const Triangle& t);

LineEq sideline(const Triangle& t, int i);  // 0: BC, 1: CA, 2: AB

}  // namespace triconic
