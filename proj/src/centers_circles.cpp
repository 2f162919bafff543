#include "triconic/centers_circles.hpp"

#include <algorithm>
#include <cmath>

#include "triconic/conics.hpp"
#include "triconic/triads.hpp"

namespace triconic {

namespace {

struct CenterName {
    CenterId id;
    const char* name;
};

constexpr CenterName kNames[] = {
    {CenterId::X3, "X3"},       {CenterId::X4, "X4"},       {CenterId::X6, "X6"},
    {CenterId::X7, "X7"},       {CenterId::X8, "X8"},       {CenterId::X20, "X20"},
    {CenterId::X55, "X55"},     {CenterId::X175, "X175"},   {CenterId::X176, "X176"},
    {CenterId::X478, "X478"},   {CenterId::X5452, "X5452"}, {CenterId::incenter, "incenter"},
    {CenterId::excenterA, "excenterA"}, {CenterId::excenterB, "excenterB"},
    {CenterId::excenterC, "excenterC"},
};

// First barycentric coordinate as a function of (a, b, c); the others follow cyclically.
// Sources: standard triangle-center tables.
//   X3  circumcenter         a^2 (b^2 + c^2 - a^2)
//   X4  orthocenter          (a^2 + b^2 - c^2)(a^2 - b^2 + c^2)
//   X6  symmedian point      a^2
//   X7  Gergonne point       (a + b - c)(a - b + c)
//   X8  Nagel point          b + c - a
//   X20 de Longchamps point  -3a^4 + 2a^2(b^2 + c^2) + (b^2 - c^2)^2
//   X55 insimilicenter       a^2 (b + c - a)
double first_coord(CenterId id, double a, double b, double c) {
    double a2 = a * a, b2 = b * b, c2 = c * c;
    switch (id) {
        case CenterId::X3: return a2 * (b2 + c2 - a2);
        case CenterId::X4: return (a2 + b2 - c2) * (a2 - b2 + c2);
        case CenterId::X6: return a2;
        case CenterId::X7: return (a + b - c) * (a - b + c);
        case CenterId::X8: return b + c - a;
        case CenterId::X20: return -3 * a2 * a2 + 2 * a2 * (b2 + c2) + (b2 - c2) * (b2 - c2);
        case CenterId::X55: return a2 * (b + c - a);
        case CenterId::incenter: return a;
        default: throw Error(ErrorKind::DomainError, "no barycentric table entry");
    }
}

}  // namespace

const char* to_string(CenterId id) {
    for (const auto& n : kNames)
        if (n.id == id) return n.name;
    return "?";
}

std::optional<CenterId> center_id_from_string(const std::string& s) {
    for (const auto& n : kNames)
        if (s == n.name) return n.id;
    return std::nullopt;
}

BaryCoords center_barycentrics(const Triangle& t, CenterId id) {
    double a = t.a, b = t.b, c = t.c;
    switch (id) {
        case CenterId::excenterA: return {-a, b, c};
        case CenterId::excenterB: return {a, -b, c};
        case CenterId::excenterC: return {a, b, -c};
        default: break;
    }
    return {first_coord(id, a, b, c), first_coord(id, b, c, a), first_coord(id, c, a, b)};
}

Point2 classic_center(const Triangle& t, CenterId id) {
    switch (id) {
        case CenterId::X175: {
            auto sc = soddy_centers(t);
            if (!sc.x175) throw Error(ErrorKind::PointAtInfinity, "outer Soddy circle is a line");
            return *sc.x175;
        }
        case CenterId::X176: return soddy_centers(t).x176;
        case CenterId::X478: return center(six_point_conic(build_triad(t, TriadKind::v_ellipse)).conic);
        case CenterId::X5452: return center(six_point_conic(build_triad(t, TriadKind::v_hyperbola)).conic);
        default: return bary_to_cartesian(t, center_barycentrics(t, id));
    }
}

Circle incircle(const Triangle& t) {
    return {bary_to_cartesian(t, {t.a, t.b, t.c}), t.area() / t.p};
}

Circle circumcircle(const Triangle& t) {
    Point2 o = bary_to_cartesian(t, center_barycentrics(t, CenterId::X3));
    return {o, t.a * t.b * t.c / (4 * t.area())};
}

std::array<Circle, 3> excircles(const Triangle& t) {
    double s = t.area();
    return {Circle{bary_to_cartesian(t, {-t.a, t.b, t.c}), s / (t.p - t.a)},
            Circle{bary_to_cartesian(t, {t.a, -t.b, t.c}), s / (t.p - t.b)},
            Circle{bary_to_cartesian(t, {t.a, t.b, -t.c}), s / (t.p - t.c)}};
}

std::array<Point2, 6> excircle_tangency_points(const Triangle& t) {
    const Point2 &A = t.A, &B = t.B, &C = t.C;
    double pa = t.p - t.a, pb = t.p - t.b, pc = t.p - t.c;
    return {B + unit(B - C) * pa, C + unit(C - B) * pa,
            C + unit(C - A) * pb, A + unit(A - C) * pb,
            A + unit(A - B) * pc, B + unit(B - A) * pc};
}

TouchTriangles intouch_extouch(const Triangle& t) {
    const Point2 &A = t.A, &B = t.B, &C = t.C;
    double sa = t.p - t.a, sb = t.p - t.b, sc = t.p - t.c;
    TouchTriangles r;
    r.intouch = {B + unit(C - B) * sb, C + unit(A - C) * sc, A + unit(B - A) * sa};
    r.extouch = {B + unit(C - B) * sc, C + unit(A - C) * sa, A + unit(B - A) * sb};
    return r;
}

std::array<Circle, 3> kissing_circles(const Triangle& t) {
    return {Circle{t.A, t.p - t.a}, Circle{t.B, t.p - t.b}, Circle{t.C, t.p - t.c}};
}

const char* to_string(SoddyRegime r) {
    switch (r) {
        case SoddyRegime::contains: return "contains";
        case SoddyRegime::line: return "line";
        case SoddyRegime::external: return "external";
    }
    return "?";
}

double half_tangent_sum(const Triangle& t) {
    double r = incircle(t).radius;
    return r / (t.p - t.a) + r / (t.p - t.b) + r / (t.p - t.c);
}

Point2 trilaterate(const std::array<Point2, 3>& c, const std::array<double, 3>& d, double tol) {
    // Radical axes of circle pairs (0,1) and (0,2).
    Point2 u = c[1] - c[0], v = c[2] - c[0];
    double ru = 0.5 * (dot(u, u) - d[1] * d[1] + d[0] * d[0]);
    double rv = 0.5 * (dot(v, v) - d[2] * d[2] + d[0] * d[0]);
    double det = cross(u, v);
    if (det == 0) throw Error(ErrorKind::TrilaterationInconsistent, "collinear centers");
    Point2 x = c[0] + Point2{(ru * v.y - rv * u.y) / det, (u.x * rv - v.x * ru) / det};
    double scale = std::max({d[0], d[1], d[2], norm(u), norm(v)});
    for (int i = 0; i < 3; ++i)
        if (std::fabs(distance(x, c[i]) - d[i]) > tol * scale)
            throw Error(ErrorKind::TrilaterationInconsistent, "distance circles do not meet");
    return x;
}

SoddyConfig soddy(const Triangle& t) {
    SoddyConfig s;
    s.kissing = kissing_circles(t);
    std::array<double, 3> r{s.kissing[0].radius, s.kissing[1].radius, s.kissing[2].radius};
    std::array<double, 3> k{1 / r[0], 1 / r[1], 1 / r[2]};
    double ks = k[0] + k[1] + k[2];
    double root = 2 * std::sqrt(k[0] * k[1] + k[1] * k[2] + k[2] * k[0]);
    double k_in = ks + root;
    s.k_out = ks - root;
    std::array<Point2, 3> c{t.A, t.B, t.C};
    double rin = 1 / k_in;
    s.inner = {trilaterate(c, {r[0] + rin, r[1] + rin, r[2] + rin}), rin};
    if (std::fabs(s.k_out) < 1e-10 * ks) {
        s.regime = SoddyRegime::line;
        // n . (A - B) = r_b - r_a, n . (A - C) = r_c - r_a; centers on the same side.
        Point2 u = t.A - t.B, v = t.A - t.C;
        double bu = r[1] - r[0], bv = r[2] - r[0];
        double det = cross(u, v);
        Point2 n{(bu * v.y - bv * u.y) / det, (u.x * bv - v.x * bu) / det};
        n = unit(n);
        double h = dot(n, t.A) + r[0];
        s.outer_line = {n.x, n.y, -h, LineFrame::cartesian};
        s.outer = {Point2{0, 0}, INFINITY};
    } else if (s.k_out < 0) {
        s.regime = SoddyRegime::contains;
        double R = -1 / s.k_out;
        s.outer = {trilaterate(c, {R - r[0], R - r[1], R - r[2]}), R};
    } else {
        s.regime = SoddyRegime::external;
        double R = 1 / s.k_out;
        s.outer = {trilaterate(c, {R + r[0], R + r[1], R + r[2]}), R};
    }
    return s;
}

SoddyCenters soddy_centers(const Triangle& t) {
    SoddyConfig s = soddy(t);
    SoddyCenters out;
    out.x176 = s.inner.center;
    if (s.regime == SoddyRegime::line) {
        out.x175_direction = {s.outer_line.l, s.outer_line.m};
    } else {
        out.x175 = s.outer.center;
        Point2 d = s.outer.center - s.inner.center;
        out.x175_direction = norm(d) > 0 ? unit(d) : Point2{0, 0};
    }
    return out;
}

namespace {
Triangle checked_triangle(const Point2& a, const Point2& b, const Point2& c) {
    try {
        return Triangle(a, b, c);
    } catch (const Error& e) {
        throw Error(ErrorKind::DegenerateResult, e.what());
    }
}

Point2 checked_bary(const Triangle& t, const BaryCoords& q) {
    try {
        return bary_to_cartesian(t, q);
    } catch (const Error& e) {
        throw Error(ErrorKind::DegenerateResult, e.what());
    }
}
}  // namespace

Triangle anticevian_triangle(const Triangle& t, const BaryCoords& q) {
    return checked_triangle(checked_bary(t, {-q.u, q.v, q.w}), checked_bary(t, {q.u, -q.v, q.w}),
                            checked_bary(t, {q.u, q.v, -q.w}));
}

Triangle cevian_triangle(const Triangle& t, const BaryCoords& q) {
    return checked_triangle(checked_bary(t, {0, q.v, q.w}), checked_bary(t, {q.u, 0, q.w}),
                            checked_bary(t, {q.u, q.v, 0}));
}

LineEq sideline(const Triangle& t, int i) {
    switch (i) {
        case 0: return line_through(t.B, t.C);
        case 1: return line_through(t.C, t.A);
        default: return line_through(t.A, t.B);
    }
}

Triangle reflection_triangle(const Triangle& t, const Point2& q) {
    return checked_triangle(reflect_about_line(q, sideline(t, 0)), reflect_about_line(q, sideline(t, 1)),
                            reflect_about_line(q, sideline(t, 2)));
}

Triangle medial_triangle(const Triangle& t) {
    return Triangle(midpoint(t.B, t.C), midpoint(t.C, t.A), midpoint(t.A, t.B));
}

Triangle excentral_triangle(const Triangle& t) {
    auto e = excircles(t);
    return Triangle(e[0].center, e[1].center, e[2].center);
}

}  // namespace triconic
