#include "triconic/core_geometry.hpp"

#include <algorithm>

#include "triconic/tolerance.hpp"

namespace triconic {

double distance(const Point2& p, const Point2& q) { return norm(p - q); }

double signed_area(const Point2& p, const Point2& q, const Point2& r) {
    return 0.5 * cross(q - p, r - p);
}

Triangle::Triangle(const Point2& a_, const Point2& b_, const Point2& c_) : A(a_), B(b_), C(c_) {
    if (!is_finite(A) || !is_finite(B) || !is_finite(C))
        throw Error(ErrorKind::DegenerateTriangle, "non-finite vertex");
    a = distance(B, C);
    b = distance(C, A);
    c = distance(A, B);
    p = 0.5 * (a + b + c);
    double d = std::max({a, b, c});
    if (d == 0 || std::fabs(signed_area(A, B, C)) <= 1e-12 * d * d)
        throw Error(ErrorKind::DegenerateTriangle, "collinear vertices");
}

double Triangle::diameter() const { return std::max({a, b, c}); }

Triangle equilateral(double side) {
    double h = side * std::sqrt(3.0) / 2;
    return Triangle({-side / 2, 0}, {side / 2, 0}, {0, h});
}

BaryCoords BaryCoords::normalized() const {
    double m = std::max({std::fabs(u), std::fabs(v), std::fabs(w)});
    if (m == 0) return *this;
    double eps = 1e-12 * m;
    double first = std::fabs(u) > eps ? u : (std::fabs(v) > eps ? v : w);
    double s = (first < 0 ? -1.0 : 1.0) / m;
    return {u * s, v * s, w * s};
}

bool projectively_equal(const BaryCoords& p, const BaryCoords& q, double tol) {
    // Sign taken from the largest entry of p, so rounding noise in a near-zero entry cannot flip it.
    double mp = std::max({std::fabs(p.u), std::fabs(p.v), std::fabs(p.w)});
    double mq = std::max({std::fabs(q.u), std::fabs(q.v), std::fabs(q.w)});
    if (mp == 0 || mq == 0) return mp == mq;
    auto close = [&](double s) {
        return std::fabs(p.u / mp - s * q.u / mq) <= tol && std::fabs(p.v / mp - s * q.v / mq) <= tol &&
               std::fabs(p.w / mp - s * q.w / mq) <= tol;
    };
    return close(1.0) || close(-1.0);
}

Point2 bary_to_cartesian(const Triangle& t, const BaryCoords& b) {
    double s = b.u + b.v + b.w;
    double m = std::max({std::fabs(b.u), std::fabs(b.v), std::fabs(b.w)});
    if (m == 0 || std::fabs(s) <= 1e-14 * m)
        throw Error(ErrorKind::PointAtInfinity, "barycentric coordinates sum to zero");
    return (t.A * b.u + t.B * b.v + t.C * b.w) / s;
}

BaryCoords cartesian_to_bary(const Triangle& t, const Point2& p) {
    return {signed_area(p, t.B, t.C), signed_area(t.A, p, t.C), signed_area(t.A, t.B, p)};
}

LineEq line_bary_to_cartesian(const Triangle& t, const LineEq& l) {
    if (l.frame == LineFrame::cartesian) return l;
    // Barycentrics are affine in (x, y): x_i = (alpha_i x + beta_i y + gamma_i) / (2 area).
    double s2 = 2 * signed_area(t.A, t.B, t.C);
    const Point2* P[3] = {&t.B, &t.C, &t.A};
    const Point2* Q[3] = {&t.C, &t.A, &t.B};
    double coef[3] = {l.l, l.m, l.n};
    LineEq out;
    for (int i = 0; i < 3; ++i) {
        // 2*signed_area(X, P, Q) = (P - X) x (Q - X) = alpha x + beta y + gamma
        double alpha = P[i]->y - Q[i]->y;
        double beta = Q[i]->x - P[i]->x;
        double gamma = cross(*P[i], *Q[i]);
        out.l += coef[i] * alpha / s2;
        out.m += coef[i] * beta / s2;
        out.n += coef[i] * gamma / s2;
    }
    return out;
}

LineEq line_through(const Point2& p, const Point2& q) {
    return {p.y - q.y, q.x - p.x, cross(p, q), LineFrame::cartesian};
}

Point2 line_intersection(const LineEq& l1, const LineEq& l2) {
    double x = l1.m * l2.n - l1.n * l2.m;
    double y = l1.n * l2.l - l1.l * l2.n;
    double w = l1.l * l2.m - l1.m * l2.l;
    double n1 = std::hypot(l1.l, l1.m), n2 = std::hypot(l2.l, l2.m);
    if (n1 == 0 || n2 == 0 || std::fabs(w) <= 1e-14 * n1 * n2)
        throw Error(ErrorKind::ParallelLines, "lines do not meet at a finite point");
    return {x / w, y / w};
}

double point_line_distance(const Point2& p, const LineEq& l) {
    return std::fabs(l.l * p.x + l.m * p.y + l.n) / std::hypot(l.l, l.m);
}

Point2 project_onto_line(const Point2& p, const LineEq& l) {
    double n2 = l.l * l.l + l.m * l.m;
    double d = (l.l * p.x + l.m * p.y + l.n) / n2;
    return {p.x - d * l.l, p.y - d * l.m};
}

bool collinear(const Point2& p, const Point2& q, const Point2& r, double tol) {
    if (tol < 0) tol = default_tol();
    double d = std::max({distance(p, q), distance(q, r), distance(r, p)});
    if (d == 0) return true;
    return std::fabs(2 * signed_area(p, q, r)) <= tol * d * d;
}

bool concurrent(const LineEq& l1, const LineEq& l2, const LineEq& l3, double tol) {
    if (tol < 0) tol = default_tol();
    auto unitize = [](LineEq l) {
        double n = std::hypot(l.l, l.m);
        return LineEq{l.l / n, l.m / n, l.n / n, l.frame};
    };
    LineEq a = unitize(l1), b = unitize(l2), c = unitize(l3);
    Point2 x;
    try {
        x = line_intersection(a, b);
    } catch (const Error&) {
        // Parallel pair: concurrent at infinity iff the third is parallel too.
        return std::fabs(cross({a.l, a.m}, {c.l, c.m})) <= tol;
    }
    double scale = std::max({norm(x), std::fabs(a.n), std::fabs(b.n), std::fabs(c.n)});
    if (scale == 0) return true;
    return point_line_distance(x, c) <= tol * scale;
}

Point2 reflect_about_point(const Point2& p, const Point2& center) { return center * 2.0 - p; }

Point2 reflect_about_line(const Point2& p, const LineEq& l) {
    return reflect_about_point(p, project_onto_line(p, l));
}

}  // namespace triconic
