#include "triconic/loci_regions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>

#include "triconic/numerics.hpp"
#include "triconic/tolerance.hpp"

namespace triconic {

namespace {

constexpr const char* kCurveNames[] = {
    "x478_quartic",           "parabola_deg8_V",
    "covertex_locus_V",       "halftangent_sextic",
    "pstar_circle_functional", "covertex_condition_equilateral_P",
    "phyp_circle_functional", "phyp_parabola_condition",
    "unit_circle",
};

double sq(double v) { return v * v; }

double x478(double x, double y) {
    double r2 = x * x + y * y;
    return 4 * r2 * r2 - 8 * y * y * y - x * x + 2 * y * y;
}

double deg8(double a, double b, double c) {
    double a2 = a * a, b2 = b * b, c2 = c * c;
    double a4 = a2 * a2, b4 = b2 * b2, c4 = c2 * c2;
    double a5 = a4 * a, b5 = b4 * b, c5 = c4 * c;
    return a4 * a4 + b4 * b4 + c4 * c4 - 2 * (a4 * b4 + a4 * c4 + b4 * c4) +
           4 * a * b * c *
               (a5 + b5 + c5 - a4 * b - a * b4 - a4 * c - a * c4 - b * c4 - b4 * c + a2 * a * b * c +
                a * b2 * b * c + a * b * c2 * c);
}

double covertex_v(double x, double y) {
    double r1a = x * x + y * y + 2 * x + 1, r2a = x * x + y * y - 2 * x + 1;
    if (r1a < 0 || r2a < 0) throw Error(ErrorKind::DomainError, "negative radicand");
    double rho1 = std::sqrt(r1a), rho2 = std::sqrt(r2a);
    double x2 = x * x, x4 = x2 * x2, x6 = x4 * x2;
    double y2 = y * y, y4 = y2 * y2, y6 = y4 * y2;
    double t1 = x6 - (2 * y2 + 3) * x4 - (3 * y4 - 8 * y2 - 3) * x2 + 11 * y4 - 6 * y2 - 1;
    double t2 = -2 * x6 - (22 * y2 - 6) * x4 - (14 * y4 - 36 * y2 + 6) * x2 + 6 * y6 + 22 * y4 - 14 * y2 + 2;
    double t3 = 2 * x * (x6 + (3 * y2 - 3) * x4 + (3 * y4 - 2 * y2 + 3) * x2 + y6 - 7 * y4 - y2 - 1);
    double t4 = 2 * (x2 + y2 - 1) * (5 * x4 + 2 * (y2 - 5) * x2 - 3 * y4 - 14 * y2 + 5) * (x2 - 1);
    return t1 * rho1 * rho2 + t2 * (rho1 + rho2) + t3 * (rho1 - rho2) + t4;
}

double sextic(double x, double y) {
    double x2 = x * x, x4 = x2 * x2, x6 = x4 * x2;
    double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y;
    return -4 * x6 - 4 * x4 * (2 * y2 + 2 * y + 1) - 4 * x2 * (y4 + y3 - 4 * y - 5) + 4 * y5 + 13 * y4 +
           20 * y3 + 8 * y2 - 8 * y - 12;
}

double pstar_functional(double a, double b, double c, const std::array<double, 3>& d) {
    double a2 = a * a, b2 = b * b, c2 = c * c;
    double da = d[0] * d[0], db = d[1] * d[1], dc = d[2] * d[2];
    return sq((a2 - da) * (c2 - b2 + db - dc)) + sq((b2 - db) * (a2 - c2 + dc - da)) +
           sq((c2 - dc) * (b2 - a2 + da - db));
}

std::array<double, 3> pstar_brackets(double a, double b, double c, const std::array<double, 3>& d) {
    double a2 = a * a, b2 = b * b, c2 = c * c;
    double da = d[0] * d[0], db = d[1] * d[1], dc = d[2] * d[2];
    return {(a2 - da) * (c2 - b2 + db - dc), (b2 - db) * (a2 - c2 + dc - da), (c2 - dc) * (b2 - a2 + da - db)};
}

std::array<double, 3> phyp_brackets(double a, double b, double c, const std::array<double, 3>& l) {
    double a2 = a * a, b2 = b * b, c2 = c * c;
    double la = l[0] * l[0], lb = l[1] * l[1], lc = l[2] * l[2];
    return {(c2 - lc) * (-a2 + b2 + la - lb), (b2 - lb) * (-a2 + c2 + la - lc), (a2 - la) * (-b2 + c2 + lb - lc)};
}

double phyp_parabola(double a, double b, double c, const std::array<double, 3>& l) {
    double la = l[0] * l[0], lb = l[1] * l[1], lc = l[2] * l[2];
    double a2 = a * a, b2 = b * b, c2 = c * c;
    double mu = sq(a * b * c);
    double r = la / a2 + lb / b2 + lc / c2;
    return sq(c2 * la * lb) + sq(b2 * la * lc) + sq(a2 * lb * lc) +
           mu * (mu * (-3 + 4 * r) + 2 * la * lb * lc * (6 - r) - 6 * (c2 * la * lb + b2 * la * lc + a2 * lb * lc));
}

double equilateral_covertex(const std::array<double, 3>& d) {
    double a = d[0] * d[0], b = d[1] * d[1], c = d[2] * d[2];
    return a * b + a * c + b * c - 8 * (a + b + c) + 48;
}

}  // namespace

const char* to_string(CurveId id) { return kCurveNames[static_cast<int>(id)]; }

std::optional<CurveId> curve_id_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(CurveId::unit_circle); ++i)
        if (s == kCurveNames[i]) return static_cast<CurveId>(i);
    return std::nullopt;
}

CurveContext functional_context(const Triangle& t, const Point2& p, bool hyperbola) {
    CurveContext ctx;
    ctx.x = p.x;
    ctx.y = p.y;
    ctx.a = t.a;
    ctx.b = t.b;
    ctx.c = t.c;
    double pa = distance(p, t.A), pb = distance(p, t.B), pc = distance(p, t.C);
    if (hyperbola) ctx.d = {pb - pc, pc - pa, pa - pb};
    else ctx.d = {pb + pc, pc + pa, pa + pb};
    return ctx;
}

double eval_implicit(CurveId id, const CurveContext& k) {
    switch (id) {
        case CurveId::x478_quartic: return x478(k.x, k.y);
        case CurveId::parabola_deg8_V: return deg8(k.a, k.b, k.c);
        case CurveId::covertex_locus_V: return covertex_v(k.x, k.y);
        case CurveId::halftangent_sextic: return sextic(k.x, k.y);
        case CurveId::pstar_circle_functional: return pstar_functional(k.a, k.b, k.c, k.d);
        case CurveId::covertex_condition_equilateral_P: return equilateral_covertex(k.d);
        case CurveId::phyp_circle_functional: {
            auto r = phyp_brackets(k.a, k.b, k.c, k.d);
            return r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        }
        case CurveId::phyp_parabola_condition: return phyp_parabola(k.a, k.b, k.c, k.d);
        case CurveId::unit_circle: return k.x * k.x + k.y * k.y - 1;
    }
    throw Error(ErrorKind::DomainError, "unknown curve");
}

Triangle equilateral_covertex_triangle() {
    using std::numbers::pi;
    auto at = [](double ang) { return Point2{std::cos(ang), std::sin(ang)}; };
    return Triangle(at(pi / 2), at(pi / 2 + 2 * pi / 3), at(pi / 2 + 4 * pi / 3));
}

ScalarField curve_field(CurveId id, const std::optional<Triangle>& t) {
    switch (id) {
        case CurveId::x478_quartic:
        case CurveId::covertex_locus_V:
        case CurveId::halftangent_sextic:
        case CurveId::unit_circle:
            return [id](const Point2& q) {
                CurveContext k;
                k.x = q.x;
                k.y = q.y;
                return eval_implicit(id, k);
            };
        case CurveId::parabola_deg8_V: {
            Point2 A = t ? t->A : Point2{-1, 0}, B = t ? t->B : Point2{1, 0};
            return [A, B](const Point2& q) { return deg8(distance(q, B), distance(q, A), distance(A, B)); };
        }
        case CurveId::covertex_condition_equilateral_P: {
            Triangle e = equilateral_covertex_triangle();
            return [e](const Point2& q) { return equilateral_covertex(functional_context(e, q, false).d); };
        }
        case CurveId::pstar_circle_functional:
        case CurveId::phyp_circle_functional:
        case CurveId::phyp_parabola_condition: {
            if (!t) throw Error(ErrorKind::DomainError, "curve needs a triangle");
            Triangle tt = *t;
            bool hyp = id != CurveId::pstar_circle_functional;
            return [tt, hyp, id](const Point2& q) { return eval_implicit(id, functional_context(tt, q, hyp)); };
        }
    }
    throw Error(ErrorKind::DomainError, "unknown curve");
}

std::vector<Polyline> trace_zero_set(const ScalarField& f, const BBox& box, int nx, int ny) {
    if (nx < 1 || ny < 1) return {};
    const double dx = (box.xmax - box.xmin) / nx, dy = (box.ymax - box.ymin) / ny;
    auto node = [&](int i, int j) { return Point2{box.xmin + i * dx, box.ymin + j * dy}; };
    std::vector<double> v((nx + 1) * (ny + 1));
    auto val = [&](int i, int j) -> double& { return v[j * (nx + 1) + i]; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            double r;
            try {
                r = f(node(i, j));
            } catch (const Error&) {
                r = NAN;
            }
            val(i, j) = r;
        }
    // Edge ids: horizontal (i,j)-(i+1,j) -> 2*(j*(nx+1)+i); vertical (i,j)-(i,j+1) -> +1.
    std::map<long, int> edge_point;
    std::vector<Point2> pts;
    auto crossing = [&](int i0, int j0, int i1, int j1, long id) -> int {
        double a = val(i0, j0), b = val(i1, j1);
        if (!std::isfinite(a) || !std::isfinite(b) || (a >= 0) == (b >= 0)) return -1;
        auto it = edge_point.find(id);
        if (it != edge_point.end()) return it->second;
        Point2 p0 = node(i0, j0), p1 = node(i1, j1);
        auto g = [&](double s) {
            double r = f(p0 + (p1 - p0) * s);
            return r >= 0 ? 1.0 : -1.0;
        };
        double s = bisect_root(g, 0.0, 1.0, 80);
        pts.push_back(p0 + (p1 - p0) * s);
        edge_point[id] = static_cast<int>(pts.size()) - 1;
        return static_cast<int>(pts.size()) - 1;
    };
    auto hid = [&](int i, int j) { return 2L * (j * (nx + 1) + i); };
    auto vid = [&](int i, int j) { return 2L * (j * (nx + 1) + i) + 1; };
    std::vector<std::pair<int, int>> segs;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int e0 = crossing(i, j, i + 1, j, hid(i, j));
            int e1 = crossing(i + 1, j, i + 1, j + 1, vid(i + 1, j));
            int e2 = crossing(i, j + 1, i + 1, j + 1, hid(i, j + 1));
            int e3 = crossing(i, j, i, j + 1, vid(i, j));
            std::vector<int> e;
            for (int k : {e0, e1, e2, e3})
                if (k >= 0) e.push_back(k);
            if (e.size() == 2) {
                segs.emplace_back(e[0], e[1]);
            } else if (e.size() == 4) {
                double c;
                try {
                    c = f(node(i, j) + Point2{dx / 2, dy / 2});
                } catch (const Error&) {
                    c = 0;
                }
                if ((c >= 0) == (val(i, j) >= 0)) {
                    segs.emplace_back(e0, e1);
                    segs.emplace_back(e2, e3);
                } else {
                    segs.emplace_back(e3, e0);
                    segs.emplace_back(e1, e2);
                }
            }
        }
    std::vector<std::vector<int>> adj(pts.size());
    for (auto [a, b] : segs) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> used(pts.size(), 0);
    std::vector<Polyline> out;
    auto walk = [&](int start) {
        Polyline line;
        int prev = -1, cur = start;
        while (cur >= 0 && !used[cur]) {
            used[cur] = 1;
            line.push_back(pts[cur]);
            int next = -1;
            for (int n : adj[cur])
                if (n != prev && !used[n]) {
                    next = n;
                    break;
                }
            if (next < 0)  // close cycles
                for (int n : adj[cur])
                    if (n == start && prev != start && line.size() > 2) line.push_back(pts[start]);
            prev = cur;
            cur = next;
        }
        if (!line.empty()) out.push_back(std::move(line));
    };
    for (size_t k = 0; k < pts.size(); ++k)
        if (!used[k] && adj[k].size() == 1) walk(static_cast<int>(k));
    for (size_t k = 0; k < pts.size(); ++k)
        if (!used[k]) walk(static_cast<int>(k));
    return out;
}

Point2 x478_center_at(double theta) {
    Triangle t({0.5, 0}, {-0.5, 0}, {0.5 * std::cos(theta), 0.5 * std::sin(theta)});
    auto r = six_point_conic(build_triad(t, TriadKind::v_ellipse));
    return center(r.conic);
}

std::vector<LocusSample> sample_locus_x478(int n, double eps) {
    std::vector<LocusSample> out;
    if (n < 2) return out;
    for (int k = 0; k < n; ++k) {
        double th = eps + (std::numbers::pi - 2 * eps) * k / (n - 1);
        LocusSample s;
        s.parameter = th;
        s.driver = {0.5 * std::cos(th), 0.5 * std::sin(th)};
        s.center = x478_center_at(th);
        s.implicit_residual = std::fabs(x478(s.center.x, s.center.y));
        out.push_back(s);
    }
    return out;
}

std::array<Point2, 5> ostar_arc_points(const Triangle& t, int w) {
    auto v = excircle_tangency_points(t);
    static constexpr int kEnd[3][2] = {{3, 4}, {0, 5}, {1, 2}};
    return {v[kEnd[w][0]], v[kEnd[w][1]], midpoint(t.B, t.C), midpoint(t.C, t.A), midpoint(t.A, t.B)};
}

OstarLocus sample_locus_ostar(const Triangle& t, int n) {
    OstarLocus out;
    for (int w = 0; w < 3; ++w) {
        auto pts = ostar_arc_points(t, w);
        out.ellipses[w] = fit_conic_5pts(pts);
        out.endpoints[w] = {pts[0], pts[1]};
    }
    Circle cc = circumcircle(t);
    for (int k = 0; k < n; ++k) {
        double phi = 2 * std::numbers::pi * (k + 0.5) / n + 0.0137;
        Point2 p = cc.center + Point2{std::cos(phi), std::sin(phi)} * cc.radius;
        bool near_vertex = false;
        for (int i = 0; i < 3; ++i)
            if (distance(p, t.vertex(i)) < 1e-6 * cc.radius) near_vertex = true;
        if (near_vertex) continue;
        int arc = 0;
        for (int w = 0; w < 3; ++w) {
            const Point2& U = t.vertex((w + 1) % 3);
            const Point2& V = t.vertex((w + 2) % 3);
            if ((signed_area(U, V, p) > 0) != (signed_area(U, V, t.vertex(w)) > 0)) arc = w;
        }
        auto r = six_point_conic(build_triad(t, TriadKind::p_ellipse, p));
        LocusSample s;
        s.parameter = phi;
        s.driver = p;
        s.center = center(r.conic);
        s.implicit_residual = residual(out.ellipses[arc], s.center);
        out.samples.push_back(s);
        out.arc.push_back(arc);
    }
    return out;
}

CentralConicShape ellipse_shape(const Conic& c) {
    CentralConicShape s;
    s.center = center(c);
    double f = c.eval(s.center);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c.m.topLeftCorner<2, 2>());
    Eigen::Vector2d ev = es.eigenvalues();
    if (!(ev(0) * ev(1) > 0) || !(-f / ev(0) > 0)) throw Error(ErrorKind::DomainError, "not a real ellipse");
    double s0 = std::sqrt(-f / ev(0)), s1 = std::sqrt(-f / ev(1));
    int major = s0 >= s1 ? 0 : 1;
    s.semi_major = std::max(s0, s1);
    s.semi_minor = std::min(s0, s1);
    s.major_dir = {es.eigenvectors()(0, major), es.eigenvectors()(1, major)};
    return s;
}

EquilateralOstarReport equilateral_ostar_locus_check(double tol) {
    Triangle t = equilateral(1.0);
    EquilateralOstarReport rep;
    auto& cl = rep.claims.claims;
    auto add = [&](std::string name, double r) { cl.push_back({std::move(name), std::isfinite(r) && r <= tol, r}); };
    const char* names[3] = {"a", "b", "c"};
    std::array<Conic, 3> L;
    for (int w = 0; w < 3; ++w) {
        L[w] = fit_conic_5pts(ostar_arc_points(t, w));
        rep.shapes[w] = ellipse_shape(L[w]);
        const auto& s = rep.shapes[w];
        std::string n = names[w];
        const Point2& W = t.vertex(w);
        Point2 mid = midpoint(t.vertex((w + 1) % 3), t.vertex((w + 2) % 3));
        add("L" + n + "_center_at_vertex", distance(s.center, W));
        add("L" + n + "_semi_major", std::fabs(s.semi_major - std::sqrt(3.0) / 2));
        add("L" + n + "_semi_minor", std::fabs(s.semi_minor - std::sqrt(3.0) / 6));
        add("L" + n + "_major_along_altitude", std::fabs(cross(s.major_dir, unit(W - mid))));
        double mres = 0;
        for (int i = 0; i < 3; ++i)
            mres = std::max(mres, residual(L[w], midpoint(t.vertex((i + 1) % 3), t.vertex((i + 2) % 3))));
        add("L" + n + "_through_midpoints", mres);
    }
    const Point2 &A = t.A, &B = t.B, &C = t.C;
    const Conic& Lc = L[2];
    Point2 Ca = reflect_about_point(midpoint(B, C), C);
    Point2 Cb = reflect_about_point(midpoint(C, A), C);
    auto ends = ostar_arc_points(t, 2);
    add("Ca_Cb_are_arc_endpoints", std::max(distance(Ca, ends[0]), distance(Cb, ends[1])));
    add("Ca_Cb_on_Lc", std::max(residual(Lc, Ca), residual(Lc, Cb)));
    LineEq la = line_through(A, Ca), lb = line_through(B, Cb);
    add("A_Ca_tangent", std::fabs(line_conic_discriminant(Lc, la)));
    add("B_Cb_tangent", std::fabs(line_conic_discriminant(Lc, lb)));
    Point2 Cab = line_intersection(la, lb);
    Point2 Cp = midpoint(C, Cab);
    add("Cprime_on_Lc", residual(Lc, Cp));
    add("Cprime_is_major_vertex", std::fabs(distance(Cp, rep.shapes[2].center) - rep.shapes[2].semi_major));
    add("area_ratio_3", std::fabs(std::fabs(signed_area(A, Cab, B)) / t.area() - 3.0));
    return rep;
}

namespace {

struct StartResult {
    Point2 p;
    double rel = INFINITY;
};

std::vector<Point2> start_points(const Triangle& t, int jittered) {
    Point2 g = (t.A + t.B + t.C) / 3.0;
    std::vector<Point2> s{g, incircle(t).center, circumcircle(t).center};
    double d = t.diameter();
    for (int k = 0; k < jittered; ++k) {
        double ang = 2 * std::numbers::pi * k / jittered + 0.3;
        double rad = (k % 2 ? 0.45 : 0.25) * d;
        s.push_back(g + Point2{std::cos(ang), std::sin(ang)} * rad);
    }
    return s;
}

bool near_vertex(const Triangle& t, const Point2& p, double frac) {
    for (int i = 0; i < 3; ++i)
        if (distance(p, t.vertex(i)) < frac * t.diameter()) return true;
    return false;
}

// Multi-start minimization of a sum of three squared brackets over P.
constexpr std::size_t kGridStarts = 8;

std::vector<StartResult> minimize_brackets(const Triangle& t, bool hyperbola, int jittered) {
    double d = t.diameter();
    double s4 = std::pow(d, 4);
    auto brackets = [&](double x, double y) {
        CurveContext k = functional_context(t, {x, y}, hyperbola);
        auto r = hyperbola ? phyp_brackets(k.a, k.b, k.c, k.d) : pstar_brackets(k.a, k.b, k.c, k.d);
        return std::array<double, 3>{r[0] / s4, r[1] / s4, r[2] / s4};
    };
    auto objective = [&](double x, double y) {
        auto r = brackets(x, y);
        // Square root of the functional: flatter valley floor, better conditioned for the simplex.
        return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    };

    // Local minima of the objective on a coarse grid catch zeros close to a vertex, which the
    // fixed starts tend to miss.
    std::vector<Point2> starts = start_points(t, jittered);
    {
        constexpr int n = 64;
        Point2 g = (t.A + t.B + t.C) / 3.0;
        double h = 4.0 * d / n;
        std::vector<double> v((n + 1) * (n + 1));
        auto at = [&](int i, int j) { return g + Point2{(i - n / 2) * h, (j - n / 2) * h}; };
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                double o = objective(at(i, j).x, at(i, j).y);
                v[i * (n + 1) + j] = std::isfinite(o) ? o : INFINITY;
            }
        std::vector<std::pair<double, Point2>> minima;
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                double c = v[i * (n + 1) + j];
                bool local = true;
                for (int di = -1; di <= 1 && local; ++di)
                    for (int dj = -1; dj <= 1; ++dj)
                        if ((di || dj) && v[(i + di) * (n + 1) + j + dj] < c) local = false;
                if (local && !near_vertex(t, at(i, j), 0.2 * h / d)) minima.push_back({c, at(i, j)});
            }
        std::sort(minima.begin(), minima.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; k < std::min<std::size_t>(minima.size(), kGridStarts); ++k)
            starts.push_back(minima[k].second);
        while (starts.size() < start_points(t, jittered).size() + kGridStarts) starts.push_back(g);
    }
    // Zeros in narrow valleys: crossings of the first bracket's zero set with sign changes of
    // the second, refined directly.
    {
        Point2 g = (t.A + t.B + t.C) / 3.0;
        BBox box{g.x - 2 * d, g.x + 2 * d, g.y - 2 * d, g.y + 2 * d};
        auto lines = trace_zero_set([&](const Point2& p) { return brackets(p.x, p.y)[0]; }, box, 160, 160);
        for (const auto& line : lines)
            for (std::size_t k = 1; k < line.size(); ++k) {
                double u = brackets(line[k - 1].x, line[k - 1].y)[1], v = brackets(line[k].x, line[k].y)[1];
                if ((u < 0) != (v < 0) && !near_vertex(t, line[k], 1e-3)) starts.push_back(midpoint(line[k - 1], line[k]));
            }
    }
    std::size_t fixed = start_points(t, jittered).size();
    std::vector<StartResult> out;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const Point2& s = starts[k];
        std::array<double, 2> x0{s.x, s.y};
        if (k < fixed + kGridStarts) x0 = nelder_mead(objective, x0, (k < fixed ? 0.1 : 0.02) * d, 200, 1e-10 * d).x;
        auto x = least_squares_refine(brackets, x0);
        StartResult r;
        r.p = {x[0], x[1]};
        auto b = brackets(x[0], x[1]);
        r.rel = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        out.push_back(r);
    }
    return out;
}

PStarResult finish_pstar(const Triangle& t, const Point2& p, bool hyperbola) {
    PStarResult r;
    r.point = p;
    CurveId id = hyperbola ? CurveId::phyp_circle_functional : CurveId::pstar_circle_functional;
    r.functional = eval_implicit(id, functional_context(t, p, hyperbola));
    r.rel_functional = r.functional / std::pow(t.diameter(), 8);
    auto rep = six_point_conic(build_triad(t, hyperbola ? TriadKind::p_hyperbola : TriadKind::p_ellipse, p));
    r.klass = rep.klass;
    Circle cc = circumcircle(t);
    r.center_offset = rep.center ? distance(*rep.center, cc.center) / cc.radius : INFINITY;
    return r;
}

constexpr double kConverged = 1e-24;  // relative functional (diameter^8 units)
constexpr double kVertexGuard = 1e-3;

}  // namespace

PStarResult find_pstar(const Triangle& t) {
    auto res = minimize_brackets(t, false, 6);
    std::vector<Point2> good;
    const StartResult* best = nullptr;
    for (const auto& r : res) {
        if (!(r.rel <= kConverged) || near_vertex(t, r.p, kVertexGuard)) continue;
        good.push_back(r.p);
        if (!best || r.rel < best->rel) best = &r;
    }
    if (!best) throw Error(ErrorKind::NotConverged, "no start converged to a non-vertex zero");
    PStarResult out = finish_pstar(t, best->p, false);
    out.converged_starts = static_cast<int>(good.size());
    for (const auto& a : good)
        for (const auto& b : good) out.start_spread = std::max(out.start_spread, distance(a, b) / t.diameter());
    return out;
}

PStarPair find_phyp_circle_points(const Triangle& t) {
    auto res = minimize_brackets(t, true, 10);
    std::vector<StartResult> zeros;
    for (const auto& r : res) {
        if (!(r.rel <= kConverged) || near_vertex(t, r.p, kVertexGuard)) continue;
        bool dup = false;
        for (auto& z : zeros)
            if (distance(z.p, r.p) <= 1e-6 * t.diameter()) {
                dup = true;
                if (r.rel < z.rel) z = r;
            }
        if (!dup) zeros.push_back(r);
    }
    if (zeros.empty()) throw Error(ErrorKind::NotConverged, "no start converged to a non-vertex zero");
    std::sort(zeros.begin(), zeros.end(), [](const auto& a, const auto& b) {
        return a.p.x != b.p.x ? a.p.x < b.p.x : a.p.y < b.p.y;
    });
    Point2 first = zeros[0].p, second;
    if (zeros.size() >= 2) {
        second = zeros[1].p;
    } else {
        // The partner is the second common point of the first zero's triad.
        try {
            second = second_common_point(build_triad(t, TriadKind::p_hyperbola, first));
        } catch (const Error& e) {
            throw Error(ErrorKind::NotConverged, std::string("partner point not found: ") + e.what());
        }
        double s4 = std::pow(t.diameter(), 4);
        auto brackets = [&](double x, double y) {
            CurveContext k = functional_context(t, {x, y}, true);
            auto r = phyp_brackets(k.a, k.b, k.c, k.d);
            return std::array<double, 3>{r[0] / s4, r[1] / s4, r[2] / s4};
        };
        auto x = least_squares_refine(brackets, {second.x, second.y});
        second = {x[0], x[1]};
    }
    PStarPair out{finish_pstar(t, first, true), finish_pstar(t, second, true)};
    out.first.converged_starts = out.second.converged_starts = static_cast<int>(zeros.size());
    return out;
}

const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::v_ellipse_over_C: return "v_ellipse_over_C";
        case RegionKind::p_ellipse_over_P: return "p_ellipse_over_P";
        case RegionKind::p_hyperbola_over_P: return "p_hyperbola_over_P";
    }
    return "?";
}

std::optional<RegionKind> region_kind_from_string(const std::string& s) {
    for (auto k : {RegionKind::v_ellipse_over_C, RegionKind::p_ellipse_over_P, RegionKind::p_hyperbola_over_P})
        if (s == to_string(k)) return k;
    if (s == "v-ell") return RegionKind::v_ellipse_over_C;
    if (s == "p-ell") return RegionKind::p_ellipse_over_P;
    if (s == "p-hyp") return RegionKind::p_hyperbola_over_P;
    return std::nullopt;
}

Point2 RegionGrid::cell_center(int ix, int iy) const {
    double dx = (bbox.xmax - bbox.xmin) / nx, dy = (bbox.ymax - bbox.ymin) / ny;
    return {bbox.xmin + (ix + 0.5) * dx, bbox.ymax - (iy + 0.5) * dy};
}

std::optional<SixPointConicReport> region_conic(const Triangle& t, RegionKind kind, const Point2& q) {
    try {
        switch (kind) {
            case RegionKind::v_ellipse_over_C:
                return six_point_conic(build_triad(Triangle(t.A, t.B, q), TriadKind::v_ellipse));
            case RegionKind::p_ellipse_over_P:
                return six_point_conic(build_triad(t, TriadKind::p_ellipse, q));
            case RegionKind::p_hyperbola_over_P:
                return six_point_conic(build_triad(t, TriadKind::p_hyperbola, q));
        }
    } catch (const Error&) {
    }
    return std::nullopt;
}

RegionGrid region_map(const Triangle& t, RegionKind kind, const BBox& box, int nx, int ny, int threads) {
    RegionGrid g;
    g.bbox = box;
    g.nx = nx;
    g.ny = ny;
    g.cells.assign(static_cast<size_t>(nx) * ny, ConicKind::degenerate_two_lines);
    g.failed.assign(static_cast<size_t>(nx) * ny, 0);
    double dx = (box.xmax - box.xmin) / nx, dy = (box.ymax - box.ymin) / ny;
    // Corner conics, row 0 at ymax.
    std::vector<std::optional<Conic>> corner(static_cast<size_t>(nx + 1) * (ny + 1));
    auto corner_at = [&](int i, int j) -> std::optional<Conic>& { return corner[static_cast<size_t>(j) * (nx + 1) + i]; };
    auto run_rows = [&](int rows, auto&& body) {
        int n = std::max(1, threads);
        std::vector<std::thread> pool;
        for (int w = 0; w < n; ++w)
            pool.emplace_back([&, w] {
                for (int r = w; r < rows; r += n) body(r);
            });
        for (auto& th : pool) th.join();
    };
    run_rows(ny + 1, [&](int j) {
        for (int i = 0; i <= nx; ++i) {
            auto r = region_conic(t, kind, {box.xmin + i * dx, box.ymax - j * dy});
            if (r) corner_at(i, j) = r->conic;
        }
    });
    run_rows(ny, [&](int j) {
        for (int i = 0; i < nx; ++i) {
            size_t idx = static_cast<size_t>(j) * nx + i;
            auto rc = region_conic(t, kind, g.cell_center(i, j));
            if (!rc) {
                g.failed[idx] = 1;
                g.cells[idx] = ConicKind::degenerate_two_lines;
                continue;
            }
            const Conic& ref = rc->conic;
            double d0 = aligned_det(ref, ref, rc->frame), q0 = normalized_disc(ref, rc->frame);
            bool det_change = false, disc_change = false;
            for (auto [ci, cj] : {std::pair{i, j}, {i + 1, j}, {i, j + 1}, {i + 1, j + 1}}) {
                const auto& c = corner_at(ci, cj);
                if (!c) continue;
                double d = aligned_det(*c, ref, rc->frame), q = normalized_disc(*c, rc->frame);
                if ((d < 0) != (d0 < 0)) det_change = true;
                if ((q < 0) != (q0 < 0)) disc_change = true;
            }
            // The P-hyperbola det has a double zero on the sideline extensions: no sign change to see,
            // so probe the sideline points inside the cell directly.
            if (!det_change && kind == RegionKind::p_hyperbola_over_P) {
                Point2 c = g.cell_center(i, j);
                for (int s = 0; s < 3 && !det_change; ++s) {
                    Point2 q = project_onto_line(c, sideline(t, s));
                    if (std::fabs(q.x - c.x) > 0.5 * dx || std::fabs(q.y - c.y) > 0.5 * dy) continue;
                    auto probe = region_conic(t, kind, q);
                    det_change = !probe || is_degenerate(probe->klass) ||
                                 std::fabs(normalized_det(probe->conic, probe->frame)) <= 1e-9;
                }
            }
            ConicKind k = rc->klass;
            if (det_change && !is_degenerate(k)) {
                if (q0 < -kParabolaDisc) k = ConicKind::degenerate_two_lines;
                else if (q0 > kParabolaDisc) k = ConicKind::degenerate_point;
                else k = ConicKind::degenerate_parallel_lines;
            } else if (!det_change && disc_change && !is_degenerate(k)) {
                k = ConicKind::parabola;
            }
            g.cells[idx] = k;
        }
    });
    return g;
}

double six_point_determinant(const std::array<Point2, 6>& pts) {
    NormFrame f = frame_of(pts);
    Eigen::Matrix<double, 6, 6> m;
    for (int i = 0; i < 6; ++i) {
        Point2 q = (pts[i] - f.origin) / f.scale;
        m.row(i) << q.x * q.x, q.x * q.y, q.y * q.y, q.x, q.y, 1.0;
    }
    return m.determinant();
}

namespace {

ConicTriad covertex_triad(TriadKind kind, const Point2& driver) {
    if (kind == TriadKind::v_ellipse) return build_triad(Triangle({-1, 0}, {1, 0}, driver), TriadKind::v_ellipse);
    if (kind == TriadKind::p_ellipse) return build_triad(equilateral_covertex_triangle(), TriadKind::p_ellipse, driver);
    throw Error(ErrorKind::DomainError, "co-vertex checks cover v_ellipse and equilateral p_ellipse");
}

int hyperbola_branch_split(const Conic& c, const std::array<Point2, 6>& pts) {
    Point2 o = center(c);
    double f = c.eval(o);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c.m.topLeftCorner<2, 2>());
    // Transverse axis: eigenvalue whose sign is opposite to the value at the center.
    int k = (es.eigenvalues()(0) * f < 0) ? 0 : 1;
    Point2 e{es.eigenvectors()(0, k), es.eigenvectors()(1, k)};
    int pos = 0;
    for (const auto& p : pts)
        if (dot(p - o, e) > 0) ++pos;
    return std::max(pos, 6 - pos);
}

}  // namespace

CovertexReport covertex_conic_check(TriadKind kind, const Point2& driver, double tol) {
    ConicTriad tr = covertex_triad(kind, driver);
    auto cv = triad_covertices(tr);
    CovertexReport r;
    r.driver = driver;
    CurveContext k;
    k.x = driver.x;
    k.y = driver.y;
    if (kind == TriadKind::v_ellipse) {
        r.implicit_value = eval_implicit(CurveId::covertex_locus_V, k);
    } else {
        r.implicit_value =
            eval_implicit(CurveId::covertex_condition_equilateral_P, functional_context(tr.t, driver, false));
    }
    r.incidence_det = six_point_determinant(cv);
    auto fit = six_point_fit(cv);
    r.residual6 = fit.residual6;
    r.klass = fit.klass;
    r.center = fit.center;
    if (r.residual6 > tol)
        throw Error(ErrorKind::DriverNotOnLocus,
                    "co-vertex residual " + std::to_string(r.residual6) + " exceeds tolerance");
    if (kind == TriadKind::p_ellipse && r.center) {
        Circle in = incircle(tr.t);
        r.incircle_offset = std::fabs(distance(*r.center, in.center) - in.radius);
    }
    if (r.klass == ConicKind::hyperbola || r.klass == ConicKind::rectangular_hyperbola)
        r.branch_split = hyperbola_branch_split(fit.conic, cv);
    return r;
}

Point2 find_covertex_driver(TriadKind kind, double phi, double rmin, double rmax) {
    Point2 dir{std::cos(phi), std::sin(phi)};
    std::function<double(double)> g;
    if (kind == TriadKind::v_ellipse) {
        g = [&](double r) { return six_point_determinant(triad_covertices(covertex_triad(kind, dir * r))); };
    } else if (kind == TriadKind::p_ellipse) {
        Triangle e = equilateral_covertex_triangle();
        g = [&, e](double r) {
            return eval_implicit(CurveId::covertex_condition_equilateral_P, functional_context(e, dir * r, false));
        };
    } else {
        throw Error(ErrorKind::DomainError, "unsupported kind");
    }
    const int steps = 400;
    double prev_r = rmin, prev = g(rmin);
    for (int i = 1; i <= steps; ++i) {
        double r = rmin + (rmax - rmin) * i / steps;
        double v;
        try {
            v = g(r);
        } catch (const Error&) {
            prev = NAN;
            prev_r = r;
            continue;
        }
        if (std::isfinite(prev) && (v < 0) != (prev < 0)) {
            double root = bisect_root([&](double s) { return g(s) < 0 ? -1.0 : 1.0; }, prev_r, r, 100);
            return dir * root;
        }
        prev = v;
        prev_r = r;
    }
    throw Error(ErrorKind::NotFound, "no sign change along the ray");
}

X55Report x55_conjecture_check(const Triangle& t) {
    Point2 x55 = classic_center(t, CenterId::X55);
    Triangle tp = reflection_triangle(t, x55);
    X55Report r{0, 0, 0, std::nullopt, x55, tp};
    ConicTriad tr = build_triad(tp, TriadKind::p_hyperbola, x55);
    auto v = triad_vertices(tr);
    Circle cc = circumcircle(tp);
    double lo = INFINITY, hi = 0;
    for (const auto& p : v) {
        double d = distance(p, cc.center);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    r.circle_spread = (hi - lo) / cc.radius;
    auto fit = six_point_conic(tr);
    r.center_offset = fit.center ? distance(*fit.center, cc.center) / cc.radius : INFINITY;
    r.x7_offset = distance(cc.center, classic_center(t, CenterId::X7)) / cc.radius;
    try {
        r.second_point = second_common_point(tr);
    } catch (const Error&) {
    }
    return r;
}

}  // namespace triconic
