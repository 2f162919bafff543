#include "triconic/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "triconic/appendix.hpp"
#include "triconic/numerics.hpp"
#include "triconic/random.hpp"
#include "triconic/tolerance.hpp"

namespace triconic {

using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TrialOutcome blank(std::size_t n) { return {std::vector<double>(n, NAN), {}}; }

double indicator(bool ok) { return ok ? 0.0 : 1.0; }

TrialInput tri_only(std::mt19937_64& g) { return {random_triangle(g), std::nullopt, 0}; }

TrialInput tri_point(std::mt19937_64& g) {
    Triangle t = random_triangle(g);
    Point2 p = random_point(g, t);
    return {t, p, 0};
}

Point2 rotate(const Point2& v, double ang) {
    double c = std::cos(ang), s = std::sin(ang);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Relative radial spread of points about a center.
double radial_spread(const std::array<Point2, 6>& pts, const Point2& o, double scale) {
    double lo = INFINITY, hi = 0;
    for (const auto& p : pts) {
        double d = distance(p, o);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return (hi - lo) / scale;
}

double claim_max(const ClaimReport& r, const std::string& needle) {
    double m = NAN;
    for (const auto& c : r.claims)
        if (c.claim.find(needle) != std::string::npos) m = std::isnan(m) ? c.residual : std::max(m, c.residual);
    return m;
}

std::vector<double> scalar_roots(const std::function<double(double)>& f, double r0, double r1, int steps) {
    std::vector<double> roots;
    double prev_r = r0, prev = f(r0);
    for (int i = 1; i <= steps; ++i) {
        double r = r0 + (r1 - r0) * i / steps;
        double v = f(r);
        if (std::isfinite(prev) && std::isfinite(v) && (v < 0) != (prev < 0))
            roots.push_back(bisect_root(f, prev_r, r, 200));
        prev = v;
        prev_r = r;
    }
    return roots;
}

// Sign changes of det m along a path. A fitted conic is defined up to sign, so each matrix is
// oriented against its predecessor before the sign of det is compared.
std::vector<double> det_roots(const std::function<std::optional<Conic>(double)>& build, double r0, double r1,
                              int steps) {
    std::vector<double> roots;
    std::optional<Eigen::Matrix3d> prev;
    double prev_r = r0, prev_det = 0;
    for (int i = 0; i <= steps; ++i) {
        double r = r0 + (r1 - r0) * i / steps;
        auto c = build(r);
        if (!c) {
            prev.reset();
            continue;
        }
        Eigen::Matrix3d m = c->m;
        if (prev && m.cwiseProduct(*prev).sum() < 0) m = -m;
        double d = m.determinant();
        if (prev && (d < 0) != (prev_det < 0)) {
            Eigen::Matrix3d ref = *prev;
            auto f = [&](double s) {
                auto cc = build(s);
                if (!cc) return kNaN;
                Eigen::Matrix3d mm = cc->m;
                if (mm.cwiseProduct(ref).sum() < 0) mm = -mm;
                return mm.determinant();
            };
            roots.push_back(bisect_root(f, prev_r, r, 200));
        }
        prev = m;
        prev_det = d;
        prev_r = r;
    }
    return roots;
}

double nearest_gap(const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0;
    for (double a : from) {
        double best = INFINITY;
        for (double b : to) best = std::min(best, std::fabs(a - b));
        worst = std::max(worst, best);
    }
    return worst;
}

std::optional<Conic> try_conic(const std::function<ConicTriad()>& make) {
    try {
        return six_point_conic(make()).conic;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::array<double, 3> lambdas_of(const Triangle& t, const Point2& p) {
    double pa = distance(p, t.A), pb = distance(p, t.B), pc = distance(p, t.C);
    return {pb - pc, pc - pa, pa - pb};
}

// Six-point incidence and Carnot product for a triad.
TrialOutcome six_point_outcome(const ConicTriad& tr) {
    TrialOutcome o = blank(2);
    auto r = six_point_conic(tr);
    o.residuals[0] = r.residual6;
    o.residuals[1] = std::fabs(r.carnot_product - 1);
    o.stats[std::string("class_") + to_string(r.klass)] = 1;
    return o;
}

// Triangle with a right angle at C, C on the Thales circle of a random AB at angle param.
TrialInput right_triangle(std::mt19937_64& g) {
    Point2 m{uniform(g, -0.5, 0.5), uniform(g, -0.5, 0.5)};
    double r = uniform(g, 0.3, 1.0), al = uniform(g, 0, 2 * kPi), phi = uniform(g, 0.15, kPi - 0.15);
    Point2 u{std::cos(al), std::sin(al)};
    Point2 A = m - u * r, B = m + u * r, C = m + rotate(u, phi) * r;
    return {Triangle(A, B, C), std::nullopt, phi};
}

// C on a ray from the origin with A = (-1, 0), B = (1, 0).
TrialInput ray_from_origin(std::mt19937_64& g, double lo, double hi) {
    double phi = uniform(g, lo, hi);
    return {Triangle({-1, 0}, {1, 0}, {std::cos(phi), std::sin(phi)}), std::nullopt, phi};
}

Point2 ray_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

// C on the ray at phi where the half-tangent sextic vanishes, if any.
std::optional<Point2> sextic_point(double phi) {
    Point2 d = ray_dir(phi);
    auto f = curve_field(CurveId::halftangent_sextic);
    auto roots = scalar_roots([&](double r) { return f(d * r); }, 0.05, 6.0, 600);
    if (roots.empty()) return std::nullopt;
    return d * roots.front();
}

// P on the circumcircle at angle param (measured from the circumcenter).
Point2 on_circumcircle(const Triangle& t, double theta) {
    Circle cc = circumcircle(t);
    return cc.center + ray_dir(theta) * cc.radius;
}

double vertex_angle_gap(const Triangle& t, double theta) {
    Circle cc = circumcircle(t);
    double gap = INFINITY;
    for (int i = 0; i < 3; ++i) {
        Point2 v = t.vertex(i) - cc.center;
        double d = std::fabs(std::remainder(theta - std::atan2(v.y, v.x), 2 * kPi));
        gap = std::min(gap, d);
    }
    return gap;
}

TrialInput tri_circumcircle(std::mt19937_64& g, double min_gap) {
    Triangle t = random_triangle(g);
    for (;;) {
        double th = uniform(g, 0, 2 * kPi);
        if (vertex_angle_gap(t, th) >= min_gap) return {t, on_circumcircle(t, th), th};
    }
}

TrialInput isosceles(std::mt19937_64& g) {
    double h = uniform(g, 0.3, 2.5), s = uniform(g, 0.5, 2.0), al = uniform(g, 0, 2 * kPi);
    Point2 o{uniform(g, -0.5, 0.5), uniform(g, -0.5, 0.5)};
    auto place = [&](Point2 p) { return o + rotate(p * s, al); };
    return {Triangle(place({0, h}), place({-1, 0}), place({1, 0})), std::nullopt, h};
}

// Barycentric Privalov conic of the V-hyperbola vertices.
Conic privalov_conic(const Triangle& t) {
    double a = t.a, b = t.b, c = t.c;
    double k1 = a - b - c, k2 = a + b - c, k3 = a - b + c, k4 = a * a + b * b + c * c;
    Eigen::Matrix3d m;
    double d = k1 * k2 * k3;
    m << d, k2 * (k4 - 2 * a * b), k3 * (k4 - 2 * a * c), k2 * (k4 - 2 * a * b), d, -k1 * (k4 - 2 * b * c),
        k3 * (k4 - 2 * a * c), -k1 * (k4 - 2 * b * c), d;
    return Conic(m, ConicFrame::barycentric);
}

double bary_conic_residual(const Conic& cb, const Triangle& t, const Point2& p) {
    BaryCoords q = cartesian_to_bary(t, p);
    Eigen::Vector3d v(q.u, q.v, q.w);
    v /= v.sum();
    double val = v.dot(cb.m * v);
    double scale = (cb.m.cwiseAbs() * v.cwiseAbs()).dot(v.cwiseAbs());
    return std::fabs(val) / scale;
}

double projective_distance(const Conic& c1, const Conic& c2) {
    return std::min((c1.m - c2.m).norm(), (c1.m + c2.m).norm());
}

std::vector<Proposition> build_manifest() {
    std::vector<Proposition> M;
    auto add = [&](Proposition p) { M.push_back(std::move(p)); };

    // ---- V-ellipses ----
    add({"vell.six-point-conic", PropKind::claim,
         "V-ellipses are centered at the side midpoints; their vertices are the excircle tangency points and lie on a conic",
         100, false,
         {{"six_point_incidence", 1e-8}, {"carnot_product", 1e-10}, {"centers_at_midpoints", 1e-12},
          {"vertices_are_excircle_tangency_points", 1e-10}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             ConicTriad tr = build_triad(in.t, TriadKind::v_ellipse);
             TrialOutcome o = six_point_outcome(tr);
             o.residuals.resize(4);
             double c = 0, v = 0;
             auto vs = triad_vertices(tr);
             auto ex = excircle_tangency_points(in.t);
             for (int i = 0; i < 3; ++i) {
                 Point2 mid = midpoint(in.t.vertex((i + 1) % 3), in.t.vertex((i + 2) % 3));
                 c = std::max(c, distance(tr.conics[i].center(), mid));
                 double same = std::max(distance(vs[2 * i], ex[2 * i]), distance(vs[2 * i + 1], ex[2 * i + 1]));
                 double swap = std::max(distance(vs[2 * i], ex[2 * i + 1]), distance(vs[2 * i + 1], ex[2 * i]));
                 v = std::max(v, std::min(same, swap));
             }
             o.residuals[2] = c / in.t.diameter();
             o.residuals[3] = v / in.t.diameter();
             return o;
         }});

    add({"vell.x478-center", PropKind::claim,
         "The conic through the excircle tangency points has a well-defined center (X478)", 100, false,
         {{"holdout_center_spread", 1e-7}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             auto vs = triad_vertices(build_triad(in.t, TriadKind::v_ellipse));
             Point2 x478 = classic_center(in.t, CenterId::X478);
             Point2 gc = (in.t.A + in.t.B + in.t.C) / 3.0;
             double spread = 0;
             for (int skip = 0; skip < 6; ++skip) {
                 std::vector<Point2> five;
                 for (int i = 0; i < 6; ++i)
                     if (i != skip) five.push_back(vs[i]);
                 spread = std::max(spread, distance(center(fit_conic_5pts(five)), x478));
             }
             o.residuals[0] = spread / std::max(in.t.diameter(), distance(x478, gc));
             return o;
         }});

    add({"vell.excentral-tangency", PropKind::claim,
         "Each V-ellipse is tangent at its vertex to the corresponding side of the excentral triangle", 100, false,
         {{"tangent_to_excentral_sides", 1e-8}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             o.residuals[0] = claim_max(concurrency_theorems(build_triad(in.t, TriadKind::v_ellipse)), "tangent_excentral");
             return o;
         }});

    add({"vell.chords-excenters-x20", PropKind::claim,
         "The common chords A'A'', B'B'', C'C'' pass through the excenters and concur at X20", 100, false,
         {{"chords_through_excenters", 1e-8}, {"chords_through_X20", 1e-8}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(2);
             auto r = concurrency_theorems(build_triad(in.t, TriadKind::v_ellipse));
             double missing = claim_max(r, "two_points");
             o.residuals[0] = std::isnan(missing) ? claim_max(r, "through_excenter") : missing;
             o.residuals[1] = std::isnan(missing) ? claim_max(r, "through_X20") : missing;
             return o;
         }});

    add({"vell.right-triangle-x20", PropKind::claim,
         "For a right triangle the V-ellipses pass through X20", 100, false, {{"members_through_X20", 1e-8}},
         [](auto& g, int, int) { return right_triangle(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             ConicTriad tr = build_triad(in.t, TriadKind::v_ellipse);
             Point2 x20 = classic_center(in.t, CenterId::X20);
             double w = 0;
             for (int i = 0; i < 3; ++i) w = std::max(w, tr.conics[i].focal_residual(x20));
             o.residuals[0] = w / in.t.diameter();
             return o;
         }});

    add({"vell.degenerate-iff-right", PropKind::claim,
         "The conic through the V-ellipse vertices is degenerate iff the triangle is right", 100, false,
         {{"sign_changes_only_at_right_triangles", 1e-6}, {"every_right_triangle_brackets_a_sign_change", 1e-6}},
         [](auto& g, int, int) { return right_triangle(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(2);
             Point2 A = in.t.A, B = in.t.B, m = midpoint(A, B);
             double R = 0.5 * distance(A, B);
             Point2 d = unit(in.t.C - m);
             double cphi = dot(d, unit(B - A));
             double r0 = 0.2 * R, r1 = 4 * R;
             std::vector<double> expected{R};
             if (std::fabs(cphi) > 1e-9 && R / std::fabs(cphi) < r1) expected.push_back(R / std::fabs(cphi));
             auto roots = det_roots(
                 [&](double r) {
                     return try_conic([&] { return build_triad(Triangle(A, B, m + d * r), TriadKind::v_ellipse); });
                 },
                 r0, r1, 400);
             o.residuals[0] = nearest_gap(roots, expected) / R;
             o.residuals[1] = nearest_gap(expected, roots) / R;
             o.stats["sign_changes"] = static_cast<double>(roots.size());
             return o;
         }});

    add({"vell.x478-quartic", PropKind::claim,
         "Over C on the semicircle on AB, the degenerate conic's center traces 4(x^2+y^2)^2 - 8y^3 - x^2 + 2y^2 = 0",
         120, false, {{"quartic_residual", 1e-8}, {"arc_at_or_above_y1", 1e-9}, {"endpoints_near_pm_half_1", 1e-4}},
         [](auto&, int trial, int trials) {
             double th = 1e-3 + (kPi - 2e-3) * (trials > 1 ? static_cast<double>(trial) / (trials - 1) : 0.5);
             return TrialInput{Triangle({0.5, 0}, {-0.5, 0}, {0.5 * std::cos(th), 0.5 * std::sin(th)}), std::nullopt, th};
         },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             Point2 c = x478_center_at(in.param);
             CurveContext k;
             k.x = c.x;
             k.y = c.y;
             o.residuals[0] = std::fabs(eval_implicit(CurveId::x478_quartic, k));
             o.residuals[1] = std::max(0.0, 1.0 - c.y);
             // C -> A and C -> B: the arc ends on the perpendiculars at |AA'| = |BB'| = |AB|.
             // The fit loses rank below theta ~ 1e-3, so the limits are linear extrapolations.
             Point2 e1 = x478_center_at(1e-3) * 2.0 - x478_center_at(2e-3);
             Point2 e2 = x478_center_at(kPi - 1e-3) * 2.0 - x478_center_at(kPi - 2e-3);
             Point2 p1{0.5, 1}, p2{-0.5, 1};
             o.residuals[2] = std::min(std::max(distance(e1, p1), distance(e2, p2)),
                                       std::max(distance(e1, p2), distance(e2, p1)));
             return o;
         }});

    add({"vell.parabola-deg8", PropKind::claim,
         "With A, B fixed the conic is degenerate for C on the circle on AB or the perpendiculars at A, B, and a "
         "parabola on the degree-8 curve",
         100, false,
         {{"degenerate_on_circle_and_perpendiculars", 1e-9}, {"parabola_roots_match_deg8", 1e-7},
          {"deg8_roots_match_parabola", 1e-7}},
         [](auto& g, int, int) { return ray_from_origin(g, 0.05, kPi - 0.05); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             Point2 d = ray_dir(in.param);
             auto yiu = [](const Point2& C) {
                 return six_point_conic(build_triad(Triangle({-1, 0}, {1, 0}, C), TriadKind::v_ellipse));
             };
             double w = 0;
             for (Point2 C : {d, Point2{1, 2 * d.y + 0.1}, Point2{-1, 2 * d.y + 0.1}}) {
                 auto r = yiu(C);
                 w = std::max(w, std::fabs(normalized_det(r.conic, r.frame)));
             }
             o.residuals[0] = w;
             auto disc = [&](double r) {
                 try {
                     auto y = yiu(d * r);
                     return normalized_disc(y.conic, y.frame);
                 } catch (const Error&) {
                     return kNaN;
                 }
             };
             auto f8 = curve_field(CurveId::parabola_deg8_V);
             auto pr = scalar_roots(disc, 0.05, 6.0, 600);
             auto dr = scalar_roots([&](double r) { return f8(d * r); }, 0.05, 6.0, 600);
             if (!pr.empty() || !dr.empty()) {
                 o.residuals[1] = nearest_gap(pr, dr);
                 o.residuals[2] = nearest_gap(dr, pr);
                 if (pr.empty() || dr.empty()) o.residuals[1] = o.residuals[2] = INFINITY;
             }
             o.stats["parabola_crossings"] = static_cast<double>(pr.size());
             return o;
         }});

    add({"vell.covertex-locus", PropKind::claim,
         "The co-vertices of the V-ellipses lie on a conic for C on the printed rho1/rho2 curve", 50, false,
         {{"covertex_conic_on_incidence_locus", 1e-7}, {"printed_implicit_vanishes_there", 1e-8, true}},
         [](auto& g, int, int) { return ray_from_origin(g, 0.1, kPi - 0.1); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(2);
             Point2 C;
             try {
                 C = find_covertex_driver(TriadKind::v_ellipse, in.param, 0.05, 4.0);
             } catch (const Error& e) {
                 if (e.kind() != ErrorKind::NotFound) throw;
                 o.stats["no_root_on_ray"] = 1;
                 return o;
             }
             auto r = covertex_conic_check(TriadKind::v_ellipse, C, 1.0);
             o.residuals[0] = r.residual6;
             o.residuals[1] = std::fabs(r.implicit_value);
             if (r.klass == ConicKind::hyperbola || r.klass == ConicKind::rectangular_hyperbola)
                 o.stats["hyperbola"] = 1;
             if (r.branch_split) o.stats["split_" + std::to_string(r.branch_split)] = 1;
             return o;
         }});

    // ---- P-ellipses ----
    add({"pell.six-point-conic", PropKind::claim, "The six vertices of a triad of P-ellipses lie on a conic", 100,
         false, {{"six_point_incidence", 1e-8}, {"carnot_product", 1e-10}},
         [](auto& g, int, int) { return tri_point(g); },
         [](const TrialInput& in) { return six_point_outcome(build_triad(in.t, TriadKind::p_ellipse, in.p)); }});

    add({"pell.pstar-circle", PropKind::claim,
         "A unique P* makes the P-ellipse conic a circle, concentric with the circumcircle", 50, false,
         {{"functional_zero", 1e-16}, {"circle_radial_spread", 1e-7}, {"concentric_with_circumcircle", 1e-6},
          {"unique_across_starts", 1e-8, true}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(4);
             PStarResult r = find_pstar(in.t);
             if (r.start_spread > 1e-6) o.stats["several_circle_points"] = 1;
             Circle cc = circumcircle(in.t);
             auto vs = triad_vertices(build_triad(in.t, TriadKind::p_ellipse, r.point));
             o.residuals[0] = r.rel_functional;
             o.residuals[1] = radial_spread(vs, cc.center, cc.radius);
             o.residuals[2] = r.center_offset;
             o.residuals[3] = r.start_spread;
             o.stats["converged_starts"] = r.converged_starts;
             return o;
         }});

    add({"pell.anticevian-x3", PropKind::claim,
         "X3 is the P* of the X3-anticevian; the circle is concentric with its circumcircle and centered on X4X6",
         100, false,
         {{"x3_zero_of_functional", 1e-12}, {"circle_radial_spread", 1e-6}, {"concentric_with_anticevian", 1e-7},
          {"center_on_X4X6", 1e-8}, {"appendix_x3prime_agrees", 1e-7}},
         [](auto& g, int, int) { return TrialInput{random_triangle(g, 0.15, 0.1), std::nullopt, 0}; },
         [](const TrialInput& in) {
             TrialOutcome o = blank(5);
             BaryCoords x3b = center_barycentrics(in.t, CenterId::X3);
             Point2 x3 = bary_to_cartesian(in.t, x3b);
             Triangle ac = anticevian_triangle(in.t, x3b);
             Circle cc = circumcircle(ac);
             CurveContext k = functional_context(ac, x3, false);
             o.residuals[0] = eval_implicit(CurveId::pstar_circle_functional, k) / std::pow(ac.diameter(), 8);
             ConicTriad tr = build_triad(ac, TriadKind::p_ellipse, x3);
             auto rep = six_point_conic(tr);
             if (!rep.center) throw Error(ErrorKind::ConstructionFailed, "no center");
             o.residuals[1] = radial_spread(triad_vertices(tr), cc.center, cc.radius);
             o.residuals[2] = distance(*rep.center, cc.center) / cc.radius;
             Point2 x4 = classic_center(in.t, CenterId::X4), x6 = classic_center(in.t, CenterId::X6);
             Point2 gc = (in.t.A + in.t.B + in.t.C) / 3.0;
             double dline = std::fabs(cross(unit(x6 - x4), *rep.center - x4));
             o.residuals[3] = dline / std::max(in.t.diameter(), distance(*rep.center, gc));
             o.residuals[4] = check_appendix(AppendixName::x3prime_center, in.t).max_residual;
             return o;
         }});

    add({"pell.degenerate-on-circumcircle", PropKind::claim,
         "For P on the circumcircle the P-ellipse conic is a pair of lines", 100, false,
         {{"det_zero_on_circumcircle", 1e-9}, {"two_lines", 0.5}, {"det_sign_change_at_circumcircle", 1e-6}},
         [](auto& g, int, int) { return tri_circumcircle(g, 0.02); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             auto rep = six_point_conic(build_triad(in.t, TriadKind::p_ellipse, in.p));
             o.residuals[0] = std::fabs(normalized_det(rep.conic, rep.frame));
             o.residuals[1] = indicator(rep.klass == ConicKind::degenerate_two_lines);
             Circle cc = circumcircle(in.t);
             Point2 d = ray_dir(in.param);
             auto roots = det_roots(
                 [&](double r) {
                     return try_conic([&] { return build_triad(in.t, TriadKind::p_ellipse, cc.center + d * r); });
                 },
                 cc.radius * (1 - 1e-2), cc.radius * (1 + 1e-2), 20);
             o.residuals[2] = roots.empty() ? INFINITY : nearest_gap({cc.radius}, roots) / cc.radius;
             return o;
         }});

    add({"pell.ostar-three-arcs", PropKind::claim,
         "Over P on the circumcircle, O* runs over arcs of three ellipses through the side midpoints, with V-ellipse "
         "vertices as endpoints",
         120, false,
         {{"ostar_on_arc_ellipse", 1e-8}, {"ellipses_through_midpoints", 1e-8}, {"endpoints_are_vellipse_vertices", 1e-6}},
         [](auto& g, int, int) { return tri_circumcircle(g, 1e-3); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             const Triangle& t = in.t;
             std::array<Conic, 3> L;
             double mres = 0;
             for (int w = 0; w < 3; ++w) {
                 auto pts = ostar_arc_points(t, w);
                 L[w] = fit_conic_5pts(pts);
                 for (int i = 2; i < 5; ++i) mres = std::max(mres, residual(L[w], pts[i]));
             }
             int arc = 0;
             for (int w = 0; w < 3; ++w) {
                 const Point2 &U = t.vertex((w + 1) % 3), &V = t.vertex((w + 2) % 3);
                 if ((signed_area(U, V, *in.p) > 0) != (signed_area(U, V, t.vertex(w)) > 0)) arc = w;
             }
             Point2 ostar = center(six_point_conic(build_triad(t, TriadKind::p_ellipse, in.p)).conic);
             o.residuals[0] = residual(L[arc], ostar);
             o.residuals[1] = mres;
             // P approaching vertex A from both sides: O* tends to a vertex of the A V-ellipse.
             Circle cc = circumcircle(t);
             Point2 va = t.A - cc.center;
             double ta = std::atan2(va.y, va.x);
             auto ve = excircle_tangency_points(t);
             double w = 0;
             auto ostar_at = [&](double th) {
                 return center(six_point_conic(build_triad(t, TriadKind::p_ellipse, on_circumcircle(t, th))).conic);
             };
             for (double side : {1.0, -1.0}) {
                 // Linear extrapolation to P = A from two nearby P.
                 Point2 c = ostar_at(ta + side * 1e-5) * 2.0 - ostar_at(ta + side * 2e-5);
                 w = std::max(w, std::min(distance(c, ve[0]), distance(c, ve[1])));
             }
             o.residuals[2] = w / t.diameter();
             return o;
         }});

    add({"pell.equilateral-ostar", PropKind::claim,
         "Equilateral of side 1: the O* locus ellipses have semi-axes sqrt3/2, sqrt3/6, centered at the vertices; "
         "area(A Cab B) = 3 area(ABC)",
         1, true, {{"corollary_claims", 1e-8}},
         [](auto&, int, int) { return TrialInput{equilateral(1.0), std::nullopt, 0}; },
         [](const TrialInput&) {
             TrialOutcome o = blank(1);
             auto r = equilateral_ostar_locus_check(1.0);
             o.residuals[0] = r.claims.max_residual();
             return o;
         }});

    add({"pell.equilateral-regions", PropKind::evidence,
         "Equilateral: inside the triangle there are P where the conic is degenerate and where it is a parabola", 1,
         true, {{"interior_degenerate_found", 0.5}, {"interior_parabola_found", 0.5}},
         [](auto&, int, int) { return TrialInput{equilateral(1.0), std::nullopt, 0}; },
         [](const TrialInput& in) {
             TrialOutcome o = blank(2);
             Point2 g = (in.t.A + in.t.B + in.t.C) / 3.0;
             int dets = 0, discs = 0;
             for (Point2 target : {in.t.C, midpoint(in.t.A, in.t.B)}) {
                 Point2 d = unit(target - g);
                 double len = distance(target, g);
                 auto build = [&](double r) {
                     return try_conic([&] { return build_triad(in.t, TriadKind::p_ellipse, g + d * r); });
                 };
                 dets += static_cast<int>(det_roots(build, 0.02 * len, 0.98 * len, 300).size());
                 discs += static_cast<int>(scalar_roots(
                                               [&](double r) {
                                                   auto c = build(r);
                                                   return c ? c->m.topLeftCorner<2, 2>().determinant() : NAN;
                                               },
                                               0.02 * len, 0.98 * len, 300)
                                               .size());
             }
             o.residuals[0] = indicator(dets > 0);
             o.residuals[1] = indicator(discs > 0);
             o.stats["degenerate_crossings"] = dets;
             o.stats["parabola_crossings"] = discs;
             return o;
         }});

    add({"pell.never-rectangular", PropKind::claim, "A hyperbolic P-ellipse conic is never rectangular", 200, false,
         {{"not_rectangular", 0.5}},
         [](auto& g, int, int) { return tri_point(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             auto r = six_point_conic(build_triad(in.t, TriadKind::p_ellipse, in.p));
             if (r.klass != ConicKind::hyperbola && r.klass != ConicKind::rectangular_hyperbola) return o;
             Conic f = to_frame(r.conic, r.frame);
             o.residuals[0] = indicator(r.klass != ConicKind::rectangular_hyperbola);
             o.stats["hyperbolas"] = 1;
             o.stats["trace_ratio_below_1e-3"] =
                 std::fabs(f.m.topLeftCorner<2, 2>().trace()) / f.m.topLeftCorner<2, 2>().norm() < 1e-3;
             return o;
         }});

    add({"pell.equilateral-covertex", PropKind::claim,
         "Equilateral: on the delta-form degree-10 curve the co-vertices lie on a conic centered on the incircle", 50,
         false, {{"covertex_incidence", 1e-7}, {"center_on_incircle", 1e-7}},
         [](auto& g, int, int) {
             return TrialInput{equilateral_covertex_triangle(), std::nullopt, uniform(g, 0, 2 * kPi)};
         },
         [](const TrialInput& in) {
             TrialOutcome o = blank(2);
             Point2 P;
             try {
                 P = find_covertex_driver(TriadKind::p_ellipse, in.param, 0.05, 3.0);
             } catch (const Error& e) {
                 if (e.kind() != ErrorKind::NotFound) throw;
                 o.stats["no_root_on_ray"] = 1;
                 return o;
             }
             auto r = covertex_conic_check(TriadKind::p_ellipse, P, 1.0);
             o.residuals[0] = r.residual6;
             o.residuals[1] = r.incircle_offset;
             return o;
         }});

    // ---- V-hyperbolas ----
    add({"vhyp.vertex-barycentrics", PropKind::claim,
         "V-hyperbola vertices are [0, a + la, a - la] and [0, a - la, a + la] (la = c - b), cyclically", 100, false,
         {{"vertices_match_barycentrics", 1e-12}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             const Triangle& t = in.t;
             auto vs = triad_vertices(build_triad(t, TriadKind::v_hyperbola));
             std::array<double, 3> s{t.a, t.b, t.c}, lam{t.c - t.b, t.a - t.c, t.b - t.a};
             double w = 0;
             for (int i = 0; i < 3; ++i) {
                 double q1[3] = {0, 0, 0}, q2[3] = {0, 0, 0};
                 int j = (i + 1) % 3, k = (i + 2) % 3;
                 q1[j] = s[i] + lam[i];
                 q1[k] = s[i] - lam[i];
                 q2[j] = s[i] - lam[i];
                 q2[k] = s[i] + lam[i];
                 Point2 p1 = bary_to_cartesian(t, {q1[0], q1[1], q1[2]});
                 Point2 p2 = bary_to_cartesian(t, {q2[0], q2[1], q2[2]});
                 double same = std::max(distance(vs[2 * i], p1), distance(vs[2 * i + 1], p2));
                 double swap = std::max(distance(vs[2 * i], p2), distance(vs[2 * i + 1], p1));
                 w = std::max(w, std::min(same, swap));
             }
             o.residuals[0] = w / t.diameter();
             return o;
         }});

    add({"vhyp.extouch-intouch", PropKind::claim,
         "A1B1C1 is the extouch and A2B2C2 the intouch triangle (equal areas)", 100, false,
         {{"first_vertices_extouch", 1e-12}, {"second_vertices_intouch", 1e-12}, {"equal_areas", 1e-12}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             ConicTriad tr = build_triad(in.t, TriadKind::v_hyperbola);
             auto vs = triad_vertices(tr);
             auto touch = intouch_extouch(in.t);
             double e = 0, n = 0;
             for (int i = 0; i < 3; ++i) {
                 e = std::max(e, distance(vs[2 * i], touch.extouch[i]));
                 n = std::max(n, distance(vs[2 * i + 1], touch.intouch[i]));
             }
             o.residuals[0] = e / in.t.diameter();
             o.residuals[1] = n / in.t.diameter();
             auto [a1, a2] = equal_area_check(tr);
             o.residuals[2] = std::fabs(a1 - a2) / std::max(a1, a2);
             return o;
         }});

    add({"vhyp.privalov-conic", PropKind::claim,
         "The V-hyperbola vertices lie on the Privalov conic k1k2k3(x^2+y^2+z^2) + 2[...] = 0", 100, false,
         {{"six_point_incidence", 1e-8}, {"carnot_product", 1e-10}, {"vertices_on_privalov_equation", 1e-10},
          {"fitted_conic_is_privalov", 1e-7}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             ConicTriad tr = build_triad(in.t, TriadKind::v_hyperbola);
             TrialOutcome o = six_point_outcome(tr);
             o.residuals.resize(4);
             Conic pb = privalov_conic(in.t);
             double w = 0;
             for (const auto& v : triad_vertices(tr)) w = std::max(w, bary_conic_residual(pb, in.t, v));
             o.residuals[2] = w;
             auto rep = six_point_conic(tr);
             Conic pc = conic_bary_to_cartesian(pb, in.t);
             o.residuals[3] = projective_distance(to_frame(pc, rep.frame), to_frame(rep.conic, rep.frame));
             return o;
         }});

    add({"vhyp.isosceles-degenerate", PropKind::claim,
         "Isosceles: the base V-hyperbola collapses to the perpendicular bisector and the Privalov conic touches the "
         "base at its midpoint",
         100, false, {{"member_collapses", 0.5}, {"fitted_conic_tangent_at_midpoint", 1e-8}, {"privalov_tangent_at_midpoint", 1e-8}},
         [](auto& g, int, int) { return isosceles(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             const Triangle& t = in.t;
             ConicTriad tr = build_triad(t, TriadKind::v_hyperbola);
             o.residuals[0] = indicator(tr.degenerate[0] && tr.double_vertex[0]);
             LineEq base = line_through(t.B, t.C);
             Point2 mid = midpoint(t.B, t.C);
             auto rep = six_point_conic(tr);
             auto tangency = [&](const Conic& c) { return tangency_residual(c, mid, base); };
             o.residuals[1] = tangency(rep.conic);
             o.residuals[2] = tangency(conic_bary_to_cartesian(privalov_conic(t), t));
             return o;
         }});

    add({"vhyp.halftangent-sextic", PropKind::claim,
         "A = (-1,0), B = (1,0): tan(A/2) + tan(B/2) + tan(C/2) = 2 on the printed sextic (and its mirror image)", 100,
         false, {{"half_tangent_sum_is_2", 1e-9}, {"mirror_half_tangent_sum_is_2", 1e-9}, {"soddy_line_regime", 1e-8}},
         [](auto& g, int, int) { return ray_from_origin(g, 0.05, kPi - 0.05); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             auto C = sextic_point(in.param);
             if (!C) {
                 o.stats["no_root_on_ray"] = 1;
                 return o;
             }
             Triangle t({-1, 0}, {1, 0}, *C);
             o.residuals[0] = std::fabs(half_tangent_sum(t) - 2);
             o.residuals[1] = std::fabs(half_tangent_sum(Triangle({-1, 0}, {1, 0}, {C->x, -C->y})) - 2);
             SoddyConfig s = soddy(t);
             double ksum = 0;
             for (const auto& k : s.kissing) ksum += 1 / k.radius;
             o.residuals[2] = std::fabs(s.k_out) / ksum;
             return o;
         }});

    add({"vhyp.soddy-centers", PropKind::claim,
         "The V-hyperbolas meet at the Soddy centers X176 and X175", 100, false,
         {{"x176_on_driver_branches", 1e-8}, {"x175_on_all_members", 1e-8}, {"kissing_tangency", 1e-10}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             const Triangle& t = in.t;
             ConicTriad tr = build_triad(t, TriadKind::v_hyperbola);
             SoddyConfig s = soddy(t);
             double w176 = 0, w175 = 0, wk = 0;
             for (int i = 0; i < 3; ++i) {
                 w176 = std::max(w176, std::fabs(focal_difference(tr, i, s.inner.center) - tr.params[i]));
                 wk = std::max(wk, std::fabs(distance(s.inner.center, s.kissing[i].center) -
                                             (s.inner.radius + s.kissing[i].radius)));
             }
             o.stats[std::string("regime_") + to_string(s.regime)] = 1;
             if (s.regime != SoddyRegime::line) {
                 // Contained: internally tangent, opposite branches. External: same branches.
                 double sign = s.regime == SoddyRegime::contains ? -1.0 : 1.0;
                 for (int i = 0; i < 3; ++i)
                     w175 = std::max(w175, std::fabs(focal_difference(tr, i, s.outer.center) - sign * tr.params[i]));
                 o.residuals[1] = w175 / t.diameter();
             }
             o.residuals[0] = w176 / t.diameter();
             o.residuals[2] = wk / t.diameter();
             return o;
         }});

    add({"vhyp.through-vellipse-intersections", PropKind::claim,
         "H_a passes through the intersections A', A'' of the V-ellipses E_b, E_c, cyclically", 100, false,
         {{"members_through_vellipse_pairs", 1e-8}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             o.residuals[0] = claim_max(concurrency_theorems(build_triad(in.t, TriadKind::v_hyperbola)), "vellipse_pair");
             return o;
         }});

    add({"vhyp.chords-x8", PropKind::claim, "The chords A1A2, B1B2, C1C2 of the V-hyperbolas concur at X8", 100, false,
         {{"chords_through_X8", 1e-8}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             auto r = concurrency_theorems(build_triad(in.t, TriadKind::v_hyperbola));
             double missing = claim_max(r, "_constructed");
             o.residuals[0] = std::isnan(missing) ? claim_max(r, "through_X8") : missing;
             return o;
         }});

    add({"vhyp.fifteen-point-cubic", PropKind::claim,
         "The sideline cubic passes through the vertices and the V-ellipse and V-hyperbola vertices", 100, false,
         {{"points_on_sidelines", 1e-12}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             const Triangle& t = in.t;
             auto ve = triad_vertices(build_triad(t, TriadKind::v_ellipse));
             auto vh = triad_vertices(build_triad(t, TriadKind::v_hyperbola));
             double w = 0;
             for (int i = 0; i < 3; ++i) {
                 LineEq l = sideline(t, i);
                 for (const Point2& p : {ve[2 * i], ve[2 * i + 1], vh[2 * i], vh[2 * i + 1]})
                     w = std::max(w, point_line_distance(p, l));
                 for (int j = 0; j < 3; ++j)
                     if (j != i) w = std::max(w, point_line_distance(t.vertex(j), l));
             }
             o.residuals[0] = w / t.diameter();
             return o;
         }});

    add({"vhyp.soddy-line-tangency", PropKind::claim,
         "When the outer Soddy circle is a line, the circles on the sides as diameters touch it", 100, false,
         {{"side_circles_tangent", 1e-7}, {"kissing_circles_tangent", 1e-7}},
         [](auto& g, int, int) { return ray_from_origin(g, 0.05, kPi - 0.05); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(2);
             auto C = sextic_point(in.param);
             if (!C) return o;
             Triangle t({-1, 0}, {1, 0}, *C);
             SoddyConfig s = soddy(t);
             if (s.regime != SoddyRegime::line) throw Error(ErrorKind::DomainError, "not in the line regime");
             double ws = 0, wk = 0;
             for (int i = 0; i < 3; ++i) {
                 Point2 m = midpoint(t.vertex((i + 1) % 3), t.vertex((i + 2) % 3));
                 ws = std::max(ws, std::fabs(point_line_distance(m, s.outer_line) - 0.5 * t.side(i)));
                 wk = std::max(wk, std::fabs(point_line_distance(s.kissing[i].center, s.outer_line) - s.kissing[i].radius));
             }
             o.residuals[0] = ws / t.diameter();
             o.residuals[1] = wk / t.diameter();
             return o;
         }});

    // ---- P-hyperbolas ----
    add({"phyp.second-point", PropKind::claim,
         "Besides P, the P-hyperbolas meet at a second point P' (on the three opposite branches)", 100, false,
         {{"second_point_exists", 0.5, true}, {"second_point_on_all_members", 1e-8}, {"gap_identity", 1e-10}},
         [](auto& g, int, int) { return tri_point(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             ConicTriad tr = build_triad(in.t, TriadKind::p_hyperbola, in.p);
             auto lam = tr.params;
             std::array<double, 3> m{std::fabs(lam[0]), std::fabs(lam[1]), std::fabs(lam[2])};
             std::sort(m.begin(), m.end());
             o.residuals[2] = std::fabs(m[2] - m[1] - m[0]) / in.t.diameter();
             try {
                 Point2 q = second_common_point(tr);
                 double w = 0;
                 for (int i = 0; i < 3; ++i) w = std::max(w, std::fabs(focal_difference(tr, i, q) + lam[i]));
                 o.residuals[0] = 0;
                 o.residuals[1] = w / in.t.diameter();
                 o.stats["found"] = 1;
             } catch (const Error& e) {
                 if (e.kind() != ErrorKind::NotFound) throw;
                 o.residuals[0] = 1;
             }
             return o;
         }});

    add({"phyp.six-point-conic", PropKind::claim, "The six vertices of the P-hyperbolas lie on a conic", 100, false,
         {{"six_point_incidence", 1e-8}, {"carnot_product", 1e-10}},
         [](auto& g, int, int) { return tri_point(g); },
         [](const TrialInput& in) { return six_point_outcome(build_triad(in.t, TriadKind::p_hyperbola, in.p)); }});

    add({"phyp.equal-areas", PropKind::claim, "Triangles A1B1C1 and A2B2C2 of the P-hyperbola vertices have equal area",
         100, false, {{"equal_areas", 1e-9}},
         [](auto& g, int, int) { return tri_point(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             auto [a1, a2] = equal_area_check(build_triad(in.t, TriadKind::p_hyperbola, in.p));
             o.residuals[0] = std::fabs(a1 - a2) / std::max(a1, a2);
             return o;
         }});

    add({"phyp.circle-pair", PropKind::claim,
         "A unique pair P*, Q* makes the P-hyperbola conic a circle; they are common points of each other's triad",
         50, false,
         {{"functional_zero", 1e-12}, {"circle_radial_spread", 1e-7}, {"concentric_with_circumcircle", 1e-6},
          {"mutual_common_points", 1e-8}, {"distinct", 0.5}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(5);
             const Triangle& t = in.t;
             PStarPair pr = find_phyp_circle_points(t);
             Circle cc = circumcircle(t);
             double fz = 0, sp = 0, co = 0, mu = 0;
             for (const PStarResult* r : {&pr.first, &pr.second}) {
                 fz = std::max(fz, r->rel_functional);
                 sp = std::max(sp, radial_spread(triad_vertices(build_triad(t, TriadKind::p_hyperbola, r->point)),
                                                 cc.center, cc.radius));
                 co = std::max(co, r->center_offset);
             }
             for (int s = 0; s < 2; ++s) {
                 const Point2& a = s ? pr.second.point : pr.first.point;
                 const Point2& b = s ? pr.first.point : pr.second.point;
                 ConicTriad tr = build_triad(t, TriadKind::p_hyperbola, a);
                 for (int i = 0; i < 3; ++i)
                     mu = std::max(mu, std::fabs(std::fabs(focal_difference(tr, i, b)) - std::fabs(tr.params[i])));
             }
             o.residuals = {fz, sp, co, mu / t.diameter(),
                            indicator(distance(pr.first.point, pr.second.point) > 1e-6 * t.diameter())};
             return o;
         }});

    add({"phyp.x55-conjecture", PropKind::evidence,
         "X55 reflection triangle T': the P-hyperbola vertices through X55 lie on a circle concentric with T' "
         "whose center is X7",
         100, false, {{"circle_spread", 1e-6}, {"center_offset", 1e-6}, {"circumcenter_is_X7", 1e-7}},
         [](auto& g, int, int) { return tri_only(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             X55Report r = x55_conjecture_check(in.t);
             o.residuals = {r.circle_spread, r.center_offset, r.x7_offset};
             if (r.second_point) o.stats["second_point_found"] = 1;
             return o;
         }});

    add({"phyp.through-pellipse-intersections", PropKind::claim,
         "H*_a passes through the non-P intersection A' of the P-ellipses E*_b, E*_c, on P's branch", 100, false,
         {{"members_through_pellipse_points", 1e-8}},
         [](auto& g, int, int) { return tri_point(g); },
         [](const TrialInput& in) {
             TrialOutcome o = blank(1);
             const Triangle& t = in.t;
             ConicTriad pe = build_triad(t, TriadKind::p_ellipse, in.p);
             ConicTriad ph = build_triad(t, TriadKind::p_hyperbola, in.p);
             auto pairs = pairwise_intersections(pe);
             double w = 0;
             int used = 0;
             for (int i = 0; i < 3; ++i) {
                 const Point2* far = nullptr;
                 for (const auto& x : pairs[i])
                     if (distance(x, *in.p) > 1e-6 * t.diameter() && (!far || distance(x, *in.p) > distance(*far, *in.p)))
                         far = &x;
                 if (!far) continue;
                 ++used;
                 w = std::max(w, std::fabs(focal_difference(ph, i, *far) - ph.params[i]));
             }
             if (used) o.residuals[0] = w / t.diameter();
             return o;
         }});

    add({"phyp.parabola-degenerate", PropKind::claim,
         "The P-hyperbola conic is a parabola on the printed lambda curve and degenerate for P on a sideline "
         "extension",
         100, false,
         {{"det_vanishes_at_sideline_extension", 1e-9}, {"parabola_roots_match_condition", 1e-6},
          {"condition_roots_match_parabola", 1e-6}},
         [](auto& g, int, int) {
             Triangle t = random_triangle(g);
             int side = static_cast<int>(uniform(g, 0, 3)) % 3;
             double s = uniform(g, 0, 1) < 0.5 ? uniform(g, -1.5, -0.05) : uniform(g, 1.05, 2.5);
             Point2 u = t.vertex((side + 1) % 3), v = t.vertex((side + 2) % 3);
             return TrialInput{t, u + (v - u) * s, uniform(g, 0, 2 * kPi)};
         },
         [](const TrialInput& in) {
             TrialOutcome o = blank(3);
             const Triangle& t = in.t;
             double diam = t.diameter();
             // P sits on a sideline extension. det m has a double zero there (no sign change), so
             // the check is that it vanishes to second order just off the line.
             int side = 0;
             for (int i = 1; i < 3; ++i)
                 if (point_line_distance(*in.p, sideline(t, i)) < point_line_distance(*in.p, sideline(t, side))) side = i;
             LineEq l = sideline(t, side);
             Point2 n = unit(Point2{l.l, l.m});
             double w = 0;
             for (double r : {-1e-6, 1e-6}) {
                 auto rep = six_point_conic(build_triad(t, TriadKind::p_hyperbola, *in.p + n * (r * diam)));
                 w = std::max(w, std::fabs(normalized_det(rep.conic, rep.frame)));
             }
             o.residuals[0] = w;
             // Parabola condition along a line through P, away from the sidelines.
             Point2 d = ray_dir(in.param);
             auto cond = curve_field(CurveId::phyp_parabola_condition, t);
             auto disc = [&](double r) {
                 try {
                     auto y = six_point_conic(build_triad(t, TriadKind::p_hyperbola, *in.p + d * r));
                     return normalized_disc(y.conic, y.frame);
                 } catch (const Error&) {
                     return kNaN;
                 }
             };
             auto near_side = [&](double r) {
                 for (int i = 0; i < 3; ++i)
                     if (point_line_distance(*in.p + d * r, sideline(t, i)) < 1e-4 * diam) return true;
                 return false;
             };
             auto keep = [&](std::vector<double> v) {
                 v.erase(std::remove_if(v.begin(), v.end(), near_side), v.end());
                 return v;
             };
             auto pr = keep(scalar_roots(disc, -diam, diam, 800));
             auto cr = keep(scalar_roots([&](double r) { return cond(*in.p + d * r); }, -diam, diam, 800));
             if (!pr.empty() || !cr.empty()) {
                 o.residuals[1] = pr.empty() || cr.empty() ? INFINITY : nearest_gap(pr, cr) / diam;
                 o.residuals[2] = pr.empty() || cr.empty() ? INFINITY : nearest_gap(cr, pr) / diam;
             }
             o.stats["parabola_crossings"] = static_cast<double>(pr.size());
             return o;
         }});

    // ---- Appendix blocks ----
    for (AppendixName n : kAllAppendix) {
        bool anticevian = n == AppendixName::a_ellipse || n == AppendixName::major_vertices ||
                          n == AppendixName::x3prime_center;
        std::string id = std::string("appendix.") + to_string(n);
        std::replace(id.begin(), id.end(), '_', '-');
        add({id, PropKind::claim, std::string("Appendix block ") + to_string(n) + " matches the metric construction", 10,
             false, {{"normalized_residual", 1e-6}},
             [anticevian](auto& g, int, int) {
                 Triangle t = random_triangle(g, 0.15, anticevian ? 0.1 : 0.0);
                 Point2 p = random_point(g, t);
                 return TrialInput{t, p, 0};
             },
             [n](const TrialInput& in) {
                 TrialOutcome o = blank(1);
                 o.residuals[0] = check_appendix(n, in.t, in.p).max_residual;
                 return o;
             }});
    }
    return M;
}

struct TrialResult {
    TrialInput input;
    std::optional<TrialOutcome> out;
    std::string error;
};

json witness_scene(const Proposition& p, const TrialInput& in, const std::string& claim, int trial, double residual,
                   uint64_t seed) {
    Scene s;
    s.triangle = in.t;
    s.p = in.p;
    s.meta = {{"proposition", p.id}, {"claim", claim}, {"trial", trial}, {"seed", seed},
              {"param", in.param}, {"residual", residual}};
    return scene_to_json(s);
}

}  // namespace

const char* to_string(PropKind k) { return k == PropKind::claim ? "claim" : "evidence"; }

const std::vector<Proposition>& manifest() {
    static const std::vector<Proposition> m = build_manifest();
    return m;
}

const Proposition& find_proposition(const std::string& id) {
    for (const auto& p : manifest())
        if (p.id == id) return p;
    throw Error(ErrorKind::UnknownProposition, "unknown proposition '" + id + "'");
}

PropositionReport run_proposition(const std::string& id, const RunOptions& opt) {
    const Proposition& prop = find_proposition(id);
    std::size_t index = 0;
    while (manifest()[index].id != id) ++index;
    int trials = prop.fixed ? 1 : (opt.trials > 0 ? opt.trials : prop.default_trials);

    std::vector<TrialResult> results(trials, TrialResult{{equilateral(1.0), std::nullopt, 0}, std::nullopt, {}});
    auto work = [&](int k) {
        auto g = trial_rng(opt.seed, index, k);
        TrialResult& r = results[k];
        try {
            r.input = prop.draw(g, k, trials);
            r.out = prop.eval(r.input);
            if (r.out->residuals.size() != prop.claims.size())
                throw std::logic_error("residual count does not match the claim list");
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    };
    int nt = std::max(1, std::min(opt.threads, trials));
    if (nt == 1) {
        for (int k = 0; k < trials; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                for (int k = w; k < trials; k += nt) work(k);
            });
        for (auto& t : pool) t.join();
    }

    PropositionReport rep;
    rep.id = prop.id;
    rep.kind = prop.kind;
    rep.trials = trials;
    for (const auto& c : prop.claims) {
        ClaimOutcome co;
        co.name = c.name;
        co.tol = opt.tol_override ? *opt.tol_override : c.tol;
        co.known_defect = c.known_defect;
        rep.claims.push_back(co);
    }
    double worst_ratio = -1;
    int worst_trial = 0;
    std::size_t worst_claim = 0;
    for (int k = 0; k < trials; ++k) {
        const TrialResult& r = results[k];
        if (!r.out) {
            if (rep.errors++ == 0) rep.first_error = "trial " + std::to_string(k) + ": " + r.error;
            continue;
        }
        for (const auto& [key, v] : r.out->stats) rep.stats[key] += v;
        for (std::size_t c = 0; c < prop.claims.size(); ++c) {
            double v = r.out->residuals[c];
            if (std::isnan(v)) continue;
            ClaimOutcome& co = rep.claims[c];
            ++co.evaluated;
            bool ok = std::isfinite(v) && v <= co.tol;
            if (!ok) ++co.failures;
            if (co.worst_trial < 0 || !(v <= co.max_residual)) {
                co.max_residual = v;
                co.worst_trial = k;
            }
            double ratio = co.tol > 0 ? v / co.tol : v;
            if (!co.known_defect && (ratio > worst_ratio || std::isnan(ratio) || !std::isfinite(ratio)) &&
                !(worst_ratio == INFINITY)) {
                worst_ratio = std::isfinite(ratio) ? ratio : INFINITY;
                worst_trial = k;
                worst_claim = c;
            }
        }
    }
    rep.pass = rep.errors == 0;
    rep.suite_pass = rep.errors == 0;
    for (auto& co : rep.claims) {
        co.pass = co.failures == 0;
        if (!co.pass) rep.pass = false;
        if (co.known_defect) continue;
        if (prop.kind == PropKind::evidence) {
            double limit = opt.tol_override ? *opt.tol_override : kEvidenceHardLimit;
            if (co.evaluated && !(co.max_residual <= std::max(limit, co.tol))) rep.suite_pass = false;
        } else if (!co.pass) {
            rep.suite_pass = false;
        }
    }
    if (!results.empty() && results[worst_trial].out) {
        double v = results[worst_trial].out->residuals[worst_claim];
        rep.witness = witness_scene(prop, results[worst_trial].input, prop.claims[worst_claim].name, worst_trial, v,
                                    opt.seed);
    } else if (!results.empty()) {
        rep.witness = witness_scene(prop, results[worst_trial].input, "", worst_trial, NAN, opt.seed);
    }
    return rep;
}

SuiteReport run_selected(const std::vector<std::string>& ids, const RunOptions& opt) {
    SuiteReport s;
    s.seed = opt.seed;
    for (const auto& id : ids) {
        s.props.push_back(run_proposition(id, opt));
        if (!s.props.back().suite_pass) s.pass = false;
    }
    return s;
}

SuiteReport run_all(const RunOptions& opt) {
    std::vector<std::string> ids;
    for (const auto& p : manifest()) ids.push_back(p.id);
    return run_selected(ids, opt);
}

double replay_witness(const json& scene_json) {
    Scene s = scene_from_json(scene_json);
    if (!s.triangle) throw Error(ErrorKind::ParseError, "witness has no triangle");
    const auto& meta = s.meta;
    const Proposition& p = find_proposition(meta.at("proposition").get<std::string>());
    std::string claim = meta.at("claim").get<std::string>();
    TrialInput in{*s.triangle, s.p, meta.at("param").get<double>()};
    TrialOutcome o = p.eval(in);
    for (std::size_t c = 0; c < p.claims.size(); ++c)
        if (p.claims[c].name == claim) return o.residuals.at(c);
    throw Error(ErrorKind::ParseError, "witness claim '" + claim + "' not in " + p.id);
}

json report_to_json(const PropositionReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims) {
        json j{{"name", c.name},       {"tol", c.tol},           {"evaluated", c.evaluated},
               {"failures", c.failures}, {"worst_trial", c.worst_trial}, {"pass", c.pass}};
        j["max_residual"] = std::isfinite(c.max_residual) ? json(c.max_residual) : json("inf");
        if (c.known_defect) j["known_defect"] = true;
        claims.push_back(j);
    }
    json j{{"id", r.id},         {"kind", to_string(r.kind)}, {"trials", r.trials},      {"errors", r.errors},
           {"pass", r.pass},     {"suite_pass", r.suite_pass}, {"claims", claims},     {"stats", r.stats},
           {"witness", r.witness}};
    if (!r.first_error.empty()) j["first_error"] = r.first_error;
    return j;
}

json report_to_json(const SuiteReport& r) {
    json props = json::array();
    for (const auto& p : r.props) props.push_back(report_to_json(p));
    return {{"seed", r.seed}, {"pass", r.pass}, {"propositions", props}};
}

std::string report_to_text(const PropositionReport& r) {
    std::ostringstream o;
    const char* status = r.pass ? "PASS" : (r.suite_pass ? "PASS*" : "FAIL");
    o << status << "  " << r.id << "  [" << to_string(r.kind) << ", " << r.trials << " trials";
    if (r.errors) o << ", " << r.errors << " errors";
    o << "]\n";
    for (const auto& c : r.claims) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "    %-4s %-48s max %-12.3e tol %.0e  (%d/%d)%s\n", c.pass ? "ok" : "FAIL",
                      c.name.c_str(), c.max_residual, c.tol, c.evaluated - c.failures, c.evaluated,
                      c.known_defect ? "  known defect" : "");
        o << buf;
    }
    if (!r.first_error.empty()) o << "    first error: " << r.first_error << "\n";
    for (const auto& [k, v] : r.stats) o << "    stat " << k << " = " << v << "\n";
    return o.str();
}

std::string report_to_text(const SuiteReport& r) {
    std::ostringstream o;
    int passed = 0;
    for (const auto& p : r.props) {
        o << report_to_text(p);
        passed += p.suite_pass;
    }
    o << (r.pass ? "SUITE PASS" : "SUITE FAIL") << "  " << passed << "/" << r.props.size() << " propositions, seed "
      << r.seed << "\n";
    return o.str();
}

}  // namespace triconic
