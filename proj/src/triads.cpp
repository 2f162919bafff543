#include "triconic/triads.hpp"

#include <algorithm>
#include <cmath>

namespace triconic {

namespace {

constexpr const char* kKindNames[][2] = {
    {"v_ellipse", "v-ell"}, {"p_ellipse", "p-ell"}, {"v_hyperbola", "v-hyp"}, {"p_hyperbola", "p-hyp"}};

std::array<std::pair<Point2, Point2>, 3> foci_pairs(const Triangle& t) {
    return {std::pair{t.B, t.C}, std::pair{t.C, t.A}, std::pair{t.A, t.B}};
}

double rel_dist(const Point2& x, const LineEq& l, double scale) { return point_line_distance(x, l) / scale; }

}  // namespace

const char* to_string(TriadKind k) { return kKindNames[static_cast<int>(k)][0]; }

std::optional<TriadKind> triad_kind_from_string(const std::string& s) {
    for (int i = 0; i < 4; ++i)
        if (s == kKindNames[i][0] || s == kKindNames[i][1]) return static_cast<TriadKind>(i);
    return std::nullopt;
}

ConicTriad build_triad(const Triangle& t, TriadKind kind, std::optional<Point2> p) {
    if (is_p_kind(kind) && !p) throw Error(ErrorKind::DomainError, "P-triads need a point P");
    ConicTriad tr{kind, t, is_p_kind(kind) ? p : std::nullopt};
    auto fp = foci_pairs(t);
    std::array<Point2, 3> driver{t.A, t.B, t.C};
    if (is_p_kind(kind)) driver = {*p, *p, *p};
    if (is_p_kind(kind))
        for (int i = 0; i < 3; ++i)
            if (distance(*p, t.vertex(i)) <= 1e-12 * t.diameter())
                throw Error(ErrorKind::DomainError, "P coincides with a vertex");
    double perim = 2 * t.p;
    for (int i = 0; i < 3; ++i) {
        const auto& [f1, f2] = fp[i];
        double r1 = distance(driver[i], f1), r2 = distance(driver[i], f2);
        double focal = distance(f1, f2);
        FocalConic& fc = tr.conics[i];
        fc.focus1 = f1;
        fc.focus2 = f2;
        if (is_ellipse_kind(kind)) {
            fc.kind = FocalKind::ellipse;
            tr.params[i] = r1 + r2;
            fc.axis_length = r1 + r2;
            tr.degenerate[i] = !(fc.axis_length > focal * (1 + 1e-12));
        } else {
            fc.kind = FocalKind::hyperbola;
            double lam = r1 - r2;
            tr.params[i] = lam;
            fc.axis_length = std::fabs(lam);
            tr.double_vertex[i] = std::fabs(lam) <= 1e-12 * perim;
            tr.degenerate[i] = tr.double_vertex[i] || !(fc.axis_length < focal * (1 - 1e-12));
            Point2 m = midpoint(f1, f2);
            Point2 d = perp(f1 - f2);
            tr.bisector[i] = line_through(m, m + d);
        }
    }
    return tr;
}

Conic member_conic(const ConicTriad& tr, int i) {
    if (tr.degenerate[i]) throw Error(ErrorKind::DegenerateMember, "member " + std::to_string(i) + " is degenerate");
    return conic_from_foci(tr.conics[i]);
}

std::array<Point2, 6> triad_vertices(const ConicTriad& tr) {
    std::array<Point2, 6> v;
    for (int i = 0; i < 3; ++i) {
        const FocalConic& fc = tr.conics[i];
        Point2 m = fc.center(), u = fc.axis_dir();
        v[2 * i] = m + u * (0.5 * tr.params[i]);
        v[2 * i + 1] = m - u * (0.5 * tr.params[i]);
    }
    return v;
}

std::array<Point2, 6> triad_covertices(const ConicTriad& tr) {
    std::array<Point2, 6> v;
    for (int i = 0; i < 3; ++i) {
        CoVertices cv = covertices_of_focal_conic(tr.conics[i]);
        v[2 * i] = cv.first;
        v[2 * i + 1] = cv.second;
    }
    return v;
}

namespace {

SixPointConicReport finish_report(SixPointConicReport r, std::span<const Point2> pts) {
    r.frame = frame_of(pts);
    r.klass = classify(r.conic, r.frame);
    try {
        r.center = center(r.conic);
    } catch (const Error&) {
        r.center.reset();
    }
    return r;
}

}  // namespace

SixPointConicReport six_point_fit(std::span<const Point2> six) {
    if (six.size() != 6) throw Error(ErrorKind::RankDeficient, "six points required");
    SixPointConicReport r;
    r.conic = fit_conic_5pts(six.first(5));
    r.residual6 = residual(r.conic, six[5]);
    return finish_report(r, six);
}

SixPointConicReport six_point_conic(const ConicTriad& tr) {
    auto v = triad_vertices(tr);
    SixPointConicReport r;
    bool any_double = tr.double_vertex[0] || tr.double_vertex[1] || tr.double_vertex[2];
    if (!any_double) {
        r = six_point_fit(v);
    } else {
        // A collapsed member contributes its midpoint plus tangency to the sideline there.
        std::vector<Point2> pts;
        std::vector<TangentConstraint> tans;
        for (int i = 0; i < 3; ++i) {
            if (tr.double_vertex[i]) {
                pts.push_back(v[2 * i]);
                tans.push_back({v[2 * i], tr.conics[i].focus1 - tr.conics[i].focus2});
            } else {
                pts.push_back(v[2 * i]);
                pts.push_back(v[2 * i + 1]);
            }
        }
        r.tangency_fit = true;
        if (tans.size() <= 1) {
            Point2 held = pts.back();
            pts.pop_back();
            r.conic = fit_conic_constrained(pts, tans);
            r.residual6 = residual(r.conic, held);
        } else {
            TangentConstraint held = tans.back();
            tans.pop_back();
            r.conic = fit_conic_constrained(pts, tans);
            Point2 g = r.conic.gradient(held.at);
            double gn = norm(g);
            r.residual6 = gn > 0 ? std::fabs(dot(g, unit(held.direction))) / gn : 0.0;
            r.residual6 = std::max(r.residual6, residual(r.conic, held.at));
        }
        r = finish_report(r, v);
    }
    try {
        r.carnot_product = carnot_product(tr.t, v);
    } catch (const Error&) {
        r.carnot_product = NAN;
    }
    return r;
}

double carnot_product(const Triangle& t, const std::array<Point2, 6>& six) {
    double tol = 1e-8 * t.diameter();
    for (int i = 0; i < 3; ++i) {
        LineEq l = sideline(t, i);
        if (point_line_distance(six[2 * i], l) > tol || point_line_distance(six[2 * i + 1], l) > tol)
            throw Error(ErrorKind::PointOffSideline, "vertex off its sideline");
    }
    const Point2 &A = t.A, &B = t.B, &C = t.C;
    const Point2 &A1 = six[0], &A2 = six[1], &B1 = six[2], &B2 = six[3], &C1 = six[4], &C2 = six[5];
    auto d = distance;
    return (d(A, C1) / d(B, C1)) * (d(A, C2) / d(B, C2)) * (d(B, A1) / d(C, A1)) * (d(B, A2) / d(C, A2)) *
           (d(C, B1) / d(A, B1)) * (d(C, B2) / d(A, B2));
}

double menelaus_check(const Triangle& t, const Point2& p1, const Point2& p2, const Point2& p3) {
    double tol = 1e-8 * t.diameter();
    if (point_line_distance(p1, sideline(t, 0)) > tol || point_line_distance(p2, sideline(t, 1)) > tol ||
        point_line_distance(p3, sideline(t, 2)) > tol)
        throw Error(ErrorKind::PointOffSideline, "Menelaus point off its sideline");
    auto d = distance;
    return (d(p1, t.C) / d(p1, t.B)) * (d(p3, t.B) / d(p3, t.A)) * (d(p2, t.A) / d(p2, t.C));
}

std::array<std::vector<Point2>, 3> pairwise_intersections(const ConicTriad& tr) {
    std::array<Point2, 3> verts{tr.t.A, tr.t.B, tr.t.C};
    NormFrame f = frame_of(verts);
    std::array<Conic, 3> m{member_conic(tr, 0), member_conic(tr, 1), member_conic(tr, 2)};
    return {conic_conic_intersection(m[1], m[2], f), conic_conic_intersection(m[0], m[2], f),
            conic_conic_intersection(m[0], m[1], f)};
}

double focal_difference(const ConicTriad& tr, int i, const Point2& x) {
    return distance(x, tr.conics[i].focus1) - distance(x, tr.conics[i].focus2);
}

int branch_sign(const ConicTriad& tr, int i, const Point2& x) {
    double d = focal_difference(tr, i, x);
    return (d >= 0) == (tr.params[i] >= 0) ? 1 : -1;
}

bool ClaimReport::all_pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

double ClaimReport::max_residual() const {
    double m = 0;
    for (const auto& c : claims) m = std::max(m, c.residual);
    return m;
}

namespace {

void add_claim(ClaimReport& r, std::string name, double residual, double tol) {
    r.claims.push_back({std::move(name), std::isfinite(residual) && residual <= tol, residual});
}

const char* kSide[3] = {"a", "b", "c"};

void v_ellipse_claims(const ConicTriad& tr, ClaimReport& r, double tol) {
    const Triangle& t = tr.t;
    double diam = t.diameter();
    auto pairs = pairwise_intersections(tr);
    auto ex = excircles(t);
    Point2 x20 = classic_center(t, CenterId::X20);
    for (int i = 0; i < 3; ++i) {
        std::string s = kSide[i];
        if (pairs[i].size() != 2) {
            add_claim(r, "chord_" + s + "_two_points", INFINITY, tol);
            continue;
        }
        LineEq chord = line_through(pairs[i][0], pairs[i][1]);
        add_claim(r, "chord_" + s + "_through_excenter", rel_dist(ex[i].center, chord, diam), tol);
        add_claim(r, "chord_" + s + "_through_X20", rel_dist(x20, chord, diam), tol);
    }
    // Excentral sides: external bisector at each vertex, i.e. line I_b I_c through A.
    for (int i = 0; i < 3; ++i) {
        LineEq side = line_through(ex[(i + 1) % 3].center, ex[(i + 2) % 3].center);
        Conic c = member_conic(tr, i);
        add_claim(r, std::string("tangent_excentral_side_") + kSide[i],
                  tangency_residual(c, t.vertex(i), side), tol);
    }
    double a2 = t.a * t.a, b2 = t.b * t.b, c2 = t.c * t.c;
    double m = std::max({a2, b2, c2});
    bool right = std::fabs(a2 + b2 + c2 - 2 * m) <= 1e-12 * m;
    if (right)
        for (int i = 0; i < 3; ++i)
            add_claim(r, std::string("right_passes_X20_") + kSide[i], tr.conics[i].focal_residual(x20) / diam, tol);
}

void v_hyperbola_claims(const ConicTriad& tr, ClaimReport& r, double tol) {
    const Triangle& t = tr.t;
    double diam = t.diameter();
    if (tr.any_degenerate()) {
        add_claim(r, "nondegenerate_members", INFINITY, tol);
        return;
    }
    // H_b and H_c meet at X176, X175 and the chord pair A1, A2. The pencil member through a
    // third point of line X176 X175 contains that line; its other component is line A1 A2,
    // which is real even when A1, A2 are a complex-conjugate pair.
    SoddyCenters sc = soddy_centers(t);
    std::array<Point2, 3> tri{t.A, t.B, t.C};
    NormFrame f = frame_of(tri);
    auto to_f = [&](const Point2& p) { return (p - f.origin) / f.scale; };
    Point2 s1 = to_f(sc.x176);
    Point2 q = sc.x175 ? to_f(midpoint(sc.x176, *sc.x175)) : s1 + sc.x175_direction;
    Point2 x8 = to_f(classic_center(t, CenterId::X8));
    for (int i = 0; i < 3; ++i) {
        Conic cj = to_frame(member_conic(tr, (i + 1) % 3), f), ck = to_frame(member_conic(tr, (i + 2) % 3), f);
        Eigen::Matrix3d d = cj.m * ck.eval(q) - ck.m * cj.eval(q);
        auto lines = split_degenerate(d);
        if (!lines) {
            add_claim(r, std::string("chord_") + kSide[i] + "_constructed", INFINITY, tol);
            continue;
        }
        auto off = [&](const LineEq& l) { return std::max(point_line_distance(s1, l), point_line_distance(q, l)); };
        const LineEq& chord = off(lines->first) > off(lines->second) ? lines->first : lines->second;
        add_claim(r, std::string("chord_") + kSide[i] + "_through_X8", point_line_distance(x8, chord) * f.scale / diam,
                  tol);
    }
    double w176 = 0, w175 = 0;
    for (int i = 0; i < 3; ++i) {
        w176 = std::max(w176, tr.conics[i].focal_residual(sc.x176) / diam);
        if (sc.x175) w175 = std::max(w175, tr.conics[i].focal_residual(*sc.x175) / diam);
    }
    add_claim(r, "members_through_X176", w176, tol);
    if (sc.x175) add_claim(r, "members_through_X175", w175, tol);
    ConicTriad ve = build_triad(t, TriadKind::v_ellipse);
    auto epairs = pairwise_intersections(ve);
    for (int i = 0; i < 3; ++i) {
        double w = epairs[i].empty() ? INFINITY : 0.0;
        for (const auto& x : epairs[i]) w = std::max(w, tr.conics[i].focal_residual(x) / diam);
        add_claim(r, std::string("member_") + kSide[i] + "_through_vellipse_pair", w, tol);
    }
}

}  // namespace

ClaimReport concurrency_theorems(const ConicTriad& tr, double tol) {
    ClaimReport r;
    if (tr.kind == TriadKind::v_ellipse) v_ellipse_claims(tr, r, tol);
    if (tr.kind == TriadKind::v_hyperbola) v_hyperbola_claims(tr, r, tol);
    return r;
}

Point2 second_common_point(const ConicTriad& tr) {
    if (tr.kind != TriadKind::p_hyperbola) throw Error(ErrorKind::DomainError, "needs a p_hyperbola triad");
    if (tr.any_degenerate()) throw Error(ErrorKind::NotFound, "degenerate member");
    std::array<Point2, 3> verts{tr.t.A, tr.t.B, tr.t.C};
    auto pts = conic_conic_intersection(member_conic(tr, 1), member_conic(tr, 2), frame_of(verts));
    double diam = tr.t.diameter();
    double best = INFINITY;
    Point2 out;
    for (const auto& x : pts) {
        double w = 0;
        for (int i = 0; i < 3; ++i) w = std::max(w, std::fabs(focal_difference(tr, i, x) + tr.params[i]));
        if (w < best) {
            best = w;
            out = x;
        }
    }
    if (!(best <= 1e-7 * diam)) throw Error(ErrorKind::NotFound, "no common point on the opposite branches");
    return out;
}

std::pair<double, double> equal_area_check(const ConicTriad& tr) {
    auto v = triad_vertices(tr);
    return {std::fabs(signed_area(v[0], v[2], v[4])), std::fabs(signed_area(v[1], v[3], v[5]))};
}

}  // namespace triconic
