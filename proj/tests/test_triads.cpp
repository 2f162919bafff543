#include "support.hpp"

#include <algorithm>

#include "triconic/error.hpp"
#include "triconic/triads.hpp"

using namespace triconic;
using tt::near;

namespace {

bool contains_point(const std::array<Point2, 6>& pts, const Point2& q, double tol) {
    return std::any_of(pts.begin(), pts.end(), [&](const Point2& p) { return near(p, q, tol); });
}

double line_value(const Triangle& t, const BaryCoords& line, const Point2& p) {
    BaryCoords b = cartesian_to_bary(t, p);
    return line.u * b.u + line.v * b.v + line.w * b.w;
}

}  // namespace

TEST_CASE("axis lengths of the 3-4-5 triads") {
    Triangle t = tt::t345();
    ConicTriad ve = build_triad(t, TriadKind::v_ellipse);
    CHECK(ve.params[0] == doctest::Approx(8));
    CHECK(ve.params[1] == doctest::Approx(9));
    CHECK(ve.params[2] == doctest::Approx(7));
    ConicTriad vh = build_triad(t, TriadKind::v_hyperbola);
    CHECK(std::fabs(vh.params[0]) == doctest::Approx(2));
    CHECK(std::fabs(vh.params[1]) == doctest::Approx(1));
    CHECK(std::fabs(vh.params[2]) == doctest::Approx(1));
    for (int i = 0; i < 3; ++i) {
        Point2 mid = midpoint(t.vertex((i + 1) % 3), t.vertex((i + 2) % 3));
        CHECK(near(ve.conics[i].center(), mid, 1e-15));
        CHECK(ve.conics[i].focal_residual(t.vertex(i)) <= 1e-14);
        CHECK(vh.conics[i].focal_residual(t.vertex(i)) <= 1e-14);
    }
}

TEST_CASE("equilateral P-ellipses through the centroid") {
    Triangle t = equilateral(1.0);
    Point2 g = (t.A + t.B + t.C) / 3;
    ConicTriad tr = build_triad(t, TriadKind::p_ellipse, g);
    for (int i = 0; i < 3; ++i) CHECK(tr.params[i] == doctest::Approx(2 / std::sqrt(3.0)));
    auto v = triad_vertices(tr);
    // 120 degree rotation about g maps A1 to B1 up to labeling
    Point2 d = v[0] - g;
    double c = std::cos(2 * M_PI / 3), s = std::sin(2 * M_PI / 3);
    Point2 rot = g + Point2{c * d.x - s * d.y, s * d.x + c * d.y};
    CHECK(contains_point(v, rot, 1e-12));
}

TEST_CASE("P-kinds reject P at a vertex") {
    Triangle t = tt::t345();
    CHECK_THROWS_AS(build_triad(t, TriadKind::p_ellipse, t.A), Error);
    CHECK_THROWS_AS(build_triad(t, TriadKind::p_hyperbola, std::nullopt), Error);
}

TEST_CASE("triad vertices of 3-4-5") {
    Triangle t = tt::t345();
    auto v = triad_vertices(build_triad(t, TriadKind::v_ellipse));
    for (Point2 q : {Point2{6, 0}, {-2, 0}, {0, -3}, {0, 6}, {-4.0 / 5, 18.0 / 5}, {24.0 / 5, -3.0 / 5}})
        CHECK(contains_point(v, q, 1e-13));
    auto h = triad_vertices(build_triad(t, TriadKind::v_hyperbola));
    CHECK(((near(h[0], {3, 0}, 1e-13) && near(h[1], {1, 0}, 1e-13)) ||
           (near(h[0], {1, 0}, 1e-13) && near(h[1], {3, 0}, 1e-13))));
}

TEST_CASE("equilateral V-ellipse co-vertices") {
    Triangle t = equilateral(1.0);
    auto cv = triad_covertices(build_triad(t, TriadKind::v_ellipse));
    for (int i = 0; i < 3; ++i) {
        Point2 mid = midpoint(t.vertex((i + 1) % 3), t.vertex((i + 2) % 3));
        CHECK(distance(cv[2 * i], mid) == doctest::Approx(std::sqrt(3.0) / 2));
        CHECK(distance(cv[2 * i + 1], mid) == doctest::Approx(std::sqrt(3.0) / 2));
    }
}

TEST_CASE("property: vertex barycentrics") {
    for (int k = 0; k < 200; ++k) {
        auto g = tt::rng(20, k);
        Triangle t = random_triangle(g);
        double a = t.a, b = t.b, c = t.c;
        auto ve = triad_vertices(build_triad(t, TriadKind::v_ellipse));
        CHECK(projectively_equal(cartesian_to_bary(t, ve[0]), {0, a + b + c, a - b - c}, 1e-9));
        CHECK(projectively_equal(cartesian_to_bary(t, ve[1]), {0, a - b - c, a + b + c}, 1e-9));
        ConicTriad vh = build_triad(t, TriadKind::v_hyperbola);
        if (vh.degenerate[0]) continue;
        double la = c - b;
        auto hv = triad_vertices(vh);
        bool fwd = projectively_equal(cartesian_to_bary(t, hv[0]), {0, a + la, a - la}, 1e-9) &&
                   projectively_equal(cartesian_to_bary(t, hv[1]), {0, a - la, a + la}, 1e-9);
        bool rev = projectively_equal(cartesian_to_bary(t, hv[1]), {0, a + la, a - la}, 1e-9) &&
                   projectively_equal(cartesian_to_bary(t, hv[0]), {0, a - la, a + la}, 1e-9);
        CHECK((fwd || rev));
    }
}

TEST_CASE("six-point conic examples") {
    Triangle t = tt::t345();
    SixPointConicReport r = six_point_conic(build_triad(t, TriadKind::v_ellipse));
    CHECK(r.klass == ConicKind::degenerate_two_lines);
    REQUIRE(r.center.has_value());
    CHECK(near(*r.center, {-3.6, -4.8}, 1e-9));
    CHECK(r.residual6 <= 1e-9);

    Triangle e = equilateral(1.0);
    SixPointConicReport re = six_point_conic(build_triad(e, TriadKind::v_ellipse));
    CHECK(re.klass == ConicKind::circle);
    REQUIRE(re.center.has_value());
    CHECK(near(*re.center, (e.A + e.B + e.C) / 3, 1e-12));

    SixPointConicReport rh = six_point_conic(build_triad(t, TriadKind::v_hyperbola));
    CHECK(rh.residual6 <= 1e-9);
    Eigen::Matrix3d m;
    m << -48, 52, 60, 52, -48, 80, 60, 80, -48;
    Conic privalov = conic_bary_to_cartesian(Conic(m, ConicFrame::barycentric), t);
    CHECK(tt::conic_gap(to_frame(privalov, rh.frame), to_frame(rh.conic, rh.frame)) <= 1e-9);
}

TEST_CASE("Carnot and Menelaus products") {
    Triangle t = tt::t345();
    auto ve = triad_vertices(build_triad(t, TriadKind::v_ellipse));
    CHECK(carnot_product(t, ve) == doctest::Approx(1).epsilon(1e-14));
    auto vh = triad_vertices(build_triad(t, TriadKind::v_hyperbola));
    CHECK(carnot_product(t, vh) == doctest::Approx(1).epsilon(1e-14));
    auto moved = ve;
    moved[0] = moved[0] + unit(t.C - t.B) * 0.1;
    CHECK(std::fabs(carnot_product(t, moved) - 1) > 1e-3);
    auto off = ve;
    off[0] = off[0] + Point2{0, 0.5};
    CHECK_THROWS_AS(carnot_product(t, off), Error);

    // A1, B1, C2 lie on one line of the degenerate 3-4-5 conic
    CHECK(menelaus_check(t, {6, 0}, {0, -3}, {24.0 / 5, -3.0 / 5}) == doctest::Approx(1).epsilon(1e-14));
    Triangle u({11.0 / 8, std::sqrt(4 - 121.0 / 64)}, {0, 0}, {4, 0});  // a=4, b=3, c=2
    auto uv = triad_vertices(build_triad(u, TriadKind::v_ellipse));
    CHECK(std::fabs(menelaus_check(u, uv[0], uv[2], uv[5]) - 1) > 0.1);
    CHECK(menelaus_check(t, midpoint(t.B, t.C), midpoint(t.C, t.A), midpoint(t.A, t.B)) == doctest::Approx(1));
}

TEST_CASE("V-ellipse chord A'A'' matches the closed-form line") {
    for (int k = 0; k < 100; ++k) {
        auto g = tt::rng(21, k);
        Triangle t = k == 0 ? tt::t345() : random_triangle(g);
        double a = t.a, b = t.b, c = t.c, s = a + b + c;
        BaryCoords line{-(b - c) * s * s, -(a + b - c) * (a + b - c) * (a + c), (a + b) * (a - b + c) * (a - b + c)};
        auto pairs = pairwise_intersections(build_triad(t, TriadKind::v_ellipse));
        REQUIRE(pairs[0].size() == 2);
        double mag = std::fabs(line.u) + std::fabs(line.v) + std::fabs(line.w);
        for (const auto& p : pairs[0]) CHECK(std::fabs(line_value(t, line, p)) <= 1e-9 * mag * (1 + norm(p)));
        if (k == 0) {
            CHECK(-4 * line.u + 3 * line.v + 5 * line.w == doctest::Approx(0));
            CHECK(line.u + line.v - line.w == doctest::Approx(0));
        }
    }
}

TEST_CASE("pairwise intersections lie on both members") {
    Triangle t = tt::t345();
    ConicTriad tr = build_triad(t, TriadKind::v_ellipse);
    auto pairs = pairwise_intersections(tr);
    const int idx[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    for (int k = 0; k < 3; ++k) {
        CHECK(pairs[k].size() == 2);
        for (const auto& p : pairs[k]) {
            CHECK(residual(member_conic(tr, idx[k][0]), p) <= 1e-9);
            CHECK(residual(member_conic(tr, idx[k][1]), p) <= 1e-9);
        }
    }
    auto g = tt::rng(22);
    Triangle u = random_triangle(g);
    Point2 p = random_interior_point(g, u);
    auto pp = pairwise_intersections(build_triad(u, TriadKind::p_ellipse, p));
    for (int k = 0; k < 3; ++k)
        CHECK(std::any_of(pp[k].begin(), pp[k].end(), [&](const Point2& q) { return near(q, p, 1e-9); }));
}

TEST_CASE("concurrency theorems on 3-4-5") {
    Triangle t = tt::t345();
    ConicTriad vh = build_triad(t, TriadKind::v_hyperbola);
    ClaimReport r = concurrency_theorems(vh);
    CHECK(r.all_pass());
    CHECK(r.max_residual() <= 1e-8);
    Point2 x175{4, 3};
    CHECK(std::fabs(std::fabs(distance(x175, t.B) - distance(x175, t.C)) - 2) <= 1e-14);
    CHECK(std::fabs(std::fabs(focal_difference(vh, 0, x175)) - 2) <= 1e-14);

    ConicTriad ve = build_triad(t, TriadKind::v_ellipse);
    CHECK(concurrency_theorems(ve).all_pass());
    for (int i = 0; i < 3; ++i) CHECK(residual(member_conic(ve, i), {4, 3}) <= 1e-12);
}

TEST_CASE("property: the three sidelines carry all 15 points") {
    for (int k = 0; k < 100; ++k) {
        auto g = tt::rng(23, k);
        Triangle t = random_triangle(g);
        ConicTriad vh = build_triad(t, TriadKind::v_hyperbola);
        if (vh.any_degenerate()) continue;
        auto v1 = triad_vertices(build_triad(t, TriadKind::v_ellipse));
        auto v2 = triad_vertices(vh);
        for (int i = 0; i < 6; ++i) {
            LineEq side = sideline(t, i / 2);
            CHECK(point_line_distance(v1[i], side) <= 1e-12 * t.diameter() * (1 + norm(v1[i])));
            CHECK(point_line_distance(v2[i], side) <= 1e-12 * t.diameter() * (1 + norm(v2[i])));
        }
    }
}

TEST_CASE("second common point of P-hyperbolas") {
    int found = 0;
    for (int k = 0; k < 100; ++k) {
        auto g = tt::rng(24, k);
        Triangle t = random_triangle(g);
        Point2 p = random_interior_point(g, t, 0.05);
        ConicTriad tr = build_triad(t, TriadKind::p_hyperbola, p);
        Point2 q;
        try {
            q = second_common_point(tr);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotFound);
            continue;
        }
        ++found;
        for (int i = 0; i < 3; ++i) {
            CHECK(residual(member_conic(tr, i), q) <= 1e-8);
            CHECK(branch_sign(tr, i, q) == -1);
        }
    }
    CHECK(found > 30);
}

TEST_CASE("isosceles with P on the axis keeps P' on the axis") {
    Triangle t({0, 1.3}, {-0.6, 0}, {0.6, 0});
    ConicTriad tr = build_triad(t, TriadKind::p_hyperbola, Point2{0.0, 0.35});
    try {
        Point2 q = second_common_point(tr);
        CHECK(std::fabs(q.x) <= 1e-9);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFound);
    }
}

TEST_CASE("property: equal areas and the vertex-gap identity") {
    for (int k = 0; k < 300; ++k) {
        auto g = tt::rng(25, k);
        Triangle t = random_triangle(g);
        Point2 p = random_point(g, t);
        ConicTriad tr = build_triad(t, TriadKind::p_hyperbola, p);
        if (tr.any_degenerate()) continue;
        auto [a1, a2] = equal_area_check(tr);
        CHECK(std::fabs(a1 - a2) <= 1e-9 * std::max(a1, a2));
        auto v = triad_vertices(tr);
        double ga = distance(v[0], v[1]), gb = distance(v[2], v[3]), gc = distance(v[4], v[5]);
        // lambda_a + lambda_b + lambda_c = 0, so one gap is the sum of the other two
        double m = std::max({ga, gb, gc});
        CHECK(std::min({std::fabs(gb + gc - ga), std::fabs(ga + gc - gb), std::fabs(ga + gb - gc)}) <= 1e-12 * (1 + m));
    }
    auto [i1, i2] = equal_area_check(build_triad(tt::t345(), TriadKind::v_hyperbola));
    CHECK(i1 == doctest::Approx(i2));
}
