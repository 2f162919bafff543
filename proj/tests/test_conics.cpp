#include "support.hpp"

#include <numbers>

#include "triconic/centers_circles.hpp"
#include "triconic/error.hpp"

using namespace triconic;
using tt::near;

namespace {

Conic expected(double xx, double xy, double yy, double x, double y, double one) {
    return Conic::from_coeffs({xx, xy, yy, x, y, one});
}

FocalConic random_focal(std::mt19937_64& g) {
    FocalConic fc;
    fc.focus1 = {uniform(g, -2, 2), uniform(g, -2, 2)};
    double ang = uniform(g, 0, 2 * std::numbers::pi), d = uniform(g, 0.1, 2);
    fc.focus2 = fc.focus1 + Point2{std::cos(ang), std::sin(ang)} * d;
    if (uniform(g, 0, 1) < 0.5) {
        fc.kind = FocalKind::ellipse;
        fc.axis_length = d * uniform(g, 1.05, 4);
    } else {
        fc.kind = FocalKind::hyperbola;
        fc.axis_length = d * uniform(g, 0.05, 0.95);
    }
    return fc;
}

// Point with |q-f1| +- |q-f2| = 2 alpha at focal-polar angle phi.
Point2 focal_point(const FocalConic& fc, double phi, bool second_branch) {
    double a = fc.alpha(), c = fc.half_focal();
    Point2 u = fc.axis_dir(), v = perp(u), o = fc.center();
    if (fc.kind == FocalKind::ellipse) {
        double b = std::sqrt(a * a - c * c);
        return o + u * (a * std::cos(phi)) + v * (b * std::sin(phi));
    }
    double b = std::sqrt(c * c - a * a), s = second_branch ? -1 : 1;
    return o + u * (s * a * std::cosh(phi)) + v * (b * std::sinh(phi));
}

}  // namespace

TEST_CASE("conic_from_foci textbook cases") {
    CHECK(tt::conic_gap(conic_from_foci({{1, 0}, {-1, 0}, 4, FocalKind::ellipse}),
                        expected(1.0 / 4, 0, 1.0 / 3, 0, 0, -1)) <= 1e-14);
    // (x-2)^2/16 + y^2/12 = 1
    CHECK(tt::conic_gap(conic_from_foci({{4, 0}, {0, 0}, 8, FocalKind::ellipse}),
                        expected(3, 0, 4, -12, 0, -36)) <= 1e-14);
    // (x-2)^2 - y^2/3 = 1
    CHECK(tt::conic_gap(conic_from_foci({{4, 0}, {0, 0}, 2, FocalKind::hyperbola}),
                        expected(3, 0, -1, -12, 0, 9)) <= 1e-14);
}

TEST_CASE("conic_from_foci rejects invalid axis lengths") {
    CHECK_THROWS_AS(conic_from_foci({{1, 0}, {-1, 0}, 2, FocalKind::ellipse}), Error);
    CHECK_THROWS_AS(conic_from_foci({{1, 0}, {-1, 0}, 2, FocalKind::hyperbola}), Error);
    CHECK_THROWS_AS(conic_from_foci({{1, 0}, {-1, 0}, 0, FocalKind::hyperbola}), Error);
}

TEST_CASE("classify examples") {
    CHECK(classify(expected(1, 0, 1, 0, 0, -1)) == ConicKind::circle);
    CHECK(classify(expected(0, 1, 0, 0, 0, -1)) == ConicKind::rectangular_hyperbola);
    // (x+y-6)(x-2y-6)
    CHECK(classify(expected(1, -1, -2, -12, 6, 36)) == ConicKind::degenerate_two_lines);
    CHECK(classify(expected(1, 0, 2, 0, 0, -1)) == ConicKind::ellipse);
    CHECK(classify(expected(1, 0, -2, 0, 0, -1)) == ConicKind::hyperbola);
    CHECK(classify(expected(1, 0, 0, 0, -1, 0)) == ConicKind::parabola);
    CHECK(classify(expected(1, 0, 0, 0, 0, -1)) == ConicKind::degenerate_parallel_lines);
    CHECK(classify(expected(1, 0, 1, 0, 0, 0)) == ConicKind::degenerate_point);
}

TEST_CASE("center examples") {
    CHECK(near(center(expected(3, 0, 4, -12, 0, -36)), {2, 0}, 1e-13));
    CHECK(near(center(expected(0, 1, 0, 0, 0, 0)), {0, 0}, 1e-15));
    CHECK_THROWS_AS(center(expected(1, 0, 0, 0, -1, 0)), Error);
    CHECK_THROWS_AS(center(expected(1, 0, 0, 0, 0, -1)), Error);
}

TEST_CASE("degenerate Yiu conic of 3-4-5 from hand-computed tangency points") {
    std::array<Point2, 6> six = {Point2{6, 0}, {-2, 0}, {0, -3}, {0, 6}, {-4.0 / 5, 18.0 / 5}, {24.0 / 5, -3.0 / 5}};
    Conic c = fit_conic_5pts(std::span(six).first(5));
    CHECK(residual(c, six[5]) <= 1e-9);
    CHECK(classify(c, frame_of(six)) == ConicKind::degenerate_two_lines);
    CHECK(near(center(c), {-18.0 / 5, -24.0 / 5}, 1e-9));
}

TEST_CASE("fit_conic_5pts") {
    std::array<Point2, 5> circ;
    for (int i = 0; i < 5; ++i) circ[i] = {std::cos(1.1 * i + 0.2), std::sin(1.1 * i + 0.2)};
    CHECK(tt::conic_gap(fit_conic_5pts(circ), expected(1, 0, 1, 0, 0, -1)) <= 1e-12);

    std::array<Point2, 5> bad = {Point2{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}};
    CHECK_THROWS_AS(fit_conic_5pts(bad), Error);

    for (int k = 0; k < 200; ++k) {
        auto g = tt::rng(2, k);
        std::array<Point2, 5> pts;
        for (auto& p : pts) p = {uniform(g, -3, 3), uniform(g, -3, 3)};
        Conic c = fit_conic_5pts(pts);
        for (const auto& p : pts) CHECK(residual(c, p) <= 1e-12);
    }
}

TEST_CASE("residual examples") {
    Conic unit = expected(1, 0, 1, 0, 0, -1);
    CHECK(residual(unit, {1, 0}) == 0);
    CHECK(residual(unit, {2, 0}) == doctest::Approx(3 / (std::sqrt(3.0) * 5)).epsilon(1e-14));
}

TEST_CASE("vertices and co-vertices of focal conics") {
    FocalConic e{{4, 0}, {0, 0}, 8, FocalKind::ellipse};
    auto [v1, v2] = vertices_of_focal_conic(e);
    CHECK(near(v1, {6, 0}, 1e-14));
    CHECK(near(v2, {-2, 0}, 1e-14));
    CoVertices cv = covertices_of_focal_conic(e);
    CHECK(cv.on_curve);
    CHECK(std::fabs(cv.first.x - 2) <= 1e-14);
    CHECK(std::fabs(std::fabs(cv.first.y) - std::sqrt(12.0)) <= 1e-14);
    CHECK(near(cv.first + cv.second, {4, 0}, 1e-14));

    FocalConic h{{4, 0}, {0, 0}, 2, FocalKind::hyperbola};
    auto [h1, h2] = vertices_of_focal_conic(h);
    CHECK(near(h1, {3, 0}, 1e-14));
    CHECK(near(h2, {1, 0}, 1e-14));
    CHECK_FALSE(covertices_of_focal_conic(h).on_curve);
}

TEST_CASE("conic_line_intersection") {
    Conic unit = expected(1, 0, 1, 0, 0, -1);
    auto pts = conic_line_intersection(unit, {0, 1, 0});
    REQUIRE(pts.size() == 2);
    CHECK(std::fabs(std::fabs(pts[0].x) - 1) <= 1e-15);
    CHECK(pts[0].x * pts[1].x < 0);
    CHECK(conic_line_intersection(unit, {1, 0, -2}).empty());

    auto ell = conic_line_intersection(expected(3, 0, 4, -12, 0, -36), {0, 1, 0});
    REQUIRE(ell.size() == 2);
    double lo = std::min(ell[0].x, ell[1].x), hi = std::max(ell[0].x, ell[1].x);
    CHECK(lo == doctest::Approx(-2));
    CHECK(hi == doctest::Approx(6));

    CHECK_THROWS_AS(conic_line_intersection(expected(0, 1, 0, 0, 0, 0), {0, 1, 0}), Error);
}

TEST_CASE("tangent line has zero discriminant") {
    Conic unit = expected(1, 0, 1, 0, 0, -1);
    CHECK(std::fabs(line_conic_discriminant(unit, {1, 0, -1})) <= 1e-15);
    CHECK(line_conic_discriminant(unit, {1, 0, -2}) < 0);
    CHECK(line_conic_discriminant(unit, {1, 0, -0.5}) > 0);
    CHECK(tangency_residual(unit, {1, 0}, {1, 0, -1}) <= 1e-15);
    CHECK(tangency_residual(unit, {1, 0}, {1, 1, -1}) > 0.1);
}

TEST_CASE("barycentric circumcircle of 3-4-5 converts to the hypotenuse circle") {
    Triangle t = tt::t345();
    double a2 = 16, b2 = 9, c2 = 25;
    Eigen::Matrix3d m;
    m << 0, c2 / 2, b2 / 2, c2 / 2, 0, a2 / 2, b2 / 2, a2 / 2, 0;
    Conic cart = conic_bary_to_cartesian(Conic(m, ConicFrame::barycentric), t);
    CHECK(classify(cart) == ConicKind::circle);
    CHECK(near(center(cart), {2, 1.5}, 1e-12));
    CHECK(residual(cart, {2 + 2.5 * std::cos(0.7), 1.5 + 2.5 * std::sin(0.7)}) <= 1e-14);
}

TEST_CASE("Privalov conic of 3-4-5 passes through the intouch point (1,0)") {
    // d = (a-b-c)(a+b-c)(a-b+c) on the diagonal, off-diagonals from the closed form at a=4, b=3, c=5.
    Eigen::Matrix3d m;
    m << -48, 52, 60, 52, -48, 80, 60, 80, -48;
    Eigen::Vector3d p(0, 3, 1);
    CHECK(p.dot(m * p) == 0);
    Conic cart = conic_bary_to_cartesian(Conic(m, ConicFrame::barycentric), tt::t345());
    CHECK(residual(cart, {1, 0}) <= 1e-9);
}

TEST_CASE("barycentric evaluation at a vertex matches its Cartesian image") {
    auto g = tt::rng(3);
    Triangle t = random_triangle(g);
    Eigen::Matrix3d m = Eigen::Matrix3d::Random();
    m = (m + m.transpose()).eval();
    Conic cb(m, ConicFrame::barycentric);
    Conic cc = conic_bary_to_cartesian(cb, t);
    std::array<double, 3> ratio{};
    for (int i = 0; i < 3; ++i) {
        Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
        ratio[i] = e.dot(cb.m * e) / cc.eval(t.vertex(i));
    }
    CHECK(ratio[1] == doctest::Approx(ratio[0]).epsilon(1e-10));
    CHECK(ratio[2] == doctest::Approx(ratio[0]).epsilon(1e-10));
}

TEST_CASE("property: focal conics classify by kind and contain their locus") {
    for (int k = 0; k < 1000; ++k) {
        auto g = tt::rng(4, k);
        FocalConic fc = random_focal(g);
        Conic c = conic_from_foci(fc);
        ConicKind kind = classify(c);
        if (fc.kind == FocalKind::ellipse)
            CHECK(kind == ConicKind::ellipse);
        else
            CHECK((kind == ConicKind::hyperbola || kind == ConicKind::rectangular_hyperbola));
        auto [v1, v2] = vertices_of_focal_conic(fc);
        CHECK(residual(c, v1) <= 1e-9);
        CHECK(residual(c, v2) <= 1e-9);
        for (int s = 0; s < 4; ++s) {
            Point2 q = focal_point(fc, uniform(g, -1.5, 1.5), s % 2);
            CHECK(residual(c, q) <= 1e-9);
            CHECK(fc.focal_residual(q) <= 1e-9 * (1 + fc.axis_length));
        }
    }
}

TEST_CASE("property: classify is invariant under scaling and rotation") {
    for (int k = 0; k < 500; ++k) {
        auto g = tt::rng(5, k);
        std::array<Point2, 5> pts;
        for (auto& p : pts) p = {uniform(g, -1, 1), uniform(g, -1, 1)};
        Conic c = fit_conic_5pts(pts);
        ConicKind kind = classify(c, frame_of(pts));
        double s = std::pow(10.0, uniform(g, -2, 2)), th = uniform(g, 0, 2 * std::numbers::pi);
        std::array<Point2, 5> q;
        for (int i = 0; i < 5; ++i) {
            Point2 p = pts[i];
            q[i] = Point2{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y} * s;
        }
        Conic cq = fit_conic_5pts(q);
        CHECK(classify(cq, frame_of(q)) == kind);
    }
}

TEST_CASE("property: center of a line pair lies on both lines") {
    for (int k = 0; k < 200; ++k) {
        auto g = tt::rng(6, k);
        LineEq l1{uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
        LineEq l2{uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
        Eigen::Vector3d u(l1.l, l1.m, l1.n), v(l2.l, l2.m, l2.n);
        if (std::fabs(l1.l * l2.m - l1.m * l2.l) < 0.05) continue;
        Conic c(u * v.transpose() + v * u.transpose());
        CHECK(classify(c) == ConicKind::degenerate_two_lines);
        Point2 o = center(c);
        CHECK(point_line_distance(o, l1) <= 1e-9 * (1 + norm(o)));
        CHECK(point_line_distance(o, l2) <= 1e-9 * (1 + norm(o)));
        auto split = split_degenerate(c.m);
        REQUIRE(split.has_value());
        CHECK(point_line_distance(o, split->first) <= 1e-9 * (1 + norm(o)));
    }
}

TEST_CASE("conic_conic_intersection of two circles") {
    Conic c1 = expected(1, 0, 1, 0, 0, -1);
    Conic c2 = expected(1, 0, 1, -2, 0, 0);  // center (1,0), radius 1
    auto pts = conic_conic_intersection(c1, c2);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK(p.x == doctest::Approx(0.5));
        CHECK(std::fabs(p.y) == doctest::Approx(std::sqrt(3.0) / 2));
    }
}
