#include "support.hpp"

#include "triconic/error.hpp"

using namespace triconic;
using tt::near;

TEST_CASE("triangle caches sides of 3-4-5") {
    Triangle t = tt::t345();
    CHECK(t.a == doctest::Approx(4));
    CHECK(t.b == doctest::Approx(3));
    CHECK(t.c == doctest::Approx(5));
    CHECK(t.p == doctest::Approx(6));
    CHECK(t.area() == doctest::Approx(6));
    CHECK(t.diameter() == doctest::Approx(5));
}

TEST_CASE("collinear vertices are rejected") {
    CHECK_THROWS_AS(Triangle({0, 0}, {1, 1}, {2, 2}), Error);
    try {
        Triangle({0, 0}, {1, 0}, {3, 0});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateTriangle);
    }
}

TEST_CASE("barycentric round trip") {
    for (int k = 0; k < 200; ++k) {
        auto g = tt::rng(1, k);
        Triangle t = random_triangle(g);
        Point2 p = random_point(g, t, 1.0);
        BaryCoords b = cartesian_to_bary(t, p);
        CHECK(near(bary_to_cartesian(t, b), p, 1e-12));
        BaryCoords scaled{-3 * b.u, -3 * b.v, -3 * b.w};
        CHECK(near(bary_to_cartesian(t, scaled), p, 1e-12));
    }
}

TEST_CASE("vertices have unit barycentrics") {
    Triangle t = tt::t345();
    CHECK(near(bary_to_cartesian(t, {1, 0, 0}), t.A, 1e-15));
    CHECK(near(bary_to_cartesian(t, {0, 2, 0}), t.B, 1e-15));
    CHECK(near(bary_to_cartesian(t, {0, 0, -5}), t.C, 1e-15));
    CHECK_THROWS_AS(bary_to_cartesian(t, {1, -1, 0}), Error);
}

TEST_CASE("projective equality ignores scale") {
    CHECK(projectively_equal({2, 3, 1}, {4, 6, 2}, 1e-12));
    CHECK(projectively_equal({2, 3, 1}, {-2, -3, -1}, 1e-12));
    CHECK_FALSE(projectively_equal({2, 3, 1}, {2, 3, 1.001}, 1e-6));
    BaryCoords n = BaryCoords{-4, 2, 1}.normalized();
    CHECK(n.u == doctest::Approx(1));
    CHECK(n.v == doctest::Approx(-0.5));
    CHECK(projectively_equal({1e-17, 1, -0.3}, {-1e-17, -1, 0.3}, 1e-12));
    CHECK(projectively_equal({1e-17, -1, 0.3}, {0, 1, -0.3}, 1e-12));
}

TEST_CASE("barycentric line x - y + z = 0 of 3-4-5 contains X8") {
    Triangle t = tt::t345();
    LineEq l = line_bary_to_cartesian(t, {1, -1, 1, LineFrame::barycentric});
    CHECK(point_line_distance({2, 1}, l) <= 1e-14);
    CHECK(point_line_distance(bary_to_cartesian(t, {2, 3, 1}), l) <= 1e-14);
}

TEST_CASE("lines: intersection, projection, reflection") {
    LineEq l1 = line_through({0, 0}, {1, 1});
    LineEq l2 = line_through({0, 2}, {2, 0});
    CHECK(near(line_intersection(l1, l2), {1, 1}, 1e-15));
    CHECK_THROWS_AS(line_intersection(l1, line_through({0, 1}, {1, 2})), Error);
    CHECK(near(project_onto_line({2, 0}, l1), {1, 1}, 1e-15));
    CHECK(point_line_distance({2, 0}, l1) == doctest::Approx(std::sqrt(2.0)));

    LineEq ab = line_through({0, 3}, {4, 0});
    CHECK(near(reflect_about_line({1, 1}, ab), {11.0 / 5, 13.0 / 5}, 1e-14));
    CHECK(near(reflect_about_point({1, 2}, {0, 0}), {-1, -2}, 0));
}

TEST_CASE("collinearity and concurrency are scale aware") {
    for (double s : {1e-3, 1.0, 1e3}) {
        CHECK(collinear(Point2{0, 0} * s, Point2{1, 1} * s, Point2{3, 3 + 1e-13} * s));
        CHECK_FALSE(collinear(Point2{0, 0} * s, Point2{1, 1} * s, Point2{3, 3.1} * s));
        LineEq a = line_through(Point2{0, 0} * s, Point2{1, 0} * s);
        LineEq b = line_through(Point2{0, 0} * s, Point2{0, 1} * s);
        LineEq c = line_through(Point2{-1, -1} * s, Point2{2, 2} * s);
        LineEq d = line_through(Point2{-1, -0.9} * s, Point2{2, 2} * s);
        CHECK(concurrent(a, b, c));
        CHECK_FALSE(concurrent(a, b, d));
    }
}

TEST_CASE("signed area orientation") {
    CHECK(signed_area({0, 0}, {1, 0}, {0, 1}) > 0);
    CHECK(signed_area({0, 0}, {0, 1}, {1, 0}) < 0);
    Triangle e = equilateral(2.0);
    CHECK(e.area() == doctest::Approx(std::sqrt(3.0)));
}
