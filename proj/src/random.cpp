#include "triconic/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "triconic/centers_circles.hpp"
#include "triconic/error.hpp"

namespace triconic {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(uint64_t seed, uint64_t stream, uint64_t trial) {
    return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ trial));
}

double uniform(std::mt19937_64& g, double lo, double hi) {
    // Not std::uniform_real_distribution: its output is implementation-defined.
    double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

namespace {

std::array<double, 3> angles(const Triangle& t) {
    auto ang = [](double opp, double s1, double s2) {
        return std::acos(std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2), -1.0, 1.0));
    };
    return {ang(t.a, t.b, t.c), ang(t.b, t.c, t.a), ang(t.c, t.a, t.b)};
}

}  // namespace

double min_angle(const Triangle& t) {
    auto a = angles(t);
    return std::min({a[0], a[1], a[2]});
}

double max_angle(const Triangle& t) {
    auto a = angles(t);
    return std::max({a[0], a[1], a[2]});
}

Triangle random_triangle(std::mt19937_64& g, double min_ang, double right_gap) {
    for (;;) {
        Point2 p[3];
        for (auto& q : p) q = {uniform(g, -1, 1), uniform(g, -1, 1)};
        try {
            Triangle t(p[0], p[1], p[2]);
            if (min_angle(t) >= min_ang && std::fabs(max_angle(t) - M_PI / 2) >= right_gap) return t;
        } catch (const Error&) {
        }
    }
}

namespace {

bool clear_of(const Triangle& t, const Point2& q, double margin) {
    double d = margin * t.diameter();
    for (int i = 0; i < 3; ++i) {
        if (point_line_distance(q, sideline(t, i)) < d) return false;
        if (distance(q, t.vertex(i)) < d) return false;
    }
    return true;
}

}  // namespace

Point2 random_point(std::mt19937_64& g, const Triangle& t, double grow, double margin) {
    double xmin = std::min({t.A.x, t.B.x, t.C.x}), xmax = std::max({t.A.x, t.B.x, t.C.x});
    double ymin = std::min({t.A.y, t.B.y, t.C.y}), ymax = std::max({t.A.y, t.B.y, t.C.y});
    double m = grow * t.diameter();
    for (;;) {
        Point2 q{uniform(g, xmin - m, xmax + m), uniform(g, ymin - m, ymax + m)};
        if (clear_of(t, q, margin)) return q;
    }
}

Point2 random_interior_point(std::mt19937_64& g, const Triangle& t, double margin) {
    for (;;) {
        double u = uniform(g, 0, 1), v = uniform(g, 0, 1);
        if (u + v > 1) {
            u = 1 - u;
            v = 1 - v;
        }
        Point2 q = t.A + (t.B - t.A) * u + (t.C - t.A) * v;
        if (clear_of(t, q, margin)) return q;
    }
}

}  // namespace triconic
