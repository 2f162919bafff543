#pragma once

#include <cstdint>
#include <random>

#include "triconic/core_geometry.hpp"

namespace triconic {

uint64_t splitmix64(uint64_t x);

// Independent stream per (seed, stream, trial), so results do not depend on scheduling.
std::mt19937_64 trial_rng(uint64_t seed, uint64_t stream, uint64_t trial);

double uniform(std::mt19937_64& g, double lo, double hi);

// Vertices uniform in [-1,1]^2, rejected until every angle is at least min_angle and, when
// right_gap > 0, every angle differs from a right angle by at least right_gap.
Triangle random_triangle(std::mt19937_64& g, double min_angle = 0.15, double right_gap = 0);

// Uniform in the triangle's bounding box grown by `grow` diameters, away from the sidelines
// and vertices by `margin` diameters.
Point2 random_point(std::mt19937_64& g, const Triangle& t, double grow = 0.5, double margin = 0.02);

// Uniform in the interior, away from the sidelines by `margin` diameters.
Point2 random_interior_point(std::mt19937_64& g, const Triangle& t, double margin = 0.02);

double min_angle(const Triangle& t);
double max_angle(const Triangle& t);

}  // namespace triconic
