#pragma once

#include <doctest.h>

#include <cmath>

#include "triconic/conics.hpp"
#include "triconic/random.hpp"

namespace tt {

using namespace triconic;

// A=(0,3), B=(4,0), C=(0,0): a=4, b=3, c=5.
inline Triangle t345() { return Triangle({0, 3}, {4, 0}, {0, 0}); }

inline bool near(const Point2& p, const Point2& q, double tol) { return distance(p, q) <= tol; }

// Matrices are Frobenius-normalized, so equality up to sign is equality up to scale.
inline double conic_gap(const Conic& c1, const Conic& c2) {
    return std::min((c1.m - c2.m).norm(), (c1.m + c2.m).norm());
}

inline std::mt19937_64 rng(uint64_t stream, uint64_t trial = 0) { return trial_rng(7, stream, trial); }

}  // namespace tt
