#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "triconic/centers_circles.hpp"
#include "triconic/conics.hpp"

namespace triconic {

enum class TriadKind { v_ellipse, p_ellipse, v_hyperbola, p_hyperbola };

const char* to_string(TriadKind k);
// Accepts both "v_ellipse" and the CLI spelling "v-ell" (also p-ell, v-hyp, p-hyp).
std::optional<TriadKind> triad_kind_from_string(const std::string& s);
inline bool is_p_kind(TriadKind k) { return k == TriadKind::p_ellipse || k == TriadKind::p_hyperbola; }
inline bool is_ellipse_kind(TriadKind k) { return k == TriadKind::v_ellipse || k == TriadKind::p_ellipse; }

struct ConicTriad {
    TriadKind kind = TriadKind::v_ellipse;
    Triangle t;
    std::optional<Point2> p;
    // Member i has foci (B,C), (C,A), (A,B) for i = 0, 1, 2; focus1 is the first of the pair.
    std::array<FocalConic, 3> conics;
    // Ellipse kinds: axis lengths (delta). Hyperbola kinds: signed lambda, where the member
    // passes through its driver on the branch |X f1| - |X f2| = lambda.
    std::array<double, 3> params{};
    // Member fails its axis-length invariant (lambda = 0, or the driver on the focal line).
    std::array<bool, 3> degenerate{};
    // Degenerate because lambda = 0: the member collapses onto the perpendicular bisector
    // and both vertices coincide at the side midpoint.
    std::array<bool, 3> double_vertex{};
    std::array<LineEq, 3> bisector{};

    bool any_degenerate() const { return degenerate[0] || degenerate[1] || degenerate[2]; }
};

ConicTriad build_triad(const Triangle& t, TriadKind kind, std::optional<Point2> p = std::nullopt);

// Throws DegenerateMember.
Conic member_conic(const ConicTriad& tr, int i);

// Order A1, A2, B1, B2, C1, C2; member i contributes entries 2i (center + param/2 * u with
// u toward focus1) and 2i+1. For hyperbola kinds the driver's branch carries entry 2i+1.
std::array<Point2, 6> triad_vertices(const ConicTriad& tr);
std::array<Point2, 6> triad_covertices(const ConicTriad& tr);

struct SixPointConicReport {
    Conic conic;
    ConicKind klass = ConicKind::ellipse;
    double residual6 = 0;
    std::optional<Point2> center;
    double carnot_product = 0;
    NormFrame frame;
    bool tangency_fit = false;  // a lambda = 0 member replaced its vertex pair by a tangency
};

// Throws RankDeficient.
SixPointConicReport six_point_conic(const ConicTriad& tr);
// Five-point fit of arbitrary six points (first five fitted, sixth held out).
SixPointConicReport six_point_fit(std::span<const Point2> six);

// Product of the six unsigned sideline ratios; points ordered as in triad_vertices.
// Throws PointOffSideline.
double carnot_product(const Triangle& t, const std::array<Point2, 6>& six);
// |p1 C|/|p1 B| * |p3 B|/|p3 A| * |p2 A|/|p2 C| with p1 on BC, p2 on CA, p3 on AB.
double menelaus_check(const Triangle& t, const Point2& p1, const Point2& p2, const Point2& p3);

// Real intersections of member pairs (1,2), (0,2), (0,1).
std::array<std::vector<Point2>, 3> pairwise_intersections(const ConicTriad& tr);

// +1 if X lies on the driver's branch of hyperbola member i, -1 on the opposite branch.
int branch_sign(const ConicTriad& tr, int i, const Point2& x);
// Signed focal difference |X f1| - |X f2| for member i.
double focal_difference(const ConicTriad& tr, int i, const Point2& x);

struct ClaimResult {
    std::string claim;
    bool pass = false;
    double residual = 0;
};

struct ClaimReport {
    std::vector<ClaimResult> claims;
    bool all_pass() const;
    double max_residual() const;
};

// v_ellipse: chords A'A'' through the excenters and X20; tangency to the excentral sides;
// passage through X20 for right triangles. v_hyperbola: two-branch chords through X8;
// X175 / X176 on all three members; H_a through A', A'' of the V-ellipses.
// Residuals are distances relative to the triangle diameter.
ClaimReport concurrency_theorems(const ConicTriad& tr, double tol = 1e-8);

// p_hyperbola: the common point of the three non-driver branches. Throws NotFound.
Point2 second_common_point(const ConicTriad& tr);

// Unsigned areas of (A1, B1, C1) and (A2, B2, C2).
std::pair<double, double> equal_area_check(const ConicTriad& tr);

}  // namespace triconic
