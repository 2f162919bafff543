#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "triconic/triads.hpp"

namespace triconic {

enum class CurveId {
    x478_quartic,
    parabola_deg8_V,
    covertex_locus_V,
    halftangent_sextic,
    pstar_circle_functional,
    covertex_condition_equilateral_P,
    phyp_circle_functional,
    phyp_parabola_condition,
    unit_circle,  // debug curve x^2 + y^2 - 1
};

const char* to_string(CurveId id);
std::optional<CurveId> curve_id_from_string(const std::string& s);

// Inputs for eval_implicit. (x, y) for the planar curves (x478: A=(1/2,0), B=(-1/2,0);
// covertex_V and sextic: A=(-1,0), B=(1,0)); sides and d = (delta) or (lambda) for the
// functionals.
struct CurveContext {
    double x = 0, y = 0;
    double a = 0, b = 0, c = 0;
    std::array<double, 3> d{};
};

// Context with sides of t and deltas (ellipse) or lambdas (hyperbola) of P.
CurveContext functional_context(const Triangle& t, const Point2& p, bool hyperbola);

// Throws DomainError if a radical argument is negative.
double eval_implicit(CurveId id, const CurveContext& ctx);

using ScalarField = std::function<double(const Point2&)>;

// Planar field whose zero set is the curve. For the triangle-dependent curves the driver is
// C (parabola_deg8_V: A, B of t fixed) or P (functionals over t). The equilateral co-vertex
// condition uses the triangle of equilateral_covertex_triangle().
ScalarField curve_field(CurveId id, const std::optional<Triangle>& t = std::nullopt);

// Equilateral with circumradius 1 centered at the origin (side sqrt 3), the normalization of
// the equilateral co-vertex condition.
Triangle equilateral_covertex_triangle();

struct BBox {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
};

using Polyline = std::vector<Point2>;

// Marching squares on an nx x ny seed grid, edge crossings refined by bisection, chained
// into polylines.
std::vector<Polyline> trace_zero_set(const ScalarField& f, const BBox& box, int nx, int ny);

struct LocusSample {
    double parameter = 0;
    Point2 driver;
    Point2 center;
    double implicit_residual = 0;
};

// C on the upper semicircle over AB, A=(1/2,0), B=(-1/2,0); angle in (eps, pi - eps).
std::vector<LocusSample> sample_locus_x478(int n, double eps = 1e-3);
// Degenerate Yiu-conic center for C at angle theta on that semicircle.
Point2 x478_center_at(double theta);

struct OstarLocus {
    std::vector<LocusSample> samples;
    std::vector<int> arc;              // arc index of each sample (the vertex not on P's arc)
    std::array<Conic, 3> ellipses;     // L_a, L_b, L_c
    std::array<std::array<Point2, 2>, 3> endpoints;
};

// Arc ellipse L_w through the two V-ellipse vertices bounding the arc opposite vertex w and
// the three side midpoints.
std::array<Point2, 5> ostar_arc_points(const Triangle& t, int w);
OstarLocus sample_locus_ostar(const Triangle& t, int n);

struct CentralConicShape {
    Point2 center;
    double semi_major = 0, semi_minor = 0;
    Point2 major_dir;
};
// Throws NoFiniteCenter / DomainError for non-ellipses.
CentralConicShape ellipse_shape(const Conic& c);

struct EquilateralOstarReport {
    std::array<CentralConicShape, 3> shapes;
    ClaimReport claims;
};
EquilateralOstarReport equilateral_ostar_locus_check(double tol = 1e-8);

struct PStarResult {
    Point2 point;
    double functional = 0;        // raw value at the returned point
    double rel_functional = 0;    // divided by diameter^8
    ConicKind klass = ConicKind::ellipse;
    double center_offset = 0;     // |conic center - circumcenter| / R
    int converged_starts = 0;
    double start_spread = 0;      // max distance between converged starts / diameter
};

// Throws NotConverged.
PStarResult find_pstar(const Triangle& t);

struct PStarPair {
    PStarResult first, second;
};
// Throws NotConverged.
PStarPair find_phyp_circle_points(const Triangle& t);

enum class RegionKind { v_ellipse_over_C, p_ellipse_over_P, p_hyperbola_over_P };
const char* to_string(RegionKind k);
std::optional<RegionKind> region_kind_from_string(const std::string& s);

struct RegionGrid {
    BBox bbox;
    int nx = 0, ny = 0;
    std::vector<ConicKind> cells;     // row-major, row 0 at ymax
    std::vector<char> failed;         // construction failed at the cell center
    ConicKind at(int ix, int iy) const { return cells[static_cast<size_t>(iy) * nx + ix]; }
    Point2 cell_center(int ix, int iy) const;
};

// Per-cell classification of the six-point conic with the driver at the cell center; cells
// whose corner/center dets change sign are labeled degenerate (det m) or parabola (det Q).
// P-hyperbola cells crossed by a sideline are also probed at the sideline point (degenerate only off the segment).
RegionGrid region_map(const Triangle& t, RegionKind kind, const BBox& box, int nx, int ny, int threads = 1);

// The six-point conic with the driver at q, or nothing when construction fails.
std::optional<SixPointConicReport> region_conic(const Triangle& t, RegionKind kind, const Point2& q);

// Signed 6x6 incidence determinant of six points in their conditioning frame; zero iff the
// six points lie on a conic.
double six_point_determinant(const std::array<Point2, 6>& pts);

struct CovertexReport {
    Point2 driver;
    double implicit_value = 0;   // printed locus implicit at the driver
    double incidence_det = 0;    // six_point_determinant of the co-vertices
    double residual6 = 0;
    ConicKind klass = ConicKind::ellipse;
    std::optional<Point2> center;
    double incircle_offset = 0;  // equilateral P case: | |O - center| - r |
    int branch_split = 0;        // hyperbola: co-vertices on the larger branch (3 or 5)
};

// kind v_ellipse: driver is C with A=(-1,0), B=(1,0); p_ellipse: driver is P with the
// equilateral of equilateral_covertex_triangle(). Throws DriverNotOnLocus when the driver
// is off the locus (incidence determinant test, tol relative).
CovertexReport covertex_conic_check(TriadKind kind, const Point2& driver, double tol = 1e-7);
// Driver on the true co-vertex locus along the ray from the origin at angle phi, located by
// bracketing the incidence determinant (v_ellipse) or the printed delta condition (p_ellipse).
// Throws NotFound.
Point2 find_covertex_driver(TriadKind kind, double phi, double rmin = 0.05, double rmax = 3.0);

struct X55Report {
    double circle_spread = 0;        // (max - min vertex distance to circumcenter of T') / R'
    double center_offset = 0;        // |fitted conic center - circumcenter of T'| / R'
    double x7_offset = 0;            // |circumcenter of T' - X7 of T| / R'
    std::optional<Point2> second_point;
    Point2 x55;
    Triangle reflection;
};
X55Report x55_conjecture_check(const Triangle& t);

}  // namespace triconic
