#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triconic/core_geometry.hpp"

namespace triconic {

enum class ConicFrame { cartesian, barycentric };

// p^T m p = 0 with p = (x, y, 1) (Cartesian) or p = (x, y, z) (barycentric).
struct Conic {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    ConicFrame frame = ConicFrame::cartesian;

    Conic() = default;
    // Symmetrizes and scales to unit Frobenius norm. Throws DomainError on the zero matrix.
    explicit Conic(const Eigen::Matrix3d& mat, ConicFrame f = ConicFrame::cartesian);

    // Coefficients of A x^2 + B xy + C y^2 + D x + E y + F.
    static Conic from_coeffs(const std::array<double, 6>& k, ConicFrame f = ConicFrame::cartesian);
    std::array<double, 6> coeffs() const;

    double eval(const Point2& p) const;
    Point2 gradient(const Point2& p) const;
};

enum class ConicKind {
    circle,
    ellipse,
    parabola,
    hyperbola,
    rectangular_hyperbola,
    degenerate_two_lines,
    degenerate_parallel_lines,
    degenerate_point,
};

const char* to_string(ConicKind k);
std::optional<ConicKind> conic_kind_from_string(const std::string& s);
bool is_degenerate(ConicKind k);

// Conditioning frame: q = (p - origin) / scale.
struct NormFrame {
    Point2 origin{0, 0};
    double scale = 1.0;
};

// Centroid / RMS-to-sqrt2 frame of a point set.
NormFrame frame_of(std::span<const Point2> pts);
// The same conic expressed in frame coordinates q, renormalized.
Conic to_frame(const Conic& c, const NormFrame& f);

ConicKind classify(const Conic& c);
ConicKind classify(const Conic& c, const NormFrame& f);

// det m with m normalized in the given frame; used for sign bracketing.
double normalized_det(const Conic& c, const NormFrame& f = {});
// det of the 2x2 quadratic part, normalized in the given frame.
double normalized_disc(const Conic& c, const NormFrame& f = {});
// Sign-aligned variants: the conic is first flipped so that <m, ref> >= 0.
double aligned_det(const Conic& c, const Conic& ref, const NormFrame& f = {});
double aligned_disc(const Conic& c, const Conic& ref, const NormFrame& f = {});

// Throws NoFiniteCenter for parabolas and parallel-line pairs.
Point2 center(const Conic& c);

// |p^T m p| / (|m|_F |p_h|^2)
double residual(const Conic& c, const Point2& p);

// Throws RankDeficient.
Conic fit_conic_5pts(std::span<const Point2> pts);

// General constrained fit: point rows plus tangency rows (direction d at point q means
// grad(q) . d = 0). Needs exactly five independent constraints.
struct TangentConstraint {
    Point2 at;
    Point2 direction;
};
Conic fit_conic_constrained(std::span<const Point2> pts, std::span<const TangentConstraint> tangents);

enum class FocalKind { ellipse, hyperbola };

struct FocalConic {
    Point2 focus1, focus2;
    double axis_length = 0;  // 2 alpha
    FocalKind kind = FocalKind::ellipse;

    double half_focal() const { return 0.5 * distance(focus1, focus2); }
    double alpha() const { return 0.5 * axis_length; }
    double beta() const;  // sqrt|alpha^2 - c^2|
    Point2 center() const { return midpoint(focus1, focus2); }
    Point2 axis_dir() const { return unit(focus1 - focus2); }
    bool valid() const;
    // Focal-radius residual |  |q-f1| +- |q-f2|  | - 2 alpha.
    double focal_residual(const Point2& q) const;
};

// Throws InvalidAxisLength.
Conic conic_from_foci(const FocalConic& fc);
// (center + alpha u, center - alpha u) with u the unit vector toward focus1.
std::pair<Point2, Point2> vertices_of_focal_conic(const FocalConic& fc);
// Co-vertices at center +- beta perp(u). For hyperbolas these are conjugate-axis endpoints
// (not on the curve) and `on_curve` is false.
struct CoVertices {
    Point2 first, second;
    bool on_curve = true;
};
CoVertices covertices_of_focal_conic(const FocalConic& fc);

// Throws LineOnConic when the line is a component of the conic. Line must be Cartesian.
std::vector<Point2> conic_line_intersection(const Conic& c, const LineEq& l);
// Discriminant of the restricted quadratic, relative to its coefficient magnitudes;
// ~0 means tangency, negative means no real intersection.
double line_conic_discriminant(const Conic& c, const LineEq& l);
// Line l touches c at `at` (a point of l): max of the point residual and the sine of the
// angle between the conic normal and the line normal.
double tangency_residual(const Conic& c, const Point2& at, const LineEq& l);

Conic conic_bary_to_cartesian(const Conic& c, const Triangle& t);

// Real intersection points of two Cartesian conics via a degenerate pencil member.
std::vector<Point2> conic_conic_intersection(const Conic& c1, const Conic& c2,
                                             const NormFrame& f = {});

// Splits a degenerate conic into its two (possibly coincident) real lines. Returns
// nothing when the lines are complex.
std::optional<std::pair<LineEq, LineEq>> split_degenerate(const Eigen::Matrix3d& d);

}  // namespace triconic
