#include "triconic/conics.hpp"

#include <algorithm>
#include <cmath>

#include "triconic/tolerance.hpp"

namespace triconic {

namespace {

Eigen::Matrix3d coeffs_to_matrix(const std::array<double, 6>& k) {
    Eigen::Matrix3d m;
    m << k[0], k[1] / 2, k[3] / 2,
         k[1] / 2, k[2], k[4] / 2,
         k[3] / 2, k[4] / 2, k[5];
    return m;
}

Eigen::Vector3d hom(const Point2& p) { return {p.x, p.y, 1.0}; }

// Homogeneous map p_h -> q_h for q = (p - origin) / scale.
Eigen::Matrix3d frame_matrix(const NormFrame& f) {
    Eigen::Matrix3d s;
    double k = 1.0 / f.scale;
    s << k, 0, -f.origin.x * k,
         0, k, -f.origin.y * k,
         0, 0, 1;
    return s;
}

std::array<double, 6> monomials(const Point2& q) {
    return {q.x * q.x, q.x * q.y, q.y * q.y, q.x, q.y, 1.0};
}

std::array<double, 6> directional_monomials(const Point2& q, const Point2& d) {
    return {2 * q.x * d.x, q.x * d.y + q.y * d.x, 2 * q.y * d.y, d.x, d.y, 0.0};
}

Conic fit_rows(const std::vector<std::array<double, 6>>& rows, const NormFrame& f) {
    Eigen::Matrix<double, Eigen::Dynamic, 6> d(rows.size(), 6);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < 6; ++j) d(i, j) = rows[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv.size() < 5 || !(sv(0) > 0) || sv(4) <= kRankTol * sv(0))
        throw Error(ErrorKind::RankDeficient, "constraints do not determine a unique conic");
    Eigen::VectorXd v = svd.matrixV().col(5);
    std::array<double, 6> k{v(0), v(1), v(2), v(3), v(4), v(5)};
    Eigen::Matrix3d s = frame_matrix(f);
    return Conic(s.transpose() * coeffs_to_matrix(k) * s);
}

void polish_intersection(const Eigen::Matrix3d& m1, const Eigen::Matrix3d& m2, Point2& p) {
    for (int it = 0; it < 8; ++it) {
        Eigen::Vector3d h = hom(p);
        Eigen::Vector3d g1 = m1 * h, g2 = m2 * h;
        double f1 = h.dot(g1), f2 = h.dot(g2);
        double j00 = 2 * g1(0), j01 = 2 * g1(1), j10 = 2 * g2(0), j11 = 2 * g2(1);
        double det = j00 * j11 - j01 * j10;
        if (std::fabs(det) < 1e-300) return;
        double dx = (f1 * j11 - f2 * j01) / det;
        double dy = (j00 * f2 - j10 * f1) / det;
        if (!std::isfinite(dx) || !std::isfinite(dy)) return;
        p.x -= dx;
        p.y -= dy;
        if (std::hypot(dx, dy) <= 1e-16 * (1 + norm(p))) return;
    }
}

double rel_residual(const Eigen::Matrix3d& m, const Point2& p) {
    Eigen::Vector3d h = hom(p);
    return std::fabs(h.dot(m * h)) / (m.norm() * h.squaredNorm());
}

}  // namespace

Conic::Conic(const Eigen::Matrix3d& mat, ConicFrame f) : frame(f) {
    Eigen::Matrix3d s = 0.5 * (mat + mat.transpose());
    double n = s.norm();
    if (!(n > 0) || !std::isfinite(n)) throw Error(ErrorKind::DomainError, "zero or non-finite conic matrix");
    m = s / n;
}

Conic Conic::from_coeffs(const std::array<double, 6>& k, ConicFrame f) {
    return Conic(coeffs_to_matrix(k), f);
}

std::array<double, 6> Conic::coeffs() const {
    return {m(0, 0), 2 * m(0, 1), m(1, 1), 2 * m(0, 2), 2 * m(1, 2), m(2, 2)};
}

double Conic::eval(const Point2& p) const {
    Eigen::Vector3d h = hom(p);
    return h.dot(m * h);
}

Point2 Conic::gradient(const Point2& p) const {
    Eigen::Vector3d g = m * hom(p);
    return {2 * g(0), 2 * g(1)};
}

const char* to_string(ConicKind k) {
    switch (k) {
        case ConicKind::circle: return "circle";
        case ConicKind::ellipse: return "ellipse";
        case ConicKind::parabola: return "parabola";
        case ConicKind::hyperbola: return "hyperbola";
        case ConicKind::rectangular_hyperbola: return "rectangular_hyperbola";
        case ConicKind::degenerate_two_lines: return "degenerate_two_lines";
        case ConicKind::degenerate_parallel_lines: return "degenerate_parallel_lines";
        case ConicKind::degenerate_point: return "degenerate_point";
    }
    return "unknown";
}

std::optional<ConicKind> conic_kind_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(ConicKind::degenerate_point); ++i) {
        auto k = static_cast<ConicKind>(i);
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

bool is_degenerate(ConicKind k) {
    return k == ConicKind::degenerate_two_lines || k == ConicKind::degenerate_parallel_lines ||
           k == ConicKind::degenerate_point;
}

NormFrame frame_of(std::span<const Point2> pts) {
    NormFrame f;
    if (pts.empty()) return f;
    Point2 c{0, 0};
    for (const auto& p : pts) c = c + p;
    c = c / static_cast<double>(pts.size());
    double rms = 0;
    for (const auto& p : pts) rms += dot(p - c, p - c);
    rms = std::sqrt(rms / pts.size());
    f.origin = c;
    f.scale = rms > 0 ? rms / std::sqrt(2.0) : 1.0;
    return f;
}

Conic to_frame(const Conic& c, const NormFrame& f) {
    // p = origin + scale q  =>  p_h = T q_h
    Eigen::Matrix3d t;
    t << f.scale, 0, f.origin.x,
         0, f.scale, f.origin.y,
         0, 0, 1;
    return Conic(t.transpose() * c.m * t, c.frame);
}

double normalized_det(const Conic& c, const NormFrame& f) { return to_frame(c, f).m.determinant(); }

double normalized_disc(const Conic& c, const NormFrame& f) {
    return to_frame(c, f).m.topLeftCorner<2, 2>().determinant();
}

namespace {
double align_sign(const Conic& c, const Conic& ref) {
    return (c.m.array() * ref.m.array()).sum() < 0 ? -1.0 : 1.0;
}
}  // namespace

double aligned_det(const Conic& c, const Conic& ref, const NormFrame& f) {
    // det is odd in m, so flipping m flips det.
    return align_sign(c, ref) * normalized_det(c, f);
}

double aligned_disc(const Conic& c, const Conic& ref, const NormFrame& f) {
    // The 2x2 determinant is even in m; alignment is a no-op but kept for symmetry of use.
    (void)ref;
    return normalized_disc(c, f);
}

ConicKind classify(const Conic& c) { return classify(c, NormFrame{}); }

ConicKind classify(const Conic& c, const NormFrame& f) {
    Conic n = to_frame(c, f);
    double d = n.m.determinant();
    Eigen::Matrix2d q = n.m.topLeftCorner<2, 2>();
    double disc = q.determinant();
    if (std::fabs(d) < kDegenerateDet) {
        if (disc < -kParabolaDisc) return ConicKind::degenerate_two_lines;
        if (disc > kParabolaDisc) return ConicKind::degenerate_point;
        return ConicKind::degenerate_parallel_lines;
    }
    if (std::fabs(disc) < kParabolaDisc) return ConicKind::parabola;
    double qn = q.norm();
    if (disc > 0) {
        if (std::fabs(q(0, 0) - q(1, 1)) <= kShapeTol * qn && std::fabs(q(0, 1)) <= kShapeTol * qn)
            return ConicKind::circle;
        return ConicKind::ellipse;
    }
    if (std::fabs(q.trace()) <= kShapeTol * qn) return ConicKind::rectangular_hyperbola;
    return ConicKind::hyperbola;
}

Point2 center(const Conic& c) {
    Eigen::Matrix2d q = c.m.topLeftCorner<2, 2>();
    double qn = q.norm();
    double d = q.determinant();
    if (qn == 0 || std::fabs(d) <= 1e-12 * qn * qn)
        throw Error(ErrorKind::NoFiniteCenter, "quadratic part is singular");
    if (std::fabs(c.m.determinant()) < kDegenerateDet && d < 0) {
        // Singular point of a crossing-line pair: kernel of m.
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(c.m, Eigen::ComputeFullV);
        Eigen::Vector3d v = svd.matrixV().col(2);
        if (std::fabs(v(2)) > 1e-14 * v.norm()) {
            Point2 k{v(0) / v(2), v(1) / v(2)};
            // The gradient system is exact when well conditioned; prefer it if it agrees.
            Eigen::Vector2d s = q.lu().solve(-c.m.topRightCorner<2, 1>());
            Point2 g{s(0), s(1)};
            return is_finite(g) ? g : k;
        }
    }
    Eigen::Vector2d s = q.lu().solve(-c.m.topRightCorner<2, 1>());
    return {s(0), s(1)};
}

double residual(const Conic& c, const Point2& p) { return rel_residual(c.m, p); }

Conic fit_conic_5pts(std::span<const Point2> pts) {
    if (pts.size() != 5) throw Error(ErrorKind::RankDeficient, "fit_conic_5pts needs exactly 5 points");
    return fit_conic_constrained(pts, {});
}

Conic fit_conic_constrained(std::span<const Point2> pts, std::span<const TangentConstraint> tangents) {
    if (pts.size() + tangents.size() != 5)
        throw Error(ErrorKind::RankDeficient, "need exactly five constraints");
    std::vector<Point2> all(pts.begin(), pts.end());
    for (const auto& t : tangents) all.push_back(t.at);
    NormFrame f = frame_of(all);
    std::vector<std::array<double, 6>> rows;
    for (const auto& p : pts) rows.push_back(monomials((p - f.origin) / f.scale));
    for (const auto& t : tangents)
        rows.push_back(directional_monomials((t.at - f.origin) / f.scale, unit(t.direction)));
    return fit_rows(rows, f);
}

double FocalConic::beta() const {
    double a = alpha(), c = half_focal();
    return std::sqrt(std::fabs(a * a - c * c));
}

bool FocalConic::valid() const {
    double d = distance(focus1, focus2);
    if (!(axis_length > 0) || !std::isfinite(axis_length)) return false;
    if (kind == FocalKind::ellipse) return axis_length > d * (1 + 1e-12);
    return d > 0 && axis_length < d * (1 - 1e-12);
}

double FocalConic::focal_residual(const Point2& q) const {
    double r1 = distance(q, focus1), r2 = distance(q, focus2);
    if (kind == FocalKind::ellipse) return std::fabs(r1 + r2 - axis_length);
    return std::fabs(std::fabs(r1 - r2) - axis_length);
}

Conic conic_from_foci(const FocalConic& fc) {
    if (!fc.valid()) throw Error(ErrorKind::InvalidAxisLength, "axis length incompatible with focal distance");
    Point2 m = fc.center();
    Point2 u = distance(fc.focus1, fc.focus2) > 0 ? fc.axis_dir() : Point2{1, 0};
    Point2 v = perp(u);
    double a = fc.alpha(), c = fc.half_focal();
    double b2 = fc.kind == FocalKind::ellipse ? a * a - c * c : c * c - a * a;
    Eigen::Matrix3d l = Eigen::Matrix3d::Zero();
    l(0, 0) = 1 / (a * a);
    l(1, 1) = (fc.kind == FocalKind::ellipse ? 1.0 : -1.0) / b2;
    l(2, 2) = -1;
    Eigen::Matrix3d t;
    t << u.x, u.y, -dot(u, m),
         v.x, v.y, -dot(v, m),
         0, 0, 1;
    return Conic(t.transpose() * l * t);
}

std::pair<Point2, Point2> vertices_of_focal_conic(const FocalConic& fc) {
    Point2 m = fc.center();
    Point2 u = distance(fc.focus1, fc.focus2) > 0 ? fc.axis_dir() : Point2{1, 0};
    return {m + u * fc.alpha(), m - u * fc.alpha()};
}

CoVertices covertices_of_focal_conic(const FocalConic& fc) {
    Point2 m = fc.center();
    Point2 u = distance(fc.focus1, fc.focus2) > 0 ? fc.axis_dir() : Point2{1, 0};
    Point2 v = perp(u);
    double b = fc.beta();
    return {m + v * b, m - v * b, fc.kind == FocalKind::ellipse};
}

namespace {
struct LineQuadratic {
    Point2 p0, d;
    double a, b, c;
};

LineQuadratic restrict_to_line(const Conic& cn, const LineEq& l) {
    double n = std::hypot(l.l, l.m);
    if (n == 0) throw Error(ErrorKind::DomainError, "zero line");
    LineQuadratic q;
    q.d = Point2{-l.m, l.l} / n;
    q.p0 = Point2{-l.l * l.n, -l.m * l.n} / (n * n);
    Eigen::Vector3d dh(q.d.x, q.d.y, 0), ph = hom(q.p0);
    q.a = dh.dot(cn.m * dh);
    q.b = 2 * dh.dot(cn.m * ph);
    q.c = ph.dot(cn.m * ph);
    return q;
}
}  // namespace

double line_conic_discriminant(const Conic& c, const LineEq& l) {
    LineQuadratic q = restrict_to_line(c, l);
    double scale = std::fabs(q.a) + std::fabs(q.b) + std::fabs(q.c);
    if (scale == 0) return 0;
    return (q.b * q.b - 4 * q.a * q.c) / (scale * scale);
}

double tangency_residual(const Conic& c, const Point2& at, const LineEq& l) {
    Point2 g = c.gradient(at);
    Point2 n{l.l, l.m};
    double gn = norm(g);
    if (gn == 0) return residual(c, at);
    return std::max(residual(c, at), std::fabs(cross(g / gn, unit(n))));
}

std::vector<Point2> conic_line_intersection(const Conic& c, const LineEq& l) {
    LineQuadratic q = restrict_to_line(c, l);
    double mag = 1 + dot(q.p0, q.p0);
    double eps = 1e-12 * c.m.norm() * mag;
    std::vector<Point2> out;
    if (std::fabs(q.a) <= eps && std::fabs(q.b) <= eps && std::fabs(q.c) <= eps)
        throw Error(ErrorKind::LineOnConic, "line is a component of the conic");
    if (std::fabs(q.a) <= 1e-14 * (std::fabs(q.b) + std::fabs(q.c))) {
        if (q.b != 0) out.push_back(q.p0 + q.d * (-q.c / q.b));
        return out;
    }
    double disc = q.b * q.b - 4 * q.a * q.c;
    double scale = q.b * q.b + 4 * std::fabs(q.a * q.c);
    if (disc < -1e-12 * scale) return out;
    double sq = std::sqrt(std::max(0.0, disc));
    double h = -0.5 * (q.b + std::copysign(sq, q.b));
    double t1 = h / q.a;
    double t2 = h != 0 ? q.c / h : t1;
    out.push_back(q.p0 + q.d * t1);
    out.push_back(q.p0 + q.d * t2);
    return out;
}

Conic conic_bary_to_cartesian(const Conic& c, const Triangle& t) {
    if (c.frame == ConicFrame::cartesian) return c;
    Eigen::Matrix3d k;
    k << t.A.x, t.B.x, t.C.x,
         t.A.y, t.B.y, t.C.y,
         1, 1, 1;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(k);
    if (!lu.isInvertible()) throw Error(ErrorKind::DegenerateTriangle, "singular vertex matrix");
    Eigen::Matrix3d ki = lu.inverse();
    return Conic(ki.transpose() * c.m * ki, ConicFrame::cartesian);
}

std::optional<std::pair<LineEq, LineEq>> split_degenerate(const Eigen::Matrix3d& d) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(d, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0)) return std::nullopt;
    if (sv(1) <= 1e-9 * sv(0)) {
        // Rank one: a double line; d ~ s u u^T with s = +-1.
        Eigen::Vector3d u = svd.matrixU().col(0);
        LineEq l{u(0), u(1), u(2), LineFrame::cartesian};
        return std::make_pair(l, l);
    }
    Eigen::Matrix3d b;  // adjugate
    b(0, 0) = d(1, 1) * d(2, 2) - d(1, 2) * d(2, 1);
    b(0, 1) = -(d(0, 1) * d(2, 2) - d(0, 2) * d(2, 1));
    b(0, 2) = d(0, 1) * d(1, 2) - d(0, 2) * d(1, 1);
    b(1, 0) = -(d(1, 0) * d(2, 2) - d(1, 2) * d(2, 0));
    b(1, 1) = d(0, 0) * d(2, 2) - d(0, 2) * d(2, 0);
    b(1, 2) = -(d(0, 0) * d(1, 2) - d(0, 2) * d(1, 0));
    b(2, 0) = d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0);
    b(2, 1) = -(d(0, 0) * d(2, 1) - d(0, 1) * d(2, 0));
    b(2, 2) = d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0);
    int i = 0;
    for (int k = 1; k < 3; ++k)
        if (std::fabs(b(k, k)) > std::fabs(b(i, i))) i = k;
    if (b(i, i) > 1e-10 * b.norm()) return std::nullopt;  // complex-conjugate pair
    double beta = std::sqrt(std::max(0.0, -b(i, i)));
    if (beta == 0) return std::nullopt;
    Eigen::Vector3d p = b.col(i) / beta;
    Eigen::Matrix3d mp;
    mp << 0, p(2), -p(1),
          -p(2), 0, p(0),
          p(1), -p(0), 0;
    Eigen::Matrix3d r = d + mp;
    Eigen::Index ri, ci;
    r.cwiseAbs().maxCoeff(&ri, &ci);
    Eigen::Vector3d g = r.row(ri).transpose(), h = r.col(ci);
    return std::make_pair(LineEq{g(0), g(1), g(2), LineFrame::cartesian},
                          LineEq{h(0), h(1), h(2), LineFrame::cartesian});
}

std::vector<Point2> conic_conic_intersection(const Conic& first, const Conic& second, const NormFrame& f) {
    Conic n1 = to_frame(first, f), n2 = to_frame(second, f);
    const Eigen::Matrix3d& m1 = n1.m;
    const Eigen::Matrix3d& m2 = n2.m;
    auto det_at = [&](double l) { return (m1 + l * m2).determinant(); };
    double c0 = m1.determinant(), c3 = m2.determinant();
    double f1 = det_at(1), fm1 = det_at(-1);
    double c2 = 0.5 * (f1 + fm1) - c0;
    double c1 = 0.5 * (f1 - fm1) - c3;

    std::vector<Eigen::Matrix3d> members;
    std::vector<int> host;  // which conic to intersect the lines with: 1 or 2
    double scale = std::max({std::fabs(c0), std::fabs(c1), std::fabs(c2), std::fabs(c3)});
    std::vector<double> roots;
    if (std::fabs(c3) > 1e-13 * scale) {
        Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
        comp(0, 2) = -c0 / c3;
        comp(1, 2) = -c1 / c3;
        comp(2, 2) = -c2 / c3;
        comp(1, 0) = 1;
        comp(2, 1) = 1;
        Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
        for (int k = 0; k < 3; ++k) {
            auto ev = es.eigenvalues()(k);
            if (std::fabs(ev.imag()) <= 1e-7 * (1 + std::fabs(ev.real()))) roots.push_back(ev.real());
        }
    } else if (std::fabs(c2) > 1e-13 * scale) {
        double disc = c1 * c1 - 4 * c2 * c0;
        if (disc >= 0) {
            double h = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
            roots.push_back(h / c2);
            if (h != 0) roots.push_back(c0 / h);
        }
    } else if (std::fabs(c1) > 1e-13 * scale) {
        roots.push_back(-c0 / c1);
    }
    for (double r : roots) {
        // Newton polish on the cubic.
        for (int it = 0; it < 6; ++it) {
            double fv = ((c3 * r + c2) * r + c1) * r + c0;
            double dv = (3 * c3 * r + 2 * c2) * r + c1;
            if (dv == 0) break;
            double step = fv / dv;
            r -= step;
            if (std::fabs(step) <= 1e-16 * (1 + std::fabs(r))) break;
        }
        members.push_back(m1 + r * m2);
        host.push_back(std::fabs(r) < 1 ? 2 : 1);
    }
    if (std::fabs(c3) <= 1e-13 * scale) {
        members.push_back(m2);
        host.push_back(1);
    }
    if (std::fabs(c0) <= 1e-13 * scale) {
        members.push_back(m1);
        host.push_back(2);
    }

    std::vector<Point2> found;
    for (size_t k = 0; k < members.size(); ++k) {
        auto lines = split_degenerate(members[k]);
        if (!lines) continue;
        const Conic& target = host[k] == 1 ? n1 : n2;
        for (const LineEq& l : {lines->first, lines->second}) {
            std::vector<Point2> pts;
            try {
                pts = conic_line_intersection(target, l);
            } catch (const Error&) {
                continue;
            }
            for (Point2 p : pts) {
                polish_intersection(m1, m2, p);
                if (!is_finite(p)) continue;
                if (rel_residual(m1, p) > 1e-9 || rel_residual(m2, p) > 1e-9) continue;
                bool dup = false;
                for (const auto& q : found)
                    if (distance(p, q) <= 1e-7 * (1 + norm(p))) dup = true;
                if (!dup) found.push_back(p);
            }
        }
    }
    for (auto& p : found) p = f.origin + p * f.scale;
    // Final polish in the caller's frame.
    for (auto& p : found) polish_intersection(first.m, second.m, p);
    return found;
}

}  // namespace triconic
