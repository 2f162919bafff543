#include "triconic/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace triconic {

using nlohmann::json;

namespace {

json pt(const Point2& p) { return json::array({p.x, p.y}); }

Point2 to_pt(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorKind::ParseError, "point must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

template <class F>
void with_parse_errors(F&& f) {
    try {
        f();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

}  // namespace

bool Scene::empty() const {
    return !triangle && !p && triads.empty() && conics.empty() && circles.empty() && points.empty() &&
           polylines.empty();
}

json scene_to_json(const Scene& s) {
    json j = json::object();
    if (s.triangle) j["triangle"] = json::array({pt(s.triangle->A), pt(s.triangle->B), pt(s.triangle->C)});
    if (s.p) j["P"] = pt(*s.p);
    j["triads"] = json::array();
    for (const auto& t : s.triads) {
        json e{{"kind", to_string(t.kind)}};
        if (t.p) e["P"] = pt(*t.p);
        j["triads"].push_back(e);
    }
    j["conics"] = json::array();
    for (const auto& c : s.conics) {
        const auto& m = c.conic.m;
        j["conics"].push_back({{"label", c.label},
                               {"frame", c.conic.frame == ConicFrame::cartesian ? "cartesian" : "barycentric"},
                               {"coeffs", {m(0, 0), 2 * m(0, 1), m(1, 1), 2 * m(0, 2), 2 * m(1, 2), m(2, 2)}}});
    }
    j["circles"] = json::array();
    for (const auto& c : s.circles)
        j["circles"].push_back({{"label", c.label}, {"center", pt(c.circle.center)}, {"radius", c.circle.radius}});
    j["points"] = json::array();
    for (const auto& p : s.points) j["points"].push_back({{"label", p.label}, {"xy", pt(p.p)}});
    j["polylines"] = json::array();
    for (const auto& l : s.polylines) {
        json a = json::array();
        for (const auto& p : l.points) a.push_back(pt(p));
        j["polylines"].push_back({{"label", l.label}, {"points", a}});
    }
    j["meta"] = s.meta;
    return j;
}

Scene scene_from_json(const json& j) {
    Scene s;
    with_parse_errors([&] {
        if (!j.is_object()) throw Error(ErrorKind::ParseError, "scene must be an object");
        if (j.contains("triangle")) {
            const auto& t = j.at("triangle");
            if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::ParseError, "triangle needs 3 points");
            s.triangle.emplace(to_pt(t[0]), to_pt(t[1]), to_pt(t[2]));
        }
        if (j.contains("P")) s.p = to_pt(j.at("P"));
        for (const auto& e : j.value("triads", json::array())) {
            SceneTriad t;
            auto k = triad_kind_from_string(e.at("kind").get<std::string>());
            if (!k) throw Error(ErrorKind::ParseError, "unknown triad kind");
            t.kind = *k;
            if (e.contains("P")) t.p = to_pt(e.at("P"));
            s.triads.push_back(t);
        }
        for (const auto& e : j.value("conics", json::array())) {
            SceneConic c;
            c.label = e.value("label", "");
            // [xx, xy, yy, x, y, 1], stored normalized and loaded as is (halving and doubling are
            // exact), so the round trip is lossless.
            auto v = e.at("coeffs").get<std::vector<double>>();
            if (v.size() != 6) throw Error(ErrorKind::ParseError, "conic needs 6 coefficients");
            c.conic.m << v[0], v[1] / 2, v[3] / 2, v[1] / 2, v[2], v[4] / 2, v[3] / 2, v[4] / 2, v[5];
            if (!c.conic.m.allFinite() || c.conic.m.isZero(0))
                throw Error(ErrorKind::ParseError, "conic coefficients must be finite and not all zero");
            c.conic.frame = e.value("frame", "cartesian") == "barycentric" ? ConicFrame::barycentric
                                                                             : ConicFrame::cartesian;
            s.conics.push_back(c);
        }
        for (const auto& e : j.value("circles", json::array()))
            s.circles.push_back({e.value("label", ""), {to_pt(e.at("center")), e.at("radius").get<double>()}});
        for (const auto& e : j.value("points", json::array()))
            s.points.push_back({e.value("label", ""), to_pt(e.at("xy"))});
        for (const auto& e : j.value("polylines", json::array())) {
            ScenePolyline l;
            l.label = e.value("label", "");
            for (const auto& p : e.at("points")) l.points.push_back(to_pt(p));
            s.polylines.push_back(l);
        }
        if (j.contains("meta")) s.meta = j.at("meta");
    });
    return s;
}

std::string serialize_scene(const Scene& s) { return scene_to_json(s).dump(2); }

Scene parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return scene_from_json(j);
}

Point2 parse_point(const std::string& s) {
    double x, y;
    char comma;
    std::istringstream in(s);
    if (!(in >> x >> comma >> y) || comma != ',') throw Error(ErrorKind::ParseError, "bad point '" + s + "'");
    std::string rest;
    if (in >> rest) throw Error(ErrorKind::ParseError, "bad point '" + s + "'");
    return {x, y};
}

Triangle parse_triangle(const std::string& s) {
    std::istringstream in(s);
    std::vector<Point2> pts;
    std::string tok;
    while (in >> tok) pts.push_back(parse_point(tok));
    if (pts.size() != 3) throw Error(ErrorKind::ParseError, "triangle needs 3 points");
    return Triangle(pts[0], pts[1], pts[2]);
}

Scene construct_scene(const Triangle& t, TriadKind kind, const std::optional<Point2>& p) {
    Scene s;
    s.triangle = t;
    s.p = p;
    ConicTriad tr = build_triad(t, kind, p);
    s.triads.push_back({kind, p});
    auto rep = six_point_conic(tr);
    s.conics.push_back({"six_point_conic", rep.conic});
    const char* names[6] = {"A1", "A2", "B1", "B2", "C1", "C2"};
    auto v = triad_vertices(tr);
    for (int i = 0; i < 6; ++i) s.points.push_back({names[i], v[i]});
    if (rep.center) s.points.push_back({"center", *rep.center});
    if (p) s.points.push_back({"P", *p});
    if (kind == TriadKind::v_hyperbola) {
        SoddyConfig sc = soddy(t);
        s.circles.push_back({"inner_soddy", sc.inner});
        s.points.push_back({"X176", sc.inner.center});
        if (sc.regime != SoddyRegime::line) {
            s.circles.push_back({"outer_soddy", sc.outer});
            s.points.push_back({"X175", sc.outer.center});
        }
    }
    s.meta = {{"class", to_string(rep.klass)}, {"residual6", rep.residual6}, {"carnot", rep.carnot_product}};
    return s;
}

namespace {

bool inside(const BBox& b, const Point2& p) {
    return p.x >= b.xmin && p.x <= b.xmax && p.y >= b.ymin && p.y <= b.ymax;
}

// Split a sampled curve into the runs that stay inside the box.
void clip_runs(const std::vector<Point2>& pts, const BBox& b, std::vector<Polyline>& out) {
    Polyline cur;
    for (const auto& p : pts) {
        if (is_finite(p) && inside(b, p)) {
            cur.push_back(p);
        } else if (!cur.empty()) {
            if (cur.size() > 1) out.push_back(cur);
            cur.clear();
        }
    }
    if (cur.size() > 1) out.push_back(cur);
}

// Segment of a line inside the box (Liang-Barsky on a long segment through the box).
std::optional<std::pair<Point2, Point2>> clip_line(const LineEq& l, const BBox& b) {
    Point2 n{l.l, l.m};
    double nn = norm(n);
    if (!(nn > 0)) return std::nullopt;
    Point2 o = n * (-l.n / (nn * nn));
    Point2 d = perp(n) / nn;
    double span = 4 * (std::fabs(b.xmax - b.xmin) + std::fabs(b.ymax - b.ymin) + norm(o));
    double t0 = -span, t1 = span;
    auto clip = [&](double p, double q) {
        if (p == 0) return q >= 0;
        double r = q / p;
        if (p < 0) t0 = std::max(t0, r);
        else t1 = std::min(t1, r);
        return t0 <= t1;
    };
    if (!clip(-d.x, o.x - b.xmin) || !clip(d.x, b.xmax - o.x) || !clip(-d.y, o.y - b.ymin) ||
        !clip(d.y, b.ymax - o.y))
        return std::nullopt;
    return std::make_pair(o + d * t0, o + d * t1);
}

}  // namespace

std::vector<Polyline> sample_conic_paths(const Conic& c, const BBox& box, int samples) {
    std::vector<Polyline> out;
    samples = std::max(samples, 16);
    Point2 bc{(box.xmin + box.xmax) / 2, (box.ymin + box.ymax) / 2};
    double half = 0.5 * std::hypot(box.xmax - box.xmin, box.ymax - box.ymin);
    NormFrame f{bc, half > 0 ? half : 1.0};
    ConicKind k = classify(c, f);
    BBox grown{box.xmin - half, box.xmax + half, box.ymin - half, box.ymax + half};
    if (is_degenerate(k)) {
        if (k == ConicKind::degenerate_point) {
            try {
                Point2 p = center(c);
                out.push_back({p, p});
            } catch (const Error&) {
            }
            return out;
        }
        auto lines = split_degenerate(to_frame(c, f).m);
        if (!lines) return out;
        for (LineEq l : {lines->first, lines->second}) {
            // Back from frame coordinates: q = (p - origin) / scale.
            LineEq w{l.l / f.scale, l.m / f.scale, l.n - (l.l * f.origin.x + l.m * f.origin.y) / f.scale,
                     LineFrame::cartesian};
            if (auto seg = clip_line(w, box)) out.push_back({seg->first, seg->second});
        }
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c.m.topLeftCorner<2, 2>());
    Eigen::Vector2d ev = es.eigenvalues();
    Point2 e0{es.eigenvectors()(0, 0), es.eigenvectors()(1, 0)};
    Point2 e1{es.eigenvectors()(0, 1), es.eigenvectors()(1, 1)};
    if (k == ConicKind::parabola) {
        // Axis u along the eigenvector of the (near) zero eigenvalue; the curve is a graph over v.
        int big = std::fabs(ev(0)) > std::fabs(ev(1)) ? 0 : 1;
        Point2 v = big == 0 ? e0 : e1, u = big == 0 ? e1 : e0;
        double lam = ev(big);
        // With p = bc + s u + t v: lam t^2 + h t + g s + k0 = 0 (the s^2 term is negligible).
        Point2 grad = c.gradient(bc);
        double g = dot(grad, u), h = dot(grad, v), k0 = c.eval(bc);
        if (!(std::fabs(g) > 0)) return out;
        std::vector<Point2> pts;
        double tmax = 3 * half;
        for (int i = 0; i <= samples; ++i) {
            double t = -tmax + 2 * tmax * i / samples;
            double s = -(lam * t * t + h * t + k0) / g;
            pts.push_back(bc + u * s + v * t);
        }
        clip_runs(pts, grown, out);
        return out;
    }
    Point2 o = center(c);
    double fo = c.eval(o);
    if (k == ConicKind::circle || k == ConicKind::ellipse) {
        if (!(-fo / ev(0) > 0 && -fo / ev(1) > 0)) return out;  // imaginary ellipse
        double a0 = std::sqrt(-fo / ev(0)), a1 = std::sqrt(-fo / ev(1));
        Polyline loop;
        for (int i = 0; i <= samples; ++i) {
            double th = 2 * M_PI * i / samples;
            loop.push_back(o + e0 * (a0 * std::cos(th)) + e1 * (a1 * std::sin(th)));
        }
        out.push_back(loop);
        return out;
    }
    // Hyperbola: transverse axis has the eigenvalue of sign opposite to f(o).
    int ti = ev(0) * fo < 0 ? 0 : 1;
    Point2 et = ti == 0 ? e0 : e1, ec = ti == 0 ? e1 : e0;
    double at = std::sqrt(-fo / ev(ti)), ac = std::sqrt(fo / ev(1 - ti));
    double reach = norm(o - bc) + 2 * half;
    double tmax = std::asinh(reach / std::min(at, ac)) + 0.5;
    for (double side : {1.0, -1.0}) {
        std::vector<Point2> pts;
        for (int i = 0; i <= samples; ++i) {
            double tt = -tmax + 2 * tmax * i / samples;
            pts.push_back(o + et * (side * at * std::cosh(tt)) + ec * (ac * std::sinh(tt)));
        }
        clip_runs(pts, grown, out);
    }
    return out;
}

namespace {

void extend(BBox& b, bool& any, const Point2& p) {
    if (!is_finite(p)) return;
    if (!any) {
        b = {p.x, p.x, p.y, p.y};
        any = true;
        return;
    }
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
}

// Extent anchors of a conic: axis endpoints of ellipses, vertices of hyperbolas.
void conic_anchors(const Conic& c, BBox& b, bool& any) {
    try {
        ConicKind k = classify(c);
        if (is_degenerate(k) || k == ConicKind::parabola) return;
        Point2 o = center(c);
        double fo = c.eval(o);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(c.m.topLeftCorner<2, 2>());
        for (int i = 0; i < 2; ++i) {
            double r = -fo / es.eigenvalues()(i);
            if (!(r > 0)) continue;
            Point2 e{es.eigenvectors()(0, i), es.eigenvectors()(1, i)};
            extend(b, any, o + e * std::sqrt(r));
            extend(b, any, o - e * std::sqrt(r));
        }
    } catch (const Error&) {
    }
}

const char* kMemberColor[3] = {"#d62728", "#2ca02c", "#1f77b4"};

}  // namespace

std::string emit_svg(const Scene& s, const SvgOptions& opt) {
    if (s.empty()) throw Error(ErrorKind::EmptyScene, "nothing to render");
    BBox b;
    bool any = false;
    if (s.triangle)
        for (int i = 0; i < 3; ++i) extend(b, any, s.triangle->vertex(i));
    if (s.p) extend(b, any, *s.p);
    for (const auto& p : s.points) extend(b, any, p.p);
    for (const auto& c : s.circles) {
        extend(b, any, c.circle.center - Point2{c.circle.radius, c.circle.radius});
        extend(b, any, c.circle.center + Point2{c.circle.radius, c.circle.radius});
    }
    for (const auto& l : s.polylines)
        for (const auto& p : l.points) extend(b, any, p);
    for (const auto& c : s.conics)
        if (c.conic.frame == ConicFrame::cartesian) conic_anchors(c.conic, b, any);
    if (!any) throw Error(ErrorKind::EmptyScene, "scene has no finite extent");
    double ext = std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-9});
    BBox view{b.xmin - 0.1 * ext, b.xmax + 0.1 * ext, b.ymin - 0.1 * ext, b.ymax + 0.1 * ext};
    double w = view.xmax - view.xmin, h = view.ymax - view.ymin;
    int height = static_cast<int>(std::lround(opt.width * h / w));
    double stroke = 1.5, fs = 0.025 * std::max(w, h), dot_r = 0.006 * std::max(w, h);

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << height
      << "\" viewBox=\"" << num(view.xmin) << ' ' << num(-view.ymax) << ' ' << num(w) << ' ' << num(h) << "\">\n";
    o << "<rect x=\"" << num(view.xmin) << "\" y=\"" << num(-view.ymax) << "\" width=\"" << num(w)
      << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
    o << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << stroke
      << "\" vector-effect=\"non-scaling-stroke\">\n";
    // One <path> per curve; branches and line components become subpaths.
    auto path = [&](const std::vector<Polyline>& parts, const char* color, const std::string& cls) {
        if (parts.empty()) return;
        o << "<path class=\"" << cls << "\" stroke=\"" << color << "\" vector-effect=\"non-scaling-stroke\" d=\"";
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const Polyline& pl = parts[k];
            for (std::size_t i = 0; i < pl.size(); ++i)
                o << (i ? " L" : (k ? " M" : "M")) << num(pl[i].x) << ' ' << num(pl[i].y);
            if (pl.size() > 2 && distance(pl.front(), pl.back()) < 1e-12 * ext) o << " Z";
        }
        o << "\"/>\n";
    };
    if (s.triangle) {
        const auto& t = *s.triangle;
        o << "<polygon class=\"triangle\" stroke=\"black\" vector-effect=\"non-scaling-stroke\" points=\""
          << num(t.A.x) << ',' << num(t.A.y) << ' ' << num(t.B.x) << ',' << num(t.B.y) << ' ' << num(t.C.x) << ','
          << num(t.C.y) << "\"/>\n";
    }
    for (const auto& tr : s.triads) {
        if (!s.triangle) break;
        ConicTriad ct = build_triad(*s.triangle, tr.kind, tr.p);
        for (int i = 0; i < 3; ++i) {
            if (ct.degenerate[i]) continue;
            path(sample_conic_paths(member_conic(ct, i), view, opt.samples), kMemberColor[i], "triad-member");
        }
    }
    for (const auto& c : s.conics) {
        if (c.conic.frame != ConicFrame::cartesian) continue;
        path(sample_conic_paths(c.conic, view, opt.samples), "#c000c0", "conic");
    }
    for (const auto& c : s.circles)
        o << "<circle class=\"circle\" stroke=\"#ff7f0e\" vector-effect=\"non-scaling-stroke\" cx=\""
          << num(c.circle.center.x) << "\" cy=\"" << num(c.circle.center.y) << "\" r=\"" << num(c.circle.radius)
          << "\"/>\n";
    for (const auto& l : s.polylines) path({l.points}, "#8c564b", "polyline");
    for (const auto& p : s.points)
        o << "<circle class=\"point\" fill=\"black\" stroke=\"none\" cx=\"" << num(p.p.x) << "\" cy=\"" << num(p.p.y)
          << "\" r=\"" << num(dot_r) << "\"/>\n";
    o << "</g>\n";
    auto esc = [](const std::string& in) {
        std::string r;
        for (char ch : in) {
            if (ch == '<') r += "&lt;";
            else if (ch == '>') r += "&gt;";
            else if (ch == '&') r += "&amp;";
            else if (ch == '"') r += "&quot;";
            else r += ch;
        }
        return r;
    };
    for (const auto& p : s.points)
        o << "<text class=\"label\" x=\"" << num(p.p.x + dot_r) << "\" y=\"" << num(-p.p.y - dot_r)
          << "\" font-size=\"" << num(fs) << "\" font-family=\"sans-serif\">" << esc(p.label) << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

Rgb region_color(ConicKind k) {
    switch (k) {
        case ConicKind::circle: return {255, 127, 14};
        case ConicKind::ellipse: return {255, 221, 87};
        case ConicKind::parabola: return {44, 160, 44};
        case ConicKind::hyperbola: return {156, 102, 204};
        case ConicKind::rectangular_hyperbola: return {90, 60, 160};
        case ConicKind::degenerate_two_lines: return {0, 0, 0};
        case ConicKind::degenerate_parallel_lines: return {80, 80, 80};
        case ConicKind::degenerate_point: return {160, 160, 160};
    }
    return {255, 255, 255};
}

std::string emit_ppm(const RegionGrid& g) {
    std::ostringstream o;
    o << "P3\n" << g.nx << ' ' << g.ny << "\n255\n";
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            Rgb c = region_color(g.at(ix, iy));
            o << c.r << ' ' << c.g << ' ' << c.b << (ix + 1 < g.nx ? "  " : "");
        }
        o << '\n';
    }
    return o.str();
}

json region_grid_to_json(const RegionGrid& g) {
    json cells = json::array();
    for (int iy = 0; iy < g.ny; ++iy) {
        json row = json::array();
        for (int ix = 0; ix < g.nx; ++ix) row.push_back(to_string(g.at(ix, iy)));
        cells.push_back(row);
    }
    return {{"bbox", {g.bbox.xmin, g.bbox.xmax, g.bbox.ymin, g.bbox.ymax}},
            {"nx", g.nx},
            {"ny", g.ny},
            {"row0", "ymax"},
            {"cells", cells}};
}

json locus_to_json(const std::vector<LocusSample>& samples) {
    json a = json::array();
    for (const auto& s : samples)
        a.push_back({{"parameter", s.parameter},
                     {"driver", pt(s.driver)},
                     {"center", pt(s.center)},
                     {"implicit_residual", s.implicit_residual}});
    return a;
}

}  // namespace triconic
