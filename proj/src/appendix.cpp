#include "triconic/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "triconic/error.hpp"
#include "triconic/kernels.hpp"
#include "triconic/triads.hpp"

#ifndef TRICONIC_DATA_DIR
#define TRICONIC_DATA_DIR "data"
#endif

namespace triconic {

namespace {

constexpr const char* kNames[] = {"a_ellipse",   "major_vertices", "x3prime_center",
                                  "phyp_member", "pstar_conic",    "x5452_coordinate"};

TermList read_terms(const nlohmann::json& rows, std::size_t nvars) {
    TermList t;
    std::size_t n = rows.size();
    t.coeff.resize(n);
    t.exps.resize(nvars * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& r = rows[k];
        if (!r.is_array() || r.size() != nvars + 1) throw Error(ErrorKind::ParseError, "bad term row");
        t.coeff[k] = r[0].get<double>();
        for (std::size_t j = 0; j < nvars; ++j) t.exps[j * n + k] = r[j + 1].get<int32_t>();
    }
    return t;
}

void index_terms(TermList& t, std::size_t nvars, int max_exp) {
    std::size_t n = t.size();
    t.idx.resize(nvars * n);
    for (std::size_t j = 0; j < nvars; ++j)
        for (std::size_t k = 0; k < n; ++k)
            t.idx[j * n + k] = static_cast<int32_t>(j * (max_exp + 1) + t.exps[j * n + k]);
}

AppendixBlock load_block(AppendixName name) {
    std::string path = appendix_path(name);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    AppendixBlock b;
    b.name = j.at("name").get<std::string>();
    b.source = j.at("source").get<std::string>();
    b.variables = j.at("variables").get<std::vector<std::string>>();
    std::size_t nv = b.variables.size();
    for (auto& [comp, parts] : j.at("components").items()) {
        auto& out = b.components[comp];
        for (const auto& p : parts) {
            TermPart tp;
            tp.num = read_terms(p.at("num"), nv);
            if (p.contains("den")) tp.den = read_terms(p.at("den"), nv);
            out.push_back(std::move(tp));
        }
    }
    for (auto& [comp, parts] : b.components)
        for (auto& p : parts) {
            for (int e : p.num.exps) b.max_exp = std::max(b.max_exp, e);
            if (p.den)
                for (int e : p.den->exps) b.max_exp = std::max(b.max_exp, e);
        }
    for (auto& [comp, parts] : b.components)
        for (auto& p : parts) {
            index_terms(p.num, nv, b.max_exp);
            if (p.den) index_terms(*p.den, nv, b.max_exp);
        }
    return b;
}

std::vector<double> power_table(const AppendixBlock& b, const std::map<std::string, double>& values) {
    for (const auto& [k, v] : values)
        if (std::find(b.variables.begin(), b.variables.end(), k) == b.variables.end())
            throw Error(ErrorKind::DomainError, "unknown variable " + k + " for " + b.name);
    int w = b.max_exp + 1;
    std::vector<double> table(b.variables.size() * w);
    for (std::size_t j = 0; j < b.variables.size(); ++j) {
        auto it = values.find(b.variables[j]);
        double v = it == values.end() ? 0.0 : it->second;
        double acc = 1.0;
        for (int e = 0; e < w; ++e) {
            table[j * w + e] = acc;
            acc *= v;
        }
    }
    return table;
}

TermValue eval_with(const AppendixBlock& b, const std::string& component, const std::map<std::string, double>& values,
                    kernels::MonomialFn fn) {
    auto it = b.components.find(component);
    if (it == b.components.end()) throw Error(ErrorKind::DomainError, "no component " + component + " in " + b.name);
    std::vector<double> table = power_table(b, values);
    int nv = static_cast<int>(b.variables.size());
    std::vector<double> buf;
    auto sum = [&](const TermList& t, double& scale) {
        buf.resize(t.size());
        fn(t.coeff.data(), t.idx.data(), nv, t.size(), table.data(), buf.data());
        double s = 0;
        scale = 0;
        for (double m : buf) {
            s += m;
            scale = std::max(scale, std::fabs(m));
        }
        return s;
    };
    TermValue out;
    for (const auto& part : it->second) {
        double ns;
        double num = sum(part.num, ns);
        double den = 1, ds;
        if (part.den) den = sum(*part.den, ds);
        out.value += num / den;
        out.scale = std::max(out.scale, ns / std::fabs(den));
    }
    return out;
}

std::array<double, 3> lambdas(const Triangle& t, const Point2& p) {
    double pa = distance(p, t.A), pb = distance(p, t.B), pc = distance(p, t.C);
    return {pb - pc, pc - pa, pa - pb};
}

BaryCoords bary_of(const Triangle& t, const Point2& p) {
    BaryCoords b = cartesian_to_bary(t, p);
    double s = b.u + b.v + b.w;
    return {b.u / s, b.v / s, b.w / s};
}

// Points on a focal conic: ellipse by angle, hyperbola split evenly over both branches.
std::vector<Point2> sample_focal(const FocalConic& fc, int n) {
    std::vector<Point2> out;
    Point2 o = fc.center(), u = fc.axis_dir(), v = perp(u);
    double al = std::fabs(fc.alpha()), be = fc.beta();
    for (int k = 0; k < n; ++k) {
        if (fc.kind == FocalKind::ellipse) {
            double th = 2 * M_PI * (k + 0.25) / n;
            out.push_back(o + u * (al * std::cos(th)) + v * (be * std::sin(th)));
        } else {
            double s = (k % 2) ? 1.0 : -1.0;
            double tau = -1.2 + 2.4 * (k / 2) / std::max(1, (n - 1) / 2);
            out.push_back(o + u * (s * al * std::cosh(tau)) + v * (be * std::sinh(tau)));
        }
    }
    return out;
}

// Second intersections of lines through a point of the conic.
std::vector<Point2> sample_conic(const Conic& c, const Point2& on, int n) {
    std::vector<Point2> out;
    for (int k = 0; out.size() < static_cast<std::size_t>(n) && k < 4 * n; ++k) {
        double th = M_PI * (k + 0.37) / n;
        Point2 d{std::cos(th), std::sin(th)};
        try {
            for (const Point2& q : conic_line_intersection(c, line_through(on, on + d)))
                if (distance(q, on) > 1e-6 && norm(q - on) < 1e3) out.push_back(q);
        } catch (const Error&) {
        }
    }
    return out;
}

std::map<std::string, double> sides(const Triangle& t) { return {{"a", t.a}, {"b", t.b}, {"c", t.c}}; }

double cyclic_first(const AppendixBlock& b, const Triangle& t, int i, const std::array<double, 3>& lam,
                    bool with_lambda) {
    // Rotate (a, b, c) and the lambdas so the block's first coordinate yields coordinate i.
    std::array<double, 3> s{t.a, t.b, t.c};
    std::map<std::string, double> v{{"a", s[i]}, {"b", s[(i + 1) % 3]}, {"c", s[(i + 2) % 3]}};
    if (with_lambda) {
        v["La"] = lam[i];
        v["Lb"] = lam[(i + 1) % 3];
        v["Lc"] = lam[(i + 2) % 3];
    }
    return eval_component(b, "first", v).value;
}

Point2 cyclic_point(const AppendixBlock& b, const Triangle& t, const std::array<double, 3>& lam, bool with_lambda) {
    BaryCoords q{cyclic_first(b, t, 0, lam, with_lambda), cyclic_first(b, t, 1, lam, with_lambda),
                 cyclic_first(b, t, 2, lam, with_lambda)};
    return bary_to_cartesian(t, q);
}

}  // namespace

const char* to_string(AppendixName n) { return kNames[static_cast<int>(n)]; }

std::optional<AppendixName> appendix_name_from_string(const std::string& s) {
    for (auto n : kAllAppendix)
        if (s == to_string(n)) return n;
    return std::nullopt;
}

std::string data_dir() {
    const char* env = std::getenv("TRICONIC_DATA_DIR");
    return env && *env ? env : TRICONIC_DATA_DIR;
}

std::string appendix_path(AppendixName n) { return data_dir() + "/appendix/" + to_string(n) + ".json"; }

const AppendixBlock& appendix_block(AppendixName n) {
    static std::mutex mu;
    static std::map<AppendixName, AppendixBlock> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, load_block(n)).first;
    return it->second;
}

uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    uint64_t h = 1469598103934665603ull;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

TermValue eval_component(const AppendixBlock& b, const std::string& component,
                         const std::map<std::string, double>& values) {
    return eval_with(b, component, values, kernels::monomial_kernel());
}

TermValue eval_component_reference(const AppendixBlock& b, const std::string& component,
                                   const std::map<std::string, double>& values) {
    return eval_with(b, component, values, kernels::monomials_scalar);
}

AppendixReport check_appendix(AppendixName name, const Triangle& t, const std::optional<Point2>& extra_point) {
    const AppendixBlock& blk = appendix_block(name);
    AppendixReport rep;
    rep.name = name;
    auto push = [&](double r) { rep.residuals.push_back(r); };
    Point2 P = extra_point ? *extra_point : (t.A + t.B * 2.0 + t.C * 3.0) / 6.0;
    double diam = t.diameter();
    try {
        switch (name) {
            case AppendixName::a_ellipse:
            case AppendixName::major_vertices:
            case AppendixName::x3prime_center: {
                BaryCoords x3b = center_barycentrics(t, CenterId::X3);
                Point2 x3 = bary_to_cartesian(t, x3b);
                Triangle ac = anticevian_triangle(t, x3b);
                FocalConic ea{ac.B, ac.C, distance(x3, ac.B) + distance(x3, ac.C), FocalKind::ellipse};
                if (name == AppendixName::a_ellipse) {
                    auto pts = sample_focal(ea, 12);
                    pts.push_back(x3);
                    for (const auto& q : pts) {
                        BaryCoords b = bary_of(t, q);
                        auto v = sides(t);
                        v["x"] = b.u;
                        v["y"] = b.v;
                        v["z"] = b.w;
                        push(eval_component(blk, "lhs", v).normalized());
                    }
                } else if (name == AppendixName::major_vertices) {
                    auto [v1, v2] = vertices_of_focal_conic(ea);
                    auto v = sides(t);
                    double rad = eval_component(blk, "rt_radicand", v).value;
                    if (rad < 0) throw Error(ErrorKind::ConstructionFailed, "negative rt radicand");
                    v["S"] = 2 * t.area();
                    v["rt"] = std::sqrt(rad);
                    std::array<Point2, 2> f;
                    for (int s = 0; s < 2; ++s) {
                        v["pm"] = s == 0 ? 1.0 : -1.0;
                        BaryCoords q{eval_component(blk, "u", v).value, eval_component(blk, "v", v).value,
                                     eval_component(blk, "w", v).value};
                        f[s] = bary_to_cartesian(t, q);
                    }
                    double scale = std::max(diam, std::max(norm(v1 - t.A), norm(v2 - t.A)));
                    double d1 = std::max(distance(f[0], v1), distance(f[1], v2));
                    double d2 = std::max(distance(f[0], v2), distance(f[1], v1));
                    push(std::min(d1, d2) / scale);
                } else {
                    Point2 x3p = cyclic_point(blk, t, {}, false);
                    Circle cc = circumcircle(ac);
                    push(distance(x3p, cc.center) / cc.radius);
                    auto y = six_point_conic(build_triad(ac, TriadKind::p_ellipse, x3));
                    if (!y.center) throw Error(ErrorKind::ConstructionFailed, "Y* has no center");
                    push(distance(x3p, *y.center) / cc.radius);
                }
                break;
            }
            case AppendixName::phyp_member: {
                ConicTriad tr = build_triad(t, TriadKind::p_hyperbola, P);
                auto lam = lambdas(t, P);
                BaryCoords pb = bary_of(t, P);
                auto pts = sample_focal(tr.conics[0], 12);
                auto vs = triad_vertices(tr);
                pts.push_back(P);
                pts.push_back(vs[0]);
                pts.push_back(vs[1]);
                for (const auto& q : pts) {
                    BaryCoords b = bary_of(t, q);
                    auto v = sides(t);
                    v.insert({{"x", b.u}, {"y", b.v}, {"z", b.w}, {"p", pb.u}, {"q", pb.v}, {"r", pb.w}, {"La", lam[0]}});
                    push(eval_component(blk, "lhs", v).normalized());
                }
                break;
            }
            case AppendixName::pstar_conic: {
                ConicTriad tr = build_triad(t, TriadKind::p_hyperbola, P);
                auto lam = lambdas(t, P);
                auto vs = triad_vertices(tr);
                auto fit = six_point_conic(tr);
                std::vector<Point2> pts(vs.begin(), vs.end());
                for (const auto& q : sample_conic(fit.conic, vs[0], 12)) pts.push_back(q);
                for (const auto& q : pts) {
                    BaryCoords b = bary_of(t, q);
                    auto v = sides(t);
                    v.insert({{"x", b.u}, {"y", b.v}, {"z", b.w}, {"La", lam[0]}, {"Lb", lam[1]}, {"Lc", lam[2]}});
                    push(eval_component(blk, "lhs", v).normalized());
                }
                break;
            }
            case AppendixName::x5452_coordinate: {
                ConicTriad vh = build_triad(t, TriadKind::v_hyperbola);
                auto fv = six_point_conic(vh);
                std::array<double, 3> lv{t.c - t.b, t.a - t.c, t.b - t.a};
                Point2 x5452 = cyclic_point(blk, t, lv, true);
                if (!fv.center) throw Error(ErrorKind::ConstructionFailed, "conic has no center");
                Point2 g = (t.A + t.B + t.C) / 3.0;
                // Centers run off to infinity near the parabola boundary; compare relative to their size.
                push(distance(x5452, *fv.center) / std::max(diam, distance(*fv.center, g)));
                ConicTriad ph = build_triad(t, TriadKind::p_hyperbola, P);
                auto fp = six_point_conic(ph);
                if (!fp.center) throw Error(ErrorKind::ConstructionFailed, "conic has no center");
                push(distance(cyclic_point(blk, t, lambdas(t, P), true), *fp.center) /
                     std::max(diam, distance(*fp.center, g)));
                break;
            }
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConstructionFailed) throw;
        throw Error(ErrorKind::ConstructionFailed, std::string(to_string(name)) + ": " + e.what());
    }
    rep.samples = static_cast<int>(rep.residuals.size());
    for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
    return rep;
}

}  // namespace triconic
