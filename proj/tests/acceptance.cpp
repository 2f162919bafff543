// Acceptance run: one line per criterion, nonzero exit on any failure that is not a
// recorded known defect.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "triconic/appendix.hpp"
#include "triconic/error.hpp"
#include "triconic/loci_regions.hpp"
#include "triconic/random.hpp"
#include "triconic/verification.hpp"

using namespace triconic;

namespace {

struct Verdict {
    bool pass = true;
    bool known_defect = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const ClaimOutcome& claim(const PropositionReport& r, const std::string& name) {
    for (const auto& c : r.claims)
        if (c.name == name) return c;
    throw std::runtime_error("missing claim " + name + " in " + r.id);
}

// Every claim of the listed propositions (known defects aside) within tolerance, no errors.
Verdict props_pass(const std::vector<std::string>& ids, int trials, std::string& detail) {
    Verdict v;
    for (const auto& id : ids) {
        PropositionReport r = run_proposition(id, {42, trials, 1, std::nullopt});
        bool ok = r.errors == 0;
        double worst = 0;
        for (const auto& c : r.claims) {
            if (c.known_defect) continue;
            ok &= c.pass;
            if (c.tol > 0) worst = std::max(worst, c.max_residual / c.tol);
        }
        v.pass &= ok;
        detail += " " + id + (ok ? "" : "[FAIL]") + fmt(" worst/tol=%.1e", worst) + ";";
    }
    return v;
}

// Unsigned sideline ratios recomputed here from distances.
double carnot_oracle(const Triangle& t, const std::array<Point2, 6>& s) {
    auto r = [](const Point2& x, const Point2& p, const Point2& q) { return distance(x, p) / distance(x, q); };
    return r(s[0], t.B, t.C) * r(s[1], t.B, t.C) * r(s[2], t.C, t.A) * r(s[3], t.C, t.A) * r(s[4], t.A, t.B) *
           r(s[5], t.A, t.B);
}

double quartic(const Point2& p) {
    double r2 = p.x * p.x + p.y * p.y;
    return 4 * r2 * r2 - 8 * p.y * p.y * p.y - p.x * p.x + 2 * p.y * p.y;
}

Verdict c1_c2(bool carnot) {
    static Verdict incidence, product;
    static bool done = false;
    if (!done) {
        done = true;
        auto t0 = std::chrono::steady_clock::now();
        double worst6[4] = {0, 0, 0, 0}, worstc = 0;
        int n = 0, failures = 0;
        const TriadKind kinds[4] = {TriadKind::v_ellipse, TriadKind::p_ellipse, TriadKind::v_hyperbola,
                                    TriadKind::p_hyperbola};
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 1000; ++i) {
                auto g = trial_rng(1001, k, i);
                Triangle t = random_triangle(g);
                std::optional<Point2> p;
                if (is_p_kind(kinds[k])) p = random_point(g, t);
                try {
                    ConicTriad tr = build_triad(t, kinds[k], p);
                    if (tr.any_degenerate()) continue;
                    SixPointConicReport rep = six_point_conic(tr);
                    worst6[k] = std::max(worst6[k], rep.residual6);
                    worstc = std::max(worstc, std::fabs(carnot_oracle(t, triad_vertices(tr)) - 1));
                    ++n;
                } catch (const Error&) {
                    ++failures;
                }
            }
        double secs = seconds_since(t0);
        double w = std::max({worst6[0], worst6[1], worst6[2], worst6[3]});
        incidence.pass = w <= 1e-8 && failures == 0 && secs <= 60;
        incidence.detail = std::to_string(n) + " triads, max residual6 " + fmt("%.2e", w) + " (v-ell " +
                           fmt("%.1e", worst6[0]) + ", p-ell " + fmt("%.1e", worst6[1]) + ", v-hyp " +
                           fmt("%.1e", worst6[2]) + ", p-hyp " + fmt("%.1e", worst6[3]) + "), " +
                           std::to_string(failures) + " construction errors, " + fmt("%.1f s", secs);
        product.pass = worstc <= 1e-10 && failures == 0;
        product.detail = "max |carnot - 1| " + fmt("%.2e", worstc) + " over the same " + std::to_string(n) + " triads";
    }
    return carnot ? product : incidence;
}

Verdict c3() {
    Verdict v;
    v.detail = "100 sweeps each:";
    Verdict p = props_pass({"vell.degenerate-iff-right", "pell.degenerate-on-circumcircle", "phyp.parabola-degenerate"},
                           100, v.detail);
    v.pass = p.pass;
    v.detail += " (P-hyperbola det has a double zero on the sideline extensions: checked as vanishing, not sign change)";
    return v;
}

Verdict c4() {
    Verdict v;
    auto samples = sample_locus_x478(120);
    double worst = 0;
    for (const auto& s : samples) worst = std::max(worst, std::fabs(quartic(s.center)));
    Point2 ea = x478_center_at(1e-3) * 2 - x478_center_at(2e-3);
    Point2 eb = x478_center_at(M_PI - 1e-3) * 2 - x478_center_at(M_PI - 2e-3);
    double e = std::max(distance(ea, {0.5, 1}), distance(eb, {-0.5, 1}));
    v.pass = samples.size() == 120 && worst <= 1e-8 && e <= 1e-4;
    v.detail = "120 samples, max |quartic| " + fmt("%.2e", worst) + ", endpoint error " + fmt("%.2e", e);
    return v;
}

Verdict c5() {
    Verdict v;
    double on_arc = 0, mids = 0;
    for (int k = 0; k < 3; ++k) {
        auto g = trial_rng(1005, 0, k);
        Triangle t = random_triangle(g);
        OstarLocus L = sample_locus_ostar(t, 120);
        v.pass &= L.samples.size() == 120;
        for (std::size_t i = 0; i < L.samples.size(); ++i)
            on_arc = std::max(on_arc, residual(L.ellipses[L.arc[i]], L.samples[i].center));
        for (int w = 0; w < 3; ++w)
            for (int s = 0; s < 3; ++s)
                mids = std::max(mids, residual(L.ellipses[w], midpoint(t.vertex((s + 1) % 3), t.vertex((s + 2) % 3))));
    }
    v.pass &= on_arc <= 1e-8 && mids <= 1e-8;
    v.detail = "3 x 120 samples, max O* residual " + fmt("%.2e", on_arc) + ", midpoint residual " + fmt("%.2e", mids);
    return v;
}

Verdict c6() {
    Verdict v;
    EquilateralOstarReport r = equilateral_ostar_locus_check();
    Triangle e = equilateral(1.0);
    double axes = 0, centers = 0;
    for (const auto& s : r.shapes) {
        axes = std::max({axes, std::fabs(s.semi_major - std::sqrt(3.0) / 2), std::fabs(s.semi_minor - std::sqrt(3.0) / 6)});
        centers = std::max(centers, std::min({distance(s.center, e.A), distance(s.center, e.B), distance(s.center, e.C)}));
    }
    double area = 0;
    for (const auto& c : r.claims.claims)
        if (c.claim == "area_ratio_3") area = c.residual;
    v.pass = axes <= 1e-8 && centers <= 1e-8 && area <= 1e-8 && r.claims.all_pass();
    v.detail = "semi-axis error " + fmt("%.2e", axes) + ", center error " + fmt("%.2e", centers) +
               ", |area ratio - 3| " + fmt("%.2e", area) + ", " + std::to_string(r.claims.claims.size()) +
               " side facts " + (r.claims.all_pass() ? "ok" : "FAIL");
    return v;
}

Verdict c7() {
    Verdict v;
    Triangle t({0, 3}, {4, 0}, {0, 0});
    SoddyConfig s = soddy(t);
    double inner = std::fabs(s.inner.radius - 6.0 / 23);
    double outer = std::max(distance(s.outer.center, {4, 3}), std::fabs(s.outer.radius - 6));
    v.pass = inner <= 1e-12 && outer <= 1e-10 && s.regime == SoddyRegime::contains;
    v.detail = "3-4-5 inner " + fmt("%.1e", inner) + ", outer " + fmt("%.1e", outer) + ";";
    PropositionReport r = run_proposition("vhyp.soddy-centers", {42, 500, 1, std::nullopt});
    double contains = r.stats.count("regime_contains") ? r.stats.at("regime_contains") : 0;
    double external = r.stats.count("regime_external") ? r.stats.at("regime_external") : 0;
    bool both = contains > 0 && external > 0;
    v.pass &= r.pass && both;
    v.detail += " 500 triangles (" + std::to_string(static_cast<int>(contains)) + " contains, " +
                std::to_string(static_cast<int>(external)) + " external) focal residual " +
                fmt("%.1e", std::max(claim(r, "x176_on_driver_branches").max_residual,
                                     claim(r, "x175_on_all_members").max_residual)) +
                ";";
    Verdict line = props_pass({"vhyp.soddy-line-tangency"}, 0, v.detail);
    v.pass &= line.pass;
    return v;
}

Verdict c8() {
    Verdict v;
    v.detail = "500 trials each:";
    v.pass = props_pass({"vell.chords-excenters-x20", "vhyp.chords-x8"}, 500, v.detail).pass;
    return v;
}

Verdict c9() {
    Verdict v;
    v.detail = "200 triangles:";
    v.pass = props_pass({"pell.anticevian-x3"}, 200, v.detail).pass;
    return v;
}

Verdict c10() {
    Verdict v;
    PropositionReport r = run_proposition("phyp.second-point", {42, 500, 1, std::nullopt});
    PropositionReport a = run_proposition("phyp.equal-areas", {42, 500, 1, std::nullopt});
    const ClaimOutcome& exists = claim(r, "second_point_exists");
    const ClaimOutcome& on = claim(r, "second_point_on_all_members");
    const ClaimOutcome& gap = claim(r, "gap_identity");
    const ClaimOutcome& area = claim(a, "equal_areas");
    bool rest = on.pass && gap.pass && area.pass && r.errors == 0 && a.errors == 0;
    v.pass = rest && exists.pass;
    v.known_defect = rest && !exists.pass;
    v.detail = "P' found in " + std::to_string(exists.evaluated - exists.failures) + "/" +
               std::to_string(exists.evaluated) + " trials; when found, member residual " +
               fmt("%.1e", on.max_residual) + "; gap identity " + fmt("%.1e", gap.max_residual) + "; area diff " +
               fmt("%.1e", area.max_residual);
    if (v.known_defect) v.detail += " (existence claim does not hold for every P: known defect)";
    return v;
}

Verdict c11() {
    Verdict v;
    v.detail = "10 triangles each:";
    v.pass = props_pass({"appendix.a-ellipse", "appendix.major-vertices", "appendix.x3prime-center",
                         "appendix.phyp-member", "appendix.pstar-conic", "appendix.x5452-coordinate"},
                        10, v.detail)
                 .pass;
    return v;
}

Verdict c12() {
    Verdict v;
    PropositionReport r = run_proposition("phyp.x55-conjecture", {42, 500, 1, std::nullopt});
    v.pass = r.pass;
    v.detail = "evidence, 500 triangles: circle spread " + fmt("%.1e", claim(r, "circle_spread").max_residual) +
               ", concentricity " + fmt("%.1e", claim(r, "center_offset").max_residual) + ", X7 offset " +
               fmt("%.1e", claim(r, "circumcenter_is_X7").max_residual);
    return v;
}

Verdict c13() {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport one = run_all({42, 0, 1, std::nullopt});
    double s1 = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    SuiteReport four = run_all({42, 0, 4, std::nullopt});
    double s4 = seconds_since(t0);
    bool same = report_to_json(one).dump() == report_to_json(four).dump();
    v.pass = one.pass && same && s1 < 120 && s4 < 120;
    int passed = 0;
    for (const auto& p : one.props) passed += p.suite_pass;
    v.detail = std::to_string(passed) + "/" + std::to_string(one.props.size()) + " propositions, " +
               fmt("%.1f s", s1) + " (1 thread), " + fmt("%.1f s", s4) + " (4 threads), reports " +
               (same ? "identical" : "DIFFER");
    return v;
}

}  // namespace

int main() {
    struct Row {
        int id;
        const char* name;
        std::function<Verdict()> run;
    };
    const Row rows[] = {
        {1, "six-point incidence, four triad kinds", [] { return c1_c2(false); }},
        {2, "Carnot product", [] { return c1_c2(true); }},
        {3, "degeneracy equivalences", c3},
        {4, "X478 quartic locus and endpoints", c4},
        {5, "O* locus on three arc ellipses", c5},
        {6, "equilateral O* corollary", c6},
        {7, "Soddy circles and X175/X176", c7},
        {8, "chords through excenters, X20, X8", c8},
        {9, "X3-anticevian circle", c9},
        {10, "P-hyperbola second point, gaps, areas", c10},
        {11, "appendix cross-checks", c11},
        {12, "X55 conjecture (evidence)", c12},
        {13, "full suite, seed 42, thread independence", c13},
    };
    int hard_failures = 0;
    for (const auto& row : rows) {
        Verdict v;
        try {
            v = row.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const char* status = v.pass ? "PASS" : (v.known_defect ? "FAIL*" : "FAIL");
        std::printf("[%2d] %-5s %s: %s\n", row.id, status, row.name, v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass && !v.known_defect) ++hard_failures;
    }
    std::printf("acceptance: %d hard failure(s); FAIL* marks a recorded known defect\n", hard_failures);
    return hard_failures == 0 ? 0 : 1;
}
