#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "triconic/scene.hpp"
#include "triconic/tolerance.hpp"
#include "triconic/verification.hpp"

using namespace triconic;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string fmt_point(const Point2& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.12g,%.12g)", p.x, p.y);
    return buf;
}

BBox parse_bbox(const std::string& s) {
    BBox b;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &b.xmin, &b.xmax, &b.ymin, &b.ymax) != 4 || !(b.xmin < b.xmax) ||
        !(b.ymin < b.ymax))
        throw UsageError("bbox must be xmin,xmax,ymin,ymax");
    return b;
}

std::pair<int, int> parse_grid(const std::string& s) {
    int nx = 0, ny = 0;
    char x = 0;
    if (std::sscanf(s.c_str(), "%d%c%d", &nx, &x, &ny) != 3 || (x != 'x' && x != 'X') || nx < 2 || ny < 2)
        throw UsageError("grid must be NxN with N >= 2");
    return {nx, ny};
}

TriadKind parse_kind(const std::string& s) {
    auto k = triad_kind_from_string(s);
    if (!k) throw UsageError("unknown triad kind '" + s + "'");
    return *k;
}

std::optional<Triangle> optional_triangle(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_triangle(s);
}

Scene polyline_scene(const std::vector<Polyline>& lines, const std::string& label, const std::optional<Triangle>& t) {
    Scene s;
    s.triangle = t;
    for (std::size_t i = 0; i < lines.size(); ++i)
        s.polylines.push_back({label + "_" + std::to_string(i), lines[i]});
    return s;
}

int cmd_construct(const std::string& tri, const std::string& kind, const std::string& point, const std::string& out) {
    Triangle t = parse_triangle(tri);
    TriadKind k = parse_kind(kind);
    std::optional<Point2> p;
    if (!point.empty()) p = parse_point(point);
    if (is_p_kind(k) && !p) throw UsageError("--point is required for " + kind);
    write_file(out, serialize_scene(construct_scene(t, k, p)) + "\n");
    return 0;
}

int cmd_classify(const std::string& path) {
    Scene s = parse_scene(read_file(path));
    if (s.triangle && !s.triads.empty()) {
        for (const auto& tr : s.triads) {
            auto rep = six_point_conic(build_triad(*s.triangle, tr.kind, tr.p));
            std::cout << to_string(rep.klass) << "\n";
            if (rep.center) std::cout << "center " << fmt_point(*rep.center) << "\n";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", rep.residual6);
            std::cout << "residual6 " << buf << "\n";
        }
        return 0;
    }
    if (s.conics.empty()) throw UsageError("scene has neither a triad nor a conic");
    for (const auto& c : s.conics) {
        std::cout << c.label << " " << to_string(classify(c.conic)) << "\n";
        try {
            std::cout << "center " << fmt_point(center(c.conic)) << "\n";
        } catch (const Error&) {
        }
    }
    return 0;
}

int cmd_verify(const std::string& prop, uint64_t seed, int trials, int threads, std::optional<double> tol,
               const std::string& json_out) {
    RunOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.threads = threads;
    opt.tol_override = tol;
    SuiteReport r;
    if (prop == "all") {
        r = run_all(opt);
    } else {
        r = run_selected({prop}, opt);
    }
    std::cout << report_to_text(r);
    if (!json_out.empty()) write_file(json_out, report_to_json(r).dump(2) + "\n");
    return r.pass ? 0 : 1;
}

int cmd_replay(const std::string& path) {
    json j = json::parse(read_file(path));
    if (j.contains("propositions")) {
        for (const auto& p : j["propositions"]) {
            double v = replay_witness(p["witness"]);
            std::cout << p["id"].get<std::string>() << " " << p["witness"]["meta"]["claim"].get<std::string>() << " "
                      << v << "\n";
        }
        return 0;
    }
    std::cout << replay_witness(j) << "\n";
    return 0;
}

int cmd_locus(const std::string& kind, int samples, const std::string& tri, const std::string& bbox, int grid,
              const std::string& out) {
    auto t = optional_triangle(tri);
    json j;
    std::vector<Polyline> lines;
    if (kind == "x478") {
        auto s = sample_locus_x478(samples);
        j = {{"kind", kind}, {"samples", locus_to_json(s)}};
        Polyline pl;
        for (const auto& x : s) pl.push_back(x.center);
        lines.push_back(pl);
    } else if (kind == "ostar") {
        if (!t) throw UsageError("locus ostar needs --triangle");
        OstarLocus o = sample_locus_ostar(*t, samples);
        j = {{"kind", kind}, {"samples", locus_to_json(o.samples)}, {"arc", o.arc}};
        for (int w = 0; w < 3; ++w) {
            Polyline pl;
            for (std::size_t i = 0; i < o.samples.size(); ++i)
                if (o.arc[i] == w) pl.push_back(o.samples[i].center);
            if (pl.size() > 1) lines.push_back(pl);
        }
    } else if (kind.rfind("zero-set:", 0) == 0) {
        auto id = curve_id_from_string(kind.substr(9));
        if (!id) throw UsageError("unknown curve '" + kind.substr(9) + "'");
        BBox box = bbox.empty() ? BBox{-2, 2, -2, 2} : parse_bbox(bbox);
        lines = trace_zero_set(curve_field(*id, t), box, grid, grid);
        json pls = json::array();
        for (const auto& l : lines) {
            json a = json::array();
            for (const auto& p : l) a.push_back({p.x, p.y});
            pls.push_back(a);
        }
        j = {{"kind", kind}, {"bbox", {box.xmin, box.xmax, box.ymin, box.ymax}}, {"polylines", pls}};
    } else {
        throw UsageError("locus kind must be x478, ostar or zero-set:<curve>");
    }
    if (ends_with(out, ".svg"))
        write_file(out, emit_svg(polyline_scene(lines, "locus", t)));
    else
        write_file(out, j.dump(2) + "\n");
    return 0;
}

int cmd_regions(const std::string& kind, const std::string& tri, const std::string& grid, const std::string& bbox,
                int threads, const std::string& out) {
    auto rk = region_kind_from_string(kind);
    if (!rk) throw UsageError("region kind must be v-ell, p-ell or p-hyp");
    Triangle t = tri.empty() ? equilateral(1.0) : parse_triangle(tri);
    auto [nx, ny] = parse_grid(grid);
    BBox box = bbox.empty() ? BBox{-1.5, 1.5, -1.5, 1.5} : parse_bbox(bbox);
    RegionGrid g = region_map(t, *rk, box, nx, ny, threads);
    if (ends_with(out, ".json"))
        write_file(out, region_grid_to_json(g).dump(2) + "\n");
    else
        write_file(out, emit_ppm(g));
    return 0;
}

int cmd_render(const std::string& path, const std::string& out, int width) {
    Scene s = parse_scene(read_file(path));
    SvgOptions opt;
    opt.width = width;
    write_file(out, emit_svg(s, opt));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    load_tol_from_env();
    CLI::App app{"Conic triads of a triangle: construction, loci, region maps and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<double> tol;
    int threads = 1;
    app.add_option("--tol", tol, "Default relative tolerance; for verify it replaces every claim tolerance");
    app.add_option("--threads", threads, "Worker threads for regions and verify")->check(CLI::PositiveNumber);

    std::string tri, kind, point, out, scene_path, prop = "all", json_out, bbox, grid = "200x200";
    uint64_t seed = 42;
    int trials = 0, samples = 120, zgrid = 200, width = 800;

    auto* construct = app.add_subcommand("construct", "Build a triad and its six-point conic into a scene");
    construct->add_option("--triangle", tri, "\"x1,y1 x2,y2 x3,y3\"")->required();
    construct->add_option("--triad", kind, "v-ell, p-ell, v-hyp or p-hyp")->required();
    construct->add_option("--point", point, "x,y (P for p-ell / p-hyp)");
    construct->add_option("--out", out, "Scene JSON path (- for stdout)")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Classify the six-point conic of a scene");
    classify_cmd->add_option("--scene", scene_path)->required();

    auto* verify = app.add_subcommand("verify", "Run the proposition manifest");
    verify->add_option("--prop", prop, "Proposition id or all");
    verify->add_option("--seed", seed);
    verify->add_option("--trials", trials, "Trials per proposition (0: each proposition's default)");
    verify->add_option("--json", json_out, "Write the JSON report here");

    auto* replay = app.add_subcommand("replay", "Recompute witness residuals from a report or witness scene");
    replay->add_option("--report", scene_path)->required();

    auto* locus = app.add_subcommand("locus", "Sample a locus or trace an implicit curve");
    locus->add_option("--kind", kind, "x478, ostar or zero-set:<curve>")->required();
    locus->add_option("--samples", samples);
    locus->add_option("--triangle", tri);
    locus->add_option("--bbox", bbox, "xmin,xmax,ymin,ymax (zero-set)");
    locus->add_option("--grid", zgrid, "Seed grid per axis (zero-set)");
    locus->add_option("--out", out, "JSON, or SVG when the name ends in .svg")->required();

    auto* regions = app.add_subcommand("regions", "Conic type over a grid of drivers");
    regions->add_option("--kind", kind, "v-ell (driver C), p-ell or p-hyp (driver P)")->required();
    regions->add_option("--triangle", tri, "Default: equilateral of side 1");
    regions->add_option("--grid", grid, "NxN");
    regions->add_option("--bbox", bbox, "xmin,xmax,ymin,ymax");
    regions->add_option("--out", out, "PPM, or JSON when the name ends in .json")->required();

    auto* render = app.add_subcommand("render", "Scene to SVG");
    render->add_option("--scene", scene_path)->required();
    render->add_option("--out", out)->required();
    render->add_option("--width", width);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (tol) {
        if (!(*tol > 0)) {
            std::cerr << "error: --tol must be positive\n";
            return 2;
        }
        set_default_tol(*tol);
    }

    try {
        if (*construct) return cmd_construct(tri, kind, point, out);
        if (*classify_cmd) return cmd_classify(scene_path);
        if (*verify) return cmd_verify(prop, seed, trials, threads, tol, json_out);
        if (*replay) return cmd_replay(scene_path);
        if (*locus) return cmd_locus(kind, samples, tri, bbox, zgrid, out);
        if (*regions) return cmd_regions(kind, tri, grid, bbox, threads, out);
        if (*render) return cmd_render(scene_path, out, width);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        bool usage = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownProposition ||
                     e.kind() == ErrorKind::DegenerateTriangle;
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
