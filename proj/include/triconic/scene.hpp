#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "triconic/loci_regions.hpp"

namespace triconic {

struct LabeledPoint {
    std::string label;
    Point2 p;
};

struct SceneConic {
    std::string label;
    Conic conic;
};

struct SceneCircle {
    std::string label;
    Circle circle;
};

struct SceneTriad {
    TriadKind kind = TriadKind::v_ellipse;
    std::optional<Point2> p;
};

struct ScenePolyline {
    std::string label;
    Polyline points;
};

struct Scene {
    std::optional<Triangle> triangle;
    std::optional<Point2> p;
    std::vector<SceneTriad> triads;
    std::vector<SceneConic> conics;
    std::vector<SceneCircle> circles;
    std::vector<LabeledPoint> points;
    std::vector<ScenePolyline> polylines;
    nlohmann::json meta = nlohmann::json::object();

    bool empty() const;
};

nlohmann::json scene_to_json(const Scene& s);
// Throws ParseError.
Scene scene_from_json(const nlohmann::json& j);
std::string serialize_scene(const Scene& s);
Scene parse_scene(const std::string& text);

// Point pairs as "x1,y1 x2,y2 x3,y3"; throws ParseError.
Point2 parse_point(const std::string& s);
Triangle parse_triangle(const std::string& s);

// Scene with the triad, its six-point conic and center, plus Soddy circles and X175/X176
// for v_hyperbola.
Scene construct_scene(const Triangle& t, TriadKind kind, const std::optional<Point2>& p);

struct SvgOptions {
    int width = 800;
    int samples = 512;
};

// Throws EmptyScene.
std::string emit_svg(const Scene& s, const SvgOptions& opt = {});

// Conic sampled inside the box: closed loop for ellipses, one polyline per hyperbola branch,
// clipped segments for line pairs.
std::vector<Polyline> sample_conic_paths(const Conic& c, const BBox& box, int samples = 512);

struct Rgb {
    int r, g, b;
};
Rgb region_color(ConicKind k);
std::string emit_ppm(const RegionGrid& g);
nlohmann::json region_grid_to_json(const RegionGrid& g);
nlohmann::json locus_to_json(const std::vector<LocusSample>& samples);

}  // namespace triconic
