#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "triconic/core_geometry.hpp"

namespace triconic {

enum class AppendixName { a_ellipse, major_vertices, x3prime_center, phyp_member, pstar_conic, x5452_coordinate };

const char* to_string(AppendixName n);
std::optional<AppendixName> appendix_name_from_string(const std::string& s);
inline constexpr AppendixName kAllAppendix[] = {
    AppendixName::a_ellipse,   AppendixName::major_vertices, AppendixName::x3prime_center,
    AppendixName::phyp_member, AppendixName::pstar_conic,    AppendixName::x5452_coordinate,
};

// Expanded polynomial, structure of arrays. idx[j * size() + k] indexes the power table
// entry of variable j for term k.
struct TermList {
    std::vector<double> coeff;
    std::vector<int32_t> exps;  // [j * size() + k]
    std::vector<int32_t> idx;
    std::size_t size() const { return coeff.size(); }
};

struct TermPart {
    TermList num;
    std::optional<TermList> den;
};

struct AppendixBlock {
    std::string name;
    std::string source;
    std::vector<std::string> variables;
    std::map<std::string, std::vector<TermPart>> components;
    int max_exp = 0;
};

// Directory holding appendix/*.json: $TRICONIC_DATA_DIR if set, else the source tree.
std::string data_dir();
std::string appendix_path(AppendixName n);
// Loaded once and cached. Throws ParseError on a missing or malformed file.
const AppendixBlock& appendix_block(AppendixName n);
uint64_t fnv1a64_file(const std::string& path);

struct TermValue {
    double value = 0;
    double scale = 0;  // largest |monomial| (divided by |denominator| for fractions)
    double normalized() const { return scale > 0 ? std::fabs(value) / scale : std::fabs(value); }
};

// Values by variable name; unknown names throw DomainError, missing ones default to 0.
TermValue eval_component(const AppendixBlock& b, const std::string& component,
                         const std::map<std::string, double>& values);
// Same evaluation through the scalar kernel only, term by term.
TermValue eval_component_reference(const AppendixBlock& b, const std::string& component,
                                   const std::map<std::string, double>& values);

struct AppendixReport {
    AppendixName name = AppendixName::a_ellipse;
    std::vector<double> residuals;
    double max_residual = 0;
    int samples = 0;
};

// Builds the object the block describes from metric geometry and evaluates the block on it.
// extra_point is P for phyp_member and pstar_conic (default: an interior point of t).
// Throws ConstructionFailed.
AppendixReport check_appendix(AppendixName n, const Triangle& t, const std::optional<Point2>& extra_point = std::nullopt);

}  // namespace triconic
