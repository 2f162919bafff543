#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "triconic/scene.hpp"

namespace triconic {

enum class PropKind { claim, evidence };
const char* to_string(PropKind k);

// Evidence claims fail the suite only above this residual.
inline constexpr double kEvidenceHardLimit = 1e-5;

struct ClaimSpec {
    std::string name;
    double tol = 1e-8;
    // Reported, never fails the suite: the stated result does not hold numerically.
    bool known_defect = false;
};

struct TrialInput {
    Triangle t;
    std::optional<Point2> p;
    double param = 0;
};

struct TrialOutcome {
    std::vector<double> residuals;         // one per claim; NaN when not applicable
    std::map<std::string, double> stats;   // summed over trials
};

struct Proposition {
    std::string id;
    PropKind kind = PropKind::claim;
    std::string statement;
    int default_trials = 100;
    bool fixed = false;  // deterministic single configuration; trial count ignored
    std::vector<ClaimSpec> claims;
    std::function<TrialInput(std::mt19937_64&, int trial, int trials)> draw;
    std::function<TrialOutcome(const TrialInput&)> eval;
};

const std::vector<Proposition>& manifest();
// Throws UnknownProposition.
const Proposition& find_proposition(const std::string& id);

struct RunOptions {
    uint64_t seed = 42;
    int trials = 0;  // 0: per-proposition default
    int threads = 1;
    std::optional<double> tol_override;
};

struct ClaimOutcome {
    std::string name;
    double tol = 0;
    bool known_defect = false;
    int evaluated = 0;
    int failures = 0;
    double max_residual = 0;
    int worst_trial = -1;
    bool pass = true;
};

struct PropositionReport {
    std::string id;
    PropKind kind = PropKind::claim;
    int trials = 0;
    int errors = 0;  // trials whose construction threw
    std::string first_error;
    std::vector<ClaimOutcome> claims;
    std::map<std::string, double> stats;
    bool pass = true;           // every claim within tolerance, no errors
    bool suite_pass = true;     // what counts for run_all
    nlohmann::json witness;     // scene of the worst trial
};

PropositionReport run_proposition(const std::string& id, const RunOptions& opt = {});

struct SuiteReport {
    uint64_t seed = 0;
    std::vector<PropositionReport> props;
    bool pass = true;
};

SuiteReport run_all(const RunOptions& opt = {});
SuiteReport run_selected(const std::vector<std::string>& ids, const RunOptions& opt = {});

// Recomputes the witness claim from its scene; returns its residual.
double replay_witness(const nlohmann::json& scene);

nlohmann::json report_to_json(const PropositionReport& r);
nlohmann::json report_to_json(const SuiteReport& r);
std::string report_to_text(const PropositionReport& r);
std::string report_to_text(const SuiteReport& r);

}  // namespace triconic
