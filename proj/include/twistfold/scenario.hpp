#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistfold/eval.hpp"

namespace twistfold {

// Text format, versioned by its first line:
//
//   twistfold-scenario v1
//   [setup]
//   name = cylinder_abelian
//   coordinates = x 3
//   parameters = R
//   metric = euclidean | minkowski | custom 0 0 1/2; 0 1 0; 1/2 0 0
//   level_set = (x1^2 + x2^2 - R^2)/2         (one line per constraint)
//   generator L12 = x1*d2 - x2*d1
//   twist = identity | abelian A B [; C D ...] | jordanian H E
//   twist_basis = killing | equivariance
//   order = 4
//   seed = 7
//   let L = L12/R
//   frame = L, d3
//   [checks]
//   name: kind arguments   # ref: note
//
// Check kinds:
//   equal A == B             exact, truncated to the order
//   equal_mod A == B         modulo the ideal
//   tangency X is CLASS [on F]   CLASS in tangent, chi_cc, chi_c, none
//   fails EXPR | TEXT        evaluation must raise an error containing TEXT
//   twist_axioms
//   centrality DEGREE
//   relations                dependence relations among the tangent generators
//   associativity COUNT, leibniz COUNT, braiding COUNT
//   projections COUNT, duality
//   levi_civita COUNT, gauss COUNT, twisted_gauss COUNT
struct ScenarioCheck {
    std::string name;
    std::string kind;
    std::string args;
    std::string ref;
    int line = 0;
};

struct Scenario {
    std::string origin;  // file path or "<string>"
    std::string name;
    std::vector<std::pair<std::string, std::string>> setup;  // key, value in file order
    std::vector<ScenarioCheck> checks;
};

// Throws Error with line numbers on malformed files.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
Scenario load_scenario(const std::string& path);

// Builds the workspace; validates twist preconditions before any check runs.
Workspace build_workspace(const Scenario& s, std::uint64_t* seed = nullptr);

struct CheckResult {
    std::string name;
    std::string kind;
    std::string ref;
    bool pass = false;
    std::string residual;  // compact expression text
    int nu_order = 0;
    std::string detail;
};

struct Report {
    std::string scenario;
    std::string twist;
    int order = 0;
    std::vector<CheckResult> checks;
    int passed() const;
    int failed() const;
    bool ok() const { return failed() == 0; }
};

// Seed override: when nonzero it replaces the seed of the file.
Report run_scenario(const Scenario& s, std::uint64_t seed_override = 0);

enum class ReportFormat { human, structured };
std::string emit_report(const Report& r, ReportFormat format);

}  // namespace twistfold
