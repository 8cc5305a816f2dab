// twistfold command-line interface.
#include <CLI11.hpp>

#include <iostream>

#include "twistfold/scenario.hpp"

using namespace twistfold;

namespace {

struct Options {
    std::string scenario;
    int order = -1;
    std::uint64_t seed = 0;
    std::string format = "human";
};

Scenario load(const Options& o) {
    Scenario s = load_scenario(o.scenario);
    if (o.order >= 0) {
        bool replaced = false;
        for (auto& [k, v] : s.setup)
            if (k == "order") {
                v = std::to_string(o.order);
                replaced = true;
            }
        if (!replaced) s.setup.emplace_back("order", std::to_string(o.order));
    }
    return s;
}

ReportFormat format(const Options& o) { return o.format == "structured" ? ReportFormat::structured : ReportFormat::human; }

int report(const Options& o, const Scenario& s) {
    Report r = run_scenario(s, o.seed);
    std::cout << emit_report(r, format(o));
    return r.ok() ? 0 : 1;
}

// Replaces the checks of the scenario with the given ones.
int run_only(const Options& o, Scenario s, std::vector<std::pair<std::string, std::string>> checks) {
    s.checks.clear();
    for (auto& [kind, args] : checks) s.checks.push_back({kind, kind, args, "", 0});
    return report(o, s);
}

void print(const std::string& label, const Value& v, const Options& o) {
    if (o.format == "structured")
        std::cout << label << " " << value_str(v, true) << "\n";
    else
        std::cout << label << " = " << value_str(v) << "\n";
}

// Applies a named function to separately parsed arguments so that error
// columns refer to the text the user typed.
Value call(const Workspace& ws, const std::string& name, const std::vector<std::string>& args) {
    std::vector<ExprPtr> parsed;
    for (const auto& a : args) parsed.push_back(parse_expression(a));
    return evaluate(ws, *make_call(name, parsed));
}

void print_invariant(const Workspace& ws, const std::string& label, const std::string& name, const Options& o) {
    try {
        print(label, call(ws, name, {}), o);
    } catch (const EvalError& e) {
        std::cout << label << (o.format == "structured" ? " unavailable" : " unavailable: " + std::string(e.what()))
                  << "\n";
    }
}

int repl(const Options& o) {
    Workspace ws;
    if (o.scenario.empty()) {
        ws.ring = standard_ring(3, {}, "x");
        ws.metric = Metric::euclidean(3);
    } else {
        ws = build_workspace(load(o));
    }
    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        if (line == "quit" || line == "exit") break;
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::cout << value_str(evaluate(ws, line)) << "\n";
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twistfold: twisted differential geometry on level-set submanifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--order", o.order, "truncation order in nu (overrides the scenario)");
    app.add_option("--seed", o.seed, "seed for randomized checks (overrides the scenario)");
    app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"human", "structured"}));

    auto scenario_arg = [&](CLI::App* cmd) { cmd->add_option("scenario", o.scenario, "scenario file")->required(); };

    auto* run = app.add_subcommand("run", "run every check of a scenario");
    scenario_arg(run);
    auto* twist = app.add_subcommand("check-twist", "verify counit, cocycle and inverse identities");
    scenario_arg(twist);
    std::string lhs, rhs, expr;
    auto* star = app.add_subcommand("star", "star product of two expressions");
    scenario_arg(star);
    star->add_option("lhs", lhs)->required();
    star->add_option("rhs", rhs)->required();
    auto* project = app.add_subcommand("project", "tangent and normal parts of a vector field or 1-form");
    scenario_arg(project);
    project->add_option("expr", expr)->required();
    auto* curv = app.add_subcommand("curvature", "curvature invariants of the scenario frame");
    scenario_arg(curv);
    int count = 10;
    auto* gauss = app.add_subcommand("verify-gauss", "Gauss equation on random tangent quadruples");
    scenario_arg(gauss);
    gauss->add_option("--count", count, "number of quadruples");
    auto* rp = app.add_subcommand("repl", "read-eval-print loop over the expression grammar");
    rp->add_option("scenario", o.scenario, "scenario file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return report(o, load(o));
        if (*twist) return run_only(o, load(o), {{"twist_axioms", ""}});
        if (*gauss) {
            Scenario s = load(o);
            Workspace ws = build_workspace(s);
            std::vector<std::pair<std::string, std::string>> checks{{"gauss", std::to_string(count)}};
            if (ws.twisted) checks.emplace_back("twisted_gauss", std::to_string(count));
            return run_only(o, s, checks);
        }
        if (*rp) return repl(o);

        Workspace ws = build_workspace(load(o));
        if (*star) {
            print("star", call(ws, "star", {lhs, rhs}), o);
        } else if (*project) {
            print("tangent", call(ws, "proj_t", {expr}), o);
            print("normal", call(ws, "proj_n", {expr}), o);
            if (ws.twisted) {
                print("star_tangent", call(ws, "sproj_t", {expr}), o);
                print("star_normal", call(ws, "sproj_n", {expr}), o);
            }
        } else if (*curv) {
            print_invariant(ws, "gauss_curvature", "gauss_curvature", o);
            print_invariant(ws, "mean_curvature", "mean_curvature", o);
            print_invariant(ws, "ricci_scalar", "ricci_scalar", o);
            if (ws.twisted) print_invariant(ws, "star_ricci_scalar", "sricci_scalar", o);
        }
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
