#include "fgplate/errors.hpp"
#include "fgplate/runner.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#ifndef FGPLATE_DATA_DIR
#define FGPLATE_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fgplate;

namespace {

enum Exit { Ok = 0, ConfigFailure = 2, SolverFailure = 3, CheckFailure = 4 };

struct Options {
    std::string config;
    std::string out = "results";
    std::vector<std::string> overrides;
    std::string check;
    int verbosity = 1;
};

AnalysisConfig load(const Options& o)
{
    json doc = read_json_file(o.config);
    for (const auto& s : o.overrides) apply_override(doc, s);
    return config_from_json(doc);
}

fs::path golden_path(const Options& o, const AnalysisConfig& c)
{
    if (o.check == "golden") return fs::path(FGPLATE_DATA_DIR) / "golden" / (c.name + ".json");
    return o.check;
}

// Compares `table` against a fixture:
//   {"tolerance": 0.002, "rows": [{"match": {"ratio": "1-1-1", ...}, "expected": {"w": 0.01257}, "tolerance": ...}]}
// Tolerances are relative.
bool check_golden(const ResultTable& table, const fs::path& path, int verbosity)
{
    const json g = read_json_file(path);
    const double default_tol = g.value("tolerance", 2e-3);
    int failed = 0;
    int checked = 0;
    for (const auto& entry : g.at("rows")) {
        std::vector<std::pair<std::string, std::string>> match;
        std::string label;
        for (const auto& [k, v] : entry.at("match").items()) {
            match.emplace_back(k, v.is_string() ? v.get<std::string>() : format_key(v.get<double>()));
            label += k + "=" + match.back().second + " ";
        }
        const ResultRow* row = table.find(match);
        const double tol = entry.value("tolerance", default_tol);
        for (const auto& [column, expected] : entry.at("expected").items()) {
            ++checked;
            const int idx = table.value_index(column);
            if (row == nullptr || idx < 0) {
                ++failed;
                std::cerr << "MISSING " << label << column << '\n';
                continue;
            }
            const double want = expected.get<double>();
            const double got = row->values[static_cast<std::size_t>(idx)];
            const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
            const bool ok = rel <= tol;
            if (!ok) ++failed;
            if (!ok || verbosity > 1) {
                std::cerr << (ok ? "ok   " : "FAIL ") << label << column << ": " << got << " vs " << want
                          << " (rel " << rel << ", tol " << tol << ")\n";
            }
        }
    }
    if (verbosity > 0) {
        std::cerr << "golden check " << path.string() << ": " << checked - failed << "/" << checked << " within tolerance\n";
    }
    return failed == 0;
}

int run(AnalysisKind kind, const Options& o)
{
    AnalysisConfig c = load(o);
    c.analysis = kind;
    std::vector<std::pair<std::string, ResultTable>> outputs;
    switch (kind) {
        case AnalysisKind::Static: outputs.emplace_back(c.name, run_static(c)); break;
        case AnalysisKind::Modal: outputs.emplace_back(c.name, run_modal(c)); break;
        case AnalysisKind::Convergence: outputs.emplace_back(c.name, run_convergence(c)); break;
        case AnalysisKind::Profile: {
            auto p = run_profile(c);
            outputs.emplace_back(c.name, std::move(p.summary));
            for (auto& [q, t] : p.data) outputs.emplace_back(c.name + "-profile-" + std::string(to_string(q)), std::move(t));
            break;
        }
    }
    for (const auto& [stem, table] : outputs) {
        write_outputs(o.out, stem, table);
        if (o.verbosity > 0) std::cerr << "wrote " << (fs::path(o.out) / stem).string() << ".{csv,json}\n";
    }
    if (o.verbosity > 1 || (o.verbosity > 0 && kind != AnalysisKind::Profile)) std::cout << to_csv(outputs.front().second);
    if (!o.check.empty() && !check_golden(outputs.front().second, golden_path(o, c), o.verbosity)) return CheckFailure;
    return Ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-element analysis of functionally graded sandwich plates"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "analysis config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("-s,--set", o.overrides, "override a config entry, e.g. --set mesh.nx=16");
    };
    auto add_run = [&](CLI::App* sub) {
        add_common(sub);
        sub->add_option("-o,--out", o.out, "output directory")->capture_default_str();
        sub->add_option("--check", o.check, "compare against a fixture: 'golden' (bundled, by config name) or a path");
        sub->add_flag("-v,--verbose", [&](std::int64_t n) { o.verbosity += static_cast<int>(n); }, "more output");
        sub->add_flag("-q,--quiet", [&](std::int64_t) { o.verbosity = 0; }, "no progress output");
    };

    auto* st = app.add_subcommand("static", "static bending under mechanical or thermal load");
    auto* mo = app.add_subcommand("modal", "natural frequencies");
    auto* cv = app.add_subcommand("converge", "frequency convergence over a mesh sequence");
    auto* pr = app.add_subcommand("profile", "through-thickness distributions for plotting");
    auto* va = app.add_subcommand("validate-config", "parse a config and print its canonical form");
    for (auto* s : {st, mo, cv, pr}) add_run(s);
    add_common(va);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : ConfigFailure;
    }

    try {
        if (va->parsed()) {
            std::cout << to_json(load(o)).dump(2) << '\n';
            return Ok;
        }
        if (st->parsed()) return run(AnalysisKind::Static, o);
        if (mo->parsed()) return run(AnalysisKind::Modal, o);
        if (cv->parsed()) return run(AnalysisKind::Convergence, o);
        return run(AnalysisKind::Profile, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return SolverFailure;
    }
}
