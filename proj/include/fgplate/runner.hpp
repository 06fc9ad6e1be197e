#pragma once

#include "fgplate/config.hpp"
#include "fgplate/results.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fgplate {

inline constexpr const char* kToolVersion = "fgplate 1.0.0";

/// One cell of a sweep.
struct CaseSpec {
    std::string ratio;
    double n = 0;
    ModelKind model = ModelKind::HSDT13;
    double a_over_h = 10;
    int nx = 8;
    int ny = 8;

    std::string label() const;
};

/// A solver failure tagged with the case that produced it.
class CaseFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cartesian product ratio x n x model x a/h, in config order.
std::vector<CaseSpec> expand_cases(const AnalysisConfig& config);

Problem build_problem(const AnalysisConfig& config, const CaseSpec& spec);

ResultTable run_static(const AnalysisConfig& config);
ResultTable run_modal(const AnalysisConfig& config);
ResultTable run_convergence(const AnalysisConfig& config);

struct ProfileOutput {
    ResultTable summary;                                // one row per case
    std::vector<std::pair<Quantity, ResultTable>> data;  // one table per quantity
};

ProfileOutput run_profile(const AnalysisConfig& config);

/// Provenance block shared by every table produced from `config`.
nlohmann::json provenance(const AnalysisConfig& config);

}  // namespace fgplate
