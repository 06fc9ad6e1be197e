#pragma once

#include "fgplate/analysis.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fgplate {

enum class AnalysisKind { Static, Modal, Convergence, Profile };

std::string_view to_string(AnalysisKind kind);
AnalysisKind parse_analysis_kind(std::string_view text);

/// A phase given either by preset name or by explicit properties.
struct MaterialSpec {
    std::string preset;  // empty when explicit
    PhaseMaterial properties;
};

struct ProfileSpec {
    double x_over_a = 0.5;
    double y_over_b = 0.5;
    std::vector<Quantity> quantities{Quantity::U, Quantity::W, Quantity::SigmaXX, Quantity::SigmaXZ};
    int samples_per_layer = 11;
    int mode = 0;  // 0: static solution, k >= 1: k-th mode shape
};

/// One fully specified analysis request. List-valued fields are swept.
struct AnalysisConfig {
    std::string name = "case";
    AnalysisKind analysis = AnalysisKind::Modal;

    GradingType grading = GradingType::TypeA;
    std::vector<std::string> ratios{"1-1-1"};
    std::vector<double> gradient_indices{0.0};
    double ceramic_bottom = 0.0;
    double ceramic_top = 1.0;

    MaterialSpec ceramic{"alumina", material_preset("alumina")};
    MaterialSpec metal{"aluminum", material_preset("aluminum")};
    Homogenization scheme = Homogenization::RuleOfMixtures;

    std::vector<ModelKind> models{ModelKind::HSDT13};
    ShearCorrection fsdt_shear{ShearCorrection::Policy::Constant, 5.0 / 6.0};
    ShearInterpolation shear_interpolation = ShearInterpolation::FieldConsistent;

    double a = 1.0;
    double b = 1.0;
    std::vector<double> a_over_h{10.0};

    int nx = 8;
    int ny = 8;
    std::vector<int> mesh_sequence{4, 6, 8, 16};

    LoadCase load = LoadCase::mechanical(1.0);
    int mode_count = 1;

    EvaluationPoints points;
    double e_ref = 1e9;
    double rho_ref = 1.0;
    double displacement_scale = 1.0;
    double stress_scale = 1.0;

    ProfileSpec profile;

    int thickness_points = 10;
    int inplane_order = 3;
    int threads = 1;

    PhaseMaterial ceramic_material() const;
    PhaseMaterial metal_material() const;
};

/// Canonical JSON form; every field is written, so parse(to_json(c)) == c.
nlohmann::json to_json(const AnalysisConfig& config);

/// Strict parse: unknown keys, wrong types and invalid values raise ConfigError
/// naming the offending field.
AnalysisConfig config_from_json(const nlohmann::json& doc);

/// Reads and validates a config file; parse errors report line and column.
AnalysisConfig parse_config(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Applies `dotted.key=value`; the value is read as JSON when possible, else as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Interfaces (z1..z4) for a ratio label on a plate of thickness h.
std::array<double, 4> ratio_interfaces(const std::string& label, double h);

}  // namespace fgplate
