#pragma once

#include <array>
#include <string>
#include <string_view>

namespace fgplate {

/// Isotropic constituent phase. SI units throughout.
struct PhaseMaterial {
    double young_modulus = 0;         // Pa
    double poisson_ratio = 0;         // -
    double density = 0;               // kg/m^3
    double thermal_expansion = 0;     // 1/K
    double thermal_conductivity = 0;  // W/(m K)

    void validate() const;
};

enum class GradingType { TypeA, TypeB, Monolithic };
enum class Homogenization { RuleOfMixtures, MoriTanaka };
enum class Property { YoungModulus, PoissonRatio, Density, ThermalExpansion, ThermalConductivity };

std::string_view to_string(GradingType type);
std::string_view to_string(Homogenization scheme);
GradingType parse_grading_type(std::string_view text);
Homogenization parse_homogenization(std::string_view text);
Property parse_property(std::string_view text);

/// Three-layer stack. Layer k (0-based) occupies [z[k], z[k+1]].
///
/// TypeA: graded faces, ceramic core. The faces are metal at the outer
/// surfaces and ceramic at the core interfaces.
/// TypeB: ceramic bottom face, graded core, metal top face. In the core the
/// metal fraction follows ((z - z2)/(z3 - z2))^n.
/// Monolithic: V_c = V_bot + (V_top - V_bot) ((2 z + h)/(2 h))^n over the whole
/// thickness; the layer split only affects the zig-zag function and the
/// integration intervals.
struct SandwichLayup {
    std::array<double, 4> z{};
    GradingType grading = GradingType::TypeA;
    double gradient_index = 0;
    std::string ratio_label = "1-1-1";
    PhaseMaterial ceramic;
    PhaseMaterial metal;
    double ceramic_bottom = 0.0;  // Monolithic only
    double ceramic_top = 1.0;     // Monolithic only

    double thickness() const { return z[3] - z[0]; }
    double layer_thickness(int layer) const { return z[layer + 1] - z[layer]; }
    double layer_center(int layer) const { return 0.5 * (z[layer] + z[layer + 1]); }

    /// Layer containing z; interfaces belong to the layer above, except the top surface.
    int layer_of(double zc) const;

    void validate() const;

    /// Interfaces from a label such as "1-2-1", mid-surface at z = 0.
    static SandwichLayup from_ratio(std::string_view label, double thickness, GradingType grading,
                                    double gradient_index, const PhaseMaterial& ceramic,
                                    const PhaseMaterial& metal);
};

std::array<double, 3> parse_ratio_label(std::string_view label);

/// Ceramic volume fraction at z, using the layer that owns z.
double volume_fraction_ceramic(const SandwichLayup& layup, double zc);
/// Ceramic volume fraction at z evaluated with the formula of a given layer.
double volume_fraction_ceramic(const SandwichLayup& layup, int layer, double zc);

struct EffectiveProperties {
    double young_modulus = 0;
    double poisson_ratio = 0;
    double density = 0;
    double thermal_expansion = 0;
    double thermal_conductivity = 0;

    double get(Property which) const;
};

/// Two-phase homogenization at a given ceramic fraction.
EffectiveProperties homogenize(const PhaseMaterial& ceramic, const PhaseMaterial& metal,
                               double ceramic_fraction, Homogenization scheme);

EffectiveProperties effective_properties(const SandwichLayup& layup, Homogenization scheme, int layer,
                                         double zc);
EffectiveProperties effective_properties(const SandwichLayup& layup, Homogenization scheme, double zc);

double effective_property(const SandwichLayup& layup, Homogenization scheme, double zc, Property which);

/// Mori-Tanaka estimates with the metal as matrix and the ceramic as inclusion.
template <typename Scalar>
struct MoriTanakaModuli {
    Scalar bulk;
    Scalar shear;

    Scalar young_modulus() const { return 9 * bulk * shear / (3 * bulk + shear); }
    Scalar poisson_ratio() const { return (3 * bulk - 2 * shear) / (2 * (3 * bulk + shear)); }
};

template <typename Scalar>
MoriTanakaModuli<Scalar> mori_tanaka_moduli(Scalar ceramic_fraction, Scalar e_ceramic, Scalar nu_ceramic,
                                            Scalar e_metal, Scalar nu_metal)
{
    const Scalar vc = ceramic_fraction;
    const Scalar vm = 1 - vc;
    const Scalar k_m = e_metal / (3 * (1 - 2 * nu_metal));
    const Scalar g_m = e_metal / (2 * (1 + nu_metal));
    const Scalar k_c = e_ceramic / (3 * (1 - 2 * nu_ceramic));
    const Scalar g_c = e_ceramic / (2 * (1 + nu_ceramic));
    const Scalar f_m = g_m * (9 * k_m + 8 * g_m) / (6 * (k_m + 2 * g_m));
    const Scalar bulk = k_m + vc * (k_c - k_m) / (1 + vm * (k_c - k_m) / (k_m + Scalar(4) / 3 * g_m));
    const Scalar shear = g_m + vc * (g_c - g_m) / (1 + vm * (g_c - g_m) / (g_m + f_m));
    return {bulk, shear};
}

struct DefaultMaterials {
    PhaseMaterial alumina;
    PhaseMaterial aluminum;
    PhaseMaterial sic;
};

/// Alumina/aluminum for the sandwich studies, SiC for the Al/SiC validation plate.
DefaultMaterials default_materials();

/// Named preset lookup: "alumina", "aluminum", "sic".
PhaseMaterial material_preset(std::string_view name);

}  // namespace fgplate
