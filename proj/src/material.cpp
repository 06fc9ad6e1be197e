#include "fgplate/material.hpp"

#include "fgplate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace fgplate {

namespace {

std::string lower(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// 0^0 = 1 so that n = 0 yields a homogeneous ceramic layer.
double power_law(double ratio, double n)
{
    ratio = std::clamp(ratio, 0.0, 1.0);
    if (n == 0.0) return 1.0;
    return std::pow(ratio, n);
}

void check_inside(const SandwichLayup& layup, double zc)
{
    const double tol = 1e-12 * layup.thickness();
    if (!(zc >= layup.z[0] - tol && zc <= layup.z[3] + tol)) {
        std::ostringstream msg;
        msg << "z = " << zc << " outside plate thickness [" << layup.z[0] << ", " << layup.z[3] << "]";
        throw DomainError(msg.str());
    }
}

}  // namespace

void PhaseMaterial::validate() const
{
    if (!(young_modulus > 0)) throw InvalidParameter("young_modulus must be positive");
    if (!(density > 0)) throw InvalidParameter("density must be positive");
    if (!(poisson_ratio >= 0 && poisson_ratio < 0.5)) throw InvalidParameter("poisson_ratio must lie in [0, 0.5)");
}

std::string_view to_string(GradingType type)
{
    switch (type) {
        case GradingType::TypeA: return "TypeA";
        case GradingType::TypeB: return "TypeB";
        case GradingType::Monolithic: return "Monolithic";
    }
    return "?";
}

std::string_view to_string(Homogenization scheme)
{
    return scheme == Homogenization::MoriTanaka ? "MoriTanaka" : "RuleOfMixtures";
}

GradingType parse_grading_type(std::string_view text)
{
    const auto t = lower(text);
    if (t == "a" || t == "typea") return GradingType::TypeA;
    if (t == "b" || t == "typeb") return GradingType::TypeB;
    if (t == "monolithic" || t == "fgm") return GradingType::Monolithic;
    throw InvalidParameter("unknown grading type '" + std::string(text) + "'");
}

Homogenization parse_homogenization(std::string_view text)
{
    const auto t = lower(text);
    if (t == "rule_of_mixtures" || t == "ruleofmixtures" || t == "rom") return Homogenization::RuleOfMixtures;
    if (t == "mori_tanaka" || t == "moritanaka" || t == "mt") return Homogenization::MoriTanaka;
    throw InvalidParameter("unknown homogenization scheme '" + std::string(text) + "'");
}

Property parse_property(std::string_view text)
{
    const auto t = lower(text);
    if (t == "e" || t == "young_modulus") return Property::YoungModulus;
    if (t == "nu" || t == "poisson_ratio") return Property::PoissonRatio;
    if (t == "rho" || t == "density") return Property::Density;
    if (t == "alpha" || t == "thermal_expansion") return Property::ThermalExpansion;
    if (t == "kappa" || t == "thermal_conductivity") return Property::ThermalConductivity;
    throw InvalidParameter("unknown property tag '" + std::string(text) + "'");
}

std::array<double, 3> parse_ratio_label(std::string_view label)
{
    std::array<double, 3> parts{};
    std::string text(label);
    std::replace(text.begin(), text.end(), '-', ' ');
    std::istringstream in(text);
    for (auto& p : parts) {
        if (!(in >> p)) throw InvalidParameter("ratio label '" + std::string(label) + "' must look like 1-2-1");
    }
    std::string rest;
    if (in >> rest) throw InvalidParameter("ratio label '" + std::string(label) + "' has more than three parts");
    if (!(parts[0] > 0 && parts[1] >= 0 && parts[2] > 0)) {
        throw InvalidParameter("ratio label '" + std::string(label) + "' needs positive face thicknesses");
    }
    return parts;
}

int SandwichLayup::layer_of(double zc) const
{
    if (zc < z[1]) return 0;
    if (zc < z[2]) return 1;
    return 2;
}

void SandwichLayup::validate() const
{
    if (!(z[0] < z[1] && z[1] <= z[2] && z[2] < z[3])) {
        throw InvalidParameter("layup interfaces must satisfy z1 < z2 <= z3 < z4");
    }
    if (!(gradient_index >= 0)) throw InvalidParameter("gradient index must be >= 0");
    if (!(ceramic_bottom >= 0 && ceramic_bottom <= 1 && ceramic_top >= 0 && ceramic_top <= 1)) {
        throw InvalidParameter("surface ceramic fractions must lie in [0, 1]");
    }
    ceramic.validate();
    metal.validate();
}

SandwichLayup SandwichLayup::from_ratio(std::string_view label, double thickness, GradingType grading,
                                        double gradient_index, const PhaseMaterial& ceramic,
                                        const PhaseMaterial& metal)
{
    if (!(thickness > 0)) throw InvalidParameter("plate thickness must be positive");
    const auto parts = parse_ratio_label(label);
    const double total = parts[0] + parts[1] + parts[2];
    SandwichLayup layup;
    layup.z[0] = -0.5 * thickness;
    layup.z[1] = layup.z[0] + thickness * parts[0] / total;
    layup.z[2] = layup.z[1] + thickness * parts[1] / total;
    layup.z[3] = 0.5 * thickness;
    layup.grading = grading;
    layup.gradient_index = gradient_index;
    layup.ratio_label = std::string(label);
    layup.ceramic = ceramic;
    layup.metal = metal;
    layup.validate();
    return layup;
}

double volume_fraction_ceramic(const SandwichLayup& layup, int layer, double zc)
{
    check_inside(layup, zc);
    const double n = layup.gradient_index;
    if (n < 0) throw InvalidParameter("gradient index must be >= 0");
    const auto& z = layup.z;
    switch (layup.grading) {
        case GradingType::TypeA:
            if (layer == 0) return power_law((zc - z[0]) / (z[1] - z[0]), n);
            if (layer == 1) return 1.0;
            return power_law((zc - z[3]) / (z[2] - z[3]), n);
        case GradingType::TypeB:
            if (layer == 0) return 1.0;
            if (layer == 1) {
                if (z[2] == z[1]) return 1.0;
                return 1.0 - power_law((zc - z[1]) / (z[2] - z[1]), n);
            }
            return 0.0;
        case GradingType::Monolithic: {
            const double h = layup.thickness();
            const double mid = 0.5 * (z[0] + z[3]);
            const double t = power_law((2 * (zc - mid) + h) / (2 * h), n);
            return layup.ceramic_bottom + (layup.ceramic_top - layup.ceramic_bottom) * t;
        }
    }
    return 0.0;
}

double volume_fraction_ceramic(const SandwichLayup& layup, double zc)
{
    check_inside(layup, zc);
    return volume_fraction_ceramic(layup, layup.layer_of(zc), zc);
}

double EffectiveProperties::get(Property which) const
{
    switch (which) {
        case Property::YoungModulus: return young_modulus;
        case Property::PoissonRatio: return poisson_ratio;
        case Property::Density: return density;
        case Property::ThermalExpansion: return thermal_expansion;
        case Property::ThermalConductivity: return thermal_conductivity;
    }
    throw InvalidParameter("unknown property tag");
}

EffectiveProperties homogenize(const PhaseMaterial& ceramic, const PhaseMaterial& metal, double vc,
                               Homogenization scheme)
{
    auto mix = [vc](double pc, double pm) { return pc * vc + pm * (1 - vc); };
    auto pure = [](const PhaseMaterial& p) {
        return EffectiveProperties{p.young_modulus, p.poisson_ratio, p.density, p.thermal_expansion,
                                   p.thermal_conductivity};
    };
    if (vc >= 1.0) return pure(ceramic);
    if (vc <= 0.0) return pure(metal);

    EffectiveProperties out;
    out.density = mix(ceramic.density, metal.density);
    if (scheme == Homogenization::RuleOfMixtures) {
        out.young_modulus = mix(ceramic.young_modulus, metal.young_modulus);
        out.poisson_ratio = mix(ceramic.poisson_ratio, metal.poisson_ratio);
        out.thermal_expansion = mix(ceramic.thermal_expansion, metal.thermal_expansion);
        out.thermal_conductivity = mix(ceramic.thermal_conductivity, metal.thermal_conductivity);
        return out;
    }

    const auto mt = mori_tanaka_moduli<double>(vc, ceramic.young_modulus, ceramic.poisson_ratio,
                                               metal.young_modulus, metal.poisson_ratio);
    out.young_modulus = mt.young_modulus();
    out.poisson_ratio = mt.poisson_ratio();

    // Levin relation for the expansion coefficient, linear when the bulk moduli coincide.
    const double k_m = metal.young_modulus / (3 * (1 - 2 * metal.poisson_ratio));
    const double k_c = ceramic.young_modulus / (3 * (1 - 2 * ceramic.poisson_ratio));
    if (std::abs(k_c - k_m) > 1e-12 * std::max(k_c, k_m)) {
        out.thermal_expansion = metal.thermal_expansion + (ceramic.thermal_expansion - metal.thermal_expansion) *
                                                              (1 / mt.bulk - 1 / k_m) / (1 / k_c - 1 / k_m);
    } else {
        out.thermal_expansion = mix(ceramic.thermal_expansion, metal.thermal_expansion);
    }
    // Hatta-Taya conductivity.
    const double dk = ceramic.thermal_conductivity - metal.thermal_conductivity;
    out.thermal_conductivity =
        metal.thermal_conductivity + vc * dk / (1 + (1 - vc) * dk / (3 * metal.thermal_conductivity));
    return out;
}

EffectiveProperties effective_properties(const SandwichLayup& layup, Homogenization scheme, int layer, double zc)
{
    return homogenize(layup.ceramic, layup.metal, volume_fraction_ceramic(layup, layer, zc), scheme);
}

EffectiveProperties effective_properties(const SandwichLayup& layup, Homogenization scheme, double zc)
{
    return homogenize(layup.ceramic, layup.metal, volume_fraction_ceramic(layup, zc), scheme);
}

double effective_property(const SandwichLayup& layup, Homogenization scheme, double zc, Property which)
{
    return effective_properties(layup, scheme, zc).get(which);
}

DefaultMaterials default_materials()
{
    DefaultMaterials m;
    // Alumina expansion and conductivity are not part of the reference data set.
    m.alumina = {380e9, 0.3, 3800.0, 7.4e-6, 10.4};
    m.aluminum = {70e9, 0.3, 2707.0, 23.4e-6, 233.0};
    // SiC density only matters for dynamics; the Al/SiC plate is a static case.
    m.sic = {427e9, 0.17, 3100.0, 4.3e-6, 65.0};
    return m;
}

PhaseMaterial material_preset(std::string_view name)
{
    const auto m = default_materials();
    const auto t = lower(name);
    if (t == "alumina" || t == "al2o3") return m.alumina;
    if (t == "aluminum" || t == "aluminium" || t == "al") return m.aluminum;
    if (t == "sic") return m.sic;
    throw InvalidParameter("unknown material preset '" + std::string(name) + "'");
}

}  // namespace fgplate
