#include "fgplate/kinematics.hpp"

#include "fgplate/errors.hpp"
#include "fgplate/gauss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace fgplate {

namespace {

constexpr std::array<std::string_view, kGeneralizedDofs> kDofLabels = {
    "u0", "v0", "w0", "theta_x", "theta_y", "w1", "beta_x", "beta_y", "Gamma", "phi_x", "phi_y", "psi_x", "psi_y"};

int idx(Dof d) { return static_cast<int>(d); }

Vector13 masked(const PlateModel& model, const Vector13& v)
{
    Vector13 out = Vector13::Zero();
    for (Dof d : model.dofs) out[idx(d)] = v[idx(d)];
    return out;
}

}  // namespace

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
        case ModelKind::HSDT13: return "HSDT13";
        case ModelKind::HSDT11: return "HSDT11";
        case ModelKind::HSDT9: return "HSDT9";
        case ModelKind::FSDT5: return "FSDT5";
    }
    return "?";
}

std::string_view dof_label(Dof dof) { return kDofLabels[static_cast<std::size_t>(idx(dof))]; }

ModelKind parse_model_kind(std::string_view text)
{
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
    if (t == "HSDT13") return ModelKind::HSDT13;
    if (t == "HSDT11") return ModelKind::HSDT11;
    if (t == "HSDT9") return ModelKind::HSDT9;
    if (t == "FSDT5" || t == "FSDT") return ModelKind::FSDT5;
    throw InvalidParameter("unknown plate model '" + std::string(text) + "'");
}

PlateModel PlateModel::make(ModelKind kind)
{
    using D = Dof;
    PlateModel m;
    m.kind = kind;
    switch (kind) {
        case ModelKind::HSDT13:
            m.dofs = {D::U0, D::V0, D::W0, D::ThetaX, D::ThetaY, D::W1, D::BetaX,
                      D::BetaY, D::Gamma, D::PhiX, D::PhiY, D::PsiX, D::PsiY};
            break;
        case ModelKind::HSDT11:
            m.dofs = {D::U0, D::V0, D::W0, D::ThetaX, D::ThetaY, D::W1, D::BetaX, D::BetaY, D::Gamma, D::PhiX, D::PhiY};
            break;
        case ModelKind::HSDT9:
            m.dofs = {D::U0, D::V0, D::W0, D::ThetaX, D::ThetaY, D::BetaX, D::BetaY, D::PhiX, D::PhiY};
            break;
        case ModelKind::FSDT5:
            m.dofs = {D::U0, D::V0, D::W0, D::ThetaX, D::ThetaY};
            // 5/6 reproduces the published FSDT columns for both sandwich types; the
            // energy-equivalent factor is available as a policy.
            m.shear.policy = ShearCorrection::Policy::Constant;
            m.shear.value = 5.0 / 6.0;
            break;
    }
    return m;
}

int PlateModel::local_index(Dof dof) const
{
    const auto it = std::find(dofs.begin(), dofs.end(), dof);
    return it == dofs.end() ? -1 : static_cast<int>(it - dofs.begin());
}

ConstitutiveForm PlateModel::constitutive_form() const
{
    return has(Dof::W1) || has(Dof::Gamma) ? ConstitutiveForm::ThreeDimensional : ConstitutiveForm::PlaneStress;
}

ZigZag<double> zigzag(const SandwichLayup& layup, int layer)
{
    return ZigZag<double>{layer, layup.layer_center(layer), layup.layer_thickness(layer)};
}

Eigen::Vector2d GeneralizedStrainState::gamma3(const SandwichLayup& layup, int layer) const
{
    return shear.col(3) * zigzag(layup, layer).slope();
}

StrainVector GeneralizedStrainState::packed() const
{
    StrainVector out;
    for (int j = 0; j < 5; ++j) out.segment<4>(4 * j) = membrane.col(j);
    for (int j = 0; j < 4; ++j) out.segment<2>(kMembraneStrains + 2 * j) = shear.col(j);
    return out;
}

GeneralizedStrainState GeneralizedStrainState::unpack(const StrainVector& packed)
{
    GeneralizedStrainState s;
    for (int j = 0; j < 5; ++j) s.membrane.col(j) = packed.segment<4>(4 * j);
    for (int j = 0; j < 4; ++j) s.shear.col(j) = packed.segment<2>(kMembraneStrains + 2 * j);
    return s;
}

GeneralizedStrainState strain_vectors(const PlateModel& model, const GeneralizedField& field)
{
    const Vector13 v = masked(model, field.value);
    const Vector13 dx = masked(model, field.dx);
    const Vector13 dy = masked(model, field.dy);

    GeneralizedStrainState s;
    const std::array<std::pair<Dof, Dof>, 5> pairs = {{{Dof::U0, Dof::V0},
                                                       {Dof::ThetaX, Dof::ThetaY},
                                                       {Dof::BetaX, Dof::BetaY},
                                                       {Dof::PhiX, Dof::PhiY},
                                                       {Dof::PsiX, Dof::PsiY}}};
    for (int j = 0; j < 5; ++j) {
        const int a = idx(pairs[j].first);
        const int b = idx(pairs[j].second);
        s.membrane(0, j) = dx[a];
        s.membrane(1, j) = dy[b];
        s.membrane(3, j) = dy[a] + dx[b];
    }
    s.membrane(2, 0) = v[idx(Dof::W1)];
    s.membrane(2, 1) = 2 * v[idx(Dof::Gamma)];

    s.shear(0, 0) = v[idx(Dof::ThetaX)] + dx[idx(Dof::W0)];
    s.shear(1, 0) = v[idx(Dof::ThetaY)] + dy[idx(Dof::W0)];
    s.shear(0, 1) = 2 * v[idx(Dof::BetaX)] + dx[idx(Dof::W1)];
    s.shear(1, 1) = 2 * v[idx(Dof::BetaY)] + dy[idx(Dof::W1)];
    s.shear(0, 2) = 3 * v[idx(Dof::PhiX)] + dx[idx(Dof::Gamma)];
    s.shear(1, 2) = 3 * v[idx(Dof::PhiY)] + dy[idx(Dof::Gamma)];
    s.shear(0, 3) = v[idx(Dof::PsiX)];
    s.shear(1, 3) = v[idx(Dof::PsiY)];
    return s;
}

Eigen::Matrix<double, 1, 5> membrane_basis(const SandwichLayup& layup, double zc, int layer)
{
    Eigen::Matrix<double, 1, 5> f;
    f << 1.0, zc, zc * zc, zc * zc * zc, zigzag(layup, layer).value(zc);
    return f;
}

Eigen::Matrix<double, 1, 4> shear_basis(const SandwichLayup& layup, double zc, int layer)
{
    Eigen::Matrix<double, 1, 4> g;
    g << 1.0, zc, zc * zc, zigzag(layup, layer).slope();
    return g;
}

Eigen::Matrix<double, 3, kGeneralizedDofs> displacement_basis(const SandwichLayup& layup, double zc, int layer)
{
    Eigen::Matrix<double, 3, kGeneralizedDofs> psi = Eigen::Matrix<double, 3, kGeneralizedDofs>::Zero();
    const double s = zigzag(layup, layer).value(zc);
    const double z2 = zc * zc;
    const double z3 = z2 * zc;
    psi(0, idx(Dof::U0)) = 1;
    psi(0, idx(Dof::ThetaX)) = zc;
    psi(0, idx(Dof::BetaX)) = z2;
    psi(0, idx(Dof::PhiX)) = z3;
    psi(0, idx(Dof::PsiX)) = s;
    psi(1, idx(Dof::V0)) = 1;
    psi(1, idx(Dof::ThetaY)) = zc;
    psi(1, idx(Dof::BetaY)) = z2;
    psi(1, idx(Dof::PhiY)) = z3;
    psi(1, idx(Dof::PsiY)) = s;
    psi(2, idx(Dof::W0)) = 1;
    psi(2, idx(Dof::W1)) = zc;
    psi(2, idx(Dof::Gamma)) = z2;
    return psi;
}

Vector6 strain_at(const GeneralizedStrainState& state, const SandwichLayup& layup, double zc, int layer)
{
    const auto f = membrane_basis(layup, zc, layer);
    const auto g = shear_basis(layup, zc, layer);
    Vector6 e;
    e.head<4>() = state.membrane * f.transpose();
    e.tail<2>() = state.shear * g.transpose();
    return e;
}

Eigen::Vector3d displacement_field(const PlateModel& model, const Vector13& dofs, const SandwichLayup& layup,
                                   double zc, int layer)
{
    const double tol = 1e-12 * layup.thickness();
    if (zc < layup.z[0] - tol || zc > layup.z[3] + tol) throw DomainError("z outside plate thickness");
    return displacement_basis(layup, zc, layer) * masked(model, dofs);
}

Eigen::Vector3d displacement_field(const PlateModel& model, const Vector13& dofs, const SandwichLayup& layup,
                                   double zc)
{
    const double tol = 1e-12 * layup.thickness();
    if (zc < layup.z[0] - tol || zc > layup.z[3] + tol) throw DomainError("z outside plate thickness");
    return displacement_field(model, dofs, layup, zc, layup.layer_of(zc));
}

Matrix6 constitutive_matrix_checked(double young, double nu, ConstitutiveForm form)
{
    if (!(young >= 0)) throw InvalidParameter("Young's modulus must be non-negative");
    if (!(nu >= 0 && nu < 0.5)) throw InvalidParameter("Poisson's ratio must lie in [0, 0.5)");
    return constitutive_matrix<double>(young, nu, form);
}

Eigen::Matrix<double, kStrains, kStrains> RigidityMatrices::combined() const
{
    Eigen::Matrix<double, kStrains, kStrains> r = Eigen::Matrix<double, kStrains, kStrains>::Zero();
    r.topLeftCorner<kMembraneStrains, kMembraneStrains>() = membrane;
    r.bottomRightCorner<kShearStrains, kShearStrains>() = shear;
    return r;
}

RigidityMatrices integrate_rigidities(const SandwichLayup& layup, Homogenization scheme, const PlateModel& model,
                                      ThicknessQuadrature quadrature)
{
    if (quadrature.points_per_layer < 2) throw InvalidParameter("thickness quadrature needs at least 2 points");
    const auto rule = gauss_legendre<double>(quadrature.points_per_layer);
    const double h = layup.thickness();
    const ConstitutiveForm form = model.constitutive_form();

    RigidityMatrices r;
    r.form = form;
    r.membrane.setZero();
    r.shear.setZero();
    r.inertia.setZero();
    r.thermal.setZero();

    const Eigen::Vector4d unit_expansion(1, 1, 1, 0);
    for (int layer = 0; layer < 3; ++layer) {
        const double z0 = layup.z[layer];
        const double z1 = layup.z[layer + 1];
        if (!(z1 > z0)) continue;
        const double half = 0.5 * (z1 - z0);
        const double mid = 0.5 * (z1 + z0);
        for (Eigen::Index q = 0; q < rule.size(); ++q) {
            const double zc = mid + half * rule.points[q];
            const double w = half * rule.weights[q];
            const auto props = effective_properties(layup, scheme, layer, zc);
            const Matrix6 c = constitutive_matrix<double>(props.young_modulus, props.poisson_ratio, form);
            const Eigen::Matrix4d cbm = c.topLeftCorner<4, 4>();
            const double g = c(4, 4);
            const auto f = membrane_basis(layup, zc, layer);
            const auto gs = shear_basis(layup, zc, layer);
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) r.membrane.block<4, 4>(4 * i, 4 * j) += (w * f[i] * f[j]) * cbm;
            }
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    r.shear.block<2, 2>(2 * i, 2 * j) += (w * gs[i] * gs[j] * g) * Eigen::Matrix2d::Identity();
                }
            }
            const auto psi = displacement_basis(layup, zc, layer);
            r.inertia += (w * props.density) * psi.transpose() * psi;
            const Eigen::Vector4d stress_per_degree = cbm * unit_expansion * props.thermal_expansion;
            for (int i = 0; i < 5; ++i) r.thermal.segment<4>(4 * i) += (w * f[i] * 2 * zc / h) * stress_per_degree;
        }
    }

    if (model.kind == ModelKind::FSDT5) {
        switch (model.shear.policy) {
            case ShearCorrection::Policy::None: break;
            case ShearCorrection::Policy::Constant:
                r.shear_correction = Eigen::Matrix2d::Identity() * model.shear.value;
                break;
            case ShearCorrection::Policy::EnergyEquivalence:
                r.shear_correction = shear_correction_factor(layup, scheme);
                break;
        }
        Eigen::Matrix<double, kShearStrains, 1> scale;
        for (int j = 0; j < 4; ++j) {
            scale[2 * j] = std::sqrt(r.shear_correction(0, 0));
            scale[2 * j + 1] = std::sqrt(r.shear_correction(1, 1));
        }
        r.shear = scale.asDiagonal() * r.shear * scale.asDiagonal();
    }
    return r;
}

Eigen::Matrix2d shear_correction_factor(const SandwichLayup& layup, Homogenization scheme, int points_per_layer)
{
    const auto rule = gauss_legendre<double>(points_per_layer);
    auto reduced_modulus = [&](int layer, double zc) {
        const auto p = effective_properties(layup, scheme, layer, zc);
        return p.young_modulus / (1 - p.poisson_ratio * p.poisson_ratio);
    };
    auto shear_modulus = [&](int layer, double zc) {
        const auto p = effective_properties(layup, scheme, layer, zc);
        return p.young_modulus / (2 * (1 + p.poisson_ratio));
    };
    // Integrates fn over [a, b] inside one layer.
    auto integrate = [&](int layer, double a, double b, auto&& fn) {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0;
        for (Eigen::Index q = 0; q < rule.size(); ++q) sum += rule.weights[q] * fn(layer, mid + half * rule.points[q]);
        return sum * half;
    };

    double a0 = 0, b0 = 0, g0 = 0;
    for (int layer = 0; layer < 3; ++layer) {
        const double z0 = layup.z[layer], z1 = layup.z[layer + 1];
        if (!(z1 > z0)) continue;
        a0 += integrate(layer, z0, z1, reduced_modulus);
        b0 += integrate(layer, z0, z1, [&](int l, double zc) { return reduced_modulus(l, zc) * zc; });
        g0 += integrate(layer, z0, z1, shear_modulus);
    }
    const double neutral = b0 / a0;
    auto first_moment = [&](int l, double zc) { return reduced_modulus(l, zc) * (zc - neutral); };
    double d0 = 0;
    for (int layer = 0; layer < 3; ++layer) {
        const double z0 = layup.z[layer], z1 = layup.z[layer + 1];
        if (!(z1 > z0)) continue;
        d0 += integrate(layer, z0, z1,
                        [&](int l, double zc) { return reduced_modulus(l, zc) * (zc - neutral) * (zc - neutral); });
    }

    // Shear stress per unit shear force: tau(z) = F(z) / D, F(z) = int_{z1}^{z} Q (zeta - z_n) dzeta.
    double energy = 0;
    double cumulative = 0;
    for (int layer = 0; layer < 3; ++layer) {
        const double z0 = layup.z[layer], z1 = layup.z[layer + 1];
        if (!(z1 > z0)) continue;
        const double half = 0.5 * (z1 - z0);
        const double mid = 0.5 * (z1 + z0);
        for (Eigen::Index q = 0; q < rule.size(); ++q) {
            const double zc = mid + half * rule.points[q];
            const double f = cumulative + integrate(layer, z0, zc, first_moment);
            const double tau = f / d0;
            energy += half * rule.weights[q] * tau * tau / shear_modulus(layer, zc);
        }
        cumulative += integrate(layer, z0, z1, first_moment);
    }
    const double k = 1.0 / (g0 * energy);
    return Eigen::Matrix2d::Identity() * k;
}

}  // namespace fgplate
