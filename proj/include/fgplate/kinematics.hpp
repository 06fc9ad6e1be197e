#pragma once

#include "fgplate/material.hpp"

#include <Eigen/Core>

#include <string_view>
#include <vector>

namespace fgplate {

enum class ModelKind { HSDT13, HSDT11, HSDT9, FSDT5 };

/// Generalized nodal variables in canonical order.
enum class Dof : int { U0, V0, W0, ThetaX, ThetaY, W1, BetaX, BetaY, Gamma, PhiX, PhiY, PsiX, PsiY };

inline constexpr int kGeneralizedDofs = 13;
inline constexpr int kMembraneStrains = 20;  // eps0..eps4, four components each
inline constexpr int kShearStrains = 8;      // gamma0..gamma3, two components each
inline constexpr int kStrains = kMembraneStrains + kShearStrains;

using Vector13 = Eigen::Matrix<double, kGeneralizedDofs, 1>;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using StrainVector = Eigen::Matrix<double, kStrains, 1>;

std::string_view to_string(ModelKind kind);
std::string_view dof_label(Dof dof);
ModelKind parse_model_kind(std::string_view text);

/// How the bending-membrane block treats the thickness strain.
enum class ConstitutiveForm { ThreeDimensional, PlaneStress };

struct ShearCorrection {
    enum class Policy { None, EnergyEquivalence, Constant };
    Policy policy = Policy::None;
    double value = 1.0;
};

/// How the element interpolates transverse shear strains.
enum class ShearInterpolation { FieldConsistent, Conventional };

struct PlateModel {
    ModelKind kind = ModelKind::HSDT13;
    std::vector<Dof> dofs;
    ShearCorrection shear;
    ShearInterpolation shear_strain = ShearInterpolation::FieldConsistent;

    /// Active DOF set per model; FSDT5 defaults to a constant 5/6 shear correction.
    static PlateModel make(ModelKind kind);

    int dofs_per_node() const { return static_cast<int>(dofs.size()); }
    bool has(Dof dof) const { return local_index(dof) >= 0; }
    int local_index(Dof dof) const;

    /// Thickness-stretch models carry the full isotropic block; the others are plane stress.
    ConstitutiveForm constitutive_form() const;
};

/// Piecewise linear zig-zag function, +/-1 at every interface.
template <typename Scalar>
struct ZigZag {
    int layer = 0;  // 0-based
    Scalar center = 0;
    Scalar thickness = 1;

    Scalar sign() const { return layer % 2 == 0 ? Scalar(-1) : Scalar(1); }
    Scalar value(Scalar zc) const { return 2 * sign() * (zc - center) / thickness; }
    Scalar slope() const { return 2 * sign() / thickness; }
};

ZigZag<double> zigzag(const SandwichLayup& layup, int layer);

/// Mid-surface generalized displacements and their in-plane gradients.
struct GeneralizedField {
    Vector13 value = Vector13::Zero();
    Vector13 dx = Vector13::Zero();
    Vector13 dy = Vector13::Zero();
};

/// eps_bm = eps0 + z eps1 + z^2 eps2 + z^3 eps3 + S eps4, components {xx, yy, zz, xy};
/// eps_s = gamma0 + z gamma1 + z^2 gamma2 + S_,z gamma3, components {xz, yz}.
/// Column 3 of `shear` stores {psi_x, psi_y}; the layer slope is applied by gamma3().
struct GeneralizedStrainState {
    Eigen::Matrix<double, 4, 5> membrane = Eigen::Matrix<double, 4, 5>::Zero();
    Eigen::Matrix<double, 2, 4> shear = Eigen::Matrix<double, 2, 4>::Zero();

    Eigen::Vector2d gamma3(const SandwichLayup& layup, int layer) const;
    StrainVector packed() const;
    static GeneralizedStrainState unpack(const StrainVector& packed);
};

GeneralizedStrainState strain_vectors(const PlateModel& model, const GeneralizedField& field);

/// Physical strains {xx, yy, zz, xy, xz, yz} at z inside `layer`.
Vector6 strain_at(const GeneralizedStrainState& state, const SandwichLayup& layup, double zc, int layer);

/// (u, v, w) at z from the generalized nodal variables; inactive DOFs are ignored.
Eigen::Vector3d displacement_field(const PlateModel& model, const Vector13& dofs, const SandwichLayup& layup,
                                   double zc, int layer);
Eigen::Vector3d displacement_field(const PlateModel& model, const Vector13& dofs, const SandwichLayup& layup,
                                   double zc);

/// Layer stiffness ordered {xx, yy, zz, xy | xz, yz}.
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 6> constitutive_matrix(Scalar young, Scalar nu,
                                                ConstitutiveForm form = ConstitutiveForm::PlaneStress)
{
    Eigen::Matrix<Scalar, 6, 6> c = Eigen::Matrix<Scalar, 6, 6>::Zero();
    const Scalar g = young / (2 * (1 + nu));
    if (form == ConstitutiveForm::PlaneStress) {
        const Scalar q11 = young / (1 - nu * nu);
        c(0, 0) = c(1, 1) = q11;
        c(0, 1) = c(1, 0) = nu * q11;
    } else {
        const Scalar lambda = young * nu / ((1 + nu) * (1 - 2 * nu));
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) c(i, j) = lambda;
            c(i, i) = lambda + 2 * g;
        }
    }
    c(3, 3) = g;
    c(4, 4) = g;
    c(5, 5) = g;
    return c;
}

Matrix6 constitutive_matrix_checked(double young, double nu, ConstitutiveForm form);

/// Thickness functions multiplying eps0..eps4 and gamma0..gamma3.
Eigen::Matrix<double, 1, 5> membrane_basis(const SandwichLayup& layup, double zc, int layer);
Eigen::Matrix<double, 1, 4> shear_basis(const SandwichLayup& layup, double zc, int layer);
/// Maps the 13 generalized values to (u, v, w) at z.
Eigen::Matrix<double, 3, kGeneralizedDofs> displacement_basis(const SandwichLayup& layup, double zc, int layer);

struct ThicknessQuadrature {
    int points_per_layer = 10;
};

/// Through-thickness integrals of the energy densities.
struct RigidityMatrices {
    Eigen::Matrix<double, kMembraneStrains, kMembraneStrains> membrane;
    Eigen::Matrix<double, kShearStrains, kShearStrains> shear;
    Eigen::Matrix<double, kGeneralizedDofs, kGeneralizedDofs> inertia;
    /// Thermal resultants for T = (2 z / h), i.e. per unit T0 and unit in-plane amplitude.
    Eigen::Matrix<double, kMembraneStrains, 1> thermal;
    Eigen::Matrix2d shear_correction = Eigen::Matrix2d::Identity();
    ConstitutiveForm form = ConstitutiveForm::PlaneStress;

    /// blockdiag(membrane, shear)
    Eigen::Matrix<double, kStrains, kStrains> combined() const;
};

RigidityMatrices integrate_rigidities(const SandwichLayup& layup, Homogenization scheme, const PlateModel& model,
                                      ThicknessQuadrature quadrature = {});

/// Energy-equivalent transverse shear correction for a first-order section.
/// Equates the shear strain energy of the equilibrium shear-stress distribution in
/// cylindrical bending with that of a uniform shear strain; 5/6 for a homogeneous section.
Eigen::Matrix2d shear_correction_factor(const SandwichLayup& layup, Homogenization scheme, int points_per_layer = 24);

}  // namespace fgplate
