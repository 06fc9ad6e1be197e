#pragma once

#include "fgplate/fem.hpp"

#include <Eigen/Core>

#include <memory>
#include <string_view>
#include <vector>

namespace fgplate {

/// A full nodal DOF vector bound to the problem it belongs to.
struct FieldState {
    std::shared_ptr<const Problem> problem;
    std::shared_ptr<const RigidityMatrices> rigidities;
    Eigen::VectorXd dofs;
    double t0 = 0;  // thermal amplitude whose free strain is removed in stress recovery
};

struct StaticSolution {
    Eigen::VectorXd reduced;
    FieldState state;
    double relative_residual = 0;
};

/// Sparse LDL^T solve of K d = f.
StaticSolution solve_static(const GlobalSystem& system);

struct ModalSolution {
    Eigen::VectorXd eigenvalues;  // omega^2, ascending
    Eigen::MatrixXd vectors;      // reduced, M-orthonormal
    std::shared_ptr<const Problem> problem;
    std::shared_ptr<const RigidityMatrices> rigidities;
    Eigen::MatrixXd full_vectors;
    int iterations = 0;

    int count() const { return static_cast<int>(eigenvalues.size()); }
    double omega(int i) const;
    FieldState mode(int i) const;
};

struct ModalOptions {
    int dense_threshold = 400;  // free DOFs at or below which the dense solver is used
};

ModalSolution solve_modes(const GlobalSystem& system, int count, ModalOptions options = {});

/// Frequency parameter omega a^2 / h sqrt(rho0 / E0).
double frequency_parameter(double omega, double a, double h, double rho0 = 1.0, double e0 = 1e9);

/// Generalized field at (x, y), averaged over the elements sharing the point.
GeneralizedField generalized_field(const FieldState& state, double x, double y);

Eigen::Vector3d displacement_at(const FieldState& state, double x, double y, double zc);

struct InplaneStress {
    double xx = 0;
    double yy = 0;
    double xy = 0;
    double zz = 0;
};

InplaneStress recover_inplane_stress(const FieldState& state, double x, double y, double zc);

struct ShearProfileRow {
    double z = 0;
    int layer = 0;
    double xz = 0;
    double yz = 0;
};

/// Transverse shear from integrating the in-plane equilibrium equations upward from z = -h/2.
/// In-plane stress gradients come from a bilinear least-squares fit of the generalized
/// strains sampled at the 3x3 Gauss points of each element containing the point.
std::vector<ShearProfileRow> recover_transverse_shear(const FieldState& state, double x, double y,
                                                      int samples_per_layer = 21);

enum class Loading { Mechanical, Thermal };

enum class Quantity { U, V, W, SigmaXX, SigmaYY, SigmaXY, SigmaZZ, SigmaXZ, SigmaYZ };

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view text);

struct EvaluationPoint {
    double x_over_a = 0.5;
    double y_over_b = 0.5;
    double z_over_h = 0.0;
    bool thickness_max = false;  // report the value of largest magnitude over z
};

/// Where each tabulated quantity is read. The defaults are the face opposite the
/// loaded one (z = -h/2), where the published sandwich tables are reproduced.
struct EvaluationPoints {
    EvaluationPoint u{0.0, 0.5, -0.5, false};
    EvaluationPoint w{0.5, 0.5, -0.5, false};
    EvaluationPoint sxx{0.5, 0.5, -0.5, false};
    EvaluationPoint sxy{0.0, 0.0, -0.5, false};
    EvaluationPoint sxz{0.0, 0.5, 0.0, true};
};

struct StaticValues {
    double u = 0;
    double w = 0;
    double sxx = 0;
    double sxy = 0;
    double sxz = 0;
    double sxz_z = 0;  // where sxz was read
};

StaticValues evaluate_static(const FieldState& state, const EvaluationPoints& points);

struct NondimensionalParams {
    double a_over_h = 10;
    double q0 = 1;
    double t0 = 1;
    double e_ref = 1e9;  // E0 of the mechanical scaling
    double e_metal = 70e9;
    double alpha_metal = 23.4e-6;
    double displacement_scale = 1;  // extra factor on u and w
    double stress_scale = 1;        // extra factor on every stress
};

struct NondimensionalReport {
    Loading loading = Loading::Mechanical;
    double u = 0;
    double w = 0;
    double sxx = 0;
    double sxy = 0;
    double sxz = 0;
    EvaluationPoints points;
};

/// Multiplier taking a dimensional quantity to the tabulated nondimensional form.
double nondimensional_factor(Quantity q, Loading loading, const NondimensionalParams& params, double thickness);

NondimensionalReport nondimensionalize_static(const StaticValues& raw, Loading loading,
                                              const NondimensionalParams& params, double thickness);


struct ProfileRow {
    double z = 0;
    int layer = 0;
    double value = 0;
};

/// Samples a quantity over the thickness; each layer contributes its own end points,
/// so interface coordinates appear twice.
std::vector<ProfileRow> through_thickness_profile(const FieldState& state, double x, double y, Quantity quantity,
                                                  int samples_per_layer = 11);

}  // namespace fgplate
