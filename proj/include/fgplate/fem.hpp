#pragma once

#include "fgplate/kinematics.hpp"
#include "fgplate/material.hpp"
#include "fgplate/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <memory>
#include <vector>

namespace fgplate {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct LoadCase {
    enum class Kind { None, Mechanical, Thermal };
    enum class Shape { Sinusoidal, Uniform };
    enum class Surface { Mid, Top };

    Kind kind = Kind::None;
    double q0 = 0;  // Pa, acting along +z on the chosen surface
    Shape shape = Shape::Sinusoidal;
    Surface surface = Surface::Top;
    double t0 = 0;  // K, T = t0 (2 z / h) sin(pi x / a) sin(pi y / b)

    static LoadCase mechanical(double q0, Shape shape = Shape::Sinusoidal, Surface surface = Surface::Top);
    static LoadCase thermal(double t0);
};

/// Everything needed to build and post-process one plate analysis.
struct Problem {
    Mesh mesh;
    PlateModel model;
    SandwichLayup layup;
    Homogenization scheme = Homogenization::RuleOfMixtures;
    ThicknessQuadrature quadrature;
    LoadCase load;
    int inplane_order = 3;  // Gauss points per direction
};

/// Node-major numbering: global = node * dofs_per_node + local.
struct DofMap {
    int dofs_per_node = 0;
    int total = 0;
    std::vector<bool> constrained;
    std::vector<int> free_index;    // full -> reduced, -1 when constrained
    std::vector<int> free_to_full;  // reduced -> full

    int global(int node, int local) const { return node * dofs_per_node + local; }
    int free_count() const { return static_cast<int>(free_to_full.size()); }
    void rebuild();
};

DofMap make_dof_map(const Mesh& mesh, const PlateModel& model);

/// Strain-displacement and interpolation operators at one in-plane point.
struct ElementKinematics {
    Eigen::Matrix<double, kStrains, Eigen::Dynamic> b;
    Eigen::Matrix<double, kGeneralizedDofs, Eigen::Dynamic> n;
    Eigen::Matrix<double, kGeneralizedDofs, Eigen::Dynamic> dndx;
    Eigen::Matrix<double, kGeneralizedDofs, Eigen::Dynamic> dndy;
    double det_j = 0;
    Eigen::Vector2d xy;
};

ElementKinematics element_kinematics(const Mesh& mesh, int element, const PlateModel& model, double xi, double eta);

Eigen::MatrixXd element_stiffness(const Mesh& mesh, int element, const PlateModel& model,
                                  const RigidityMatrices& rigidities, int order = 3);
Eigen::MatrixXd element_mass(const Mesh& mesh, int element, const PlateModel& model,
                             const RigidityMatrices& rigidities, int order = 3);

/// Transverse load; the pressure enters through w at the chosen surface.
Eigen::VectorXd load_vector_mechanical(const Mesh& mesh, const PlateModel& model, const SandwichLayup& layup,
                                       const LoadCase& load, int order = 3);
Eigen::VectorXd load_vector_thermal(const Mesh& mesh, const PlateModel& model, const RigidityMatrices& rigidities,
                                    double t0, int order = 3);

/// Unconstrained operators on all DOFs.
struct FullSystem {
    SparseMatrix k;
    SparseMatrix m;
    Eigen::VectorXd f;
    DofMap map;
};

FullSystem assemble_full(const Problem& problem, const RigidityMatrices& rigidities);

/// Constrained system on the free DOFs.
struct GlobalSystem {
    SparseMatrix k;
    SparseMatrix m;
    Eigen::VectorXd f;
    DofMap map;
    std::shared_ptr<const Problem> problem;
    std::shared_ptr<const RigidityMatrices> rigidities;

    int size() const { return static_cast<int>(f.size()); }
    /// Scatters a reduced vector to all DOFs, zeros at constraints.
    Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const;
};

/// Labels constrained on the edges y = 0, b (first) and x = 0, a (second).
std::vector<Dof> simply_supported_dofs_y_edges();
std::vector<Dof> simply_supported_dofs_x_edges();

/// Marks simply supported constraints and eliminates them by row/column reduction.
GlobalSystem apply_simply_supported(const FullSystem& full, const Mesh& mesh, const PlateModel& model);

/// Reduces with an arbitrary constraint set (map.constrained must be filled).
GlobalSystem reduce(const FullSystem& full, DofMap map);

/// Rigidities, assembly and boundary conditions in one go.
GlobalSystem assemble(const Problem& problem);

}  // namespace fgplate
