#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fgplate {

/// Lowest eigenpairs of K v = lambda M v, ascending, M-orthonormal vectors.
struct EigenPairs {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    int iterations = 0;
};

struct SubspaceOptions {
    int max_iterations = 500;
    double residual_tolerance = 1e-11;
    unsigned seed = 20240521u;
};

EigenPairs dense_generalized_eigen(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m, int count);

/// Subspace iteration with a sparse LDL^T factor of K (K must be positive definite).
EigenPairs subspace_iteration(const Eigen::SparseMatrix<double>& k, const Eigen::SparseMatrix<double>& m, int count,
                              const SubspaceOptions& options = {});

/// Flips each column so that its largest-magnitude entry is positive.
void normalize_signs(Eigen::MatrixXd& vectors);

}  // namespace fgplate
