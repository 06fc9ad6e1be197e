#include "fgplate/eigensolver.hpp"

#include "fgplate/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <random>
#include <string>

namespace fgplate {

void normalize_signs(Eigen::MatrixXd& vectors)
{
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index at = 0;
        vectors.col(j).cwiseAbs().maxCoeff(&at);
        if (vectors(at, j) < 0) vectors.col(j) *= -1;
    }
}

EigenPairs dense_generalized_eigen(const Eigen::MatrixXd& k, const Eigen::MatrixXd& m, int count)
{
    if (count < 1 || count > k.rows()) throw std::invalid_argument("requested mode count exceeds system size");
    Eigen::LLT<Eigen::MatrixXd> mass(m);
    if (mass.info() != Eigen::Success) throw SingularSystemError("mass matrix is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, m, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) throw SingularSystemError("dense generalized eigensolver failed");
    EigenPairs out;
    out.values = solver.eigenvalues().head(count);
    out.vectors = solver.eigenvectors().leftCols(count);
    normalize_signs(out.vectors);
    return out;
}

EigenPairs subspace_iteration(const Eigen::SparseMatrix<double>& k, const Eigen::SparseMatrix<double>& m, int count,
                              const SubspaceOptions& options)
{
    const auto n = k.rows();
    if (count < 1 || count > n) throw std::invalid_argument("requested mode count exceeds system size");
    const Eigen::Index q = std::min<Eigen::Index>(n, std::max(2 * count, count + 8));

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(k);
    if (factor.info() != Eigen::Success) throw SingularSystemError("stiffness factorization failed");
    if ((factor.vectorD().array() <= 0).any()) throw SingularSystemError("stiffness matrix is not positive definite");

    std::mt19937 rng(options.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd x(n, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = dist(rng);
    }

    EigenPairs out;
    Eigen::VectorXd previous = Eigen::VectorXd::Constant(count, -1.0);
    double best_residual = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const Eigen::MatrixXd mx = m * x;
        const Eigen::MatrixXd y = factor.solve(mx);
        Eigen::MatrixXd kr = y.transpose() * mx;  // K y = M x
        Eigen::MatrixXd mr = y.transpose() * (m * y);
        kr = 0.5 * (kr + kr.transpose()).eval();
        mr = 0.5 * (mr + mr.transpose()).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> small(kr, mr,
                                                                        Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
        if (small.info() != Eigen::Success) throw SingularSystemError("projected eigenproblem failed");
        x = y * small.eigenvectors();
        const Eigen::VectorXd lambda = small.eigenvalues();

        double worst = 0;
        for (int j = 0; j < count; ++j) {
            const Eigen::VectorXd kx = k * x.col(j);
            const Eigen::VectorXd r = kx - lambda[j] * (m * x.col(j));
            worst = std::max(worst, r.norm() / kx.norm());
        }
        const double change = ((lambda.head(count) - previous).cwiseAbs().array() / lambda.head(count).array()).maxCoeff();
        previous = lambda.head(count);
        out.iterations = it;
        if (worst <= options.residual_tolerance) break;
        // Residual floor from round-off: stop once eigenvalues are settled and the residual stops improving.
        if (change < 1e-14 && worst >= 0.5 * best_residual) {
            if (++stalled >= 5) break;
        } else {
            stalled = 0;
        }
        best_residual = std::min(best_residual, worst);
    }
    out.values = previous;
    out.vectors = x.leftCols(count);
    normalize_signs(out.vectors);
    return out;
}

}  // namespace fgplate
