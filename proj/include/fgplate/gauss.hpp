#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fgplate {

/// Gauss-Legendre points and weights on [-1, 1].
template <typename Scalar>
struct GaussRule {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> points;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

    Eigen::Index size() const { return points.size(); }
};

// Newton iteration on P_n seeded with the Tricomi approximation of each root.
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule<Scalar> rule;
    rule.points.resize(n);
    rule.weights.resize(n);
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
        Scalar dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Scalar p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Scalar dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon() * 4) break;
        }
        // recompute derivative at the converged root
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Scalar w = 2 / ((1 - x * x) * dp * dp);
        rule.points[i] = -x;
        rule.points[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.points[n / 2] = 0;
    return rule;
}

}  // namespace fgplate
