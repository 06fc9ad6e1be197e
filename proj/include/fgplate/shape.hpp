#pragma once

#include <Eigen/Core>

#include <array>

namespace fgplate {

/// Natural coordinates of the serendipity nodes: corners counter-clockwise from
/// (-1,-1), then the mid-sides of edges 1-2, 2-3, 3-4, 4-1.
inline constexpr std::array<std::array<double, 2>, 8> kSerendipityNodes = {
    {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

template <typename Scalar>
struct ShapeValues {
    Eigen::Matrix<Scalar, 8, 1> n;
    Eigen::Matrix<Scalar, 8, 2> dn;  // d/dxi, d/deta
};

template <typename Scalar>
ShapeValues<Scalar> serendipity8(Scalar xi, Scalar eta)
{
    ShapeValues<Scalar> s;
    for (int i = 0; i < 4; ++i) {
        const Scalar xa = kSerendipityNodes[i][0];
        const Scalar ea = kSerendipityNodes[i][1];
        const Scalar a = 1 + xi * xa;
        const Scalar b = 1 + eta * ea;
        const Scalar c = xi * xa + eta * ea - 1;
        s.n[i] = Scalar(0.25) * a * b * c;
        s.dn(i, 0) = Scalar(0.25) * xa * b * (c + a);
        s.dn(i, 1) = Scalar(0.25) * ea * a * (c + b);
    }
    for (int i = 4; i < 8; ++i) {
        const Scalar xa = kSerendipityNodes[i][0];
        const Scalar ea = kSerendipityNodes[i][1];
        if (xa == 0) {
            s.n[i] = Scalar(0.5) * (1 - xi * xi) * (1 + eta * ea);
            s.dn(i, 0) = -xi * (1 + eta * ea);
            s.dn(i, 1) = Scalar(0.5) * ea * (1 - xi * xi);
        } else {
            s.n[i] = Scalar(0.5) * (1 + xi * xa) * (1 - eta * eta);
            s.dn(i, 0) = Scalar(0.5) * xa * (1 - eta * eta);
            s.dn(i, 1) = -eta * (1 + xi * xa);
        }
    }
    return s;
}

}  // namespace fgplate
