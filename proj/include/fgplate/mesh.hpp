#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

namespace fgplate {

enum EdgeTag : std::uint8_t { EdgeX0 = 1, EdgeXA = 2, EdgeY0 = 4, EdgeYB = 8 };

/// Structured mesh of 8-node serendipity quadrilaterals on [0, a] x [0, b].
struct Mesh {
    double a = 1;
    double b = 1;
    int nx = 0;
    int ny = 0;
    std::vector<Eigen::Vector2d> nodes;
    std::vector<std::array<int, 8>> elements;  // local order as kSerendipityNodes
    std::vector<std::uint8_t> edge_tags;       // per node, EdgeTag bit mask

    int node_count() const { return static_cast<int>(nodes.size()); }
    int element_count() const { return static_cast<int>(elements.size()); }

    Eigen::Matrix<double, 8, 2> element_coordinates(int element) const;
};

/// Uniform nx-by-ny grid.
Mesh build_mesh(double a, double b, int nx, int ny);

/// Rectangular grid through the given (strictly increasing) grid lines.
Mesh build_mesh(const std::vector<double>& x_lines, const std::vector<double>& y_lines);

/// Renumbers nodes: new index of old node i is permutation[i].
Mesh permute_nodes(const Mesh& mesh, const std::vector<int>& permutation);

/// Isoparametric Jacobian d(x,y)/d(xi,eta) (rows: d/dxi, d/deta).
Eigen::Matrix2d jacobian(const Eigen::Matrix<double, 8, 2>& coords, double xi, double eta);

struct PointLocation {
    int element = -1;
    double xi = 0;
    double eta = 0;
};

/// All elements whose closure contains (x, y); empty when outside the plate.
std::vector<PointLocation> locate(const Mesh& mesh, double x, double y);

}  // namespace fgplate
