#include "fgplate/mesh.hpp"

#include "fgplate/errors.hpp"
#include "fgplate/shape.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace fgplate {

Eigen::Matrix<double, 8, 2> Mesh::element_coordinates(int element) const
{
    Eigen::Matrix<double, 8, 2> xy;
    const auto& conn = elements[static_cast<std::size_t>(element)];
    for (int i = 0; i < 8; ++i) xy.row(i) = nodes[static_cast<std::size_t>(conn[i])].transpose();
    return xy;
}

Mesh build_mesh(double a, double b, int nx, int ny)
{
    if (!(a > 0 && b > 0)) throw InvalidParameter("plate dimensions must be positive");
    if (nx < 1 || ny < 1) throw InvalidParameter("element counts must be >= 1");
    std::vector<double> xs(static_cast<std::size_t>(nx + 1)), ys(static_cast<std::size_t>(ny + 1));
    for (int i = 0; i <= nx; ++i) xs[static_cast<std::size_t>(i)] = a * i / nx;
    for (int j = 0; j <= ny; ++j) ys[static_cast<std::size_t>(j)] = b * j / ny;
    xs.back() = a;
    ys.back() = b;
    return build_mesh(xs, ys);
}

Mesh build_mesh(const std::vector<double>& x_lines, const std::vector<double>& y_lines)
{
    if (x_lines.size() < 2 || y_lines.size() < 2) throw InvalidParameter("need at least two grid lines per direction");
    for (std::size_t i = 1; i < x_lines.size(); ++i) {
        if (!(x_lines[i] > x_lines[i - 1])) throw InvalidParameter("x grid lines must increase");
    }
    for (std::size_t j = 1; j < y_lines.size(); ++j) {
        if (!(y_lines[j] > y_lines[j - 1])) throw InvalidParameter("y grid lines must increase");
    }
    if (x_lines.front() != 0.0 || y_lines.front() != 0.0) throw InvalidParameter("grid must start at the origin");

    Mesh mesh;
    mesh.nx = static_cast<int>(x_lines.size()) - 1;
    mesh.ny = static_cast<int>(y_lines.size()) - 1;
    mesh.a = x_lines.back();
    mesh.b = y_lines.back();

    const int ni = 2 * mesh.nx + 1;
    const int nj = 2 * mesh.ny + 1;
    auto coord = [](const std::vector<double>& lines, int half_index) {
        const auto k = static_cast<std::size_t>(half_index / 2);
        return half_index % 2 == 0 ? lines[k] : 0.5 * (lines[k] + lines[k + 1]);
    };

    std::vector<int> id(static_cast<std::size_t>(ni * nj), -1);
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            if (i % 2 == 1 && j % 2 == 1) continue;  // element centres carry no node
            id[static_cast<std::size_t>(j * ni + i)] = mesh.node_count();
            mesh.nodes.emplace_back(coord(x_lines, i), coord(y_lines, j));
            std::uint8_t tag = 0;
            if (i == 0) tag |= EdgeX0;
            if (i == ni - 1) tag |= EdgeXA;
            if (j == 0) tag |= EdgeY0;
            if (j == nj - 1) tag |= EdgeYB;
            mesh.edge_tags.push_back(tag);
        }
    }
    auto at = [&](int i, int j) { return id[static_cast<std::size_t>(j * ni + i)]; };
    for (int ey = 0; ey < mesh.ny; ++ey) {
        for (int ex = 0; ex < mesh.nx; ++ex) {
            const int i0 = 2 * ex, j0 = 2 * ey;
            mesh.elements.push_back({at(i0, j0), at(i0 + 2, j0), at(i0 + 2, j0 + 2), at(i0, j0 + 2), at(i0 + 1, j0),
                                     at(i0 + 2, j0 + 1), at(i0 + 1, j0 + 2), at(i0, j0 + 1)});
        }
    }
    return mesh;
}

Mesh permute_nodes(const Mesh& mesh, const std::vector<int>& permutation)
{
    if (permutation.size() != mesh.nodes.size()) throw InvalidParameter("permutation size mismatch");
    Mesh out = mesh;
    for (std::size_t i = 0; i < permutation.size(); ++i) {
        const auto k = static_cast<std::size_t>(permutation[i]);
        out.nodes[k] = mesh.nodes[i];
        out.edge_tags[k] = mesh.edge_tags[i];
    }
    for (auto& conn : out.elements) {
        for (int& n : conn) n = permutation[static_cast<std::size_t>(n)];
    }
    return out;
}

Eigen::Matrix2d jacobian(const Eigen::Matrix<double, 8, 2>& coords, double xi, double eta)
{
    const auto s = serendipity8<double>(xi, eta);
    return s.dn.transpose() * coords;
}

std::vector<PointLocation> locate(const Mesh& mesh, double x, double y)
{
    std::vector<PointLocation> found;
    const double tol = 1e-10 * std::max(mesh.a, mesh.b);
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto xy = mesh.element_coordinates(e);
        const Eigen::Vector2d lo = xy.colwise().minCoeff();
        const Eigen::Vector2d hi = xy.colwise().maxCoeff();
        if (x < lo.x() - tol || x > hi.x() + tol || y < lo.y() - tol || y > hi.y() + tol) continue;
        Eigen::Vector2d nat = Eigen::Vector2d::Zero();
        const Eigen::Vector2d target(x, y);
        for (int iter = 0; iter < 50; ++iter) {
            const auto s = serendipity8<double>(nat.x(), nat.y());
            const Eigen::Vector2d r = xy.transpose() * s.n - target;
            const Eigen::Matrix2d j = s.dn.transpose() * xy;
            const Eigen::Vector2d step = j.transpose().partialPivLu().solve(r);
            nat -= step;
            if (step.norm() < 1e-14) break;
        }
        if (std::abs(nat.x()) <= 1 + 1e-9 && std::abs(nat.y()) <= 1 + 1e-9) {
            found.push_back({e, std::clamp(nat.x(), -1.0, 1.0), std::clamp(nat.y(), -1.0, 1.0)});
        }
    }
    return found;
}

}  // namespace fgplate
