#include "fgplate/fem.hpp"

#include "fgplate/errors.hpp"
#include "fgplate/gauss.hpp"
#include "fgplate/shape.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <sstream>

namespace fgplate {

namespace {

int idx(Dof d) { return static_cast<int>(d); }

// Membrane block and direction fed by each in-plane generalized variable.
struct InplaneRole {
    Dof dof;
    int block;
    int direction;  // 0: x-type, 1: y-type
};

constexpr InplaneRole kInplaneRoles[] = {
    {Dof::U0, 0, 0},    {Dof::V0, 0, 1},    {Dof::ThetaX, 1, 0}, {Dof::ThetaY, 1, 1}, {Dof::BetaX, 2, 0},
    {Dof::BetaY, 2, 1}, {Dof::PhiX, 3, 0},  {Dof::PhiY, 3, 1},   {Dof::PsiX, 4, 0},   {Dof::PsiY, 4, 1},
};

// Rows of the packed shear strains.
constexpr int shear_row(int block, int direction) { return kMembraneStrains + 2 * block + direction; }

}  // namespace

LoadCase LoadCase::mechanical(double q0, Shape shape, Surface surface)
{
    LoadCase l;
    l.kind = Kind::Mechanical;
    l.q0 = q0;
    l.shape = shape;
    l.surface = surface;
    return l;
}

LoadCase LoadCase::thermal(double t0)
{
    LoadCase l;
    l.kind = Kind::Thermal;
    l.t0 = t0;
    return l;
}

void DofMap::rebuild()
{
    free_index.assign(static_cast<std::size_t>(total), -1);
    free_to_full.clear();
    for (int i = 0; i < total; ++i) {
        if (!constrained[static_cast<std::size_t>(i)]) {
            free_index[static_cast<std::size_t>(i)] = static_cast<int>(free_to_full.size());
            free_to_full.push_back(i);
        }
    }
}

DofMap make_dof_map(const Mesh& mesh, const PlateModel& model)
{
    DofMap map;
    map.dofs_per_node = model.dofs_per_node();
    map.total = mesh.node_count() * map.dofs_per_node;
    map.constrained.assign(static_cast<std::size_t>(map.total), false);
    map.rebuild();
    return map;
}

namespace {

ElementKinematics raw_kinematics(const Mesh& mesh, int element, const PlateModel& model, double xi, double eta)
{
    const auto xy = mesh.element_coordinates(element);
    const auto s = serendipity8<double>(xi, eta);
    const Eigen::Matrix2d j = s.dn.transpose() * xy;
    const double det = j.determinant();
    if (!(det > 0)) {
        std::ostringstream msg;
        msg << "element " << element << ": non-positive Jacobian determinant " << det;
        throw DomainError(msg.str());
    }
    // Cartesian derivatives, one row per node: [dN/dx, dN/dy]
    const Eigen::Matrix<double, 8, 2> dxy = s.dn * j.inverse().transpose();

    const int nd = model.dofs_per_node();
    ElementKinematics k;
    k.b.setZero(kStrains, 8 * nd);
    k.n.setZero(kGeneralizedDofs, 8 * nd);
    k.dndx.setZero(kGeneralizedDofs, 8 * nd);
    k.dndy.setZero(kGeneralizedDofs, 8 * nd);
    k.det_j = det;
    k.xy = xy.transpose() * s.n;

    for (int a = 0; a < 8; ++a) {
        const double na = s.n[a];
        const double nx = dxy(a, 0);
        const double ny = dxy(a, 1);
        for (int l = 0; l < nd; ++l) {
            const Dof d = model.dofs[static_cast<std::size_t>(l)];
            const int col = a * nd + l;
            k.n(idx(d), col) = na;
            k.dndx(idx(d), col) = nx;
            k.dndy(idx(d), col) = ny;
            for (const auto& role : kInplaneRoles) {
                if (role.dof != d) continue;
                const int base = 4 * role.block;
                if (role.direction == 0) {
                    k.b(base + 0, col) += nx;
                    k.b(base + 3, col) += ny;
                } else {
                    k.b(base + 1, col) += ny;
                    k.b(base + 3, col) += nx;
                }
            }
            switch (d) {
                case Dof::W0:
                    k.b(shear_row(0, 0), col) += nx;
                    k.b(shear_row(0, 1), col) += ny;
                    break;
                case Dof::ThetaX: k.b(shear_row(0, 0), col) += na; break;
                case Dof::ThetaY: k.b(shear_row(0, 1), col) += na; break;
                case Dof::W1:
                    k.b(2, col) += na;
                    k.b(shear_row(1, 0), col) += nx;
                    k.b(shear_row(1, 1), col) += ny;
                    break;
                case Dof::BetaX: k.b(shear_row(1, 0), col) += 2 * na; break;
                case Dof::BetaY: k.b(shear_row(1, 1), col) += 2 * na; break;
                case Dof::Gamma:
                    k.b(4 + 2, col) += 2 * na;
                    k.b(shear_row(2, 0), col) += nx;
                    k.b(shear_row(2, 1), col) += ny;
                    break;
                case Dof::PhiX: k.b(shear_row(2, 0), col) += 3 * na; break;
                case Dof::PhiY: k.b(shear_row(2, 1), col) += 3 * na; break;
                case Dof::PsiX: k.b(shear_row(3, 0), col) += na; break;
                case Dof::PsiY: k.b(shear_row(3, 1), col) += na; break;
                default: break;
            }
        }
    }
    return k;
}

}  // namespace

ElementKinematics element_kinematics(const Mesh& mesh, int element, const PlateModel& model, double xi, double eta)
{
    ElementKinematics k = raw_kinematics(mesh, element, model, xi, eta);
    if (model.shear_strain != ShearInterpolation::FieldConsistent) return k;
    // Transverse shear strains re-interpolated from the two Gauss stations along their own
    // direction: xz is linear in xi, yz linear in eta, which removes the inconsistent terms
    // of the rotations and keeps the thin limit free of locking.
    const double g = 1.0 / std::sqrt(3.0);
    const double lx = 0.5 * xi / g, ly = 0.5 * eta / g;
    const auto xm = raw_kinematics(mesh, element, model, -g, eta);
    const auto xp = raw_kinematics(mesh, element, model, g, eta);
    const auto ym = raw_kinematics(mesh, element, model, xi, -g);
    const auto yp = raw_kinematics(mesh, element, model, xi, g);
    for (int blk = 0; blk < 4; ++blk) {
        const int rx = shear_row(blk, 0), ry = shear_row(blk, 1);
        k.b.row(rx) = (0.5 - lx) * xm.b.row(rx) + (0.5 + lx) * xp.b.row(rx);
        k.b.row(ry) = (0.5 - ly) * ym.b.row(ry) + (0.5 + ly) * yp.b.row(ry);
    }
    return k;
}

Eigen::MatrixXd element_stiffness(const Mesh& mesh, int element, const PlateModel& model,
                                  const RigidityMatrices& rigidities, int order)
{
    const auto rule = gauss_legendre<double>(order);
    const auto r = rigidities.combined();
    const int ne = 8 * model.dofs_per_node();
    Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(ne, ne);
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
        for (Eigen::Index j = 0; j < rule.size(); ++j) {
            const auto k = element_kinematics(mesh, element, model, rule.points[i], rule.points[j]);
            const double w = rule.weights[i] * rule.weights[j] * k.det_j;
            ke.noalias() += w * (k.b.transpose() * (r * k.b));
        }
    }
    return 0.5 * (ke + ke.transpose());
}

Eigen::MatrixXd element_mass(const Mesh& mesh, int element, const PlateModel& model,
                             const RigidityMatrices& rigidities, int order)
{
    const auto rule = gauss_legendre<double>(order);
    const int ne = 8 * model.dofs_per_node();
    Eigen::MatrixXd me = Eigen::MatrixXd::Zero(ne, ne);
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
        for (Eigen::Index j = 0; j < rule.size(); ++j) {
            const auto k = element_kinematics(mesh, element, model, rule.points[i], rule.points[j]);
            const double w = rule.weights[i] * rule.weights[j] * k.det_j;
            me.noalias() += w * (k.n.transpose() * (rigidities.inertia * k.n));
        }
    }
    return 0.5 * (me + me.transpose());
}

namespace {

double load_shape(const Mesh& mesh, const LoadCase& load, const Eigen::Vector2d& xy)
{
    if (load.shape == LoadCase::Shape::Uniform) return 1.0;
    const double pi = std::numbers::pi;
    return std::sin(pi * xy.x() / mesh.a) * std::sin(pi * xy.y() / mesh.b);
}

template <typename ElementFn>
Eigen::VectorXd scatter_vector(const Mesh& mesh, const PlateModel& model, ElementFn&& element_vector)
{
    const int nd = model.dofs_per_node();
    Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.node_count() * nd);
    for (int e = 0; e < mesh.element_count(); ++e) {
        const Eigen::VectorXd fe = element_vector(e);
        const auto& conn = mesh.elements[static_cast<std::size_t>(e)];
        for (int a = 0; a < 8; ++a) f.segment(conn[a] * nd, nd) += fe.segment(a * nd, nd);
    }
    return f;
}

}  // namespace

Eigen::VectorXd load_vector_mechanical(const Mesh& mesh, const PlateModel& model, const SandwichLayup& layup,
                                       const LoadCase& load, int order)
{
    const auto rule = gauss_legendre<double>(order);
    Eigen::Matrix<double, 1, kGeneralizedDofs> w_row = Eigen::Matrix<double, 1, kGeneralizedDofs>::Zero();
    if (load.surface == LoadCase::Surface::Top) {
        const double top = layup.z[3];
        w_row = displacement_basis(layup, top, 2).row(2);
    } else {
        w_row[idx(Dof::W0)] = 1.0;
    }
    return scatter_vector(mesh, model, [&](int e) {
        Eigen::VectorXd fe = Eigen::VectorXd::Zero(8 * model.dofs_per_node());
        if (load.q0 == 0.0) return fe;
        for (Eigen::Index i = 0; i < rule.size(); ++i) {
            for (Eigen::Index j = 0; j < rule.size(); ++j) {
                const auto k = element_kinematics(mesh, e, model, rule.points[i], rule.points[j]);
                const double q = load.q0 * load_shape(mesh, load, k.xy);
                fe.noalias() += (rule.weights[i] * rule.weights[j] * k.det_j * q) * (w_row * k.n).transpose();
            }
        }
        return fe;
    });
}

Eigen::VectorXd load_vector_thermal(const Mesh& mesh, const PlateModel& model, const RigidityMatrices& rigidities,
                                    double t0, int order)
{
    const auto rule = gauss_legendre<double>(order);
    const double pi = std::numbers::pi;
    StrainVector resultant = StrainVector::Zero();
    resultant.head<kMembraneStrains>() = rigidities.thermal;
    return scatter_vector(mesh, model, [&](int e) {
        Eigen::VectorXd fe = Eigen::VectorXd::Zero(8 * model.dofs_per_node());
        if (t0 == 0.0) return fe;
        for (Eigen::Index i = 0; i < rule.size(); ++i) {
            for (Eigen::Index j = 0; j < rule.size(); ++j) {
                const auto k = element_kinematics(mesh, e, model, rule.points[i], rule.points[j]);
                const double s = std::sin(pi * k.xy.x() / mesh.a) * std::sin(pi * k.xy.y() / mesh.b);
                fe.noalias() += (rule.weights[i] * rule.weights[j] * k.det_j * t0 * s) * (k.b.transpose() * resultant);
            }
        }
        return fe;
    });
}

FullSystem assemble_full(const Problem& problem, const RigidityMatrices& rigidities)
{
    const Mesh& mesh = problem.mesh;
    const PlateModel& model = problem.model;
    FullSystem sys;
    sys.map = make_dof_map(mesh, model);
    const int nd = model.dofs_per_node();
    const int ne = 8 * nd;

    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(static_cast<std::size_t>(mesh.element_count() * ne * ne));
    mt.reserve(static_cast<std::size_t>(mesh.element_count() * ne * ne));
    for (int e = 0; e < mesh.element_count(); ++e) {
        const Eigen::MatrixXd ke = element_stiffness(mesh, e, model, rigidities, problem.inplane_order);
        const Eigen::MatrixXd me = element_mass(mesh, e, model, rigidities, problem.inplane_order);
        const auto& conn = mesh.elements[static_cast<std::size_t>(e)];
        for (int a = 0; a < 8; ++a) {
            for (int la = 0; la < nd; ++la) {
                const int row = sys.map.global(conn[a], la);
                for (int b = 0; b < 8; ++b) {
                    for (int lb = 0; lb < nd; ++lb) {
                        const int col = sys.map.global(conn[b], lb);
                        kt.emplace_back(row, col, ke(a * nd + la, b * nd + lb));
                        mt.emplace_back(row, col, me(a * nd + la, b * nd + lb));
                    }
                }
            }
        }
    }
    sys.k.resize(sys.map.total, sys.map.total);
    sys.m.resize(sys.map.total, sys.map.total);
    sys.k.setFromTriplets(kt.begin(), kt.end());
    sys.m.setFromTriplets(mt.begin(), mt.end());

    sys.f = Eigen::VectorXd::Zero(sys.map.total);
    switch (problem.load.kind) {
        case LoadCase::Kind::Mechanical:
            sys.f = load_vector_mechanical(mesh, model, problem.layup, problem.load, problem.inplane_order);
            break;
        case LoadCase::Kind::Thermal:
            sys.f = load_vector_thermal(mesh, model, rigidities, problem.load.t0, problem.inplane_order);
            break;
        case LoadCase::Kind::None: break;
    }
    return sys;
}

std::vector<Dof> simply_supported_dofs_y_edges()
{
    return {Dof::U0, Dof::W0, Dof::ThetaX, Dof::W1, Dof::Gamma, Dof::BetaX, Dof::PhiX, Dof::PsiX};
}

std::vector<Dof> simply_supported_dofs_x_edges()
{
    return {Dof::V0, Dof::W0, Dof::ThetaY, Dof::W1, Dof::Gamma, Dof::BetaY, Dof::PhiY, Dof::PsiY};
}

GlobalSystem reduce(const FullSystem& full, DofMap map)
{
    if (static_cast<int>(map.constrained.size()) != full.map.total) throw std::logic_error("DOF map size mismatch");
    map.rebuild();
    const int n = map.free_count();

    auto restrict = [&](const SparseMatrix& a) {
        std::vector<Eigen::Triplet<double>> t;
        t.reserve(static_cast<std::size_t>(a.nonZeros()));
        for (int col = 0; col < a.outerSize(); ++col) {
            const int fc = map.free_index[static_cast<std::size_t>(col)];
            if (fc < 0) continue;
            for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
                const int fr = map.free_index[static_cast<std::size_t>(it.row())];
                if (fr >= 0) t.emplace_back(fr, fc, it.value());
            }
        }
        SparseMatrix r(n, n);
        r.setFromTriplets(t.begin(), t.end());
        return r;
    };

    GlobalSystem sys;
    sys.k = restrict(full.k);
    sys.m = restrict(full.m);
    sys.f.resize(n);
    for (int i = 0; i < n; ++i) sys.f[i] = full.f[map.free_to_full[static_cast<std::size_t>(i)]];
    sys.map = std::move(map);
    return sys;
}

GlobalSystem apply_simply_supported(const FullSystem& full, const Mesh& mesh, const PlateModel& model)
{
    DofMap map = full.map;
    const auto ydofs = simply_supported_dofs_y_edges();
    const auto xdofs = simply_supported_dofs_x_edges();
    for (int node = 0; node < mesh.node_count(); ++node) {
        const auto tag = mesh.edge_tags[static_cast<std::size_t>(node)];
        auto fix = [&](const std::vector<Dof>& set) {
            for (Dof d : set) {
                const int l = model.local_index(d);
                if (l >= 0) map.constrained[static_cast<std::size_t>(map.global(node, l))] = true;
            }
        };
        if (tag & (EdgeY0 | EdgeYB)) fix(ydofs);
        if (tag & (EdgeX0 | EdgeXA)) fix(xdofs);
    }
    return reduce(full, std::move(map));
}

Eigen::VectorXd GlobalSystem::expand(const Eigen::VectorXd& reduced) const
{
    Eigen::VectorXd full = Eigen::VectorXd::Zero(map.total);
    for (int i = 0; i < map.free_count(); ++i) full[map.free_to_full[static_cast<std::size_t>(i)]] = reduced[i];
    return full;
}

GlobalSystem assemble(const Problem& problem)
{
    problem.layup.validate();
    auto rig = std::make_shared<RigidityMatrices>(
        integrate_rigidities(problem.layup, problem.scheme, problem.model, problem.quadrature));
    const FullSystem full = assemble_full(problem, *rig);
    GlobalSystem sys = apply_simply_supported(full, problem.mesh, problem.model);
    sys.problem = std::make_shared<Problem>(problem);
    sys.rigidities = std::move(rig);
    return sys;
}

}  // namespace fgplate
