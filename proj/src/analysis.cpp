#include "fgplate/analysis.hpp"

#include "fgplate/eigensolver.hpp"
#include "fgplate/errors.hpp"
#include "fgplate/gauss.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fgplate {

namespace {

Eigen::VectorXd element_dofs(const FieldState& state, int element)
{
    const int nd = state.problem->model.dofs_per_node();
    const auto& conn = state.problem->mesh.elements[static_cast<std::size_t>(element)];
    Eigen::VectorXd de(8 * nd);
    for (int a = 0; a < 8; ++a) de.segment(a * nd, nd) = state.dofs.segment(conn[a] * nd, nd);
    return de;
}

std::vector<PointLocation> locate_checked(const FieldState& state, double x, double y)
{
    if (!state.problem) throw InvalidParameter("field state has no problem attached");
    auto found = locate(state.problem->mesh, x, y);
    if (found.empty()) {
        throw DomainError("point (" + std::to_string(x) + ", " + std::to_string(y) + ") lies outside the plate");
    }
    return found;
}

void check_thickness(const SandwichLayup& layup, double zc)
{
    const double tol = 1e-12 * layup.thickness();
    if (zc < layup.z[0] - tol || zc > layup.z[3] + tol) {
        throw DomainError("z = " + std::to_string(zc) + " lies outside the plate thickness");
    }
}

double clamp_z(const SandwichLayup& layup, double zc) { return std::clamp(zc, layup.z[0], layup.z[3]); }

// Temperature shape in the plane and its gradient.
Eigen::Vector3d thermal_shape(const Mesh& mesh, double x, double y)
{
    const double pi = std::numbers::pi;
    const double sx = std::sin(pi * x / mesh.a), cx = std::cos(pi * x / mesh.a);
    const double sy = std::sin(pi * y / mesh.b), cy = std::cos(pi * y / mesh.b);
    return {sx * sy, pi / mesh.a * cx * sy, pi / mesh.b * sx * cy};
}

Eigen::Matrix4d membrane_stiffness(const Problem& p, const RigidityMatrices& rig, int layer, double zc,
                                   double* alpha)
{
    const auto props = effective_properties(p.layup, p.scheme, layer, zc);
    if (alpha) *alpha = props.thermal_expansion;
    return constitutive_matrix<double>(props.young_modulus, props.poisson_ratio, rig.form).topLeftCorner<4, 4>();
}

// In-plane stress {xx, yy, zz, xy} at z from packed membrane strains and the temperature amplitude.
Eigen::Vector4d membrane_stress(const Problem& p, const RigidityMatrices& rig, const Eigen::Matrix<double, 4, 5>& eps,
                                double temperature_amplitude, int layer, double zc)
{
    double alpha = 0;
    const Eigen::Matrix4d c = membrane_stiffness(p, rig, layer, zc, &alpha);
    const Eigen::Matrix<double, 5, 1> f = membrane_basis(p.layup, zc, layer).transpose();
    Eigen::Vector4d strain = eps * f;
    const double thermal = alpha * temperature_amplitude * 2 * zc / p.layup.thickness();
    strain.head<3>().array() -= thermal;
    return c * strain;
}

// Gradient of the packed membrane strains at one location, from a bilinear least-squares
// fit of values sampled at the 3x3 Gauss points.
struct MembraneGradient {
    Eigen::Matrix<double, 4, 5> dx;
    Eigen::Matrix<double, 4, 5> dy;
};

MembraneGradient membrane_gradient(const FieldState& state, const PointLocation& loc)
{
    const Problem& p = *state.problem;
    const Eigen::VectorXd de = element_dofs(state, loc.element);
    const auto rule = gauss_legendre<double>(3);
    Eigen::Matrix<double, 9, 4> basis;
    Eigen::Matrix<double, 9, kMembraneStrains> samples;
    int row = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j, ++row) {
            const double xi = rule.points[i], eta = rule.points[j];
            const auto k = element_kinematics(p.mesh, loc.element, p.model, xi, eta);
            basis.row(row) << 1.0, xi, eta, xi * eta;
            samples.row(row) = (k.b.topRows<kMembraneStrains>() * de).transpose();
        }
    }
    const Eigen::Matrix<double, 4, kMembraneStrains> coef = basis.colPivHouseholderQr().solve(samples);
    const Eigen::Matrix<double, 1, kMembraneStrains> dxi = coef.row(1) + loc.eta * coef.row(3);
    const Eigen::Matrix<double, 1, kMembraneStrains> deta = coef.row(2) + loc.xi * coef.row(3);
    const Eigen::Matrix2d jac = jacobian(p.mesh.element_coordinates(loc.element), loc.xi, loc.eta);
    Eigen::Matrix<double, 2, kMembraneStrains> nat;
    nat.row(0) = dxi;
    nat.row(1) = deta;
    const Eigen::Matrix<double, 2, kMembraneStrains> phys = jac.inverse() * nat;
    MembraneGradient g;
    for (int j = 0; j < 5; ++j) {
        for (int c = 0; c < 4; ++c) {
            g.dx(c, j) = phys(0, 4 * j + c);
            g.dy(c, j) = phys(1, 4 * j + c);
        }
    }
    return g;
}

// Divergence of in-plane stress: {sxx,x + sxy,y, sxy,x + syy,y} at z.
Eigen::Vector2d stress_divergence(const Problem& p, const RigidityMatrices& rig, const MembraneGradient& g,
                                  const Eigen::Vector3d& temperature, int layer, double zc)
{
    double alpha = 0;
    const Eigen::Matrix4d c = membrane_stiffness(p, rig, layer, zc, &alpha);
    const Eigen::Matrix<double, 5, 1> f = membrane_basis(p.layup, zc, layer).transpose();
    const double scale = alpha * 2 * zc / p.layup.thickness();
    Eigen::Vector4d ex = g.dx * f;
    Eigen::Vector4d ey = g.dy * f;
    ex.head<3>().array() -= scale * temperature[1];
    ey.head<3>().array() -= scale * temperature[2];
    const Eigen::Vector4d sx = c * ex;
    const Eigen::Vector4d sy = c * ey;
    return {sx[0] + sy[3], sx[3] + sy[1]};
}

}  // namespace

StaticSolution solve_static(const GlobalSystem& system)
{
    if (!system.problem || !system.rigidities) throw InvalidParameter("system was not assembled from a problem");
    StaticSolution out;
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(system.k);
    if (ldlt.info() != Eigen::Success) throw SingularSystemError("stiffness factorization failed");
    if ((ldlt.vectorD().array() <= 0).any()) {
        throw SingularSystemError("stiffness matrix is singular or indefinite (insufficient supports?)");
    }
    out.reduced = ldlt.solve(system.f);
    if (ldlt.info() != Eigen::Success || !out.reduced.allFinite()) throw SingularSystemError("static solve failed");
    const double fn = system.f.norm();
    out.relative_residual = fn > 0 ? (system.k * out.reduced - system.f).norm() / fn : 0.0;
    out.state.problem = system.problem;
    out.state.rigidities = system.rigidities;
    out.state.dofs = system.expand(out.reduced);
    out.state.t0 = system.problem->load.kind == LoadCase::Kind::Thermal ? system.problem->load.t0 : 0.0;
    return out;
}

double ModalSolution::omega(int i) const { return std::sqrt(std::max(0.0, eigenvalues[i])); }

FieldState ModalSolution::mode(int i) const
{
    if (i < 0 || i >= count()) throw InvalidParameter("mode index out of range");
    return FieldState{problem, rigidities, full_vectors.col(i), 0.0};
}

ModalSolution solve_modes(const GlobalSystem& system, int count, ModalOptions options)
{
    if (!system.problem || !system.rigidities) throw InvalidParameter("system was not assembled from a problem");
    if (count < 1) throw InvalidParameter("mode count must be >= 1");
    if (count > system.size()) throw InvalidParameter("mode count exceeds the number of free DOFs");
    EigenPairs pairs;
    if (system.size() <= options.dense_threshold) {
        pairs = dense_generalized_eigen(Eigen::MatrixXd(system.k), Eigen::MatrixXd(system.m), count);
    } else {
        pairs = subspace_iteration(system.k, system.m, count);
    }
    normalize_signs(pairs.vectors);
    ModalSolution out;
    out.eigenvalues = pairs.values;
    out.vectors = pairs.vectors;
    out.iterations = pairs.iterations;
    out.problem = system.problem;
    out.rigidities = system.rigidities;
    out.full_vectors.resize(system.map.total, count);
    for (int i = 0; i < count; ++i) out.full_vectors.col(i) = system.expand(pairs.vectors.col(i));
    return out;
}

double frequency_parameter(double omega, double a, double h, double rho0, double e0)
{
    if (!(omega >= 0)) throw InvalidParameter("frequency must be non-negative");
    return omega * a * a / h * std::sqrt(rho0 / e0);
}

GeneralizedField generalized_field(const FieldState& state, double x, double y)
{
    const auto found = locate_checked(state, x, y);
    const Problem& p = *state.problem;
    GeneralizedField field;
    for (const auto& loc : found) {
        const auto k = element_kinematics(p.mesh, loc.element, p.model, loc.xi, loc.eta);
        const Eigen::VectorXd de = element_dofs(state, loc.element);
        field.value += k.n * de;
        field.dx += k.dndx * de;
        field.dy += k.dndy * de;
    }
    const double inv = 1.0 / static_cast<double>(found.size());
    field.value *= inv;
    field.dx *= inv;
    field.dy *= inv;
    return field;
}

Eigen::Vector3d displacement_at(const FieldState& state, double x, double y, double zc)
{
    const auto field = generalized_field(state, x, y);
    const auto& layup = state.problem->layup;
    check_thickness(layup, zc);
    zc = clamp_z(layup, zc);
    return displacement_field(state.problem->model, field.value, layup, zc, layup.layer_of(zc));
}

InplaneStress recover_inplane_stress(const FieldState& state, double x, double y, double zc)
{
    const auto found = locate_checked(state, x, y);
    const Problem& p = *state.problem;
    check_thickness(p.layup, zc);
    zc = clamp_z(p.layup, zc);
    const int layer = p.layup.layer_of(zc);
    const double temperature = state.t0 * thermal_shape(p.mesh, x, y)[0];
    Eigen::Vector4d s = Eigen::Vector4d::Zero();
    for (const auto& loc : found) {
        const auto k = element_kinematics(p.mesh, loc.element, p.model, loc.xi, loc.eta);
        const StrainVector eps = k.b * element_dofs(state, loc.element);
        const auto st = GeneralizedStrainState::unpack(eps);
        s += membrane_stress(p, *state.rigidities, st.membrane, temperature, layer, zc);
    }
    s /= static_cast<double>(found.size());
    return {s[0], s[1], s[3], s[2]};
}

std::vector<ShearProfileRow> recover_transverse_shear(const FieldState& state, double x, double y,
                                                      int samples_per_layer)
{
    if (samples_per_layer < 2) throw InvalidParameter("need at least two samples per layer");
    const auto found = locate_checked(state, x, y);
    const Problem& p = *state.problem;
    const auto& layup = p.layup;
    const Eigen::Vector3d temperature = state.t0 * thermal_shape(p.mesh, x, y);
    std::vector<MembraneGradient> grads;
    for (const auto& loc : found) grads.push_back(membrane_gradient(state, loc));

    auto divergence = [&](int layer, double zc) {
        Eigen::Vector2d d = Eigen::Vector2d::Zero();
        for (const auto& g : grads) d += stress_divergence(p, *state.rigidities, g, temperature, layer, zc);
        return Eigen::Vector2d(d / static_cast<double>(grads.size()));
    };

    const auto rule = gauss_legendre<double>(8);
    std::vector<ShearProfileRow> rows;
    Eigen::Vector2d tau = Eigen::Vector2d::Zero();
    for (int layer = 0; layer < 3; ++layer) {
        const double z0 = layup.z[layer], z1 = layup.z[layer + 1];
        double prev = z0;
        for (int s = 0; s < samples_per_layer; ++s) {
            const double zc = s + 1 == samples_per_layer ? z1 : z0 + (z1 - z0) * s / (samples_per_layer - 1);
            const double half = 0.5 * (zc - prev), mid = 0.5 * (zc + prev);
            for (Eigen::Index q = 0; q < rule.size() && half > 0; ++q) {
                tau -= rule.weights[q] * half * divergence(layer, mid + half * rule.points[q]);
            }
            prev = zc;
            rows.push_back({zc, layer, tau[0], tau[1]});
        }
    }
    return rows;
}

StaticValues evaluate_static(const FieldState& state, const EvaluationPoints& pts)
{
    const Problem& p = *state.problem;
    const double a = p.mesh.a, b = p.mesh.b, h = p.layup.thickness();
    StaticValues v;
    v.u = displacement_at(state, pts.u.x_over_a * a, pts.u.y_over_b * b, pts.u.z_over_h * h)[0];
    v.w = displacement_at(state, pts.w.x_over_a * a, pts.w.y_over_b * b, pts.w.z_over_h * h)[2];
    v.sxx = recover_inplane_stress(state, pts.sxx.x_over_a * a, pts.sxx.y_over_b * b, pts.sxx.z_over_h * h).xx;
    v.sxy = recover_inplane_stress(state, pts.sxy.x_over_a * a, pts.sxy.y_over_b * b, pts.sxy.z_over_h * h).xy;

    const auto rows = recover_transverse_shear(state, pts.sxz.x_over_a * a, pts.sxz.y_over_b * b, 81);
    if (pts.sxz.thickness_max) {
        auto best = std::max_element(rows.begin(), rows.end(),
                                     [](const auto& l, const auto& r) { return std::abs(l.xz) < std::abs(r.xz); });
        v.sxz = best->xz;
        v.sxz_z = best->z;
    } else {
        const double zt = pts.sxz.z_over_h * h;
        auto it = std::lower_bound(rows.begin(), rows.end(), zt, [](const auto& r, double zv) { return r.z < zv; });
        if (it == rows.end()) it = std::prev(rows.end());
        if (it != rows.begin() && it->z > zt) {
            const auto lo = std::prev(it);
            const double t = (zt - lo->z) / (it->z - lo->z);
            v.sxz = lo->xz + t * (it->xz - lo->xz);
        } else {
            v.sxz = it->xz;
        }
        v.sxz_z = zt;
    }
    return v;
}

double nondimensional_factor(Quantity q, Loading loading, const NondimensionalParams& params, double thickness)
{
    if (!(params.a_over_h > 0)) throw InvalidParameter("a/h must be positive");
    if (!(thickness > 0)) throw InvalidParameter("thickness must be positive");
    const double s = params.a_over_h, h = thickness;
    const bool displacement = q == Quantity::U || q == Quantity::V || q == Quantity::W;
    double f = 0;
    if (loading == Loading::Mechanical) {
        const double q0 = params.q0;
        switch (q) {
            case Quantity::U:
            case Quantity::V: f = 100 * params.e_ref / (q0 * h * s * s * s); break;
            case Quantity::W: f = 100 * params.e_ref / (q0 * h * s * s * s * s); break;
            case Quantity::SigmaXX:
            case Quantity::SigmaYY:
            case Quantity::SigmaXY: f = 1 / (q0 * s * s); break;
            case Quantity::SigmaXZ:
            case Quantity::SigmaYZ: f = 1 / (q0 * s); break;
            case Quantity::SigmaZZ: f = 1 / q0; break;
        }
    } else {
        const double at = params.alpha_metal * params.t0;
        switch (q) {
            case Quantity::U:
            case Quantity::V: f = 1 / (h * at * s); break;
            case Quantity::W: f = 1 / (h * at * s * s); break;
            default: f = 1 / (params.e_metal * at); break;
        }
    }
    return f * (displacement ? params.displacement_scale : params.stress_scale);
}

NondimensionalReport nondimensionalize_static(const StaticValues& raw, Loading loading,
                                              const NondimensionalParams& params, double thickness)
{
    if (!(params.a_over_h > 0)) throw InvalidParameter("a/h must be positive");
    if (!(thickness > 0)) throw InvalidParameter("thickness must be positive");
    NondimensionalReport r;
    r.loading = loading;
    const bool zero = raw.u == 0 && raw.w == 0 && raw.sxx == 0 && raw.sxy == 0 && raw.sxz == 0;
    const double amplitude = loading == Loading::Mechanical ? params.q0 : params.t0;
    if (amplitude == 0) {
        if (zero) return r;
        throw InvalidParameter(loading == Loading::Mechanical ? "q0 = 0 cannot scale a nonzero response"
                                                              : "T0 = 0 cannot scale a nonzero response");
    }
    auto f = [&](Quantity q) { return nondimensional_factor(q, loading, params, thickness); };
    r.u = f(Quantity::U) * raw.u;
    r.w = f(Quantity::W) * raw.w;
    r.sxx = f(Quantity::SigmaXX) * raw.sxx;
    r.sxy = f(Quantity::SigmaXY) * raw.sxy;
    r.sxz = f(Quantity::SigmaXZ) * raw.sxz;
    return r;
}

std::string_view to_string(Quantity q)
{
    switch (q) {
        case Quantity::U: return "u";
        case Quantity::V: return "v";
        case Quantity::W: return "w";
        case Quantity::SigmaXX: return "sxx";
        case Quantity::SigmaYY: return "syy";
        case Quantity::SigmaXY: return "sxy";
        case Quantity::SigmaZZ: return "szz";
        case Quantity::SigmaXZ: return "sxz";
        case Quantity::SigmaYZ: return "syz";
    }
    return "?";
}

Quantity parse_quantity(std::string_view text)
{
    for (Quantity q : {Quantity::U, Quantity::V, Quantity::W, Quantity::SigmaXX, Quantity::SigmaYY, Quantity::SigmaXY,
                       Quantity::SigmaZZ, Quantity::SigmaXZ, Quantity::SigmaYZ}) {
        if (to_string(q) == text) return q;
    }
    throw InvalidParameter("unknown quantity '" + std::string(text) + "'");
}

std::vector<ProfileRow> through_thickness_profile(const FieldState& state, double x, double y, Quantity quantity,
                                                  int samples_per_layer)
{
    if (samples_per_layer < 2) throw InvalidParameter("need at least two samples per layer");
    const auto& layup = state.problem->layup;
    std::vector<ProfileRow> rows;
    if (quantity == Quantity::SigmaXZ || quantity == Quantity::SigmaYZ) {
        for (const auto& r : recover_transverse_shear(state, x, y, samples_per_layer)) {
            rows.push_back({r.z, r.layer, quantity == Quantity::SigmaXZ ? r.xz : r.yz});
        }
        return rows;
    }
    const auto field = generalized_field(state, x, y);
    const Problem& p = *state.problem;
    const auto found = locate_checked(state, x, y);
    std::vector<GeneralizedStrainState> strains;
    for (const auto& loc : found) {
        const auto k = element_kinematics(p.mesh, loc.element, p.model, loc.xi, loc.eta);
        strains.push_back(GeneralizedStrainState::unpack(k.b * element_dofs(state, loc.element)));
    }
    const double temperature = state.t0 * thermal_shape(p.mesh, x, y)[0];
    for (int layer = 0; layer < 3; ++layer) {
        const double z0 = layup.z[layer], z1 = layup.z[layer + 1];
        for (int s = 0; s < samples_per_layer; ++s) {
            const double zc = s + 1 == samples_per_layer ? z1 : z0 + (z1 - z0) * s / (samples_per_layer - 1);
            double value = 0;
            switch (quantity) {
                case Quantity::U:
                case Quantity::V:
                case Quantity::W: {
                    const auto d = displacement_field(p.model, field.value, layup, zc, layer);
                    value = d[quantity == Quantity::U ? 0 : quantity == Quantity::V ? 1 : 2];
                    break;
                }
                default: {
                    Eigen::Vector4d st = Eigen::Vector4d::Zero();
                    for (const auto& g : strains) {
                        st += membrane_stress(p, *state.rigidities, g.membrane, temperature, layer, zc);
                    }
                    st /= static_cast<double>(strains.size());
                    const int c = quantity == Quantity::SigmaXX   ? 0
                                  : quantity == Quantity::SigmaYY ? 1
                                  : quantity == Quantity::SigmaZZ ? 2
                                                                  : 3;
                    value = st[c];
                }
            }
            rows.push_back({zc, layer, value});
        }
    }
    return rows;
}

}  // namespace fgplate
