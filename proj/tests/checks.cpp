#include "checks.hpp"

#include "fgplate/shape.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace fgplate::checks {

namespace {

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

Check verdict(bool ok, const std::string& what, double measured, double limit)
{
    return {ok, what + " " + fmt(measured) + (ok ? " <= " : " > ") + fmt(limit)};
}

int idx(Dof d) { return static_cast<int>(d); }

// Largest |a - b| relative to the largest |b|.
double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

FieldState state_of(const Problem& p, const RigidityMatrices& rig, const Eigen::VectorXd& full)
{
    return FieldState{std::make_shared<Problem>(p), std::make_shared<RigidityMatrices>(rig), full, 0.0};
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

// Independent restatement of the grading rules, used only by the oracles.
double oracle_ceramic_fraction(GradingType g, const std::array<double, 4>& z, double n, int layer, double zc)
{
    auto pw = [n](double t) { return n == 0 ? 1.0 : std::pow(t, n); };
    if (g == GradingType::TypeA) {
        if (layer == 0) return pw((zc - z[0]) / (z[1] - z[0]));
        if (layer == 1) return 1.0;
        return pw((z[3] - zc) / (z[3] - z[2]));
    }
    if (layer == 0) return 1.0;
    if (layer == 1) return 1.0 - pw((zc - z[1]) / (z[2] - z[1]));
    return 0.0;
}

}  // namespace

Problem make_plate(GradingType grading, const std::string& ratio, double n, ModelKind kind, double a_over_h, int ne,
                   double a, double b, Homogenization scheme)
{
    const auto mats = default_materials();
    Problem p;
    p.mesh = build_mesh(a, b, ne, ne);
    p.model = PlateModel::make(kind);
    p.layup = SandwichLayup::from_ratio(ratio, a / a_over_h, grading, n, mats.alumina, mats.aluminum);
    p.scheme = scheme;
    p.load = LoadCase::mechanical(1.0);
    return p;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol)
{
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    // scale the tolerance by a coarse magnitude estimate
    const double scale = std::max({std::abs(fa), std::abs(fb), std::abs(fm), 1e-300}) * (b - a);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol * scale, 40);
}

double omega1(const Problem& p)
{
    const auto modes = solve_modes(assemble(p), 1);
    return frequency_parameter(modes.omega(0), p.mesh.a, p.layup.thickness());
}

Check patch_test(ModelKind kind)
{
    const auto mats = default_materials();
    Problem p;
    p.mesh = build_mesh(std::vector<double>{0.0, 0.37, 1.0}, std::vector<double>{0.0, 0.58, 1.0});
    p.model = PlateModel::make(kind);
    p.layup = SandwichLayup::from_ratio("1-1-1", 0.1, GradingType::TypeA, 0.0, mats.alumina, mats.aluminum);
    const RigidityMatrices rig = integrate_rigidities(p.layup, p.scheme, p.model, p.quadrature);
    const FullSystem full = assemble_full(p, rig);

    // Constant membrane strain plus constant curvature; the thickness strain makes the
    // normal stress vanish for the three-dimensional models.
    const double e1 = 1e-3, e2 = -4e-4, g = 6e-4, k1 = 2e-3, k2 = -1e-3, k12 = 1.5e-3;
    const double young = mats.alumina.young_modulus, nu = mats.alumina.poisson_ratio;
    const double lambda = young * nu / ((1 + nu) * (1 - 2 * nu)), mu = young / (2 * (1 + nu));
    const bool solid = p.model.constitutive_form() == ConstitutiveForm::ThreeDimensional;
    const double w1 = solid ? -lambda * (e1 + e2) / (lambda + 2 * mu) : 0.0;
    const double gm = solid ? -lambda * (k1 + k2) / (2 * (lambda + 2 * mu)) : 0.0;
    auto exact = [&](double x, double y) {
        Vector13 d = Vector13::Zero();
        d[idx(Dof::U0)] = e1 * x + 0.5 * g * y;
        d[idx(Dof::V0)] = 0.5 * g * x + e2 * y;
        d[idx(Dof::W0)] = -0.5 * (k1 * x * x + k2 * y * y + k12 * x * y);
        d[idx(Dof::ThetaX)] = k1 * x + 0.5 * k12 * y;
        d[idx(Dof::ThetaY)] = k2 * y + 0.5 * k12 * x;
        d[idx(Dof::W1)] = w1;
        d[idx(Dof::Gamma)] = gm;
        return d;
    };

    DofMap map = full.map;
    Eigen::VectorXd target(map.total);
    std::fill(map.constrained.begin(), map.constrained.end(), false);
    for (int node = 0; node < p.mesh.node_count(); ++node) {
        const auto& xy = p.mesh.nodes[static_cast<std::size_t>(node)];
        const Vector13 d = exact(xy.x(), xy.y());
        for (int l = 0; l < p.model.dofs_per_node(); ++l) {
            target[map.global(node, l)] = d[idx(p.model.dofs[static_cast<std::size_t>(l)])];
            if (p.mesh.edge_tags[static_cast<std::size_t>(node)] != 0) {
                map.constrained[static_cast<std::size_t>(map.global(node, l))] = true;
            }
        }
    }
    map.rebuild();

    const Eigen::MatrixXd k(full.k);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(map.total);
    for (int i = 0; i < map.total; ++i) {
        if (map.constrained[static_cast<std::size_t>(i)]) d[i] = target[i];
    }
    const Eigen::VectorXd rhs = -k * d;
    const int nf = map.free_count();
    Eigen::MatrixXd kff(nf, nf);
    Eigen::VectorXd rf(nf);
    for (int i = 0; i < nf; ++i) {
        rf[i] = rhs[map.free_to_full[static_cast<std::size_t>(i)]];
        for (int j = 0; j < nf; ++j) {
            kff(i, j) = k(map.free_to_full[static_cast<std::size_t>(i)], map.free_to_full[static_cast<std::size_t>(j)]);
        }
    }
    const Eigen::VectorXd xf = kff.ldlt().solve(rf);
    for (int i = 0; i < nf; ++i) d[map.free_to_full[static_cast<std::size_t>(i)]] = xf[i];
    const double disp_err = (d - target).cwiseAbs().maxCoeff() / target.cwiseAbs().maxCoeff();

    const FieldState state = state_of(p, rig, d);
    const Matrix6 c = constitutive_matrix<double>(young, nu, p.model.constitutive_form());
    double stress_err = 0, stress_max = 0;
    for (double x : {0.1, 0.37, 0.55, 0.9}) {
        for (double y : {0.2, 0.58, 0.8}) {
            for (double zc : {-0.05, -0.02, 0.035}) {
                Vector6 eps;
                eps << e1 + zc * k1, e2 + zc * k2, w1 + 2 * zc * gm, g + zc * k12, 0, 0;
                const Vector6 sig = c * eps;
                const auto s = recover_inplane_stress(state, x, y, zc);
                stress_err = std::max({stress_err, std::abs(s.xx - sig[0]), std::abs(s.yy - sig[1]),
                                       std::abs(s.xy - sig[3])});
                stress_max = std::max({stress_max, std::abs(sig[0]), std::abs(sig[1]), std::abs(sig[3])});
            }
        }
    }
    const double err = std::max(disp_err, stress_err / stress_max);
    return verdict(err <= 1e-8, std::string(to_string(kind)) + " patch error", err, 1e-8);
}

Check operator_symmetry()
{
    const auto sys = assemble(make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT13, 10, 4));
    const SparseMatrix kt = sys.k.transpose();
    const SparseMatrix mt = sys.m.transpose();
    const double ek = (sys.k - kt).norm() / sys.k.norm();
    const double em = (sys.m - mt).norm() / sys.m.norm();
    return verdict(std::max(ek, em) <= 1e-10, "K/M asymmetry", std::max(ek, em), 1e-10);
}

Check mass_positive_definite()
{
    double worst = 1e300;
    for (auto kind : {ModelKind::HSDT13, ModelKind::HSDT11, ModelKind::HSDT9, ModelKind::FSDT5}) {
        const auto sys = assemble(make_plate(GradingType::TypeB, "2-2-1", 1, kind, 5, 3));
        Eigen::SimplicialLDLT<SparseMatrix> ldlt(sys.m);
        if (ldlt.info() != Eigen::Success) return {false, "M factorization failed"};
        const Eigen::VectorXd dm = ldlt.vectorD();
        worst = std::min(worst, dm.minCoeff() / dm.maxCoeff());
    }
    return {worst > 0, "smallest LDL^T pivot ratio of M " + fmt(worst) + (worst > 0 ? " > 0" : " <= 0")};
}

Check null_space(ModelKind kind)
{
    Problem p = make_plate(GradingType::TypeA, "1-2-1", 1, kind, 2, 2);
    const RigidityMatrices rig = integrate_rigidities(p.layup, p.scheme, p.model, p.quadrature);
    auto count_null = [](const Eigen::MatrixXd& k) {
        // Jacobi scaling puts the very different generalized DOF stiffnesses on one footing.
        const Eigen::VectorXd s = k.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd ks = s.asDiagonal() * k * s.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ks, Eigen::EigenvaluesOnly);
        const double top = es.eigenvalues().cwiseAbs().maxCoeff();
        return static_cast<int>((es.eigenvalues().array().abs() <= 1e-10 * top).count());
    };
    const int global = count_null(Eigen::MatrixXd(assemble_full(p, rig).k));
    const int element = count_null(element_stiffness(p.mesh, 0, p.model, rig));
    const bool ok = global == 6 && element == 6;
    return {ok, std::string(to_string(kind)) + " null space: assembled " + std::to_string(global) + ", element " +
                    std::to_string(element) + " (expected 6 rigid-body modes)"};
}

Check mass_conservation()
{
    const Problem p = make_plate(GradingType::TypeA, "1-2-1", 2, ModelKind::HSDT13, 10, 3, 1.3, 0.7);
    const RigidityMatrices rig = integrate_rigidities(p.layup, p.scheme, p.model, p.quadrature);
    const FullSystem full = assemble_full(p, rig);
    const auto& z = p.layup.z;
    const double rc = p.layup.ceramic.density, rm = p.layup.metal.density;
    double areal = 0;
    for (int layer = 0; layer < 3; ++layer) {
        areal += adaptive_simpson(
            [&](double zc) {
                const double v = oracle_ceramic_fraction(p.layup.grading, z, p.layup.gradient_index, layer, zc);
                return rm + (rc - rm) * v;
            },
            z[static_cast<std::size_t>(layer)], z[static_cast<std::size_t>(layer) + 1]);
    }
    const double expected = areal * p.mesh.a * p.mesh.b;
    double worst = 0;
    for (Dof d : {Dof::U0, Dof::V0, Dof::W0}) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(full.map.total);
        for (int node = 0; node < p.mesh.node_count(); ++node) e[full.map.global(node, p.model.local_index(d))] = 1;
        const double mass = e.dot(full.m * e);
        worst = std::max(worst, std::abs(mass - expected) / expected);
    }
    return verdict(worst <= 1e-12, "translational mass error", worst, 1e-12);
}

Check partition_of_unity()
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto s = serendipity8(u(rng), u(rng));
        worst = std::max({worst, std::abs(s.n.sum() - 1), std::abs(s.dn.col(0).sum()), std::abs(s.dn.col(1).sum())});
    }
    return verdict(worst <= 1e-14, "partition-of-unity defect", worst, 1e-14);
}

Check eigen_residual()
{
    double worst_res = 0, worst_orth = 0;
    for (int ne : {2, 8}) {  // dense and subspace paths
        const auto sys = assemble(make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT13, 10, ne));
        const auto modes = solve_modes(sys, 6);
        for (int i = 0; i < modes.count(); ++i) {
            const Eigen::VectorXd v = modes.vectors.col(i);
            const Eigen::VectorXd kv = sys.k * v;
            worst_res = std::max(worst_res, (kv - modes.eigenvalues[i] * (sys.m * v)).norm() / kv.norm());
        }
        const Eigen::MatrixXd g = modes.vectors.transpose() * (sys.m * modes.vectors);
        worst_orth = std::max(worst_orth, (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
    }
    const bool ok = worst_res <= 1e-8 && worst_orth <= 1e-10;
    return {ok, "eigen residual " + fmt(worst_res) + " (limit 1e-08), M-orthonormality defect " + fmt(worst_orth)};
}

Check shear_face_condition()
{
    double worst = 0;
    double bottom = 0;
    for (auto kind : {ModelKind::HSDT13, ModelKind::HSDT9, ModelKind::FSDT5}) {
        for (double s : {5.0, 10.0}) {
            const Problem p = make_plate(GradingType::TypeA, "1-2-1", 1, kind, s, 8);
            const auto sol = solve_static(assemble(p));
            for (int dir = 0; dir < 2; ++dir) {
                const auto rows = dir == 0 ? recover_transverse_shear(sol.state, 0.0, 0.5)
                                           : recover_transverse_shear(sol.state, 0.5, 0.0);
                auto pick = [dir](const ShearProfileRow& r) { return dir == 0 ? r.xz : r.yz; };
                double peak = 0;
                for (const auto& r : rows) peak = std::max(peak, std::abs(pick(r)));
                bottom = std::max(bottom, std::abs(pick(rows.front())));
                worst = std::max(worst, std::abs(pick(rows.back())) / peak);
            }
        }
    }
    const bool ok = bottom == 0 && worst <= 0.01;
    return {ok, "shear stress at z=-h/2 " + fmt(bottom) + " (must be 0), |top| / max " + fmt(worst) + " (limit 1e-02)"};
}

Check homogeneous_limit()
{
    Problem a = make_plate(GradingType::TypeA, "1-1-1", 0, ModelKind::HSDT13, 10, 4);
    Problem m = make_plate(GradingType::Monolithic, "1-1-1", 3, ModelKind::HSDT13, 10, 4);
    m.layup.ceramic_bottom = 1;
    m.layup.ceramic_top = 1;
    const auto sa = solve_static(assemble(a)), sm = solve_static(assemble(m));
    const auto ma = solve_modes(assemble(a), 3), mm = solve_modes(assemble(m), 3);
    const double h = a.layup.thickness();
    Eigen::VectorXd va(5), vm(5);
    va << displacement_at(sa.state, 0.5, 0.5, 0)[2], displacement_at(sa.state, 0, 0.5, h / 2)[0], ma.eigenvalues;
    vm << displacement_at(sm.state, 0.5, 0.5, 0)[2], displacement_at(sm.state, 0, 0.5, h / 2)[0], mm.eigenvalues;
    const double err = ((va - vm).cwiseAbs().array() / vm.cwiseAbs().array()).maxCoeff();
    return verdict(err <= 1e-10, "n=0 Type A vs homogeneous ceramic plate", err, 1e-10);
}

Check model_nesting()
{
    const Problem p13 = make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT13, 5, 4);
    const Problem p11 = make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT11, 5, 4);
    const auto rig = std::make_shared<RigidityMatrices>(
        integrate_rigidities(p13.layup, p13.scheme, p13.model, p13.quadrature));
    const FullSystem full = assemble_full(p13, *rig);
    DofMap map = apply_simply_supported(full, p13.mesh, p13.model).map;
    for (int node = 0; node < p13.mesh.node_count(); ++node) {
        for (Dof d : {Dof::PsiX, Dof::PsiY}) {
            map.constrained[static_cast<std::size_t>(map.global(node, p13.model.local_index(d)))] = true;
        }
    }
    map.rebuild();
    GlobalSystem nested = reduce(full, map);
    nested.problem = std::make_shared<Problem>(p13);
    nested.rigidities = rig;
    const GlobalSystem native = assemble(p11);
    if (nested.size() != native.size()) return {false, "nested and native DOF counts differ"};

    const auto s13 = solve_static(nested), s11 = solve_static(native);
    const auto m13 = solve_modes(nested, 4), m11 = solve_modes(native, 4);
    const double h = p13.layup.thickness();
    Eigen::VectorXd a(6), b(6);
    a << displacement_at(s13.state, 0.5, 0.5, h / 2)[2], displacement_at(s13.state, 0, 0.5, -h / 2)[0], m13.eigenvalues;
    b << displacement_at(s11.state, 0.5, 0.5, h / 2)[2], displacement_at(s11.state, 0, 0.5, -h / 2)[0], m11.eigenvalues;
    const double err = ((a - b).cwiseAbs().array() / b.cwiseAbs().array()).maxCoeff();
    return verdict(err <= 1e-9, "HSDT13 with psi fixed vs HSDT11", err, 1e-9);
}

Check gradient_monotonicity()
{
    std::ostringstream bad;
    int cases = 0;
    for (const char* ratio : {"1-1-1", "1-2-1", "2-2-1"}) {
        double prev = 1e300;
        for (double n : {0.0, 0.5, 1.0, 5.0}) {
            const double w = omega1(make_plate(GradingType::TypeA, ratio, n, ModelKind::HSDT13, 10, 4));
            if (!(w < prev)) bad << " TypeA " << ratio << " n=" << n;
            prev = w;
            ++cases;
        }
        prev = 0;
        for (double n : {0.5, 1.0, 5.0}) {
            const double w = omega1(make_plate(GradingType::TypeB, ratio, n, ModelKind::HSDT13, 10, 4));
            if (!(w > prev)) bad << " TypeB " << ratio << " n=" << n;
            prev = w;
            ++cases;
        }
    }
    const bool ok = bad.str().empty();
    return {ok, std::to_string(cases) + " cases; Type A decreasing and Type B increasing in n" +
                    (ok ? std::string() : "; violated at" + bad.str())};
}

Check load_scaling()
{
    auto report = [](double q0) {
        Problem p = make_plate(GradingType::TypeA, "1-1-1", 0.5, ModelKind::HSDT13, 5, 4);
        p.load.q0 = q0;
        const auto sol = solve_static(assemble(p));
        const auto raw = evaluate_static(sol.state, EvaluationPoints{});
        NondimensionalParams np;
        np.a_over_h = 5;
        np.q0 = q0;
        const auto r = nondimensionalize_static(raw, Loading::Mechanical, np, p.layup.thickness());
        Eigen::VectorXd v(5);
        v << r.u, r.w, r.sxx, r.sxy, r.sxz;
        return v;
    };
    const Eigen::VectorXd a = report(1.0), b = report(2.0), c = report(1e4);
    const double err = std::max(rel_err(b, a), rel_err(c, a));
    return verdict(err <= 1e-10, "nondimensional change under q0 scaling", err, 1e-10);
}

namespace {

using Real = long double;
using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Negative pivots of an unpivoted LDL^T = number of eigenvalues below lambda (Sylvester).
int count_below(const MatrixR& k, const MatrixR& m, Real lambda)
{
    MatrixR a = k - lambda * m;
    const Eigen::Index n = a.rows();
    int negative = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Real d = a(j, j);
        if (d < 0) ++negative;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const Real l = a(i, j) / d;
            for (Eigen::Index c = j + 1; c <= i; ++c) a(i, c) -= l * a(c, j);
        }
    }
    return negative;
}

// det(K - lambda M) by Gaussian elimination with partial pivoting.
Real characteristic(const MatrixR& k, const MatrixR& m, Real lambda)
{
    MatrixR a = k - lambda * m;
    const Eigen::Index n = a.rows();
    Real det = 1;
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index p = j;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            if (std::abs(a(i, j)) > std::abs(a(p, j))) p = i;
        }
        if (p != j) {
            a.row(p).swap(a.row(j));
            det = -det;
        }
        det *= a(j, j);
        if (a(j, j) == 0) return 0;
        for (Eigen::Index i = j + 1; i < n; ++i) a.row(i) -= (a(i, j) / a(j, j)) * a.row(j);
    }
    return det;
}

}  // namespace

Check characteristic_polynomial_oracle()
{
    const Problem p = make_plate(GradingType::TypeB, "1-2-1", 1, ModelKind::FSDT5, 5, 1, 1.0, 0.6);
    const auto sys = assemble(p);
    const int n = sys.size();
    const MatrixR k = Eigen::MatrixXd(sys.k).cast<Real>();
    const MatrixR m = Eigen::MatrixXd(sys.m).cast<Real>();

    Real hi = 1;
    while (count_below(k, m, hi) < n) hi *= 2;
    Eigen::VectorXd oracle(n);
    bool sign_changes = true;
    for (int i = 0; i < n; ++i) {
        Real lo = 0, up = hi;
        for (int it = 0; it < 200 && up - lo > 1e-17L * up; ++it) {
            const Real mid = (lo + up) / 2;
            (count_below(k, m, mid) > i ? up : lo) = mid;
        }
        const Real root = (lo + up) / 2;
        oracle[i] = static_cast<double>(root);
        const bool simple = (i == 0 || oracle[i] > oracle[i - 1] * (1 + 1e-6)) &&
                            (i + 1 == n || count_below(k, m, root * (1 + 1e-6L)) == i + 1);
        if (simple) {
            sign_changes = sign_changes && characteristic(k, m, root * (1 - 1e-7L)) *
                                                   characteristic(k, m, root * (1 + 1e-7L)) < 0;
        }
    }

    const auto dense = solve_modes(sys, n);
    ModalOptions sub;
    sub.dense_threshold = 0;
    const auto iterative = solve_modes(sys, 3, sub);
    double err = rel_err(dense.eigenvalues, oracle);
    err = std::max(err, ((iterative.eigenvalues - oracle.head(3)).cwiseAbs().array() / oracle.head(3).array()).maxCoeff());
    const bool ok = err <= 1e-9 && sign_changes;
    return {ok, std::to_string(n) + "-DOF element: max eigenvalue deviation " + fmt(err) +
                    " (limit 1e-09), det(K - lambda M) sign change at every simple root: " + (sign_changes ? "yes" : "no")};
}

Check rigidity_oracle()
{
    struct Case {
        GradingType grading;
        const char* ratio;
        ModelKind kind;
    };
    const auto mats = default_materials();
    double worst = 0;
    std::string where;
    for (const Case& c : {Case{GradingType::TypeA, "1-2-1", ModelKind::HSDT13}, Case{GradingType::TypeA, "1-2-1", ModelKind::FSDT5},
                          Case{GradingType::TypeB, "2-2-1", ModelKind::HSDT11}, Case{GradingType::TypeB, "1-2-1", ModelKind::HSDT9}}) {
        const double h = 0.2, n = 2.0;
        const auto layup = SandwichLayup::from_ratio(c.ratio, h, c.grading, n, mats.alumina, mats.aluminum);
        const PlateModel model = PlateModel::make(c.kind);
        const RigidityMatrices rig = integrate_rigidities(layup, Homogenization::RuleOfMixtures, model);
        const bool solid = model.constitutive_form() == ConstitutiveForm::ThreeDimensional;
        const double kappa = c.kind == ModelKind::FSDT5 ? model.shear.value : 1.0;

        auto mix = [&](double vc, double pc, double pm) { return pm + (pc - pm) * vc; };
        // Integrand families evaluated from first principles at (layer, z).
        auto entry = [&](int layer, double zc, int which, int i, int j, int r, int s) -> double {
            const double vc = oracle_ceramic_fraction(c.grading, layup.z, n, layer, zc);
            const double e = mix(vc, mats.alumina.young_modulus, mats.aluminum.young_modulus);
            const double nu = mix(vc, mats.alumina.poisson_ratio, mats.aluminum.poisson_ratio);
            const double rho = mix(vc, mats.alumina.density, mats.aluminum.density);
            const double alpha = mix(vc, mats.alumina.thermal_expansion, mats.aluminum.thermal_expansion);
            const double zl = layup.z[static_cast<std::size_t>(layer)], zu = layup.z[static_cast<std::size_t>(layer) + 1];
            const double sg = layer == 1 ? 1.0 : -1.0;
            const double zig = 2 * sg * (zc - 0.5 * (zl + zu)) / (zu - zl);
            const double zig_slope = 2 * sg / (zu - zl);
            const double f[5] = {1, zc, zc * zc, zc * zc * zc, zig};
            const double g[4] = {1, zc, zc * zc, zig_slope};
            double q[4][4] = {};
            if (solid) {
                const double lam = e * nu / ((1 + nu) * (1 - 2 * nu)), mu = e / (2 * (1 + nu));
                for (int a = 0; a < 3; ++a) {
                    for (int b = 0; b < 3; ++b) q[a][b] = lam + (a == b ? 2 * mu : 0);
                }
            } else {
                q[0][0] = q[1][1] = e / (1 - nu * nu);
                q[0][1] = q[1][0] = nu * e / (1 - nu * nu);
            }
            q[3][3] = e / (2 * (1 + nu));
            switch (which) {
                case 0: return f[i] * f[j] * q[r][s];
                case 1: return r == s ? g[i] * g[j] * e / (2 * (1 + nu)) * kappa : 0.0;
                case 2: {
                    // u: {u0, z thx, z^2 bx, z^3 phx, S psx}; w: {w0, z w1, z^2 Gamma}
                    auto basis = [&](int dof, int comp) -> double {
                        static const int ux[5] = {0, 3, 6, 9, 11};
                        static const int vy[5] = {1, 4, 7, 10, 12};
                        static const int wz[3] = {2, 5, 8};
                        if (comp < 2) {
                            for (int t = 0; t < 5; ++t) {
                                if ((comp == 0 ? ux[t] : vy[t]) == dof) return f[t];
                            }
                            return 0.0;
                        }
                        for (int t = 0; t < 3; ++t) {
                            if (wz[t] == dof) return f[t];
                        }
                        return 0.0;
                    };
                    double sum = 0;
                    for (int comp = 0; comp < 3; ++comp) sum += basis(i, comp) * basis(j, comp);
                    return rho * sum;
                }
                default: return f[i] * (2 * zc / h) * alpha * (q[r][0] + q[r][1] + q[r][2]);
            }
        };
        // Entries that cancel to zero are measured against the integral of |integrand|.
        auto compare = [&](double got, int which, int i, int j, int r, int s, const char* label) {
            double want = 0, magnitude = 0;
            for (int layer = 0; layer < 3; ++layer) {
                const double zl = layup.z[static_cast<std::size_t>(layer)], zu = layup.z[static_cast<std::size_t>(layer) + 1];
                if (!(zu > zl)) continue;
                want += adaptive_simpson([&](double zc) { return entry(layer, zc, which, i, j, r, s); }, zl, zu, 1e-15);
                magnitude += adaptive_simpson([&](double zc) { return std::abs(entry(layer, zc, which, i, j, r, s)); },
                                              zl, zu, 1e-12);
            }
            if (magnitude == 0) {
                if (got != 0) {
                    worst = 1e300;
                    where = label;
                }
                return;
            }
            const double err = std::abs(got - want) / (std::abs(want) > 1e-6 * magnitude ? std::abs(want) : magnitude);
            if (err > worst) {
                worst = err;
                where = std::string(c.ratio) + " " + std::string(to_string(c.kind)) + " " + label;
            }
        };
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                for (int r = 0; r < 4; ++r) {
                    for (int s = 0; s < 4; ++s) compare(rig.membrane(4 * i + r, 4 * j + s), 0, i, j, r, s, "membrane");
                }
            }
            for (int r = 0; r < 4; ++r) compare(rig.thermal(4 * i + r), 3, i, 0, r, 0, "thermal");
        }
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                for (int r = 0; r < 2; ++r) {
                    for (int s = 0; s < 2; ++s) compare(rig.shear(2 * i + r, 2 * j + s), 1, i, j, r, s, "shear");
                }
            }
        }
        for (int i = 0; i < kGeneralizedDofs; ++i) {
            for (int j = 0; j < kGeneralizedDofs; ++j) compare(rig.inertia(i, j), 2, i, j, 0, 0, "inertia");
        }
    }
    return verdict(worst <= 1e-10, "rigidity deviation from adaptive Simpson (worst: " + where + ")", worst, 1e-10);
}

}  // namespace fgplate::checks
