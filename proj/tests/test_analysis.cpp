#include "doctest.h"

#include "checks.hpp"

#include "fgplate/errors.hpp"

#include <numbers>

using namespace fgplate;
using doctest::Approx;
using checks::make_plate;

TEST_CASE("zero load gives a zero solution")
{
    Problem p = make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT13, 10, 4);
    p.load.q0 = 0;
    const auto sol = solve_static(assemble(p));
    CHECK(sol.state.dofs.norm() == 0.0);
    const auto raw = evaluate_static(sol.state, EvaluationPoints{});
    CHECK(raw.w == 0.0);
    NondimensionalParams np;
    np.q0 = 0;
    const auto r = nondimensionalize_static(raw, Loading::Mechanical, np, p.layup.thickness());
    CHECK(r.w == 0.0);
    CHECK(r.sxx == 0.0);

    StaticValues bogus;
    bogus.w = 1e-3;
    CHECK_THROWS(nondimensionalize_static(bogus, Loading::Mechanical, np, p.layup.thickness()));
}

TEST_CASE("static solve residual")
{
    const auto sol = solve_static(assemble(make_plate(GradingType::TypeB, "2-2-1", 5, ModelKind::HSDT13, 5, 4)));
    CHECK(sol.relative_residual < 1e-10);
}

TEST_CASE("homogeneous plate: shear stress is parabolic with peak 1.5 times the mean")
{
    Problem p = make_plate(GradingType::TypeA, "1-1-1", 0, ModelKind::HSDT9, 20, 8);
    p.load = LoadCase::mechanical(1.0, LoadCase::Shape::Sinusoidal, LoadCase::Surface::Mid);
    const auto sol = solve_static(assemble(p));
    const auto rows = recover_transverse_shear(sol.state, 0.0, 0.5);
    double integral = 0, peak = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        integral += 0.5 * (rows[i].xz + rows[i - 1].xz) * (rows[i].z - rows[i - 1].z);
    }
    for (const auto& r : rows) peak = std::max(peak, std::abs(r.xz));
    const double mean = std::abs(integral) / p.layup.thickness();
    CHECK(peak / mean == Approx(1.5).epsilon(0.02));
}

TEST_CASE("symmetric section under a mid-surface load: u is odd in z")
{
    for (auto kind : {ModelKind::HSDT13, ModelKind::FSDT5}) {
        Problem p = make_plate(GradingType::TypeA, "1-2-1", 0, ModelKind::HSDT13, 5, 4);
        p.model = PlateModel::make(kind);
        p.load = LoadCase::mechanical(1.0, LoadCase::Shape::Sinusoidal, LoadCase::Surface::Mid);
        const auto sol = solve_static(assemble(p));
        const double h = p.layup.thickness();
        for (double z : {0.1, 0.3, 0.5}) {
            const double up = displacement_at(sol.state, 0, 0.5, z * h)[0];
            const double dn = displacement_at(sol.state, 0, 0.5, -z * h)[0];
            CHECK(up == Approx(-dn).epsilon(1e-9));
        }
        if (kind == ModelKind::FSDT5) {
            // first-order kinematics: u is linear in z
            const double u0 = displacement_at(sol.state, 0, 0.5, -0.5 * h)[0];
            const double u1 = displacement_at(sol.state, 0, 0.5, 0.1 * h)[0];
            const double u2 = displacement_at(sol.state, 0, 0.5, 0.5 * h)[0];
            CHECK((u1 - u0) / 0.6 == Approx((u2 - u0) / 1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("thickness-stretch mode shapes vary w through the thickness")
{
    const Problem p = make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT13, 5, 4);
    const auto modes = solve_modes(assemble(p), 1);
    const auto state = modes.mode(0);
    const double h = p.layup.thickness();
    // the section is symmetric, so the variation is even in z
    const double top = displacement_at(state, 0.5, 0.5, 0.5 * h)[2];
    const double mid = displacement_at(state, 0.5, 0.5, 0.0)[2];
    CHECK(std::abs(top - mid) > 1e-4 * std::abs(top));

    const Problem p9 = make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT9, 5, 4);
    const auto s9 = solve_modes(assemble(p9), 1).mode(0);
    CHECK(displacement_at(s9, 0.5, 0.5, 0.5 * h)[2] == Approx(displacement_at(s9, 0.5, 0.5, -0.5 * h)[2]));
}

TEST_CASE("frequency parameter")
{
    CHECK(frequency_parameter(0.0, 1.0, 0.1) == 0.0);
    CHECK(frequency_parameter(2.0, 1.0, 0.1, 1.0, 1e9) == Approx(2.0 * 10 * std::sqrt(1e-9)));
    const ModalSolution m = solve_modes(assemble(make_plate(GradingType::TypeA, "1-1-1", 1, ModelKind::HSDT13, 10, 2)), 2);
    CHECK(m.omega(0) == Approx(std::sqrt(m.eigenvalues[0])));
    CHECK(m.eigenvalues[0] <= m.eigenvalues[1]);
}

TEST_CASE("nondimensional factors")
{
    NondimensionalParams np;
    np.a_over_h = 10;
    np.q0 = 2;
    np.e_ref = 1e9;
    const double h = 0.1;
    CHECK(nondimensional_factor(Quantity::W, Loading::Mechanical, np, h) == Approx(100 * 1e9 / (2 * h * 1e4)));
    CHECK(nondimensional_factor(Quantity::U, Loading::Mechanical, np, h) == Approx(100 * 1e9 / (2 * h * 1e3)));
    CHECK(nondimensional_factor(Quantity::SigmaXX, Loading::Mechanical, np, h) == Approx(1.0 / (2 * 100)));
    CHECK(nondimensional_factor(Quantity::SigmaXZ, Loading::Mechanical, np, h) == Approx(1.0 / (2 * 10)));
    np.t0 = 3;
    CHECK(nondimensional_factor(Quantity::W, Loading::Thermal, np, h) == Approx(1 / (h * 23.4e-6 * 3 * 100)));
    CHECK(nondimensional_factor(Quantity::SigmaXY, Loading::Thermal, np, h) == Approx(1 / (70e9 * 23.4e-6 * 3)));
    np.stress_scale = 10;
    CHECK(nondimensional_factor(Quantity::SigmaXY, Loading::Thermal, np, h) == Approx(10 / (70e9 * 23.4e-6 * 3)));
    CHECK(parse_quantity(to_string(Quantity::SigmaYZ)) == Quantity::SigmaYZ);
}

TEST_CASE("through-thickness profiles duplicate interface coordinates")
{
    const Problem p = make_plate(GradingType::TypeA, "1-2-1", 1, ModelKind::HSDT13, 10, 4);
    const auto sol = solve_static(assemble(p));
    const auto rows = through_thickness_profile(sol.state, 0.25, 0.25, Quantity::SigmaXX, 5);
    REQUIRE(rows.size() == 15);
    CHECK(rows[4].z == Approx(rows[5].z));
    CHECK(rows[4].layer == 0);
    CHECK(rows[5].layer == 1);
    CHECK_THROWS_AS(displacement_at(sol.state, 1.5, 0.5, 0.0), DomainError);
}

TEST_CASE("solver properties")
{
    CHECK(checks::eigen_residual().ok);
    CHECK(checks::characteristic_polynomial_oracle().ok);
    CHECK(checks::load_scaling().ok);
    CHECK(checks::homogeneous_limit().ok);
    CHECK(checks::model_nesting().ok);
}

TEST_CASE("thin plates: all four theories agree on the fundamental frequency")
{
    for (auto g : {GradingType::TypeA, GradingType::TypeB}) {
        const double ref = checks::omega1(make_plate(g, "1-2-1", 1, ModelKind::HSDT13, 100, 8));
        for (auto kind : {ModelKind::HSDT11, ModelKind::HSDT9, ModelKind::FSDT5}) {
            CHECK(checks::omega1(make_plate(g, "1-2-1", 1, kind, 100, 8)) == Approx(ref).epsilon(5e-4));
        }
    }
}
