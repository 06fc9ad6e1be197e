#include "fgplate/runner.hpp"

#include "fgplate/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace fgplate {

using nlohmann::json;

std::string CaseSpec::label() const
{
    std::ostringstream s;
    s << "ratio=" << ratio << " n=" << format_key(n) << " model=" << to_string(model)
      << " a/h=" << format_key(a_over_h) << " mesh=" << nx << "x" << ny;
    return s.str();
}

namespace {

// Runs fn(i) for i in [0, count) on up to `threads` workers; results land by index, so
// output order never depends on completion order.
template <typename T, typename Fn>
std::vector<T> parallel_map(int count, int threads, Fn&& fn)
{
    std::vector<T> out(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                out[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min(threads, count));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

template <typename Fn>
auto with_case(const CaseSpec& spec, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw CaseFailure(spec.label() + ": " + e.what());
    }
}

std::string point_text(const EvaluationPoint& p)
{
    std::ostringstream s;
    s << "(" << format_key(p.x_over_a) << "a," << format_key(p.y_over_b) << "b,";
    if (p.thickness_max) {
        s << "max";
    } else {
        s << format_key(p.z_over_h) << "h";
    }
    s << ")";
    return s.str();
}

std::string evaluation_text(const EvaluationPoints& p)
{
    return "u" + point_text(p.u) + " w" + point_text(p.w) + " sxx" + point_text(p.sxx) + " sxy" + point_text(p.sxy) +
           " sxz" + point_text(p.sxz);
}

std::string load_text(const LoadCase& load)
{
    switch (load.kind) {
        case LoadCase::Kind::Mechanical: return "mechanical";
        case LoadCase::Kind::Thermal: return "thermal";
        case LoadCase::Kind::None: return "none";
    }
    return "none";
}

const std::vector<std::string> kCaseColumns{"grading", "ratio", "n", "model", "a_over_h", "mesh", "scheme"};

std::vector<std::string> case_keys(const AnalysisConfig& c, const CaseSpec& s)
{
    return {std::string(to_string(c.grading)),
            s.ratio,
            format_key(s.n),
            std::string(to_string(s.model)),
            format_key(s.a_over_h),
            std::to_string(s.nx) + "x" + std::to_string(s.ny),
            std::string(to_string(c.scheme))};
}

ResultTable empty_table(const AnalysisConfig& c, std::vector<std::string> extra_keys, std::vector<std::string> values)
{
    ResultTable t;
    t.name = c.name;
    t.analysis = std::string(to_string(c.analysis));
    t.key_columns = kCaseColumns;
    t.key_columns.insert(t.key_columns.end(), extra_keys.begin(), extra_keys.end());
    t.value_columns = std::move(values);
    t.provenance = provenance(c);
    return t;
}

std::vector<std::string> omega_columns(int m)
{
    std::vector<std::string> cols;
    for (int i = 1; i <= m; ++i) cols.push_back("Omega_" + std::to_string(i));
    return cols;
}

std::vector<double> omegas(const AnalysisConfig& c, const Problem& p, const ModalSolution& modes)
{
    std::vector<double> out;
    for (int i = 0; i < modes.count(); ++i) {
        out.push_back(frequency_parameter(modes.omega(i), p.mesh.a, p.layup.thickness(), c.rho_ref, c.e_ref));
    }
    return out;
}

ModalSolution modal_solve(const AnalysisConfig& c, const Problem& p)
{
    Problem q = p;
    q.load = LoadCase{};
    return solve_modes(assemble(q), c.mode_count);
}

NondimensionalParams nondim_params(const AnalysisConfig& c, const CaseSpec& s)
{
    NondimensionalParams np;
    np.a_over_h = s.a_over_h;
    np.q0 = c.load.q0;
    np.t0 = c.load.t0;
    np.e_ref = c.e_ref;
    np.e_metal = c.metal_material().young_modulus;
    np.alpha_metal = c.metal_material().thermal_expansion;
    np.displacement_scale = c.displacement_scale;
    np.stress_scale = c.stress_scale;
    return np;
}

// Mode shapes are scaled so the largest nodal mid-plane displacement is +1.
FieldState unit_mode(FieldState state)
{
    const int per = state.problem->model.dofs_per_node();
    double peak = 0;
    for (Eigen::Index i = 0; i < state.dofs.size(); ++i) {
        if (i % per < 3 && std::abs(state.dofs[i]) > std::abs(peak)) peak = state.dofs[i];
    }
    if (peak != 0) state.dofs /= peak;
    return state;
}

}  // namespace

std::vector<CaseSpec> expand_cases(const AnalysisConfig& c)
{
    std::vector<CaseSpec> out;
    for (const auto& ratio : c.ratios) {
        for (double n : c.gradient_indices) {
            for (auto model : c.models) {
                for (double s : c.a_over_h) out.push_back({ratio, n, model, s, c.nx, c.ny});
            }
        }
    }
    return out;
}

Problem build_problem(const AnalysisConfig& c, const CaseSpec& s)
{
    if (!(s.a_over_h > 0)) throw InvalidParameter("a/h must be positive");
    Problem p;
    p.mesh = build_mesh(c.a, c.b, s.nx, s.ny);
    p.model = PlateModel::make(s.model);
    if (s.model == ModelKind::FSDT5) p.model.shear = c.fsdt_shear;
    p.model.shear_strain = c.shear_interpolation;
    p.layup = SandwichLayup::from_ratio(s.ratio, c.a / s.a_over_h, c.grading, s.n, c.ceramic_material(),
                                        c.metal_material());
    p.layup.ceramic_bottom = c.ceramic_bottom;
    p.layup.ceramic_top = c.ceramic_top;
    p.layup.validate();
    p.scheme = c.scheme;
    p.quadrature.points_per_layer = c.thickness_points;
    p.inplane_order = c.inplane_order;
    p.load = c.load;
    return p;
}

json provenance(const AnalysisConfig& c)
{
    const json cfg = to_json(c);
    json forms = json::object();
    for (auto m : c.models) {
        forms[std::string(to_string(m))] = PlateModel::make(m).constitutive_form() == ConstitutiveForm::ThreeDimensional
                                               ? "three_dimensional"
                                               : "plane_stress";
    }
    return {{"tool", kToolVersion},
            {"config_hash", hex64(fnv1a64(cfg.dump()))},
            {"quadrature",
             {{"thickness_points_per_layer", c.thickness_points},
              {"inplane_order", c.inplane_order},
              {"shear_interpolation", cfg["shear_interpolation"]},
              {"shear_recovery", "3x3 Gauss samples, bilinear least-squares fit, 8-point Gauss in z"}}},
            {"evaluation_points", evaluation_text(c.points)},
            {"load", load_text(c.load)},
            {"constitutive", forms},
            {"fsdt_shear_correction", cfg["fsdt_shear_correction"]},
            {"ceramic_alpha", c.ceramic_material().thermal_expansion},
            {"config", cfg}};
}

ResultTable run_static(const AnalysisConfig& c)
{
    if (c.load.kind == LoadCase::Kind::None) throw ConfigError("load.type: static analysis needs a load");
    auto t = empty_table(c, {"load", "eval"}, {"u", "w", "sxx", "sxy", "sxz", "sxz_z_over_h"});
    const auto cases = expand_cases(c);
    const auto loading = c.load.kind == LoadCase::Kind::Thermal ? Loading::Thermal : Loading::Mechanical;
    t.rows = parallel_map<ResultRow>(static_cast<int>(cases.size()), c.threads, [&](int i) {
        const auto& s = cases[static_cast<std::size_t>(i)];
        return with_case(s, [&] {
            const Problem p = build_problem(c, s);
            const auto sol = solve_static(assemble(p));
            const auto raw = evaluate_static(sol.state, c.points);
            const double h = p.layup.thickness();
            const auto nd = nondimensionalize_static(raw, loading, nondim_params(c, s), h);
            ResultRow row;
            row.keys = case_keys(c, s);
            row.keys.push_back(load_text(c.load));
            row.keys.push_back(evaluation_text(c.points));
            row.values = {nd.u, nd.w, nd.sxx, nd.sxy, nd.sxz, raw.sxz_z / h};
            return row;
        });
    });
    return t;
}

ResultTable run_modal(const AnalysisConfig& c)
{
    auto t = empty_table(c, {}, omega_columns(c.mode_count));
    const auto cases = expand_cases(c);
    t.rows = parallel_map<ResultRow>(static_cast<int>(cases.size()), c.threads, [&](int i) {
        const auto& s = cases[static_cast<std::size_t>(i)];
        return with_case(s, [&] {
            const Problem p = build_problem(c, s);
            ResultRow row;
            row.keys = case_keys(c, s);
            row.values = omegas(c, p, modal_solve(c, p));
            return row;
        });
    });
    return t;
}

ResultTable run_convergence(const AnalysisConfig& c)
{
    auto cols = omega_columns(c.mode_count);
    cols.push_back("delta_Omega_1");
    auto t = empty_table(c, {"flag"}, cols);
    std::vector<CaseSpec> cells;
    for (const auto& base : expand_cases(c)) {
        for (int m : c.mesh_sequence) {
            CaseSpec s = base;
            s.nx = s.ny = m;
            cells.push_back(s);
        }
    }
    auto rows = parallel_map<ResultRow>(static_cast<int>(cells.size()), c.threads, [&](int i) {
        const auto& s = cells[static_cast<std::size_t>(i)];
        return with_case(s, [&] {
            const Problem p = build_problem(c, s);
            ResultRow row;
            row.keys = case_keys(c, s);
            row.keys.push_back("");
            row.values = omegas(c, p, modal_solve(c, p));
            row.values.push_back(0.0);
            return row;
        });
    });
    // Flags: the sequence should decrease with shrinking steps as the mesh is refined.
    const std::size_t per = c.mesh_sequence.size();
    const std::size_t delta = static_cast<std::size_t>(c.mode_count);
    for (std::size_t g = 0; g < rows.size(); g += per) {
        for (std::size_t k = 1; k < per; ++k) {
            auto& cur = rows[g + k];
            const double d = cur.values[0] - rows[g + k - 1].values[0];
            cur.values[delta] = d;
            std::string flag;
            if (d > 1e-12) flag = "non-monotone";
            if (k >= 2 && std::abs(d) > std::abs(rows[g + k - 1].values[delta]) + 1e-12) {
                flag = flag.empty() ? "non-contracting" : flag + ";non-contracting";
            }
            cur.keys.back() = flag;
        }
    }
    t.rows = std::move(rows);
    return t;
}

ProfileOutput run_profile(const AnalysisConfig& c)
{
    const bool modal = c.profile.mode > 0;
    if (!modal && c.load.kind == LoadCase::Kind::None) {
        throw ConfigError("profile.mode: a static profile needs a load (or choose mode >= 1)");
    }
    ProfileOutput out;
    out.summary = empty_table(c, {"source", "point"}, {"layers", "samples"});
    const auto cases = expand_cases(c);
    using CaseProfiles = std::vector<std::vector<ProfileRow>>;
    const auto all = parallel_map<CaseProfiles>(static_cast<int>(cases.size()), c.threads, [&](int i) {
        const auto& s = cases[static_cast<std::size_t>(i)];
        return with_case(s, [&] {
            Problem p = build_problem(c, s);
            FieldState state;
            if (modal) {
                AnalysisConfig mc = c;
                mc.mode_count = std::max(c.mode_count, c.profile.mode);
                const auto modes = modal_solve(mc, p);
                state = unit_mode(modes.mode(c.profile.mode - 1));
            } else {
                state = solve_static(assemble(p)).state;
            }
            const auto loading = c.load.kind == LoadCase::Kind::Thermal ? Loading::Thermal : Loading::Mechanical;
            CaseProfiles profiles;
            for (auto q : c.profile.quantities) {
                auto rows = through_thickness_profile(state, c.profile.x_over_a * c.a, c.profile.y_over_b * c.b, q,
                                                      c.profile.samples_per_layer);
                if (!modal) {
                    const double f = nondimensional_factor(q, loading, nondim_params(c, s), p.layup.thickness());
                    for (auto& r : rows) r.value *= f;
                }
                profiles.push_back(std::move(rows));
            }
            return profiles;
        });
    });

    const std::string source = modal ? "mode " + std::to_string(c.profile.mode) : load_text(c.load);
    const std::string point = "(" + format_key(c.profile.x_over_a) + "a," + format_key(c.profile.y_over_b) + "b)";
    for (std::size_t qi = 0; qi < c.profile.quantities.size(); ++qi) {
        auto t = empty_table(c, {"source", "point", "layer"}, {"z_over_h", "value"});
        t.analysis = "profile";
        for (std::size_t ci = 0; ci < cases.size(); ++ci) {
            const double h = c.a / cases[ci].a_over_h;
            for (const auto& r : all[ci][qi]) {
                ResultRow row;
                row.keys = case_keys(c, cases[ci]);
                row.keys.insert(row.keys.end(), {source, point, std::to_string(r.layer)});
                row.values = {r.z / h, r.value};
                t.rows.push_back(std::move(row));
            }
        }
        out.data.emplace_back(c.profile.quantities[qi], std::move(t));
    }
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        ResultRow row;
        row.keys = case_keys(c, cases[ci]);
        row.keys.insert(row.keys.end(), {source, point});
        row.values = {3.0, static_cast<double>(c.profile.samples_per_layer)};
        out.summary.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace fgplate
