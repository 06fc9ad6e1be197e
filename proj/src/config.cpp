#include "fgplate/config.hpp"

#include "fgplate/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fgplate {

using nlohmann::json;

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Walks one JSON object, remembering which keys were consumed so leftovers can be rejected.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) fail("", "expected an object");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        throw ConfigError(field(key) + ": " + what);
    }

    std::string field(const std::string& key) const
    {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    const json* get(const std::string& key)
    {
        seen_.insert(key);
        const auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    double number(const std::string& key, double fallback)
    {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_number()) fail(key, "expected a number");
        return v->get<double>();
    }

    int integer(const std::string& key, int fallback)
    {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) fail(key, "expected an integer");
        return v->get<int>();
    }

    std::string text(const std::string& key, const std::string& fallback)
    {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_string()) fail(key, "expected a string");
        return v->get<std::string>();
    }

    template <typename T, typename Convert>
    std::vector<T> list(const std::string& key, std::vector<T> fallback, Convert&& convert)
    {
        const json* v = get(key);
        if (!v) return fallback;
        std::vector<T> out;
        if (v->is_array()) {
            if (v->empty()) fail(key, "list must not be empty");
            for (std::size_t i = 0; i < v->size(); ++i) out.push_back(convert((*v)[i], field(key) + "[" + std::to_string(i) + "]"));
        } else {
            out.push_back(convert(*v, field(key)));
        }
        return out;
    }

    std::optional<Section> child(const std::string& key)
    {
        const json* v = get(key);
        if (!v) return std::nullopt;
        return Section(*v, field(key));
    }

    void finish() const
    {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!seen_.count(it.key())) fail(it.key(), "unknown key");
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Fn>
auto guarded(const std::string& where, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

double as_number(const json& v, const std::string& where)
{
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

std::string as_text(const json& v, const std::string& where)
{
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

MaterialSpec read_material(const json& v, const std::string& where)
{
    MaterialSpec spec;
    if (v.is_string()) {
        spec.preset = v.get<std::string>();
        spec.properties = guarded(where, [&] { return material_preset(spec.preset); });
        return spec;
    }
    Section s(v, where);
    // "preset" names the base entry; explicit fields override it
    const std::string base = s.text("preset", "");
    spec.preset = base;
    if (!base.empty()) spec.properties = guarded(s.field("preset"), [&] { return material_preset(base); });
    auto& p = spec.properties;
    p.young_modulus = s.number("E", p.young_modulus);
    p.poisson_ratio = s.number("nu", p.poisson_ratio);
    p.density = s.number("rho", p.density);
    p.thermal_expansion = s.number("alpha", p.thermal_expansion);
    p.thermal_conductivity = s.number("kappa", p.thermal_conductivity);
    s.finish();
    guarded(where, [&] { p.validate(); });
    return spec;
}

json write_material(const MaterialSpec& spec, const PhaseMaterial& resolved)
{
    json m;
    if (!spec.preset.empty()) m["preset"] = spec.preset;
    m["E"] = resolved.young_modulus;
    m["nu"] = resolved.poisson_ratio;
    m["rho"] = resolved.density;
    m["alpha"] = resolved.thermal_expansion;
    m["kappa"] = resolved.thermal_conductivity;
    return m;
}

EvaluationPoint read_point(Section& parent, const std::string& key, EvaluationPoint fallback, bool allow_max)
{
    auto s = parent.child(key);
    if (!s) return fallback;
    EvaluationPoint p = fallback;
    p.x_over_a = s->number("x", p.x_over_a);
    p.y_over_b = s->number("y", p.y_over_b);
    if (const json* z = s->get("z")) {
        if (z->is_string() && allow_max && lower(z->get<std::string>()) == "max") {
            p.thickness_max = true;
        } else if (z->is_number()) {
            p.z_over_h = z->get<double>();
            p.thickness_max = false;
        } else {
            s->fail("z", allow_max ? "expected a number or \"max\"" : "expected a number");
        }
    }
    s->finish();
    if (p.x_over_a < 0 || p.x_over_a > 1 || p.y_over_b < 0 || p.y_over_b > 1) {
        s->fail("", "x and y are fractions of the plate sides and must lie in [0, 1]");
    }
    if (p.z_over_h < -0.5 || p.z_over_h > 0.5) s->fail("z", "z/h must lie in [-0.5, 0.5]");
    return p;
}

json write_point(const EvaluationPoint& p)
{
    json j{{"x", p.x_over_a}, {"y", p.y_over_b}};
    if (p.thickness_max) {
        j["z"] = "max";
    } else {
        j["z"] = p.z_over_h;
    }
    return j;
}

std::string load_type_name(LoadCase::Kind k)
{
    switch (k) {
        case LoadCase::Kind::Mechanical: return "mechanical";
        case LoadCase::Kind::Thermal: return "thermal";
        case LoadCase::Kind::None: return "none";
    }
    return "none";
}

std::string scheme_name(Homogenization s) { return s == Homogenization::MoriTanaka ? "mori_tanaka" : "rule_of_mixtures"; }

std::string grading_name(GradingType g)
{
    switch (g) {
        case GradingType::TypeA: return "A";
        case GradingType::TypeB: return "B";
        case GradingType::Monolithic: return "monolithic";
    }
    return "A";
}

}  // namespace

std::string_view to_string(AnalysisKind kind)
{
    switch (kind) {
        case AnalysisKind::Static: return "static";
        case AnalysisKind::Modal: return "modal";
        case AnalysisKind::Convergence: return "convergence";
        case AnalysisKind::Profile: return "profile";
    }
    return "?";
}

AnalysisKind parse_analysis_kind(std::string_view text)
{
    const auto t = lower(text);
    if (t == "static") return AnalysisKind::Static;
    if (t == "modal") return AnalysisKind::Modal;
    if (t == "convergence" || t == "converge") return AnalysisKind::Convergence;
    if (t == "profile") return AnalysisKind::Profile;
    throw InvalidParameter("unknown analysis '" + std::string(text) + "'");
}

PhaseMaterial AnalysisConfig::ceramic_material() const
{
    return ceramic.properties;
}

PhaseMaterial AnalysisConfig::metal_material() const
{
    return metal.properties;
}

std::array<double, 4> ratio_interfaces(const std::string& label, double h)
{
    const auto parts = parse_ratio_label(label);
    const double total = parts[0] + parts[1] + parts[2];
    std::array<double, 4> z{};
    z[0] = -0.5 * h;
    z[1] = z[0] + h * parts[0] / total;
    z[2] = z[1] + h * parts[1] / total;
    z[3] = 0.5 * h;
    return z;
}

AnalysisConfig config_from_json(const json& doc)
{
    AnalysisConfig c;
    c.ceramic.properties = material_preset("alumina");
    c.metal.properties = material_preset("aluminum");

    Section root(doc, "");
    c.name = root.text("name", c.name);
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
        root.fail("name", "must be a non-empty file-name-safe string");
    }
    c.analysis = guarded(root.field("analysis"), [&] { return parse_analysis_kind(root.text("analysis", "modal")); });

    if (auto s = root.child("layup")) {
        c.grading = guarded(s->field("type"), [&] { return parse_grading_type(s->text("type", "A")); });
        c.ratios = s->list<std::string>("ratio", c.ratios, [](const json& v, const std::string& where) {
            const auto label = as_text(v, where);
            guarded(where, [&] { parse_ratio_label(label); });
            return label;
        });
        c.gradient_indices = s->list<double>("n", c.gradient_indices, [](const json& v, const std::string& where) {
            const double n = as_number(v, where);
            if (!(n >= 0)) throw ConfigError(where + ": invalid parameter, gradient index must be >= 0");
            return n;
        });
        c.ceramic_bottom = s->number("ceramic_bottom", c.ceramic_bottom);
        c.ceramic_top = s->number("ceramic_top", c.ceramic_top);
        s->finish();
        for (double v : {c.ceramic_bottom, c.ceramic_top}) {
            if (!(v >= 0 && v <= 1)) s->fail("", "surface ceramic fractions must lie in [0, 1]");
        }
    }

    if (auto s = root.child("materials")) {
        if (const json* v = s->get("ceramic")) c.ceramic = read_material(*v, s->field("ceramic"));
        if (const json* v = s->get("metal")) c.metal = read_material(*v, s->field("metal"));
        s->finish();
    }
    c.scheme = guarded(root.field("scheme"), [&] { return parse_homogenization(root.text("scheme", "rule_of_mixtures")); });

    c.models = root.list<ModelKind>("model", c.models, [](const json& v, const std::string& where) {
        const auto t = as_text(v, where);
        return guarded(where, [&] { return parse_model_kind(t); });
    });
    if (const json* v = root.get("fsdt_shear_correction")) {
        if (v->is_string() && lower(v->get<std::string>()) == "energy") {
            c.fsdt_shear = {ShearCorrection::Policy::EnergyEquivalence, 1.0};
        } else if (v->is_number() && v->get<double>() > 0) {
            c.fsdt_shear = {ShearCorrection::Policy::Constant, v->get<double>()};
        } else {
            root.fail("fsdt_shear_correction", "expected a positive number or \"energy\"");
        }
    }
    {
        const auto t = lower(root.text("shear_interpolation", "field_consistent"));
        if (t == "field_consistent") {
            c.shear_interpolation = ShearInterpolation::FieldConsistent;
        } else if (t == "conventional") {
            c.shear_interpolation = ShearInterpolation::Conventional;
        } else {
            root.fail("shear_interpolation", "expected \"field_consistent\" or \"conventional\"");
        }
    }

    if (auto s = root.child("plate")) {
        c.a = s->number("a", c.a);
        c.b = s->number("b", c.b);
        c.a_over_h = s->list<double>("a_over_h", c.a_over_h, [](const json& v, const std::string& where) {
            const double r = as_number(v, where);
            if (!(r > 0)) throw ConfigError(where + ": invalid parameter, a/h must be positive");
            return r;
        });
        s->finish();
        if (!(c.a > 0 && c.b > 0)) s->fail("", "plate sides must be positive");
    }

    if (auto s = root.child("mesh")) {
        c.nx = s->integer("nx", c.nx);
        c.ny = s->integer("ny", c.ny);
        c.mesh_sequence = s->list<int>("sequence", c.mesh_sequence, [](const json& v, const std::string& where) {
            if (!v.is_number_integer() || v.get<int>() < 1) throw ConfigError(where + ": expected a positive integer");
            return v.get<int>();
        });
        s->finish();
        if (c.nx < 1 || c.ny < 1) s->fail("", "element counts must be >= 1");
    }

    if (auto s = root.child("load")) {
        const auto type = lower(s->text("type", "mechanical"));
        const double q0 = s->number("q0", 1.0);
        const double t0 = s->number("t0", 1.0);
        const auto shape = lower(s->text("shape", "sinusoidal"));
        const auto surface = lower(s->text("surface", "top"));
        s->finish();
        LoadCase::Shape sh{};
        if (shape == "sinusoidal") {
            sh = LoadCase::Shape::Sinusoidal;
        } else if (shape == "uniform") {
            sh = LoadCase::Shape::Uniform;
        } else {
            s->fail("shape", "expected \"sinusoidal\" or \"uniform\"");
        }
        LoadCase::Surface sf{};
        if (surface == "top") {
            sf = LoadCase::Surface::Top;
        } else if (surface == "mid") {
            sf = LoadCase::Surface::Mid;
        } else {
            s->fail("surface", "expected \"top\" or \"mid\"");
        }
        if (type == "mechanical") {
            c.load = LoadCase::mechanical(q0, sh, sf);
        } else if (type == "thermal") {
            c.load = LoadCase::thermal(t0);
        } else if (type == "none") {
            c.load = LoadCase{};
        } else {
            s->fail("type", "expected \"mechanical\", \"thermal\" or \"none\"");
        }
    }

    c.mode_count = root.integer("modes", c.mode_count);
    if (c.mode_count < 1) root.fail("modes", "must be >= 1");

    if (auto s = root.child("evaluation")) {
        c.points.u = read_point(*s, "u", c.points.u, false);
        c.points.w = read_point(*s, "w", c.points.w, false);
        c.points.sxx = read_point(*s, "sxx", c.points.sxx, false);
        c.points.sxy = read_point(*s, "sxy", c.points.sxy, false);
        c.points.sxz = read_point(*s, "sxz", c.points.sxz, true);
        s->finish();
    }

    if (auto s = root.child("nondimensional")) {
        c.e_ref = s->number("e_ref", c.e_ref);
        c.rho_ref = s->number("rho_ref", c.rho_ref);
        c.displacement_scale = s->number("displacement_scale", c.displacement_scale);
        c.stress_scale = s->number("stress_scale", c.stress_scale);
        s->finish();
        if (!(c.e_ref > 0 && c.rho_ref > 0)) s->fail("", "reference values must be positive");
    }

    if (auto s = root.child("profile")) {
        c.profile.x_over_a = s->number("x", c.profile.x_over_a);
        c.profile.y_over_b = s->number("y", c.profile.y_over_b);
        c.profile.quantities = s->list<Quantity>("quantities", c.profile.quantities,
                                                 [](const json& v, const std::string& where) {
                                                     const auto t = as_text(v, where);
                                                     return guarded(where, [&] { return parse_quantity(t); });
                                                 });
        c.profile.samples_per_layer = s->integer("samples_per_layer", c.profile.samples_per_layer);
        c.profile.mode = s->integer("mode", c.profile.mode);
        s->finish();
        if (c.profile.samples_per_layer < 2) s->fail("samples_per_layer", "must be >= 2");
        if (c.profile.mode < 0) s->fail("mode", "must be >= 0");
        if (c.profile.x_over_a < 0 || c.profile.x_over_a > 1 || c.profile.y_over_b < 0 || c.profile.y_over_b > 1) {
            s->fail("", "x and y are fractions of the plate sides and must lie in [0, 1]");
        }
    }

    if (auto s = root.child("quadrature")) {
        c.thickness_points = s->integer("thickness_points", c.thickness_points);
        c.inplane_order = s->integer("inplane_order", c.inplane_order);
        s->finish();
        if (c.thickness_points < 1 || c.inplane_order < 1) s->fail("", "quadrature orders must be >= 1");
    }
    c.threads = root.integer("threads", c.threads);
    if (c.threads < 1) root.fail("threads", "must be >= 1");
    root.finish();
    return c;
}

json to_json(const AnalysisConfig& c)
{
    json j;
    j["name"] = c.name;
    j["analysis"] = std::string(to_string(c.analysis));
    j["layup"] = {{"type", grading_name(c.grading)},
                  {"ratio", c.ratios},
                  {"n", c.gradient_indices},
                  {"ceramic_bottom", c.ceramic_bottom},
                  {"ceramic_top", c.ceramic_top}};
    j["materials"] = {{"ceramic", write_material(c.ceramic, c.ceramic.properties)},
                      {"metal", write_material(c.metal, c.metal.properties)}};
    j["scheme"] = scheme_name(c.scheme);
    json models = json::array();
    for (auto m : c.models) models.push_back(std::string(to_string(m)));
    j["model"] = models;
    if (c.fsdt_shear.policy == ShearCorrection::Policy::EnergyEquivalence) {
        j["fsdt_shear_correction"] = "energy";
    } else {
        j["fsdt_shear_correction"] = c.fsdt_shear.value;
    }
    j["shear_interpolation"] =
        c.shear_interpolation == ShearInterpolation::FieldConsistent ? "field_consistent" : "conventional";
    j["plate"] = {{"a", c.a}, {"b", c.b}, {"a_over_h", c.a_over_h}};
    j["mesh"] = {{"nx", c.nx}, {"ny", c.ny}, {"sequence", c.mesh_sequence}};
    j["load"] = {{"type", load_type_name(c.load.kind)},
                 {"q0", c.load.kind == LoadCase::Kind::Mechanical ? c.load.q0 : 1.0},
                 {"t0", c.load.kind == LoadCase::Kind::Thermal ? c.load.t0 : 1.0},
                 {"shape", c.load.shape == LoadCase::Shape::Uniform ? "uniform" : "sinusoidal"},
                 {"surface", c.load.surface == LoadCase::Surface::Mid ? "mid" : "top"}};
    j["modes"] = c.mode_count;
    j["evaluation"] = {{"u", write_point(c.points.u)},
                       {"w", write_point(c.points.w)},
                       {"sxx", write_point(c.points.sxx)},
                       {"sxy", write_point(c.points.sxy)},
                       {"sxz", write_point(c.points.sxz)}};
    j["nondimensional"] = {{"e_ref", c.e_ref},
                           {"rho_ref", c.rho_ref},
                           {"displacement_scale", c.displacement_scale},
                           {"stress_scale", c.stress_scale}};
    json quantities = json::array();
    for (auto q : c.profile.quantities) quantities.push_back(std::string(to_string(q)));
    j["profile"] = {{"x", c.profile.x_over_a},
                    {"y", c.profile.y_over_b},
                    {"quantities", quantities},
                    {"samples_per_layer", c.profile.samples_per_layer},
                    {"mode", c.profile.mode}};
    j["quadrature"] = {{"thickness_points", c.thickness_points}, {"inplane_order", c.inplane_order}};
    j["threads"] = c.threads;
    return j;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string textual = buffer.str();
    try {
        return json::parse(textual);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line/column for the diagnostic.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < textual.size(); ++i) {
            if (textual[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << path.string() << ":" << line << ":" << col << ": malformed JSON (" << e.what() << ")";
        throw ConfigError(msg.str());
    }
}

AnalysisConfig parse_config(const std::filesystem::path& path)
{
    const json doc = read_json_file(path);
    try {
        return config_from_json(doc);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
        if (!node->is_object()) {
            if (!node->is_null()) throw ConfigError("override key '" + key + "' descends into a non-object");
            *node = json::object();
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

}  // namespace fgplate
