#include "kpw/runner.hpp"

#include "kpw/simd/kernels.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kpw {

using nlohmann::json;

namespace {

std::atomic<int> g_max_threads{1};

double parse_extended(const json& v, const char* field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "Inf"))
        return kInf;
    throw ConfigError(std::string("field '") + field + "' must be a number or \"inf\"");
}

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw ConfigError(std::string("unknown key '") + it.key() + "' in " + where);
    }
}

Command parse_command(const std::string& s) {
    if (s == "verify") return Command::Verify;
    if (s == "sweep") return Command::Sweep;
    if (s == "counterexample") return Command::Counterexample;
    if (s == "kernel") return Command::Kernel;
    if (s == "suite") return Command::Suite;
    throw ConfigError("unknown command '" + s + "'");
}

TheoremId parse_theorem(const std::string& s) {
    if (s == "main1") return TheoremId::Main1;
    if (s == "main_comm1") return TheoremId::MainComm1;
    if (s == "main_comm2") return TheoremId::MainComm2;
    if (s == "main2") return TheoremId::Main2;
    if (s == "main3") return TheoremId::Main3;
    throw ConfigError("unknown theorem '" + s + "'");
}

FamilyKind parse_family_kind(const std::string& s) {
    if (s == "modulated") return FamilyKind::Modulated;
    if (s == "dilated") return FamilyKind::Dilated;
    if (s == "psi_squared") return FamilyKind::PsiSquared;
    throw ConfigError("unknown family kind '" + s + "'");
}

template <typename T>
T get_typed(const json& obj, const char* key, const char* type_name) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' must be a " + type_name);
    }
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void set_max_threads(int t) { g_max_threads.store(t < 1 ? 1 : t); }
int max_threads() { return g_max_threads.load(); }

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    require_keys(j, "config root",
                 {"command", "seed", "grid", "theorem", "s", "s_ddot", "exponents", "family",
                  "weight", "criteria", "kernel", "tolerances", "output_prefix", "threads"});

    RunConfig c;
    if (!j.contains("command")) throw ConfigError("missing required field 'command'");
    c.command = parse_command(get_typed<std::string>(j, "command", "string"));

    if (j.contains("seed")) c.seed = get_typed<std::uint64_t>(j, "seed", "nonnegative integer");
    if (j.contains("threads")) c.threads = get_typed<int>(j, "threads", "integer");
    if (j.contains("output_prefix"))
        c.output_prefix = get_typed<std::string>(j, "output_prefix", "string");

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (!g.is_object()) throw ConfigError("'grid' must be an object");
        require_keys(g, "grid", {"dim", "length", "points"});
        const int dim = get_typed<int>(g, "dim", "integer");
        const double L = get_typed<double>(g, "length", "number");
        const int N = get_typed<int>(g, "points", "integer");
        // value-level problems are module preconditions (exit 3), not schema errors
        c.grid = Grid(dim, L, N);
    }

    if (j.contains("theorem"))
        c.theorem = parse_theorem(get_typed<std::string>(j, "theorem", "string"));
    if (j.contains("s")) c.s = get_typed<double>(j, "s", "number");
    if (j.contains("s_ddot")) {
        c.s_ddot = get_typed<double>(j, "s_ddot", "number");
        c.has_s_ddot = true;
    }

    if (j.contains("exponents")) {
        const json& e = j.at("exponents");
        if (!e.is_object()) throw ConfigError("'exponents' must be an object");
        require_keys(e, "exponents", {"p1", "p2", "a1", "a2"});
        const double p1 = e.contains("p1") ? parse_extended(e.at("p1"), "p1") : 2.0;
        const double p2 = e.contains("p2") ? parse_extended(e.at("p2"), "p2") : 2.0;
        const double a1 = e.contains("a1") ? get_typed<double>(e, "a1", "number") : 0.0;
        const double a2 = e.contains("a2") ? get_typed<double>(e, "a2", "number") : 0.0;
        try {
            c.exponents = holder_exponents(p1, p2, a1, a2);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("exponents: ") + ex.what());
        }
    }

    if (j.contains("family")) {
        const json& f = j.at("family");
        if (!f.is_object()) throw ConfigError("'family' must be an object");
        require_keys(f, "family", {"kind", "params", "base_profile"});
        if (f.contains("kind"))
            c.family.kind = parse_family_kind(get_typed<std::string>(f, "kind", "string"));
        if (f.contains("params")) {
            if (!f.at("params").is_array()) throw ConfigError("family.params must be an array");
            c.family.params.clear();
            for (const json& v : f.at("params")) {
                if (!v.is_number()) throw ConfigError("family.params entries must be numbers");
                c.family.params.push_back(v.get<double>());
            }
        }
        if (f.contains("base_profile")) {
            const std::string b = get_typed<std::string>(f, "base_profile", "string");
            if (b == "phi_hat") c.family.base_profile = BaseProfile::PhiHat;
            else if (b == "psi_hat") c.family.base_profile = BaseProfile::PsiHat;
            else throw ConfigError("family.base_profile must be phi_hat or psi_hat");
        }
    }

    if (j.contains("weight")) {
        const json& w = j.at("weight");
        require_keys(w, "weight", {"kind"});
        const std::string k = get_typed<std::string>(w, "kind", "string");
        if (k == "polynomial") c.weight = WeightKind::Polynomial;
        else if (k == "homogeneous") c.weight = WeightKind::Homogeneous;
        else throw ConfigError("weight.kind must be polynomial or homogeneous");
    }

    if (j.contains("criteria")) {
        if (!j.at("criteria").is_array()) throw ConfigError("'criteria' must be an array");
        for (const json& v : j.at("criteria")) {
            if (!v.is_string()) throw ConfigError("criteria entries must be strings");
            c.criteria.push_back(v.get<std::string>());
        }
    }

    if (j.contains("kernel")) {
        const json& k = j.at("kernel");
        require_keys(k, "kernel", {"s", "n", "deltas", "radii"});
        if (k.contains("s")) c.kernel.s = get_typed<double>(k, "s", "number");
        if (k.contains("n")) c.kernel.n = get_typed<int>(k, "n", "integer");
        auto number_list = [](const json& arr, const char* name) {
            if (!arr.is_array()) throw ConfigError(std::string(name) + " must be an array");
            std::vector<double> out;
            for (const json& v : arr) {
                if (!v.is_number())
                    throw ConfigError(std::string(name) + " entries must be numbers");
                out.push_back(v.get<double>());
            }
            return out;
        };
        if (k.contains("deltas")) c.kernel.deltas = number_list(k.at("deltas"), "kernel.deltas");
        if (k.contains("radii")) c.kernel.radii = number_list(k.at("radii"), "kernel.radii");
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        require_keys(t, "tolerances",
                     {"bounded_slope", "bounded_ratio_cap", "growth_min", "rhs_spread"});
        if (t.contains("bounded_slope"))
            c.tol_bounded_slope = get_typed<double>(t, "bounded_slope", "number");
        if (t.contains("bounded_ratio_cap"))
            c.tol_bounded_ratio_cap = get_typed<double>(t, "bounded_ratio_cap", "number");
        if (t.contains("growth_min"))
            c.tol_growth_min = get_typed<double>(t, "growth_min", "number");
        if (t.contains("rhs_spread"))
            c.tol_rhs_spread = get_typed<double>(t, "rhs_spread", "number");
    }
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

namespace {

json extended_json(double v) {
    if (v == kInf) return json("inf");
    return json(v);
}

json config_echo(const RunConfig& c) {
    json j;
    switch (c.command) {
    case Command::Verify: j["command"] = "verify"; break;
    case Command::Sweep: j["command"] = "sweep"; break;
    case Command::Counterexample: j["command"] = "counterexample"; break;
    case Command::Kernel: j["command"] = "kernel"; break;
    case Command::Suite: j["command"] = "suite"; break;
    }
    j["seed"] = c.seed;
    j["grid"] = {{"dim", c.grid.dim}, {"length", c.grid.length},
                 {"points", c.grid.points_per_axis}};
    j["theorem"] = theorem_name(c.theorem);
    j["s"] = c.s;
    if (c.has_s_ddot) j["s_ddot"] = c.s_ddot;
    j["exponents"] = {{"p1", extended_json(c.exponents.p1)},
                      {"p2", extended_json(c.exponents.p2)},
                      {"a1", c.exponents.a1},
                      {"a2", c.exponents.a2}};
    const char* fk = c.family.kind == FamilyKind::Modulated    ? "modulated"
                     : c.family.kind == FamilyKind::Dilated    ? "dilated"
                                                               : "psi_squared";
    j["family"] = {{"kind", fk},
                   {"params", c.family.params},
                   {"base_profile",
                    c.family.base_profile == BaseProfile::PhiHat ? "phi_hat" : "psi_hat"}};
    j["weight"] = {{"kind", c.weight == WeightKind::Polynomial ? "polynomial" : "homogeneous"}};
    if (!c.criteria.empty()) j["criteria"] = c.criteria;
    return j;
}

std::string sweep_csv(const std::vector<InequalityReport>& rows) {
    std::string out = "family_param,lhs,rhs,ratio\n";
    for (const auto& r : rows) {
        out += format_double(r.family_param);
        out += ',';
        out += format_double(r.lhs);
        out += ',';
        out += format_double(r.rhs);
        out += ',';
        out += format_double(r.ratio);
        out += '\n';
    }
    return out;
}

void add_rule(RunReport& rep, const std::string& name, double measured, double threshold,
              bool pass) {
    rep.rules.push_back({name, measured, threshold, pass});
    if (!pass) rep.all_pass = false;
}

void counterexample_rules(RunReport& rep, const RunConfig& c) {
    const SharpnessClass cls = sharpness_classify(c.s, c.exponents.p, c.grid.dim);
    const SweepResult& sw = rep.sweep;
    switch (cls) {
    case SharpnessClass::BoundedExpected:
    case SharpnessClass::EvenIntegerException:
        add_rule(rep, "bounded_ratio_slope", sw.ratio_fit.fitted_exponent, c.tol_bounded_slope,
                 sw.ratio_fit.fitted_exponent <= c.tol_bounded_slope);
        add_rule(rep, "bounded_max_ratio", sw.max_ratio, c.tol_bounded_ratio_cap,
                 sw.max_ratio <= c.tol_bounded_ratio_cap);
        break;
    case SharpnessClass::DivergentExpected:
        if (c.family.kind == FamilyKind::Modulated) {
            // ratio = lhs/rhs must grow along the family
            add_rule(rep, "divergent_ratio_growth", sw.ratio_fit.fitted_exponent,
                     c.tol_growth_min, sw.ratio_fit.fitted_exponent >= c.tol_growth_min);
        } else {
            // rescaled form: lhs grows as delta -> 0 while rhs stays bounded
            add_rule(rep, "divergent_lhs_growth", -sw.lhs_fit.fitted_exponent,
                     c.tol_growth_min, -sw.lhs_fit.fitted_exponent >= c.tol_growth_min);
            add_rule(rep, "bounded_rhs_spread", sw.rhs_max_over_min, c.tol_rhs_spread,
                     sw.rhs_max_over_min <= c.tol_rhs_spread);
        }
        break;
    }
}

} // namespace

RunReport run(const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    set_max_threads(c.threads);
    RunReport rep;
    rep.config = c;

    json body;
    switch (c.command) {
    case Command::Sweep:
    case Command::Counterexample: {
        rep.sweep = sweep(c.theorem, c.family, c.exponents, c.s, c.grid, c.weight);
        rep.rows = rep.sweep.reports;
        rep.csv = sweep_csv(rep.rows);
        if (c.command == Command::Counterexample) counterexample_rules(rep, c);
        body["fits"] = {{"ratio_slope", rep.sweep.ratio_fit.fitted_exponent},
                        {"rhs_over_lhs_slope", -rep.sweep.ratio_fit.fitted_exponent},
                        {"lhs_slope", rep.sweep.lhs_fit.fitted_exponent},
                        {"rhs_slope", rep.sweep.rhs_fit.fitted_exponent},
                        {"rhs_max_over_min", rep.sweep.rhs_max_over_min},
                        {"max_ratio", rep.sweep.max_ratio}};
        break;
    }
    case Command::Kernel: {
        std::string csv = "y,delta,value,envelope,pass\n";
        bool all = true;
        json rows = json::array();
        for (double d : c.kernel.deltas)
            for (double y : c.kernel.radii) {
                const EnvelopeCheck e = kernel_bound_check(y, c.kernel.s, d, c.kernel.n);
                all = all && e.pass;
                csv += format_double(y);
                csv += ',';
                csv += format_double(d);
                csv += ',';
                csv += format_double(e.value);
                csv += ',';
                csv += format_double(e.envelope);
                csv += ',';
                csv += e.pass ? '1' : '0';
                csv += '\n';
                rows.push_back({{"y", y}, {"delta", d}, {"value", e.value},
                                {"envelope", e.envelope}, {"pass", e.pass}});
            }
        rep.csv = std::move(csv);
        add_rule(rep, "kernel_envelope_all_pass", all ? 1.0 : 0.0, 1.0, all);
        body["kernel_rows"] = rows;
        break;
    }
    case Command::Verify:
    case Command::Suite: {
        rep.criteria = c.command == Command::Suite ? acceptance::run()
                                                   : acceptance::run(c.criteria);
        std::string csv = "criterion,metric,value,threshold,pass\n";
        json rows = json::array();
        for (const auto& cr : rep.criteria) {
            add_rule(rep, cr.id, cr.pass ? 1.0 : 0.0, 1.0, cr.pass);
            for (const auto& m : cr.metrics) {
                csv += cr.id;
                csv += ',';
                csv += m.name;
                csv += ',';
                csv += format_double(m.value);
                csv += ',';
                csv += format_double(m.threshold);
                csv += ',';
                csv += m.pass ? '1' : '0';
                csv += '\n';
            }
            json jc = {{"id", cr.id}, {"title", cr.title}, {"pass", cr.pass}};
            json jm = json::array();
            for (const auto& m : cr.metrics)
                jm.push_back({{"name", m.name}, {"value", m.value},
                              {"threshold", m.threshold}, {"pass", m.pass}});
            jc["metrics"] = jm;
            if (!cr.notes.empty()) jc["notes"] = cr.notes;
            rows.push_back(jc);
        }
        rep.csv = std::move(csv);
        body["criteria"] = rows;
        break;
    }
    }

    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    json j;
    j["config"] = config_echo(c);
    j["artifact_version"] = "0.1.0";
    j["simd_backend"] = simd::backend_name();
    j["wall_seconds"] = rep.wall_seconds;
    if (!rep.rows.empty()) {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"family_param", r.family_param},
                            {"lhs", r.lhs},
                            {"rhs_terms", r.rhs_terms},
                            {"rhs", r.rhs},
                            {"ratio", r.ratio},
                            {"degenerate", r.degenerate}});
        j["rows"] = rows;
    }
    for (auto& [k, v] : body.items()) j[k] = v;
    if (!rep.rules.empty()) {
        json rules = json::array();
        for (const auto& r : rep.rules)
            rules.push_back({{"name", r.name}, {"measured", r.measured},
                             {"threshold", r.threshold}, {"pass", r.pass}});
        j["rules"] = rules;
    }
    j["all_pass"] = rep.all_pass;
    rep.config_json = config_echo(c).dump(2);
    rep.json = j.dump(2);
    return rep;
}

void write_outputs(const RunReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir) / rep.config.output_prefix;
    {
        std::ofstream o(base.string() + "_report.json", std::ios::binary);
        o << rep.json << '\n';
    }
    {
        std::ofstream o(base.string() + ".csv", std::ios::binary);
        o << rep.csv;
    }
}

void emit_plot_data(const RunReport& rep, const std::string& path) {
    if (rep.rows.size() < 2)
        throw std::invalid_argument("emit_plot_data: need at least 2 family rows");
    std::vector<double> xs, ys;
    for (const auto& r : rep.rows) {
        xs.push_back(std::log(r.family_param));
        ys.push_back(std::log(r.ratio));
    }
    // replicate the report's fit on the emitted data
    const std::size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    std::ofstream o(path, std::ios::binary);
    if (!o) throw std::runtime_error("emit_plot_data: cannot open " + path);
    o << "# fit slope=" << format_double(slope) << " intercept=" << format_double(intercept)
      << "\n";
    o << "# columns: log_family_param log_ratio\n";
    for (std::size_t i = 0; i < m; ++i)
        o << format_double(xs[i]) << ' ' << format_double(ys[i]) << '\n';
}

} // namespace kpw
