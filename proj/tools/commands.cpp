#include "commands.hpp"

#include "heatrate/consistency.hpp"
#include "heatrate/crosscheck.hpp"
#include "heatrate/io.hpp"
#include "heatrate/models.hpp"
#include "heatrate/solver.hpp"
#include "heatrate/stability.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace heatrate::cli {

namespace {

struct Options {
    std::string model_path;
    std::string out_dir;
    int modes = 0;
    int grid = 0;
    double horizon = 0.0;
    int times = 11;
    std::vector<std::string> sweeps;
    std::uint64_t seed = 1;
    int tune_mode = 0;
    bool allow_unstable = false;
    std::vector<std::string> checks;
    std::string fault;
};

struct RunConfig {
    ModelKind model;
    double rho_cv = 1.0;
    Domain1D domain;
    InitialData initial;
    json initial_json;
};

Error config_error(const std::string& what) { return Error(ErrorCode::InvalidArgument, what); }

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

void reject_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
            throw Error(ErrorCode::ParseError, "unknown field '" + it.key() + "' in " + where);
}

double num_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<double> num_array(const json& j, const char* key) {
    if (!j.contains(key)) return {};
    if (!j[key].is_array()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be an array");
    std::vector<double> v;
    for (const auto& x : j[key]) {
        if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string(key) + " entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

InitialData initial_from_json(const json& j, const Domain1D& d) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "initial must be an object");
    if (j.contains("X")) {
        reject_keys(j, {"X", "theta", "q", "qdot"}, "initial");
        return InitialData::from_samples(num_array(j, "X"), num_array(j, "theta"), num_array(j, "q"),
                                         num_array(j, "qdot"));
    }
    reject_keys(j, {"preset", "amplitude", "flux_amplitude"}, "initial");
    const std::string preset = j.contains("preset") ? lower(j["preset"].get<std::string>()) : "sine";
    const double a = num_or(j, "amplitude", 1.0), b = num_or(j, "flux_amplitude", 0.0);
    const double L = d.length, env = d.theta_env;
    const bool dir = d.boundary == Boundary::Dirichlet;
    InitialData ic;
    if (preset == "sine")
        ic.theta0 = [=](double x) { return env + a * (dir ? std::sin(M_PI * x / L) : std::cos(M_PI * x / L)); };
    else if (preset == "parabola")
        ic.theta0 = [=](double x) { return env + a * x * (L - x); };
    else if (preset == "uniform")
        ic.theta0 = [=](double) { return env + a; };
    else
        throw Error(ErrorCode::ParseError, "unknown initial preset '" + preset + "'");
    ic.q0 = dir ? Profile([=](double x) { return b * std::cos(M_PI * x / L); })
                : Profile([=](double x) { return b * std::sin(M_PI * x / L); });
    ic.qdot0 = [](double) { return 0.0; };
    return ic;
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) throw config_error("--model is required");
    std::ifstream f(path);
    if (!f) throw config_error("cannot open " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    json mj, medium = json::object(), domain = json::object(), initial = json::object();
    if (j.contains("kind")) {
        mj = j;
    } else {
        reject_keys(j, {"model", "medium", "domain", "initial"}, "config");
        if (!j.contains("model")) throw Error(ErrorCode::ParseError, "config needs a 'model' object");
        mj = j["model"];
        if (j.contains("medium")) medium = j["medium"];
        if (j.contains("domain")) domain = j["domain"];
        if (j.contains("initial")) initial = j["initial"];
    }
    RunConfig cfg;
    reject_keys(medium, {"rho_cv"}, "medium");
    cfg.rho_cv = num_or(medium, "rho_cv", 1.0);
    if (mj.is_object() && mj.contains("kind") && mj["kind"].is_string() && lower(mj["kind"]) == "lso") {
        if (!mj.contains("rho_cv")) mj["rho_cv"] = cfg.rho_cv;
        if (!mj.contains("theta_ref")) mj["theta_ref"] = 1.0;
    }
    cfg.model = parse_model(mj);
    if (auto* m = std::get_if<LSO>(&cfg.model)) {
        validate_params(m->params);
        cfg.rho_cv = m->params.rho_cv;
    }
    if (!(cfg.rho_cv > 0)) throw Error(ErrorCode::NonPositiveHeatCapacity, "rho_cv must be > 0");

    reject_keys(domain, {"length", "boundary", "theta_env"}, "domain");
    cfg.domain.length = num_or(domain, "length", 1.0);
    cfg.domain.theta_env = num_or(domain, "theta_env", 0.0);
    if (!(cfg.domain.length > 0)) throw config_error("domain length must be > 0");
    if (domain.contains("boundary")) {
        const std::string b = lower(domain["boundary"].get<std::string>());
        if (b == "dirichlet")
            cfg.domain.boundary = Boundary::Dirichlet;
        else if (b == "neumann")
            cfg.domain.boundary = Boundary::Neumann;
        else
            throw Error(ErrorCode::ParseError, "boundary must be dirichlet or neumann");
    }
    cfg.initial_json = initial;
    cfg.initial = initial_from_json(initial, cfg.domain);
    return cfg;
}

int thread_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("HEATRATE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

void write_file(const Options& o, const std::string& name, const std::string& content) {
    if (o.out_dir.empty()) return;
    std::filesystem::create_directories(o.out_dir);
    std::ofstream f(std::filesystem::path(o.out_dir) / name, std::ios::binary);
    if (!f) throw config_error("cannot write " + o.out_dir + "/" + name);
    f << content;
}

void emit_report(const Options& o, const std::string& name, const json& report, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    out << text;
    write_file(o, name, text);
}

json predicates_json(const std::vector<Predicate>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back({{"name", p.name}, {"value", p.value}});
    return a;
}

json interval_json(const Interval& iv) {
    return {{"name", iv.name}, {"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

json witnesses_json(const std::vector<Witness>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back({{"condition", w.condition}, {"value", w.value}});
    return a;
}

json roots_json(const std::vector<cplx>& roots) {
    json a = json::array();
    for (const auto& w : roots) a.push_back({w.real(), w.imag()});
    return a;
}

std::string items_field(const std::vector<int>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ";" : "") + std::to_string(items[i]);
    return s.empty() ? "-" : s;
}

// LSO with an exactly-zero lambda is the Jeffreys model; the cubic analysis does not apply.
void reject_zero_lambda(const MaterialParams& p) {
    if (p.lambda == 0.0)
        throw config_error("lambda = 0: the LSO equation reduces to the Jeffreys model; run it as " +
                           json(reduce(LSO{p})).dump());
}

int cmd_consistency(const Options& o, std::ostream& out) {
    const RunConfig cfg = load_config(o.model_path);
    json report;
    report["model"] = cfg.model;
    const auto* lso = std::get_if<LSO>(&cfg.model);
    if (!lso) {
        const auto v = check_parameter_consistency(cfg.model);
        report["verdict"] = to_string(v.status);
        report["conditions"] = predicates_json(v.conditions_checked);
        report["notes"] = v.notes;
        emit_report(o, "consistency.json", report, out);
        return v.status == VerdictStatus::Inconsistent ? kInfeasible : kOk;
    }
    const MaterialParams& p = lso->params;
    reject_zero_lambda(p);
    if (p.kappa == 0.0)
        throw config_error("kappa = 0: the LSO equation reduces to the Burgers model; run it as " +
                           json(reduce(cfg.model)).dump());
    const auto cls = classify(p);
    report["matched_items"] = cls.matched_items;
    report["rejected_conditional"] = cls.rejected_conditional;
    json items = json::array();
    for (const auto& r : cls.recipes) {
        json it{{"item", r.item},
                {"status", r.status == ItemStatus::Consistent ? "consistent" : "conditionally consistent"},
                {"conditions", predicates_json(r.conditions)},
                {"coefficient_predicates", r.coefficient_predicates},
                {"psd", r.psd_verified},
                {"dynamically_admissible", r.dynamically_admissible}};
        json ivs = json::array();
        for (const auto& iv : r.intervals) ivs.push_back(interval_json(iv));
        it["intervals"] = ivs;
        if (r.coeffs) {
            it["coefficients"] = *r.coeffs;
            it["min_eigenvalue"] = psd_report(build_A(p, *r.coeffs)).min_eigenvalue;
        }
        items.push_back(it);
    }
    report["items"] = items;
    if (cls.search) {
        const auto& s = *cls.search;
        report["search"] = {{"feasible", s.feasible},
                            {"min_eigenvalue", s.min_eigenvalue},
                            {"objective", s.objective},
                            {"newton_steps", s.newton_steps},
                            {"coefficients", s.coeffs}};
    }
    report["verdict"] = cls.infeasible ? "infeasible" : (cls.matched_items.empty() ? "feasible" : "consistent");
    emit_report(o, "consistency.json", report, out);
    return cls.infeasible ? kInfeasible : kOk;
}

int cmd_stability(const Options& o, std::ostream& out) {
    RunConfig cfg = load_config(o.model_path);
    const int N = o.modes > 0 ? o.modes : 10;
    const auto modes = eigen_modes(cfg.domain, std::max(N, o.tune_mode));
    json report;
    std::optional<ParameterVerdict> pv;
    if (o.tune_mode > 0) {
        auto* lso = std::get_if<LSO>(&cfg.model);
        if (!lso) throw config_error("--tune-mode applies to LSO models");
        reject_zero_lambda(lso->params);
        const auto tr = oscillatory_tuning(lso->params, modes[o.tune_mode - 1].Lambda);
        lso->params.mu = tr.mu;
        std::vector<cplx> roots(tr.roots.begin(), tr.roots.end());
        report["tuning"] = {{"mode", o.tune_mode}, {"mu", tr.mu}, {"Lambda_tilde", tr.Lambda_tilde},
                            {"roots", roots_json(roots)}};
    }
    report["model"] = cfg.model;
    if (const auto* lso = std::get_if<LSO>(&cfg.model)) {
        const auto& p = lso->params;
        reject_zero_lambda(p);
        pv = stability_conditions(p);
        json s{{"pass", pv->pass}, {"regime", to_string(pv->regime)}, {"witnesses", witnesses_json(pv->witnesses)}};
        if (pv->mu_bound) s["mu_bound"] = *pv->mu_bound;
        report["conditions"] = s;
        if (p.lambda > 0 && p.tau > 0 && p.kappa >= 0 && p.nu >= 0) {
            const auto r = mu_admissibility(p.lambda, p.tau, p.nu, p.kappa);
            report["mu_region"] = {{"regime", to_string(r.regime)}, {"lo", r.lo},          {"hi", r.hi},
                                   {"lo_closed", r.lo_closed},      {"hi_closed", r.hi_closed},
                                   {"degenerate", r.degenerate},    {"contains_mu", r.contains(p.mu)}};
        }
    }
    std::string csv = "n,Lambda,verdict,max_re_root\n";
    json table = json::array();
    bool unstable = false;
    for (int i = 0; i < N; ++i) {
        const auto& m = modes[i];
        const auto v = mode_verdict(cfg.model, m.Lambda, cfg.rho_cv);
        unstable = unstable || v.status == StabilityStatus::Unstable;
        csv += std::to_string(m.n) + "," + fmt17(m.Lambda) + "," + to_string(v.status) + "," + fmt17(v.max_real_root) +
               "\n";
        table.push_back({{"n", m.n},
                         {"Lambda", m.Lambda},
                         {"verdict", to_string(v.status)},
                         {"max_re_root", v.max_real_root},
                         {"witnesses", witnesses_json(v.witnesses)}});
    }
    report["modes"] = table;
    write_file(o, "stability.csv", csv);
    emit_report(o, "stability.json", report, out);
    if (unstable) return kInfeasible;
    if (pv && !pv->pass && o.tune_mode == 0) return kInfeasible;
    return kOk;
}

int cmd_roots(const Options& o, std::ostream& out) {
    const RunConfig cfg = load_config(o.model_path);
    const int N = o.modes > 0 ? o.modes : 10;
    std::string csv = "n,Lambda,root,re,im\n";
    json table = json::array();
    for (const auto& m : eigen_modes(cfg.domain, N)) {
        const auto roots = polynomial_roots(model_characteristic(cfg.model, m.Lambda, cfg.rho_cv));
        for (std::size_t k = 0; k < roots.size(); ++k)
            csv += std::to_string(m.n) + "," + fmt17(m.Lambda) + "," + std::to_string(k) + "," +
                   fmt17(roots[k].real()) + "," + fmt17(roots[k].imag()) + "\n";
        table.push_back({{"n", m.n}, {"Lambda", m.Lambda}, {"roots", roots_json(roots)}});
    }
    write_file(o, "roots.csv", csv);
    emit_report(o, "roots.json", json{{"model", cfg.model}, {"modes", table}}, out);
    return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const RunConfig cfg = load_config(o.model_path);
    if (!(o.horizon > 0)) throw config_error("--horizon must be > 0");
    if (o.times < 2) throw config_error("--times must be >= 2");
    const int N = o.modes > 0 ? o.modes : 64;
    std::vector<double> times;
    for (int i = 0; i < o.times; ++i) times.push_back(o.horizon * i / (o.times - 1));
    SimulateOptions so;
    so.rho_cv = cfg.rho_cv;
    so.allow_unstable = o.allow_unstable;
    so.threads = thread_count();
    if (o.grid > 0) {
        if (o.grid < 2) throw config_error("--grid must be >= 2");
        for (int i = 0; i < o.grid; ++i) so.X.push_back(cfg.domain.length * i / (o.grid - 1));
    }
    const auto f = simulate(cfg.model, cfg.domain, cfg.initial, times, N, so);
    std::string csv = "t,X,theta\n";
    for (std::size_t i = 0; i < f.t.size(); ++i)
        for (std::size_t k = 0; k < f.X.size(); ++k)
            csv += fmt17(f.t[i]) + "," + fmt17(f.X[k]) + "," + fmt17(f.theta(i, k)) + "\n";
    write_file(o, "field.csv", csv);
    json modes = json::array();
    for (const auto& m : f.modes)
        modes.push_back({{"n", m.mode.n},
                         {"Lambda", m.mode.Lambda},
                         {"T0", m.initial.T},
                         {"roots", roots_json(m.roots)}});
    json report{{"model", cfg.model}, {"initial", cfg.initial_json}, {"modes", N},   {"times", times},
                {"points", f.X.size()}, {"tail", f.tail},          {"mode_data", modes}};
    emit_report(o, "simulate.json", report, out);
    return kOk;
}

struct Axis {
    std::string name;
    std::vector<double> values;
};

Axis parse_axis(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
    if (parts.size() != 4) throw config_error("--sweep expects name:min:max:count, got '" + spec + "'");
    static const std::vector<std::string> names{"lambda", "tau", "mu", "nu", "kappa"};
    if (std::find(names.begin(), names.end(), parts[0]) == names.end())
        throw config_error("sweep parameter must be one of lambda, tau, mu, nu, kappa");
    double lo = 0, hi = 0;
    long count = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("min");
        hi = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("max");
        count = std::stol(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument("count");
    } catch (const std::exception&) {
        throw config_error("malformed sweep axis '" + spec + "'");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) throw config_error("sweep axis needs min <= max");
    if (count < 2) throw config_error("sweep count must be >= 2");
    Axis a{parts[0], {}};
    for (long i = 0; i < count; ++i) a.values.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    return a;
}

void set_param(MaterialParams& p, const std::string& name, double v) {
    if (name == "lambda") p.lambda = v;
    else if (name == "tau") p.tau = v;
    else if (name == "mu") p.mu = v;
    else if (name == "nu") p.nu = v;
    else p.kappa = v;
}

std::string sweep_row(const MaterialParams& p) {
    std::string items = "excluded", consistent = "0";
    if (p.lambda != 0.0 && p.kappa != 0.0) {
        const auto cls = classify(p);
        items = items_field(cls.matched_items);
        consistent = cls.infeasible ? "0" : "1";
    }
    const auto pv = stability_conditions(p);
    return items + "," + consistent + "," + (pv.pass ? "1" : "0") + "," + to_string(pv.regime) + "," +
           fmt17(pv.mu_bound ? *pv.mu_bound : std::nan(""));
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const RunConfig cfg = load_config(o.model_path);
    const auto* lso = std::get_if<LSO>(&cfg.model);
    if (!lso) throw config_error("sweep applies to LSO models");
    if (o.sweeps.empty() || o.sweeps.size() > 2) throw config_error("sweep needs one or two --sweep axes");
    std::vector<Axis> axes;
    for (const auto& s : o.sweeps) axes.push_back(parse_axis(s));
    if (axes.size() == 2 && axes[0].name == axes[1].name) throw config_error("sweep axes must differ");

    const std::size_t n1 = axes[0].values.size(), n2 = axes.size() == 2 ? axes[1].values.size() : 1;
    std::vector<MaterialParams> points;
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t k = 0; k < n2; ++k) {
            MaterialParams p = lso->params;
            set_param(p, axes[0].name, axes[0].values[i]);
            if (axes.size() == 2) set_param(p, axes[1].name, axes[1].values[k]);
            points.push_back(p);
        }
    std::vector<std::string> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) rows[i] = sweep_row(points[i]);
    };
    std::vector<std::thread> pool;
    const int nt = std::min<int>(thread_count(), static_cast<int>(points.size()));
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::string csv;
    for (const auto& a : axes) csv += a.name + ",";
    csv += "items,consistent,stable,regime,mu_bound\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t a = i / n2, b = i % n2;
        csv += fmt17(axes[0].values[a]) + ",";
        if (axes.size() == 2) csv += fmt17(axes[1].values[b]) + ",";
        csv += rows[i] + "\n";
    }
    write_file(o, "sweep.csv", csv);
    json ax = json::array();
    for (const auto& a : axes) ax.push_back({{"name", a.name}, {"count", a.values.size()}});
    emit_report(o, "sweep.json", json{{"model", cfg.model}, {"axes", ax}, {"points", points.size()}}, out);
    return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    static const std::vector<std::string> all{"classifier", "psd", "hurwitz", "residual", "spectral_fd",
                                              "intersection"};
    std::vector<std::string> checks = o.checks.empty() ? all : o.checks;
    for (const auto& c : checks)
        if (std::find(all.begin(), all.end(), c) == all.end()) throw config_error("unknown check '" + c + "'");
    FaultInjection fault;
    if (!o.fault.empty()) {
        if (o.fault != "corrupt-A") throw config_error("unknown fault '" + o.fault + "'");
        fault.corrupt_A = true;
    }
    json results = json::array();
    bool ok = true;
    for (std::size_t k = 0; k < all.size(); ++k) {
        const std::string& name = all[k];
        if (std::find(checks.begin(), checks.end(), name) == checks.end()) continue;
        Rng rng(o.seed * 1000003ULL + k);
        CheckResult r;
        if (name == "classifier") r = check_classifier(rng, 100, 100, fault);
        else if (name == "psd") r = check_psd_equivalence(rng, 100000, fault);
        else if (name == "hurwitz") r = check_hurwitz_roots(rng, 10000);
        else if (name == "residual") r = check_residuals(rng, 1000);
        else if (name == "spectral_fd")
            r = check_spectral_fd(o.modes > 0 ? o.modes : 64, o.grid > 0 ? o.grid : 256, stable_models());
        else r = check_intersection(rng, 200);
        ok = ok && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        results.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"cases", r.cases}});
    }
    write_file(o, "validate.json", json{{"seed", o.seed}, {"checks", results}, {"passed", ok}}.dump(2) + "\n");
    return ok ? kOk : kValidationFailed;
}

int exit_code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::UnstableParameters:
    case ErrorCode::NoPositiveSolution: return kInfeasible;
    default: return kConfigError;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rate-type heat conduction: consistency, stability and simulation"};
    app.require_subcommand(1);
    Options o;

    auto add_model = [&](CLI::App* s) {
        s->add_option("--model", o.model_path, "model or run configuration (JSON)")->required();
        s->add_option("--out", o.out_dir, "output directory for reports and CSV");
    };
    auto* consistency = app.add_subcommand("consistency", "thermodynamic consistency report");
    add_model(consistency);
    auto* stability = app.add_subcommand("stability", "stability conditions and per-mode verdicts");
    add_model(stability);
    stability->add_option("--modes", o.modes, "number of modes (default 10)");
    stability->add_option("--tune-mode", o.tune_mode, "replace mu by the oscillatory tuning of this mode")
        ->check(CLI::PositiveNumber);
    auto* roots = app.add_subcommand("roots", "characteristic roots per mode");
    add_model(roots);
    roots->add_option("--modes", o.modes, "number of modes (default 10)");
    auto* simulate_cmd = app.add_subcommand("simulate", "eigenfunction-expansion simulation");
    add_model(simulate_cmd);
    simulate_cmd->add_option("--modes", o.modes, "number of modes (default 64)");
    simulate_cmd->add_option("--grid", o.grid, "number of output points (default 129)");
    simulate_cmd->add_option("--horizon", o.horizon, "final time")->required();
    simulate_cmd->add_option("--times", o.times, "number of output times, including t = 0");
    simulate_cmd->add_flag("--allow-unstable", o.allow_unstable, "simulate unstable modes anyway");
    auto* sweep = app.add_subcommand("sweep", "parameter-region grid");
    add_model(sweep);
    sweep->add_option("--sweep", o.sweeps, "name:min:max:count (one or two axes)")->required();
    auto* validate = app.add_subcommand("validate", "run the cross-check suite");
    validate->add_option("--out", o.out_dir, "output directory");
    validate->add_option("--seed", o.seed, "random seed");
    validate->add_option("--checks", o.checks, "subset of checks")->delimiter(',');
    validate->add_option("--modes", o.modes, "spectral modes for spectral_fd (default 64)");
    validate->add_option("--grid", o.grid, "FD grid for spectral_fd (default 256)");
    validate->add_option("--inject-fault", o.fault, "test hook: corrupt-A");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (consistency->parsed()) return cmd_consistency(o, out);
        if (stability->parsed()) return cmd_stability(o, out);
        if (roots->parsed()) return cmd_roots(o, out);
        if (simulate_cmd->parsed()) return cmd_simulate(o, out);
        if (sweep->parsed()) return cmd_sweep(o, out);
        if (validate->parsed()) return cmd_validate(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace heatrate::cli
