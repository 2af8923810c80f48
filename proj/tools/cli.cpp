#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sngs/diagnostics.hpp"
#include "sngs/error.hpp"
#include "sngs/field_io.hpp"
#include "sngs/hartree.hpp"
#include "sngs/linearized.hpp"
#include "sngs/solver.hpp"

namespace sngs::cli {

using nlohmann::json;

namespace {

struct RawOptions {
    std::optional<double> q;
    std::optional<double> lambda;
    std::string lambdas;
    double a = 1.0;
    double nu = 1.0;
    std::size_t n = 4096;
    std::string rmax = "auto";
    double tol = 1e-10;
    int k_max = 3;
    std::size_t num_eigs = 4;
    std::size_t starts = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string prefix;
    bool force = false;
    std::string side = "zero";
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::UsageError, msg); }

std::string now_iso() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json params_json(const ModelParams& p) { return {{"lambda", p.lambda}, {"a", p.a}, {"nu", p.nu}, {"q", p.q}}; }

ModelParams params_from(const json& j) {
    return {j.at("lambda").get<double>(), j.at("a").get<double>(), j.at("nu").get<double>(), j.at("q").get<double>()};
}

json grid_json(const RadialGrid& g, const GridSpec& spec) {
    return {{"n", g.n()}, {"r_max", g.r_max()}, {"h", g.h()}, {"r_max_mode", spec.r_max ? "explicit" : "auto"}};
}

json diagnostics_json(const DiagnosticsReport& d) {
    json j = {{"grad_sq", d.grad_sq}, {"l2_sq", d.l2_sq}, {"lq", d.lq},       {"D", d.D},
              {"sup_u", d.sup_u},     {"sup_v", d.sup_v}, {"M", d.M},         {"J", d.J},
              {"nehari", d.nehari},   {"pohozaev", d.pohozaev}};
    j["level_identity_residual"] = d.level_identity_residual ? json(*d.level_identity_residual) : json(nullptr);
    return j;
}

json manifest_base(const RunConfig& c) {
    json j;
    j["command_line"] = c.argv;
    j["code_version"] = SNGS_VERSION;
    j["rng_seed"] = c.seed;
    j["timestamps"] = {{"started", now_iso()}};
    j["tolerances"] = {{"newton", c.tol}};
    return j;
}

std::string path_with(const std::string& prefix, const char* ext) { return prefix + ext; }

void ensure_writable(const RunConfig& c, std::initializer_list<std::string> paths) {
    if (c.out.empty()) usage("--out is required");
    for (const auto& p : paths)
        if (std::filesystem::exists(p) && !c.force)
            throw Error(ErrorCode::IoError, p + " exists; pass --force to overwrite");
    const auto parent = std::filesystem::path(c.out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

bool is_numerical(ErrorCode c) {
    switch (c) {
        case ErrorCode::UsageError:
        case ErrorCode::InvalidExponent:
        case ErrorCode::BadRange:
        case ErrorCode::IoError:
            return false;
        default:
            return true;
    }
}

NewtonOptions newton_opts(const RunConfig& c) {
    NewtonOptions o;
    o.tol = c.tol;
    return o;
}

GridPtr state_grid(const RunConfig& c, const ModelParams& p) { return grid_for(p, c.grid); }

GroundState solve_state(const RunConfig& c) {
    const auto g = state_grid(c, c.params);
    return solve_from_guess(default_guess(c.params, g), c.params, newton_opts(c));
}

void add_model(CLI::App* s, RawOptions& r, bool single_lambda, bool coefficients) {
    s->add_option("--q", r.q, "exponent in (2,3) or (3,6)");
    if (single_lambda)
        s->add_option("--lambda", r.lambda, "linear coefficient");
    else
        s->add_option("--lambdas", r.lambdas, "start:stop:log|lin:count or comma list");
    if (coefficients) {
        s->add_option("--a", r.a, "Hartree coefficient");
        s->add_option("--nu", r.nu, "power coefficient");
    }
    s->add_option("--n", r.n, "node count");
    s->add_option("--tol", r.tol, "Newton tolerance");
    s->add_option("--out", r.out, "output prefix");
    s->add_flag("--force", r.force, "overwrite existing outputs");
}

// ---- commands -------------------------------------------------------------

int do_solve(const RunConfig& c) {
    const std::string csv = path_with(c.out, ".csv"), js = path_with(c.out, ".json");
    ensure_writable(c, {csv, js});
    json m = manifest_base(c);
    m["command"] = "solve";
    m["params"] = params_json(c.params);
    m["outputs"] = {{"csv", csv}, {"json", js}};
    const auto g = state_grid(c, c.params);
    m["grid"] = grid_json(*g, c.grid);
    GroundState st;
    try {
        st = solve_state(c);
    } catch (const Error& e) {
        if (!is_numerical(e.code())) throw;
        m["status"] = "failed";
        m["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
        m["timestamps"]["finished"] = now_iso();
        m["outputs"].erase("csv");
        write_json(js, m);
        std::cerr << e.what() << '\n';
        return kExitNumerical;
    }
    write_state_csv(csv, st);
    m["status"] = "converged";
    m["residual_norm"] = st.residual_norm;
    m["iterations"] = st.iterations;
    m["diagnostics"] = diagnostics_json(st.diagnostics);
    if (c.starts > 0) {
        const auto scan = uniqueness_scan(c.params, c.starts, c.seed, c.grid, newton_opts(c));
        json runs = json::array();
        for (const auto& r : scan.runs)
            runs.push_back({{"amplitude", r.amplitude}, {"width", r.width}, {"converged", r.converged},
                            {"u0", r.u0}, {"state", r.converged ? json(r.state_index) : json(nullptr)}});
        m["uniqueness_scan"] = {
            {"starts", c.starts}, {"distinct_states", scan.distinct_states.size()}, {"failed", scan.failed}, {"runs", runs}};
    }
    m["timestamps"]["finished"] = now_iso();
    write_json(js, m);
    std::cout << "converged in " << st.iterations << " iterations, residual " << format_double(st.residual_norm)
              << "\nwrote " << csv << " and " << js << '\n';
    return kExitOk;
}

int do_sweep(const RunConfig& c) {
    const std::string csv = path_with(c.out, ".csv"), js = path_with(c.out, ".json");
    ensure_writable(c, {csv, js});
    json m = manifest_base(c);
    m["command"] = "sweep";
    m["params"] = params_json(c.params);
    m["lambdas"] = c.lambdas;
    m["grid"] = {{"n", c.grid.n}, {"r_max_mode", c.grid.r_max ? "explicit" : "auto"}};
    if (c.grid.r_max) m["grid"]["r_max"] = *c.grid.r_max;
    m["outputs"] = {{"csv", csv}, {"json", js}};

    const auto states = lambda_sweep(c.params, c.lambdas, c.grid, newton_opts(c));
    std::ostringstream t;
    t << "lambda,J,grad_sq,l2_sq,lq,D,sup_u,sup_v,M,nehari,pohozaev,level_identity_residual,residual_norm,"
         "iterations\n";
    std::vector<std::pair<double, double>> levels;
    double worst_identity = 0.0;
    for (const auto& s : states) {
        const auto& d = s.diagnostics;
        t << format_double(s.params.lambda) << ',' << format_double(d.J) << ',' << format_double(d.grad_sq) << ','
          << format_double(d.l2_sq) << ',' << format_double(d.lq) << ',' << format_double(d.D) << ','
          << format_double(d.sup_u) << ',' << format_double(d.sup_v) << ',' << format_double(d.M) << ','
          << format_double(d.nehari) << ',' << format_double(d.pohozaev) << ','
          << (d.level_identity_residual ? format_double(*d.level_identity_residual) : std::string("")) << ','
          << format_double(s.residual_norm) << ',' << s.iterations << '\n';
        levels.emplace_back(s.params.lambda, d.J);
        worst_identity = std::max({worst_identity, std::abs(d.nehari) / d.grad_sq, std::abs(d.pohozaev) / d.grad_sq});
    }
    std::sort(levels.begin(), levels.end());
    const auto mono = monotonicity_check(levels);
    write_text(csv, t.str());
    json viol = json::array();
    for (const auto& [i, j] : mono.violations) viol.push_back({levels[i].first, levels[j].first});
    m["verdicts"] = {{"c_lambda_non_decreasing", mono.pass}, {"violations", viol},
                     {"max_relative_identity_residual", worst_identity}};
    m["timestamps"]["finished"] = now_iso();
    write_json(js, m);
    std::cout << "c_lambda non-decreasing: " << (mono.pass ? "yes" : "no") << "\nwrote " << csv << " and " << js
              << '\n';
    return mono.pass ? kExitOk : kExitVerdictFailed;
}

bool strictly_decreasing(const std::vector<double>& x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] < x[i - 1])) return false;
    return true;
}

int do_limits(const RunConfig& c) {
    const std::string csv = path_with(c.out, ".csv"), js = path_with(c.out, ".json");
    ensure_writable(c, {csv, js});
    json m = manifest_base(c);
    m["command"] = "limits";
    m["q"] = c.params.q;
    m["side"] = to_string(c.side);
    m["lambdas"] = c.lambdas;
    m["grid"] = {{"n", c.grid.n}, {"r_max_mode", "auto"}};
    m["outputs"] = {{"csv", csv}, {"json", js}};

    const auto rep = limit_study(c.params.q, c.side, c.lambdas, c.grid, newton_opts(c));
    std::ostringstream t;
    t << "lambda,small_parameter,sup_distance,h1_distance,power_ratio,linear_ratio\n";
    std::vector<double> sup, h1;
    for (std::size_t i = 0; i < rep.distances.size(); ++i) {
        const auto& d = rep.distances[i];
        const auto& r = rep.mass_ratios[i];
        t << format_double(d.lambda) << ',' << format_double(d.small_parameter) << ','
          << format_double(d.sup_distance) << ',' << format_double(d.h1_distance) << ','
          << format_double(r.power_ratio) << ',' << format_double(r.linear_ratio) << '\n';
        sup.push_back(d.sup_distance);
        h1.push_back(d.h1_distance);
    }
    write_text(csv, t.str());
    const bool sup_dec = strictly_decreasing(sup), h1_dec = strictly_decreasing(h1);
    m["regime"] = to_string(rep.regime);
    m["limit_kind"] = to_string(rep.limit_kind);
    m["form"] = to_string(rep.form);
    m["reference_sup"] = rep.reference_sup;
    m["verdicts"] = {{"sup_distance_strictly_decreasing", sup_dec},
                     {"h1_distance_strictly_decreasing", h1_dec},
                     {"mass_ratio_in_window", rep.mass_window_ok},
                     {"final_sup_over_reference", sup.empty() ? 0.0 : sup.back() / rep.reference_sup}};
    m["timestamps"]["finished"] = now_iso();
    write_json(js, m);
    std::cout << "limit " << to_string(rep.limit_kind) << " via " << to_string(rep.form)
              << "; sup decreasing: " << (sup_dec ? "yes" : "no") << ", H1 decreasing: " << (h1_dec ? "yes" : "no")
              << "\nwrote " << csv << " and " << js << '\n';
    return sup_dec && h1_dec && rep.mass_window_ok ? kExitOk : kExitVerdictFailed;
}

int do_spectrum(const RunConfig& c) {
    const std::string js = path_with(c.out, ".json");
    ensure_writable(c, {js});
    json m = manifest_base(c);
    m["command"] = "spectrum";
    m["params"] = params_json(c.params);
    m["outputs"] = {{"json", js}};

    GroundState st = solve_state(c);
    m["grid"] = grid_json(*st.grid(), c.grid);
    if (c.params.a == 1.0 && c.params.nu == 1.0 && c.params.lambda != 1.0) {
        const auto lc = limit_regime(c.params.q, c.params.lambda < 1.0 ? Side::zero : Side::infinity);
        st = scaled_ground_state(st, lc.form, make_grid(auto_rmax(1.0), c.grid.n), newton_opts(c));
        m["normalization"] = {{"form", to_string(lc.form)}, {"effective_params", params_json(st.params)}};
    }
    if (st.params.a > 0.0) {
        const auto cc = check_convention_pairs(st);
        m["convention_check"] = {{"mapped_residual", cc.mapped_residual},
                                 {"mapped_potential_mismatch", cc.mapped_potential_mismatch},
                                 {"unscaled_potential_mismatch", cc.unscaled_potential_mismatch},
                                 {"a2_pair", "(u*sqrt(a/2), v*a/2)"}};
    }
    const auto rep = nondegeneracy_report(st, c.k_max, {}, c.num_eigs);
    json sectors = json::array();
    for (const auto& e : rep.sectors) {
        json s = {{"k", e.k}, {"eigenvalues", e.eigenvalues}, {"kernel_dimension", e.kernel_dimension}};
        s["zero_mode_match"] = e.zero_mode_match ? json(*e.zero_mode_match) : json(nullptr);
        sectors.push_back(s);
    }
    m["sectors"] = sectors;
    m["verdict"] = to_string(rep.verdict);
    m["tolerances"]["zero_tol"] = rep.zero_tol;
    m["tolerances"]["gap_tol"] = rep.gap_tol;
    m["timestamps"]["finished"] = now_iso();
    write_json(js, m);
    std::cout << "verdict: " << to_string(rep.verdict) << "\nwrote " << js << '\n';
    return rep.verdict == Verdict::nondegenerate ? kExitOk : kExitVerdictFailed;
}

int do_check(const RunConfig& c) {
    const std::string csv = path_with(c.out, ".csv"), js = path_with(c.out, ".json");
    json m;
    {
        std::ifstream in(js);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + js);
        try {
            in >> m;
        } catch (const std::exception& e) {
            throw Error(ErrorCode::IoError, js + ": " + e.what());
        }
    }
    if (!m.contains("params") || !m.contains("diagnostics"))
        throw Error(ErrorCode::IoError, js + " is not a converged solve manifest");
    auto [u, v_csv] = read_state_csv(csv);
    GroundState st;
    st.params = params_from(m["params"]);
    const auto hp = hartree_potential(u);
    st.u = u;
    st.v = hp.v;
    st.residual_norm = residual_norm(residual(u, st.params), u, st.params);
    st.diagnostics = identities(st);

    double v_mismatch = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) v_mismatch = std::max(v_mismatch, std::abs(v_csv[i] - hp.v[i]));
    v_mismatch /= std::max(hp.v.sup_abs(), 1e-300);

    const json fresh = diagnostics_json(st.diagnostics);
    const json& stored = m["diagnostics"];
    json diffs = json::object();
    double worst = 0.0;
    for (const auto& [key, val] : fresh.items()) {
        if (val.is_null() || !stored.contains(key) || stored[key].is_null()) continue;
        const double a = val.get<double>(), b = stored[key].get<double>();
        const double rel = std::abs(a - b) / std::max(1.0, std::abs(b));
        diffs[key] = rel;
        worst = std::max(worst, rel);
    }
    const auto& d = st.diagnostics;
    const double neh = std::abs(d.nehari) / d.grad_sq, poh = std::abs(d.pohozaev) / d.grad_sq;
    const bool has_lev = d.level_identity_residual.has_value();
    const double lev = has_lev ? *d.level_identity_residual / std::abs(d.J) : 0.0;
    const double tol = m.value("tolerances", json::object()).value("newton", 1e-10);
    const bool ok_match = worst <= 1e-10;
    const bool ok_ident = neh <= 1e-6 && poh <= 1e-6 && (!has_lev || lev <= 1e-6);
    const bool ok_res = st.residual_norm <= std::max(tol, 1e-10) * 10.0;
    const bool ok_v = v_mismatch <= 1e-12;

    json rep = {{"prefix", c.out},
                {"recomputed", fresh},
                {"relative_differences", diffs},
                {"residual_norm", st.residual_norm},
                {"potential_mismatch", v_mismatch},
                {"identity_residuals", {{"nehari", neh}, {"pohozaev", poh}}},
                {"verdicts",
                 {{"diagnostics_match", ok_match},
                  {"identities_within_1e-6", ok_ident},
                  {"residual_within_tolerance", ok_res},
                  {"potential_matches", ok_v}}}};
    rep["identity_residuals"]["level"] = has_lev ? json(lev) : json(nullptr);
    std::cout << rep.dump(2) << '\n';
    return ok_match && ok_ident && ok_res && ok_v ? kExitOk : kExitVerdictFailed;
}

}  // namespace

std::vector<double> parse_lambdas(const std::string& spec) {
    auto bad = [&](const std::string& why) -> Error {
        return Error(ErrorCode::BadRange, "'" + spec + "': " + why);
    };
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double x = std::stod(s, &used);
            if (used != s.size()) throw bad("trailing characters in '" + s + "'");
            return x;
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw bad("not a number: '" + s + "'");
        }
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) parts.push_back(item);
        if (!s.empty() && s.back() == sep) parts.emplace_back();
        return parts;
    };
    if (spec.empty()) throw bad("empty range");
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto p = split(spec, ':');
        if (p.size() != 4) throw bad("expected start:stop:log|lin:count");
        const double a = number(p[0]), b = number(p[1]);
        std::size_t count = 0;
        try {
            std::size_t used = 0;
            const long long c = std::stoll(p[3], &used);
            if (used != p[3].size() || c < 1) throw bad("count must be a positive integer");
            count = static_cast<std::size_t>(c);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw bad("count must be a positive integer");
        }
        if (p[2] != "log" && p[2] != "lin") throw bad("spacing must be log or lin");
        if (p[2] == "log" && !(a > 0.0 && b > 0.0)) throw bad("log spacing needs positive endpoints");
        if (count == 1 && a != b) throw bad("a single point needs start == stop");
        for (std::size_t i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            out.push_back(p[2] == "log" ? std::pow(10.0, std::log10(a) + t * (std::log10(b) - std::log10(a)))
                                        : a + t * (b - a));
        }
        out.front() = a;
        out.back() = b;
    } else {
        for (const auto& s : split(spec, ',')) {
            if (s.empty()) throw bad("empty list entry");
            out.push_back(number(s));
        }
    }
    for (double x : out)
        if (!(x > 0.0) || !std::isfinite(x)) throw bad("lambdas must be positive");
    return out;
}

RunConfig parse_args(const std::vector<std::string>& tokens) {
    CLI::App app{"Radial Schrodinger-Newton ground states, identities, scaling limits and spectra", "sngs"};
    app.require_subcommand(1, 1);
    RawOptions r;
    auto* solve = app.add_subcommand("solve", "compute one ground state");
    add_model(solve, r, true, true);
    solve->add_option("--rmax", r.rmax, "domain radius or auto");
    solve->add_option("--starts", r.starts, "also run a multi-start uniqueness scan");
    solve->add_option("--seed", r.seed, "scan seed");
    auto* sweep = app.add_subcommand("sweep", "continuation in lambda with the c_lambda table");
    add_model(sweep, r, false, true);
    sweep->add_option("--rmax", r.rmax, "domain radius or auto");
    auto* limits = app.add_subcommand("limits", "distances of rescaled states to the limit profile");
    add_model(limits, r, false, false);
    limits->add_option("--side", r.side, "zero or infinity");
    auto* spectrum = app.add_subcommand("spectrum", "sector spectra and nondegeneracy verdict");
    add_model(spectrum, r, true, true);
    spectrum->add_option("--rmax", r.rmax, "domain radius or auto");
    spectrum->add_option("--k-max", r.k_max, "highest harmonic sector");
    spectrum->add_option("--num-eigs", r.num_eigs, "eigenpairs per sector");
    auto* check = app.add_subcommand("check", "recompute diagnostics of a solve artifact");
    check->add_option("prefix", r.prefix, "artifact prefix (<prefix>.csv, <prefix>.json)");
    check->add_option("--out", r.out, "artifact prefix");

    RunConfig cfg;
    cfg.argv = tokens;
    std::vector<std::string> rev(tokens.rbegin(), tokens.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        std::string text = app.help();
        for (auto* s : app.get_subcommands()) text = s->help();
        cfg.help = text;
        return cfg;
    } catch (const CLI::ParseError& e) {
        usage(e.what());
    }

    if (solve->parsed()) cfg.command = Command::solve;
    if (sweep->parsed()) cfg.command = Command::sweep;
    if (limits->parsed()) cfg.command = Command::limits;
    if (spectrum->parsed()) cfg.command = Command::spectrum;
    if (check->parsed()) cfg.command = Command::check;

    if (cfg.command == Command::check) {
        if (!r.prefix.empty() && !r.out.empty() && r.prefix != r.out) usage("give the prefix once");
        cfg.out = r.prefix.empty() ? r.out : r.prefix;
        if (cfg.out.empty()) usage("check needs an artifact prefix");
        return cfg;
    }

    if (!r.q) usage("--q is required");
    validate_exponent(*r.q);
    cfg.params = {1.0, r.a, r.nu, *r.q};
    if (!(r.a >= 0.0) || !(r.nu >= 0.0) || (r.a == 0.0 && r.nu == 0.0))
        usage("--a and --nu must be non-negative and not both zero");
    if (cfg.command == Command::solve || cfg.command == Command::spectrum) {
        if (!r.lambda) usage("--lambda is required");
        if (!(*r.lambda > 0.0)) usage("--lambda must be positive");
        cfg.params.lambda = *r.lambda;
    } else {
        if (r.lambdas.empty()) usage("--lambdas is required");
        cfg.lambdas = parse_lambdas(r.lambdas);
        cfg.params.lambda = cfg.lambdas.front();
    }
    if (r.n < kMinNodes) usage("--n must be at least 16");
    cfg.grid.n = r.n;
    if (r.rmax != "auto") {
        try {
            std::size_t used = 0;
            const double x = std::stod(r.rmax, &used);
            if (used != r.rmax.size() || !(x > 0.0)) throw std::invalid_argument(r.rmax);
            cfg.grid.r_max = x;
        } catch (const std::exception&) {
            usage("--rmax must be 'auto' or a positive number");
        }
    }
    if (!(r.tol > 0.0)) usage("--tol must be positive");
    cfg.tol = r.tol;
    if (r.k_max < 2) usage("--k-max must be at least 2");
    cfg.k_max = r.k_max;
    if (r.num_eigs < 2) usage("--num-eigs must be at least 2");
    cfg.num_eigs = r.num_eigs;
    if (r.starts == 1) usage("--starts needs at least 2");
    cfg.starts = r.starts;
    cfg.seed = r.seed;
    cfg.out = r.out;
    cfg.force = r.force;
    if (r.side == "zero")
        cfg.side = Side::zero;
    else if (r.side == "infinity")
        cfg.side = Side::infinity;
    else
        usage("--side must be zero or infinity");
    return cfg;
}

int run_solve(const RunConfig& config) { return do_solve(config); }

int run_analysis(const RunConfig& config) {
    switch (config.command) {
        case Command::sweep: return do_sweep(config);
        case Command::limits: return do_limits(config);
        case Command::spectrum: return do_spectrum(config);
        case Command::check: return do_check(config);
        case Command::solve: return do_solve(config);
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& tokens) {
    try {
        const RunConfig cfg = parse_args(tokens);
        if (cfg.help) {
            std::cout << *cfg.help;
            return kExitOk;
        }
        return cfg.command == Command::solve ? run_solve(cfg) : run_analysis(cfg);
    } catch (const Error& e) {
        std::cerr << "sngs: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::UsageError:
            case ErrorCode::InvalidExponent:
            case ErrorCode::BadRange:
                return kExitUsage;
            case ErrorCode::IoError:
                return kExitIo;
            default:
                return kExitNumerical;
        }
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "sngs: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace sngs::cli
