// Batch front end: norms, modulus tables, theorem suites, l^inf witnesses.
#include "orlicz/descriptors.hpp"
#include "orlicz/geometry_verifier.hpp"
#include "orlicz/norm_engine.hpp"
#include "orlicz/planar_norm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::ordered_json;
using namespace orlicz;

namespace {

constexpr const char *kSchema = "1";

enum class Format { Default, Json, Csv };

struct Options {
    std::string phi = "power:2";
    std::string p = "l1";
    std::optional<std::string> space;
    std::optional<std::string> values;
    std::uint64_t seed = 0;
    std::optional<std::string> grid;
    std::size_t budget = 200;
    double tol = 1e-9;
    double resolution = 1e-2;
    bool json = false;
    bool csv = false;
    std::string out;
    std::string config;
    // verify
    std::vector<std::string> theorems;
    bool all = false;
    std::optional<std::string> regime;
    // witness
    std::string mode = "approximate";
    std::size_t n = 4;
    double epsilon = 0.1;
    double eta = 0.01;
    double big_m = 1e9;
    std::size_t samples = 100;
};

// Non-finite numbers become strings so the output stays valid JSON.
ordered_json num(double v) {
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0 ? "inf" : "-inf";
}

ordered_json num_array(std::span<const double> v) {
    ordered_json a = ordered_json::array();
    for (double e : v)
        a.push_back(num(e));
    return a;
}

std::string csv_num(double v) {
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ordered_json space_json(const MeasureSpace &space) {
    ordered_json a = ordered_json::array();
    for (long double w : space.weights())
        a.push_back(num(static_cast<double>(w)));
    return a;
}

ordered_json header(const std::string &command, const Options &o) {
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["seed"] = o.seed;
    return j;
}

// Values from a JSON config fill any option not given on the command line.
void merge_config(const CLI::App &app, Options &o) {
    if (o.config.empty())
        return;
    std::ifstream in(o.config);
    if (!in)
        throw InputError("cannot open config file '" + o.config + "'");
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string{"malformed config file: "} + e.what());
    }
    if (!cfg.is_object())
        throw InputError("config file must hold a JSON object");

    auto given = [&](const char *flag) { return app.count(flag) > 0; };
    auto text = [](const nlohmann::json &v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    try {
        for (const auto &[key, v] : cfg.items()) {
            if (key == "phi" && !given("--phi"))
                o.phi = text(v);
            else if (key == "p" && !given("--p"))
                o.p = text(v);
            else if (key == "space" && !given("--space"))
                o.space = text(v);
            else if (key == "values" && !given("--values"))
                o.values = text(v);
            else if (key == "grid" && !given("--grid"))
                o.grid = text(v);
            else if (key == "seed" && !given("--seed"))
                o.seed = v.get<std::uint64_t>();
            else if (key == "budget" && !given("--budget"))
                o.budget = v.get<std::size_t>();
            else if (key == "tol" && !given("--tol"))
                o.tol = v.get<double>();
            else if (key == "resolution" && !given("--resolution"))
                o.resolution = v.get<double>();
            else if (key == "theorems" && o.theorems.empty() && !o.all)
                o.theorems = v.get<std::vector<std::string>>();
            else if (key == "regime" && !given("--regime"))
                o.regime = v.get<std::string>();
            else if (key == "mode" && !given("--mode"))
                o.mode = v.get<std::string>();
            else if (key == "n" && !given("--n"))
                o.n = v.get<std::size_t>();
            else if (key == "epsilon" && !given("--epsilon"))
                o.epsilon = v.get<double>();
            else if (key == "eta" && !given("--eta"))
                o.eta = v.get<double>();
            else if (key == "big_m" && !given("--big-m"))
                o.big_m = v.get<double>();
            else if (key == "samples" && !given("--samples"))
                o.samples = v.get<std::size_t>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string{"bad config value: "} + e.what());
    }
}

Format format_of(const Options &o) {
    if (o.json && o.csv)
        throw InputError("--json and --csv are exclusive");
    return o.json ? Format::Json : (o.csv ? Format::Csv : Format::Default);
}

SimpleFunction make_element(const Options &o, std::shared_ptr<const MeasureSpace> &space) {
    if (!o.values)
        throw InputError("--values is required");
    std::vector<double> v = parse_values(*o.values);
    if (v.empty())
        throw InputError("--values must not be empty");
    space = o.space ? parse_space(*o.space) : MeasureSpace::counting(v.size());
    if (space->size() != v.size())
        throw InputError("--values has " + std::to_string(v.size()) + " entries but the space has " +
                         std::to_string(space->size()) + " atoms");
    try {
        return SimpleFunction(space, std::move(v));
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
}

void cmd_norm(const Options &o, std::ostream &out) {
    const Format fmt = format_of(o);
    const OrliczFunction phi = parse_phi(o.phi);
    const PlanarNorm p = parse_planar_norm(o.p);
    std::shared_ptr<const MeasureSpace> space;
    const SimpleFunction x = make_element(o, space);
    const NormResult r = generated_norm(phi, p, x);
    const double k_star = r.k_star ? *r.k_star : std::nan("");

    if (fmt == Format::Csv) {
        out << "value,k_star,attained,evaluations\n"
            << csv_num(r.value) << ',' << (r.k_star ? csv_num(k_star) : "") << ','
            << (r.attained ? "true" : "false") << ',' << r.evaluations << '\n';
        return;
    }
    ordered_json j = header("norm", o);
    j["phi"] = phi.name();
    j["p"] = p.name();
    j["space"] = space_json(*space);
    j["values"] = num_array(x.values());
    j["value"] = num(r.value);
    j["k_star"] = r.k_star ? num(k_star) : ordered_json(nullptr);
    j["attained"] = r.attained;
    j["bracket"] = {num(r.bracket.first), num(r.bracket.second)};
    j["evaluations"] = r.evaluations;
    out << j.dump(2) << '\n';
}

void cmd_modulus(const Options &o, std::ostream &out) {
    const Format fmt = format_of(o);
    const PlanarNorm p = parse_planar_norm(o.p);
    const std::vector<double> grid = parse_grid(o.grid.value_or("0.1:0.9:9"));
    if (!(o.resolution > 0 && o.resolution < 1))
        throw InputError("--resolution must lie in (0,1)");
    for (double e : grid)
        if (!(e > 0 && e < 1))
            throw InputError("grid points must lie in (0,1)");

    std::vector<ModulusEstimate> rows;
    for (double e : grid)
        rows.push_back(estimate_modulus_of_monotonicity(p, e, o.resolution));

    if (fmt == Format::Json) {
        ordered_json j = header("modulus", o);
        j["p"] = p.name();
        j["resolution"] = o.resolution;
        ordered_json table = ordered_json::array();
        for (std::size_t i = 0; i < grid.size(); ++i)
            table.push_back({{"epsilon", num(grid[i])},
                             {"delta", num(rows[i].delta)},
                             {"refinement_bound", num(rows[i].refinement_bound)}});
        j["table"] = std::move(table);
        out << j.dump(2) << '\n';
        return;
    }
    out << "epsilon,delta\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << csv_num(grid[i]) << ',' << csv_num(rows[i].delta) << '\n';
}

ordered_json case_json(const CaseRecord &c) {
    return {{"check", c.check}, {"trial", c.trial},   {"x", num_array(c.x)},
            {"y", num_array(c.y)}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)},
            {"slack", num(c.slack())}};
}

ordered_json report_json(const TheoremReport &r) {
    ordered_json j;
    j["theorem"] = to_string(r.id);
    j["status"] = to_string(r.status);
    j["passed"] = r.passed();
    j["trials"] = r.trials;
    ordered_json metrics = ordered_json::object();
    for (const auto &[k, v] : r.metrics)
        metrics[k] = num(v);
    j["metrics"] = std::move(metrics);
    j["violations"] = ordered_json::array();
    for (const auto &c : r.violations)
        j["violations"].push_back(case_json(c));
    j["witnesses"] = ordered_json::array();
    for (const auto &c : r.witnesses)
        j["witnesses"].push_back(case_json(c));
    j["notes"] = r.notes;
    return j;
}

Delta2Regime parse_regime(const std::string &s) {
    if (s == "at_zero" || s == "zero")
        return Delta2Regime::AtZero;
    if (s == "at_infinity" || s == "infinity")
        return Delta2Regime::AtInfinity;
    if (s == "global")
        return Delta2Regime::Global;
    throw InputError("unknown regime '" + s + "' (at_zero, at_infinity, global)");
}

int cmd_verify(const Options &o, std::ostream &out) {
    const Format fmt = format_of(o);
    std::vector<TheoremId> ids;
    if (o.all) {
        if (!o.theorems.empty())
            throw InputError("give theorem ids or --all, not both");
        ids.assign(kAllTheorems.begin(), kAllTheorems.end());
    } else {
        if (o.theorems.empty())
            throw InputError("no theorem ids given (use --all for every suite)");
        for (const auto &t : o.theorems) {
            try {
                ids.push_back(parse_theorem_id(t));
            } catch (const std::invalid_argument &e) {
                throw InputError(e.what());
            }
        }
    }
    if (o.budget == 0)
        throw InputError("--budget must be positive");
    if (!(o.tol > 0))
        throw InputError("--tol must be positive");

    VerifierConfig cfg{.phi = parse_phi(o.phi),
                       .p = parse_planar_norm(o.p),
                       .space = parse_space(o.space.value_or("counting:4")),
                       .seed = o.seed,
                       .budget = o.budget,
                       .tol = o.tol,
                       .modulus_resolution = o.resolution};
    if (o.regime)
        cfg.regime = parse_regime(*o.regime);

    const std::vector<TheoremReport> reports = run_suites(ids, cfg);
    bool failed = false;
    for (const auto &r : reports)
        failed = failed || !r.passed();

    if (fmt == Format::Json) {
        ordered_json j = header("verify", o);
        j["phi"] = cfg.phi.name();
        j["p"] = cfg.p.name();
        j["space"] = space_json(*cfg.space);
        j["regime"] = to_string(effective_regime(cfg));
        j["budget"] = cfg.budget;
        j["tol"] = cfg.tol;
        j["reports"] = ordered_json::array();
        for (const auto &r : reports)
            j["reports"].push_back(report_json(r));
        j["passed"] = !failed;
        out << j.dump(2) << '\n';
    } else if (fmt == Format::Csv) {
        out << "theorem,status,trials,violations,witnesses\n";
        for (const auto &r : reports)
            out << to_string(r.id) << ',' << to_string(r.status) << ',' << r.trials << ','
                << r.violations.size() << ',' << r.witnesses.size() << '\n';
    } else {
        out << "phi=" << cfg.phi.name() << "  p=" << cfg.p.name()
            << "  regime=" << to_string(effective_regime(cfg)) << "  seed=" << cfg.seed << '\n';
        char line[160];
        std::snprintf(line, sizeof line, "%-8s %-20s %8s %10s %9s  %s\n", "theorem", "status",
                      "trials", "violations", "witnesses", "note");
        out << line;
        for (const auto &r : reports) {
            std::snprintf(line, sizeof line, "%-8s %-20s %8zu %10zu %9zu  ", to_string(r.id).c_str(),
                          to_string(r.status).c_str(), r.trials, r.violations.size(),
                          r.witnesses.size());
            out << line << (r.notes.empty() ? "" : r.notes.front()) << '\n';
        }
        out << (failed ? "FAILED" : "OK") << '\n';
    }
    return failed ? 1 : 0;
}

int cmd_witness(const Options &o, std::ostream &out) {
    const Format fmt = format_of(o);
    const OrliczFunction phi = parse_phi(o.phi);
    const PlanarNorm p = parse_planar_norm(o.p);
    if (o.n == 0 || o.n > 64)
        throw InputError("--n must lie in [1, 64]");

    LinfEmbeddingWitness w;
    if (o.mode == "exact")
        w = build_linf_witness(phi, o.n, ExactWitness{});
    else if (o.mode == "approximate" || o.mode == "approx")
        w = build_linf_witness(phi, o.n, ApproximateWitness{o.epsilon, o.eta, o.big_m});
    else
        throw InputError("--mode must be exact or approximate");
    const TheoremReport check = check_linf_witness(w, phi, p, o.samples, o.seed);

    if (fmt == Format::Csv) {
        // Weights underflow doubles for steep Phi, so they are given in log10.
        out << "element,atom,log10_weight,level\n";
        for (std::size_t j = 0; j < w.basis.size(); ++j)
            for (std::size_t a = 0; a < w.basis[j].size(); ++a)
                if (w.basis[j][a] != 0)
                    out << j << ',' << a << ','
                        << csv_num(static_cast<double>(std::log10(w.space->weight(a)))) << ','
                        << csv_num(w.basis[j][a]) << '\n';
        return check.passed() ? 0 : 1;
    }
    ordered_json j = header("witness", o);
    j["phi"] = phi.name();
    j["p"] = p.name();
    j["mode"] = w.exact ? "exact" : "approximate";
    j["n"] = w.n;
    j["epsilon"] = num(w.epsilon);
    j["eta"] = num(w.eta);
    ordered_json basis = ordered_json::array();
    for (std::size_t k = 0; k < w.basis.size(); ++k)
        for (std::size_t a = 0; a < w.basis[k].size(); ++a)
            if (w.basis[k][a] != 0)
                basis.push_back(
                    {{"element", k},
                     {"atom", a},
                     {"log10_weight", num(static_cast<double>(std::log10(w.space->weight(a))))},
                     {"level", num(w.basis[k][a])}});
    j["basis"] = std::move(basis);
    j["check"] = report_json(check);
    out << j.dump(2) << '\n';
    return check.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    Options o;
    CLI::App app{"Orlicz norms generated by planar lattice norms: evaluation and verification"};
    app.require_subcommand(1);

    auto common = [&](CLI::App *sub) {
        sub->add_option("--phi", o.phi, "Orlicz function (power:q, exp_minus, flat_then_power:a,q, pwl:u0,v0,...)");
        sub->add_option("--p", o.p, "planar lattice norm (l1, linf, lq:q, or JSON boundary samples)");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_flag("--csv", o.csv, "CSV output");
        sub->add_option("--out", o.out, "write output to FILE");
        sub->add_option("--config", o.config, "JSON config; command-line flags take precedence");
    };

    CLI::App *norm = app.add_subcommand("norm", "generated norm of a simple function");
    common(norm);
    norm->add_option("--space", o.space, "measure space (counting:N, weights:w1,w2,..., JSON)");
    norm->add_option("--values", o.values, "values on the atoms, e.g. 3,4");

    CLI::App *modulus = app.add_subcommand("modulus", "planar modulus of monotonicity table");
    common(modulus);
    modulus->add_option("--grid", o.grid, "epsilon grid: lo:hi:count, a list, or one value");
    modulus->add_option("--resolution", o.resolution, "grid resolution of the modulus search");

    CLI::App *verify = app.add_subcommand("verify", "run theorem suites");
    common(verify);
    verify->add_option("theorems", o.theorems, "theorem ids (T1 T2 L1 L2 T3..T9 R2 R3)");
    verify->add_flag("--all", o.all, "run every suite");
    verify->add_option("--space", o.space, "measure space (default counting:4)");
    verify->add_option("--budget", o.budget, "random trials per suite");
    verify->add_option("--tol", o.tol, "slack for norm comparisons");
    verify->add_option("--resolution", o.resolution, "modulus grid resolution");
    verify->add_option("--regime", o.regime, "Delta_2 regime: at_zero, at_infinity, global");

    CLI::App *witness = app.add_subcommand("witness", "build and check an l^inf embedding");
    common(witness);
    witness->add_option("--mode", o.mode, "exact or approximate");
    witness->add_option("--n", o.n, "number of basis elements");
    witness->add_option("--epsilon", o.epsilon, "approximate mode: upper distortion");
    witness->add_option("--eta", o.eta, "approximate mode: lower distortion");
    witness->add_option("--big-m", o.big_m, "approximate mode: modular blow-up constant");
    witness->add_option("--samples", o.samples, "random z checked");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        CLI::App *sub = app.get_subcommands().front();
        merge_config(*sub, o);
        std::ostringstream buffer;
        int code = 0;
        if (sub == norm)
            cmd_norm(o, buffer);
        else if (sub == modulus)
            cmd_modulus(o, buffer);
        else if (sub == verify)
            code = cmd_verify(o, buffer);
        else
            code = cmd_witness(o, buffer);

        if (o.out.empty()) {
            std::cout << buffer.str();
        } else {
            std::ofstream file(o.out, std::ios::binary);
            if (!file)
                throw InputError("cannot write '" + o.out + "'");
            file << buffer.str();
        }
        return code;
    } catch (const std::invalid_argument &e) {
        // InputError, PreconditionError and constructor rejections.
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
