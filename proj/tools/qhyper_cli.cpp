/** @file qhyper_cli.cpp
 *
 *  Command-line interface: list the identity catalogue, verify
 *  identities or DSL documents, expand a registered side as a canonical
 *  series, and replay the classical proof chains.
 *
 *  Exit codes: 0 pass, 1 verification failure, 2 usage or mode error,
 *  3 infrastructure error (pole, non-convergence, unsatisfiable
 *  constraints).
 */
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhyper/dsl.hpp"
#include "qhyper/verify.hpp"

namespace {

using namespace qhyper;

struct CommonOpts {
    int order = -1;
    long samples = 5;
    uint64_t seed = 42;
    double tol = 1e-10;
    std::string format = "text";
};

/// key=value defaults, one per line; '#' starts a comment.
void load_config(const std::string& path, CommonOpts& o) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](const std::string& s) {
            size_t b = s.find_first_not_of(" \t");
            size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "order") o.order = std::stoi(val);
        else if (key == "samples") o.samples = std::stol(val);
        else if (key == "seed") o.seed = std::stoull(val);
        else if (key == "tol") o.tol = std::stod(val);
        else if (key == "format") o.format = val;
        else throw Error("unknown config key '" + key + "'");
    }
}

ParameterAssignment parse_param_flags(const std::vector<std::string>& defs) {
    ParameterAssignment p;
    for (const auto& def : defs) {
        auto eq = def.find('=');
        if (eq == std::string::npos)
            throw Error("--param expects name=value, got '" + def + "'");
        p.set(def.substr(0, eq), Rational::parse(def.substr(eq + 1)));
    }
    return p;
}

void emit_reports(const std::vector<VerificationReport>& reports, const std::string& format) {
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        std::cout << arr.dump(2) << "\n";
        return;
    }
    for (const auto& r : reports) std::cout << r.text() << "\n";
}

int run_verify(const std::string& identity, const std::string& file, bool numeric,
               const std::vector<std::string>& params, const CommonOpts& o) {
    std::vector<VerificationReport> reports;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw Error("cannot open '" + file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        reports.push_back(dsl::evaluate(dsl::parse(buf.str())));
    } else {
        const auto& d = find_identity(identity);
        bool run_numeric = numeric || d.mode == IdentityMode::numeric;
        if (run_numeric && d.mode == IdentityMode::formal)
            throw ModeViolation("identity '" + identity + "' is formal-only");
        int order = o.order > 0 ? o.order : d.default_order;
        std::vector<ParameterAssignment> samples;
        if (!params.empty())  // explicit parameter/point flags replace sampling
            samples.push_back(parse_param_flags(params));
        else
            samples = sample_parameters(identity, o.seed, o.samples);
        for (size_t i = 0; i < samples.size(); ++i) {
            VerificationReport r = run_numeric ? verify_numeric(identity, samples[i], o.tol)
                                               : verify_formal(identity, samples[i], order);
            r.seed = o.seed;
            r.sample_index = params.empty() ? static_cast<int>(i) : -1;
            reports.push_back(std::move(r));
        }
    }
    emit_reports(reports, o.format);
    for (const auto& r : reports)
        if (!r.passed()) return 1;
    return 0;
}

int run_expand(const std::string& identity, const std::string& side,
               const std::vector<std::string>& params, const CommonOpts& o) {
    const auto& d = find_identity(identity);
    int order = o.order > 0 ? o.order : d.default_order;
    ParameterAssignment p = parse_param_flags(params);
    if (p.values().empty()) p = sample_parameters(identity, o.seed, 1).front();
    SeriesQ s = build_formal_side(identity, side, p, order);
    if (o.format == "json") {
        nlohmann::json j;
        j["identity"] = identity;
        j["side"] = side;
        j["order"] = order;
        nlohmann::json pj = nlohmann::json::object();
        for (const auto& [k, v] : p.values()) pj[k] = v.num().get_str() + "/" + v.den().get_str();
        j["parameters"] = pj;
        j["series"] = s.str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# " << identity << "/" << side << " at " << p.str() << ", order " << order
                  << "\n" << s.str() << "\n";
    }
    return 0;
}

int run_replay(const std::string& variant, const std::string& xyz,
               const std::vector<std::string>& params, const CommonOpts& o) {
    GgrVariant v;
    if (variant == "ggr1") v = GgrVariant::ggr1;
    else if (variant == "ggr2") v = GgrVariant::ggr2;
    else throw ModeViolation("--variant must be ggr1 or ggr2");
    long X, Y, Z;
    if (std::sscanf(xyz.c_str(), "%ld,%ld,%ld", &X, &Y, &Z) != 3)
        throw Error("--xyz expects X,Y,Z");
    ParameterAssignment p = parse_param_flags(params);
    if (p.values().empty()) p = sample_parameters("ggr", o.seed, 1).front();
    ProofTrace tr = replay_proof(v, p, X, Y, Z);
    if (o.format == "json") {
        nlohmann::json j;
        j["variant"] = variant;
        j["X"] = X;
        j["Y"] = Y;
        j["Z"] = Z;
        nlohmann::json pj = nlohmann::json::object();
        for (const auto& [k, val] : p.values())
            pj[k] = val.num().get_str() + "/" + val.den().get_str();
        j["parameters"] = pj;
        nlohmann::json stages = nlohmann::json::array();
        for (size_t i = 0; i < tr.stages.size(); ++i)
            stages.push_back({{"stage", tr.stages[i].first},
                              {"value", tr.stages[i].second.num().get_str() + "/" +
                                            tr.stages[i].second.den().get_str()},
                              {"equal", static_cast<bool>(tr.stage_equal[i])}});
        j["stages"] = stages;
        j["pass"] = tr.pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << tr.text() << "\n";
    }
    return tr.pass ? 0 : 1;
}

int run_list(const CommonOpts& o) {
    if (o.format == "json") {
        std::cout << catalogue_json().dump(2) << "\n";
        return 0;
    }
    for (const auto& [id, d] : identity_registry()) {
        std::cout << id << "  [" << mode_str(d.mode) << "]";
        if (d.numeric_expected_fail) std::cout << "  (numeric: expected-fail demonstration)";
        std::cout << "\n    " << d.anchor << "\n    constraints: " << d.constraints << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numeric verification of classical and basic hypergeometric "
                 "identities"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string config;
    app.add_option("--config", config, "key=value defaults file");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--order", opts.order, "truncation order (formal mode)");
        cmd->add_option("--samples", opts.samples, "number of seeded parameter samples");
        cmd->add_option("--seed", opts.seed, "sampling seed");
        cmd->add_option("--tol", opts.tol, "numeric tolerance");
        cmd->add_option("--format", opts.format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* list_cmd = app.add_subcommand("list", "catalogue of registered identities");
    add_common(list_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "verify an identity or a DSL document");
    std::string identity, file;
    bool numeric = false;
    std::vector<std::string> vf_params;
    verify_cmd->add_option("--identity", identity, "registered identity id");
    verify_cmd->add_option("--file", file, "DSL comparison document");
    verify_cmd->add_flag("--numeric", numeric, "numeric point comparison instead of formal");
    verify_cmd->add_option("--param", vf_params,
                           "name=value parameter or point binding (repeatable; replaces "
                           "sampling)");
    add_common(verify_cmd);

    auto* expand_cmd = app.add_subcommand("expand", "print a side as a canonical series");
    std::string ex_identity, ex_side;
    std::vector<std::string> ex_params;
    expand_cmd->add_option("--identity", ex_identity, "identity id")->required();
    expand_cmd->add_option("--side", ex_side, "side name")->required();
    expand_cmd->add_option("--param", ex_params, "name=value (repeatable)");
    add_common(expand_cmd);

    auto* replay_cmd = app.add_subcommand("replay", "replay a classical reduction chain");
    std::string variant = "ggr1", xyz = "1,1,1";
    std::vector<std::string> rp_params;
    replay_cmd->add_option("--variant", variant, "ggr1|ggr2");
    replay_cmd->add_option("--xyz", xyz, "X,Y,Z");
    replay_cmd->add_option("--param", rp_params, "name=value (repeatable)");
    add_common(replay_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config.empty()) load_config(config, opts);
        if (app.got_subcommand(list_cmd)) return run_list(opts);
        if (app.got_subcommand(verify_cmd)) {
            if (identity.empty() == file.empty()) {
                std::cerr << "verify needs exactly one of --identity or --file\n";
                return 2;
            }
            return run_verify(identity, file, numeric, vf_params, opts);
        }
        if (app.got_subcommand(expand_cmd)) return run_expand(ex_identity, ex_side, ex_params, opts);
        if (app.got_subcommand(replay_cmd)) return run_replay(variant, xyz, rp_params, opts);
        return 2;
    } catch (const ModeViolation& e) {
        std::cerr << "mode error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownIdentity& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UndeclaredSymbol& e) {
        std::cerr << "document error: " << e.what() << "\n";
        return 2;
    } catch (const ArityError& e) {
        std::cerr << "document error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
