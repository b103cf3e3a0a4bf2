#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "torussym/analyzer.hpp"
#include "torussym/json_io.hpp"

using namespace torussym;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedDomain {
    DomainSpec spec;
    std::string config_hash;
};

LoadedDomain load_domain(const std::string& path) {
    std::string text = slurp(path);
    return {parse_domain_config(text), content_hash(text)};
}

// "1,0;0,1" -> columns of A (column-major; each semicolon group is one column)
TorusAction parse_action(const std::string& text, int n) {
    std::vector<std::vector<std::int64_t>> cols;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<std::int64_t> col;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            size_t pos = 0;
            long long v;
            try {
                v = std::stoll(item, &pos);
            } catch (const std::exception&) {
                throw CliError("bad action entry '" + item + "'");
            }
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw CliError("bad action entry '" + item + "'");
            col.push_back(v);
        }
        if (static_cast<int>(col.size()) != n)
            throw CliError("action column has " + std::to_string(col.size()) +
                           " entries, domain dimension is " + std::to_string(n));
        cols.push_back(std::move(col));
    }
    if (cols.empty()) throw CliError("empty action");
    return TorusAction(n, std::move(cols));
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        atomic_write_file(out_path, content);
}

nlohmann::ordered_json envelope(const std::string& command, const std::string& config_hash,
                                std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    return j;
}

std::string csv_preamble(const std::string& command, const std::string& config_hash,
                         std::uint64_t seed, std::int64_t budget) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "# tool_version=%s command=%s config_hash=%s seed=%llu budget=%lld\n",
                  kToolVersion, command.c_str(), config_hash.c_str(),
                  static_cast<unsigned long long>(seed), static_cast<long long>(budget));
    return buf;
}

nlohmann::ordered_json witnesses_json(const InvarianceCheck& chk) {
    auto pt = [](const Point& z) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Complex& c : z) {
            nlohmann::ordered_json e;
            e["re"] = c.real();
            e["im"] = c.imag();
            arr.push_back(std::move(e));
        }
        return arr;
    };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& w : chk.witnesses) {
        nlohmann::ordered_json e;
        e["z"] = pt(w.z);
        e["lambda"] = pt(w.lambda);
        e["image"] = pt(w.image);
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torus symmetry detection from Bergman-space moment data"};
    app.require_subcommand(1);

    std::string domain_path, out_path, method_name = "auto", action_text;
    int degree = -1, terms = 40, coord = 1;
    std::int64_t budget = 2000000, samples = 100000;
    std::uint64_t seed = 0;
    double policy_abstol = -1.0, policy_sigma = -1.0;
    bool as_json = false, as_csv = false;

    auto add_common = [&](CLI::App* sub, bool needs_domain = true) {
        auto* d = sub->add_option("--domain", domain_path, "domain config file");
        if (needs_domain) d->required();
        sub->add_option("--seed", seed, "random seed (echoed in outputs)");
        sub->add_option("--out", out_path, "output path (stdout when omitted)");
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full symmetry report");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--degree", degree, "degree bound N (default by dimension)");
    analyze_cmd->add_option("--method", method_name, "auto|mc|quad")
        ->check(CLI::IsMember({"auto", "mc", "quad"}));
    analyze_cmd->add_option("--budget", budget, "moment sample/evaluation budget");
    analyze_cmd->add_option("--terms", terms, "determinacy series length K");
    analyze_cmd->add_option("--policy-abstol", policy_abstol, "absolute zero threshold");
    analyze_cmd->add_option("--policy-sigma", policy_sigma, "sigma multiple for nonzero calls");

    CLI::App* moments_cmd = app.add_subcommand("moments", "moment matrix only");
    add_common(moments_cmd);
    moments_cmd->add_option("--degree", degree, "degree bound N (default by dimension)");
    moments_cmd->add_option("--method", method_name, "auto|mc|quad")
        ->check(CLI::IsMember({"auto", "mc", "quad"}));
    moments_cmd->add_option("--budget", budget, "moment sample/evaluation budget");

    CLI::App* cond_cmd = app.add_subcommand("condition-d", "determinacy series for one coordinate");
    add_common(cond_cmd);
    cond_cmd->add_option("--k", coord, "coordinate index, 1-based")->check(CLI::PositiveNumber);
    cond_cmd->add_option("--terms", terms, "series length K");
    cond_cmd->add_option("--method", method_name, "auto|mc|quad")
        ->check(CLI::IsMember({"auto", "mc", "quad"}));
    cond_cmd->add_option("--budget", budget, "per-term sample budget");
    cond_cmd->add_flag("--json", as_json, "emit JSON instead of CSV");
    cond_cmd->add_flag("--csv", as_csv, "emit CSV (default)");

    CLI::App* inv_cmd = app.add_subcommand("verify-invariance", "sampled invariance check");
    add_common(inv_cmd);
    inv_cmd->add_option("--action", action_text, "weight matrix, column-major, e.g. \"1,0;0,1\"")
        ->required();
    inv_cmd->add_option("--samples", samples, "sample count");

    CLI::App* star_cmd = app.add_subcommand("check-complete-reinhardt",
                                            "polydisk-multiplier star-shapedness probe");
    add_common(star_cmd);
    star_cmd->add_option("--samples", samples, "sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    LoadedDomain dom{DomainSpec::ball(2, 1.0), ""};
    try {
        dom = load_domain(domain_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        if (degree < 0) degree = default_degree_bound(dom.spec.dimension());
        MethodRequest method = method_request_from_name(method_name);

        if (analyze_cmd->parsed()) {
            AnalyzeBudgets budgets;
            budgets.gram_budget = budget;
            budgets.condition_terms = terms;
            std::optional<DecisionPolicy> policy;
            if (policy_abstol >= 0.0 || policy_sigma >= 0.0) {
                DecisionPolicy p;
                if (policy_abstol >= 0.0) p.abs_tol = policy_abstol;
                if (policy_sigma >= 0.0) p.sigma_factor = policy_sigma;
                policy = p;
            }
            SymmetryReport rep = analyze(dom.spec, degree, budgets, policy, method, seed);
            nlohmann::ordered_json j = rep.to_json();
            j["config_hash"] = dom.config_hash;
            emit(out_path, dump_json(j));
        } else if (moments_cmd->parsed()) {
            GramData g = gram(dom.spec, degree, method, budget, seed);
            nlohmann::ordered_json j = envelope("moments", dom.config_hash, seed);
            j["budgets"]["gram"] = budget;
            j["gram"] = g.to_json();
            emit(out_path, dump_json(j));
        } else if (cond_cmd->parsed()) {
            NormSequence seq = norm_sequence(dom.spec, coord, terms, method, budget, seed);
            CoordinateReport rep =
                condition_d_verdict(seq, dom.spec.coordinate_bounded(coord - 1));
            if (as_json) {
                nlohmann::ordered_json j = envelope("condition-d", dom.config_hash, seed);
                j["budgets"]["condition"] = budget;
                j["coordinate"] = coord;
                j["terms"] = terms;
                j["source"] = norm_source_name(seq.source);
                j["verdict"] = coordinate_verdict_name(rep.verdict);
                if (rep.fitted_exponent) {
                    j["fitted_exponent"] = *rep.fitted_exponent;
                    j["exponent_std_error"] = rep.exponent_std_error;
                }
                emit(out_path, dump_json(j));
            } else {
                std::string csv = csv_preamble("condition-d", dom.config_hash, seed, budget);
                char line[160];
                std::snprintf(line, sizeof(line), "# coordinate=%d verdict=%s", coord,
                              coordinate_verdict_name(rep.verdict).c_str());
                csv += line;
                if (rep.fitted_exponent) {
                    std::snprintf(line, sizeof(line), " fitted_exponent=%.17g", *rep.fitted_exponent);
                    csv += line;
                }
                csv += "\n";
                csv += norm_sequence_csv(seq);
                emit(out_path, csv);
            }
        } else if (inv_cmd->parsed()) {
            TorusAction A = parse_action(action_text, dom.spec.dimension());
            InvarianceCheck chk =
                verify_invariance(dom.spec, A, static_cast<std::uint64_t>(samples), seed);
            nlohmann::ordered_json j = envelope("verify-invariance", dom.config_hash, seed);
            j["budgets"]["samples"] = samples;
            j["action"] = torus_action_to_json(A);
            j["violation_rate"] = chk.violation_rate;
            j["witnesses"] = witnesses_json(chk);
            emit(out_path, dump_json(j));
        } else if (star_cmd->parsed()) {
            InvarianceCheck chk =
                check_complete_reinhardt(dom.spec, static_cast<std::uint64_t>(samples), seed);
            nlohmann::ordered_json j = envelope("check-complete-reinhardt", dom.config_hash, seed);
            j["budgets"]["samples"] = samples;
            j["violation_rate"] = chk.violation_rate;
            j["witnesses"] = witnesses_json(chk);
            emit(out_path, dump_json(j));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CliError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::ordered_json j = envelope(app.get_subcommands().empty()
                                                ? "?"
                                                : app.get_subcommands()[0]->get_name(),
                                            dom.config_hash, seed);
        j["error"] = e.what();
        emit(out_path, dump_json(j));
        std::cerr << "analysis error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
