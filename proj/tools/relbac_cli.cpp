// relbac — command-line front end for the relationship-based access-control
// engine. Loads the model/graph/policy/config documents, runs one subcommand,
// and (for mutating subcommands) writes the graph document back atomically.
//
// Exit codes: 0 success (or ALLOW for eval), 1 DENY for eval, 2 usage or
// document syntax errors, 3 validation errors (unknown nodes, malformed
// documents, bad configuration).

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relbac/audit.hpp"
#include "relbac/constraints.hpp"
#include "relbac/engine.hpp"
#include "relbac/errors.hpp"

namespace {

using namespace relbac;

/** Invocation problems: reported on stderr, exit code 2. */
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

struct DocPaths {
    std::string model;
    std::string graph;
    std::string policy;
    std::string config;
};

Engine load_engine(const DocPaths& paths) {
    return Engine::from_documents(
        read_file(paths.model), read_file(paths.graph), read_file(paths.policy),
        paths.config.empty() ? "" : read_file(paths.config));
}

std::string principal_list(const std::vector<std::string>& ps) {
    std::string out = "[";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ",";
        out += ps[i];
    }
    return out + "]";
}

std::string result_line(const EvalOutcome& out, bool metrics) {
    std::ostringstream line;
    line << (out.decision == Decision::Allow ? "ALLOW" : "DENY")
         << " mp=" << principal_list(out.matched_principals)
         << " cached=" << (out.cache_hit ? "true" : "false");
    if (metrics)
        line << " n=" << out.metrics.nodes_visited
             << " e=" << out.metrics.edges_considered;
    return line.str();
}

/** Re-runs every matching rule independently and prints the trail. */
void print_explain(const Engine& eng, const Request& req, const EvalOutcome& out) {
    const auto& pm = eng.policies().pm;
    std::cout << "# matching (" << to_string(eng.config().pms) << ")\n";
    for (std::size_t i = 0; i < pm.rules.size(); ++i) {
        const auto& rule = pm.rules[i];
        bool matched = true;
        std::string text = "default";
        if (!rule.is_default()) {
            text = render(rule.condition);
            EvalMetrics scratch;
            matched = satisfies(eng.graph(), req.subject, req.object, rule.condition,
                                scratch);
        }
        std::cout << "#   [" << i + 1 << "] " << text << " -> " << rule.principal
                  << " : " << (matched ? "match" : "no match") << "\n";
    }
    std::cout << "# principals: " << principal_list(out.matched_principals) << "\n";
    std::cout << "# authorization (" << to_string(eng.config().crs) << ", default "
              << to_string(eng.config().default_decision) << ")\n";
    const auto& auth = eng.policies().auth;
    for (std::size_t i = 0; i < auth.rules.size(); ++i) {
        const auto& rule = auth.rules[i];
        bool applicable = false;
        for (const auto& p : out.matched_principals)
            applicable = applicable || rule.applies_to(p, req.object, req.action);
        std::cout << "#   [" << i + 1 << "] " << rule.principal << " " << rule.object
                  << " " << rule.action << " " << to_string(rule.decision) << " : "
                  << (applicable ? "applicable" : "not applicable") << "\n";
    }
    std::cout << "# decision set: {";
    bool first = true;
    for (int bit : out.decision_set) {
        if (!first) std::cout << ",";
        std::cout << bit;
        first = false;
    }
    std::cout << "}\n";
}

void write_back(const DocPaths& paths, const Engine& eng, bool dry_run) {
    if (!dry_run) write_file_atomic(paths.graph, serialize_graph(eng.graph()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relationship-based access-control engine"};
    app.set_version_flag("--version", "relbac 0.1.0");
    app.require_subcommand(1);

    DocPaths paths;
    app.add_option("--model", paths.model, "system model document")->required();
    app.add_option("--graph", paths.graph, "system graph document")->required();
    app.add_option("--policy", paths.policy, "policy document");
    app.add_option("--config", paths.config, "engine configuration document");

    // --- check ---------------------------------------------------------
    auto* check = app.add_subcommand("check", "validate the loaded documents");

    // --- eval ----------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate one access request");
    Request req;
    bool no_cache = false, metrics = false, explain = false, dry_run = false;
    eval->add_option("--subject", req.subject)->required();
    eval->add_option("--object", req.object)->required();
    eval->add_option("--action", req.action)->required();
    eval->add_flag("--no-cache", no_cache, "bypass the caching edges");
    eval->add_flag("--metrics", metrics, "report matching work");
    eval->add_flag("--explain", explain, "print the rule-by-rule trail");
    eval->add_flag("--dry-run", dry_run, "do not write the graph back");

    // --- batch ---------------------------------------------------------
    auto* batch = app.add_subcommand("batch", "evaluate requests from a file");
    std::string batch_file;
    batch->add_option("file", batch_file, "one `subject object action` per line")
        ->required();
    batch->add_flag("--no-cache", no_cache, "bypass the caching edges");
    batch->add_flag("--metrics", metrics, "report matching work");
    batch->add_flag("--dry-run", dry_run, "do not write the graph back");

    // --- precache ------------------------------------------------------
    auto* precache = app.add_subcommand("precache", "compute caching edges ahead of time");
    std::string pc_mode;
    std::size_t pc_budget = 0, pc_recent_k = 0;
    std::string pc_targets, pc_objects, pc_subjects, pc_seed;
    precache->add_option("mode", pc_mode, "subject|object")
        ->required()
        ->check(CLI::IsMember({"subject", "object"}));
    precache->add_option("--budget", pc_budget, "max pairs to evaluate")->required();
    precache->add_option("--recent-k", pc_recent_k, "recent subjects to use");
    precache->add_option("--targets", pc_targets, "subject mode: objects, comma-separated");
    precache->add_option("--objects", pc_objects, "object mode: objects, comma-separated");
    precache->add_option("--subjects", pc_subjects, "object mode: subjects, comma-separated");
    precache->add_option("--seed-recent", pc_seed,
                         "subjects to treat as recently active, most recent first");
    precache->add_flag("--dry-run", dry_run, "do not write the graph back");

    // --- purge ---------------------------------------------------------
    auto* purge = app.add_subcommand("purge", "remove every caching edge");
    purge->add_flag("--dry-run", dry_run, "do not write the graph back");

    // --- gen -----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a constrained policy");
    gen->require_subcommand(1);
    std::string out_file;

    auto* gen_sod = gen->add_subcommand(
        "sod", "separation-of-duty: split constrained actions across users");
    std::string sod_mode = "general", sod_object, sod_actions, sod_principals;
    gen_sod->add_option("--mode", sod_mode, "general|basic")
        ->check(CLI::IsMember({"general", "basic"}));
    gen_sod->add_option("--object", sod_object, "constrained object")->required();
    gen_sod->add_option("--actions", sod_actions, "constrained actions, comma-separated")
        ->required();
    gen_sod->add_option("--principals", sod_principals,
                        "fresh principal names, comma-separated")
        ->required();
    gen_sod->add_option("--out", out_file, "write the policy here instead of stdout");

    auto* gen_cw = gen->add_subcommand(
        "cw", "conflict-of-interest wall over the configured data paths");
    std::string cw_principal;
    gen_cw->add_option("--principal", cw_principal, "fresh principal name")->required();
    gen_cw->add_option("--out", out_file, "write the policy here instead of stdout");

    // --- dump / audit-log ---------------------------------------------
    auto* dump = app.add_subcommand("dump", "print the normalized graph document");
    bool no_overlay = false;
    dump->add_flag("--no-overlay", no_overlay,
                   "omit caching, decision and interest edges");
    auto* audit_log = app.add_subcommand("audit-log", "print the decision-audit log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) {
            if (paths.policy.empty())
                throw UsageError("check needs --policy");
            Engine eng = load_engine(paths);
            auto problems = eng.validate();
            for (const auto& p : problems) std::cout << p << "\n";
            return problems.empty() ? 0 : 3;
        }

        if (*eval) {
            if (paths.policy.empty()) throw UsageError("eval needs --policy");
            Engine eng = load_engine(paths);
            EvalOutcome out = eng.evaluate(req, !no_cache);
            if (explain) print_explain(eng, req, out);
            std::cout << result_line(out, metrics) << "\n";
            write_back(paths, eng, dry_run);
            return out.decision == Decision::Allow ? 0 : 1;
        }

        if (*batch) {
            if (paths.policy.empty()) throw UsageError("batch needs --policy");
            Engine eng = load_engine(paths);
            std::istringstream in(read_file(batch_file));
            std::string line;
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                std::istringstream fields(line);
                Request r;
                if (!(fields >> r.subject)) continue;  // blank line
                if (r.subject[0] == '#') continue;
                std::string extra;
                if (!(fields >> r.object >> r.action) || (fields >> extra))
                    throw ParseError("expected: subject object action", lineno, 1);
                EvalOutcome out = eng.evaluate(r, !no_cache);
                std::cout << r.subject << " " << r.object << " " << r.action << " "
                          << result_line(out, metrics) << "\n";
            }
            write_back(paths, eng, dry_run);
            return 0;
        }

        if (*precache) {
            if (paths.policy.empty())
                throw UsageError("precache needs --policy");
            Engine eng = load_engine(paths);
            std::size_t inserted = 0;
            if (pc_mode == "subject") {
                auto seed = split_csv(pc_seed);
                for (auto it = seed.rbegin(); it != seed.rend(); ++it)
                    eng.record_recent_subject(*it);
                inserted = eng.precache(
                    SubjectFocusedPrecache{pc_recent_k, split_csv(pc_targets)},
                    pc_budget);
            } else {
                inserted = eng.precache(
                    ObjectFocusedPrecache{split_csv(pc_objects), split_csv(pc_subjects)},
                    pc_budget);
            }
            std::cout << "cached " << inserted << "\n";
            write_back(paths, eng, dry_run);
            return 0;
        }

        if (*purge) {
            if (paths.policy.empty()) throw UsageError("purge needs --policy");
            Engine eng = load_engine(paths);
            std::cout << "purged " << eng.purge_cache() << "\n";
            write_back(paths, eng, dry_run);
            return 0;
        }

        if (*gen) {
            if (paths.policy.empty()) throw UsageError("gen needs --policy");
            PolicyPair base = parse_policy(read_file(paths.policy));
            PolicyPair generated;
            if (*gen_sod) {
                SodSpec spec;
                spec.mode = sod_mode == "basic" ? SodSpec::Mode::Basic
                                                : SodSpec::Mode::General;
                spec.object = sod_object;
                spec.actions = split_csv(sod_actions);
                spec.principals = split_csv(sod_principals);
                generated = generate_sod(base, spec);
            } else {
                if (paths.config.empty())
                    throw UsageError("gen cw needs --config for the wall settings");
                EngineConfig cfg = parse_config(read_file(paths.config));
                generated = generate_chinese_wall(base, cfg.cw, cw_principal);
            }
            std::string text = serialize_policy(generated);
            if (out_file.empty())
                std::cout << text;
            else
                write_file_atomic(out_file, text);
            return 0;
        }

        if (*dump) {
            SystemModel model = parse_model(read_file(paths.model));
            SystemGraph graph = parse_graph(read_file(paths.graph), model);
            std::cout << serialize_graph(graph, !no_overlay);
            return 0;
        }

        if (*audit_log) {
            SystemModel model = parse_model(read_file(paths.model));
            SystemGraph graph = parse_graph(read_file(paths.graph), model);
            for (const auto& entry : export_audit_log(graph))
                std::cout << entry.to_string() << "\n";
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownNodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const WellFormednessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NameCollisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
