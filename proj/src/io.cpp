#include "relbac/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "relbac/errors.hpp"

namespace relbac {

namespace {

/** Strips a trailing comment and surrounding whitespace. */
std::string clean_line(const std::string& raw) {
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto is_ws = [](unsigned char c) { return std::isspace(c); };
    while (!line.empty() && is_ws(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_ws(line[start])) ++start;
    return line.substr(start);
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/** Runs `fn` per meaningful line, reporting the 1-based line number. */
template <typename Fn>
void for_each_line(const std::string& text, Fn fn) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        fn(lineno, line);
    }
}

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
    throw ParseError(msg, lineno, 1);
}

std::vector<std::string> parse_principal_list(std::size_t lineno, const std::string& tok) {
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
        fail(lineno, "expected a principal list like [p1,p2]");
    std::string body = tok.substr(1, tok.size() - 2);
    if (body.empty()) return {};
    std::vector<std::string> out;
    for (const auto& piece : split_on(body, ',')) {
        std::string p = trim(piece);
        if (p.empty()) fail(lineno, "empty principal in list");
        out.push_back(p);
    }
    return out;
}

}  // namespace

SystemModel parse_model(const std::string& text) {
    SystemModel model;
    for_each_line(text, [&](std::size_t lineno, const std::string& line) {
        auto tok = split_ws(line);
        if (tok[0] == "type") {
            if (tok.size() != 2) fail(lineno, "expected: type <name>");
            model.types.insert(tok[1]);
        } else if (tok[0] == "label") {
            if (tok.size() == 2) {
                model.labels.insert(tok[1]);
            } else if (tok.size() == 3 && tok[2] == "symmetric") {
                model.labels.insert(tok[1]);
                model.symmetric.insert(tok[1]);
            } else {
                fail(lineno, "expected: label <name> [symmetric]");
            }
        } else if (tok[0] == "perm") {
            if (tok.size() != 4) fail(lineno, "expected: perm <type> <label> <type>");
            // Declaration before use keeps the error next to the typo.
            if (!model.has_type(tok[1]))
                throw WellFormednessError("line " + std::to_string(lineno) +
                                          ": unknown type " + tok[1]);
            if (!model.has_label(tok[2]))
                throw WellFormednessError("line " + std::to_string(lineno) +
                                          ": unknown label " + tok[2]);
            if (!model.has_type(tok[3]))
                throw WellFormednessError("line " + std::to_string(lineno) +
                                          ": unknown type " + tok[3]);
            model.permissible.insert({tok[1], tok[3], tok[2]});
        } else {
            fail(lineno, "unknown model directive: " + tok[0]);
        }
    });
    return model;
}

SystemGraph parse_graph(const std::string& text, const SystemModel& model) {
    SystemGraph graph(model);
    for_each_line(text, [&](std::size_t lineno, const std::string& line) {
        auto tok = split_ws(line);
        try {
            if (tok[0] == "node") {
                if (tok.size() != 4 || tok[2] != ":")
                    fail(lineno, "expected: node <id> : <type>");
                if (!model.has_type(tok[3]))
                    throw WellFormednessError("unknown type " + tok[3]);
                graph.add_node(tok[1], tok[3]);
            } else if (tok[0] == "edge") {
                if (tok.size() != 4) fail(lineno, "expected: edge <src> <label> <dst>");
                graph.add_edge(tok[1], tok[3], EdgeKind::Relationship,
                               EdgeLabel::rel(tok[2]));
            } else if (tok[0] == "cached") {
                if (tok.size() != 4)
                    fail(lineno, "expected: cached <src> <dst> [p1,p2,...]");
                graph.add_edge(tok[1], tok[2], EdgeKind::Caching,
                               EdgeLabel::cached(parse_principal_list(lineno, tok[3])));
            } else if (tok[0] == "decision") {
                if (tok.size() != 5 || (tok[3] != "allow" && tok[3] != "deny"))
                    fail(lineno, "expected: decision <src> <dst> allow|deny <action>");
                graph.add_edge(tok[1], tok[2], EdgeKind::DecisionAudit,
                               tok[3] == "allow" ? EdgeLabel::allow_audit(tok[4])
                                                 : EdgeLabel::deny_audit(tok[4]));
            } else if (tok[0] == "interest") {
                if (tok.size() != 4 || (tok[2] != "active" && tok[2] != "blocked"))
                    fail(lineno, "expected: interest <src> active|blocked <dst>");
                graph.add_edge(tok[1], tok[3], EdgeKind::InterestAudit,
                               tok[2] == "active" ? EdgeLabel::active_interest()
                                                  : EdgeLabel::blocked_interest());
            } else {
                fail(lineno, "unknown graph directive: " + tok[0]);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw WellFormednessError("line " + std::to_string(lineno) + ": " +
                                      e.what());
        }
    });
    return graph;
}

PolicyPair parse_policy(const std::string& text) {
    PolicyPair out;
    bool saw_default = false;
    for_each_line(text, [&](std::size_t lineno, const std::string& line) {
        auto tok = split_ws(line);
        if (tok[0] == "pm") {
            auto arrow = line.find("->");
            if (arrow == std::string::npos)
                fail(lineno, "expected: pm <path-expr> -> <principal>");
            std::string expr = trim(line.substr(2, arrow - 2));
            std::string principal = trim(line.substr(arrow + 2));
            if (principal.empty() || principal.find(' ') != std::string::npos)
                fail(lineno, "expected a single principal after ->");
            if (expr.empty()) fail(lineno, "expected a path expression before ->");
            if (saw_default)
                throw WellFormednessError("line " + std::to_string(lineno) +
                                          ": default matching rule must be last");
            if (expr == "default") {
                out.pm.rules.push_back({nullptr, principal});
                saw_default = true;
            } else {
                try {
                    out.pm.rules.push_back({parse_path(expr), principal});
                } catch (const ParseError& e) {
                    fail(lineno, std::string("bad path expression: ") + e.what());
                }
            }
        } else if (tok[0] == "auth") {
            if (tok.size() != 5 || (tok[4] != "allow" && tok[4] != "deny"))
                fail(lineno, "expected: auth <principal> <object|*> <action|*> allow|deny");
            out.auth.rules.push_back({tok[1], tok[2], tok[3],
                                      tok[4] == "allow" ? Decision::Allow
                                                        : Decision::Deny});
        } else {
            fail(lineno, "unknown policy directive: " + tok[0]);
        }
    });
    return out;
}

namespace {

template <typename T>
T parse_enum(std::size_t lineno, const std::string& value,
             std::initializer_list<std::pair<const char*, T>> options) {
    for (const auto& [name, v] : options)
        if (value == name) return v;
    std::string expected;
    for (const auto& [name, _] : options) {
        if (!expected.empty()) expected += "|";
        expected += name;
    }
    fail(lineno, "expected one of " + expected + ", got " + value);
}

bool parse_bool(std::size_t lineno, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    fail(lineno, "expected true|false, got " + value);
}

std::size_t parse_count(std::size_t lineno, const std::string& value) {
    // stoull would accept a leading minus sign and wrap around.
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        fail(lineno, "expected a non-negative integer, got " + value);
    try {
        return static_cast<std::size_t>(std::stoull(value));
    } catch (const std::exception&) {
        fail(lineno, "expected a non-negative integer, got " + value);
    }
}

}  // namespace

EngineConfig parse_config(const std::string& text) {
    EngineConfig cfg;
    for_each_line(text, [&](std::size_t lineno, const std::string& line) {
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected: key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(lineno, "expected: key = value");

        if (key == "pms") {
            cfg.pms = parse_enum<MatchingStrategy>(
                lineno, value,
                {{"AllMatch", MatchingStrategy::AllMatch},
                 {"FirstMatch", MatchingStrategy::FirstMatch}});
        } else if (key == "crs") {
            cfg.crs = parse_enum<ResolutionStrategy>(
                lineno, value,
                {{"DenyOverride", ResolutionStrategy::DenyOverride},
                 {"AllowOverride", ResolutionStrategy::AllowOverride},
                 {"FirstMatch", ResolutionStrategy::FirstMatch}});
        } else if (key == "default_decision") {
            cfg.default_decision = parse_enum<Decision>(
                lineno, value, {{"allow", Decision::Allow}, {"deny", Decision::Deny}});
        } else if (key == "cache.enabled") {
            cfg.cache.enabled = parse_bool(lineno, value);
        } else if (key == "cache.write_on_eval") {
            cfg.cache.write_on_eval = parse_bool(lineno, value);
        } else if (key == "cache.invalidation") {
            cfg.cache.invalidation = parse_enum<InvalidationMode>(
                lineno, value,
                {{"FlushAll", InvalidationMode::FlushAll},
                 {"ScopedBySubject", InvalidationMode::ScopedBySubject}});
        } else if (key == "cache.max_total") {
            cfg.cache.max_total = parse_count(lineno, value);
        } else if (key == "cache.max_out_degree") {
            cfg.cache.max_out_degree = parse_count(lineno, value);
        } else if (key == "cache.retirement_age") {
            cfg.cache.retirement_age = parse_count(lineno, value);
        } else if (key == "cw.enabled") {
            cfg.cw.enabled = parse_bool(lineno, value);
        } else if (key == "cw.member_label") {
            cfg.cw.member_label = value;
        } else if (key == "cw.paths") {
            cfg.cw.data_paths.clear();
            for (const auto& piece : split_on(value, ';')) {
                std::string expr = trim(piece);
                if (expr.empty()) fail(lineno, "empty path expression in cw.paths");
                try {
                    cfg.cw.data_paths.push_back(parse_path(expr));
                } catch (const ParseError& e) {
                    fail(lineno, std::string("bad path expression: ") + e.what());
                }
            }
        } else {
            fail(lineno, "unknown configuration key: " + key);
        }
    });
    return cfg;
}

std::string serialize_model(const SystemModel& model) {
    std::ostringstream out;
    for (const auto& t : model.types) out << "type " << t << "\n";
    for (const auto& l : model.labels) {
        out << "label " << l;
        if (model.is_symmetric(l)) out << " symmetric";
        out << "\n";
    }
    for (const auto& p : model.permissible)
        out << "perm " << p.src_type << " " << p.label << " " << p.dst_type << "\n";
    return out.str();
}

std::string serialize_graph(const SystemGraph& graph, bool include_overlay) {
    std::ostringstream out;
    for (const auto& id : graph.node_ids())
        out << "node " << id << " : " << graph.node(id).type << "\n";

    auto sorted = [&](EdgeKind kind) {
        auto edges = graph.edges_of_kind(kind);
        std::sort(edges.begin(), edges.end());
        return edges;
    };

    for (const auto& e : sorted(EdgeKind::Relationship))
        out << "edge " << e.src << " " << e.label.name << " " << e.dst << "\n";
    if (!include_overlay) return out.str();

    for (const auto& e : sorted(EdgeKind::Caching))
        out << "cached " << e.src << " " << e.dst << " " << e.label.to_string() << "\n";
    for (const auto& e : sorted(EdgeKind::DecisionAudit))
        out << "decision " << e.src << " " << e.dst << " "
            << (e.label.tag == EdgeLabel::Tag::AllowAudit ? "allow" : "deny") << " "
            << e.label.name << "\n";
    for (const auto& e : sorted(EdgeKind::InterestAudit))
        out << "interest " << e.src << " "
            << (e.label.tag == EdgeLabel::Tag::ActiveInterest ? "active" : "blocked")
            << " " << e.dst << "\n";
    return out.str();
}

std::string serialize_policy(const PolicyPair& policy) {
    std::ostringstream out;
    for (const auto& r : policy.pm.rules) {
        out << "pm " << (r.is_default() ? "default" : render(r.condition)) << " -> "
            << r.principal << "\n";
    }
    for (const auto& r : policy.auth.rules)
        out << "auth " << r.principal << " " << r.object << " " << r.action << " "
            << to_string(r.decision) << "\n";
    return out.str();
}

std::string serialize_config(const EngineConfig& cfg) {
    std::ostringstream out;
    out << "pms = " << to_string(cfg.pms) << "\n";
    out << "crs = " << to_string(cfg.crs) << "\n";
    out << "default_decision = " << to_string(cfg.default_decision) << "\n";
    out << "cache.enabled = " << (cfg.cache.enabled ? "true" : "false") << "\n";
    out << "cache.write_on_eval = " << (cfg.cache.write_on_eval ? "true" : "false")
        << "\n";
    out << "cache.invalidation = " << to_string(cfg.cache.invalidation) << "\n";
    if (cfg.cache.max_total) out << "cache.max_total = " << *cfg.cache.max_total << "\n";
    if (cfg.cache.max_out_degree)
        out << "cache.max_out_degree = " << *cfg.cache.max_out_degree << "\n";
    if (cfg.cache.retirement_age)
        out << "cache.retirement_age = " << *cfg.cache.retirement_age << "\n";
    out << "cw.enabled = " << (cfg.cw.enabled ? "true" : "false") << "\n";
    if (!cfg.cw.member_label.empty())
        out << "cw.member_label = " << cfg.cw.member_label << "\n";
    if (!cfg.cw.data_paths.empty()) {
        out << "cw.paths = ";
        for (std::size_t i = 0; i < cfg.cw.data_paths.size(); ++i) {
            if (i) out << " ; ";
            out << render(cfg.cw.data_paths[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp);
        out << content;
        if (!out.flush()) throw Error("failed writing file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("failed to replace file: " + path);
}

}  // namespace relbac
