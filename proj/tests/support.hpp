// Shared test support: an independent relational-semantics oracle for path
// conditions (boolean matrices, no NFA, no simplifier) plus small random
// generators. The oracle is deliberately naive — it exists to disagree with
// the production matcher whenever that one is wrong.

#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relbac/constraints.hpp"
#include "relbac/graph.hpp"
#include "relbac/io.hpp"
#include "relbac/path.hpp"
#include "relbac/policy.hpp"

namespace relbac::testing {

/** Dense boolean relation over the graph's node set. */
class RelOracle {
public:
    explicit RelOracle(const SystemGraph& g) : g_(g), nodes_(g.node_ids()) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = i;
    }

    using Mat = std::vector<std::vector<char>>;

    bool satisfied(const PathPtr& pc, const std::string& u,
                   const std::string& v) const {
        Mat r = eval(pc);
        return r[index_.at(u)][index_.at(v)] != 0;
    }

    Mat eval(const PathPtr& pc) const {
        switch (pc->kind) {
            case PathCondition::Kind::Diamond: return identity();
            case PathCondition::Kind::Edge: return base(pc->label);
            case PathCondition::Kind::ReversedEdge: return transpose(base(pc->label));
            case PathCondition::Kind::Reverse: return transpose(eval(pc->left));
            case PathCondition::Kind::Concat:
                return compose(eval(pc->left), eval(pc->right));
            case PathCondition::Kind::Plus: return closure(eval(pc->left));
        }
        return empty();
    }

    const std::vector<std::string>& nodes() const { return nodes_; }

private:
    std::size_t n() const { return nodes_.size(); }
    Mat empty() const { return Mat(n(), std::vector<char>(n(), 0)); }
    Mat identity() const {
        Mat m = empty();
        for (std::size_t i = 0; i < n(); ++i) m[i][i] = 1;
        return m;
    }

    /** One-step relation of a label: matching non-caching edges, plus the
     * reverse direction for symmetric relationship labels. */
    Mat base(const PathLabel& label) const {
        Mat m = empty();
        bool sym = label.tag == PathLabel::Tag::Rel && g_.model().is_symmetric(label.name);
        for (const auto& e : g_.edges()) {
            if (e.kind == EdgeKind::Caching) continue;
            if (!label.matches(e.label)) continue;
            m[index_.at(e.src)][index_.at(e.dst)] = 1;
            if (sym) m[index_.at(e.dst)][index_.at(e.src)] = 1;
        }
        return m;
    }

    Mat transpose(const Mat& a) const {
        Mat m = empty();
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t j = 0; j < n(); ++j) m[j][i] = a[i][j];
        return m;
    }

    Mat compose(const Mat& a, const Mat& b) const {
        Mat m = empty();
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t k = 0; k < n(); ++k)
                if (a[i][k])
                    for (std::size_t j = 0; j < n(); ++j)
                        if (b[k][j]) m[i][j] = 1;
        return m;
    }

    Mat closure(const Mat& a) const {
        Mat m = a;
        for (std::size_t k = 0; k < n(); ++k)
            for (std::size_t i = 0; i < n(); ++i)
                if (m[i][k])
                    for (std::size_t j = 0; j < n(); ++j)
                        if (m[k][j]) m[i][j] = 1;
        return m;
    }

    const SystemGraph& g_;
    std::vector<std::string> nodes_;
    std::map<std::string, std::size_t> index_;
};

/** Principal matching re-derived from the oracle relation. */
inline std::vector<std::string> oracle_match(const SystemGraph& g,
                                             const std::string& subject,
                                             const std::string& object,
                                             const PmPolicy& policy,
                                             MatchingStrategy strategy) {
    RelOracle oracle(g);
    std::vector<std::string> out;
    for (const auto& rule : policy.rules) {
        bool matched = rule.is_default() || oracle.satisfied(rule.condition, subject, object);
        if (!matched) continue;
        if (std::find(out.begin(), out.end(), rule.principal) == out.end())
            out.push_back(rule.principal);
        if (strategy == MatchingStrategy::FirstMatch) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random generators. All take an explicit engine so every use is seeded.
// ---------------------------------------------------------------------------

using Rng = std::mt19937;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
const T& pick_one(Rng& rng, const std::vector<T>& v) {
    return v[pick(rng, 0, v.size() - 1)];
}

/** Model with one node type, labels r0..r{k-1}; r2 symmetric when present. */
inline SystemModel fuzz_model(std::size_t label_count, bool symmetric_r2) {
    SystemModel m;
    m.types.insert("t");
    for (std::size_t i = 0; i < label_count; ++i) {
        std::string l = "r" + std::to_string(i);
        m.labels.insert(l);
        m.permissible.insert({"t", "t", l});
    }
    if (symmetric_r2 && label_count > 2) m.symmetric.insert("r2");
    return m;
}

/** Random graph over ≤ max_nodes nodes, sprinkled with audit edges. */
inline SystemGraph fuzz_graph(Rng& rng, std::size_t max_nodes,
                              std::size_t label_count, bool with_audit) {
    SystemModel model = fuzz_model(label_count, chance(rng, 0.5));
    SystemGraph g(model);
    std::size_t nodes = pick(rng, 1, max_nodes);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < nodes; ++i) {
        ids.push_back("n" + std::to_string(i));
        g.add_node(ids.back(), "t");
    }
    std::size_t edges = pick(rng, 0, nodes * 2);
    for (std::size_t i = 0; i < edges; ++i) {
        std::string label = "r" + std::to_string(pick(rng, 0, label_count - 1));
        g.add_edge(pick_one(rng, ids), pick_one(rng, ids), EdgeKind::Relationship,
                   EdgeLabel::rel(label));
    }
    if (with_audit) {
        std::size_t extra = pick(rng, 0, 3);
        for (std::size_t i = 0; i < extra; ++i) {
            const std::string& u = pick_one(rng, ids);
            const std::string& v = pick_one(rng, ids);
            switch (pick(rng, 0, 3)) {
                case 0:
                    g.add_edge(u, v, EdgeKind::DecisionAudit, EdgeLabel::allow_audit("a"));
                    break;
                case 1:
                    g.add_edge(u, v, EdgeKind::DecisionAudit, EdgeLabel::deny_audit("a"));
                    break;
                case 2:
                    g.add_edge(u, v, EdgeKind::InterestAudit, EdgeLabel::active_interest());
                    break;
                default:
                    g.add_edge(u, v, EdgeKind::InterestAudit, EdgeLabel::blocked_interest());
            }
        }
    }
    return g;
}

/** Random path label drawn from the same vocabulary fuzz_graph writes. */
inline PathLabel fuzz_label(Rng& rng, std::size_t label_count, bool with_audit) {
    if (with_audit && chance(rng, 0.2)) {
        switch (pick(rng, 0, 3)) {
            case 0: return PathLabel::allow_audit("a");
            case 1: return PathLabel::deny_audit("a");
            case 2: return PathLabel::active_interest();
            default: return PathLabel::blocked_interest();
        }
    }
    return PathLabel::rel("r" + std::to_string(pick(rng, 0, label_count - 1)));
}

// ---------------------------------------------------------------------------
// Randomized constraint worlds: generated document texts plus the ground
// truth the history-based oracles consume. Shared by the unit quick-checks
// and the long-run acceptance fuzz.
// ---------------------------------------------------------------------------

/**
 * A separation-of-duty scenario: a handful of users, one constrained object
 * plus a side object, a single base relationship label, and the generated
 * enforcement policies. Some (user, object) pairs lack the base relationship
 * so base denials show up in traces.
 */
struct SodWorld {
    std::string model_text, graph_text, policy_text, config_text;
    SodSpec engine_spec;  // construction the policies were generated from
    SodSpec oracle_spec;  // judgement mode (first-match turns into lock-out)
    MatchingStrategy pms = MatchingStrategy::AllMatch;
    std::vector<std::string> users;
    std::vector<std::string> objects;  // [0] carries the constraint
    std::string free_action = "x";
    std::set<std::pair<std::string, std::string>> base_pairs;

    bool base_ok(const Request& rq) const {
        return base_pairs.count({rq.subject, rq.object}) > 0;
    }

    Request random_request(Rng& rng) const {
        Request rq;
        rq.subject = pick_one(rng, users);
        rq.object = chance(rng, 0.7) ? objects[0] : objects[1];
        // Under first-match matching, a performed action locks its own
        // (subject, object) pair, while the oracle scopes history to the
        // constrained object: keep side-object requests to the free action.
        bool side = rq.object != engine_spec.object;
        if ((side && pms == MatchingStrategy::FirstMatch) || chance(rng, 0.3))
            rq.action = free_action;
        else
            rq.action = pick_one(rng, engine_spec.actions);
        return rq;
    }
};

inline SodWorld make_sod_world(Rng& rng) {
    SodWorld w;
    w.pms = chance(rng, 0.5) ? MatchingStrategy::AllMatch : MatchingStrategy::FirstMatch;
    const bool general = chance(rng, 0.5);

    const std::size_t user_count = pick(rng, 2, 5);
    for (std::size_t i = 0; i < user_count; ++i)
        w.users.push_back("u" + std::to_string(i));
    w.objects = {"o", "side"};

    w.engine_spec.mode = general ? SodSpec::Mode::General : SodSpec::Mode::Basic;
    w.engine_spec.object = "o";
    const std::size_t action_count = pick(rng, 2, 4);
    for (std::size_t i = 1; i <= action_count; ++i)
        w.engine_spec.actions.push_back("a" + std::to_string(i));
    if (general)
        for (std::size_t i = 1; i <= action_count; ++i)
            w.engine_spec.principals.push_back("s" + std::to_string(i));
    else
        w.engine_spec.principals.push_back("seen");

    // Under first-match, producing any audit principal starves the base rule,
    // so one performed action locks the whole object: judge as lock-out.
    w.oracle_spec = w.engine_spec;
    if (w.pms == MatchingStrategy::FirstMatch)
        w.oracle_spec.mode = SodSpec::Mode::Basic;

    w.model_text = "type t\nlabel r\nperm t r t\n";
    std::string gt;
    for (const auto& u : w.users) gt += "node " + u + " : t\n";
    for (const auto& o : w.objects) gt += "node " + o + " : t\n";
    for (const auto& u : w.users)
        for (const auto& o : w.objects)
            if (chance(rng, o == "o" ? 0.75 : 0.6)) {
                gt += "edge " + u + " r " + o + "\n";
                w.base_pairs.insert({u, o});
            }
    w.graph_text = gt;

    PolicyPair base;
    base.pm.rules.push_back({edge(PathLabel::rel("r")), "p"});
    base.auth.rules.push_back({"p", "*", "*", Decision::Allow});
    w.policy_text = serialize_policy(generate_sod(base, w.engine_spec));

    EngineConfig cfg;
    cfg.pms = w.pms;
    cfg.crs = ResolutionStrategy::DenyOverride;
    cfg.default_decision = Decision::Deny;
    cfg.cache.enabled = true;
    cfg.cache.invalidation = chance(rng, 0.5) ? InvalidationMode::FlushAll
                                              : InvalidationMode::ScopedBySubject;
    w.config_text = serialize_config(cfg);
    return w;
}

/**
 * A Chinese-Wall scenario: users employed (or not) by consultancies serving
 * a company subset; each file attached to exactly one company, directly or
 * through an intermediate node; some companies outside every conflict class.
 */
struct CwWorld {
    std::string model_text, graph_text, policy_text, config_text;
    WallLayout layout;
    std::vector<std::string> users, files;
    std::set<std::pair<std::string, std::string>> base_pairs;

    bool base_ok(const Request& rq) const {
        return base_pairs.count({rq.subject, rq.object}) > 0;
    }

    Request random_request(Rng& rng) const {
        return {pick_one(rng, users), pick_one(rng, files), "read"};
    }
};

inline CwWorld make_cw_world(Rng& rng) {
    CwWorld w;
    w.model_text =
        "type t\n"
        "label w\nlabel s\nlabel d\nlabel m\nlabel in\nlabel of\n"
        "perm t w t\nperm t s t\nperm t d t\nperm t m t\nperm t in t\nperm t of t\n";

    const std::size_t class_count = pick(rng, 1, 3);
    const std::size_t company_count = pick(rng, 2, 4);
    const std::size_t employer_count = pick(rng, 1, 2);
    const std::size_t user_count = pick(rng, 2, 3);

    std::string gt;
    std::vector<std::string> companies, employers;
    for (std::size_t i = 0; i < class_count; ++i)
        gt += "node i" + std::to_string(i) + " : t\n";
    for (std::size_t i = 0; i < company_count; ++i) {
        std::string c = "c" + std::to_string(i);
        companies.push_back(c);
        gt += "node " + c + " : t\n";
        if (chance(rng, 0.75)) {
            std::string cls = "i" + std::to_string(pick(rng, 0, class_count - 1));
            w.layout.class_of[c] = cls;
            gt += "edge " + c + " m " + cls + "\n";
        }
    }
    std::size_t file_seq = 0, mid_seq = 0;
    for (const auto& c : companies) {
        const std::size_t here = pick(rng, 1, 3);
        for (std::size_t i = 0; i < here; ++i) {
            std::string f = "f" + std::to_string(file_seq++);
            w.files.push_back(f);
            w.layout.company_of[f] = c;
            gt += "node " + f + " : t\n";
            if (chance(rng, 0.6)) {
                gt += "edge " + f + " d " + c + "\n";
            } else {
                std::string mid = "g" + std::to_string(mid_seq++);
                gt += "node " + mid + " : t\n";
                gt += "edge " + f + " in " + mid + "\nedge " + mid + " of " + c + "\n";
            }
        }
    }
    std::map<std::string, std::set<std::string>> serves;
    for (std::size_t i = 0; i < employer_count; ++i) {
        std::string e = "e" + std::to_string(i);
        employers.push_back(e);
        gt += "node " + e + " : t\n";
        for (const auto& c : companies)
            if (chance(rng, 0.7)) {
                gt += "edge " + e + " s " + c + "\n";
                serves[e].insert(c);
            }
    }
    for (std::size_t i = 0; i < user_count; ++i) {
        std::string u = "u" + std::to_string(i);
        w.users.push_back(u);
        gt += "node " + u + " : t\n";
        if (!chance(rng, 0.8)) continue;  // an unemployed user: base denials
        const std::string& e = pick_one(rng, employers);
        gt += "edge " + u + " w " + e + "\n";
        for (const auto& f : w.files)
            if (serves[e].count(w.layout.company_of[f]))
                w.base_pairs.insert({u, f});
    }
    w.graph_text = gt;

    ChineseWallConfig cw;
    cw.enabled = true;
    cw.member_label = "m";
    cw.data_paths.push_back(parse_path("d"));
    cw.data_paths.push_back(parse_path("in . of"));

    PolicyPair base;
    base.pm.rules.push_back({parse_path("w . s . ~d"), "p"});
    base.pm.rules.push_back({parse_path("w . s . ~of . ~in"), "p"});
    base.auth.rules.push_back({"p", "*", "read", Decision::Allow});
    w.policy_text = serialize_policy(generate_chinese_wall(base, cw, "wall"));

    EngineConfig cfg;
    cfg.pms = chance(rng, 0.5) ? MatchingStrategy::AllMatch : MatchingStrategy::FirstMatch;
    cfg.crs = ResolutionStrategy::DenyOverride;
    cfg.default_decision = Decision::Deny;
    cfg.cache.enabled = true;
    cfg.cache.invalidation = chance(rng, 0.5) ? InvalidationMode::FlushAll
                                              : InvalidationMode::ScopedBySubject;
    cfg.cw = cw;
    w.config_text = serialize_config(cfg);
    return w;
}

/** Random condition of at most `depth` operator layers. */
inline PathPtr fuzz_path(Rng& rng, std::size_t depth, std::size_t label_count,
                         bool with_audit) {
    if (depth == 0 || chance(rng, 0.25)) {
        if (chance(rng, 0.1)) return diamond();
        PathPtr leaf = edge(fuzz_label(rng, label_count, with_audit));
        return chance(rng, 0.25) ? reversed(leaf) : leaf;
    }
    switch (pick(rng, 0, 2)) {
        case 0:
            return concat(fuzz_path(rng, depth - 1, label_count, with_audit),
                          fuzz_path(rng, depth - 1, label_count, with_audit));
        case 1: return plus(fuzz_path(rng, depth - 1, label_count, with_audit));
        default: return reversed(fuzz_path(rng, depth - 1, label_count, with_audit));
    }
}

}  // namespace relbac::testing
