#include "relbac/engine.hpp"

#include <algorithm>

#include "relbac/audit.hpp"
#include "relbac/errors.hpp"

namespace relbac {

Engine::Engine(SystemGraph graph, PolicyPair policies, EngineConfig config)
    : graph_(std::move(graph)),
      policies_(std::move(policies)),
      compiled_pm_(policies_.pm),
      config_(std::move(config)),
      cache_(config_.cache) {
    if (auto problems = policies_.pm.validate(); !problems.empty())
        throw WellFormednessError(problems.front());
    if (auto problems = config_.cw.validate(graph_.model()); !problems.empty())
        throw ConfigError(problems.front());
    cache_.set_sensitive_labels(policies_.pm.condition_labels());
    cache_.adopt(graph_, eval_seq_);
    install_listener();
}

Engine Engine::from_documents(const std::string& model_text,
                              const std::string& graph_text,
                              const std::string& policy_text,
                              const std::string& config_text) {
    SystemModel model = parse_model(model_text);
    SystemGraph graph = parse_graph(graph_text, model);
    PolicyPair policies = parse_policy(policy_text);
    EngineConfig config =
        config_text.empty() ? EngineConfig{} : parse_config(config_text);
    return Engine(std::move(graph), std::move(policies), std::move(config));
}

void Engine::install_listener() {
    graph_.set_mutation_listener(
        [this](const GraphChange& change) { cache_.on_graph_change(graph_, change); });
}

void Engine::note_subject(const std::string& subject) {
    auto it = std::find(recent_subjects_.begin(), recent_subjects_.end(), subject);
    if (it != recent_subjects_.end()) recent_subjects_.erase(it);
    recent_subjects_.push_front(subject);
    while (recent_subjects_.size() > kRecentCapacity) recent_subjects_.pop_back();
}

EvalOutcome Engine::evaluate(const Request& request, bool use_cache) {
    if (!graph_.has_node(request.subject)) throw UnknownNodeError(request.subject);
    if (!graph_.has_node(request.object)) throw UnknownNodeError(request.object);

    ++eval_seq_;
    note_subject(request.subject);

    EvalOutcome out;
    const bool caching = use_cache && config_.cache.enabled;
    if (caching && config_.cache.retirement_age)
        cache_.retire_sweep(graph_, eval_seq_);
    if (caching) {
        if (auto hit = cache_.lookup(request.subject, request.object, eval_seq_)) {
            out.cache_hit = true;
            out.matched_principals = std::move(*hit);
        }
    }
    if (!out.cache_hit)
        out.matched_principals = match_principals(
            graph_, request.subject, request.object, compiled_pm_, config_.pms,
            out.metrics);

    AuthOutcome auth = authorize(out.matched_principals, request, policies_.auth,
                                 config_.crs, config_.default_decision);
    out.decision = auth.decision;
    out.decision_set = std::move(auth.decision_set);

    // Writers, in fixed order: caching edge, decision audit, interest edges.
    // Each write runs the invalidation hook via the graph's mutation listener.
    if (!out.cache_hit && caching && config_.cache.write_on_eval) {
        if (auto edge = cache_.insert(graph_, request.subject, request.object,
                                      out.matched_principals, eval_seq_))
            out.written_edges.push_back(*edge);
    }
    for (auto& edge : write_decision_audit(graph_, request, out.decision))
        out.written_edges.push_back(std::move(edge));
    if (out.decision == Decision::Allow && config_.cw.enabled) {
        for (auto& edge : write_interest_edges(graph_, request, config_.cw))
            out.written_edges.push_back(std::move(edge));
    }
    return out;
}

bool Engine::add_relationship_edge(const std::string& src, const std::string& label,
                                   const std::string& dst) {
    if (config_.cw.enabled && label == config_.cw.member_label)
        throw ConfigError(
            "conflict-class membership cannot change while the wall hook is active");
    return graph_.add_edge(src, dst, EdgeKind::Relationship, EdgeLabel::rel(label));
}

bool Engine::remove_relationship_edge(const std::string& src, const std::string& label,
                                      const std::string& dst) {
    if (config_.cw.enabled && label == config_.cw.member_label)
        throw ConfigError(
            "conflict-class membership cannot change while the wall hook is active");
    return graph_.remove_edge(
        Edge{src, dst, EdgeKind::Relationship, EdgeLabel::rel(label)});
}

void Engine::reload_policies(PolicyPair policies) {
    if (auto problems = policies.pm.validate(); !problems.empty())
        throw WellFormednessError(problems.front());
    CompiledPmPolicy compiled(policies.pm);  // may throw before we commit
    policies_ = std::move(policies);
    compiled_pm_ = std::move(compiled);
    cache_.set_sensitive_labels(policies_.pm.condition_labels());
    cache_.on_policy_change(graph_);
}

void Engine::set_strategies(MatchingStrategy pms, ResolutionStrategy crs) {
    config_.pms = pms;
    config_.crs = crs;
    cache_.on_policy_change(graph_);
}

std::size_t Engine::precache_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    std::size_t budget) {
    if (!config_.cache.enabled) return 0;
    std::size_t evaluated = 0;
    std::size_t inserted = 0;
    for (const auto& [subject, object] : pairs) {
        if (evaluated >= budget) break;
        if (!graph_.has_node(subject) || !graph_.has_node(object)) continue;
        if (cache_.contains(subject, object)) continue;
        EvalMetrics scratch;
        auto principals = match_principals(graph_, subject, object, compiled_pm_,
                                           config_.pms, scratch);
        ++evaluated;
        if (cache_.insert(graph_, subject, object, principals, eval_seq_))
            ++inserted;
    }
    return inserted;
}

std::size_t Engine::precache(const SubjectFocusedPrecache& strategy,
                             std::size_t budget) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t taken = 0;
    for (const auto& subject : recent_subjects_) {
        if (taken >= strategy.recent_k) break;
        ++taken;
        for (const auto& object : strategy.targets) pairs.emplace_back(subject, object);
    }
    return precache_pairs(pairs, budget);
}

std::size_t Engine::precache(const ObjectFocusedPrecache& strategy,
                             std::size_t budget) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& object : strategy.objects)
        for (const auto& subject : strategy.subjects) pairs.emplace_back(subject, object);
    return precache_pairs(pairs, budget);
}

std::size_t Engine::purge_cache() { return cache_.purge_all(graph_); }

std::vector<std::string> Engine::validate() const {
    std::vector<std::string> problems;
    for (const auto& v : graph_.validate()) problems.push_back(v.message);
    for (auto& p : policies_.pm.validate()) problems.push_back(std::move(p));
    for (auto& p : config_.cw.validate(graph_.model())) problems.push_back(std::move(p));

    std::set<std::string> produced;
    for (const auto& rule : policies_.pm.rules) produced.insert(rule.principal);
    for (std::size_t i = 0; i < policies_.auth.rules.size(); ++i) {
        const auto& rule = policies_.auth.rules[i];
        if (!produced.count(rule.principal))
            problems.push_back("authorization rule " + std::to_string(i + 1) +
                               " references principal " + rule.principal +
                               " that no matching rule produces");
        if (rule.object != "*" && !graph_.has_node(rule.object))
            problems.push_back("authorization rule " + std::to_string(i + 1) +
                               " references unknown object " + rule.object);
    }
    return problems;
}

}  // namespace relbac
