#include "relbac/policy.hpp"

#include <algorithm>

#include "relbac/errors.hpp"

namespace relbac {

std::string to_string(MatchingStrategy s) {
    return s == MatchingStrategy::AllMatch ? "AllMatch" : "FirstMatch";
}

std::string to_string(ResolutionStrategy s) {
    switch (s) {
        case ResolutionStrategy::DenyOverride: return "DenyOverride";
        case ResolutionStrategy::AllowOverride: return "AllowOverride";
        case ResolutionStrategy::FirstMatch: return "FirstMatch";
    }
    return "?";
}

std::string to_string(Decision d) { return d == Decision::Allow ? "allow" : "deny"; }

std::vector<std::string> PmPolicy::validate() const {
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (rules[i].is_default() && i + 1 != rules.size())
            problems.push_back("default matching rule must be the last rule (rule " +
                               std::to_string(i + 1) + ")");
    }
    return problems;
}

namespace {

void collect_labels(const PathPtr& pc, std::set<PathLabel>& out) {
    if (!pc) return;
    switch (pc->kind) {
        case PathCondition::Kind::Edge:
        case PathCondition::Kind::ReversedEdge:
            out.insert(pc->label);
            return;
        case PathCondition::Kind::Concat:
            collect_labels(pc->left, out);
            collect_labels(pc->right, out);
            return;
        case PathCondition::Kind::Plus:
        case PathCondition::Kind::Reverse:
            collect_labels(pc->left, out);
            return;
        case PathCondition::Kind::Diamond:
            return;
    }
}

}  // namespace

std::set<PathLabel> PmPolicy::condition_labels() const {
    std::set<PathLabel> out;
    for (const auto& rule : rules) collect_labels(rule.condition, out);
    return out;
}

CompiledPmPolicy::CompiledPmPolicy(PmPolicy policy) : policy_(std::move(policy)) {
    compiled_.reserve(policy_.rules.size());
    for (const auto& rule : policy_.rules) {
        if (rule.is_default())
            compiled_.push_back(nullptr);
        else
            compiled_.push_back(std::make_shared<CompiledPath>(simplify(rule.condition)));
    }
}

std::vector<std::string> match_principals(const SystemGraph& g,
                                          const std::string& subject,
                                          const std::string& object,
                                          const CompiledPmPolicy& policy,
                                          MatchingStrategy strategy,
                                          EvalMetrics& metrics) {
    if (!g.has_node(subject)) throw UnknownNodeError(subject);
    if (!g.has_node(object)) throw UnknownNodeError(object);

    std::vector<std::string> matched;
    const auto& rules = policy.policy().rules;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        bool hit = rules[i].is_default()
                       ? true
                       : satisfies(g, subject, object, *policy.compiled()[i], metrics);
        if (!hit) continue;
        if (std::find(matched.begin(), matched.end(), rules[i].principal) ==
            matched.end())
            matched.push_back(rules[i].principal);
        if (strategy == MatchingStrategy::FirstMatch) break;
    }
    return matched;
}

AuthOutcome authorize(const std::vector<std::string>& matched, const Request& request,
                      const AuthPolicy& policy, ResolutionStrategy strategy,
                      Decision default_decision) {
    AuthOutcome out;
    for (const auto& rule : policy.rules) {
        for (const auto& p : matched) {
            if (rule.applies_to(p, request.object, request.action)) {
                out.applicable.push_back(rule);
                out.decision_set.insert(rule.decision == Decision::Allow ? 1 : 0);
                break;
            }
        }
    }
    if (out.applicable.empty()) {
        out.decision = default_decision;
        return out;
    }
    switch (strategy) {
        case ResolutionStrategy::DenyOverride:
            out.decision = out.decision_set.count(0) ? Decision::Deny : Decision::Allow;
            break;
        case ResolutionStrategy::AllowOverride:
            out.decision = out.decision_set.count(1) ? Decision::Allow : Decision::Deny;
            break;
        case ResolutionStrategy::FirstMatch:
            out.decision = out.applicable.front().decision;
            break;
    }
    return out;
}

}  // namespace relbac
