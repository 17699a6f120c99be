#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relbac/matcher.hpp"

namespace relbac {

enum class MatchingStrategy { AllMatch, FirstMatch };
enum class ResolutionStrategy { DenyOverride, AllowOverride, FirstMatch };
enum class Decision { Allow, Deny };

std::string to_string(MatchingStrategy s);
std::string to_string(ResolutionStrategy s);
std::string to_string(Decision d);

/**
 * One principal-matching rule: a path condition (or the always-matching
 * default, represented by an empty condition) mapped to a principal.
 */
struct PmRule {
    PathPtr condition;  // nullptr = default rule (matches every pair)
    std::string principal;

    bool is_default() const { return condition == nullptr; }
};

/** Ordered principal-matching policy. At most one default rule, last only. */
struct PmPolicy {
    std::vector<PmRule> rules;

    /** Ordering/shape violations (default-rule placement). */
    std::vector<std::string> validate() const;
    /** Every label appearing in some rule condition. */
    std::set<PathLabel> condition_labels() const;
};

/** One authorization rule; object and action may be the wildcard "*". */
struct AuthRule {
    std::string principal;
    std::string object;  // node id or "*"
    std::string action;  // action name or "*"
    Decision decision = Decision::Deny;

    bool applies_to(const std::string& p, const std::string& o,
                    const std::string& a) const {
        return principal == p && (object == "*" || object == o) &&
               (action == "*" || action == a);
    }
};

struct AuthPolicy {
    std::vector<AuthRule> rules;
};

struct Request {
    std::string subject;
    std::string object;
    std::string action;
};

/** A principal-matching policy with its conditions compiled once. */
class CompiledPmPolicy {
public:
    CompiledPmPolicy() = default;
    explicit CompiledPmPolicy(PmPolicy policy);

    const PmPolicy& policy() const { return policy_; }
    const std::vector<std::shared_ptr<const CompiledPath>>& compiled() const {
        return compiled_;
    }

private:
    PmPolicy policy_;
    std::vector<std::shared_ptr<const CompiledPath>> compiled_;  // null for default
};

/**
 * Evaluates the policy's rules in order between subject and object.
 * AllMatch collects every matched principal (duplicates collapse to the
 * first occurrence); FirstMatch stops at the first matching rule. The
 * request's action plays no part. Matching work accumulates into `metrics`.
 */
std::vector<std::string> match_principals(const SystemGraph& g,
                                          const std::string& subject,
                                          const std::string& object,
                                          const CompiledPmPolicy& policy,
                                          MatchingStrategy strategy,
                                          EvalMetrics& metrics);

struct AuthOutcome {
    Decision decision = Decision::Deny;
    std::set<int> decision_set;  // bits (0 deny / 1 allow) of applicable rules
    std::vector<AuthRule> applicable;
};

/**
 * Applies the authorization policy to the matched principals: collects the
 * applicable rules, then resolves their decision bits with the conflict
 * resolution strategy; an empty set falls back to default_decision.
 */
AuthOutcome authorize(const std::vector<std::string>& matched, const Request& request,
                      const AuthPolicy& policy, ResolutionStrategy strategy,
                      Decision default_decision);

}  // namespace relbac
