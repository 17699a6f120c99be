#pragma once

#include <memory>
#include <string>

#include "relbac/graph.hpp"

namespace relbac {

/**
 * A label usable in an edge condition: a relationship label, a decision-audit
 * label (allow!/deny! plus an action), or an interest label.
 */
struct PathLabel {
    enum class Tag { Rel, AllowAudit, DenyAudit, ActiveInterest, BlockedInterest };

    Tag tag = Tag::Rel;
    std::string name;  // relationship label or action; empty for interest tags

    static PathLabel rel(std::string label) { return {Tag::Rel, std::move(label)}; }
    static PathLabel allow_audit(std::string a) { return {Tag::AllowAudit, std::move(a)}; }
    static PathLabel deny_audit(std::string a) { return {Tag::DenyAudit, std::move(a)}; }
    static PathLabel active_interest() { return {Tag::ActiveInterest, {}}; }
    static PathLabel blocked_interest() { return {Tag::BlockedInterest, {}}; }

    /** True when an edge carrying `el` satisfies this edge condition. */
    bool matches(const EdgeLabel& el) const;

    std::string to_string() const;

    auto operator<=>(const PathLabel&) const = default;
};

struct PathCondition;
using PathPtr = std::shared_ptr<const PathCondition>;

/**
 * Path-condition AST. Diamond is the empty path; Edge/ReversedEdge are the
 * edge conditions; Concat, Plus (one or more), and Reverse build up the rest.
 */
struct PathCondition {
    enum class Kind { Diamond, Edge, ReversedEdge, Concat, Plus, Reverse };

    Kind kind;
    PathLabel label;      // Edge / ReversedEdge
    PathPtr left, right;  // Concat both; Plus/Reverse use left only
};

PathPtr diamond();
PathPtr edge(PathLabel label);
PathPtr reversed_edge(PathLabel label);
PathPtr concat(PathPtr a, PathPtr b);
PathPtr plus(PathPtr inner);
/** Reversal builder: collapses over edge leaves (~r stays a leaf). */
PathPtr reversed(PathPtr inner);

bool equal(const PathPtr& a, const PathPtr& b);

/** True when the condition is simple: no Reverse, no Diamond under ∘ or +. */
bool is_simple(const PathPtr& pc);

/** Number of Edge/ReversedEdge leaves. */
std::size_t leaf_count(const PathPtr& pc);

/**
 * Rewrites to an equivalent simple condition: reversal is pushed to the
 * leaves and redundant Diamonds are dropped. Idempotent; never increases
 * the leaf count.
 */
PathPtr simplify(const PathPtr& pc);

/**
 * Parses the path expression syntax:
 *   `.` concatenation (left associative), postfix `+` (binds tighter than
 *   `.`), prefix `~` reversal (binds tighter than `+`), `<>` for the empty
 *   path, parentheses, and labels (identifiers, allow!<action>,
 *   deny!<action>, @active, @blocked).
 * Throws ParseError with a byte offset on malformed input.
 */
PathPtr parse_path(const std::string& text);

/** Minimal-parenthesis rendering; parse_path(render(x)) equals x. */
std::string render(const PathPtr& pc);

}  // namespace relbac
