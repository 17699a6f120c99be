#pragma once

#include <map>
#include <string>
#include <vector>

#include "relbac/audit.hpp"

namespace relbac {

/**
 * Separation-of-duty requirement: at most one of the listed actions on the
 * given object per subject (repeating the already-performed action stays
 * allowed in General mode; Basic mode locks the object entirely).
 */
struct SodSpec {
    enum class Mode { General, Basic };

    Mode mode = Mode::General;
    std::string object;
    std::vector<std::string> actions;
    /** General: one fresh principal per action. Basic: single principal. */
    std::vector<std::string> principals;
};

/** A principal-matching and authorization policy pair. */
struct PolicyPair {
    PmPolicy pm;
    AuthPolicy auth;
};

/**
 * Builds the separation-of-duty enforcement policies: audit-matching rules
 * are prepended to the principal-matching policy, and the corresponding
 * deny rules to the authorization policy. The inputs are not modified.
 * Throws NameCollisionError when a constraint principal already occurs in
 * either base policy, and ConfigError on a malformed spec.
 */
PolicyPair generate_sod(const PolicyPair& base, const SodSpec& spec);

/**
 * Builds the Chinese-Wall enforcement policies: for each data path π a rule
 * (@blocked ∘ reverse(π)) → principal is prepended to the matching policy,
 * and one (principal, *, *, deny) rule to the authorization policy.
 */
PolicyPair generate_chinese_wall(const PolicyPair& base, const ChineseWallConfig& cw,
                                 const std::string& principal);

/** One processed request with the decision the engine reached. */
struct HistoryEntry {
    Request request;
    Decision decision = Decision::Deny;
};

/**
 * History-based oracle for separation of duty. Gives the decision the
 * enforcement policies must produce for `request` after `history`, given the
 * decision `base_decision` the base policies alone would produce:
 *  - General mode: deny when some *different* constrained action on the
 *    constrained object was previously allowed for this subject;
 *  - Basic mode (and any mode under FirstMatch matching): deny when *any*
 *    constrained action on the object was previously allowed;
 *  - otherwise the base decision stands. Denied history never constrains.
 */
Decision sod_oracle(const SodSpec& spec, const std::vector<HistoryEntry>& history,
                    const Request& request, Decision base_decision);

/** Conflict-of-interest layout for the Chinese-Wall oracle. */
struct WallLayout {
    std::map<std::string, std::string> company_of;  // object → company
    std::map<std::string, std::string> class_of;    // company → conflict class
};

/**
 * History-based oracle for the Chinese Wall: deny when the subject already
 * holds an allowed-access interest in a different company of the same
 * conflict class as the requested object's company; otherwise the base
 * decision stands. Companies without a conflict class never conflict.
 * Throws UnknownNodeError for an object missing from the layout.
 */
Decision cw_oracle(const WallLayout& layout, const std::vector<HistoryEntry>& history,
                   const Request& request, Decision base_decision);

}  // namespace relbac
