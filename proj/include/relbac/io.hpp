#pragma once

#include <string>

#include "relbac/cache.hpp"
#include "relbac/constraints.hpp"

namespace relbac {

/** Full engine configuration; every field has a usable default. */
struct EngineConfig {
    MatchingStrategy pms = MatchingStrategy::AllMatch;
    ResolutionStrategy crs = ResolutionStrategy::DenyOverride;
    Decision default_decision = Decision::Deny;
    CacheConfig cache;
    ChineseWallConfig cw;
};

/**
 * Line-oriented document formats. `#` starts a comment; blank lines are
 * skipped. Parsers throw ParseError (syntax) or WellFormednessError
 * (unresolved references) with the offending line number.
 *
 * Model:   type <name> | label <name> [symmetric] | perm <type> <label> <type>
 * Graph:   node <id> : <type> | edge <src> <label> <dst>
 *          cached <src> <dst> [p1,p2,...]
 *          decision <src> <dst> allow|deny <action>
 *          interest <src> active|blocked <dst>
 * Policy:  pm <path-expr> -> <principal> | pm default -> <principal>
 *          auth <principal> <object|*> <action|*> allow|deny
 * Config:  key = value
 */
SystemModel parse_model(const std::string& text);
SystemGraph parse_graph(const std::string& text, const SystemModel& model);
PolicyPair parse_policy(const std::string& text);
EngineConfig parse_config(const std::string& text);

/**
 * Deterministic serialization: nodes in lexicographic order, then each edge
 * section ordered by (src, dst, kind, label). The overlay sections (cached /
 * decision / interest) are omitted when include_overlay is false.
 */
std::string serialize_model(const SystemModel& model);
std::string serialize_graph(const SystemGraph& graph, bool include_overlay = true);
std::string serialize_policy(const PolicyPair& policy);
std::string serialize_config(const EngineConfig& config);

/** Reads a whole file; throws Error when unreadable. */
std::string read_file(const std::string& path);
/** Atomic write: temp file in the same directory, then rename. */
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace relbac
