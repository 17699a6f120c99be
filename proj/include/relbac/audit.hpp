#pragma once

#include <string>
#include <vector>

#include "relbac/policy.hpp"

namespace relbac {

/** Chinese-Wall hook configuration. */
struct ChineseWallConfig {
    bool enabled = false;
    std::vector<PathPtr> data_paths;  // conditions relating data to companies
    std::string member_label;         // company → conflict-class label

    /** Shape errors (enabled with no paths / no member label). */
    std::vector<std::string> validate(const SystemModel& model) const;
};

/**
 * Records the decision for (s,o,a) as a decision-audit edge:
 * allow!<action> on allow, deny!<action> on deny. Idempotent; returns the
 * edge when one was actually added.
 */
std::vector<Edge> write_decision_audit(SystemGraph& g, const Request& request,
                                       Decision decision);

/**
 * After an allowed request, declares the subject's interests: an @active
 * edge to every company the object is related to by some configured data
 * path, and an @blocked edge to every other company sharing a conflict
 * class with it. Existing edges are kept; @blocked is never written where
 * @active already exists. Companies are the nodes with an outgoing
 * member_label edge, scanned in lexicographic order. Returns the edges
 * actually added, @active before @blocked per company.
 */
std::vector<Edge> write_interest_edges(SystemGraph& g, const Request& request,
                                       const ChineseWallConfig& cw);

/** One exported decision-audit record. */
struct AuditLogEntry {
    std::uint64_t seq = 0;  // 1-based, chronological
    std::string subject;
    std::string object;
    std::string action;
    Decision decision = Decision::Deny;

    std::string to_string() const;
};

/** Decision-audit edges in insertion order, numbered from 1. */
std::vector<AuditLogEntry> export_audit_log(const SystemGraph& g);

}  // namespace relbac
