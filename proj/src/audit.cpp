#include "relbac/audit.hpp"

#include <algorithm>

#include "relbac/errors.hpp"
#include "relbac/matcher.hpp"

namespace relbac {

std::vector<std::string> ChineseWallConfig::validate(const SystemModel& model) const {
    std::vector<std::string> problems;
    if (!enabled) return problems;
    if (data_paths.empty())
        problems.push_back("wall enforcement enabled without any data paths");
    if (member_label.empty())
        problems.push_back("wall enforcement enabled without a member label");
    else if (!model.has_label(member_label))
        problems.push_back("wall member label not in the model: " + member_label);
    return problems;
}

std::vector<Edge> write_decision_audit(SystemGraph& g, const Request& request,
                                       Decision decision) {
    Edge e{request.subject, request.object, EdgeKind::DecisionAudit,
           decision == Decision::Allow ? EdgeLabel::allow_audit(request.action)
                                       : EdgeLabel::deny_audit(request.action)};
    std::vector<Edge> written;
    if (g.add_edge(e)) written.push_back(e);
    return written;
}

std::vector<Edge> write_interest_edges(SystemGraph& g, const Request& request,
                                       const ChineseWallConfig& cw) {
    std::vector<Edge> written;
    if (!cw.enabled) return written;

    // Companies: nodes with at least one outgoing member-label edge, in
    // lexicographic order so the written edges come out deterministically.
    std::vector<std::string> companies;
    for (const auto& id : g.node_ids()) {
        for (const auto& e : g.edges_from(id, EdgeKind::Relationship)) {
            if (e.src == id && e.label.name == cw.member_label) {
                companies.push_back(id);
                break;
            }
        }
    }

    std::vector<CompiledPath> compiled;
    compiled.reserve(cw.data_paths.size());
    for (const auto& p : cw.data_paths) compiled.emplace_back(simplify(p));

    EvalMetrics scratch;  // discovery work is not charged to the request
    auto related = [&](const std::string& company) {
        return std::any_of(compiled.begin(), compiled.end(), [&](const CompiledPath& cp) {
            return satisfies(g, request.object, company, cp, scratch);
        });
    };

    for (const auto& company : companies) {
        if (!related(company)) continue;
        Edge active{request.subject, company, EdgeKind::InterestAudit,
                    EdgeLabel::active_interest()};
        if (g.add_edge(active)) written.push_back(active);

        // Block the other members of every conflict class this company is in.
        std::vector<std::string> rivals;
        for (const auto& m : g.edges_from(company, EdgeKind::Relationship)) {
            if (m.src != company || m.label.name != cw.member_label) continue;
            const std::string& coi = m.dst;
            for (const auto& adj : g.in_adjacency(coi)) {
                if (adj.edge->kind == EdgeKind::Relationship &&
                    adj.edge->label.name == cw.member_label &&
                    adj.edge->src != company)
                    rivals.push_back(adj.edge->src);
            }
        }
        std::sort(rivals.begin(), rivals.end());
        rivals.erase(std::unique(rivals.begin(), rivals.end()), rivals.end());
        for (const auto& rival : rivals) {
            if (g.has_edge({request.subject, rival, EdgeKind::InterestAudit,
                            EdgeLabel::active_interest()}))
                continue;  // an interest already held is never blocked
            Edge blocked{request.subject, rival, EdgeKind::InterestAudit,
                         EdgeLabel::blocked_interest()};
            if (g.add_edge(blocked)) written.push_back(blocked);
        }
    }
    return written;
}

std::string AuditLogEntry::to_string() const {
    return std::to_string(seq) + " " + subject + " " + object + " " + action + " " +
           relbac::to_string(decision);
}

std::vector<AuditLogEntry> export_audit_log(const SystemGraph& g) {
    std::vector<AuditLogEntry> out;
    std::uint64_t seq = 0;
    for (const auto& e : g.edges_of_kind(EdgeKind::DecisionAudit)) {
        out.push_back({++seq, e.src, e.dst, e.label.name,
                       e.label.tag == EdgeLabel::Tag::AllowAudit ? Decision::Allow
                                                                 : Decision::Deny});
    }
    return out;
}

}  // namespace relbac
