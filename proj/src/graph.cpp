#include "relbac/graph.hpp"

#include <algorithm>

#include "relbac/errors.hpp"

namespace relbac {

std::string to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Relationship: return "relationship";
        case EdgeKind::Caching: return "caching";
        case EdgeKind::DecisionAudit: return "decision";
        case EdgeKind::InterestAudit: return "interest";
    }
    return "?";
}

EdgeLabel EdgeLabel::rel(std::string label) {
    return {Tag::Rel, std::move(label), {}};
}
EdgeLabel EdgeLabel::cached(std::vector<std::string> principals) {
    return {Tag::Principals, {}, std::move(principals)};
}
EdgeLabel EdgeLabel::allow_audit(std::string action) {
    return {Tag::AllowAudit, std::move(action), {}};
}
EdgeLabel EdgeLabel::deny_audit(std::string action) {
    return {Tag::DenyAudit, std::move(action), {}};
}
EdgeLabel EdgeLabel::active_interest() { return {Tag::ActiveInterest, {}, {}}; }
EdgeLabel EdgeLabel::blocked_interest() { return {Tag::BlockedInterest, {}, {}}; }

EdgeKind EdgeLabel::kind() const {
    switch (tag) {
        case Tag::Rel: return EdgeKind::Relationship;
        case Tag::Principals: return EdgeKind::Caching;
        case Tag::AllowAudit:
        case Tag::DenyAudit: return EdgeKind::DecisionAudit;
        case Tag::ActiveInterest:
        case Tag::BlockedInterest: return EdgeKind::InterestAudit;
    }
    return EdgeKind::Relationship;
}

std::string EdgeLabel::to_string() const {
    switch (tag) {
        case Tag::Rel: return name;
        case Tag::Principals: {
            std::string out = "[";
            for (std::size_t i = 0; i < principals.size(); ++i) {
                if (i) out += ",";
                out += principals[i];
            }
            return out + "]";
        }
        case Tag::AllowAudit: return "allow!" + name;
        case Tag::DenyAudit: return "deny!" + name;
        case Tag::ActiveInterest: return "@active";
        case Tag::BlockedInterest: return "@blocked";
    }
    return "?";
}

std::string Edge::to_string() const {
    return src + " -" + label.to_string() + "-> " + dst;
}

const Entity& SystemGraph::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNodeError(id);
    return it->second;
}

std::vector<std::string> SystemGraph::node_ids() const {
    std::vector<std::string> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_) ids.push_back(id);
    return ids;
}

bool SystemGraph::add_node(const std::string& id, const std::string& type) {
    auto it = nodes_.find(id);
    if (it != nodes_.end()) {
        if (it->second.type != type)
            throw WellFormednessError("node " + id + " already exists with type " +
                                      it->second.type);
        return false;
    }
    nodes_.emplace(id, Entity{id, type});
    ++revision_;
    return true;
}

std::optional<std::size_t> SystemGraph::find_edge(const Edge& e) const {
    auto it = by_src_.find(e.src);
    if (it == by_src_.end()) return std::nullopt;
    for (std::size_t idx : it->second) {
        const EdgeRecord& rec = records_[idx];
        if (rec.alive && rec.edge == e) return idx;
    }
    return std::nullopt;
}

bool SystemGraph::has_edge(const Edge& e) const { return find_edge(e).has_value(); }

bool SystemGraph::add_edge(const Edge& e) {
    if (!has_node(e.src)) throw UnknownNodeError(e.src);
    if (!has_node(e.dst)) throw UnknownNodeError(e.dst);
    if (e.label.kind() != e.kind)
        throw WellFormednessError("label " + e.label.to_string() +
                                  " does not fit edge kind " + relbac::to_string(e.kind));
    if (e.kind == EdgeKind::Relationship) {
        // Only relationship edges face the permissible relationship graph;
        // caching and audit edges are engine-written overlays.
        const std::string& st = nodes_.at(e.src).type;
        const std::string& dt = nodes_.at(e.dst).type;
        if (!model_.has_label(e.label.name))
            throw WellFormednessError("unknown relationship label: " + e.label.name);
        if (!model_.permits(st, dt, e.label.name))
            throw WellFormednessError("relationship not permitted: (" + st + ", " + dt +
                                      ", " + e.label.name + ")");
    }
    if (has_edge(e)) return false;
    ++revision_;
    records_.push_back({e, revision_, true});
    index_edge(records_.size() - 1);
    notify(GraphChange::Op::EdgeAdded, e);
    return true;
}

bool SystemGraph::add_edge(const std::string& src, const std::string& dst,
                           EdgeKind kind, EdgeLabel label) {
    return add_edge(Edge{src, dst, kind, std::move(label)});
}

bool SystemGraph::remove_edge(const Edge& e) {
    auto idx = find_edge(e);
    if (!idx) return false;
    records_[*idx].alive = false;
    unindex_edge(*idx);
    ++revision_;
    notify(GraphChange::Op::EdgeRemoved, e);
    return true;
}

void SystemGraph::index_edge(std::size_t idx) {
    const Edge& e = records_[idx].edge;
    by_src_[e.src].push_back(idx);
    by_dst_[e.dst].push_back(idx);
    if (e.kind != EdgeKind::Caching) {
        out_adj_[e.src].push_back({&records_[idx].edge, true});
        in_adj_[e.dst].push_back({&records_[idx].edge, false});
    }
}

void SystemGraph::unindex_edge(std::size_t idx) {
    const Edge& e = records_[idx].edge;
    auto drop = [&](std::vector<std::size_t>& v) {
        v.erase(std::remove(v.begin(), v.end(), idx), v.end());
    };
    drop(by_src_[e.src]);
    drop(by_dst_[e.dst]);
    if (e.kind != EdgeKind::Caching) {
        auto drop_adj = [&](std::vector<Adjacent>& v) {
            v.erase(std::remove_if(v.begin(), v.end(),
                                   [&](const Adjacent& a) { return a.edge == &e; }),
                    v.end());
        };
        drop_adj(out_adj_[e.src]);
        drop_adj(in_adj_[e.dst]);
    }
}

void SystemGraph::notify(GraphChange::Op op, const Edge& e) {
    if (listener_) listener_({op, e, revision_});
}

std::vector<Edge> SystemGraph::edges() const {
    std::vector<Edge> out;
    for (const auto& rec : records_)
        if (rec.alive) out.push_back(rec.edge);
    return out;
}

std::vector<Edge> SystemGraph::edges_of_kind(EdgeKind kind) const {
    std::vector<Edge> out;
    for (const auto& rec : records_)
        if (rec.alive && rec.edge.kind == kind) out.push_back(rec.edge);
    return out;
}

std::vector<Edge> SystemGraph::edges_from(const std::string& node, EdgeKind kind) const {
    if (!has_node(node)) throw UnknownNodeError(node);
    std::vector<Edge> out;
    if (auto it = by_src_.find(node); it != by_src_.end())
        for (std::size_t idx : it->second) {
            const EdgeRecord& rec = records_[idx];
            if (rec.alive && rec.edge.kind == kind) out.push_back(rec.edge);
        }
    if (kind == EdgeKind::Relationship) {
        if (auto it = by_dst_.find(node); it != by_dst_.end())
            for (std::size_t idx : it->second) {
                const EdgeRecord& rec = records_[idx];
                if (rec.alive && rec.edge.kind == kind && rec.edge.src != node &&
                    model_.is_symmetric(rec.edge.label.name))
                    out.push_back(rec.edge);
            }
    }
    return out;
}

std::vector<Edge> SystemGraph::edges_between(const std::string& u, const std::string& v,
                                             EdgeKind kind) const {
    if (!has_node(u)) throw UnknownNodeError(u);
    if (!has_node(v)) throw UnknownNodeError(v);
    std::vector<Edge> out;
    if (auto it = by_src_.find(u); it != by_src_.end())
        for (std::size_t idx : it->second) {
            const EdgeRecord& rec = records_[idx];
            if (rec.alive && rec.edge.kind == kind && rec.edge.dst == v)
                out.push_back(rec.edge);
        }
    if (kind == EdgeKind::Relationship && u != v) {
        if (auto it = by_src_.find(v); it != by_src_.end())
            for (std::size_t idx : it->second) {
                const EdgeRecord& rec = records_[idx];
                if (rec.alive && rec.edge.kind == kind && rec.edge.dst == u &&
                    model_.is_symmetric(rec.edge.label.name))
                    out.push_back(rec.edge);
            }
    }
    return out;
}

const std::vector<SystemGraph::Adjacent>& SystemGraph::out_adjacency(
    const std::string& node) const {
    static const std::vector<Adjacent> empty;
    auto it = out_adj_.find(node);
    return it == out_adj_.end() ? empty : it->second;
}

const std::vector<SystemGraph::Adjacent>& SystemGraph::in_adjacency(
    const std::string& node) const {
    static const std::vector<Adjacent> empty;
    auto it = in_adj_.find(node);
    return it == in_adj_.end() ? empty : it->second;
}

std::vector<Violation> SystemGraph::validate() const {
    std::vector<Violation> out;
    for (const auto& msg : model_.validate()) out.push_back({msg});
    for (const auto& [id, ent] : nodes_) {
        if (!model_.has_type(ent.type))
            out.push_back({"node " + id + " has unknown type " + ent.type});
    }
    for (const auto& rec : records_) {
        if (!rec.alive || rec.edge.kind != EdgeKind::Relationship) continue;
        const Edge& e = rec.edge;
        auto su = nodes_.find(e.src);
        auto sv = nodes_.find(e.dst);
        if (su == nodes_.end() || sv == nodes_.end()) continue;  // reported above
        if (!model_.has_label(e.label.name)) {
            out.push_back({"edge " + e.to_string() + " uses unknown label"});
        } else if (!model_.permits(su->second.type, sv->second.type, e.label.name)) {
            out.push_back({"edge " + e.to_string() + " is not permitted by the model"});
        }
    }
    return out;
}

}  // namespace relbac
