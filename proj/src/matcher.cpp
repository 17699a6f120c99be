#include "relbac/matcher.hpp"

#include <cassert>
#include <deque>
#include <set>

#include "relbac/errors.hpp"

namespace relbac {

CompiledPath::CompiledPath(const PathPtr& pc) : source_(pc) {
    assert(is_simple(pc));
    auto [entry, exit] = build(*pc);
    start_ = entry;
    accept_ = exit;
    compute_closures();
}

int CompiledPath::new_state() {
    transitions_.emplace_back();
    eps_.emplace_back();
    return static_cast<int>(transitions_.size()) - 1;
}

std::pair<int, int> CompiledPath::build(const PathCondition& pc) {
    switch (pc.kind) {
        case PathCondition::Kind::Diamond: {
            int s = new_state();
            int t = new_state();
            eps_[s].push_back(t);
            return {s, t};
        }
        case PathCondition::Kind::Edge: {
            int s = new_state();
            int t = new_state();
            transitions_[s].push_back({pc.label, false, t});
            return {s, t};
        }
        case PathCondition::Kind::ReversedEdge: {
            int s = new_state();
            int t = new_state();
            transitions_[s].push_back({pc.label, true, t});
            return {s, t};
        }
        case PathCondition::Kind::Concat: {
            auto [ls, lt] = build(*pc.left);
            auto [rs, rt] = build(*pc.right);
            eps_[lt].push_back(rs);
            return {ls, rt};
        }
        case PathCondition::Kind::Plus: {
            auto [s, t] = build(*pc.left);
            eps_[t].push_back(s);  // one or more: loop back after a full pass
            return {s, t};
        }
        case PathCondition::Kind::Reverse:
            break;  // excluded by is_simple
    }
    assert(false && "reverse nodes cannot be compiled");
    int s = new_state();
    return {s, s};
}

void CompiledPath::compute_closures() {
    closures_.resize(transitions_.size());
    for (int s = 0; s < state_count(); ++s) {
        std::vector<int> stack{s};
        std::set<int> seen{s};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int nxt : eps_[cur])
                if (seen.insert(nxt).second) stack.push_back(nxt);
        }
        closures_[s].assign(seen.begin(), seen.end());
    }
}

namespace {

bool traversable(EdgeKind kind) {
    return kind == EdgeKind::Relationship || kind == EdgeKind::DecisionAudit ||
           kind == EdgeKind::InterestAudit;
}

}  // namespace

bool satisfies(const SystemGraph& g, const std::string& u, const std::string& v,
               const CompiledPath& cp, EvalMetrics& metrics) {
    if (!g.has_node(u)) throw UnknownNodeError(u);
    if (!g.has_node(v)) throw UnknownNodeError(v);

    using Product = std::pair<const std::string*, int>;
    struct Less {
        bool operator()(const Product& a, const Product& b) const {
            if (*a.first != *b.first) return *a.first < *b.first;
            return a.second < b.second;
        }
    };

    std::set<Product, Less> visited;
    std::deque<Product> queue;

    auto enqueue = [&](const std::string& node, int state) -> bool {
        // Returns true when the accepting product state was reached.
        for (int cs : cp.closure(state)) {
            if (visited.insert({&node, cs}).second) {
                if (cs == cp.accept() && node == v) return true;
                queue.push_back({&node, cs});
            }
        }
        return false;
    };

    if (enqueue(g.node(u).id, cp.start())) return true;

    const std::size_t bound = g.node_count() * static_cast<std::size_t>(cp.state_count());
    while (!queue.empty()) {
        auto [node, state] = queue.front();
        queue.pop_front();
        ++metrics.nodes_visited;
        assert(visited.size() <= bound);
        (void)bound;

        for (const auto& tr : cp.transitions(state)) {
            bool symmetric = tr.label.tag == PathLabel::Tag::Rel &&
                             g.model().is_symmetric(tr.label.name);
            // A forward transition follows stored edges out of `node`; a
            // reversed one follows stored edges into it. Symmetric labels
            // additionally match against the opposite list.
            const auto& primary = tr.reversed ? g.in_adjacency(*node) : g.out_adjacency(*node);
            for (const auto& adj : primary) {
                ++metrics.edges_considered;
                if (!traversable(adj.edge->kind)) continue;
                if (!tr.label.matches(adj.edge->label)) continue;
                const std::string& next = tr.reversed ? adj.edge->src : adj.edge->dst;
                if (enqueue(next, tr.target)) return true;
            }
            if (symmetric) {
                const auto& secondary =
                    tr.reversed ? g.out_adjacency(*node) : g.in_adjacency(*node);
                for (const auto& adj : secondary) {
                    ++metrics.edges_considered;
                    if (adj.edge->kind != EdgeKind::Relationship) continue;
                    if (!tr.label.matches(adj.edge->label)) continue;
                    const std::string& next = tr.reversed ? adj.edge->dst : adj.edge->src;
                    if (enqueue(next, tr.target)) return true;
                }
            }
        }
    }
    return false;
}

bool satisfies(const SystemGraph& g, const std::string& u, const std::string& v,
               const PathPtr& pc, EvalMetrics& metrics) {
    CompiledPath cp(simplify(pc));
    return satisfies(g, u, v, cp, metrics);
}

bool satisfies(const SystemGraph& g, const std::string& u, const std::string& v,
               const PathPtr& pc) {
    EvalMetrics scratch;
    return satisfies(g, u, v, pc, scratch);
}

}  // namespace relbac
