#pragma once

#include <cstdint>
#include <vector>

#include "relbac/path.hpp"

namespace relbac {

/** Work counters for path-condition evaluation; accumulate monotonically. */
struct EvalMetrics {
    std::uint64_t nodes_visited = 0;    // distinct product states dequeued
    std::uint64_t edges_considered = 0; // adjacency entries inspected

    EvalMetrics& operator+=(const EvalMetrics& o) {
        nodes_visited += o.nodes_visited;
        edges_considered += o.edges_considered;
        return *this;
    }
};

/**
 * A simple path condition compiled to a small NFA: forward transitions for
 * Edge leaves, backward transitions for ReversedEdge leaves, an epsilon
 * back-loop for Plus.
 */
class CompiledPath {
public:
    /** Requires is_simple(pc). */
    explicit CompiledPath(const PathPtr& pc);

    struct Transition {
        PathLabel label;
        bool reversed = false;
        int target = 0;
    };

    int state_count() const { return static_cast<int>(transitions_.size()); }
    int start() const { return start_; }
    int accept() const { return accept_; }
    const std::vector<Transition>& transitions(int state) const {
        return transitions_[state];
    }
    /** Epsilon closure of one state (precomputed, includes the state). */
    const std::vector<int>& closure(int state) const { return closures_[state]; }

    const PathPtr& source() const { return source_; }

private:
    int new_state();
    /** Builds the fragment for pc; returns {entry, exit}. */
    std::pair<int, int> build(const PathCondition& pc);
    void compute_closures();

    PathPtr source_;
    std::vector<std::vector<Transition>> transitions_;
    std::vector<std::vector<int>> eps_;
    std::vector<std::vector<int>> closures_;
    int start_ = 0;
    int accept_ = 0;
};

/**
 * Decides whether the graph satisfies the compiled condition between u and v
 * by breadth-first search over (graph node × NFA state) pairs. Traverses
 * relationship and audit edges, never caching edges. Metrics accumulate into
 * `metrics`: every dequeued product state counts toward nodes_visited, every
 * adjacency entry inspected (matching or not) toward edges_considered.
 * Throws UnknownNodeError when u or v is missing.
 */
bool satisfies(const SystemGraph& g, const std::string& u, const std::string& v,
               const CompiledPath& cp, EvalMetrics& metrics);

/** Convenience: simplifies, compiles, and evaluates pc in one call. */
bool satisfies(const SystemGraph& g, const std::string& u, const std::string& v,
               const PathPtr& pc, EvalMetrics& metrics);
bool satisfies(const SystemGraph& g, const std::string& u, const std::string& v,
               const PathPtr& pc);

}  // namespace relbac
