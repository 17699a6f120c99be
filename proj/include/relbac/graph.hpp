#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relbac/model.hpp"

namespace relbac {

/** The four kinds of edge a system graph can hold. */
enum class EdgeKind { Relationship, Caching, DecisionAudit, InterestAudit };

std::string to_string(EdgeKind kind);

/**
 * An edge label. Exactly one shape per kind:
 *  - Relationship edges carry a relationship label from the model,
 *  - Caching edges carry an ordered principal list,
 *  - DecisionAudit edges carry allow!<action> or deny!<action>,
 *  - InterestAudit edges carry @active or @blocked.
 */
struct EdgeLabel {
    enum class Tag { Rel, Principals, AllowAudit, DenyAudit, ActiveInterest, BlockedInterest };

    Tag tag = Tag::Rel;
    std::string name;                          // relationship label or action
    std::vector<std::string> principals;       // Tag::Principals only

    static EdgeLabel rel(std::string label);
    static EdgeLabel cached(std::vector<std::string> principals);
    static EdgeLabel allow_audit(std::string action);
    static EdgeLabel deny_audit(std::string action);
    static EdgeLabel active_interest();
    static EdgeLabel blocked_interest();

    EdgeKind kind() const;
    /** Rendered form: r, [p1,p2], allow!a, deny!a, @active, @blocked. */
    std::string to_string() const;

    auto operator<=>(const EdgeLabel&) const = default;
};

struct Entity {
    std::string id;
    std::string type;
};

struct Edge {
    std::string src;
    std::string dst;
    EdgeKind kind = EdgeKind::Relationship;
    EdgeLabel label;

    std::string to_string() const;
    auto operator<=>(const Edge&) const = default;
};

/** A well-formedness violation found by validate(). */
struct Violation {
    std::string message;
};

/** Notification sent after a successful edge mutation. */
struct GraphChange {
    enum class Op { EdgeAdded, EdgeRemoved };
    Op op;
    Edge edge;
    std::uint64_t revision = 0;
};

/**
 * The system graph: typed nodes plus relationship, caching, and audit edges.
 * Duplicate edges (same src, dst, kind, label) are suppressed. A revision
 * counter increments on every successful mutation and never otherwise.
 *
 * Single writer, multiple readers; the store performs no locking.
 */
class SystemGraph {
public:
    SystemGraph() = default;
    explicit SystemGraph(SystemModel model) : model_(std::move(model)) {}

    const SystemModel& model() const { return model_; }
    std::uint64_t revision() const { return revision_; }

    /** Adjacency entry seen from one endpoint of an edge. */
    struct Adjacent {
        const Edge* edge;
        bool forward;  // true when the queried node is the stored source
        const std::string& other() const { return forward ? edge->dst : edge->src; }
    };

    bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }
    const Entity& node(const std::string& id) const;
    /** Node ids in lexicographic order. */
    std::vector<std::string> node_ids() const;
    std::size_t node_count() const { return nodes_.size(); }

    /** Adds a node; false if the id already exists (type must then match). */
    bool add_node(const std::string& id, const std::string& type);

    /**
     * Adds an edge. Returns false (and changes nothing) when an identical
     * edge already exists. Relationship edges are checked against the
     * permissible relationship graph; caching and audit edges are exempt.
     */
    bool add_edge(const Edge& e);
    bool add_edge(const std::string& src, const std::string& dst, EdgeKind kind,
                  EdgeLabel label);

    /** Removes an exact edge; false when no such edge exists. */
    bool remove_edge(const Edge& e);

    bool has_edge(const Edge& e) const;

    /** All live edges, in insertion order. */
    std::vector<Edge> edges() const;
    /** Live edges of one kind, in insertion order. */
    std::vector<Edge> edges_of_kind(EdgeKind kind) const;

    /**
     * Edges incident to `node` of the given kind. Symmetric relationship
     * labels are reported from both endpoints; other labels only from the
     * stored source. Caching edges are reported from their source.
     */
    std::vector<Edge> edges_from(const std::string& node, EdgeKind kind) const;

    /** Edges between u and v of one kind (symmetric labels match either way). */
    std::vector<Edge> edges_between(const std::string& u, const std::string& v,
                                    EdgeKind kind) const;

    /**
     * Raw adjacency used by the matcher: entries where `node` is the stored
     * source (out) or target (in), relationship and audit kinds only.
     */
    const std::vector<Adjacent>& out_adjacency(const std::string& node) const;
    const std::vector<Adjacent>& in_adjacency(const std::string& node) const;

    /** Every node/edge violation against the model, empty when well-formed. */
    std::vector<Violation> validate() const;

    /** Installs the single mutation listener (pass nullptr to clear). */
    void set_mutation_listener(std::function<void(const GraphChange&)> fn) {
        listener_ = std::move(fn);
    }

private:
    struct EdgeRecord {
        Edge edge;
        std::uint64_t insert_revision = 0;
        bool alive = true;
    };

    void index_edge(std::size_t idx);
    void unindex_edge(std::size_t idx);
    void notify(GraphChange::Op op, const Edge& e);
    std::optional<std::size_t> find_edge(const Edge& e) const;

    SystemModel model_;
    std::map<std::string, Entity> nodes_;
    std::deque<EdgeRecord> records_;  // deque: stable element addresses
    std::map<std::string, std::vector<std::size_t>> by_src_;
    std::map<std::string, std::vector<std::size_t>> by_dst_;
    // Traversable adjacency (relationship + audit kinds), rebuilt incrementally.
    mutable std::map<std::string, std::vector<Adjacent>> out_adj_;
    mutable std::map<std::string, std::vector<Adjacent>> in_adj_;
    std::uint64_t revision_ = 0;
    std::function<void(const GraphChange&)> listener_;

    friend class CacheManager;
};

}  // namespace relbac
