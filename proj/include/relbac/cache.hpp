#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relbac/policy.hpp"

namespace relbac {

enum class InvalidationMode { FlushAll, ScopedBySubject };

std::string to_string(InvalidationMode m);

struct CacheConfig {
    bool enabled = true;
    bool write_on_eval = true;
    InvalidationMode invalidation = InvalidationMode::FlushAll;
    std::optional<std::size_t> max_total;
    std::optional<std::size_t> max_out_degree;
    std::optional<std::uint64_t> retirement_age;  // evaluations since last hit
};

struct CacheStats {
    std::size_t size = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
};

/** Bookkeeping attached to one caching edge. */
struct CacheEntryMeta {
    std::uint64_t created_rev = 0;  // graph revision right after insertion
    std::uint64_t last_hit = 0;     // evaluation sequence of creation/last hit
};

/** Precache work orders. */
struct SubjectFocusedPrecache {
    std::size_t recent_k = 0;              // how many recent subjects to use
    std::vector<std::string> targets;      // candidate objects
};
struct ObjectFocusedPrecache {
    std::vector<std::string> objects;
    std::vector<std::string> subjects;
};

/**
 * Manages the caching edges stored in a system graph: lookup, insertion with
 * threshold-driven eviction, retirement, and invalidation. The caching edges
 * themselves live in the graph (they serialize with it); this class keeps the
 * (src,dst) index, per-entry metadata, and hit/miss counters.
 *
 * Invalidation policy: relationship-edge mutations and policy or strategy
 * changes flush per the configured mode; audit-edge writes flush only when
 * the written label occurs in the active principal-matching policy (an edge
 * labelled L can only change conditions that mention L); caching-edge
 * mutations trigger nothing.
 */
class CacheManager {
public:
    CacheManager() = default;
    explicit CacheManager(CacheConfig cfg) : cfg_(std::move(cfg)) {}

    const CacheConfig& config() const { return cfg_; }
    void set_config(const CacheConfig& cfg) { cfg_ = cfg; }

    /** Labels whose audit-edge writes must invalidate (from the PM policy). */
    void set_sensitive_labels(std::set<PathLabel> labels) {
        sensitive_ = std::move(labels);
    }

    /** Rebuilds index and metadata from the caching edges already in g. */
    void adopt(SystemGraph& g, std::uint64_t eval_seq);

    /**
     * Returns the cached principal list for (s,o) when present; records a
     * hit (updating last_hit) or a miss. Returns nothing when disabled.
     */
    std::optional<std::vector<std::string>> lookup(const std::string& subject,
                                                   const std::string& object,
                                                   std::uint64_t eval_seq);

    /**
     * Inserts (or replaces) the caching edge (s,o,mp), evicting least
     * recently hit entries (ties: oldest) first when max_total or
     * max_out_degree would be exceeded. Returns the written edge, or
     * nothing when an identical edge already exists or caching is disabled.
     */
    std::optional<Edge> insert(SystemGraph& g, const std::string& subject,
                               const std::string& object,
                               const std::vector<std::string>& principals,
                               std::uint64_t eval_seq);

    /** Purges entries unused for longer than retirement_age evaluations. */
    std::size_t retire_sweep(SystemGraph& g, std::uint64_t eval_seq);

    /** Reacts to a graph mutation (see class comment). Returns purge count. */
    std::size_t on_graph_change(SystemGraph& g, const GraphChange& change);

    /** Policy or strategy change: flushes everything. */
    std::size_t on_policy_change(SystemGraph& g);

    /** Removes every caching edge regardless of mode. */
    std::size_t purge_all(SystemGraph& g);

    CacheStats stats() const;
    std::size_t size() const { return entries_.size(); }
    bool contains(const std::string& subject, const std::string& object) const {
        return entries_.count({subject, object}) > 0;
    }
    const CacheEntryMeta* meta(const std::string& subject,
                               const std::string& object) const;
    std::uint64_t last_flush_revision() const { return last_flush_rev_; }

private:
    using Key = std::pair<std::string, std::string>;

    std::size_t flush(SystemGraph& g, const std::optional<std::string>& subject);
    void evict_for_insert(SystemGraph& g, const std::string& subject);
    std::size_t erase_entry(SystemGraph& g, const Key& key);

    CacheConfig cfg_;
    std::set<PathLabel> sensitive_;
    std::map<Key, std::pair<std::vector<std::string>, CacheEntryMeta>> entries_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
    std::uint64_t last_flush_rev_ = 0;
};

}  // namespace relbac
