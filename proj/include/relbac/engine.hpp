#pragma once

#include <deque>
#include <string>
#include <vector>

#include "relbac/io.hpp"

namespace relbac {

/** Everything evaluate() decided and did. */
struct EvalOutcome {
    Decision decision = Decision::Deny;
    std::vector<std::string> matched_principals;
    std::set<int> decision_set;
    EvalMetrics metrics;       // principal-matching work for this request
    bool cache_hit = false;
    std::vector<Edge> written_edges;  // caching edge, then decision, then interest
};

/**
 * The policy decision point: owns the system graph, the active policies, the
 * cache, and the write-back hooks. Single writer, multiple readers.
 *
 * evaluate() pipeline: cache lookup → principal matching on a miss →
 * authorization → writers in fixed order (caching edge, decision-audit edge,
 * interest edges). Audit writes invalidate the cache when their label occurs
 * in the matching policy; external relationship mutations always do.
 */
class Engine {
public:
    Engine(SystemGraph graph, PolicyPair policies, EngineConfig config);

    // The graph's mutation listener captures `this`.
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /** Builds an engine from parsed document texts. */
    static Engine from_documents(const std::string& model_text,
                                 const std::string& graph_text,
                                 const std::string& policy_text,
                                 const std::string& config_text = "");

    EvalOutcome evaluate(const Request& request, bool use_cache = true);

    /** External relationship-edge mutation; invalidates the cache. */
    bool add_relationship_edge(const std::string& src, const std::string& label,
                               const std::string& dst);
    bool remove_relationship_edge(const std::string& src, const std::string& label,
                                  const std::string& dst);

    /** Swaps the active policies; flushes the cache. */
    void reload_policies(PolicyPair policies);
    /** Swaps strategies; flushes the cache. */
    void set_strategies(MatchingStrategy pms, ResolutionStrategy crs);

    /**
     * Computes and caches principal lists ahead of time for (subject,object)
     * pairs lacking a caching edge, up to `budget` pairs. Performs no
     * authorization and writes no audit edges. Returns insertions made.
     */
    std::size_t precache(const SubjectFocusedPrecache& strategy, std::size_t budget);
    std::size_t precache(const ObjectFocusedPrecache& strategy, std::size_t budget);

    /** Removes every caching edge; returns how many went away. */
    std::size_t purge_cache();

    /** Marks a subject as recently active (for subject-focused precaching). */
    void record_recent_subject(const std::string& subject) { note_subject(subject); }

    CacheStats cache_stats() const { return cache_.stats(); }
    const SystemGraph& graph() const { return graph_; }
    const PolicyPair& policies() const { return policies_; }
    const EngineConfig& config() const { return config_; }
    const CacheManager& cache() const { return cache_; }
    std::uint64_t eval_seq() const { return eval_seq_; }
    /** Distinct subjects of recent evaluations, most recent first. */
    const std::deque<std::string>& recent_subjects() const { return recent_subjects_; }

    /** Document-level validation messages (graph + policies + config). */
    std::vector<std::string> validate() const;

private:
    std::size_t precache_pairs(
        const std::vector<std::pair<std::string, std::string>>& pairs,
        std::size_t budget);
    void note_subject(const std::string& subject);
    void install_listener();

    SystemGraph graph_;
    PolicyPair policies_;
    CompiledPmPolicy compiled_pm_;
    EngineConfig config_;
    CacheManager cache_;
    std::uint64_t eval_seq_ = 0;
    std::deque<std::string> recent_subjects_;
    static constexpr std::size_t kRecentCapacity = 64;
};

}  // namespace relbac
