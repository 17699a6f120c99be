#include "relbac/cache.hpp"

#include <algorithm>

namespace relbac {

std::string to_string(InvalidationMode m) {
    return m == InvalidationMode::FlushAll ? "FlushAll" : "ScopedBySubject";
}

void CacheManager::adopt(SystemGraph& g, std::uint64_t eval_seq) {
    entries_.clear();
    for (const auto& e : g.edges_of_kind(EdgeKind::Caching)) {
        entries_[{e.src, e.dst}] = {e.label.principals,
                                    CacheEntryMeta{g.revision(), eval_seq}};
    }
}

std::optional<std::vector<std::string>> CacheManager::lookup(
    const std::string& subject, const std::string& object, std::uint64_t eval_seq) {
    if (!cfg_.enabled) return std::nullopt;
    auto it = entries_.find({subject, object});
    if (it == entries_.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    it->second.second.last_hit = eval_seq;
    return it->second.first;
}

std::size_t CacheManager::erase_entry(SystemGraph& g, const Key& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return 0;
    g.remove_edge({key.first, key.second, EdgeKind::Caching,
                   EdgeLabel::cached(it->second.first)});
    entries_.erase(it);
    return 1;
}

void CacheManager::evict_for_insert(SystemGraph& g, const std::string& subject) {
    auto pick_victim = [&](bool same_subject_only) -> std::optional<Key> {
        // Least recently hit first; ties broken by oldest creation.
        std::optional<Key> victim;
        const CacheEntryMeta* best = nullptr;
        for (const auto& [key, value] : entries_) {
            if (same_subject_only && key.first != subject) continue;
            const CacheEntryMeta& m = value.second;
            if (!best || m.last_hit < best->last_hit ||
                (m.last_hit == best->last_hit && m.created_rev < best->created_rev)) {
                best = &m;
                victim = key;
            }
        }
        return victim;
    };

    if (cfg_.max_out_degree) {
        std::size_t degree = 0;
        for (const auto& [key, _] : entries_)
            if (key.first == subject) ++degree;
        while (degree >= *cfg_.max_out_degree) {
            auto victim = pick_victim(true);
            if (!victim) break;
            erase_entry(g, *victim);
            --degree;
        }
    }
    if (cfg_.max_total) {
        while (entries_.size() >= *cfg_.max_total) {
            auto victim = pick_victim(false);
            if (!victim) break;
            erase_entry(g, *victim);
        }
    }
}

std::optional<Edge> CacheManager::insert(SystemGraph& g, const std::string& subject,
                                         const std::string& object,
                                         const std::vector<std::string>& principals,
                                         std::uint64_t eval_seq) {
    if (!cfg_.enabled) return std::nullopt;
    if (cfg_.max_total && *cfg_.max_total == 0) return std::nullopt;
    if (cfg_.max_out_degree && *cfg_.max_out_degree == 0) return std::nullopt;

    Key key{subject, object};
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        if (it->second.first == principals) return std::nullopt;  // identical
        erase_entry(g, key);  // replace with the fresh list
    } else {
        evict_for_insert(g, subject);
    }
    Edge e{subject, object, EdgeKind::Caching, EdgeLabel::cached(principals)};
    g.add_edge(e);
    entries_[key] = {principals, CacheEntryMeta{g.revision(), eval_seq}};
    return e;
}

std::size_t CacheManager::retire_sweep(SystemGraph& g, std::uint64_t eval_seq) {
    if (!cfg_.enabled || !cfg_.retirement_age) return 0;
    std::vector<Key> stale;
    for (const auto& [key, value] : entries_)
        if (eval_seq - value.second.last_hit > *cfg_.retirement_age)
            stale.push_back(key);
    std::size_t purged = 0;
    for (const auto& key : stale) purged += erase_entry(g, key);
    return purged;
}

std::size_t CacheManager::flush(SystemGraph& g, const std::optional<std::string>& subject) {
    std::vector<Key> doomed;
    for (const auto& [key, _] : entries_)
        if (!subject || key.first == *subject) doomed.push_back(key);
    std::size_t purged = 0;
    for (const auto& key : doomed) purged += erase_entry(g, key);
    last_flush_rev_ = g.revision();
    return purged;
}

std::size_t CacheManager::on_graph_change(SystemGraph& g, const GraphChange& change) {
    if (!cfg_.enabled) return 0;
    switch (change.edge.kind) {
        case EdgeKind::Caching:
            return 0;  // caching-edge churn never invalidates
        case EdgeKind::Relationship:
            break;  // any relationship mutation may change any principal list
        case EdgeKind::DecisionAudit:
        case EdgeKind::InterestAudit: {
            // An audit edge labelled L can only flip conditions mentioning L.
            bool relevant = false;
            for (const auto& label : sensitive_) {
                if (label.matches(change.edge.label)) {
                    relevant = true;
                    break;
                }
            }
            if (!relevant) return 0;
            break;
        }
    }
    if (cfg_.invalidation == InvalidationMode::ScopedBySubject)
        return flush(g, change.edge.src);
    return flush(g, std::nullopt);
}

std::size_t CacheManager::on_policy_change(SystemGraph& g) {
    if (!cfg_.enabled) return 0;
    return flush(g, std::nullopt);
}

std::size_t CacheManager::purge_all(SystemGraph& g) {
    // Works over the graph itself so caching edges loaded while the cache
    // is disabled still get removed.
    std::size_t purged = 0;
    for (const auto& e : g.edges_of_kind(EdgeKind::Caching))
        purged += g.remove_edge(e) ? 1 : 0;
    entries_.clear();
    last_flush_rev_ = g.revision();
    return purged;
}

CacheStats CacheManager::stats() const { return {entries_.size(), hits_, misses_}; }

const CacheEntryMeta* CacheManager::meta(const std::string& subject,
                                         const std::string& object) const {
    auto it = entries_.find({subject, object});
    return it == entries_.end() ? nullptr : &it->second.second;
}

}  // namespace relbac
