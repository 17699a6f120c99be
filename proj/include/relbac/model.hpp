#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace relbac {

/** One permissible relationship: (source type, target type, label). */
struct PermissibleEdge {
    std::string src_type;
    std::string dst_type;
    std::string label;

    auto operator<=>(const PermissibleEdge&) const = default;
};

/**
 * The system model: entity types, relationship labels (some symmetric),
 * and the permissible relationship graph over types.
 */
struct SystemModel {
    std::set<std::string> types;
    std::set<std::string> labels;
    std::set<std::string> symmetric;  // subset of labels
    std::set<PermissibleEdge> permissible;

    bool has_type(const std::string& t) const { return types.count(t) > 0; }
    bool has_label(const std::string& r) const { return labels.count(r) > 0; }
    bool is_symmetric(const std::string& r) const { return symmetric.count(r) > 0; }
    bool permits(const std::string& src_type, const std::string& dst_type,
                 const std::string& label) const {
        return permissible.count({src_type, dst_type, label}) > 0;
    }

    /** Internal consistency: symmetric ⊆ labels, permissible edges resolve. */
    std::vector<std::string> validate() const;
};

}  // namespace relbac
