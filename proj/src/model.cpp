#include "relbac/model.hpp"

namespace relbac {

std::vector<std::string> SystemModel::validate() const {
    std::vector<std::string> problems;
    for (const auto& s : symmetric) {
        if (!labels.count(s))
            problems.push_back("symmetric label not declared: " + s);
    }
    for (const auto& p : permissible) {
        if (!types.count(p.src_type))
            problems.push_back("permissible edge references unknown type: " + p.src_type);
        if (!types.count(p.dst_type))
            problems.push_back("permissible edge references unknown type: " + p.dst_type);
        if (!labels.count(p.label))
            problems.push_back("permissible edge references unknown label: " + p.label);
    }
    return problems;
}

}  // namespace relbac
