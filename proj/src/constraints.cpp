#include "relbac/constraints.hpp"

#include <algorithm>

#include "relbac/errors.hpp"

namespace relbac {

namespace {

void check_fresh(const PolicyPair& base, const std::string& principal) {
    for (const auto& r : base.pm.rules)
        if (r.principal == principal)
            throw NameCollisionError("principal already used by a matching rule: " +
                                     principal);
    for (const auto& r : base.auth.rules)
        if (r.principal == principal)
            throw NameCollisionError("principal already used by an authorization rule: " +
                                     principal);
}

}  // namespace

PolicyPair generate_sod(const PolicyPair& base, const SodSpec& spec) {
    if (spec.object.empty()) throw ConfigError("separation spec needs an object");
    if (spec.actions.size() < 2)
        throw ConfigError("separation spec needs at least two actions");
    {
        auto sorted = spec.actions;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError("separation spec actions must be distinct");
    }
    if (spec.mode == SodSpec::Mode::General &&
        spec.principals.size() != spec.actions.size())
        throw ConfigError("general mode needs one principal per action");
    if (spec.mode == SodSpec::Mode::Basic && spec.principals.size() != 1)
        throw ConfigError("basic mode needs exactly one principal");
    for (const auto& p : spec.principals) check_fresh(base, p);

    PolicyPair out;
    if (spec.mode == SodSpec::Mode::General) {
        // One rule per action: having performed a_i marks you as p_i, and
        // p_i is denied every other constrained action on the object.
        for (std::size_t i = 0; i < spec.actions.size(); ++i)
            out.pm.rules.push_back(
                {edge(PathLabel::allow_audit(spec.actions[i])), spec.principals[i]});
        for (std::size_t i = 0; i < spec.actions.size(); ++i)
            for (std::size_t j = 0; j < spec.actions.size(); ++j)
                if (j != i)
                    out.auth.rules.push_back({spec.principals[i], spec.object,
                                              spec.actions[j], Decision::Deny});
    } else {
        // One shared principal: any performed action locks the object.
        for (const auto& action : spec.actions)
            out.pm.rules.push_back(
                {edge(PathLabel::allow_audit(action)), spec.principals.front()});
        out.auth.rules.push_back(
            {spec.principals.front(), spec.object, "*", Decision::Deny});
    }
    out.pm.rules.insert(out.pm.rules.end(), base.pm.rules.begin(), base.pm.rules.end());
    out.auth.rules.insert(out.auth.rules.end(), base.auth.rules.begin(),
                          base.auth.rules.end());
    return out;
}

PolicyPair generate_chinese_wall(const PolicyPair& base, const ChineseWallConfig& cw,
                                 const std::string& principal) {
    if (cw.data_paths.empty())
        throw ConfigError("wall generation needs at least one data path");
    if (principal.empty()) throw ConfigError("wall generation needs a principal");
    check_fresh(base, principal);

    PolicyPair out;
    // Subjects blocked on a company are matched against that company's data:
    // @blocked composed with the reversed data path reaches the object.
    for (const auto& path : cw.data_paths)
        out.pm.rules.push_back(
            {concat(edge(PathLabel::blocked_interest()), simplify(reversed(path))),
             principal});
    out.auth.rules.push_back({principal, "*", "*", Decision::Deny});

    out.pm.rules.insert(out.pm.rules.end(), base.pm.rules.begin(), base.pm.rules.end());
    out.auth.rules.insert(out.auth.rules.end(), base.auth.rules.begin(),
                          base.auth.rules.end());
    return out;
}

Decision sod_oracle(const SodSpec& spec, const std::vector<HistoryEntry>& history,
                    const Request& request, Decision base_decision) {
    if (base_decision == Decision::Deny) return Decision::Deny;
    if (request.object != spec.object) return base_decision;

    auto constrained = [&](const std::string& action) {
        return std::find(spec.actions.begin(), spec.actions.end(), action) !=
               spec.actions.end();
    };

    bool basic = spec.mode == SodSpec::Mode::Basic;
    if (!basic && !constrained(request.action)) return base_decision;

    for (const auto& h : history) {
        if (h.decision != Decision::Allow) continue;  // denials never constrain
        if (h.request.subject != request.subject || h.request.object != spec.object)
            continue;
        if (!constrained(h.request.action)) continue;
        if (basic || h.request.action != request.action) return Decision::Deny;
    }
    return base_decision;
}

Decision cw_oracle(const WallLayout& layout, const std::vector<HistoryEntry>& history,
                   const Request& request, Decision base_decision) {
    auto company_it = layout.company_of.find(request.object);
    if (company_it == layout.company_of.end()) throw UnknownNodeError(request.object);
    const std::string& company = company_it->second;

    auto coi_class = [&](const std::string& c) -> const std::string* {
        auto it = layout.class_of.find(c);
        return it == layout.class_of.end() ? nullptr : &it->second;
    };
    const std::string* cls = coi_class(company);
    if (!cls) return base_decision;  // a company outside every class never conflicts

    for (const auto& h : history) {
        if (h.decision != Decision::Allow) continue;
        if (h.request.subject != request.subject) continue;
        auto held_it = layout.company_of.find(h.request.object);
        if (held_it == layout.company_of.end()) continue;
        const std::string& held = held_it->second;
        if (held == company) continue;
        const std::string* held_cls = coi_class(held);
        if (held_cls && *held_cls == *cls) return Decision::Deny;
    }
    return base_decision;
}

}  // namespace relbac
