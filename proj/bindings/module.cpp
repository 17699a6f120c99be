// Python bindings: the engine plus the handful of free operations that make
// sense at the text level (path simplification, policy generation).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relbac/audit.hpp"
#include "relbac/constraints.hpp"
#include "relbac/engine.hpp"
#include "relbac/errors.hpp"

namespace py = pybind11;
using namespace relbac;

namespace {

std::string decision_str(Decision d) { return to_string(d); }

std::vector<std::string> edge_strings(const std::vector<Edge>& edges) {
    std::vector<std::string> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(e.to_string());
    return out;
}

SodSpec make_sod_spec(const std::string& mode, const std::string& object,
                      const std::vector<std::string>& actions,
                      const std::vector<std::string>& principals) {
    SodSpec spec;
    if (mode == "general")
        spec.mode = SodSpec::Mode::General;
    else if (mode == "basic")
        spec.mode = SodSpec::Mode::Basic;
    else
        throw ConfigError("mode must be 'general' or 'basic', got '" + mode + "'");
    spec.object = object;
    spec.actions = actions;
    spec.principals = principals;
    return spec;
}

}  // namespace

PYBIND11_MODULE(_relbac, m) {
    m.doc() = "relationship-based access-control engine";

    static py::exception<Error> base_exc(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base_exc);
    py::register_exception<UnknownNodeError>(m, "UnknownNodeError", base_exc);
    py::register_exception<WellFormednessError>(m, "WellFormednessError", base_exc);
    py::register_exception<ConfigError>(m, "ConfigError", base_exc);
    py::register_exception<NameCollisionError>(m, "NameCollisionError", base_exc);

    py::class_<EvalOutcome>(m, "EvalOutcome")
        .def_property_readonly("decision",
                               [](const EvalOutcome& o) { return decision_str(o.decision); })
        .def_property_readonly("allowed",
                               [](const EvalOutcome& o) {
                                   return o.decision == Decision::Allow;
                               })
        .def_readonly("matched_principals", &EvalOutcome::matched_principals)
        .def_readonly("cache_hit", &EvalOutcome::cache_hit)
        .def_property_readonly("nodes_visited",
                               [](const EvalOutcome& o) {
                                   return o.metrics.nodes_visited;
                               })
        .def_property_readonly("edges_considered",
                               [](const EvalOutcome& o) {
                                   return o.metrics.edges_considered;
                               })
        .def_property_readonly("written_edges",
                               [](const EvalOutcome& o) {
                                   return edge_strings(o.written_edges);
                               })
        .def("__repr__", [](const EvalOutcome& o) {
            return "<EvalOutcome " + decision_str(o.decision) + ">";
        });

    py::class_<Engine>(m, "Engine")
        .def(py::init([](const std::string& model, const std::string& graph,
                         const std::string& policy, const std::string& config) {
                 return std::unique_ptr<Engine>(new Engine(Engine::from_documents(
                     model, graph, policy, config)));
             }),
             py::arg("model"), py::arg("graph"), py::arg("policy"),
             py::arg("config") = "")
        .def(
            "evaluate",
            [](Engine& self, const std::string& subject, const std::string& object,
               const std::string& action, bool use_cache) {
                return self.evaluate({subject, object, action}, use_cache);
            },
            py::arg("subject"), py::arg("object"), py::arg("action"),
            py::arg("use_cache") = true)
        .def("add_edge", &Engine::add_relationship_edge, py::arg("src"),
             py::arg("label"), py::arg("dst"))
        .def("remove_edge", &Engine::remove_relationship_edge, py::arg("src"),
             py::arg("label"), py::arg("dst"))
        .def(
            "reload_policies",
            [](Engine& self, const std::string& policy_text) {
                self.reload_policies(parse_policy(policy_text));
            },
            py::arg("policy"))
        .def(
            "precache_subject_focused",
            [](Engine& self, std::size_t budget, std::size_t recent_k,
               const std::vector<std::string>& targets) {
                return self.precache(SubjectFocusedPrecache{recent_k, targets}, budget);
            },
            py::arg("budget"), py::arg("recent_k"), py::arg("targets"))
        .def(
            "precache_object_focused",
            [](Engine& self, std::size_t budget,
               const std::vector<std::string>& objects,
               const std::vector<std::string>& subjects) {
                return self.precache(ObjectFocusedPrecache{objects, subjects}, budget);
            },
            py::arg("budget"), py::arg("objects"), py::arg("subjects"))
        .def("purge_cache", &Engine::purge_cache)
        .def("record_recent_subject", &Engine::record_recent_subject,
             py::arg("subject"))
        .def("cache_stats",
             [](const Engine& self) {
                 CacheStats s = self.cache_stats();
                 py::dict d;
                 d["size"] = s.size;
                 d["hits"] = s.hits;
                 d["misses"] = s.misses;
                 return d;
             })
        .def(
            "dump_graph",
            [](const Engine& self, bool include_overlay) {
                return serialize_graph(self.graph(), include_overlay);
            },
            py::arg("include_overlay") = true)
        .def("audit_log",
             [](const Engine& self) {
                 std::vector<std::string> out;
                 for (const auto& entry : export_audit_log(self.graph()))
                     out.push_back(entry.to_string());
                 return out;
             })
        .def("validate", &Engine::validate);

    m.def(
        "simplify_path",
        [](const std::string& expr) { return render(simplify(parse_path(expr))); },
        py::arg("expr"), "Parse a path expression and render its simplified form.");
    m.def(
        "parse_path",
        [](const std::string& expr) { return render(parse_path(expr)); },
        py::arg("expr"), "Parse a path expression and render it normalized.");
    m.def(
        "generate_sod",
        [](const std::string& policy_text, const std::string& mode,
           const std::string& object, const std::vector<std::string>& actions,
           const std::vector<std::string>& principals) {
            return serialize_policy(generate_sod(
                parse_policy(policy_text),
                make_sod_spec(mode, object, actions, principals)));
        },
        py::arg("policy"), py::arg("mode"), py::arg("object"), py::arg("actions"),
        py::arg("principals"),
        "Constrain a policy so no single user performs two of the listed actions.");
    m.def(
        "generate_chinese_wall",
        [](const std::string& policy_text, const std::string& config_text,
           const std::string& principal) {
            EngineConfig cfg = parse_config(config_text);
            return serialize_policy(
                generate_chinese_wall(parse_policy(policy_text), cfg.cw, principal));
        },
        py::arg("policy"), py::arg("config"), py::arg("principal"),
        "Constrain a policy so conflicting interests block access.");

    m.attr("__version__") = "0.1.0";
}
