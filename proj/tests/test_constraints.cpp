#include "doctest.h"
#include "relbac/constraints.hpp"
#include "relbac/engine.hpp"
#include "relbac/errors.hpp"
#include "relbac/io.hpp"
#include "support.hpp"

using namespace relbac;
using namespace relbac::testing;

namespace {

PolicyPair simple_base() {
    PolicyPair base;
    base.pm.rules.push_back({edge(PathLabel::rel("r")), "p"});
    base.auth.rules.push_back({"p", "o", "*", Decision::Allow});
    return base;
}

}  // namespace

TEST_CASE("general separation construction") {
    SodSpec spec;
    spec.mode = SodSpec::Mode::General;
    spec.object = "o";
    spec.actions = {"a1", "a2"};
    spec.principals = {"s1", "s2"};

    PolicyPair out = generate_sod(simple_base(), spec);
    CHECK(serialize_policy(out) ==
          "pm allow!a1 -> s1\n"
          "pm allow!a2 -> s2\n"
          "pm r -> p\n"
          "auth s1 o a2 deny\n"
          "auth s2 o a1 deny\n"
          "auth p o * allow\n");
}

TEST_CASE("basic separation construction") {
    SodSpec spec;
    spec.mode = SodSpec::Mode::Basic;
    spec.object = "o";
    spec.actions = {"a1", "a2", "a3"};
    spec.principals = {"seen"};

    PolicyPair out = generate_sod(simple_base(), spec);
    CHECK(serialize_policy(out) ==
          "pm allow!a1 -> seen\n"
          "pm allow!a2 -> seen\n"
          "pm allow!a3 -> seen\n"
          "pm r -> p\n"
          "auth seen o * deny\n"
          "auth p o * allow\n");
}

TEST_CASE("separation spec validation") {
    PolicyPair base = simple_base();
    SodSpec spec;
    spec.mode = SodSpec::Mode::General;
    spec.object = "o";
    spec.actions = {"a1", "a2"};
    spec.principals = {"s1", "s2"};

    SUBCASE("missing object") {
        spec.object.clear();
        CHECK_THROWS_AS(generate_sod(base, spec), ConfigError);
    }
    SUBCASE("fewer than two actions") {
        spec.actions = {"a1"};
        spec.principals = {"s1"};
        CHECK_THROWS_AS(generate_sod(base, spec), ConfigError);
    }
    SUBCASE("repeated actions") {
        spec.actions = {"a1", "a1"};
        CHECK_THROWS_AS(generate_sod(base, spec), ConfigError);
    }
    SUBCASE("principal count mismatch in general mode") {
        spec.principals = {"s1"};
        CHECK_THROWS_AS(generate_sod(base, spec), ConfigError);
    }
    SUBCASE("principal count mismatch in basic mode") {
        spec.mode = SodSpec::Mode::Basic;
        CHECK_THROWS_AS(generate_sod(base, spec), ConfigError);
    }
    SUBCASE("collision with a matching-rule principal") {
        spec.principals = {"p", "s2"};
        CHECK_THROWS_AS(generate_sod(base, spec), NameCollisionError);
    }
    SUBCASE("collision with an authorization-rule principal") {
        base.auth.rules.push_back({"s2", "o", "*", Decision::Deny});
        CHECK_THROWS_AS(generate_sod(base, spec), NameCollisionError);
    }
}

TEST_CASE("wall construction") {
    PolicyPair base;
    base.pm.rules.push_back({parse_path("w . s . ~d"), "p"});
    base.auth.rules.push_back({"p", "*", "read", Decision::Allow});

    ChineseWallConfig cw;
    cw.enabled = true;
    cw.member_label = "m";
    cw.data_paths.push_back(parse_path("d"));
    cw.data_paths.push_back(parse_path("in . of"));

    PolicyPair out = generate_chinese_wall(base, cw, "wall");
    CHECK(serialize_policy(out) ==
          "pm @blocked . ~d -> wall\n"
          "pm @blocked . ( ~of . ~in ) -> wall\n"
          "pm w . s . ~d -> p\n"
          "auth wall * * deny\n"
          "auth p * read allow\n");

    SUBCASE("no data paths") {
        cw.data_paths.clear();
        CHECK_THROWS_AS(generate_chinese_wall(base, cw, "wall"), ConfigError);
    }
    SUBCASE("empty principal") {
        CHECK_THROWS_AS(generate_chinese_wall(base, cw, ""), ConfigError);
    }
    SUBCASE("principal collision") {
        CHECK_THROWS_AS(generate_chinese_wall(base, cw, "p"), NameCollisionError);
    }
}

TEST_CASE("separation oracle follows the written history") {
    SodSpec spec;
    spec.mode = SodSpec::Mode::General;
    spec.object = "o";
    spec.actions = {"a1", "a2"};
    spec.principals = {"s1", "s2"};

    std::vector<HistoryEntry> none;
    CHECK(sod_oracle(spec, none, {"u", "o", "a1"}, Decision::Allow) == Decision::Allow);
    CHECK(sod_oracle(spec, none, {"u", "o", "a1"}, Decision::Deny) == Decision::Deny);

    std::vector<HistoryEntry> done{{{"u", "o", "a1"}, Decision::Allow}};
    CHECK(sod_oracle(spec, done, {"u", "o", "a2"}, Decision::Allow) == Decision::Deny);
    CHECK(sod_oracle(spec, done, {"u", "o", "a1"}, Decision::Allow) == Decision::Allow);
    CHECK(sod_oracle(spec, done, {"u", "o", "x"}, Decision::Allow) == Decision::Allow);
    CHECK(sod_oracle(spec, done, {"u", "side", "a2"}, Decision::Allow) == Decision::Allow);
    CHECK(sod_oracle(spec, done, {"v", "o", "a2"}, Decision::Allow) == Decision::Allow);

    std::vector<HistoryEntry> refused{{{"u", "o", "a1"}, Decision::Deny}};
    CHECK(sod_oracle(spec, refused, {"u", "o", "a2"}, Decision::Allow) == Decision::Allow);

    std::vector<HistoryEntry> elsewhere{{{"u", "side", "a1"}, Decision::Allow}};
    CHECK(sod_oracle(spec, elsewhere, {"u", "o", "a2"}, Decision::Allow) == Decision::Allow);

    spec.mode = SodSpec::Mode::Basic;
    spec.principals = {"seen"};
    CHECK(sod_oracle(spec, done, {"u", "o", "a1"}, Decision::Allow) == Decision::Deny);
    CHECK(sod_oracle(spec, done, {"u", "o", "x"}, Decision::Allow) == Decision::Deny);
    CHECK(sod_oracle(spec, done, {"u", "side", "x"}, Decision::Allow) == Decision::Allow);
}

TEST_CASE("wall oracle follows the written history") {
    WallLayout layout;
    layout.company_of = {{"f1", "c1"}, {"f2", "c2"}, {"f3", "c3"}, {"f4", "c1"},
                         {"f5", "c4"}};
    layout.class_of = {{"c1", "i1"}, {"c2", "i1"}, {"c3", "i2"}};

    std::vector<HistoryEntry> none;
    CHECK(cw_oracle(layout, none, {"u", "f1", "read"}, Decision::Allow) == Decision::Allow);
    CHECK(cw_oracle(layout, none, {"u", "f1", "read"}, Decision::Deny) == Decision::Deny);

    std::vector<HistoryEntry> held{{{"u", "f1", "read"}, Decision::Allow}};
    CHECK(cw_oracle(layout, held, {"u", "f2", "read"}, Decision::Allow) == Decision::Deny);
    CHECK(cw_oracle(layout, held, {"u", "f4", "read"}, Decision::Allow) == Decision::Allow);
    CHECK(cw_oracle(layout, held, {"u", "f3", "read"}, Decision::Allow) == Decision::Allow);
    CHECK(cw_oracle(layout, held, {"v", "f2", "read"}, Decision::Allow) == Decision::Allow);

    // A denied attempt never creates an interest.
    std::vector<HistoryEntry> bounced{{{"u", "f1", "read"}, Decision::Deny}};
    CHECK(cw_oracle(layout, bounced, {"u", "f2", "read"}, Decision::Allow) == Decision::Allow);

    // c4 belongs to no conflict class: it neither blocks nor gets blocked.
    CHECK(cw_oracle(layout, held, {"u", "f5", "read"}, Decision::Allow) == Decision::Allow);
    std::vector<HistoryEntry> freelance{{{"u", "f5", "read"}, Decision::Allow}};
    CHECK(cw_oracle(layout, freelance, {"u", "f1", "read"}, Decision::Allow) == Decision::Allow);

    CHECK_THROWS_AS(cw_oracle(layout, none, {"u", "nosuch", "read"}, Decision::Allow),
                    UnknownNodeError);
}

TEST_CASE("generated separation policies, engine, and oracle agree") {
    for (std::size_t trial = 0; trial < 25; ++trial) {
        Rng rng(9100 + trial);
        SodWorld w = make_sod_world(rng);
        Engine eng = Engine::from_documents(w.model_text, w.graph_text,
                                            w.policy_text, w.config_text);
        std::vector<HistoryEntry> history;
        for (int step = 0; step < 20; ++step) {
            Request rq = w.random_request(rng);
            Decision base = w.base_ok(rq) ? Decision::Allow : Decision::Deny;
            Decision want = sod_oracle(w.oracle_spec, history, rq, base);
            EvalOutcome out = eng.evaluate(rq);
            CAPTURE(trial);
            CAPTURE(step);
            CAPTURE(rq.subject);
            CAPTURE(rq.object);
            CAPTURE(rq.action);
            REQUIRE(to_string(out.decision) == to_string(want));
            history.push_back({rq, want});
        }
    }
}

TEST_CASE("generated wall policies, engine, and oracle agree") {
    for (std::size_t trial = 0; trial < 25; ++trial) {
        Rng rng(9200 + trial);
        CwWorld w = make_cw_world(rng);
        Engine eng = Engine::from_documents(w.model_text, w.graph_text,
                                            w.policy_text, w.config_text);
        std::vector<HistoryEntry> history;
        for (int step = 0; step < 20; ++step) {
            Request rq = w.random_request(rng);
            Decision base = w.base_ok(rq) ? Decision::Allow : Decision::Deny;
            Decision want = cw_oracle(w.layout, history, rq, base);
            EvalOutcome out = eng.evaluate(rq);
            CAPTURE(trial);
            CAPTURE(step);
            CAPTURE(rq.subject);
            CAPTURE(rq.object);
            REQUIRE(to_string(out.decision) == to_string(want));
            history.push_back({rq, want});
        }
    }
}
