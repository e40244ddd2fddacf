#include <doctest.h>

#include <cmath>

#include "hnnwalk/experiment.hpp"
#include "support/presets.hpp"

using namespace hnnwalk;
using namespace hnnwalk::testing;

namespace {

nlohmann::ordered_json example21_doc() {
    return nlohmann::ordered_json{
        {"base_group",
         {{"kind", "finite_table"},
          {"elements", {"e", "a", "b", "ab"}},
          {"identity", "e"},
          {"table",
           {{"e", "a", "b", "ab"},
            {"a", "e", "ab", "b"},
            {"b", "ab", "e", "a"},
            {"ab", "b", "a", "e"}}}}},
        {"subgroup_A", {"e", "a"}},
        {"subgroup_B", {"e", "b"}},
        {"phi", {{"e", "e"}, {"a", "b"}}},
        {"mu0", {{"a", 0.5}, {"b", 0.5}}},
        {"alpha", 0.5},
        {"p", 0.5},
        {"seed", 12345},
        {"steps", 20000},
        {"replicas", 8}};
}

} // namespace

TEST_CASE("config parsing and instantiation") {
    const ExperimentConfig config = parse_config(example21_doc());
    CHECK(config.alpha == 0.5);
    CHECK(config.steps == 20000);
    CHECK(config.group.generator_order == std::vector<std::string>{"a", "b"});
    const Instance inst = instantiate(config);
    CHECK(inst.pres.base().order() == 4);
    CHECK(inst.params.mu0.size() == 2);

    SUBCASE("missing fields raise ConfigError") {
        nlohmann::ordered_json doc = example21_doc();
        doc.erase("alpha");
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
        doc = example21_doc();
        doc.erase("base_group");
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("hash is stable and content-sensitive") {
        const std::string h1 = config_hash(parse_config(example21_doc()));
        const std::string h2 = config_hash(parse_config(example21_doc()));
        CHECK(h1 == h2);
        nlohmann::ordered_json doc = example21_doc();
        doc["p"] = 0.6;
        CHECK(config_hash(parse_config(doc)) != h1);
    }
}

TEST_CASE("length specs materialize correctly") {
    const ExperimentConfig config = parse_config(example21_doc());
    const Instance inst = instantiate(config);
    SUBCASE("word kind by default") {
        CHECK(eval_length(inst.ell, identity_form(inst.pres)) == doctest::Approx(1.0));
    }
    SUBCASE("table kind with stable-letter weights") {
        nlohmann::ordered_json doc = example21_doc();
        doc["length"] = {{"kind", "table"},
                         {"values",
                          {{"e", 0.0}, {"a", 1.0}, {"b", 1.0}, {"ab", 3.0}, {"t", 2.0},
                           {"t^-1", 0.5}}}};
        const Instance t = instantiate(parse_config(doc));
        CHECK(t.ell.at(t.pres.base().id_of("ab")) == doctest::Approx(3.0));
        CHECK(t.ell.value_t() == doctest::Approx(2.0));
        CHECK(t.ell.value_t_inv() == doctest::Approx(0.5));
    }
    SUBCASE("incomplete table without default is rejected") {
        nlohmann::ordered_json doc = example21_doc();
        doc["length"] = {{"kind", "table"}, {"values", {{"a", 1.0}}}};
        CHECK_THROWS_AS(instantiate(parse_config(doc)), ConfigError);
    }
    SUBCASE("t_only kind") {
        nlohmann::ordered_json doc = example21_doc();
        doc["length"] = {{"kind", "t_only"}};
        const Instance t = instantiate(parse_config(doc));
        CHECK(eval_length(t.ell, normalize(t.pres, parse_word(t.pres, "t t"))) ==
              doctest::Approx(2.0));
    }
    SUBCASE("greenian kind estimates hitting lengths") {
        nlohmann::ordered_json doc = example21_doc();
        doc["length"] = {{"kind", "greenian"}, {"horizon", 100}, {"trials", 2000}};
        const Instance g = instantiate(parse_config(doc));
        for (ElementId id = 0; id < g.pres.base().order(); ++id) CHECK(g.ell.at(id) > 0.0);
    }
    SUBCASE("growth bound verified on load") {
        nlohmann::ordered_json doc = example21_doc();
        doc["length"] = {{"kind", "word"}, {"growth_bound", {{"C", 1.0}, {"kappa", 1}}}};
        CHECK_NOTHROW(instantiate(parse_config(doc)));
        doc["length"] = {{"kind", "table"},
                         {"values", {{"e", 0.0}, {"a", 9.0}, {"b", 1.0}, {"ab", 1.0}}},
                         {"growth_bound", {{"C", 2.0}, {"kappa", 1}}}};
        CHECK_THROWS_AS(instantiate(parse_config(doc)), ConfigError);
    }
}

TEST_CASE("sweep grids and guards") {
    nlohmann::ordered_json doc = example21_doc();
    doc["steps"] = 4000;
    doc["replicas"] = 6;
    const ExperimentConfig config = parse_config(doc);
    SUBCASE("bad grids") {
        CHECK_THROWS_AS(run_sweep(config, "p", 0.8, 0.6, 0.1), GridError);
        CHECK_THROWS_AS(run_sweep(config, "p", 0.2, 0.8, 0.0), GridError);
        CHECK_THROWS_AS(run_sweep(config, "q", 0.2, 0.8, 0.1), GridError);
        CHECK_THROWS_AS(run_sweep(config, "mu0:zz", 0.2, 0.4, 0.1), GridError);
        CHECK_THROWS_AS(run_sweep(config, "p", -0.1, 0.4, 0.1), GridError);
    }
    SUBCASE("single point grid") {
        const SweepResult result = run_sweep(config, "p", 0.6, 0.6, 0.1);
        REQUIRE(result.points.size() == 1);
        CHECK(result.points[0].value == doctest::Approx(0.6));
        CHECK_FALSE(result.points[0].has_second_diff);
    }
    SUBCASE("mu0 component sweep renormalizes") {
        const SweepResult result = run_sweep(config, "mu0:a", 0.3, 0.5, 0.1);
        CHECK(result.points.size() == 3);
    }
    SUBCASE("general-regime grid may cross one half") {
        const SweepResult result = run_sweep(config, "p", 0.4, 0.6, 0.1);
        CHECK(result.points.size() == 3);
        for (const auto& pt : result.points) CHECK(pt.segment == 0);
    }
}

TEST_CASE("degenerate sweep splits at the recurrent point") {
    using json = nlohmann::ordered_json;
    json doc = example21_doc();
    doc["base_group"] = json{{"kind", "finite_table"},
                             {"elements", json::array({"e", "a"})},
                             {"identity", "e"},
                             {"table", json::array({json::array({"e", "a"}),
                                                    json::array({"a", "e"})})}};
    doc["subgroup_A"] = json::array({"e", "a"});
    doc["subgroup_B"] = json::array({"e", "a"});
    doc["phi"] = json{{"e", "e"}, {"a", "a"}};
    doc["mu0"] = json{{"a", 1.0}};
    doc["steps"] = 20000;
    doc["replicas"] = 24;
    doc["p"] = 0.8;
    const ExperimentConfig config = parse_config(doc);
    const SweepResult result = run_sweep(config, "p", 0.3, 0.7, 0.1);
    REQUIRE(result.points.size() == 4); // 0.3 0.4 | 0.6 0.7
    CHECK(result.points[0].segment == 0);
    CHECK(result.points[1].segment == 0);
    CHECK(result.points[2].segment == 1);
    CHECK(result.points[3].segment == 1);
    for (const auto& pt : result.points) CHECK(pt.value != doctest::Approx(0.5));
    // |lambda| approaches 0 from both sides of the kink and matches the
    // degenerate oracle pointwise (t-drift since ell is word length here...
    // use wide 4-sigma bands at this scale).
    for (const auto& pt : result.points) {
        const double target = 2.0 * (1.0 - config.alpha) * std::abs(2.0 * pt.value - 1.0);
        CHECK(std::abs(pt.lambda.point - target) <= 4.0 * pt.lambda.std_error + 1e-6);
    }
}

TEST_CASE("sweep point seeds are stable under grid refinement") {
    CHECK(sweep_point_seed(5, "p", 0.6) == sweep_point_seed(5, "p", 0.6));
    CHECK(sweep_point_seed(5, "p", 0.6) != sweep_point_seed(5, "p", 0.65));
    CHECK(sweep_point_seed(5, "p", 0.6) != sweep_point_seed(5, "alpha", 0.6));
    CHECK(sweep_point_seed(5, "p", 0.6) != sweep_point_seed(6, "p", 0.6));

    // Refining the grid step must reproduce the shared points exactly.
    nlohmann::ordered_json doc = example21_doc();
    doc["steps"] = 2000;
    doc["replicas"] = 4;
    const ExperimentConfig config = parse_config(doc);
    const SweepResult coarse = run_sweep(config, "p", 0.35, 0.65, 0.1);
    const SweepResult fine = run_sweep(config, "p", 0.35, 0.65, 0.05);
    for (const SweepPoint& pt : coarse.points) {
        bool matched = false;
        for (const SweepPoint& f : fine.points)
            if (f.value == pt.value && f.seed == pt.seed &&
                f.lambda.point == pt.lambda.point)
                matched = true;
        CHECK(matched);
    }
}
