#include "../support/engine_eval.hpp"

#include <doctest.h>

#include <cmath>

using namespace bbdrag;

TEST_CASE("committed golden records match the engine")
{
    const auto records = oracle::read_golden_file(std::string(BBDRAG_SOURCE_DIR) + "/golden/cases.jsonl");
    const auto cases = oracle::standard_cases();
    REQUIRE(records.size() == cases.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        CAPTURE(r.golden_case.name);
        CHECK(r.golden_case.name == cases[i].name);
        CHECK(r.golden_case.observable == cases[i].observable);
        CHECK(r.golden_case.beta == cases[i].beta);
        CHECK(r.golden_case.t1 == cases[i].t1);
        CHECK(r.golden_case.t2 == cases[i].t2);
        CHECK(model_to_json(r.golden_case.model) == model_to_json(cases[i].model));
        CHECK(r.relative_change <= oracle::convergence_gate);
        const double engine = testing::engine_value(r.golden_case).value;
        CHECK(std::abs(engine - r.value) <= 1e-6 * std::abs(r.value));
    }
}
