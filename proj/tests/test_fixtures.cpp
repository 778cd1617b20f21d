#include "doctest.h"

#include "builders.hpp"
#include "opcat/fixtures.hpp"

using namespace opcat;
using namespace opcat_test;

static const std::string kDir = OPCAT_FIXTURE_DIR;

TEST_CASE("fixture round trips are bit-stable") {
    for (const char* name : {"terminal.json", "a2.json", "odot.json", "decollage_a2.json", "m2.json",
                             "pu2.json", "blob_x2.json"}) {
        auto j = read_json_file(kDir + "/" + std::string(name));
        std::string first = canonical_dump(j);
        Json j2 = Json::parse(first);
        CHECK(canonical_dump(j2) == first);
    }
    // save(load(x)) is idempotent byte-for-byte
    auto c = load_fincat(read_json_file(kDir + "/a2.json"));
    auto once = canonical_dump(save_fincat(c));
    auto twice = canonical_dump(save_fincat(load_fincat(Json::parse(once))));
    CHECK(once == twice);
}

TEST_CASE("loaded fixtures validate") {
    CHECK(validate_category(load_fincat(read_json_file(kDir + "/a2.json"))).ok());
    auto o = load_opcat(read_json_file(kDir + "/decollage_a2.json"));
    CHECK(validate_opcat(o).ok());
    CHECK(unitality_report(o).unital());
    auto so = load_set_operad(read_json_file(kDir + "/m2_operad.json"), kDir);
    CHECK(validate_set_operad(so.category, so.operad).ok());
    auto lo = load_lin_operad(read_json_file(kDir + "/lambda.json"), kDir);
    CHECK(validate_lin_operad(lo.category, lo.operad).ok());
    REQUIRE(lo.fiberwise_units.has_value());
    auto lr = check_unital_fiberwise_lin(lo.category, lo.operad, *lo.fiberwise_units);
    CHECK(lr.left);
    CHECK(lr.right);
    auto om = load_op_module(read_json_file(kDir + "/star_module.json"), kDir);
    CHECK(validate_operadic_module(om.category, om.module).ok());
    auto pm = load_pmodule(read_json_file(kDir + "/lambda_coeff.json"), kDir);
    CHECK(validate_pmodule(pm.operad.category, pm.module.module, pm.operad.operad, pm.pmod).ok());
    auto bm = load_blob_model(read_json_file(kDir + "/blob_x2.json"));
    CHECK(validate_blob_model(bm).ok());
    CHECK(skein_dim(bm) == 0);
}

TEST_CASE("loaded fixtures equal the builders") {
    auto m2 = load_monoid(read_json_file(kDir + "/m2.json"));
    auto built = m2_monoid();
    CHECK(m2.mult == built.mult);
    CHECK(m2.unit == built.unit);
    auto bm = load_blob_model(read_json_file(kDir + "/blob_two_vertex.json"));
    CHECK(bm.N == 2);
    CHECK(bm.relations.size() == 1);
    CHECK(bm.relations[0].len == 2);
}

TEST_CASE("fixture hashing is deterministic") {
    auto j = read_json_file(kDir + "/odot.json");
    CHECK(fixture_hash(j) == fixture_hash(read_json_file(kDir + "/odot.json")));
    CHECK(fixture_hash(j) != fixture_hash(read_json_file(kDir + "/a2.json")));
}
