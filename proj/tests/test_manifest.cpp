#include "doctest.h"
#include "shm/manifest.hpp"

using namespace shm;

namespace {

const char* kDeformManifest = R"json({
  "format": 1,
  "dim": 2,
  "truncation_order": 2,
  "seed": 9,
  "metric": [
    {"holo": [1], "anti": [1], "coeff": [[0,1],[1,1]]},
    {"holo": [2], "anti": [2], "coeff": [[0,1],[1,1]]},
    {"holo": [2], "anti": [2], "coeff": [[0,1],[1,1]], "monomial": {"z1": 1, "zb1": 1, "t": 1}}
  ],
  "sample_points": [[[[0,1],[0,1]], [[0,1],[0,1]]]],
  "deformation": [
    {"target": 1, "anti": [1], "coeff": [[1,1],[0,1]], "monomial": {"t": 1}}
  ],
  "deformation_functions": [
    [{"coeff": [[1,1],[0,1]], "monomial": {"z1": 1}},
     {"coeff": [[1,1],[0,1]], "monomial": {"zb1": 1, "t": 1}}]
  ]
})json";

const char* kBlowupManifest = R"json({
  "format": 1,
  "dim": 2,
  "seed": 3,
  "metric": [
    {"holo": [1], "anti": [1], "coeff": [[0,1],[1,1]]},
    {"holo": [2], "anti": [2], "coeff": [[0,1],[1,1]]}
  ],
  "sample_points": [[[[0,1],[0,1]], [[0,1],[0,1]]]],
  "blowup": {
    "omega": [{"holo": [1], "anti": [1], "coeff": [[0,1],[1,1]]}],
    "k": 1,
    "chart": {
      "source_dim": 2,
      "components": [
        [{"coeff": [[1,1],[0,1]], "monomial": {"w1": 1}}],
        [{"coeff": [[1,1],[0,1]], "monomial": {"w1": 1, "w2": 1}}]
      ]
    },
    "points": [[[[0,1],[0,1]], [[0,1],[0,1]]]],
    "threshold_cap": 16
  }
})json";

}  // namespace

TEST_CASE("manifest parsing round trip") {
  Manifest m = parse_manifest_text(kDeformManifest);
  CHECK(m.dim == 2);
  CHECK(m.truncation_order == 2);
  CHECK(m.seed == 9);
  REQUIRE(m.metric.has_value());
  CHECK(m.metric->terms().size() == 2);  // the t-term merges into dz2∧dzb2
  CHECK(m.metric->uses_t());
  REQUIRE(m.deformation.has_value());
  CHECK(m.deformation->q == 1);
  CHECK(m.deformation_functions.size() == 1);
  CHECK(m.sample_points.size() == 1);
}

TEST_CASE("manifest diagnostics carry the field path") {
  auto expect_field = [](const char* text, const char* field) {
    try {
      parse_manifest_text(text);
      FAIL_CHECK("expected a ManifestError");
    } catch (const ManifestError& e) {
      CHECK(e.field == field);
    }
  };

  // coframe index out of range
  expect_field(R"({"format":1,"dim":2,"metric":[{"holo":[3],"anti":[1],"coeff":[[0,1],[1,1]]}]})",
               "metric[0].holo[0]");
  // malformed monomial variable
  expect_field(
      R"({"format":1,"dim":2,"metric":[{"holo":[1],"anti":[1],"coeff":[[0,1],[1,1]],"monomial":{"z7":1}}]})",
      "metric[0].monomial.z7");
  // N is internal only
  expect_field(
      R"({"format":1,"dim":2,"metric":[{"holo":[1],"anti":[1],"coeff":[[0,1],[1,1]],"monomial":{"N":1}}]})",
      "metric[0].monomial.N");
  // index lists must be strictly increasing
  expect_field(
      R"({"format":1,"dim":2,"metric":[{"holo":[2,1],"anti":[],"coeff":[[1,1],[0,1]]}]})",
      "metric[0].holo[1]");
  // zero denominator
  expect_field(R"({"format":1,"dim":1,"metric":[{"holo":[1],"anti":[1],"coeff":[[1,0],[0,1]]}]})",
               "metric[0].coeff[0]");
  // missing format
  expect_field(R"({"dim":2})", "format");
  expect_field(R"({"format":1,"dim":9})", "dim");
}

TEST_CASE("check command classifies and reports deterministically") {
  Manifest m = parse_manifest_text(kBlowupManifest);
  Report r1 = cmd_check(m, "check m.json");
  Report r2 = cmd_check(m, "check m.json");
  CHECK(r1.exit_code == 0);
  CHECK(r1.json_text() == r2.json_text());
  CHECK(r1.text() == r2.text());
  CHECK(r1.json_text().find("\"kahler\"") != std::string::npos);

  // t-dependent metric belongs to the deform command
  Manifest md = parse_manifest_text(kDeformManifest);
  CHECK_THROWS_AS(cmd_check(md, "check m.json"), ManifestError);
}

TEST_CASE("deform command reports residuals per k") {
  Manifest m = parse_manifest_text(kDeformManifest);
  Report rep = cmd_deform(m, "deform m.json");
  // the t-jet of the metric family makes the first-order condition fail
  CHECK(rep.exit_code == 1);
  bool saw_mc = false, saw_holo = false, saw_k1 = false;
  for (const auto& e : rep.entries) {
    if (e.name == "maurer_cartan") {
      saw_mc = true;
      CHECK(e.holds);
    }
    if (e.name == "holomorphic[1]") {
      saw_holo = true;
      CHECK(e.holds);
    }
    if (e.name == "stability_order1[k=1]") {
      saw_k1 = true;
      CHECK_FALSE(e.holds);
      CHECK_FALSE(e.witness.empty());
    }
  }
  CHECK(saw_mc);
  CHECK(saw_holo);
  CHECK(saw_k1);

  // byte-identical reports for identical manifest input
  CHECK(cmd_deform(m, "deform m.json").json_text() == rep.json_text());
}

TEST_CASE("blowup command runs the expansion, preservation and threshold") {
  Manifest m = parse_manifest_text(kBlowupManifest);
  Report rep = cmd_blowup(m, "blowup m.json");
  CHECK(rep.exit_code == 0);
  bool saw_threshold = false;
  for (const auto& e : rep.entries) {
    CHECK(e.holds);
    if (e.name == "positivity_threshold") {
      saw_threshold = true;
      CHECK(e.value == "1");
    }
  }
  CHECK(saw_threshold);

  // non-closed omega is an input error, thrown before any report
  Manifest bad = parse_manifest_text(R"json({
    "format": 1, "dim": 2,
    "metric": [
      {"holo": [1], "anti": [1], "coeff": [[0,1],[1,1]]},
      {"holo": [2], "anti": [2], "coeff": [[0,1],[1,1]]}
    ],
    "blowup": {
      "omega": [{"holo": [1], "anti": [1], "coeff": [[0,1],[1,1]],
                 "monomial": {"z2": 1}},
                {"holo": [1], "anti": [1], "coeff": [[0,1],[1,1]],
                 "monomial": {"zb2": 1}}],
      "k": 1
    }
  })json");
  CHECK_THROWS_AS(cmd_blowup(bad, "blowup bad.json"), std::invalid_argument);
}

TEST_CASE("identity suite command and the mutation hook") {
  SuiteOptions small;
  small.seed = 11;
  small.max_dim = 2;
  small.cases = 6;
  Report rep = cmd_identities(small, "identities --seed 11 --n 2 --cases 6");
  CHECK(rep.exit_code == 0);
  for (const auto& e : rep.entries) CHECK(e.holds);

  // a forced sign bug makes exactly the named identity fail
  SuiteOptions broken = small;
  broken.mutate = "exp_multiplicative";
  Report bad = cmd_identities(broken, "identities");
  CHECK(bad.exit_code == 1);
  bool exp_mult_failed = false;
  for (const auto& e : bad.entries) {
    if (e.name == "exp_multiplicative") exp_mult_failed = !e.holds;
  }
  CHECK(exp_mult_failed);

  SuiteOptions unknown = small;
  unknown.mutate = "no_such_identity";
  CHECK_THROWS_AS(cmd_identities(unknown, "identities"), std::invalid_argument);

  // n = 1 edge: the suite degenerates gracefully
  SuiteOptions tiny;
  tiny.seed = 5;
  tiny.max_dim = 1;
  tiny.cases = 4;
  Report edge = cmd_identities(tiny, "identities --n 1");
  CHECK(edge.exit_code == 0);
}
