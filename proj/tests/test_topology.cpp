#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pseudochain/errors.hpp"
#include "pseudochain/topology.hpp"

using namespace pseudochain;

namespace {

PseudoChainSpec make_spec(std::vector<int> sizes, std::vector<double> j) {
  PseudoChainSpec spec;
  for (int n : sizes) spec.blocks.push_back(BlockSpec{n, 0.0, 0.0});
  spec.inter_couplings = std::move(j);
  return spec;
}

}  // namespace

TEST_CASE("validate accepts a well-formed spec") {
  CHECK_NOTHROW(validate(make_spec({1, 2, 1}, {1.0, 1.0})));
}

TEST_CASE("validate rejects non-singleton end blocks") {
  auto spec = make_spec({2, 1}, {1.0});
  CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("single spin"), Error);
  try {
    validate(spec);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndBlockNotSingleton);
  }
}

TEST_CASE("validate rejects coupling count mismatches") {
  auto spec = make_spec({1, 1}, {1.0, 1.0});
  try {
    validate(spec);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}

TEST_CASE("validate rejects non-finite parameters") {
  auto spec = make_spec({1, 2, 1}, {1.0, 1.0});
  spec.blocks[1].field = std::numeric_limits<double>::infinity();
  try {
    validate(spec);
    FAIL("expected NonFiniteParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteParameter);
  }
}

TEST_CASE("effective field folds the intra-block coupling") {
  PseudoChainSpec spec = make_spec({1, 2, 1}, {1.0, 1.0});
  spec.blocks[1] = BlockSpec{2, 0.3, 0.5};
  const auto model = effective_model(spec);
  CHECK(model.effective_fields[1] == doctest::Approx(0.8).epsilon(1e-15));

  spec.blocks[1] = BlockSpec{1, 0.7, 123.0};
  CHECK(effective_model(spec).effective_fields[1] == doctest::Approx(0.7));

  spec.blocks[1] = BlockSpec{3, 1.0, -0.2};
  CHECK(effective_model(spec).effective_fields[1] ==
        doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("effective model of a linear chain keeps the bare fields") {
  PseudoChainSpec spec = make_spec({1, 1, 1, 1}, {0.4, -0.7, 1.2});
  spec.blocks[0].field = 0.1;
  spec.blocks[1].field = -0.9;
  spec.blocks[2].field = 0.0;
  spec.blocks[3].field = 2.0;
  for (auto& b : spec.blocks) b.intra_coupling = 5.0;  // inert for size 1
  const auto model = effective_model(spec);
  for (int i = 0; i < 4; ++i) {
    CHECK(model.effective_fields[i] == spec.blocks[i].field);
  }
  CHECK(model.couplings == spec.inter_couplings);
}

TEST_CASE("site map flattens block-major") {
  const auto spec = make_spec({1, 2, 1}, {1.0, 1.0});
  const SiteMap map(spec);
  CHECK(map.total_spins() == 4);
  // second block (index 1), members 0 and 1
  CHECK(map.flatten(1, 0) == 1);
  CHECK(map.flatten(1, 1) == 2);
  CHECK(map.flatten(2, 0) == 3);

  const auto two = make_spec({1, 1}, {1.0});
  const SiteMap map2(two);
  CHECK(map2.flatten(0, 0) == 0);
  CHECK(map2.flatten(1, 0) == 1);
}

TEST_CASE("site map round-trips every site with no collisions") {
  const auto spec = make_spec({1, 3, 2, 4, 1}, {1, 1, 1, 1});
  const SiteMap map(spec);
  std::vector<bool> hit(map.total_spins(), false);
  for (int b = 0; b < spec.block_count(); ++b) {
    for (int m = 0; m < spec.blocks[b].size; ++m) {
      const int site = map.flatten(b, m);
      CHECK_FALSE(hit[site]);
      hit[site] = true;
      const auto [b2, m2] = map.unflatten(site);
      CHECK(b2 == b);
      CHECK(m2 == m);
    }
  }
  for (bool h : hit) CHECK(h);
}

TEST_CASE("JSON round-trip preserves the spec") {
  PseudoChainSpec spec = make_spec({1, 3, 1}, {0.5, -1.25});
  spec.blocks[1].field = 0.125;
  spec.blocks[1].intra_coupling = -0.5;
  const auto text = spec_to_json_string(spec);
  const auto back = spec_from_json_string(text);
  REQUIRE(back.block_count() == 3);
  CHECK(back.blocks[1].size == 3);
  CHECK(back.blocks[1].field == 0.125);
  CHECK(back.blocks[1].intra_coupling == -0.5);
  CHECK(back.inter_couplings == spec.inter_couplings);
}

TEST_CASE("JSON defaults omitted fields to zero and rejects garbage") {
  const auto spec = spec_from_json_string(
      R"({"blocks":[{"n":1},{"n":2,"K":0.5},{"n":1}],"J":[1.0,1.0]})");
  CHECK(spec.blocks[0].field == 0.0);
  CHECK(spec.blocks[1].intra_coupling == 0.5);
  CHECK_THROWS_AS(spec_from_json_string("{not json"), Error);
  CHECK_THROWS_AS(spec_from_json_string(R"({"J":[1.0]})"), Error);
}
