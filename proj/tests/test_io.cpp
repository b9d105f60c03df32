#include "doctest.h"
#include "teichforge/io.hpp"

using namespace tf;

TEST_CASE("table json round trip") {
  const auto& t = Atlas::get().pi14B_in_pi11.outer;
  CHECK(table_from_json(to_json(t)) == t);
  auto d = index2_delta();
  CHECK(delta_from_json(to_json(d)) == d);
  Json j = to_json(d);
  j["minus_one_in_delta"] = false;
  CHECK_THROWS_AS(delta_from_json(j), InputError);
  j = to_json(d);
  j["perms"]["G1"] = {0, 0};
  CHECK_THROWS_AS(table_from_json(j), InputError);
  j = to_json(d);
  j["mark"] = "nope";
  CHECK_THROWS_AS(table_from_json(j), InputError);
  CHECK_THROWS_AS(delta_from_json(to_json(t)), InputError);
}

TEST_CASE("matrix and subspace json") {
  Mat2 big{BigInt("100000000000000000000001"), 1, BigInt("100000000000000000000000"), 1};
  CHECK(mat2_from_json(to_json(big)) == big);
  CHECK(to_json(big)[0].is_string());
  CHECK_THROWS_AS(mat2_from_json(Json{1, 1, 1, 1}), InputError);
  auto u = ModSubspace::span(5, 3, {{1, 2, 3}});
  CHECK(subspace_from_json(to_json(u)) == u);
  CHECK_THROWS_AS(subspace_from_json(Json{{"prime", 4}, {"dim", 1}, {"basis", Json::array()}}), InputError);
}

TEST_CASE("certificate verifies and detects tampering") {
  auto d = index2_delta();
  auto c = construct(d, PipelineConfig{});
  Json cert = certificate(c);
  CHECK(cert.dump(2) == certificate(construct(d, PipelineConfig{})).dump(2));
  auto ok = verify_certificate(cert, d);
  CHECK(ok.pass);
  CHECK(ok.first_failure().empty());
  CHECK_FALSE(ok.toy);

  Json bad = cert;
  auto& row = bad["a"][0]["basis"][0];
  row[0] = (row[0].get<uint32_t>() + 1) % bad["a"][0]["prime"].get<uint32_t>();
  auto r = verify_certificate(bad, d);
  CHECK_FALSE(r.pass);
  CHECK(r.first_failure().find("\"a\"") != std::string::npos);

  auto other = verify_certificate(cert, CosetAction::whole(marks::gamma2()));
  CHECK_FALSE(other.pass);
  CHECK_FALSE(verify_certificate(Json::object(), d).pass);
}

TEST_CASE("toy certificate carries a warning") {
  PipelineConfig cfg;
  cfg.toy_primes = std::array<uint32_t, 4>{2, 1, 1, 1};
  cfg.refine = false;
  auto d = index2_delta();
  auto r = verify_certificate(certificate(construct(d, cfg)), d);
  CHECK(r.toy);
  CHECK(r.pass);
  CHECK_FALSE(r.informational.empty());
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("atlas json") {
  Json a = atlas_json();
  CHECK(a["punctures"].size() == 4);
  CHECK(a["inclusions"].size() == 4);
  CHECK(a["alpha_klein"] == 2);
}
