#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "teichforge/suites.hpp"

namespace tf {

using Json = nlohmann::json;

// Content errors in otherwise well-formed JSON or text input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kCertificateVersion = 1;

// {mark, degree, basepoint, perms: {letter: [images]}}, 0-indexed
Json to_json(const CosetAction& c);
CosetAction table_from_json(const Json& j);
// A Delta file is a coset table over G1,G2, optionally with
// "minus_one_in_delta": true (the only accepted value).
CosetAction delta_from_json(const Json& j);

// [a,b,c,d]; entries beyond 64 bits are decimal strings
Json to_json(const Mat2& m);
Mat2 mat2_from_json(const Json& j);

Json to_json(const ModSubspace& u);
ModSubspace subspace_from_json(const Json& j);

Json to_json(const VeechGroupResult& r);
Json to_json(const TheoremReport& r);
Json to_json(const Origami& o);
Json to_json(const SuiteResult& r);
Json atlas_json();

Json certificate(const Construction& c);

struct VerifyReport {
  bool pass = false;
  bool toy = false;
  std::vector<TheoremCheck> checks;
  // theorem checks on a toy certificate: reported, never fatal
  std::vector<TheoremCheck> informational;
  std::vector<std::string> warnings;
  // first failing check, empty on success
  std::string first_failure() const;
};

// Rebuilds the construction from the certificate's recorded config, compares
// every field, re-checks the distinctness witnesses, and runs the stabilizer
// on the Lambda stored in the certificate.
VerifyReport verify_certificate(const Json& cert, const CosetAction& delta);
Json to_json(const VerifyReport& r);

Json read_json_file(const std::string& path);  // throws Json::parse_error on malformed input

}  // namespace tf
