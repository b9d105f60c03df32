#include "teichforge/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace tf {

namespace {

Json big(const BigInt& v) {
  if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
    return static_cast<int64_t>(v);
  return v.str();
}

BigInt big_from(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError("matrix entry must be an integer");
}

bool natural(const Json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<int64_t>() >= 0);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json word(const FreeWord& w) { return w.str(); }
Json word(AlphabetPtr a, const Seq& s) { return FreeWord(std::move(a), s).str(); }

Json strings(const std::vector<std::string>& v) { return Json(v); }

Json factors(const std::vector<std::pair<uint32_t, int>>& f) {
  Json out = Json::array();
  for (auto [q, c] : f) out.push_back({q, c});
  return out;
}

// a row of one subspace outside the other, for each pair
Json distinctness_witnesses(const std::vector<ModSubspace>& a) {
  Json out = Json::array();
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) {
      Json w = {{"i", i}, {"j", j}};
      for (const auto& [in, out_of] : {std::pair{i, j}, std::pair{j, i}}) {
        for (const auto& row : a[in].basis())
          if (!a[out_of].contains(row)) {
            w["in"] = in;
            w["vector"] = row;
            break;
          }
        if (w.contains("vector")) break;
      }
      out.push_back(w);
    }
  return out;
}

}  // namespace

Json to_json(const CosetAction& c) {
  Json perms = Json::object();
  for (int i = 0; i < c.letters(); ++i) perms[c.mark()->letter(i)] = c.perm(i);
  return {{"mark", c.mark()->name()}, {"degree", c.degree()}, {"basepoint", 0}, {"perms", perms}};
}

CosetAction table_from_json(const Json& j) {
  const Json& m = field(j, "mark");
  if (!m.is_string()) throw InputError("\"mark\" must be a string");
  AlphabetPtr mark = marks::by_name(m.get<std::string>());
  if (!mark) throw InputError("unknown mark \"" + m.get<std::string>() + "\"");
  const Json& dj = field(j, "degree");
  if (!natural(dj) || dj.get<uint64_t>() == 0) throw InputError("\"degree\" must be a positive integer");
  const uint64_t n = dj.get<uint64_t>();
  uint64_t base = 0;
  if (j.contains("basepoint")) {
    if (!natural(j["basepoint"])) throw InputError("\"basepoint\" must be a non-negative integer");
    base = j["basepoint"].get<uint64_t>();
    if (base >= n) throw InputError("\"basepoint\" out of range");
  }
  const Json& pj = field(j, "perms");
  if (!pj.is_object()) throw InputError("\"perms\" must be an object keyed by letter");
  std::vector<Perm> perms;
  for (const auto& name : mark->letters()) {
    if (!pj.contains(name)) throw InputError("missing permutation for letter " + name);
    const Json& p = pj.at(name);
    if (!p.is_array() || p.size() != n) throw InputError("permutation for " + name + " must list " + std::to_string(n) + " images");
    Perm perm;
    for (const auto& v : p) {
      if (!natural(v) || v.get<uint64_t>() >= n) throw InputError("image out of range in " + name);
      perm.push_back(v.get<uint32_t>());
    }
    perms.push_back(std::move(perm));
  }
  if (pj.size() != perms.size()) throw InputError("\"perms\" has letters outside the mark");
  try {
    CosetAction c(mark, std::move(perms));
    return base == 0 ? c : rebase(c, static_cast<uint32_t>(base));
  } catch (const SubgroupError& e) {
    throw InputError(e.what());
  }
}

CosetAction delta_from_json(const Json& j) {
  if (j.is_object() && j.contains("minus_one_in_delta") && j["minus_one_in_delta"] != true)
    throw InputError("Delta is a projective table: \"minus_one_in_delta\" must be true");
  CosetAction c = table_from_json(j);
  if (!same_alphabet(c.mark(), marks::gamma2())) throw InputError("Delta must be a table over gamma2 (G1, G2)");
  if (!c.is_transitive()) throw InputError("Delta table is not transitive");
  return c;
}

Json to_json(const Mat2& m) { return {big(m.a), big(m.b), big(m.c), big(m.d)}; }

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw InputError("a matrix is a list [a,b,c,d]");
  Mat2 m{big_from(j[0]), big_from(j[1]), big_from(j[2]), big_from(j[3])};
  if (m.det() != 1) throw InputError("matrix does not have determinant 1");
  return m;
}

Json to_json(const ModSubspace& u) { return {{"prime", u.prime()}, {"dim", u.dim()}, {"basis", u.basis()}}; }

ModSubspace subspace_from_json(const Json& j) {
  const Json& q = field(j, "prime");
  const Json& d = field(j, "dim");
  const Json& b = field(j, "basis");
  if (!natural(q) || !is_prime(q.get<uint64_t>())) throw InputError("subspace prime must be prime");
  if (!natural(d)) throw InputError("subspace dim must be a non-negative integer");
  if (!b.is_array()) throw InputError("subspace basis must be a list of rows");
  const uint32_t p = q.get<uint32_t>();
  const int dim = d.get<int>();
  ModMat rows;
  for (const auto& r : b) {
    if (!r.is_array() || static_cast<int>(r.size()) != dim) throw InputError("subspace row has the wrong length");
    ModVec v;
    for (const auto& x : r) {
      if (!natural(x) || x.get<uint64_t>() >= p) throw InputError("subspace entry out of range");
      v.push_back(x.get<uint32_t>());
    }
    rows.push_back(std::move(v));
  }
  return ModSubspace::span(p, dim, std::move(rows));
}

Json to_json(const VeechGroupResult& r) {
  Json gens = Json::array();
  for (size_t i = 0; i < r.generators.size(); ++i)
    gens.push_back({{"word", word(r.generator_words[i])}, {"matrix", to_json(r.generators[i])}});
  return {{"orbit_size", r.orbit_size},
          {"projective_orbit_size", r.projective_orbit_size},
          {"minus_identity_stabilizes", r.minus_identity},
          {"stabilizer_table", to_json(r.orbit_action)},
          {"generators", gens}};
}

Json to_json(const TheoremReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"pass", r.pass}, {"degenerate", r.degenerate}, {"checks", checks}};
}

Json to_json(const Origami& o) {
  return {{"degree", o.degree()},
          {"a", o.table.perm(0)},
          {"b", o.table.perm(1)},
          {"genus", o.genus()},
          {"punctures", o.punctures()},
          {"puncture_orders", o.puncture_orders()}};
}

Json to_json(const SuiteResult& r) {
  // timing is left out so that reports are reproducible byte for byte
  return {{"suite", r.name}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"warnings", r.warnings}};
}

Json atlas_json() {
  const Atlas& at = Atlas::get();
  auto amb = [](const std::vector<ReflectionWord>& v) {
    Json out = Json::array();
    for (const auto& w : v) out.push_back(w.str());
    return out;
  };
  Json punct = Json::array();
  for (const auto& p : at.punctures) {
    Json klein = Json::array();
    for (int k = 0; k < 4; ++k) klein.push_back(at.puncture_class(p.rep_ab.conjugated_by(klein_rep(k)))->klein);
    punct.push_back({{"name", p.name},
                     {"pi04", p.pi04_name},
                     {"klein_index", p.klein},
                     {"ambient", p.rep_ambient.str()},
                     {"ab", word(p.rep_ab)},
                     {"basisA", word(p.rep_A)},
                     {"basisB", word(p.rep_B)},
                     {"conjugated_by_klein_reps", klein}});
  }
  Json incl = Json::object();
  for (const Inclusion* i : {&at.pi11_in_G, &at.pi04_in_G, &at.pi14A_in_pi04, &at.pi14B_in_pi11}) {
    Json basis = Json::array();
    for (const auto& b : i->basis) basis.push_back(i->outer.involutive() ? Json(reflection_of(b).str()) : word(i->outer.mark(), b));
    incl[i->name] = {{"index", index(i->outer)}, {"table", to_json(i->outer)}, {"inner_basis", basis}};
  }
  Json klein_reps = Json::array();
  for (int k = 0; k < 4; ++k) klein_reps.push_back(word(klein_rep(k)));
  return {{"ambient_generators", {"t", "u", "v"}},
          {"s", ReflectionWord::s().str()},
          {"grades", {{"t", letter_grade(0)}, {"u", letter_grade(1)}, {"v", letter_grade(2)}}},
          {"pi11", {{"a", at.a.str()}, {"b", at.b.str()}}},
          {"pi04", {{"x", at.x.str()}, {"y", at.y.str()}, {"z", at.z.str()}, {"w", at.w.str()}}},
          {"basisA", amb(at.basisA_ambient)},
          {"basisB", amb(at.basisB_ambient)},
          {"ker_phi_index", index(at.ker_phi)},
          {"inclusions", incl},
          {"klein_reps", klein_reps},
          {"punctures", punct},
          {"alpha_klein", at.alpha_klein},
          {"checks", at.checks}};
}

Json certificate(const Construction& c) {
  const auto B = marks::pi14B();
  Json cfg = {{"seed", c.config.seed},
              {"budget", c.config.budget},
              {"refine", c.config.refine},
              {"ell_attempts", c.config.ell_attempts},
              {"toy_primes", c.config.toy_primes ? Json(*c.config.toy_primes) : Json(nullptr)}};
  Json reps = Json::array(), conj = Json::array(), sizes = Json::array();
  for (const auto& e : c.alpha.entries) {
    reps.push_back(word(B, e.representative));
    conj.push_back(word(B, e.conjugator));
    sizes.push_back(e.size);
  }
  Json lemma2 = Json::array();
  for (const auto& w : c.lemma2) lemma2.push_back({{"letter", w.letter}, {"conjugate", w.conjugate}, {"eta", word(w.eta)}});
  Json hbar = Json::array(), detects = Json::array();
  for (int i = 0; i < 3; ++i) {
    hbar.push_back(c.h.primes[i] > 1 ? to_json(c.h.hbar[i]) : Json(nullptr));
    detects.push_back(Atlas::get().punctures[c.h.detects[i]].name);
  }
  Json a = Json::array();
  for (const auto& u : c.a) a.push_back(to_json(u));
  Json layers = Json::array();
  for (const auto& u : c.lambda.layers()) layers.push_back(to_json(u));
  return {
      {"format", "teichforge-certificate"},
      {"version", kCertificateVersion},
      {"faithful", !c.toy},
      {"toy", c.toy},
      {"degenerate", c.degenerate},
      {"config", cfg},
      {"delta", to_json(c.delta)},
      {"delta0", to_json(c.chain.delta0)},
      {"alpha_classes",
       {{"k", c.alpha.k},
        {"representatives", reps},
        {"conjugators", conj},
        {"cycle_lengths", sizes},
        {"delta_coset", c.alpha.delta_coset},
        {"class_action", c.alpha.matches_coset_action ? to_json(c.alpha.class_action) : Json(nullptr)},
        {"matches_coset_action", c.alpha.matches_coset_action}}},
      {"lift_invariance", lemma2},
      {"refinement",
       {{"found", c.refine.found},
        {"candidates", c.refine.candidates},
        {"cover_degree", c.refine.cover_degree},
        {"delta0_refined", to_json(c.refined.delta0)},
        {"normalizer_points", normalizer_points(c.refined.delta0)}}},
      {"d", to_json(c.d)},
      {"guard_indices", c.guard},
      {"primes", {{"p", c.h.primes}, {"detects", detects}, {"ell", c.ell}, {"rejected_ell", c.rejected_ells}}},
      {"hbar", hbar},
      {"a", a},
      {"a_distinct", c.a_distinct},
      {"a_witnesses", distinctness_witnesses(c.a)},
      {"lambda", {{"index", c.lambda.index_string()}, {"index_factors", factors(c.lambda.index_factors())}, {"layers", layers}}},
      {"checks", strings(c.checks)},
  };
}

std::string VerifyReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + ": " + c.detail;
  return {};
}

VerifyReport verify_certificate(const Json& cert, const CosetAction& delta) {
  VerifyReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
    return pass;
  };
  auto finish = [&] {
    rep.pass = !rep.checks.empty();
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
  };

  bool fmt = cert.is_object() && cert.value("format", "") == "teichforge-certificate" &&
             cert.contains("version") && cert["version"] == kCertificateVersion;
  if (!add("certificate format", fmt, fmt ? "version " + std::to_string(kCertificateVersion) : "not a version-1 certificate"))
    return finish();
  rep.toy = cert.value("toy", false);
  if (rep.toy) rep.warnings.push_back("toy parameters: this certificate is not faithful");

  CosetAction cert_delta = delta_from_json(field(cert, "delta"));
  if (!add("Delta matches the certificate", canonical_form(cert_delta) == canonical_form(delta),
           "index " + std::to_string(delta.degree()) + " vs " + std::to_string(cert_delta.degree())))
    return finish();

  const Json& cj = field(cert, "config");
  PipelineConfig cfg;
  cfg.seed = cj.at("seed").get<uint64_t>();
  cfg.budget = cj.at("budget").get<uint64_t>();
  cfg.refine = cj.at("refine").get<bool>();
  cfg.ell_attempts = cj.at("ell_attempts").get<uint32_t>();
  if (!cj.at("toy_primes").is_null()) cfg.toy_primes = cj.at("toy_primes").get<std::array<uint32_t, 4>>();
  Construction c;
  try {
    c = construct(delta, cfg);
  } catch (const std::exception& e) {
    add("reconstruction", false, e.what());
    return finish();
  }
  Json again = certificate(c);
  std::string diff;
  for (auto it = again.begin(); it != again.end() && diff.empty(); ++it)
    if (!cert.contains(it.key()) || cert[it.key()] != it.value()) diff = it.key();
  for (auto it = cert.begin(); it != cert.end() && diff.empty(); ++it)
    if (!again.contains(it.key())) diff = it.key();
  add("reconstruction reproduces the certificate", diff.empty(),
      diff.empty() ? "all fields equal" : "field \"" + diff + "\" differs");

  // the stored data on its own
  std::vector<ModSubspace> a;
  for (const auto& u : field(cert, "a")) a.push_back(subspace_from_json(u));
  bool wit = true;
  for (const auto& w : field(cert, "a_witnesses")) {
    if (!w.contains("vector")) {
      wit = false;
      break;
    }
    const size_t i = w.at("i"), j = w.at("j"), in = w.at("in");
    const size_t other = in == i ? j : i;
    ModVec v = w.at("vector").get<ModVec>();
    if (in >= a.size() || other >= a.size() || !a[in].contains(v) || a[other].contains(v)) wit = false;
  }
  const size_t pairs = a.size() * (a.size() - (a.empty() ? 0 : 1)) / 2;
  wit = wit && field(cert, "a_witnesses").size() == pairs;
  add("A subspaces pairwise distinct", wit || rep.toy,
      std::to_string(pairs) + (pairs == 1 ? " pair" : " pairs") + (wit ? " witnessed" : ", witnesses invalid"));

  CosetAction d = table_from_json(field(cert, "d"));
  std::vector<ModSubspace> layers;
  for (const auto& u : field(field(cert, "lambda"), "layers")) layers.push_back(subspace_from_json(u));
  LayeredSubgroup lambda(d, layers);
  TheoremReport th = verify_theorem(stabilizer(lambda), delta, lambda);
  for (const auto& ch : th.checks) {
    if (!rep.toy) rep.checks.push_back(ch);
    else {
      rep.informational.push_back(ch);
      if (!ch.pass) rep.warnings.push_back("toy Lambda: " + ch.name + " does not hold (" + ch.detail + ")");
    }
  }
  if (th.degenerate) rep.warnings.push_back("degenerate case: Delta is all of Gamma(2)");
  return finish();
}

Json to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  Json info = Json::array();
  for (const auto& c : r.informational) info.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"pass", r.pass}, {"toy", r.toy}, {"checks", checks}, {"informational", info}, {"warnings", r.warnings}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return Json::parse(in);
}

}  // namespace tf
