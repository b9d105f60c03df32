#include "teichforge/suites.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace tf {

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
  std::vector<std::string> failures;
  uint64_t checked = 0;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  void finish(SuiteResult& r, const std::string& summary) const {
    r.pass = failures.empty();
    if (r.pass) {
      r.detail = summary;
    } else {
      std::ostringstream os;
      os << "failed:";
      for (const auto& f : failures) os << " [" << f << "]";
      r.detail = os.str();
    }
  }
};

std::string label(const CosetAction& d, size_t i) {
  return "Delta #" + std::to_string(i) + " (index " + std::to_string(d.degree()) + ")";
}

// Nielsen-Schreier: rank 1 + n(r - 1) against the Schreier basis size
bool nielsen_schreier(const CosetAction& c) {
  const uint64_t r = static_cast<uint64_t>(c.mark()->rank());
  return schreier(c).rank() == 1 + c.degree() * (r - 1) && rank(c) == schreier(c).rank();
}

// Points whose stabilizer contains the basepoint stabilizer, by tracing every
// Schreier generator; independent of the canonical-form machinery.
uint32_t normalizer_size_by_trace(const CosetAction& c) {
  SchreierData sd = schreier(c);
  uint32_t n = 0;
  for (uint32_t p = 0; p < c.degree(); ++p) {
    bool fixed = true;
    for (const auto& g : sd.basis_words()) {
      if (c.act(p, g) != p) {
        fixed = false;
        break;
      }
    }
    n += fixed;
  }
  return n;
}

Mat2 random_gamma2(std::mt19937_64& rng, int len) {
  static const Mat2 gens[4] = {Mat2::G1(), Mat2::G1().inverse(), Mat2::G2(), Mat2::G2().inverse()};
  Mat2 m;
  for (int i = 0; i < len; ++i) m = m * gens[rng() % 4];
  return m;
}

void suite_atlas(SuiteResult& r, const SuiteOptions&) {
  const Atlas& at = Atlas::get();
  Tally t;
  auto fA = fold(at.basisA_ambient), fB = fold(at.basisB_ambient);
  t.expect(fA.complete && fB.complete, "both pi14 bases fold to finite index");
  t.expect(canonical_form(fA.action) == canonical_form(at.ker_phi), "basis A generates ker phi");
  t.expect(canonical_form(fB.action) == canonical_form(at.ker_phi), "basis B generates ker phi");
  t.expect(canonical_form(fA.action) == canonical_form(fB.action), "basis A and basis B tables agree");
  t.expect(index(at.ker_phi) == 8, "ker phi has index 8");
  t.expect(index(at.pi11_in_G.outer) == 2 && index(at.pi04_in_G.outer) == 4, "pi11 and pi04 have index 2 and 4");
  t.expect(index(at.pi14A_in_pi04.outer) == 2, "pi14 has index 2 in pi04");
  t.expect(index(at.pi14B_in_pi11.outer) == 4, "pi14 has index 4 in pi11");
  auto f11 = fold(std::vector<ReflectionWord>{at.a, at.b});
  auto f04 = fold(std::vector<ReflectionWord>{at.x, at.y, at.z});
  t.expect(canonical_form(f11.action) == canonical_form(at.pi11_in_G.outer), "<tv, uv> is the grade table of pi11");
  t.expect(canonical_form(f04.action) == canonical_form(at.pi04_in_G.outer), "<x, y, z> is the grade table of pi04");
  t.finish(r, "ker phi = <basis A> = <basis B>, indices 8, 2, 4; " + std::to_string(at.checks.size()) +
                  " build-time identities");
}

void suite_identities(SuiteResult& r, const SuiteOptions&) {
  const Atlas& at = Atlas::get();
  auto R = [](const char* s) { return ReflectionWord::parse(s); };
  auto conj = [&](const ReflectionWord& x, const ReflectionWord& y) {
    return conjugate_in_free(at.to_ab(x), at.to_ab(y)).has_value();
  };
  const ReflectionWord s = ReflectionWord::s(), si = s.inverse();
  const ReflectionWord t = R("t"), u = R("u"), v = R("v");
  const ReflectionWord tv = R("tv"), uv = R("uv"), vt = R("vt"), vu = R("vu");
  Tally c;
  c.expect(si * tv * s == R("tu") * vt * R("ut"), "s^-1 (tv) s = tu (vt) ut");
  c.expect(conj(R("tu") * vt * R("ut"), vt), "tu (vt) ut ~ vt");
  c.expect(conj(si * uv * s, vu), "s^-1 (uv) s ~ vu");
  c.expect(t * tv * t == vt, "t (tv) t = vt");
  c.expect(conj(t * uv * t, vu), "t (uv) t ~ vu");
  c.expect(conj(u * tv * u, vt), "u (tv) u ~ vt");
  c.expect(u * uv * u == vu, "u (uv) u = vu");
  c.expect(v * tv * v == vt, "v (tv) v = vt");
  c.expect(v * uv * v == vu, "v (uv) v = vu");
  c.finish(r, std::to_string(c.checked) + " identities hold in pi11");
}

void suite_lemma1(SuiteResult& r, const SuiteOptions& opt) {
  const auto A = marks::pi03();
  Tally t;
  auto hx = homology_action(push_lift(FreeWord::parse(A, "x")).pi14_images());
  auto hy = homology_action(push_lift(FreeWord::parse(A, "y")).pi14_images());
  t.expect(projectively_equal(hx, Mat2::G2()), "Push(x) acts as [1 0; 2 1]");
  // y itself pushes to the x-conjugate of G1^-1; x y^-1 x^-1 is the loop h(G1)
  const Mat2 g1y = Mat2::G2().inverse() * Mat2::G1().inverse() * Mat2::G2();
  t.expect(projectively_equal(hy, g1y), "Push(y) acts as G2^-1 G1^-1 G2");
  auto hyc = homology_action(push_lift(FreeWord::parse(A, "xYX")).pi14_images());
  t.expect(projectively_equal(hyc, Mat2::G1()), "Push(x y^-1 x^-1) acts as [1 2; 0 1]");
  t.expect(projectively_equal(homology_action(aut_lift(Mat2::G1())), Mat2::G1()), "G1 lift acts as [1 2; 0 1]");
  t.expect(projectively_equal(homology_action(aut_lift(Mat2::G2())), Mat2::G2()), "G2 lift acts as [1 0; 2 1]");
  auto hg1 = homology_action(push_lift(gamma2_to_pi03(FreeWord::parse(marks::gamma2(), "G1"))).pi14_images());
  t.expect(projectively_equal(hg1, Mat2::G1()), "Push(h(G1)) acts as [1 2; 0 1]");
  std::mt19937_64 rng(opt.seed);
  std::vector<Mat2> sample;
  for (uint32_t i = 0; i < opt.words; ++i) sample.push_back(random_gamma2(rng, 1 + static_cast<int>(rng() % 8)));
  auto rep = verify_diagram2(sample);
  uint32_t tau = 0;
  for (const auto& e : rep.entries) {
    t.expect(e.agrees, "diagram fails at " + e.matrix.str());
    tau += e.via_tau;
  }
  std::ostringstream os;
  os << "Push(x) = " << hx[0] << "," << hx[1] << "," << hx[2] << "," << hx[3] << "; Push(xy^-1x^-1) = " << hyc[0]
     << "," << hyc[1] << "," << hyc[2] << "," << hyc[3] << "; Push(y) = " << hy[0] << "," << hy[1] << "," << hy[2]
     << "," << hy[3] << "; diagram commutes on " << rep.entries.size()
     << " random words (" << tau << " via tau)";
  if (opt.words < 20) r.warnings.push_back("fewer than 20 diagram samples");
  t.finish(r, os.str());
}

void suite_lemma2(SuiteResult& r, const SuiteOptions& opt) {
  const Atlas& at = Atlas::get();
  Tally t;
  auto sample = delta_sample(opt.samples);
  for (size_t i = 0; i < sample.size(); ++i) {
    auto chain = pullback_chain(delta0_from_delta(sample[i]));
    for (const auto& w : lift_invariance(chain.tilde)) {
      t.expect(w.conjugate, label(sample[i], i) + ": lift of " + w.letter + " moves the class of Delta~");
      t.expect(at.pi14B_in_pi11.outer.contains(w.eta), label(sample[i], i) + ": conjugator outside pi14");
    }
  }
  t.finish(r, std::to_string(sample.size()) + " subgroups x 4 lifts, explicit pi14 conjugators");
}

void suite_lemma3(SuiteResult& r, const SuiteOptions& opt) {
  Tally t;
  auto sample = delta_sample(opt.samples);
  for (size_t i = 0; i < sample.size(); ++i) {
    auto chain = pullback_chain(delta0_from_delta(sample[i]));
    auto ac = alpha_classes(sample[i], chain);
    t.expect(ac.k == sample[i].degree(), label(sample[i], i) + ": k = " + std::to_string(ac.k));
    t.expect(ac.matches_coset_action, label(sample[i], i) + ": class action differs from the coset action");
  }
  t.finish(r, std::to_string(sample.size()) + " subgroups: k = index and class action = coset action");
}

void suite_prop4(SuiteResult& r, const SuiteOptions& opt) {
  Tally t;
  auto sample = delta_sample(opt.samples);
  uint64_t worst = 0;
  for (size_t i = 0; i < sample.size(); ++i) {
    auto d0 = delta0_from_delta(sample[i]);
    auto res = self_normalizing_refine(d0, opt.seed, opt.budget);
    t.expect(res.found, label(sample[i], i) + ": budget exhausted");
    if (!res.found) continue;
    worst = std::max(worst, res.candidates);
    t.expect(normalizer_size_by_trace(res.refined) == 1, label(sample[i], i) + ": normalizer is larger");
    t.expect(normalizer(res.refined).degree() == res.refined.degree(), label(sample[i], i) + ": normalizer table");
    const SchreierData sd = schreier(res.refined);
    for (const auto& g : sd.basis_words())
      t.expect(d0.contains(FreeWord(marks::pi03(), g)), label(sample[i], i) + ": refinement leaves Delta0");
  }
  t.finish(r, std::to_string(sample.size()) + " subgroups refined, at most " + std::to_string(worst) +
                  " candidates of " + std::to_string(opt.budget));
}

void suite_theorem(SuiteResult& r, const SuiteOptions& opt) {
  Tally t;
  PipelineConfig cfg;
  cfg.seed = opt.seed;
  cfg.budget = opt.budget;
  CosetAction delta = index2_delta();
  Construction c = construct(delta, cfg);
  VeechGroupResult v = stabilizer(c.lambda);
  TheoremReport rep = verify_theorem(v, delta, c.lambda);
  for (const auto& ch : rep.checks) t.expect(ch.pass, ch.name + ": " + ch.detail);
  t.expect(v.projective_orbit_size == 12, "projective orbit is not 12");
  std::ostringstream os;
  os << "index " << c.lambda.index_string() << ", projective orbit " << v.projective_orbit_size << ", "
     << v.generators.size() << " stabilizer generators in Delta";
  t.finish(r, os.str());
}

void suite_toy(SuiteResult& r, const SuiteOptions&) {
  struct Toy {
    CosetAction delta;
    std::array<uint32_t, 4> primes;
    bool refine;
  };
  const std::vector<Toy> toys{
      {index2_delta(), {1, 1, 1, 2}, false},
      {index2_delta(), {2, 1, 1, 1}, false},
      {CosetAction::whole(marks::gamma2()), {2, 3, 1, 1}, false},
      {CosetAction::whole(marks::gamma2()), {2, 1, 1, 1}, true},
  };
  Tally t;
  uint64_t pairs = 0;
  for (size_t i = 0; i < toys.size(); ++i) {
    PipelineConfig cfg;
    cfg.toy_primes = toys[i].primes;
    cfg.refine = toys[i].refine;
    Construction c = construct(toys[i].delta, cfg);
    CrossValidation cv = cross_validate(c.lambda, 10000);
    pairs += cv.pairs;
    t.expect(cv.pass(), "toy " + std::to_string(i) + ": " + std::to_string(cv.agreements) + "/" +
                            std::to_string(cv.pairs) + " agree, orbits " + std::to_string(cv.layered_orbit) + " vs " +
                            std::to_string(cv.table_orbit));
  }
  t.finish(r, std::to_string(toys.size()) + " toy instances, " + std::to_string(pairs) + " pairs, 100% agreement");
}

void suite_origami(SuiteResult& r, const SuiteOptions& opt) {
  const Atlas& at = Atlas::get();
  Tally t;
  Origami o = origami_export(at.pi14B_in_pi11.outer, 10000);
  t.expect(o.degree() == 4 && o.genus() == 1 && o.punctures() == 4, "pi14 origami is not S_{1,4}");
  Origami one{CosetAction::whole(marks::pi11())};
  VeechGroupResult v1 = veech_of_origami(one);
  t.expect(v1.orbit_size == 1 && v1.minus_identity, "trivial origami does not have Veech group SL(2,Z)");
  VeechGroupResult v4 = veech_of_origami(o);
  t.expect(v4.orbit_size == 1, "pi14 is not characteristic");

  // every table built along the way has a Schreier basis of rank 1 + n(r-1)
  uint64_t tables = 0;
  auto ns = [&](const CosetAction& c, const std::string& what) {
    ++tables;
    t.expect(nielsen_schreier(c), what + " violates Nielsen-Schreier");
  };
  for (const Inclusion* inc : {&at.pi14B_in_pi11, &at.pi14A_in_pi04}) ns(inc->outer, inc->name);
  auto sample = delta_sample(std::min<uint32_t>(opt.samples, 6));
  for (size_t i = 0; i < sample.size(); ++i) {
    PipelineConfig cfg;
    cfg.seed = opt.seed;
    cfg.budget = opt.budget;
    Construction c = construct(sample[i], cfg);
    const std::string l = label(sample[i], i);
    ns(c.delta, l);
    ns(c.chain.delta0, l + " Delta0");
    ns(c.chain.tilde, l + " Delta~");
    ns(c.refined.delta0, l + " Delta0'");
    ns(c.refined.tilde, l + " Delta~'");
    ns(c.d, l + " D");
    t.expect(c.lambda.rank() == 1 + c.d.degree(), l + " layered rank");
  }
  t.finish(r, "S_{1,4}: degree 4, genus 1, 4 punctures; trivial origami orbit 1; Nielsen-Schreier on " +
                  std::to_string(tables) + " tables");
}

struct Entry {
  std::string title;
  std::function<void(SuiteResult&, const SuiteOptions&)> run;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> m{
      {"atlas", {"atlas consistency", suite_atlas}},
      {"identities", {"conjugation identities", suite_identities}},
      {"lemma1", {"homology matrices and lift diagram", suite_lemma1}},
      {"lemma2", {"lift invariance of Delta~", suite_lemma2}},
      {"lemma3", {"alpha classes and the coset action", suite_lemma3}},
      {"prop4", {"self-normalizing refinement", suite_prop4}},
      {"theorem", {"index-2 end-to-end stabilizer", suite_theorem}},
      {"toy", {"toy cross-validation", suite_toy}},
      {"origami", {"origami invariants", suite_origami}},
  };
  return m;
}

bool per_delta(const std::string& name) {
  return name == "lemma2" || name == "lemma3" || name == "prop4";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"atlas", "identities", "lemma1", "lemma2", "lemma3",
                                          "prop4", "theorem",    "toy",    "origami"};
  return n;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown suite: " + name);
  SuiteResult r;
  r.name = name;
  r.title = it->second.title;
  auto t0 = Clock::now();
  if (per_delta(name) && opt.samples == 0) {
    r.pass = true;
    r.detail = "no samples";
    r.warnings.push_back("--samples 0: vacuous pass");
  } else {
    try {
      it->second.run(r, opt);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    if (per_delta(name) && opt.samples < 10) r.warnings.push_back("fewer than 10 sampled subgroups");
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<CosetAction> delta_sample(uint32_t count, uint32_t max_index) {
  std::vector<std::vector<CosetAction>> by_index;
  for (uint32_t n = 1; n <= max_index; ++n) by_index.push_back(subgroup_classes(marks::gamma2(), n));
  std::vector<CosetAction> out;
  std::vector<size_t> next(by_index.size(), 0);
  while (out.size() < count) {
    bool any = false;
    for (size_t i = 0; i < by_index.size() && out.size() < count; ++i) {
      if (next[i] >= by_index[i].size()) continue;
      out.push_back(by_index[i][next[i]++]);
      any = true;
    }
    if (!any) break;
  }
  return out;
}

CosetAction index2_delta() { return CosetAction(marks::gamma2(), {{1, 0}, {0, 1}}); }

}  // namespace tf
