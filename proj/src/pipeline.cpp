#include "teichforge/pipeline.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace tf {

namespace {

const Atlas& atlas() { return Atlas::get(); }

void require(bool ok, const std::string& what, std::vector<std::string>& log) {
  if (!ok) throw PipelineError("pipeline check failed: " + what);
  log.push_back(what);
}

FreeWord alpha_B() { return atlas().punctures[atlas().alpha_klein].rep_B; }

Perm invert(const Perm& p) {
  Perm q(p.size());
  for (uint32_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

ModVec vec_mod(const std::vector<long>& v, uint32_t q) { return reduce_mod(v, q); }

}  // namespace

void check_delta(const CosetAction& delta) {
  if (!same_alphabet(delta.mark(), marks::gamma2())) throw PipelineError("Delta must be a table over G1,G2");
  if (!delta.is_transitive()) throw PipelineError("Delta table is not transitive");
}

CosetAction delta0_from_delta(const CosetAction& delta) {
  check_delta(delta);
  auto G = marks::gamma2();
  return pullback({FreeWord::parse(G, "G2"), FreeWord::parse(G, "g2g1G2")}, marks::pi03(), delta);
}

PullbackChain pullback_chain(const CosetAction& delta0) {
  if (!same_alphabet(delta0.mark(), marks::pi03())) throw PipelineError("Delta0 must be a table over pi03");
  const Atlas& at = atlas();
  auto A = marks::pi03();
  PullbackChain c;
  c.delta0 = delta0;
  c.bar = pullback({FreeWord::parse(A, "x"), FreeWord::parse(A, "y"), FreeWord(A)}, marks::pi04(), delta0);
  std::vector<FreeWord> basis;
  for (const auto& b : at.basisB_ab) basis.push_back(at.ab_to_xyz(b));
  c.tilde = pullback(basis, marks::pi14B(), c.bar);
  if (c.bar.degree() != delta0.degree()) throw PipelineError("[pi04 : bar Delta] differs from [pi03 : Delta0]");
  if (!c.bar.contains(FreeWord::parse(marks::pi04(), "z"))) throw PipelineError("z is not in bar Delta");
  if (c.tilde.degree() != delta0.degree()) throw PipelineError("bar Delta does not surject onto pi04/pi14");
  return c;
}

FreeWord pi14_to_ab(const FreeWord& w) {
  return FreeWord(marks::pi11(), atlas().inclusion("pi14B<pi11").to_outer(w));
}

FreeWord pi14_to_pi03(const FreeWord& w) { return atlas().forget(atlas().ab_to_xyz(pi14_to_ab(w))); }

uint32_t delta_coset(const CosetAction& delta, const FreeWord& r) {
  return delta.act(0, pi03_to_gamma2(pi14_to_pi03(r)));
}

AlphaClasses alpha_classes(const CosetAction& delta, const PullbackChain& chain) {
  const Atlas& at = atlas();
  const auto B = marks::pi14B();
  const FreeWord alpha = alpha_B();
  AlphaClasses ac;
  ac.entries = cyclic_class_decomposition(chain.tilde, seq_of(alpha));
  ac.k = static_cast<uint32_t>(ac.entries.size());

  std::vector<uint32_t> class_of(chain.tilde.degree());
  for (uint32_t j = 0; j < ac.k; ++j) {
    uint32_t p = ac.entries[j].coset;
    for (uint32_t s = 0; s < ac.entries[j].size; ++s, p = chain.tilde.act(p, alpha)) class_of[p] = j;
  }
  std::vector<char> hit(delta.degree(), 0);
  for (const auto& e : ac.entries) {
    uint32_t c = delta_coset(delta, FreeWord(B, e.conjugator));
    ac.delta_coset.push_back(c);
    if (c < hit.size()) hit[c] = 1;
  }
  bool bijective = ac.k == delta.degree() && std::all_of(hit.begin(), hit.end(), [](char h) { return h; });

  const char* letters[2] = {"G1", "G2"};
  std::vector<Perm> right(2, Perm(ac.k));
  for (int g = 0; g < 2; ++g) {
    PushLift push = push_lift(gamma2_to_pi03(FreeWord::parse(marks::gamma2(), letters[g])));
    Perm& perm = ac.generator_perms[g];
    perm.assign(ac.k, 0);
    for (uint32_t j = 0; j < ac.k; ++j) {
      FreeWord rep(B, ac.entries[j].representative);
      FreeWord img = at.xyz_to_ab(push.aut.apply(at.ab_to_xyz(pi14_to_ab(rep))));
      FreeWord w = at.rewrite("pi14B<pi11", img);
      auto g0 = conjugate_in_free(alpha.pow(ac.entries[j].size), w);
      if (!g0) throw PipelineError("push lift leaves the puncture class of alpha");
      perm[j] = class_of[chain.tilde.act(0, *g0)];
    }
    // lifts compose as a left action; inverses give the right action
    Perm inv = invert(perm);
    if (bijective)
      for (uint32_t j = 0; j < ac.k; ++j) right[g][ac.delta_coset[j]] = ac.delta_coset[inv[j]];
  }
  if (bijective) {
    ac.class_action = CosetAction(marks::gamma2(), right);
    ac.matches_coset_action = ac.class_action == delta;
  }
  return ac;
}

std::vector<InvarianceWitness> lift_invariance(const CosetAction& tilde) {
  const Atlas& at = atlas();
  std::vector<InvarianceWitness> out;
  for (const char* letter : {"G1", "G2", "g1", "g2"}) {
    InvarianceWitness wit;
    wit.letter = letter;
    AutLift l = aut_lift(evaluate(FreeWord::parse(marks::gamma2(), letter)));
    Automorphism psi{marks::pi14B(), l.basisB_images, {}};
    for (const auto& b : at.basisB_ab) psi.inverse_images.push_back(at.rewrite("pi14B<pi11", l.restricted.apply_inverse(b)));
    CosetAction image = image_under_automorphism(tilde, psi);
    auto r = conjugacy_equal(tilde, image);
    if (r) {
      FreeWord eta(marks::pi14B(), *r);
      bool ok = true;
      const SchreierData sd = schreier(tilde);
      for (const auto& g : sd.basis_words()) {
        FreeWord x = psi.apply(FreeWord(marks::pi14B(), g)).conjugated_by(eta.inverse());
        ok = ok && tilde.contains(x);
      }
      wit.conjugate = ok;
      wit.eta = pi14_to_ab(eta);
    }
    out.push_back(wit);
  }
  return out;
}

RefineResult self_normalizing_refine(const CosetAction& delta0, uint64_t seed, uint64_t budget, uint64_t skip) {
  if (!same_alphabet(delta0.mark(), marks::pi03())) throw PipelineError("Delta0 must be a table over pi03");
  std::mt19937_64 rng(seed);
  const uint32_t n = delta0.degree();
  RefineResult res;
  uint64_t accepted = 0;
  for (uint64_t t = 0; t < budget; ++t) {
    const uint32_t m = 2 + static_cast<uint32_t>(t / 32);
    std::vector<Perm> perms(2, Perm(static_cast<size_t>(n) * m));
    for (int i = 0; i < 2; ++i)
      for (uint32_t p = 0; p < n; ++p) {
        std::vector<uint32_t> sigma(m);
        for (uint32_t j = 0; j < m; ++j) sigma[j] = j;
        for (uint32_t j = m - 1; j > 0; --j) std::swap(sigma[j], sigma[rng() % (j + 1)]);
        const uint32_t p2 = delta0.perm(i)[p];
        for (uint32_t j = 0; j < m; ++j) perms[i][p * m + j] = p2 * m + sigma[j];
      }
    res.candidates = t + 1;
    CosetAction c = rebase(CosetAction(marks::pi03(), std::move(perms)), 0);
    if (c.degree() != n * m || !self_normalizing(c)) continue;
    if (accepted++ < skip) continue;
    res.found = true;
    res.refined = std::move(c);
    res.cover_degree = m;
    return res;
  }
  return res;
}

bool HLevel::contains(const FreeWord& ab) const {
  auto e = ab.exponent_sums();
  if (e[0] % 2 != 0 || e[1] % 2 != 0) return false;
  auto v = atlas().basisB_vector(ab);
  for (int i = 0; i < 3; ++i)
    if (primes[i] > 1 && !hbar[i].contains(vec_mod(v, primes[i]))) return false;
  return true;
}

std::vector<std::pair<uint32_t, int>> HLevel::index_factors() const {
  std::map<uint32_t, ModSubspace> merged;
  for (int i = 0; i < 3; ++i) {
    if (primes[i] <= 1) continue;
    auto it = merged.find(primes[i]);
    if (it == merged.end())
      merged.emplace(primes[i], hbar[i]);
    else
      it->second = it->second.intersect(hbar[i]);
  }
  std::vector<std::pair<uint32_t, int>> out;
  for (const auto& [q, u] : merged)
    if (u.codim() > 0) out.emplace_back(q, u.codim());
  return out;
}

HLevel build_H(const std::array<uint32_t, 3>& primes) {
  const Atlas& at = atlas();
  HLevel h;
  h.primes = primes;
  h.detects = {0, 3, 1};  // x^2, y^2, w^2
  for (int i = 0; i < 3; ++i) {
    if (primes[i] <= 1) continue;
    ModMat span;
    for (int j = 0; j < 3; ++j)
      if (j != i) span.push_back(vec_mod(at.basisB_vector(at.punctures[h.detects[j]].rep_ab), primes[i]));
    h.hbar[i] = ModSubspace::span(primes[i], 5, span);
  }
  return h;
}

std::vector<ModSubspace> build_A(const LayeredSubgroup& d, const CosetAction& tilde_refined, const CosetAction& delta,
                                 uint32_t ell) {
  const auto B = marks::pi14B();
  auto classes = cyclic_class_decomposition(tilde_refined, seq_of(alpha_B()));
  std::vector<ModVec> vecs;
  std::vector<uint32_t> owner;
  for (const auto& c : classes) {
    vecs.push_back(vec_mod(d.exponents(pi14_to_ab(FreeWord(B, c.representative))), ell));
    owner.push_back(delta_coset(delta, FreeWord(B, c.conjugator)));
  }
  std::vector<ModSubspace> out;
  const int r = static_cast<int>(d.rank());
  for (uint32_t j = 0; j < delta.degree(); ++j) {
    ModMat rows;
    for (size_t c = 0; c < vecs.size(); ++c)
      if (owner[c] != j) rows.push_back(vecs[c]);
    out.push_back(ModSubspace::span(ell, r, rows));
  }
  return out;
}

bool pairwise_distinct(const std::vector<ModSubspace>& a) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j]) return false;
  return true;
}

std::vector<uint64_t> guard_indices(const CosetAction& d) {
  auto orbit = table_orbit(d);
  std::set<uint64_t> idx;
  for (const auto& di : orbit.elements)
    for (const auto& dj : orbit.elements)
      for (uint32_t p = 0; p < dj.degree(); ++p)
        idx.insert(intersect(di, rebase(dj, p)).degree() / di.degree());
  return {idx.begin(), idx.end()};
}

bool coprime_to_all(uint64_t q, const std::vector<uint64_t>& indices) {
  return std::none_of(indices.begin(), indices.end(), [q](uint64_t i) { return i % q == 0; });
}

EllChoice choose_ell(const LayeredSubgroup& d, const CosetAction& tilde_refined, const CosetAction& delta,
                     const std::array<uint32_t, 3>& primes, uint64_t lower, const std::vector<uint64_t>& guard,
                     uint32_t attempts) {
  EllChoice ch;
  uint64_t e = lower;
  for (uint32_t tries = 0; tries < attempts; ++tries) {
    do e = next_prime(e);
    while (!coprime_to_all(e, guard) || std::find(primes.begin(), primes.end(), e) != primes.end());
    ch.a = build_A(d, tilde_refined, delta, static_cast<uint32_t>(e));
    ch.distinct = pairwise_distinct(ch.a);
    if (ch.distinct) {
      ch.ell = static_cast<uint32_t>(e);
      return ch;
    }
    ch.rejected.push_back(static_cast<uint32_t>(e));
  }
  return ch;
}

LayeredSubgroup assemble_lambda(const CosetAction& d, const HLevel& h, const ModSubspace& a1, bool toy) {
  const Atlas& at = atlas();
  LayeredSubgroup shell(d, {});
  const int r = static_cast<int>(shell.rank());
  std::vector<std::vector<long>> cols;
  for (const auto& b : shell.schreier_data().basis_words())
    cols.push_back(at.basisB_vector(FreeWord(marks::pi11(), b)));
  std::map<uint32_t, ModSubspace> layers;
  auto merge = [&](const ModSubspace& u) {
    auto it = layers.find(u.prime());
    if (it == layers.end()) {
      layers.emplace(u.prime(), u);
    } else {
      if (!toy) throw PipelineError("faithful primes must be distinct");
      it->second = it->second.intersect(u);
    }
  };
  for (int i = 0; i < 3; ++i) {
    const uint32_t p = h.primes[i];
    if (p <= 1) continue;
    ModMat m(5, ModVec(r, 0));
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < 5; ++k) m[k][j] = mod_reduce(cols[j][k], p);
    merge(h.hbar[i].preimage(m, r));
  }
  if (a1.dim() == r) merge(a1);
  std::vector<ModSubspace> out;
  for (auto& [q, u] : layers) out.push_back(std::move(u));
  return LayeredSubgroup(d, std::move(out));
}

Construction construct(const CosetAction& delta, const PipelineConfig& config) {
  const Atlas& at = atlas();
  Construction c;
  c.config = config;
  c.toy = config.toy_primes.has_value() || !config.refine;
  c.delta = delta;
  check_delta(delta);
  const uint32_t n = delta.degree();
  c.degenerate = n == 1;
  auto& log = c.checks;

  c.chain = pullback_chain(delta0_from_delta(delta));
  log.push_back("pullback chain: [pi03:Delta0] = [pi04:bar Delta] = [pi14:Delta~] = " + std::to_string(n));

  c.alpha = alpha_classes(delta, c.chain);
  require(c.alpha.k == n, "alpha splits into k = [Gamma(2):Delta] classes of Delta~", log);
  require(c.alpha.matches_coset_action, "class action of Gamma(2) equals the coset action on Delta", log);

  c.lemma2 = lift_invariance(c.chain.tilde);
  for (const auto& w : c.lemma2)
    require(w.conjugate, "lift of " + w.letter + " maps Delta~ to a pi14-conjugate (eta = " + w.eta.str() + ")", log);

  for (uint64_t skip = 0;; ++skip) {
    CosetAction delta0p;
    if (config.refine) {
      c.refine = self_normalizing_refine(c.chain.delta0, config.seed, config.budget, skip);
      if (!c.refine.found)
        throw PipelineError("self-normalizing search exhausted its budget of " + std::to_string(config.budget));
      delta0p = c.refine.refined;
    } else {
      c.refine = RefineResult{false, c.chain.delta0, 0, 1};
      delta0p = c.chain.delta0;
    }
    c.refined = pullback_chain(delta0p);
    if (config.refine) {
      require(self_normalizing(c.refined.delta0), "Delta0' is self-normalizing in pi03", log);
      require(self_normalizing(c.refined.tilde), "Delta~' is self-normalizing in pi14", log);
    }
    c.d = induce_up(c.refined.tilde, at.inclusion("pi14B<pi11"));
    c.guard = guard_indices(c.d);
    LayeredSubgroup dshell(c.d, {});

    std::array<uint32_t, 3> p{};
    c.rejected_ells.clear();
    if (config.toy_primes) {
      const auto& tp = *config.toy_primes;
      p = {tp[0], tp[1], tp[2]};
      c.ell = tp[3];
      if (c.ell > 1) {
        c.a = build_A(dshell, c.refined.tilde, delta, c.ell);
        c.a_distinct = pairwise_distinct(c.a);
      }
    } else {
      uint64_t q = n;
      for (int i = 0; i < 3; ++i) {
        do q = next_prime(q);
        while (!coprime_to_all(q, c.guard));
        p[i] = static_cast<uint32_t>(q);
      }
      EllChoice ch = choose_ell(dshell, c.refined.tilde, delta, p, n, c.guard, config.ell_attempts);
      c.ell = ch.ell;
      c.a = std::move(ch.a);
      c.a_distinct = ch.distinct;
      c.rejected_ells = std::move(ch.rejected);
      if (!c.a_distinct) {
        if (!config.refine) throw PipelineError("A-subspaces are not distinct for any tried ell");
        continue;
      }
    }
    c.h = build_H(p);
    break;
  }

  if (!c.toy) {
    require(c.a_distinct, "A_1..A_k pairwise distinct at ell = " + std::to_string(c.ell), log);
    for (int i = 0; i < 3; ++i) {
      const auto& pc = at.punctures[c.h.detects[i]];
      FreeWord b = pc.rep_ab;
      require(!c.h.contains(b) && c.h.contains(b.pow(c.h.primes[i])),
              "p" + std::to_string(i + 1) + " = " + std::to_string(c.h.primes[i]) + " detects " + pc.name, log);
    }
  }

  ModSubspace a1 = c.ell > 1 && !c.a.empty() ? c.a[0] : ModSubspace();
  c.lambda = assemble_lambda(c.d, c.h, a1, c.toy);
  require(c.lambda.contains(FreeWord(marks::pi11())), "identity lies in Lambda", log);
  require(!c.lambda.contains(FreeWord::parse(marks::pi11(), "a")), "a is not in Lambda", log);
  return c;
}

}  // namespace tf
