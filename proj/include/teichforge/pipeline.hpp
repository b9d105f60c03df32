#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teichforge/veech.hpp"

namespace tf {

struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Delta is a transitive table over G1,G2 (projective cosets; -1 lies in
// Delta by convention).
void check_delta(const CosetAction& delta);

// h(Delta) in pi03, pulled back along the inverse of G1 -> xYX, G2 -> x.
CosetAction delta0_from_delta(const CosetAction& delta);

struct PullbackChain {
  CosetAction delta0;  // over pi03
  CosetAction bar;     // over pi04: preimage under forgetting z
  CosetAction tilde;   // over pi14 basis B: bar intersected with pi14
};
PullbackChain pullback_chain(const CosetAction& delta0);

// Delta coset of h^-1(forget(r)) for r in pi14 given over basis B.
uint32_t delta_coset(const CosetAction& delta, const FreeWord& r);
FreeWord pi14_to_ab(const FreeWord& basisB);
FreeWord pi14_to_pi03(const FreeWord& basisB);

// Conjugacy classes of Delta~ inside [alpha] of pi14.
struct AlphaClasses {
  uint32_t k = 0;
  std::vector<ClassEntry> entries;           // over basis B
  std::vector<uint32_t> delta_coset;         // per class
  std::array<Perm, 2> generator_perms;       // push lifts of h(G1), h(G2) on classes
  CosetAction class_action;                  // right action over G1,G2 based at the class of alpha
  bool matches_coset_action = false;
};
AlphaClasses alpha_classes(const CosetAction& delta, const PullbackChain& chain);

// Invariance data for one Gamma(2) letter: restricted lift maps Delta~ to
// eta Delta~ eta^-1 with eta in pi14.
struct InvarianceWitness {
  std::string letter;
  bool conjugate = false;
  FreeWord eta;  // over F(a,b), in pi14
};
std::vector<InvarianceWitness> lift_invariance(const CosetAction& tilde);

struct RefineResult {
  bool found = false;
  CosetAction refined;  // over pi03
  uint64_t candidates = 0;
  uint32_t cover_degree = 0;
};
// Seeded search for a self-normalizing subgroup of finite index in delta0.
// `skip` accepted candidates are passed over first.
RefineResult self_normalizing_refine(const CosetAction& delta0, uint64_t seed, uint64_t budget, uint64_t skip = 0);

struct HLevel {
  std::array<uint32_t, 3> primes{};
  std::array<int, 3> detects{};          // Klein index of the class detected by each prime
  std::array<ModSubspace, 3> hbar;       // in (Z/p_i)^5, basis-B coordinates
  bool contains(const FreeWord& ab) const;
  // [pi14 : H] as a product of prime powers
  std::vector<std::pair<uint32_t, int>> index_factors() const;
};
HLevel build_H(const std::array<uint32_t, 3>& primes);

// A_j for every class j (indexed like the classes of Delta~), in D's basis.
std::vector<ModSubspace> build_A(const LayeredSubgroup& d, const CosetAction& tilde_refined,
                                 const CosetAction& delta, uint32_t ell);
bool pairwise_distinct(const std::vector<ModSubspace>& a);

// Indices [D_i : D_i cap g D_j g^-1] over the S,T-orbit of the class of D
// and all g in F(a,b).
std::vector<uint64_t> guard_indices(const CosetAction& d);
bool coprime_to_all(uint64_t q, const std::vector<uint64_t>& indices);

struct EllChoice {
  uint32_t ell = 0;  // 0 if every attempt failed
  std::vector<ModSubspace> a;
  bool distinct = false;
  std::vector<uint32_t> rejected;
};
// Smallest prime above `lower`, outside `primes`, coprime to the guard, at
// which the A_j are pairwise distinct; gives up after `attempts` primes.
EllChoice choose_ell(const LayeredSubgroup& d, const CosetAction& tilde_refined, const CosetAction& delta,
                     const std::array<uint32_t, 3>& primes, uint64_t lower, const std::vector<uint64_t>& guard,
                     uint32_t attempts);

struct PipelineConfig {
  uint64_t seed = 1;
  uint64_t budget = 10000;
  // p1,p2,p3,ell; 1 disables a layer; equal primes share a layer
  std::optional<std::array<uint32_t, 4>> toy_primes;
  bool refine = true;  // toy runs may keep Delta0 unrefined
  uint32_t ell_attempts = 20;
};

struct Construction {
  PipelineConfig config;
  bool toy = false;
  bool degenerate = false;
  CosetAction delta;
  PullbackChain chain;
  AlphaClasses alpha;
  std::vector<InvarianceWitness> lemma2;
  RefineResult refine;
  PullbackChain refined;
  CosetAction d;  // refined Delta~ over F(a,b)
  std::vector<uint64_t> guard;
  HLevel h;
  uint32_t ell = 0;
  std::vector<ModSubspace> a;  // A_1..A_k at ell
  bool a_distinct = false;
  std::vector<uint32_t> rejected_ells;
  LayeredSubgroup lambda;
  std::vector<std::string> checks;
};

Construction construct(const CosetAction& delta, const PipelineConfig& config);

// Layers of Lambda from D, H, and A_1.
LayeredSubgroup assemble_lambda(const CosetAction& d, const HLevel& h, const ModSubspace& a1, bool toy);

}  // namespace tf
