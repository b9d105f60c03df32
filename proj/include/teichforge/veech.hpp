#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "teichforge/mcg.hpp"

namespace tf {

// Subgroup of F(a,b) cut out of the coset table D by one linear condition
// per prime q on the mod-q abelianization of D: w in Lambda iff w in D and
// ab_q(w) in U_q for every layer.
class LayeredSubgroup {
 public:
  LayeredSubgroup() = default;
  LayeredSubgroup(CosetAction d, std::vector<ModSubspace> layers);

  const CosetAction& table() const { return d_; }
  const SchreierData& schreier_data() const { return *sd_; }
  const std::vector<ModSubspace>& layers() const { return layers_; }
  const ModSubspace* layer(uint32_t q) const;
  uint64_t rank() const { return sd_->rank(); }

  bool contains(const FreeWord& w) const;
  // exponent vector of a member of D in D's Schreier basis
  std::vector<long> exponents(const FreeWord& member) const;

  // [F(a,b) : Lambda] = degree(D) * prod q^codim(U_q)
  std::vector<std::pair<uint32_t, int>> index_factors() const;
  std::string index_string() const;
  // saturates at UINT64_MAX
  uint64_t materialized_degree() const;

 private:
  CosetAction d_;
  std::shared_ptr<const SchreierData> sd_;
  std::vector<ModSubspace> layers_;
};

ModVec reduce_mod(const std::vector<long>& v, uint32_t q);

// psi(Lambda)
LayeredSubgroup transport(const LayeredSubgroup& l, const Automorphism& psi);
// g^-1 Lambda g where 0.g = base in D, with D relabeled breadth first from base
LayeredSubgroup rebase(const LayeredSubgroup& l, uint32_t base);

struct LayeredKey {
  CanonicalTable table;
  std::vector<std::pair<uint32_t, ModMat>> layers;
  bool operator==(const LayeredKey& o) const { return table == o.table && layers == o.layers; }
  bool operator<(const LayeredKey& o) const {
    if (!(table == o.table)) return table < o.table;
    return layers < o.layers;
  }
};

// Invariant of the F(a,b)-conjugacy class: least layer tuple over the
// basepoints where D takes its canonical form.
LayeredKey layered_key(const LayeredSubgroup& l, LayeredSubgroup* canonical = nullptr);
bool layered_equal(const LayeredSubgroup& a, const LayeredSubgroup& b);

// Full coset table of Lambda; throws if the degree exceeds `bound`.
CosetAction materialize(const LayeredSubgroup& l, uint64_t bound);

struct LayeredImage {
  Mat2 matrix;
  LayeredSubgroup image;  // canonical representative
  std::array<int, 4> class_perm{};
  std::vector<int> signature;  // Klein index of the class detected by each H prime
};

LayeredImage theta_image(const LayeredSubgroup& l, const Mat2& m, const std::vector<int>& signature = {});

// Right action of SL(2,Z) on the orbit of a conjugacy class: the letter
// S or T sends X to psi^-1(X) for its fixed lift psi.
struct VeechGroupResult {
  CosetAction orbit_action;  // over S,T; point 0 is the input
  uint64_t orbit_size = 0;
  bool minus_identity = false;  // -I stabilizes
  uint64_t projective_orbit_size = 0;
  std::vector<FreeWord> generator_words;  // over S,T
  std::vector<Mat2> generators;
};

VeechGroupResult from_orbit_action(CosetAction action);

template <class T, class Key>
struct Sl2Orbit {
  std::vector<T> elements;
  std::vector<Key> keys;
  CosetAction action;
};

// Breadth-first orbit under S and T. `canon` returns the canonical
// representative and its key; `step` applies letter i (0 = S, 1 = T).
template <class T, class Key, class Canon, class Step>
Sl2Orbit<T, Key> sl2_orbit(const T& start, Canon canon, Step step, size_t limit) {
  Sl2Orbit<T, Key> o;
  std::map<Key, uint32_t> index;
  auto [t0, k0] = canon(start);
  index.emplace(k0, 0);
  o.elements.push_back(std::move(t0));
  o.keys.push_back(std::move(k0));
  std::vector<Perm> perms(2);
  for (size_t n = 0; n < o.elements.size(); ++n) {
    for (int i = 0; i < 2; ++i) {
      auto [t, k] = canon(step(o.elements[n], i));
      auto it = index.find(k);
      uint32_t j;
      if (it == index.end()) {
        if (o.elements.size() >= limit) throw std::runtime_error("orbit exceeds the size limit");
        j = static_cast<uint32_t>(o.elements.size());
        index.emplace(k, j);
        o.elements.push_back(std::move(t));
        o.keys.push_back(std::move(k));
      } else {
        j = it->second;
      }
      perms[i].push_back(j);
    }
  }
  o.action = CosetAction(marks::sl2(), std::move(perms));
  return o;
}

VeechGroupResult stabilizer(const LayeredSubgroup& l, size_t orbit_limit = 1000000);
// Table-based counterpart: orbit of the conjugacy class of a subgroup of F(a,b).
VeechGroupResult veech_of_table(const CosetAction& c, size_t orbit_limit = 1000000);
Sl2Orbit<LayeredSubgroup, LayeredKey> layered_orbit(const LayeredSubgroup& l, size_t orbit_limit = 1000000);
Sl2Orbit<CosetAction, CanonicalTable> table_orbit(const CosetAction& c, size_t orbit_limit = 1000000);

// Layered against table-based conjugacy on a materializable Lambda: every
// orbit element and every raw S/T image met during the search is compared
// with every orbit element both ways.
struct CrossValidation {
  uint64_t pairs = 0;
  uint64_t agreements = 0;
  uint64_t layered_orbit = 0;
  uint64_t table_orbit = 0;
  bool same_action = false;
  bool pass() const { return pairs > 0 && pairs == agreements && same_action; }
};
CrossValidation cross_validate(const LayeredSubgroup& l, uint64_t degree_bound);

struct TheoremCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TheoremReport {
  bool pass = false;
  bool degenerate = false;
  std::vector<TheoremCheck> checks;
};

// Stabilizer equals Delta (a table over G1,G2, with -1 adjoined).
TheoremReport verify_theorem(const VeechGroupResult& r, const CosetAction& delta, const LayeredSubgroup& l);

struct Origami {
  CosetAction table;  // over a,b; squares are cosets

  uint32_t degree() const { return table.degree(); }
  Perm commutator() const;
  uint32_t punctures() const;
  int genus() const;
  std::vector<uint32_t> puncture_orders() const;  // sorted cycle lengths of the commutator

  // "d" on the first line, then the images of a and of b
  static Origami parse_text(const std::string& text);
  std::string text() const;
};

Origami origami_export(const CosetAction& c, uint64_t degree_bound);
VeechGroupResult veech_of_origami(const Origami& o);

}  // namespace tf
