#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teichforge/modp.hpp"
#include "teichforge/words.hpp"

namespace tf {

// Signed letter sequence (+(i+1) / -(i+1)). Common currency between free
// words and ambient words when acting on cosets.
using Seq = std::vector<int>;
using Perm = std::vector<uint32_t>;

Seq seq_of(const FreeWord& w);
Seq seq_of(const ReflectionWord& w);
ReflectionWord reflection_of(const Seq& s);

struct SubgroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Right action of a marked group on the cosets of a subgroup. The subgroup
// is the stabilizer of point 0. Ambient letters act by their permutation and
// are their own inverses.
class CosetAction {
 public:
  CosetAction() = default;
  CosetAction(AlphabetPtr mark, std::vector<Perm> perms);
  static CosetAction whole(AlphabetPtr mark);

  const AlphabetPtr& mark() const { return mark_; }
  bool involutive() const { return marks::is_ambient(mark_); }
  int letters() const { return static_cast<int>(perms_.size()); }
  uint32_t degree() const { return n_; }
  const Perm& perm(int i) const { return perms_[i]; }
  const Perm& inverse_perm(int i) const { return inv_[i]; }
  const std::vector<Perm>& perms() const { return perms_; }

  uint32_t act(uint32_t p, int letter) const {
    return letter > 0 ? perms_[letter - 1][p] : inv_[-letter - 1][p];
  }
  uint32_t act(uint32_t p, const Seq& w) const;
  uint32_t act(uint32_t p, const FreeWord& w) const;
  uint32_t act(uint32_t p, const ReflectionWord& w) const;

  bool contains(const FreeWord& w) const;
  bool contains(const ReflectionWord& w) const;
  bool is_transitive() const;

  bool operator==(const CosetAction& o) const {
    return same_alphabet(mark_, o.mark_) && perms_ == o.perms_;
  }

 private:
  AlphabetPtr mark_;
  uint32_t n_ = 0;
  std::vector<Perm> perms_, inv_;
};

// Based canonical relabeling: breadth first from the basepoint, letters in
// basis order, forward image before inverse image.
struct CanonicalTable {
  std::vector<Perm> perms;
  bool operator==(const CanonicalTable& o) const { return perms == o.perms; }
  bool operator<(const CanonicalTable& o) const { return perms < o.perms; }
};

// Relabel so that `base` becomes 0; keeps only the orbit of `base`.
CosetAction rebase(const CosetAction& c, uint32_t base);
CanonicalTable canonical_form(const CosetAction& c, uint32_t base = 0);
// Shortest-first transversal words, one per point, from the BFS tree at 0.
std::vector<Seq> transversal(const CosetAction& c);

struct FoldResult {
  CosetAction action;  // valid only if complete
  bool complete = false;
  uint32_t vertices = 0;
};
FoldResult fold(const std::vector<Seq>& generators, AlphabetPtr mark);
FoldResult fold(const std::vector<FreeWord>& generators);
FoldResult fold(const std::vector<ReflectionWord>& generators);

uint64_t index(const CosetAction& c);
// Rank of the subgroup of a free mark, 1 + n(r-1).
uint64_t rank(const CosetAction& c);

// Each source letter acts by its image word; restricted to the basepoint orbit.
CosetAction pullback(AlphabetPtr source, const std::vector<Seq>& images, const CosetAction& target);
CosetAction pullback(const std::vector<FreeWord>& images, AlphabetPtr source, const CosetAction& target);
CosetAction intersect(const CosetAction& a, const CosetAction& b);

// Rewriting data for a finite-index subgroup K of a marked group F: K is
// the stabilizer of 0 in `outer`, edge[p][i] is the K-word read when letter
// i is applied at point p, transversal[p] reaches p from 0.
struct Inclusion {
  std::string name;
  CosetAction outer;
  AlphabetPtr inner;
  std::vector<Seq> transversal;
  std::vector<std::vector<FreeWord>> edge;
  // inner basis letters as outer words
  std::vector<Seq> basis;

  FreeWord express(const Seq& w) const;
  FreeWord express(const FreeWord& w) const { return express(seq_of(w)); }
  FreeWord express(const ReflectionWord& w) const { return express(seq_of(w)); }
  Seq to_outer(const FreeWord& w) const;
  // every edge word matches transversal[p] x transversal[p.x]^-1; throws on failure
  void verify() const;
};

// Reidemeister-Schreier data of a subgroup of a free mark.
struct SchreierData {
  Inclusion inclusion;
  // (point, letter index) of each free generator, in order
  std::vector<std::pair<uint32_t, int>> generator_edges;
  uint64_t rank() const { return generator_edges.size(); }
  const std::vector<Seq>& basis_words() const { return inclusion.basis; }
};

SchreierData schreier(const CosetAction& c);
FreeWord express_in_basis(const SchreierData& s, const FreeWord& w);
ModVec abelianize_mod(const SchreierData& s, const FreeWord& w, uint32_t q);

CosetAction conjugate_subgroup(const CosetAction& c, const Seq& g);
CosetAction conjugate_subgroup(const CosetAction& c, const FreeWord& g);

// Automorphism of a free group with its two-sided inverse.
struct Automorphism {
  AlphabetPtr alphabet;
  std::vector<FreeWord> images;
  std::vector<FreeWord> inverse_images;

  static Automorphism identity(AlphabetPtr a);
  static Automorphism inner(const FreeWord& g);  // x -> g x g^-1
  FreeWord apply(const FreeWord& w) const { return w.substitute(images); }
  FreeWord apply_inverse(const FreeWord& w) const { return w.substitute(inverse_images); }
  Automorphism inverse() const { return {alphabet, inverse_images, images}; }
  // (this o o)(w) = this(o(w))
  Automorphism after(const Automorphism& o) const;
  bool verify() const;
};

CosetAction image_under_automorphism(const CosetAction& c, const Automorphism& psi);

struct ColorRefinement {
  std::vector<uint32_t> color;
  uint32_t classes = 0;
};
ColorRefinement refine_colors(const CosetAction& c);

// Word r with Stab_b(0.r) = Stab_a(0), i.e. a's subgroup = r^-1 (b's subgroup) r.
std::optional<Seq> conjugacy_equal(const CosetAction& a, const CosetAction& b);
// Invariant of the conjugacy class: least canonical form over a canonically
// chosen colour class of basepoints.
CanonicalTable class_key(const CosetAction& c, std::vector<uint32_t>* bases = nullptr);
// Points p whose based form equals the basepoint's.
std::vector<uint32_t> normalizer_points(const CosetAction& c);
CosetAction normalizer(const CosetAction& c);
bool self_normalizing(const CosetAction& c);

struct ClassEntry {
  uint32_t coset;   // a coset in the cycle (the one reached first)
  Seq representative;  // r w r^-1
  Seq conjugator;      // r
  uint32_t size;       // cycle length
};
std::vector<ClassEntry> cyclic_class_decomposition(const CosetAction& c, const Seq& w);

CosetAction induce_up(const CosetAction& sub, const Inclusion& inc);

// One based table per conjugacy class of index-n subgroups of a free mark,
// ordered by class key. Brute force over Sym(n)^rank; meant for n <= 6.
std::vector<CosetAction> subgroup_classes(AlphabetPtr mark, uint32_t n);

}  // namespace tf
