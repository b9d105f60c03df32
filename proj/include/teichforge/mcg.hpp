#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "teichforge/atlas.hpp"

namespace tf {

using BigInt = boost::multiprecision::cpp_int;

struct Mat2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }
  static Mat2 S() { return {0, -1, 1, 0}; }
  static Mat2 T() { return {1, 1, 0, 1}; }
  static Mat2 G1() { return {1, 2, 0, 1}; }
  static Mat2 G2() { return {1, 0, 2, 1}; }

  BigInt det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  Mat2 inverse() const { return {d, -b, -c, a}; }  // det 1
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const Mat2& o) const { return !(*this == o); }
  bool projectively_equal(const Mat2& o) const { return *this == o || *this == -o; }
  bool in_gamma2() const;
  std::string str() const;
};

// Evaluate a word over marks::gamma2() or marks::sl2().
Mat2 evaluate(const FreeWord& w);

struct SignedWord {
  FreeWord word;
  int sign = 1;  // m = sign * evaluate(word)
};

SignedWord gamma2_word(const Mat2& m);
// exact: evaluate(sl2_word(m)) == m
FreeWord sl2_word(const Mat2& m);

using IntMat2 = std::array<long, 4>;  // a b c d

// A lift of a mapping class of the once-punctured torus to Aut(F(a,b)).
struct AutLift {
  Mat2 matrix;
  Automorphism aut;
  // for matrices in Gamma(2): aut followed by conjugation by `correction`,
  // fixing all four puncture classes of pi14; otherwise equal to aut
  Automorphism restricted;
  FreeWord correction;
  std::array<int, 4> class_perm{};  // Klein class c -> class_perm[c] under aut
  std::vector<FreeWord> pi14_images;   // restricted images of b1..b5 in F(a,b)
  std::vector<FreeWord> basisB_images;  // the same, in basis B
};

Automorphism lift_of_letter(int signed_letter);  // over marks::sl2()
AutLift aut_lift(const Mat2& m);
AutLift aut_lift(const FreeWord& sl2word);
std::array<int, 4> class_permutation(const Automorphism& psi);

// Action on H = H1(pi14)/<punctures> from the F(a,b) images of b1, b2;
// v in H has coordinates (e_a/2, e_b/2), columns are images.
IntMat2 homology_action(const std::vector<FreeWord>& pi14_images);
IntMat2 homology_action(const AutLift& l);
bool projectively_equal(const IntMat2& m, const Mat2& g);

// Point-push automorphisms of pi04.
struct PushLift {
  FreeWord word;  // over pi03
  Automorphism aut;
  // images of b1..b5 in F(a,b) coordinates
  std::vector<FreeWord> pi14_images() const;
  void verify() const;
};

PushLift push_generator(int signed_letter);  // +-1 x, +-2 y
PushLift push_lift(const FreeWord& pi03word);

// The isomorphism P Gamma(2) -> pi03 forced by the homology matrices:
// G1 -> x y^-1 x^-1, G2 -> x.
FreeWord gamma2_to_pi03(const FreeWord& g);
FreeWord pi03_to_gamma2(const FreeWord& w);

// g with U[k] = g V[k] g^-1 for all k, if one exists in F(a,b).
std::optional<FreeWord> common_conjugator(const std::vector<FreeWord>& U, const std::vector<FreeWord>& V);

struct Diagram2Entry {
  Mat2 matrix;
  FreeWord gamma2;
  FreeWord pi03;
  bool agrees = false;
  bool via_tau = false;
  FreeWord witness;  // inner conjugator in pi14, F(a,b) coordinates
};

struct Diagram2Report {
  std::vector<Diagram2Entry> entries;
  bool all_agree = true;
  std::string identification = "G1 -> x y^-1 x^-1, G2 -> x";
};

Diagram2Report verify_diagram2(const std::vector<Mat2>& sample);

}  // namespace tf
