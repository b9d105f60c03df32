#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "teichforge/coset.hpp"

namespace tf {

struct AtlasError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Klein index of a puncture class of pi14: (e_a mod 2) + 2 (e_b mod 2) of a
// conjugator r with element r [a,b] r^-1.
struct PunctureClass {
  std::string name;        // alpha, beta1, beta2, beta3
  std::string pi04_name;   // z^2, x^2, y^2, w^2
  int klein = 0;
  FreeWord rep_ab;         // representative in F(a,b)
  FreeWord rep_A;          // in basis A
  FreeWord rep_B;          // in basis B
  ReflectionWord rep_ambient;
};

struct PunctureMatch {
  int klein;
  int sign;           // +1 conjugate to [a,b], -1 to its inverse
  FreeWord conjugator;  // r with w = r [a,b]^sign r^-1
};

class Atlas {
 public:
  // Builds all tables and runs every consistency check; throws AtlasError
  // naming the identity that failed.
  static const Atlas& get();

  // ambient words of the marked bases
  ReflectionWord a, b;
  ReflectionWord x, y, z, w;  // w = (zxy)^-1 closes the four-puncture relation
  std::vector<ReflectionWord> basisA_ambient, basisB_ambient;
  std::vector<FreeWord> basisA_xyz;  // a1..a5 over pi04
  std::vector<FreeWord> basisB_ab;   // b1..b5 over pi11

  Inclusion pi11_in_G, pi04_in_G, pi14A_in_pi04, pi14B_in_pi11;
  CosetAction ker_phi;  // ambient action on ker(phi) cosets, labelled by grade

  std::array<PunctureClass, 4> punctures;  // indexed by Klein index
  int alpha_klein = 2;                    // z^2

  ReflectionWord ambient_of(const FreeWord& w) const;  // pi11, pi04, pi14A or pi14B
  FreeWord to_ab(const ReflectionWord& w) const;       // needs grade (0,*,*)
  FreeWord to_xyz(const ReflectionWord& w) const;      // needs grade (*,0,0)
  FreeWord ab_to_xyz(const FreeWord& w) const;
  FreeWord xyz_to_ab(const FreeWord& w) const;
  FreeWord to_basisA(const ReflectionWord& w) const;
  FreeWord to_basisB(const ReflectionWord& w) const;
  FreeWord A_to_B(const FreeWord& w) const;
  FreeWord B_to_A(const FreeWord& w) const;
  FreeWord forget(const FreeWord& xyz) const;  // pi04 -> pi03, z -> 1

  std::optional<PunctureMatch> puncture_class(const FreeWord& ab) const;
  // g -> z g z^-1 on pi14, in F(a,b) coordinates
  FreeWord tau(const FreeWord& ab) const;
  // (e_a/2, e_b/2): coordinates in the rank-2 quotient by puncture classes
  std::array<long, 2> h_coords(const FreeWord& ab) const;
  // exponent vector in basis B
  std::vector<long> basisB_vector(const FreeWord& ab) const;

  const Inclusion& inclusion(const std::string& name) const;
  FreeWord rewrite(const std::string& inclusion, const ReflectionWord& w) const;
  FreeWord rewrite(const std::string& inclusion, const FreeWord& w) const;

  // identities checked at build time, in order
  std::vector<std::string> checks;

 private:
  Atlas();
};

// Index within the ambient Klein-labelled transversal {1, a, b, ab}.
inline int klein_index(long ea, long eb) { return static_cast<int>(((ea % 2 + 2) % 2) + 2 * ((eb % 2 + 2) % 2)); }
FreeWord klein_rep(int k);

}  // namespace tf
