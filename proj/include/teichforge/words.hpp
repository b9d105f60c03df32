#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tf {

struct WordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A named free basis. Letter tokens are a letter optionally followed by
// digits. By default the inverse token flips the case of the first letter.
class Alphabet {
 public:
  Alphabet(std::string name, std::vector<std::string> letters, std::vector<std::string> inverses = {});

  static std::shared_ptr<const Alphabet> make(std::string name, std::vector<std::string> letters,
                                              std::vector<std::string> inverses = {});
  // prefix1, prefix2, ... prefixN
  static std::shared_ptr<const Alphabet> indexed(std::string name, char prefix, int rank);

  const std::string& name() const { return name_; }
  int rank() const { return static_cast<int>(letters_.size()); }
  const std::string& letter(int i) const { return letters_.at(i); }
  const std::string& inverse_token(int i) const { return inverses_.at(i); }
  const std::vector<std::string>& letters() const { return letters_; }
  bool inverses_equal(const Alphabet& o) const { return inverses_ == o.inverses_; }
  // +(i+1) for letter i, -(i+1) for its inverse, 0 if unknown
  int lookup(std::string_view token) const;

 private:
  std::string name_;
  std::vector<std::string> letters_;
  std::vector<std::string> inverses_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

// Freely reduced word. A letter is +(i+1) or -(i+1) for generator i.
class FreeWord {
 public:
  using Letter = int32_t;

  FreeWord() = default;
  explicit FreeWord(AlphabetPtr alphabet) : alpha_(std::move(alphabet)) {}
  FreeWord(AlphabetPtr alphabet, const std::vector<Letter>& letters);

  static FreeWord parse(AlphabetPtr alphabet, std::string_view text);
  static FreeWord generator(AlphabetPtr alphabet, int i, int sign = 1);

  const AlphabetPtr& alphabet() const { return alpha_; }
  const std::vector<Letter>& letters() const { return w_; }
  size_t length() const { return w_.size(); }
  bool empty() const { return w_.empty(); }

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& o) const;
  FreeWord& operator*=(const FreeWord& o);
  FreeWord pow(long k) const;
  // g * this * g^-1
  FreeWord conjugated_by(const FreeWord& g) const;

  FreeWord substitute(const std::vector<FreeWord>& images) const;
  std::vector<long> exponent_sums() const;

  std::string str() const;

  bool operator==(const FreeWord& o) const { return w_ == o.w_; }
  bool operator!=(const FreeWord& o) const { return w_ != o.w_; }
  bool operator<(const FreeWord& o) const { return w_ < o.w_; }

 private:
  void check_same(const FreeWord& o) const;
  AlphabetPtr alpha_;
  std::vector<Letter> w_;
};

// Cyclically reduced core c and prefix p with w = p c p^-1.
struct CyclicSplit {
  FreeWord prefix;
  FreeWord core;
};
CyclicSplit cyclic_split(const FreeWord& w);

// g with v = g u g^-1, if u and v are conjugate.
std::optional<FreeWord> conjugate_in_free(const FreeWord& u, const FreeWord& v);

// Root r with w = r^k, k maximal; identity maps to itself.
FreeWord primitive_root(const FreeWord& w);

// Ambient group C2*C2*C2 = <t,u,v>. Letters are 0,1,2.
using Grade = std::array<int, 3>;

class ReflectionWord {
 public:
  ReflectionWord() = default;
  explicit ReflectionWord(const std::vector<uint8_t>& letters);

  static ReflectionWord parse(std::string_view text);
  static ReflectionWord letter(int i);
  static ReflectionWord s();  // v*u*t

  const std::vector<uint8_t>& letters() const { return w_; }
  size_t length() const { return w_.size(); }
  bool empty() const { return w_.empty(); }

  ReflectionWord inverse() const;
  ReflectionWord operator*(const ReflectionWord& o) const;
  ReflectionWord conjugated_by(const ReflectionWord& g) const;
  Grade grade() const;
  std::string str() const;

  bool operator==(const ReflectionWord& o) const { return w_ == o.w_; }
  bool operator!=(const ReflectionWord& o) const { return w_ != o.w_; }
  bool operator<(const ReflectionWord& o) const { return w_ < o.w_; }

 private:
  std::vector<uint8_t> w_;
};

Grade letter_grade(int letter);
Grade operator+(const Grade& a, const Grade& b);

std::optional<ReflectionWord> conjugate_in_ambient(const ReflectionWord& u, const ReflectionWord& v);

// Substitute ambient words for the letters of a free word.
ReflectionWord to_ambient(const FreeWord& w, const std::vector<ReflectionWord>& images);

// Fixed bases used throughout.
namespace marks {
AlphabetPtr ambient();  // t u v, acting as involutions
AlphabetPtr pi11();     // a b
AlphabetPtr pi04();     // x y z
AlphabetPtr pi03();     // x y (images of x, y after forgetting z)
AlphabetPtr pi14A();    // a1..a5 = x^2 y^2 z^2 xy xz
AlphabetPtr pi14B();    // b1..b5 = a^2 b^2 (ab)^2 (ba)^2 [a,b]
AlphabetPtr gamma2();   // G1 G2, inverses g1 g2
AlphabetPtr sl2();      // S T, inverses s t
AlphabetPtr by_name(const std::string& name);
bool is_ambient(const AlphabetPtr& a);
}  // namespace marks

}  // namespace tf
