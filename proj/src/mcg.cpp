#include "teichforge/mcg.hpp"

#include <sstream>

namespace tf {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long to_long(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long>::max()) || v < BigInt(std::numeric_limits<long>::min()))
    throw std::overflow_error("exponent does not fit in a machine word");
  return static_cast<long>(v);
}

// k minimizing |a + k m|
BigInt nearest(const BigInt& a, const BigInt& m) {
  BigInt q = floor_div(-a, m);
  BigInt best = q;
  BigInt best_abs = abs(a + q * m);
  for (BigInt k : {BigInt(q + 1), BigInt(q - 1)}) {
    BigInt v = abs(a + k * m);
    if (v < best_abs) best = k, best_abs = v;
  }
  return best;
}

FreeWord pi11(const char* s) { return FreeWord::parse(marks::pi11(), s); }
FreeWord pi04(const char* s) { return FreeWord::parse(marks::pi04(), s); }

Automorphism pi04_aut(const char* x, const char* y, const char* z, const char* xi, const char* yi, const char* zi) {
  return {marks::pi04(), {pi04(x), pi04(y), pi04(z)}, {pi04(xi), pi04(yi), pi04(zi)}};
}

std::vector<FreeWord> basis_images(const Automorphism& psi) {
  std::vector<FreeWord> out;
  for (const auto& b : Atlas::get().basisB_ab) out.push_back(psi.apply(b));
  return out;
}

}  // namespace

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool Mat2::in_gamma2() const {
  return det() == 1 && b % 2 == 0 && c % 2 == 0;
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

Mat2 evaluate(const FreeWord& w) {
  Mat2 g0, g1;
  if (same_alphabet(w.alphabet(), marks::gamma2())) {
    g0 = Mat2::G1(), g1 = Mat2::G2();
  } else if (same_alphabet(w.alphabet(), marks::sl2())) {
    g0 = Mat2::S(), g1 = Mat2::T();
  } else {
    throw WordError("evaluate needs a word over G1,G2 or S,T");
  }
  Mat2 m;
  for (int l : w.letters()) {
    const Mat2& g = (std::abs(l) == 1) ? g0 : g1;
    m = m * (l > 0 ? g : g.inverse());
  }
  return m;
}

SignedWord gamma2_word(const Mat2& m0) {
  if (!m0.in_gamma2()) throw std::invalid_argument("matrix " + m0.str() + " is not in Gamma(2)");
  auto G = marks::gamma2();
  Mat2 m = m0;
  FreeWord prefix(G);
  // max(|a|,|c|) strictly decreases: a stays odd, c stays even
  while (m.c != 0) {
    if (abs(m.a) > abs(m.c)) {
      BigInt k = nearest(m.a, 2 * m.c);
      m = Mat2{m.a + 2 * k * m.c, m.b + 2 * k * m.d, m.c, m.d};
      prefix *= FreeWord::generator(G, 0).pow(-to_long(k));
    } else {
      BigInt k = nearest(m.c, 2 * m.a);
      m = Mat2{m.a, m.b, m.c + 2 * k * m.a, m.d + 2 * k * m.b};
      prefix *= FreeWord::generator(G, 1).pow(-to_long(k));
    }
  }
  int sign = m.a > 0 ? 1 : -1;
  BigInt n = m.a * m.b / 2;
  prefix *= FreeWord::generator(G, 0).pow(to_long(n));
  return {prefix, sign};
}

FreeWord sl2_word(const Mat2& m0) {
  if (m0.det() != 1) throw std::invalid_argument("matrix " + m0.str() + " is not in SL(2,Z)");
  auto A = marks::sl2();
  const FreeWord S = FreeWord::generator(A, 0), T = FreeWord::generator(A, 1);
  Mat2 m = m0;
  FreeWord prefix(A);
  while (m.c != 0) {
    BigInt q = floor_div(m.a, m.c);
    if (q != 0) {
      prefix *= T.pow(to_long(q));
      m = Mat2{m.a - q * m.c, m.b - q * m.d, m.c, m.d};
    }
    prefix *= S;
    m = Mat2{m.c, m.d, -m.a, -m.b};
  }
  if (m.a == 1) return prefix * T.pow(to_long(m.b));
  return prefix * S * S * T.pow(-to_long(m.b));
}

Automorphism lift_of_letter(int l) {
  switch (l) {
    case 1: return {marks::pi11(), {pi11("b"), pi11("A")}, {pi11("B"), pi11("a")}};
    case -1: return {marks::pi11(), {pi11("B"), pi11("a")}, {pi11("b"), pi11("A")}};
    case 2: return {marks::pi11(), {pi11("a"), pi11("ba")}, {pi11("a"), pi11("bA")}};
    case -2: return {marks::pi11(), {pi11("a"), pi11("bA")}, {pi11("a"), pi11("ba")}};
  }
  throw WordError("not an S,T letter");
}

std::array<int, 4> class_permutation(const Automorphism& psi) {
  const Atlas& at = Atlas::get();
  std::array<int, 4> out{};
  for (int k = 0; k < 4; ++k) {
    auto m = at.puncture_class(psi.apply(at.punctures[k].rep_ab));
    if (!m || m->sign != 1) throw AtlasError("automorphism does not preserve the puncture classes");
    out[k] = m->klein;
  }
  return out;
}

AutLift aut_lift(const FreeWord& word) {
  if (!same_alphabet(word.alphabet(), marks::sl2())) throw WordError("aut_lift needs an S,T word");
  const Atlas& at = Atlas::get();
  AutLift l;
  l.matrix = evaluate(word);
  l.aut = Automorphism::identity(marks::pi11());
  for (int c : word.letters()) l.aut = l.aut.after(lift_of_letter(c));
  l.class_perm = class_permutation(l.aut);
  l.correction = FreeWord(marks::pi11());
  l.restricted = l.aut;
  if (l.matrix.b % 2 == 0 && l.matrix.c % 2 == 0) {
    auto m = at.puncture_class(l.aut.apply(pi11("abAB")));
    auto e = m->conjugator.exponent_sums();
    l.correction = klein_rep(klein_index(e[0], e[1]));
    l.restricted = Automorphism::inner(l.correction).after(l.aut);
  }
  l.pi14_images = basis_images(l.restricted);
  for (const auto& v : l.pi14_images) l.basisB_images.push_back(at.rewrite("pi14B<pi11", v));
  return l;
}

AutLift aut_lift(const Mat2& m) { return aut_lift(sl2_word(m)); }

IntMat2 homology_action(const std::vector<FreeWord>& images) {
  const Atlas& at = Atlas::get();
  auto c0 = at.h_coords(images.at(0)), c1 = at.h_coords(images.at(1));
  return {c0[0], c1[0], c0[1], c1[1]};
}

IntMat2 homology_action(const AutLift& l) { return homology_action(l.pi14_images); }

bool projectively_equal(const IntMat2& m, const Mat2& g) {
  Mat2 h{m[0], m[1], m[2], m[3]};
  return h.projectively_equal(g);
}

std::vector<FreeWord> PushLift::pi14_images() const {
  const Atlas& at = Atlas::get();
  std::vector<FreeWord> out;
  for (const auto& b : at.basisB_ab) out.push_back(at.xyz_to_ab(aut.apply(at.ab_to_xyz(b))));
  return out;
}

void PushLift::verify() const {
  const Atlas& at = Atlas::get();
  if (!aut.verify()) throw AtlasError("push lift of " + word.str() + " is not invertible");
  for (int i = 0; i < 3; ++i) {
    FreeWord g = FreeWord::generator(marks::pi04(), i);
    if (!conjugate_in_free(g, aut.apply(g)))
      throw AtlasError("push lift of " + word.str() + " moves the class of " + g.str());
    if (i < 2 && at.forget(aut.apply(g)) != at.forget(g))
      throw AtlasError("push lift of " + word.str() + " is not trivial after forgetting z");
  }
}

PushLift push_generator(int l) {
  // x: drag z around x; y: Pyp pushes around y conjugated back by the x push
  static const Automorphism px = pi04_aut("XZxzx", "y", "Xzx", "zxZ", "y", "zxzXZ");
  static const Automorphism py = pi04_aut("YZyzxZYzy", "YZyzy", "Yzy", "zyZYxyzYZ", "zyZ", "zyzYZ");
  auto A = marks::pi03();
  switch (l) {
    case 1: return {FreeWord::generator(A, 0), px};
    case -1: return {FreeWord::generator(A, 0, -1), px.inverse()};
    case 2: return {FreeWord::generator(A, 1), py};
    case -2: return {FreeWord::generator(A, 1, -1), py.inverse()};
  }
  throw WordError("not an x,y letter");
}

PushLift push_lift(const FreeWord& w) {
  if (!same_alphabet(w.alphabet(), marks::pi03())) throw WordError("push_lift needs a word over pi03");
  PushLift p{w, Automorphism::identity(marks::pi04())};
  for (int l : w.letters()) p.aut = p.aut.after(push_generator(l).aut);
  return p;
}

FreeWord gamma2_to_pi03(const FreeWord& g) {
  auto A = marks::pi03();
  return g.substitute({FreeWord::parse(A, "xYX"), FreeWord::parse(A, "x")});
}

FreeWord pi03_to_gamma2(const FreeWord& w) {
  auto G = marks::gamma2();
  return w.substitute({FreeWord::parse(G, "G2"), FreeWord::parse(G, "g2g1G2")});
}

std::optional<FreeWord> common_conjugator(const std::vector<FreeWord>& U, const std::vector<FreeWord>& V) {
  if (U.size() != V.size() || U.empty()) return std::nullopt;
  auto g0 = conjugate_in_free(V[0], U[0]);
  if (!g0) return std::nullopt;
  auto ok = [&](const FreeWord& g) {
    for (size_t k = 0; k < U.size(); ++k)
      if (V[k].conjugated_by(g) != U[k]) return false;
    return true;
  };
  if (V[0].empty()) return ok(*g0) ? g0 : std::nullopt;
  // the centralizer of V[0] is generated by its primitive root
  FreeWord r = primitive_root(V[0]);
  long bound = 2;
  for (size_t k = 0; k < U.size(); ++k) bound += static_cast<long>(U[k].length() + V[k].length());
  bound = bound / static_cast<long>(r.length()) + 1 + static_cast<long>(g0->length());
  for (long j = 0; j <= bound; ++j) {
    for (long s : {j, -j}) {
      FreeWord g = *g0 * r.pow(s);
      if (ok(g)) return g;
      if (j == 0) break;
    }
  }
  return std::nullopt;
}

Diagram2Report verify_diagram2(const std::vector<Mat2>& sample) {
  const Atlas& at = Atlas::get();
  Diagram2Report rep;
  for (const Mat2& m : sample) {
    Diagram2Entry e;
    e.matrix = m;
    e.gamma2 = gamma2_word(m).word;
    e.pi03 = gamma2_to_pi03(e.gamma2);
    auto U = aut_lift(m).pi14_images;
    auto V = push_lift(e.pi03).pi14_images();
    auto in_pi14 = [](const FreeWord& g) {
      auto s = g.exponent_sums();
      return s[0] % 2 == 0 && s[1] % 2 == 0;
    };
    auto g = common_conjugator(U, V);
    if (g && in_pi14(*g)) {
      e.agrees = true, e.witness = *g;
    } else {
      for (auto& v : V) v = at.tau(v);
      g = common_conjugator(U, V);
      if (g && in_pi14(*g)) e.agrees = true, e.via_tau = true, e.witness = *g;
    }
    rep.all_agree = rep.all_agree && e.agrees;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace tf
