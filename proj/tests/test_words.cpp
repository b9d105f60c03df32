#include <random>

#include "doctest.h"
#include "teichforge/coset.hpp"
#include "teichforge/words.hpp"

using namespace tf;

namespace {

FreeWord ab(const char* s) { return FreeWord::parse(marks::pi11(), s); }
ReflectionWord amb(const char* s) { return ReflectionWord::parse(s); }

FreeWord random_free(std::mt19937& rng, const AlphabetPtr& a, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen), let(1, a->rank()), sgn(0, 1);
  std::vector<FreeWord::Letter> ls;
  int n = len(rng);
  for (int i = 0; i < n; ++i) ls.push_back(sgn(rng) ? let(rng) : -let(rng));
  return FreeWord(a, ls);
}

ReflectionWord random_amb(std::mt19937& rng, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen), let(0, 2);
  std::vector<uint8_t> ls;
  int n = len(rng);
  for (int i = 0; i < n; ++i) ls.push_back(static_cast<uint8_t>(let(rng)));
  return ReflectionWord(ls);
}

// conjugacy in pi11 of two ambient words of even length, via a = tv, b = uv
bool conj_in_pi11(const ReflectionWord& x, const ReflectionWord& y) {
  // rewrite by pairs: tv=a uv=b tu=aB vt=A vu=B ut=bA
  auto toab = [](const ReflectionWord& w) {
    static const char* pairs[3][3] = {{"", "aB", "a"}, {"bA", "", "b"}, {"A", "B", ""}};
    std::string s;
    const auto& l = w.letters();
    REQUIRE(l.size() % 2 == 0);
    for (size_t i = 0; i < l.size(); i += 2) s += pairs[l[i]][l[i + 1]];
    return FreeWord::parse(marks::pi11(), s);
  };
  return conjugate_in_free(toab(x), toab(y)).has_value();
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(ab("aA").empty());
  CHECK(ab("abBa") == ab("aa"));
  CHECK(ab("BabA").str() == "BabA");
  CHECK(ab("1").empty());
  CHECK_THROWS_AS(ab("ax"), WordError);
  auto x = FreeWord::parse(marks::pi04(), "x");
  CHECK_THROWS_AS(ab("a") * x, WordError);
}

TEST_CASE("text syntax round trip") {
  std::mt19937 rng(1);
  for (auto a : {marks::pi11(), marks::pi04(), marks::pi14A(), marks::gamma2()}) {
    for (int k = 0; k < 100; ++k) {
      FreeWord w = random_free(rng, a, 12);
      CHECK(FreeWord::parse(a, w.str()) == w);
    }
  }
  CHECK(FreeWord::parse(marks::gamma2(), "G1g2").str() == "G1g2");
  CHECK(FreeWord::parse(marks::pi14A(), "a1A2a5").letters() == std::vector<int>{1, -2, 5});
  for (int k = 0; k < 100; ++k) {
    auto w = random_amb(rng, 15);
    CHECK(ReflectionWord::parse(w.str()) == w);
  }
}

TEST_CASE("reflection words") {
  CHECK(amb("tt").empty());
  CHECK(amb("tuuv") == amb("tv"));
  CHECK(ReflectionWord::s() == amb("vut"));
  // s t u v = 1
  CHECK((ReflectionWord::s() * amb("tuv")).empty());
  CHECK(amb("tuv").inverse() == amb("vut"));
}

TEST_CASE("grade") {
  CHECK(amb("t").grade() == Grade{1, 1, 0});
  CHECK(amb("tv").grade() == Grade{0, 0, 1});
  CHECK(amb("vut").grade() == Grade{1, 0, 0});
  std::mt19937 rng(2);
  for (int k = 0; k < 500; ++k) {
    auto a = random_amb(rng, 10), b = random_amb(rng, 10);
    CHECK((a * b).grade() == a.grade() + b.grade());
  }
}

TEST_CASE("reduction properties") {
  std::mt19937 rng(3);
  for (int k = 0; k < 300; ++k) {
    auto w = random_free(rng, marks::pi04(), 20);
    CHECK((w * w.inverse()).empty());
    CHECK(FreeWord(w.alphabet(), w.letters()) == w);
    auto r = random_amb(rng, 20);
    CHECK((r * r.inverse()).empty());
  }
}

TEST_CASE("substitution") {
  auto a = ab("abAB");
  std::vector<FreeWord> id{ab("a"), ab("b")};
  CHECK(a.substitute(id) == a);
  CHECK(to_ambient(ab("ab"), {amb("tv"), amb("uv")}) == amb("tvuv"));
  // a -> a, b -> ba on [a,b]: a.ba.A.AB reduces to abAB
  CHECK(ab("abAB").substitute({ab("a"), ab("ba")}) == ab("abAB"));
  std::mt19937 rng(4);
  std::vector<FreeWord> imgs{ab("abA"), ab("bba")};
  for (int k = 0; k < 200; ++k) {
    auto u = random_free(rng, marks::pi11(), 8), v = random_free(rng, marks::pi11(), 8);
    CHECK((u * v).substitute(imgs) == u.substitute(imgs) * v.substitute(imgs));
  }
}

TEST_CASE("conjugacy in free groups") {
  auto g = conjugate_in_free(ab("ab"), ab("ba"));
  REQUIRE(g);
  CHECK(ab("ab").conjugated_by(*g) == ab("ba"));
  CHECK_FALSE(conjugate_in_free(ab("ab"), ab("bA")));
  std::mt19937 rng(5);
  for (int k = 0; k < 300; ++k) {
    auto u = random_free(rng, marks::pi11(), 10), c = random_free(rng, marks::pi11(), 10);
    auto v = u.conjugated_by(c);
    auto h = conjugate_in_free(u, v);
    REQUIRE(h);
    CHECK(u.conjugated_by(*h) == v);
  }
  CHECK(primitive_root(ab("bAAB")) == ab("bAB"));
  CHECK(primitive_root(ab("abab")) == ab("ab"));
  CHECK(primitive_root(ab("aa")) == ab("a"));
}

TEST_CASE("conjugacy in the ambient group") {
  std::mt19937 rng(6);
  for (int k = 0; k < 300; ++k) {
    auto u = random_amb(rng, 10), c = random_amb(rng, 10);
    auto v = u.conjugated_by(c);
    auto h = conjugate_in_ambient(u, v);
    REQUIRE(h);
    CHECK(u.conjugated_by(*h) == v);
  }
  CHECK_FALSE(conjugate_in_ambient(amb("t"), amb("u")));
  CHECK_FALSE(conjugate_in_ambient(amb("tu"), amb("tv")));
}

TEST_CASE("the nine conjugation identities over pi11") {
  auto s = ReflectionWord::s(), si = s.inverse();
  auto t = amb("t"), u = amb("u"), v = amb("v");
  auto tv = amb("tv"), uv = amb("uv"), vt = amb("vt"), vu = amb("vu");
  CHECK(si * tv * s == amb("tu") * vt * amb("ut"));
  CHECK(conj_in_pi11(amb("tu") * vt * amb("ut"), vt));
  CHECK(conj_in_pi11(si * uv * s, vu));
  CHECK(t * tv * t == vt);
  CHECK(conj_in_pi11(t * uv * t, vu));
  CHECK(conj_in_pi11(u * tv * u, vt));
  CHECK(u * uv * u == vu);
  CHECK(v * tv * v == vt);
  CHECK(v * uv * v == vu);
}
