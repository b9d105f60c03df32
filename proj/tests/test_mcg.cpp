#include <random>

#include "doctest.h"
#include "teichforge/mcg.hpp"

using namespace tf;

namespace {

Mat2 random_gamma2(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> pick(0, 3);
  Mat2 m;
  for (int i = 0; i < len; ++i) {
    switch (pick(rng)) {
      case 0: m = m * Mat2::G1(); break;
      case 1: m = m * Mat2::G1().inverse(); break;
      case 2: m = m * Mat2::G2(); break;
      default: m = m * Mat2::G2().inverse(); break;
    }
  }
  return m;
}

Mat2 random_sl2(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> pick(0, 3);
  Mat2 m;
  for (int i = 0; i < len; ++i) {
    switch (pick(rng)) {
      case 0: m = m * Mat2::S(); break;
      case 1: m = m * Mat2::S().inverse(); break;
      case 2: m = m * Mat2::T(); break;
      default: m = m * Mat2::T().inverse(); break;
    }
  }
  return m;
}

FreeWord G(const char* s) { return FreeWord::parse(marks::gamma2(), s); }

}  // namespace

TEST_CASE("gamma2 words") {
  auto w = gamma2_word(Mat2{5, 2, 2, 1});
  CHECK(w.word == G("G1G2"));
  CHECK(w.sign == 1);

  auto neg = gamma2_word(-Mat2::identity());
  CHECK(neg.word.empty());
  CHECK(neg.sign == -1);

  CHECK_THROWS(gamma2_word(Mat2::T()));

  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Mat2 m = random_gamma2(rng, 1 + i % 20);
    if (i % 3 == 0) m = -m;
    auto sw = gamma2_word(m);
    Mat2 e = evaluate(sw.word);
    CHECK((sw.sign == 1 ? e : -e) == m);
    // projective normal form: same word for m and -m
    CHECK(gamma2_word(-m).word == sw.word);
  }
}

TEST_CASE("gamma2 words are the reduced free words") {
  // P Gamma(2) is free on G1, G2, so the reduced word is recovered
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> ls;
    for (int k = 0; k < 1 + i % 15; ++k) ls.push_back(std::array<int, 4>{1, -1, 2, -2}[pick(rng)]);
    FreeWord w(marks::gamma2(), ls);
    CHECK(gamma2_word(evaluate(w)).word == w);
  }
}

TEST_CASE("sl2 words are exact") {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    Mat2 m = random_sl2(rng, i % 25);
    CHECK(evaluate(sl2_word(m)) == m);
  }
  CHECK(evaluate(sl2_word(-Mat2::identity())) == -Mat2::identity());
  CHECK_THROWS(sl2_word(Mat2{2, 0, 0, 1}));
}

TEST_CASE("S and T lifts") {
  auto t = aut_lift(Mat2::T());
  CHECK(t.aut.apply(FreeWord::parse(marks::pi11(), "abAB")).str() == "abAB");
  auto s = aut_lift(Mat2::S());
  CHECK(s.aut.images[0].str() == "b");
  CHECK(s.aut.images[1].str() == "A");
  for (const auto& m : {Mat2::S(), Mat2::T(), Mat2::G1(), Mat2::G2(), Mat2{5, 2, 2, 1}}) {
    auto l = aut_lift(m);
    CHECK(l.aut.verify());
    auto e = l.aut.images[0].exponent_sums();
    auto f = l.aut.images[1].exponent_sums();
    CHECK(Mat2{e[0], f[0], e[1], f[1]} == m);
  }
}

TEST_CASE("lifts of Gamma(2) fix every puncture class after correction") {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    Mat2 m = random_gamma2(rng, 1 + i % 8);
    auto l = aut_lift(m);
    auto p = class_permutation(l.restricted);
    for (int k = 0; k < 4; ++k) CHECK(p[k] == k);
    CHECK(projectively_equal(homology_action(l), m));
  }
  auto g1 = aut_lift(Mat2::G1());
  CHECK(g1.correction.empty());
  CHECK(homology_action(g1) == IntMat2{1, 2, 0, 1});
  CHECK(homology_action(aut_lift(Mat2::G2())) == IntMat2{1, 0, 2, 1});
}

TEST_CASE("S permutes the puncture classes") {
  auto p = aut_lift(Mat2::S()).class_perm;
  std::array<bool, 4> seen{};
  for (int k : p) seen[k] = true;
  for (bool s : seen) CHECK(s);
  // [a,b] -> bABa
  CHECK(p[0] == 1);
}

TEST_CASE("push generators") {
  for (int l : {1, -1, 2, -2}) CHECK_NOTHROW(push_generator(l).verify());
  auto A = marks::pi03();
  auto xy = FreeWord::parse(A, "xyXY");
  CHECK_NOTHROW(push_lift(xy).verify());
  auto id = push_lift(FreeWord::parse(A, "xyYX"));
  for (int i = 0; i < 3; ++i) CHECK(id.aut.images[i] == FreeWord::generator(marks::pi04(), i));
  // push(w1 w2) = push(w1) o push(w2)
  auto p = push_lift(FreeWord::parse(A, "xY"));
  auto q = push_generator(1).aut.after(push_generator(-2).aut);
  CHECK(p.aut.images == q.images);
}

TEST_CASE("homology of push lifts") {
  auto A = marks::pi03();
  auto hx = homology_action(push_lift(FreeWord::parse(A, "x")).pi14_images());
  CHECK(hx == IntMat2{1, 0, 2, 1});
  auto hy = homology_action(push_lift(FreeWord::parse(A, "y")).pi14_images());
  CHECK(hy == IntMat2{-3, -2, 8, 5});
  auto hg1 = homology_action(push_lift(gamma2_to_pi03(G("G1"))).pi14_images());
  CHECK(hg1 == IntMat2{1, 2, 0, 1});
}

TEST_CASE("identification of P Gamma(2) with pi03") {
  auto A = marks::pi03();
  for (const char* s : {"x", "y", "xyX", "YYxyxX"}) {
    auto w = FreeWord::parse(A, s);
    CHECK(gamma2_to_pi03(pi03_to_gamma2(w)) == w);
  }
  for (const char* s : {"G1", "G2", "G1g2G1", "g1g1G2"}) CHECK(pi03_to_gamma2(gamma2_to_pi03(G(s))) == G(s));
}

TEST_CASE("common conjugator") {
  auto P = marks::pi11();
  std::vector<FreeWord> V{FreeWord::parse(P, "aa"), FreeWord::parse(P, "bb")};
  auto g = FreeWord::parse(P, "abaaB");
  std::vector<FreeWord> U{V[0].conjugated_by(g), V[1].conjugated_by(g)};
  auto r = common_conjugator(U, V);
  REQUIRE(r);
  CHECK(*r == g);
  U[1] = FreeWord::parse(P, "ab");
  CHECK_FALSE(common_conjugator(U, V));
}

TEST_CASE("diagram of lifts commutes") {
  auto rep = verify_diagram2({Mat2::G1(), Mat2::G2(), Mat2{5, 2, 2, 1}, Mat2{1, 0, -4, 1}});
  CHECK(rep.all_agree);
  for (const auto& e : rep.entries) CHECK_FALSE(e.via_tau);
  CHECK(rep.entries[0].witness.empty());

  std::mt19937 rng(13);
  std::vector<Mat2> sample;
  for (int i = 0; i < 25; ++i) sample.push_back(random_gamma2(rng, 1 + i % 6));
  auto r2 = verify_diagram2(sample);
  CHECK(r2.all_agree);

  auto neg = verify_diagram2({-Mat2::identity(), -Mat2::G2()});
  CHECK(neg.all_agree);
  for (const auto& e : neg.entries) CHECK(e.via_tau);
}
