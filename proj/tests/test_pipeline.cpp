#include <random>

#include "doctest.h"
#include "teichforge/pipeline.hpp"
#include "teichforge/suites.hpp"

using namespace tf;

namespace {

const Atlas& at() { return Atlas::get(); }

CosetAction whole_gamma2() { return CosetAction::whole(marks::gamma2()); }

}  // namespace

TEST_CASE("subgroup class counts") {
  // conjugacy classes of index-n subgroups of a free group of rank 2
  const uint32_t expect[] = {1, 3, 7, 26, 97};
  for (uint32_t n = 1; n <= 5; ++n) CHECK(subgroup_classes(marks::gamma2(), n).size() == expect[n - 1]);
  auto s = delta_sample(12);
  CHECK(s.size() == 12);
  for (uint32_t n = 1; n <= 6; ++n)
    CHECK(std::any_of(s.begin(), s.end(), [n](const CosetAction& c) { return c.degree() == n; }));
}

TEST_CASE("Delta0 is Delta relabelled") {
  CHECK(delta0_from_delta(whole_gamma2()).degree() == 1);
  auto d = index2_delta();
  auto d0 = delta0_from_delta(d);
  CHECK(d0.degree() == 2);
  // h^-1 is the relabelling: a pi03 word lies in Delta0 iff its Gamma(2) word lies in Delta
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> ls;
    for (int k = 0, n = static_cast<int>(rng() % 8); k < n; ++k) ls.push_back(std::array<int, 4>{1, -1, 2, -2}[rng() % 4]);
    FreeWord w(marks::pi03(), ls);
    CHECK(d0.contains(w) == d.contains(pi03_to_gamma2(w)));
  }
  CHECK_THROWS_AS(delta0_from_delta(CosetAction::whole(marks::pi11())), PipelineError);
  CHECK_THROWS_AS(check_delta(CosetAction(marks::gamma2(), {{0, 1}, {0, 1}})), PipelineError);
}

TEST_CASE("pullback chain") {
  auto w = pullback_chain(CosetAction::whole(marks::pi03()));
  CHECK(w.tilde.degree() == 1);
  CHECK(w.bar.contains(FreeWord::parse(marks::pi04(), "z")));
  for (const auto& d : delta_sample(8)) {
    auto c = pullback_chain(delta0_from_delta(d));
    CHECK(c.bar.degree() == d.degree());
    CHECK(c.tilde.degree() == d.degree());
    CHECK(c.bar.contains(FreeWord::parse(marks::pi04(), "z")));
  }
}

TEST_CASE("alpha classes") {
  auto one = alpha_classes(whole_gamma2(), pullback_chain(delta0_from_delta(whole_gamma2())));
  CHECK(one.k == 1);
  CHECK(one.matches_coset_action);

  auto d = index2_delta();
  auto two = alpha_classes(d, pullback_chain(delta0_from_delta(d)));
  CHECK(two.k == 2);
  CHECK(two.matches_coset_action);
  CHECK(two.class_action == d);

  auto six = subgroup_classes(marks::gamma2(), 6);
  for (size_t i : {size_t(0), six.size() / 2, six.size() - 1}) {
    auto ac = alpha_classes(six[i], pullback_chain(delta0_from_delta(six[i])));
    CHECK(ac.k == 6);
    CHECK(ac.matches_coset_action);
  }
}

TEST_CASE("lifts preserve the class of Delta~") {
  for (const auto& d : delta_sample(10, 4)) {
    auto chain = pullback_chain(delta0_from_delta(d));
    for (const auto& w : lift_invariance(chain.tilde)) {
      CHECK(w.conjugate);
      CHECK(at().pi14B_in_pi11.outer.contains(w.eta));
    }
  }
}

TEST_CASE("self-normalizing refinement") {
  // sigma_x = (0 1), sigma_y = (1 2) has trivial centralizer in Sym(3)
  CHECK(self_normalizing(CosetAction(marks::pi03(), {{1, 0, 2}, {0, 2, 1}})));
  CHECK_FALSE(self_normalizing(CosetAction(marks::pi03(), {{1, 0}, {0, 1}})));

  auto d0 = delta0_from_delta(index2_delta());
  auto r = self_normalizing_refine(d0, 1, 10000);
  REQUIRE(r.found);
  CHECK(self_normalizing(r.refined));
  CHECK(r.refined.degree() == d0.degree() * r.cover_degree);
  const SchreierData sd = schreier(r.refined);
  for (const auto& g : sd.basis_words()) CHECK(d0.contains(FreeWord(marks::pi03(), g)));
  CHECK(self_normalizing(pullback_chain(r.refined).tilde));

  auto again = self_normalizing_refine(d0, 1, 10000);
  CHECK(again.refined == r.refined);
  auto skipped = self_normalizing_refine(d0, 1, 10000, 1);
  REQUIRE(skipped.found);
  CHECK_FALSE(skipped.refined == r.refined);
  CHECK_FALSE(self_normalizing_refine(d0, 1, 1).found);
}

TEST_CASE("H detects the three beta classes") {
  auto h = build_H({3, 5, 7});
  const auto& p = at().punctures;
  FreeWord x2 = p[0].rep_ab;
  CHECK(p[0].pi04_name == "x^2");
  CHECK_FALSE(h.contains(x2));
  CHECK(h.contains(x2.pow(3)));
  for (int i = 0; i < 3; ++i) {
    FreeWord b = p[h.detects[i]].rep_ab;
    CHECK_FALSE(h.contains(b));
    CHECK(h.contains(b.pow(h.primes[i])));
  }
  // the four puncture vectors sum to zero, so alpha is detected by every prime
  FreeWord alpha = p[at().alpha_klein].rep_ab;
  CHECK_FALSE(h.contains(alpha));
  CHECK(h.contains(alpha.pow(3 * 5 * 7)));
  CHECK(h.contains(FreeWord(marks::pi11())));
  CHECK_FALSE(h.contains(FreeWord::parse(marks::pi11(), "a")));
  // three codimension-3 conditions
  CHECK(h.index_factors() == std::vector<std::pair<uint32_t, int>>{{3, 3}, {5, 3}, {7, 3}});
}

TEST_CASE("H is preserved by Gamma(2) lifts") {
  auto h = build_H({3, 5, 7});
  for (const auto& m : {Mat2::G1(), Mat2::G2(), Mat2{5, 2, 2, 1}}) {
    AutLift l = aut_lift(m);
    for (int i = 0; i < 3; ++i) {
      const uint32_t q = h.primes[i];
      ModMat mat(5, ModVec(5, 0));
      for (int j = 0; j < 5; ++j) {
        auto v = at().basisB_vector(l.restricted.apply(at().basisB_ab[j]));
        for (int k = 0; k < 5; ++k) mat[k][j] = mod_reduce(v[k], q);
      }
      CHECK(h.hbar[i].image(mat, 5) == h.hbar[i]);
    }
  }
}

TEST_CASE("toy H index matches the materialized pullback") {
  auto h = build_H({2, 3, 1});
  auto l = assemble_lambda(at().pi14B_in_pi11.outer, h, ModSubspace(), true);
  auto m = materialize(l, 10000);
  uint64_t expect = 4;
  for (auto [q, c] : h.index_factors())
    for (int i = 0; i < c; ++i) expect *= q;
  CHECK(m.degree() == expect);
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> ls;
    for (int k = 0, n = static_cast<int>(rng() % 12); k < n; ++k) ls.push_back(std::array<int, 4>{1, -1, 2, -2}[rng() % 4]);
    FreeWord w(marks::pi11(), ls);
    CHECK(m.contains(w) == h.contains(w));
  }
}

TEST_CASE("A subspaces") {
  auto d = index2_delta();
  PipelineConfig cfg;
  auto c = construct(d, cfg);
  LayeredSubgroup shell(c.d, {});
  auto one = build_A(shell, c.refined.tilde, whole_gamma2(), 13);
  REQUIRE(one.size() == 1);
  CHECK(one[0].rank() == 0);

  auto a = build_A(shell, c.refined.tilde, d, 13);
  REQUIRE(a.size() == 2);
  CHECK(pairwise_distinct(a));
  CHECK(a[0].rank() > 0);
  CHECK(a[1].rank() > 0);
}

TEST_CASE("choosing ell") {
  auto d = index2_delta();
  auto c = construct(d, PipelineConfig{});
  LayeredSubgroup shell(c.d, {});
  auto ch = choose_ell(shell, c.refined.tilde, d, {3, 5, 7}, 2, c.guard, 20);
  REQUIRE(coprime_to_all(11, c.guard));
  CHECK(ch.ell == 11);
  CHECK(ch.distinct);
  CHECK(ch.rejected.empty());
  // a normal subgroup has every conjugate intersection index 1
  auto g = guard_indices(at().pi14B_in_pi11.outer);
  CHECK(g == std::vector<uint64_t>{1});
  CHECK(coprime_to_all(2, g));
}

TEST_CASE("construction of the index-2 subgroup") {
  auto d = index2_delta();
  auto c = construct(d, PipelineConfig{});
  CHECK_FALSE(c.toy);
  CHECK_FALSE(c.degenerate);
  CHECK(c.alpha.k == 2);
  CHECK(c.a_distinct);
  for (uint32_t p : c.h.primes) {
    CHECK(p > 2);
    CHECK(coprime_to_all(p, c.guard));
  }
  CHECK(c.ell > 2);
  CHECK(coprime_to_all(c.ell, c.guard));
  CHECK(self_normalizing(c.refined.delta0));
  CHECK(c.lambda.contains(FreeWord(marks::pi11())));
  CHECK_FALSE(c.lambda.contains(FreeWord::parse(marks::pi11(), "a")));
  FreeWord alpha = at().punctures[at().alpha_klein].rep_ab;
  CHECK(c.d.contains(alpha));
  // deterministic in the seed
  auto again = construct(d, PipelineConfig{});
  CHECK(layered_key(again.lambda) == layered_key(c.lambda));
  CHECK(again.checks == c.checks);

  std::mt19937 rng(9);
  int tried = 0, rejected = 0;
  while (tried < 100) {
    std::vector<int> ls;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 12); k < n; ++k) ls.push_back(std::array<int, 4>{1, -1, 2, -2}[rng() % 4]);
    FreeWord w(marks::pi11(), ls);
    if (w.empty()) continue;
    ++tried;
    rejected += !c.lambda.contains(w);
  }
  CHECK(rejected == 100);
}

TEST_CASE("toy constructions") {
  PipelineConfig cfg;
  cfg.toy_primes = std::array<uint32_t, 4>{2, 2, 1, 1};
  cfg.refine = false;
  auto c = construct(index2_delta(), cfg);
  CHECK(c.toy);
  // equal toy primes share one layer
  CHECK(c.lambda.layers().size() == 1);
  cfg.toy_primes = std::array<uint32_t, 4>{1, 1, 1, 1};
  auto bare = construct(index2_delta(), cfg);
  CHECK(bare.lambda.layers().empty());
  CHECK(bare.lambda.materialized_degree() == 8);
}
