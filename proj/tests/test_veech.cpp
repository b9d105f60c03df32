#include <random>

#include "doctest.h"
#include "teichforge/pipeline.hpp"
#include "teichforge/suites.hpp"

using namespace tf;

namespace {

FreeWord ab(const char* s) { return FreeWord::parse(marks::pi11(), s); }

FreeWord random_ab(std::mt19937& rng, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen), pick(0, 3);
  std::vector<int> ls;
  for (int i = 0, n = len(rng); i < n; ++i) ls.push_back(std::array<int, 4>{1, -1, 2, -2}[pick(rng)]);
  return FreeWord(marks::pi11(), ls);
}

// product of a random number of Schreier generators of the layered table
FreeWord random_member_of_d(std::mt19937& rng, const LayeredSubgroup& l) {
  const auto& b = l.schreier_data().basis_words();
  FreeWord w(marks::pi11());
  for (int i = 0, n = 1 + static_cast<int>(rng() % 10); i < n; ++i) {
    FreeWord x(marks::pi11(), b[rng() % b.size()]);
    w = w * (rng() % 2 ? x : x.inverse());
  }
  return w;
}

Mat2 random_sl2(std::mt19937& rng, int len) {
  static const Mat2 g[4] = {Mat2::S(), Mat2::S().inverse(), Mat2::T(), Mat2::T().inverse()};
  Mat2 m;
  for (int i = 0; i < len; ++i) m = m * g[rng() % 4];
  return m;
}

LayeredSubgroup toy_lambda(std::array<uint32_t, 4> primes, bool refine = false) {
  PipelineConfig cfg;
  cfg.toy_primes = primes;
  cfg.refine = refine;
  return construct(index2_delta(), cfg).lambda;
}

}  // namespace

TEST_CASE("layered subgroup without layers is its table") {
  const auto& t = Atlas::get().pi14B_in_pi11.outer;
  LayeredSubgroup l(t, {});
  CHECK(layered_key(l).table == class_key(t));
  CHECK(layered_key(l).layers.empty());
  CHECK(l.index_string() == "4");
  CHECK(l.rank() == 5);
  CHECK(materialize(l, 10) == rebase(t, 0));
}

TEST_CASE("layer validation") {
  const auto& t = Atlas::get().pi14B_in_pi11.outer;
  CHECK_THROWS(LayeredSubgroup(t, {ModSubspace(3, 4)}));
  CHECK_THROWS(LayeredSubgroup(t, {ModSubspace(3, 5), ModSubspace::whole(3, 5)}));
  CHECK_THROWS(LayeredSubgroup(CosetAction::whole(marks::pi03()), {}));
}

TEST_CASE("materialized table agrees with layered membership") {
  auto l = toy_lambda({1, 1, 1, 2});
  CHECK(l.materialized_degree() == 2048);
  auto m = materialize(l, 10000);
  CHECK(m.degree() == 2048);
  CHECK_THROWS(materialize(l, 1000));
  std::mt19937 rng(2);
  int members = 0;
  for (int i = 0; i < 1000; ++i) {
    FreeWord w = i % 2 ? random_ab(rng, 14) : random_member_of_d(rng, l);
    members += l.contains(w);
    CHECK(m.contains(w) == l.contains(w));
  }
  CHECK(members > 0);
}

TEST_CASE("rebase relabels even at the basepoint") {
  const auto& d = Atlas::get().pi14B_in_pi11.outer;
  // reverse the labels of points 1..n-1
  const uint32_t n = d.degree();
  auto sigma = [n](uint32_t p) { return p == 0 ? 0 : n - p; };
  std::vector<Perm> perms(2, Perm(n));
  for (int k = 0; k < 2; ++k)
    for (uint32_t p = 0; p < n; ++p) perms[k][sigma(p)] = sigma(d.perm(k)[p]);
  CosetAction shuffled(marks::pi11(), perms);
  REQUIRE_FALSE(shuffled == rebase(shuffled, 0));
  LayeredSubgroup x(shuffled, {ModSubspace::span(2, 5, {{1, 0, 0, 0, 0}})});
  auto y = rebase(x, 0);
  CHECK(y.table() == rebase(shuffled, 0));
  CHECK(layered_key(x) == layered_key(y));
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    FreeWord w = random_member_of_d(rng, x);
    CHECK(x.contains(w) == y.contains(w));
  }
}

TEST_CASE("key is a class invariant") {
  auto l = toy_lambda({1, 1, 1, 2});
  const auto k = layered_key(l);
  std::mt19937 rng(4);
  for (int i = 0; i < 20; ++i) {
    FreeWord g = random_ab(rng, 8);
    CHECK(layered_key(transport(l, Automorphism::inner(g))) == k);
  }
  for (uint32_t p = 0; p < l.table().degree(); ++p) CHECK(layered_key(rebase(l, p)) == k);
  CHECK(layered_equal(l, transport(l, Automorphism::inner(ab("abA")))));
}

TEST_CASE("transport is functorial") {
  auto l = toy_lambda({2, 1, 1, 1});
  std::mt19937 rng(6);
  for (int i = 0; i < 10; ++i) {
    Mat2 m1 = random_sl2(rng, 1 + i % 5), m2 = random_sl2(rng, 1 + i % 4);
    auto p1 = aut_lift(m1).aut, p2 = aut_lift(m2).aut;
    auto twice = transport(transport(l, p2), p1);
    auto once = transport(l, p1.after(p2));
    CHECK(layered_equal(twice, once));
  }
}

TEST_CASE("transport agrees with the materialized image") {
  auto l = toy_lambda({1, 1, 1, 2});
  auto m = materialize(l, 10000);
  std::mt19937 rng(8);
  for (int letter : {1, -1, 2, -2}) {
    auto psi = lift_of_letter(letter);
    auto tl = transport(l, psi);
    auto tm = image_under_automorphism(m, psi);
    CHECK(class_key(materialize(tl, 10000)) == class_key(tm));
    for (int i = 0; i < 200; ++i) {
      FreeWord w = random_member_of_d(rng, tl);
      CHECK(tl.contains(w) == tm.contains(w));
    }
  }
}

TEST_CASE("characteristic layers are fixed by every lift") {
  // pi14 with an H-layer: both characteristic in F(a,b) only up to the
  // puncture permutation, so use the bare table and the full mod-3 layer
  const auto& t = Atlas::get().pi14B_in_pi11.outer;
  LayeredSubgroup l(t, {ModSubspace(3, 5)});
  const auto k = layered_key(l);
  std::mt19937 rng(10);
  for (int i = 0; i < 20; ++i) {
    Mat2 m = random_sl2(rng, 1 + i % 9);
    CHECK(layered_key(theta_image(l, m).image) == k);
  }
}

TEST_CASE("theta image records the puncture permutation") {
  const auto& t = Atlas::get().pi14B_in_pi11.outer;
  LayeredSubgroup l(t, {});
  auto id = theta_image(l, Mat2::identity(), {0, 3, 1});
  CHECK(id.signature == std::vector<int>{0, 3, 1});
  auto g = theta_image(l, Mat2::G1(), {0, 3, 1});
  CHECK(g.signature == std::vector<int>{0, 3, 1});
  auto s = theta_image(l, Mat2::S(), {0, 3, 1});
  CHECK(s.signature != std::vector<int>{0, 3, 1});
}

TEST_CASE("orbits of trivial and characteristic subgroups") {
  auto whole = veech_of_table(CosetAction::whole(marks::pi11()));
  CHECK(whole.orbit_size == 1);
  CHECK(whole.minus_identity);
  auto pi14 = stabilizer(LayeredSubgroup(Atlas::get().pi14B_in_pi11.outer, {}));
  CHECK(pi14.orbit_size == 1);
  // the three index-2 subgroups form one orbit
  auto two = veech_of_table(CosetAction(marks::pi11(), {{1, 0}, {0, 1}}));
  CHECK(two.orbit_size == 3);
  CHECK(two.projective_orbit_size == 3);
}

TEST_CASE("stabilizer generators stabilize") {
  auto l = toy_lambda({2, 1, 1, 1});
  auto r = stabilizer(l);
  const auto k = layered_key(l);
  for (const auto& m : r.generators) CHECK(layered_key(transport(l, aut_lift(m).aut)) == k);
  // orbit closure
  auto o = layered_orbit(l);
  for (uint32_t p = 0; p < o.action.degree(); ++p)
    for (int i = 1; i <= 2; ++i) CHECK(o.action.act(p, i) < o.action.degree());
}

TEST_CASE("toy cross-validation") {
  auto cv = cross_validate(toy_lambda({2, 1, 1, 1}), 10000);
  CHECK(cv.pass());
  CHECK(cv.layered_orbit == cv.table_orbit);
  CHECK(cv.pairs == 3 * cv.layered_orbit * cv.layered_orbit);
}

TEST_CASE("theorem holds for the index-2 subgroup") {
  auto delta = index2_delta();
  auto c = construct(delta, PipelineConfig{});
  auto r = stabilizer(c.lambda);
  CHECK(r.projective_orbit_size == 12);
  CHECK(r.minus_identity);
  auto rep = verify_theorem(r, delta, c.lambda);
  CHECK(rep.pass);
  CHECK_FALSE(rep.degenerate);
  for (const auto& g : r.generators) CHECK(g.in_gamma2());
}

TEST_CASE("dropping the A layer enlarges the stabilizer") {
  auto delta = index2_delta();
  auto c = construct(delta, PipelineConfig{});
  std::vector<ModSubspace> h_only;
  for (const auto& u : c.lambda.layers())
    if (u.prime() != c.ell) h_only.push_back(u);
  LayeredSubgroup weak(c.lambda.table(), h_only);
  auto r = stabilizer(weak);
  auto rep = verify_theorem(r, delta, weak);
  CHECK_FALSE(rep.pass);
  CHECK(r.projective_orbit_size == 6);
}

TEST_CASE("theorem for Gamma(2) itself is degenerate") {
  auto delta = CosetAction::whole(marks::gamma2());
  auto c = construct(delta, PipelineConfig{});
  CHECK(c.degenerate);
  auto rep = verify_theorem(stabilizer(c.lambda), delta, c.lambda);
  CHECK(rep.degenerate);
  CHECK(rep.pass);
}

TEST_CASE("origami invariants") {
  auto o = origami_export(Atlas::get().pi14B_in_pi11.outer, 100);
  CHECK(o.degree() == 4);
  CHECK(o.punctures() == 4);
  CHECK(o.genus() == 1);
  CHECK(o.puncture_orders() == std::vector<uint32_t>{1, 1, 1, 1});
  CHECK_THROWS(origami_export(Atlas::get().pi14B_in_pi11.outer, 3));

  Origami d2 = Origami::parse_text("2\n1 0\n0 1\n");
  CHECK(d2.punctures() == 2);
  CHECK(d2.genus() == 1);
  auto v1 = veech_of_origami(d2), v2 = veech_of_origami(d2);
  CHECK(v1.orbit_action == v2.orbit_action);
  CHECK(v1.orbit_size == 3);
  CHECK(Origami::parse_text(d2.text()).table == d2.table);

  // 3 squares in an L: one puncture of angle 6 pi
  Origami l3 = Origami::parse_text("3\n1 0 2\n2 1 0\n");
  CHECK(l3.punctures() + 2 * l3.genus() == 2 + 3);

  CHECK(veech_of_origami(Origami{CosetAction::whole(marks::pi11())}).orbit_size == 1);
  CHECK_THROWS(Origami::parse_text("2\n0 1\n0 1\n"));
  CHECK_THROWS(Origami::parse_text("2\n1 0\n0 2\n"));
  CHECK_THROWS(Origami::parse_text("2\n1 0\n0 1\n7"));
}

TEST_CASE("Nielsen-Schreier rank") {
  for (uint32_t n = 1; n <= 4; ++n)
    for (const auto& c : subgroup_classes(marks::pi11(), n)) {
      CHECK(rank(c) == 1 + n);
      CHECK(schreier(c).rank() == 1 + n);
    }
}
