#include "teichforge/atlas.hpp"

namespace tf {

namespace {

ReflectionWord R(const char* s) { return ReflectionWord::parse(s); }
FreeWord W(const AlphabetPtr& a, const char* s) { return FreeWord::parse(a, s); }

Seq rseq(const char* s) { return seq_of(R(s)); }

// action of a marked group on (Z/2)^k labelled by an integer code
CosetAction xor_action(const AlphabetPtr& mark, const std::vector<uint32_t>& codes, uint32_t n) {
  std::vector<Perm> perms;
  for (uint32_t c : codes) {
    Perm p(n);
    for (uint32_t i = 0; i < n; ++i) p[i] = i ^ c;
    perms.push_back(p);
  }
  return CosetAction(mark, perms);
}

std::vector<std::vector<FreeWord>> edges(const AlphabetPtr& inner, const std::vector<std::vector<const char*>>& seeds) {
  std::vector<std::vector<FreeWord>> e;
  for (const auto& row : seeds) {
    e.emplace_back();
    for (const char* s : row) e.back().push_back(W(inner, s));
  }
  return e;
}

void require(bool ok, const std::string& what, std::vector<std::string>& log) {
  if (!ok) throw AtlasError("atlas check failed: " + what);
  log.push_back(what);
}

}  // namespace

FreeWord klein_rep(int k) {
  static const char* reps[4] = {"1", "a", "b", "ab"};
  return W(marks::pi11(), reps[k & 3]);
}

const Atlas& Atlas::get() {
  static const Atlas atlas;
  return atlas;
}

Atlas::Atlas() {
  const auto amb = marks::ambient();
  a = R("tv");
  b = R("uv");
  z = ReflectionWord::s();
  x = z.conjugated_by(R("t"));
  y = z.conjugated_by(R("u"));
  w = (z * x * y).inverse();

  basisA_xyz = {W(marks::pi04(), "xx"), W(marks::pi04(), "yy"), W(marks::pi04(), "zz"), W(marks::pi04(), "xy"),
                W(marks::pi04(), "xz")};
  basisB_ab = {W(marks::pi11(), "aa"), W(marks::pi11(), "bb"), W(marks::pi11(), "abab"), W(marks::pi11(), "baba"),
               W(marks::pi11(), "abAB")};
  for (const auto& v : basisA_xyz) basisA_ambient.push_back(to_ambient(v, {x, y, z}));
  for (const auto& v : basisB_ab) basisB_ambient.push_back(to_ambient(v, {a, b}));

  // pi11 = phi^-1(0 x * x *): two cosets by the first grade coordinate
  pi11_in_G.name = "pi11<G";
  pi11_in_G.outer = xor_action(amb, {1, 1, 1}, 2);
  pi11_in_G.inner = marks::pi11();
  pi11_in_G.transversal = {{}, rseq("t")};
  pi11_in_G.edge = edges(marks::pi11(), {{"1", "bA", "A"}, {"1", "aB", "a"}});
  pi11_in_G.basis = {seq_of(a), seq_of(b)};

  // pi04 = phi^-1(* x 0 x 0): cosets labelled c2 + 2 c3
  pi04_in_G.name = "pi04<G";
  pi04_in_G.outer = xor_action(amb, {1, 2, 3}, 4);
  pi04_in_G.inner = marks::pi04();
  pi04_in_G.transversal = {{}, rseq("t"), rseq("u"), rseq("v")};
  pi04_in_G.edge = edges(marks::pi04(), {{"1", "1", "1"}, {"1", "Z", "x"}, {"YXZ", "1", "X"}, {"zxy", "z", "1"}});
  pi04_in_G.basis = {seq_of(x), seq_of(y), seq_of(z)};

  pi14A_in_pi04.name = "pi14A<pi04";
  pi14A_in_pi04.outer = xor_action(marks::pi04(), {1, 1, 1}, 2);
  pi14A_in_pi04.inner = marks::pi14A();
  pi14A_in_pi04.transversal = {{}, {1}};
  pi14A_in_pi04.edge = edges(marks::pi14A(), {{"1", "a2A4", "a3A5"}, {"a1", "a4", "a5"}});
  for (const auto& v : basisA_xyz) pi14A_in_pi04.basis.push_back(seq_of(v));

  // cosets of pi14 in pi11 by mod-2 homology, labelled e_a + 2 e_b
  pi14B_in_pi11.name = "pi14B<pi11";
  pi14B_in_pi11.outer = xor_action(marks::pi11(), {1, 2}, 4);
  pi14B_in_pi11.inner = marks::pi14B();
  pi14B_in_pi11.transversal = {{}, {1}, {2}, {1, 2}};
  pi14B_in_pi11.edge = edges(marks::pi14B(), {{"1", "1"}, {"b1", "1"}, {"B5", "b2"}, {"b3B2", "b5b4B1"}});
  for (const auto& v : basisB_ab) pi14B_in_pi11.basis.push_back(seq_of(v));

  ker_phi = xor_action(amb, {3, 5, 7}, 8);

  auto& log = checks;
  require(z.grade() == Grade{1, 0, 0} && x.grade() == Grade{1, 0, 0} && y.grade() == Grade{1, 0, 0},
          "x, y, z have grade (1,0,0)", log);
  require(a.grade()[0] == 0 && b.grade()[0] == 0, "a = tv and b = uv have first grade 0", log);
  for (const Inclusion* inc : {&pi11_in_G, &pi04_in_G, &pi14A_in_pi04, &pi14B_in_pi11}) {
    inc->verify();
    log.push_back(inc->name + " rewriting table verified");
  }

  auto f11 = fold(std::vector<ReflectionWord>{a, b});
  require(f11.complete && canonical_form(f11.action) == canonical_form(pi11_in_G.outer),
          "<tv, uv> = phi^-1(0 x * x *), index 2", log);
  auto f04 = fold(std::vector<ReflectionWord>{x, y, z});
  require(f04.complete && canonical_form(f04.action) == canonical_form(pi04_in_G.outer),
          "<x, y, z> = phi^-1(* x 0 x 0), index 4", log);
  // a generating set of size 1 + index/2 of a subgroup of C2*C2*C2 is a free basis
  require(pi11_in_G.basis.size() == 1 + index(pi11_in_G.outer) / 2, "pi11 basis has Euler-characteristic rank 2", log);
  require(pi04_in_G.basis.size() == 1 + index(pi04_in_G.outer) / 2, "pi04 basis has Euler-characteristic rank 3", log);

  auto fA = fold(basisA_ambient), fB = fold(basisB_ambient);
  require(fA.complete && canonical_form(fA.action) == canonical_form(ker_phi), "<x^2,y^2,z^2,xy,xz> = ker phi", log);
  require(fB.complete && canonical_form(fB.action) == canonical_form(ker_phi), "<a^2,b^2,(ab)^2,(ba)^2,[a,b]> = ker phi",
          log);
  require(index(ker_phi) == 8 && index(pi14A_in_pi04.outer) == 2 && index(pi14B_in_pi11.outer) == 4,
          "indices 8, 2, 4", log);
  require(rank(pi14A_in_pi04.outer) == 5 && rank(pi14B_in_pi11.outer) == 5, "both pi14 bases have rank 5", log);
  require((z * x * y * w).empty() && w == R("utv"), "z x y w = 1 with w = utv", log);

  const char* names[4] = {"beta1", "beta3", "alpha", "beta2"};
  const char* pnames[4] = {"x^2", "w^2", "z^2", "y^2"};
  const ReflectionWord* preps[4] = {&x, &w, &z, &y};
  for (int k = 0; k < 4; ++k) {
    PunctureClass& pc = punctures[k];
    pc.name = names[k];
    pc.pi04_name = pnames[k];
    pc.klein = k;
    pc.rep_ambient = *preps[k] * *preps[k];
    pc.rep_ab = to_ab(pc.rep_ambient);
    pc.rep_A = to_basisA(pc.rep_ambient);
    pc.rep_B = to_basisB(pc.rep_ambient);
    auto m = puncture_class(pc.rep_ab);
    require(m && m->klein == k && m->sign == 1, std::string(pnames[k]) + " lies in Klein class " + std::to_string(k),
            log);
  }
  require(punctures[alpha_klein].name == "alpha", "alpha is the class of z^2", log);

  for (int k = 0; k < 4; ++k) {
    bool ok = true;
    for (int c = 0; c < 4; ++c) {
      auto m = puncture_class(punctures[c].rep_ab.conjugated_by(klein_rep(k)));
      ok = ok && m && m->klein == (c ^ k);
    }
    require(ok, "conjugation by " + klein_rep(k).str() + " translates puncture classes by " + std::to_string(k), log);
  }

  bool tau_ok = true;
  for (const auto& g : basisB_ab) {
    FreeWord t2 = tau(tau(g));
    FreeWord z2 = to_ab(z * z);
    tau_ok = tau_ok && t2 == g.conjugated_by(z2) && ambient_of(tau(g)).grade() == Grade{0, 0, 0};
  }
  require(tau_ok, "tau preserves pi14 and tau^2 is conjugation by z^2", log);
  for (int k = 0; k < 4; ++k) {
    auto m = puncture_class(tau(punctures[k].rep_ab));
    require(m && m->klein == k, "tau fixes puncture class " + punctures[k].name, log);
  }
  auto ha = h_coords(tau(basisB_ab[0])), hb = h_coords(tau(basisB_ab[1]));
  require(ha == std::array<long, 2>{-1, 0} && hb == std::array<long, 2>{0, -1}, "tau acts as -1 on H (not inner)", log);
}

ReflectionWord Atlas::ambient_of(const FreeWord& v) const {
  const auto& al = v.alphabet();
  if (same_alphabet(al, marks::pi11())) return to_ambient(v, {a, b});
  if (same_alphabet(al, marks::pi04())) return to_ambient(v, {x, y, z});
  if (same_alphabet(al, marks::pi14A())) return to_ambient(v, basisA_ambient);
  if (same_alphabet(al, marks::pi14B())) return to_ambient(v, basisB_ambient);
  throw AtlasError("no ambient image for basis " + al->name());
}

FreeWord Atlas::to_ab(const ReflectionWord& v) const { return pi11_in_G.express(v); }
FreeWord Atlas::to_xyz(const ReflectionWord& v) const { return pi04_in_G.express(v); }
FreeWord Atlas::ab_to_xyz(const FreeWord& v) const { return to_xyz(ambient_of(v)); }
FreeWord Atlas::xyz_to_ab(const FreeWord& v) const { return to_ab(ambient_of(v)); }
FreeWord Atlas::to_basisA(const ReflectionWord& v) const { return pi14A_in_pi04.express(to_xyz(v)); }
FreeWord Atlas::to_basisB(const ReflectionWord& v) const { return pi14B_in_pi11.express(to_ab(v)); }
FreeWord Atlas::A_to_B(const FreeWord& v) const { return to_basisB(ambient_of(v)); }
FreeWord Atlas::B_to_A(const FreeWord& v) const { return to_basisA(ambient_of(v)); }

FreeWord Atlas::forget(const FreeWord& xyz) const {
  static const std::vector<FreeWord> imgs{W(marks::pi03(), "x"), W(marks::pi03(), "y"), W(marks::pi03(), "1")};
  if (!same_alphabet(xyz.alphabet(), marks::pi04())) throw AtlasError("forget map applies to pi04 words");
  return xyz.substitute(imgs);
}

std::optional<PunctureMatch> Atlas::puncture_class(const FreeWord& v) const {
  static const FreeWord comm = W(marks::pi11(), "abAB");
  for (int sign : {1, -1}) {
    auto g = conjugate_in_free(sign > 0 ? comm : comm.inverse(), v);
    if (g) {
      auto e = g->exponent_sums();
      return PunctureMatch{klein_index(e[0], e[1]), sign, *g};
    }
  }
  return std::nullopt;
}

FreeWord Atlas::tau(const FreeWord& v) const { return to_ab(ambient_of(v).conjugated_by(z)); }

std::array<long, 2> Atlas::h_coords(const FreeWord& v) const {
  auto e = v.exponent_sums();
  if (e[0] % 2 || e[1] % 2) throw AtlasError("h_coords of a word outside pi14");
  return {e[0] / 2, e[1] / 2};
}

std::vector<long> Atlas::basisB_vector(const FreeWord& v) const {
  return pi14B_in_pi11.express(v).exponent_sums();
}

const Inclusion& Atlas::inclusion(const std::string& name) const {
  for (const Inclusion* inc : {&pi11_in_G, &pi04_in_G, &pi14A_in_pi04, &pi14B_in_pi11})
    if (inc->name == name) return *inc;
  throw AtlasError("unknown inclusion " + name);
}

FreeWord Atlas::rewrite(const std::string& name, const ReflectionWord& v) const { return inclusion(name).express(v); }
FreeWord Atlas::rewrite(const std::string& name, const FreeWord& v) const { return inclusion(name).express(v); }

}  // namespace tf
