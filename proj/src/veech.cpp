#include "teichforge/veech.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tf {

namespace {

FreeWord ab_word(const Seq& s) { return FreeWord(marks::pi11(), s); }

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) return std::numeric_limits<uint64_t>::max();
  return a * b;
}

// columns: exponent vectors (in `target`) of the images of the source basis
std::vector<std::vector<long>> image_columns(const LayeredSubgroup& target, const std::vector<FreeWord>& images) {
  std::vector<std::vector<long>> cols;
  cols.reserve(images.size());
  for (const auto& w : images) cols.push_back(target.exponents(w));
  return cols;
}

std::vector<ModSubspace> push_layers(const std::vector<ModSubspace>& layers,
                                     const std::vector<std::vector<long>>& cols, int target_rank) {
  std::vector<ModSubspace> out;
  for (const auto& u : layers) {
    const uint32_t q = u.prime();
    ModMat m(target_rank, ModVec(cols.size(), 0));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < target_rank; ++i) m[i][j] = mod_reduce(cols[j][i], q);
    out.push_back(u.image(m, target_rank));
  }
  return out;
}

}  // namespace

ModVec reduce_mod(const std::vector<long>& v, uint32_t q) {
  ModVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = mod_reduce(v[i], q);
  return r;
}

LayeredSubgroup::LayeredSubgroup(CosetAction d, std::vector<ModSubspace> layers)
    : d_(std::move(d)), layers_(std::move(layers)) {
  if (!same_alphabet(d_.mark(), marks::pi11())) throw SubgroupError("layered subgroup needs a table over a,b");
  sd_ = std::make_shared<const SchreierData>(schreier(d_));
  std::sort(layers_.begin(), layers_.end(),
            [](const ModSubspace& x, const ModSubspace& y) { return x.prime() < y.prime(); });
  for (size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].dim() != static_cast<int>(sd_->rank())) throw SubgroupError("layer dimension differs from rank(D)");
    if (i > 0 && layers_[i].prime() == layers_[i - 1].prime()) throw SubgroupError("two layers share a prime");
  }
}

const ModSubspace* LayeredSubgroup::layer(uint32_t q) const {
  for (const auto& u : layers_)
    if (u.prime() == q) return &u;
  return nullptr;
}

std::vector<long> LayeredSubgroup::exponents(const FreeWord& member) const {
  FreeWord e = express_in_basis(*sd_, member);
  std::vector<long> v(sd_->rank(), 0);
  for (auto l : e.letters()) v[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return v;
}

bool LayeredSubgroup::contains(const FreeWord& w) const {
  if (!d_.contains(w)) return false;
  auto e = exponents(w);
  for (const auto& u : layers_)
    if (!u.contains(reduce_mod(e, u.prime()))) return false;
  return true;
}

std::vector<std::pair<uint32_t, int>> LayeredSubgroup::index_factors() const {
  std::vector<std::pair<uint32_t, int>> f;
  for (const auto& u : layers_)
    if (u.codim() > 0) f.emplace_back(u.prime(), u.codim());
  return f;
}

std::string LayeredSubgroup::index_string() const {
  std::ostringstream os;
  os << d_.degree();
  for (auto [q, c] : index_factors()) os << " * " << q << "^" << c;
  return os.str();
}

uint64_t LayeredSubgroup::materialized_degree() const {
  uint64_t n = d_.degree();
  for (auto [q, c] : index_factors())
    for (int i = 0; i < c; ++i) n = sat_mul(n, q);
  return n;
}

LayeredSubgroup transport(const LayeredSubgroup& l, const Automorphism& psi) {
  if (!same_alphabet(psi.alphabet, marks::pi11())) throw SubgroupError("transport needs an automorphism of F(a,b)");
  LayeredSubgroup shell(image_under_automorphism(l.table(), psi), {});
  std::vector<FreeWord> images;
  for (const auto& b : l.schreier_data().basis_words()) images.push_back(psi.apply(ab_word(b)));
  auto cols = image_columns(shell, images);
  return LayeredSubgroup(shell.table(), push_layers(l.layers(), cols, static_cast<int>(shell.rank())));
}

LayeredSubgroup rebase(const LayeredSubgroup& l, uint32_t base) {
  FreeWord g = ab_word(transversal(l.table())[base]);
  LayeredSubgroup shell(rebase(l.table(), base), {});
  std::vector<FreeWord> images;
  for (const auto& b : l.schreier_data().basis_words()) images.push_back(ab_word(b).conjugated_by(g.inverse()));
  auto cols = image_columns(shell, images);
  return LayeredSubgroup(shell.table(), push_layers(l.layers(), cols, static_cast<int>(shell.rank())));
}

LayeredKey layered_key(const LayeredSubgroup& l, LayeredSubgroup* canonical) {
  std::vector<uint32_t> bases;
  CanonicalTable t = class_key(l.table(), &bases);
  std::optional<LayeredKey> best;
  for (uint32_t p : bases) {
    LayeredSubgroup r = rebase(l, p);
    LayeredKey k{t, {}};
    for (const auto& u : r.layers()) k.layers.emplace_back(u.prime(), u.basis());
    if (!best || k < *best) {
      best = std::move(k);
      if (canonical) *canonical = std::move(r);
    }
  }
  return *best;
}

bool layered_equal(const LayeredSubgroup& a, const LayeredSubgroup& b) { return layered_key(a) == layered_key(b); }

CosetAction materialize(const LayeredSubgroup& l, uint64_t bound) {
  const uint64_t total = l.materialized_degree();
  if (total > bound)
    throw SubgroupError("cannot materialize: index " + l.index_string() + " exceeds the degree bound " +
                        std::to_string(bound));
  const auto& d = l.table();
  const auto& sd = l.schreier_data();
  // mixed-radix digits of the quotient of the layers
  std::vector<uint32_t> radix;
  for (const auto& u : l.layers()) {
    for (int c = 0; c < u.codim(); ++c) radix.push_back(u.prime());
  }
  std::vector<std::vector<uint32_t>> gen_shift(sd.rank());
  for (uint64_t k = 0; k < sd.rank(); ++k) {
    ModVec e(sd.rank(), 0);
    e[k] = 1;
    for (const auto& u : l.layers()) {
      ModVec qc = u.quotient_coords(e);
      gen_shift[k].insert(gen_shift[k].end(), qc.begin(), qc.end());
    }
  }
  const uint64_t Q = total / d.degree();
  auto decode = [&](uint64_t s) {
    std::vector<uint32_t> dig(radix.size());
    for (size_t i = 0; i < radix.size(); ++i) dig[i] = s % radix[i], s /= radix[i];
    return dig;
  };
  auto encode = [&](const std::vector<uint32_t>& dig) {
    uint64_t s = 0;
    for (size_t i = radix.size(); i-- > 0;) s = s * radix[i] + dig[i];
    return s;
  };
  std::vector<std::vector<int>> gen(d.degree(), std::vector<int>(d.letters(), -1));
  for (size_t k = 0; k < sd.generator_edges.size(); ++k) {
    auto [p, i] = sd.generator_edges[k];
    gen[p][i] = static_cast<int>(k);
  }
  std::vector<Perm> perms(d.letters(), Perm(total));
  for (uint32_t p = 0; p < d.degree(); ++p) {
    for (int i = 0; i < d.letters(); ++i) {
      const uint32_t p2 = d.perm(i)[p];
      const int k = gen[p][i];
      for (uint64_t s = 0; s < Q; ++s) {
        uint64_t s2 = s;
        if (k >= 0) {
          auto dig = decode(s);
          for (size_t j = 0; j < dig.size(); ++j) dig[j] = (dig[j] + gen_shift[k][j]) % radix[j];
          s2 = encode(dig);
        }
        perms[i][p * Q + s] = static_cast<uint32_t>(p2 * Q + s2);
      }
    }
  }
  CosetAction full(marks::pi11(), std::move(perms));
  CosetAction r = tf::rebase(full, 0);
  if (r.degree() != total) throw SubgroupError("materialized action is not transitive");
  return r;
}

LayeredImage theta_image(const LayeredSubgroup& l, const Mat2& m, const std::vector<int>& signature) {
  LayeredImage im;
  im.matrix = m;
  AutLift lift = aut_lift(m);
  im.class_perm = lift.class_perm;
  layered_key(transport(l, lift.aut), &im.image);
  for (int k : signature) im.signature.push_back(im.class_perm[k]);
  return im;
}

VeechGroupResult from_orbit_action(CosetAction action) {
  VeechGroupResult r;
  r.orbit_size = action.degree();
  r.minus_identity = action.act(0, Seq{1, 1}) == 0;
  r.projective_orbit_size = r.minus_identity ? r.orbit_size : r.orbit_size / 2;
  SchreierData sd = schreier(action);
  for (const auto& s : sd.basis_words()) {
    FreeWord w(marks::sl2(), s);
    r.generator_words.push_back(w);
    r.generators.push_back(evaluate(w));
  }
  r.orbit_action = std::move(action);
  return r;
}

Sl2Orbit<LayeredSubgroup, LayeredKey> layered_orbit(const LayeredSubgroup& l, size_t limit) {
  static const Automorphism inv_lift[2] = {lift_of_letter(-1), lift_of_letter(-2)};
  auto canon = [](const LayeredSubgroup& x) {
    LayeredSubgroup rep;
    LayeredKey k = layered_key(x, &rep);
    return std::make_pair(std::move(rep), std::move(k));
  };
  auto step = [](const LayeredSubgroup& x, int i) { return transport(x, inv_lift[i]); };
  return sl2_orbit<LayeredSubgroup, LayeredKey>(l, canon, step, limit);
}

Sl2Orbit<CosetAction, CanonicalTable> table_orbit(const CosetAction& c, size_t limit) {
  if (!same_alphabet(c.mark(), marks::pi11())) throw SubgroupError("orbit needs a table over a,b");
  static const Automorphism inv_lift[2] = {lift_of_letter(-1), lift_of_letter(-2)};
  auto canon = [](const CosetAction& x) {
    std::vector<uint32_t> bases;
    CanonicalTable k = class_key(x, &bases);
    return std::make_pair(tf::rebase(x, bases.front()), std::move(k));
  };
  auto step = [](const CosetAction& x, int i) { return image_under_automorphism(x, inv_lift[i]); };
  return sl2_orbit<CosetAction, CanonicalTable>(c, canon, step, limit);
}

VeechGroupResult stabilizer(const LayeredSubgroup& l, size_t limit) {
  return from_orbit_action(layered_orbit(l, limit).action);
}

VeechGroupResult veech_of_table(const CosetAction& c, size_t limit) {
  return from_orbit_action(table_orbit(c, limit).action);
}

CrossValidation cross_validate(const LayeredSubgroup& l, uint64_t degree_bound) {
  static const Automorphism inv_lift[2] = {lift_of_letter(-1), lift_of_letter(-2)};
  CrossValidation cv;
  auto lo = layered_orbit(l);
  auto to = table_orbit(materialize(l, degree_bound));
  cv.layered_orbit = lo.elements.size();
  cv.table_orbit = to.elements.size();
  cv.same_action = lo.action == to.action;
  std::vector<CosetAction> mats;
  for (const auto& e : lo.elements) mats.push_back(materialize(e, degree_bound));
  auto compare = [&](const LayeredSubgroup& x, const CosetAction& mx) {
    const LayeredKey kx = layered_key(x);
    for (size_t j = 0; j < mats.size(); ++j) {
      const bool layered = kx == lo.keys[j];
      const bool table = conjugacy_equal(mx, mats[j]).has_value();
      ++cv.pairs;
      if (layered == table) ++cv.agreements;
    }
  };
  for (size_t i = 0; i < lo.elements.size(); ++i) {
    compare(lo.elements[i], mats[i]);
    for (int k = 0; k < 2; ++k) {
      LayeredSubgroup raw = transport(lo.elements[i], inv_lift[k]);
      compare(raw, materialize(raw, degree_bound));
    }
  }
  return cv;
}

TheoremReport verify_theorem(const VeechGroupResult& r, const CosetAction& delta, const LayeredSubgroup& l) {
  if (!same_alphabet(delta.mark(), marks::gamma2())) throw SubgroupError("Delta must be a table over G1,G2");
  TheoremReport rep;
  rep.degenerate = delta.degree() == 1;

  TheoremCheck gens{"stabilizer generators lie in Delta", true, ""};
  for (size_t i = 0; i < r.generators.size(); ++i) {
    const Mat2& m = r.generators[i];
    std::string why;
    if (!m.in_gamma2())
      why = "not in Gamma(2)";
    else if (delta.act(0, gamma2_word(m).word) != 0)
      why = "in Gamma(2) but not in Delta";
    if (!why.empty()) {
      gens.pass = false;
      gens.detail = r.generator_words[i].str() + " = " + m.str() + " is " + why;
      break;
    }
  }
  if (gens.pass) gens.detail = std::to_string(r.generators.size()) + " generators checked";
  rep.checks.push_back(gens);

  const uint64_t expect = 6 * static_cast<uint64_t>(delta.degree());
  rep.checks.push_back({"projective orbit size is 6 [Gamma(2):Delta]", r.projective_orbit_size == expect,
                        std::to_string(r.projective_orbit_size) + " vs " + std::to_string(expect)});

  TheoremCheck stab{"Delta generators stabilize Lambda", true, ""};
  const LayeredKey k0 = layered_key(l);
  SchreierData sd = schreier(delta);
  size_t n = 0;
  auto try_matrix = [&](const FreeWord& w, const Mat2& m) {
    ++n;
    if (layered_key(transport(l, aut_lift(m).aut)) == k0) return true;
    stab.pass = false;
    stab.detail = w.str() + " = " + m.str() + " moves Lambda";
    return false;
  };
  for (const auto& s : sd.basis_words()) {
    FreeWord w(marks::gamma2(), s);
    if (!try_matrix(w, evaluate(w))) break;
  }
  if (stab.pass) try_matrix(FreeWord(marks::gamma2()), -Mat2::identity());
  if (stab.pass) stab.detail = std::to_string(n) + " generators checked, including -I";
  rep.checks.push_back(stab);

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

Perm Origami::commutator() const {
  Perm c(degree());
  const Seq comm{1, 2, -1, -2};
  for (uint32_t p = 0; p < degree(); ++p) c[p] = table.act(p, comm);
  return c;
}

std::vector<uint32_t> Origami::puncture_orders() const {
  Perm c = commutator();
  std::vector<char> seen(degree(), 0);
  std::vector<uint32_t> out;
  for (uint32_t p = 0; p < degree(); ++p) {
    if (seen[p]) continue;
    uint32_t len = 0;
    for (uint32_t q = p; !seen[q]; q = c[q]) seen[q] = 1, ++len;
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint32_t Origami::punctures() const { return static_cast<uint32_t>(puncture_orders().size()); }

int Origami::genus() const {
  // 2 - 2g - n = -d
  long twice = 2 + static_cast<long>(degree()) - static_cast<long>(punctures());
  if (twice % 2 != 0) throw SubgroupError("odd Euler characteristic");
  return static_cast<int>(twice / 2);
}

Origami Origami::parse_text(const std::string& text) {
  std::istringstream in(text);
  long d;
  if (!(in >> d) || d <= 0) throw std::invalid_argument("origami text: expected a positive degree");
  std::vector<Perm> perms(2, Perm(d));
  for (auto& p : perms)
    for (long i = 0; i < d; ++i) {
      long v;
      if (!(in >> v) || v < 0 || v >= d) throw std::invalid_argument("origami text: bad image list");
      p[i] = static_cast<uint32_t>(v);
    }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("origami text: trailing data");
  CosetAction c(marks::pi11(), std::move(perms));
  if (!c.is_transitive()) throw std::invalid_argument("origami is not connected");
  return {c};
}

std::string Origami::text() const {
  std::ostringstream os;
  os << degree() << "\n";
  for (int i = 0; i < 2; ++i) {
    for (uint32_t p = 0; p < degree(); ++p) os << (p ? " " : "") << table.perm(i)[p];
    os << "\n";
  }
  return os.str();
}

Origami origami_export(const CosetAction& c, uint64_t degree_bound) {
  if (!same_alphabet(c.mark(), marks::pi11())) throw SubgroupError("origami export needs a table over a,b");
  if (c.degree() > degree_bound)
    throw SubgroupError("degree " + std::to_string(c.degree()) + " exceeds the bound " + std::to_string(degree_bound));
  if (!c.is_transitive()) throw SubgroupError("origami is not connected");
  return {c};
}

VeechGroupResult veech_of_origami(const Origami& o) { return veech_of_table(o.table); }

}  // namespace tf
