#include "teichforge/coset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace tf {

Seq seq_of(const FreeWord& w) { return Seq(w.letters().begin(), w.letters().end()); }

Seq seq_of(const ReflectionWord& w) {
  Seq s;
  for (auto l : w.letters()) s.push_back(l + 1);
  return s;
}

ReflectionWord reflection_of(const Seq& s) {
  std::vector<uint8_t> ls;
  for (int l : s) ls.push_back(static_cast<uint8_t>(std::abs(l) - 1));
  return ReflectionWord(ls);
}

static Seq inverse_seq(const Seq& s, bool involutive) {
  Seq r(s.rbegin(), s.rend());
  if (!involutive)
    for (auto& l : r) l = -l;
  return r;
}

static Seq concat(Seq a, const Seq& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---------------------------------------------------------------- CosetAction

CosetAction::CosetAction(AlphabetPtr mark, std::vector<Perm> perms) : mark_(std::move(mark)), perms_(std::move(perms)) {
  if (!mark_) throw SubgroupError("coset action without a mark");
  if (static_cast<int>(perms_.size()) != mark_->rank())
    throw SubgroupError("mark " + mark_->name() + " needs " + std::to_string(mark_->rank()) + " permutations");
  n_ = perms_.empty() ? 1 : static_cast<uint32_t>(perms_[0].size());
  if (n_ == 0) throw SubgroupError("empty coset action");
  inv_.assign(perms_.size(), Perm(n_));
  for (size_t i = 0; i < perms_.size(); ++i) {
    if (perms_[i].size() != n_) throw SubgroupError("permutations of unequal degree");
    std::vector<char> seen(n_, 0);
    for (uint32_t p = 0; p < n_; ++p) {
      uint32_t q = perms_[i][p];
      if (q >= n_ || seen[q]) throw SubgroupError("letter " + mark_->letter(i) + " is not a permutation");
      seen[q] = 1;
      inv_[i][q] = p;
    }
  }
}

CosetAction CosetAction::whole(AlphabetPtr mark) {
  std::vector<Perm> perms(mark->rank(), Perm{0});
  return CosetAction(std::move(mark), std::move(perms));
}

uint32_t CosetAction::act(uint32_t p, const Seq& w) const {
  for (int l : w) p = involutive() ? perms_[std::abs(l) - 1][p] : act(p, l);
  return p;
}

uint32_t CosetAction::act(uint32_t p, const FreeWord& w) const {
  if (!same_alphabet(w.alphabet(), mark_))
    throw SubgroupError("basis mismatch: word over " + w.alphabet()->name() + ", action of " + mark_->name());
  for (auto l : w.letters()) p = act(p, l);
  return p;
}

uint32_t CosetAction::act(uint32_t p, const ReflectionWord& w) const {
  if (!involutive()) throw SubgroupError("ambient word applied to action of " + mark_->name());
  for (auto l : w.letters()) p = perms_[l][p];
  return p;
}

bool CosetAction::contains(const FreeWord& w) const { return act(0, w) == 0; }
bool CosetAction::contains(const ReflectionWord& w) const { return act(0, w) == 0; }

bool CosetAction::is_transitive() const {
  std::vector<char> seen(n_, 0);
  std::vector<uint32_t> st{0};
  seen[0] = 1;
  uint32_t cnt = 1;
  while (!st.empty()) {
    uint32_t p = st.back();
    st.pop_back();
    for (int i = 0; i < letters(); ++i)
      for (uint32_t q : {perms_[i][p], inv_[i][p]})
        if (!seen[q]) {
          seen[q] = 1;
          ++cnt;
          st.push_back(q);
        }
  }
  return cnt == n_;
}

// BFS order from base; returns new label of each old point (or UINT32_MAX)
// and, for each new label, the tree edge (parent, signed letter).
struct Bfs {
  std::vector<uint32_t> label;
  std::vector<uint32_t> order;
  std::vector<std::pair<uint32_t, int>> parent;  // indexed by old point
};

static Bfs bfs(const CosetAction& c, uint32_t base) {
  Bfs b;
  const uint32_t n = c.degree();
  b.label.assign(n, UINT32_MAX);
  b.parent.assign(n, {UINT32_MAX, 0});
  b.label[base] = 0;
  b.order.push_back(base);
  for (size_t k = 0; k < b.order.size(); ++k) {
    uint32_t p = b.order[k];
    for (int i = 0; i < c.letters(); ++i) {
      for (int sgn : {1, -1}) {
        if (sgn < 0 && c.involutive()) continue;
        int l = sgn * (i + 1);
        uint32_t q = c.involutive() ? c.perm(i)[p] : c.act(p, l);
        if (b.label[q] != UINT32_MAX) continue;
        b.label[q] = static_cast<uint32_t>(b.order.size());
        b.parent[q] = {p, l};
        b.order.push_back(q);
      }
    }
  }
  return b;
}

CosetAction rebase(const CosetAction& c, uint32_t base) {
  Bfs b = bfs(c, base);
  std::vector<Perm> perms(c.letters(), Perm(b.order.size()));
  for (int i = 0; i < c.letters(); ++i)
    for (size_t k = 0; k < b.order.size(); ++k) perms[i][k] = b.label[c.perm(i)[b.order[k]]];
  return CosetAction(c.mark(), std::move(perms));
}

CanonicalTable canonical_form(const CosetAction& c, uint32_t base) { return {rebase(c, base).perms()}; }

std::vector<Seq> transversal(const CosetAction& c) {
  Bfs b = bfs(c, 0);
  std::vector<Seq> tr(c.degree());
  for (uint32_t p : b.order) {
    if (p == 0) continue;
    auto [par, l] = b.parent[p];
    tr[p] = tr[par];
    tr[p].push_back(l);
  }
  return tr;
}

// ---------------------------------------------------------------- folding

namespace {

struct Folder {
  bool inv;
  int r;
  std::vector<int> parent;
  std::vector<std::vector<int>> out, in;  // in unused for involutive letters
  std::deque<std::pair<int, int>> pending;

  Folder(bool involutive, int rank) : inv(involutive), r(rank) {}

  int add_vertex() {
    parent.push_back(static_cast<int>(parent.size()));
    out.emplace_back(r, -1);
    in.emplace_back(r, -1);
    return static_cast<int>(parent.size()) - 1;
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void set_or_merge(int& slot, int target) {
    if (slot == -1)
      slot = target;
    else
      pending.emplace_back(slot, target);
  }
  void add_edge(int v, int letter, int w) {
    v = find(v);
    w = find(w);
    int i = std::abs(letter) - 1;
    if (inv) {
      set_or_merge(out[v][i], w);
      set_or_merge(out[w][i], v);
    } else {
      if (letter < 0) std::swap(v, w);
      set_or_merge(out[v][i], w);
      set_or_merge(in[w][i], v);
    }
    drain();
  }
  void drain() {
    while (!pending.empty()) {
      auto [a, b] = pending.front();
      pending.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (a < b) std::swap(a, b);  // keep the smaller label as root
      parent[a] = b;
      for (int i = 0; i < r; ++i) {
        if (out[a][i] != -1) set_or_merge(out[b][i], out[a][i]);
        if (!inv && in[a][i] != -1) set_or_merge(in[b][i], in[a][i]);
      }
    }
  }
};

}  // namespace

FoldResult fold(const std::vector<Seq>& generators, AlphabetPtr mark) {
  const bool inv = marks::is_ambient(mark);
  const int r = mark->rank();
  Folder f(inv, r);
  f.add_vertex();
  for (const Seq& g : generators) {
    if (g.empty()) continue;
    int cur = 0;
    for (size_t k = 0; k < g.size(); ++k) {
      int nxt = k + 1 == g.size() ? 0 : f.add_vertex();
      f.add_edge(cur, g[k], nxt);
      cur = nxt;
    }
  }
  std::map<int, uint32_t> ids;
  for (size_t v = 0; v < f.parent.size(); ++v) {
    int root = f.find(static_cast<int>(v));
    if (!ids.count(root)) ids.emplace(root, 0);
  }
  uint32_t k = 0;
  for (auto& [root, id] : ids) id = k++;
  FoldResult res;
  res.vertices = k;
  bool complete = true;
  std::vector<Perm> perms(r, Perm(k, 0));
  for (auto& [root, id] : ids) {
    for (int i = 0; i < r; ++i) {
      int t = f.out[root][i];
      if (t == -1) {
        complete = false;
        continue;
      }
      perms[i][id] = ids.at(f.find(t));
    }
  }
  res.complete = complete;
  if (complete) res.action = rebase(CosetAction(mark, std::move(perms)), ids.at(f.find(0)));
  return res;
}

FoldResult fold(const std::vector<FreeWord>& generators) {
  if (generators.empty()) throw SubgroupError("fold needs a mark");
  std::vector<Seq> gs;
  for (const auto& g : generators) gs.push_back(seq_of(g));
  return fold(gs, generators[0].alphabet());
}

FoldResult fold(const std::vector<ReflectionWord>& generators) {
  std::vector<Seq> gs;
  for (const auto& g : generators) gs.push_back(seq_of(g));
  return fold(gs, marks::ambient());
}

uint64_t index(const CosetAction& c) { return c.degree(); }

uint64_t rank(const CosetAction& c) {
  if (c.involutive()) throw SubgroupError("rank is undefined for subgroups of the ambient mark");
  return 1 + static_cast<uint64_t>(c.degree()) * (c.letters() - 1);
}

// ---------------------------------------------------------------- pullback, intersect

CosetAction pullback(AlphabetPtr source, const std::vector<Seq>& images, const CosetAction& target) {
  if (static_cast<int>(images.size()) != source->rank()) throw SubgroupError("pullback needs one image per letter");
  std::vector<Perm> perms(images.size(), Perm(target.degree()));
  for (size_t i = 0; i < images.size(); ++i)
    for (uint32_t p = 0; p < target.degree(); ++p) perms[i][p] = target.act(p, images[i]);
  return rebase(CosetAction(std::move(source), std::move(perms)), 0);
}

CosetAction pullback(const std::vector<FreeWord>& images, AlphabetPtr source, const CosetAction& target) {
  std::vector<Seq> seqs;
  for (const auto& w : images) {
    if (!same_alphabet(w.alphabet(), target.mark())) throw SubgroupError("pullback image over the wrong mark");
    seqs.push_back(seq_of(w));
  }
  return pullback(std::move(source), seqs, target);
}

CosetAction intersect(const CosetAction& a, const CosetAction& b) {
  if (!same_alphabet(a.mark(), b.mark())) throw SubgroupError("intersect: mark mismatch");
  const uint64_t nb = b.degree();
  std::unordered_map<uint64_t, uint32_t> id;
  std::vector<std::pair<uint32_t, uint32_t>> pts{{0, 0}};
  id[0] = 0;
  std::vector<std::vector<uint32_t>> img(a.letters());
  for (size_t k = 0; k < pts.size(); ++k) {
    auto [p, q] = pts[k];
    for (int i = 0; i < a.letters(); ++i) {
      uint32_t p2 = a.perm(i)[p], q2 = b.perm(i)[q];
      uint64_t key = p2 * nb + q2;
      auto it = id.find(key);
      uint32_t j;
      if (it == id.end()) {
        j = static_cast<uint32_t>(pts.size());
        id.emplace(key, j);
        pts.emplace_back(p2, q2);
      } else {
        j = it->second;
      }
      img[i].push_back(j);
    }
  }
  return rebase(CosetAction(a.mark(), std::move(img)), 0);
}

// ---------------------------------------------------------------- rewriting

FreeWord Inclusion::express(const Seq& w) const {
  FreeWord r(inner);
  uint32_t p = 0;
  for (int l : w) {
    if (outer.involutive() || l > 0) {
      int i = std::abs(l) - 1;
      r *= edge[p][i];
      p = outer.perm(i)[p];
    } else {
      int i = -l - 1;
      uint32_t q = outer.inverse_perm(i)[p];
      r *= edge[q][i].inverse();
      p = q;
    }
  }
  if (p != 0) throw SubgroupError("word is not in the subgroup (" + name + ")");
  return r;
}

Seq Inclusion::to_outer(const FreeWord& w) const {
  Seq s;
  for (auto l : w.letters()) {
    const Seq& b = basis.at(std::abs(l) - 1);
    if (l > 0)
      s.insert(s.end(), b.begin(), b.end());
    else {
      Seq ib = inverse_seq(b, outer.involutive());
      s.insert(s.end(), ib.begin(), ib.end());
    }
  }
  return s;
}

static bool seq_equal(const Seq& a, const Seq& b, const AlphabetPtr& mark) {
  if (marks::is_ambient(mark)) return reflection_of(a) == reflection_of(b);
  return FreeWord(mark, a) == FreeWord(mark, b);
}

void Inclusion::verify() const {
  if (transversal.size() != outer.degree() || edge.size() != outer.degree())
    throw SubgroupError(name + ": rewriting table size mismatch");
  const bool inv = outer.involutive();
  for (uint32_t p = 0; p < outer.degree(); ++p) {
    if (outer.act(0, transversal[p]) != p) throw SubgroupError(name + ": transversal word does not reach its coset");
    for (int i = 0; i < outer.letters(); ++i) {
      uint32_t q = outer.perm(i)[p];
      Seq lhs = concat(concat(transversal[p], Seq{i + 1}), inverse_seq(transversal[q], inv));
      if (!seq_equal(lhs, to_outer(edge[p][i]), outer.mark()))
        throw SubgroupError(name + ": edge word mismatch at coset " + std::to_string(p) + " letter " +
                            outer.mark()->letter(i));
    }
  }
}

SchreierData schreier(const CosetAction& c) {
  if (c.involutive()) throw SubgroupError("Schreier basis requested for a subgroup of the ambient mark");
  SchreierData sd;
  Bfs b = bfs(c, 0);
  if (b.order.size() != c.degree()) throw SubgroupError("coset action is not transitive");
  const uint32_t n = c.degree();
  auto& inc = sd.inclusion;
  inc.name = "schreier";
  inc.outer = c;
  inc.transversal = transversal(c);
  std::vector<std::vector<int>> gen(n, std::vector<int>(c.letters(), -1));
  for (uint32_t p = 0; p < n; ++p) {
    for (int i = 0; i < c.letters(); ++i) {
      uint32_t q = c.perm(i)[p];
      bool tree = (b.parent[q].first == p && b.parent[q].second == i + 1 && q != 0) ||
                  (b.parent[p].first == q && b.parent[p].second == -(i + 1) && p != 0);
      if (tree) continue;
      gen[p][i] = static_cast<int>(sd.generator_edges.size());
      sd.generator_edges.emplace_back(p, i);
    }
  }
  inc.inner = Alphabet::indexed(c.mark()->name() + "-sub", 'e', static_cast<int>(sd.generator_edges.size()));
  inc.edge.assign(n, std::vector<FreeWord>(c.letters(), FreeWord(inc.inner)));
  for (size_t k = 0; k < sd.generator_edges.size(); ++k) {
    auto [p, i] = sd.generator_edges[k];
    inc.edge[p][i] = FreeWord::generator(inc.inner, static_cast<int>(k));
    uint32_t q = c.perm(i)[p];
    inc.basis.push_back(concat(concat(inc.transversal[p], Seq{i + 1}), inverse_seq(inc.transversal[q], false)));
  }
  return sd;
}

FreeWord express_in_basis(const SchreierData& s, const FreeWord& w) { return s.inclusion.express(w); }

ModVec abelianize_mod(const SchreierData& s, const FreeWord& w, uint32_t q) {
  FreeWord e = express_in_basis(s, w);
  ModVec v(s.rank(), 0);
  for (auto l : e.letters()) {
    auto& x = v[std::abs(l) - 1];
    x = l > 0 ? (x + 1) % q : (x + q - 1) % q;
  }
  return v;
}

// ---------------------------------------------------------------- conjugation, automorphisms

CosetAction conjugate_subgroup(const CosetAction& c, const Seq& g) { return rebase(c, c.act(0, g)); }

CosetAction conjugate_subgroup(const CosetAction& c, const FreeWord& g) { return rebase(c, c.act(0, g)); }

Automorphism Automorphism::identity(AlphabetPtr a) {
  std::vector<FreeWord> gens;
  for (int i = 0; i < a->rank(); ++i) gens.push_back(FreeWord::generator(a, i));
  return {a, gens, gens};
}

Automorphism Automorphism::inner(const FreeWord& g) {
  Automorphism r = identity(g.alphabet());
  for (int i = 0; i < r.alphabet->rank(); ++i) {
    r.images[i] = r.images[i].conjugated_by(g);
    r.inverse_images[i] = r.inverse_images[i].conjugated_by(g.inverse());
  }
  return r;
}

Automorphism Automorphism::after(const Automorphism& o) const {
  Automorphism r{alphabet, {}, {}};
  for (const auto& w : o.images) r.images.push_back(apply(w));
  for (const auto& w : inverse_images) r.inverse_images.push_back(o.apply_inverse(w));
  return r;
}

bool Automorphism::verify() const {
  if (static_cast<int>(images.size()) != alphabet->rank() || inverse_images.size() != images.size()) return false;
  for (int i = 0; i < alphabet->rank(); ++i) {
    FreeWord g = FreeWord::generator(alphabet, i);
    if (apply(apply_inverse(g)) != g || apply_inverse(apply(g)) != g) return false;
  }
  return true;
}

CosetAction image_under_automorphism(const CosetAction& c, const Automorphism& psi) {
  if (!psi.verify()) throw SubgroupError("automorphism has no verified two-sided inverse");
  std::vector<Perm> perms(c.letters(), Perm(c.degree()));
  for (int i = 0; i < c.letters(); ++i) {
    Seq w = seq_of(psi.inverse_images[i]);
    for (uint32_t p = 0; p < c.degree(); ++p) perms[i][p] = c.act(p, w);
  }
  return CosetAction(c.mark(), std::move(perms));
}

// ---------------------------------------------------------------- canonical forms

ColorRefinement refine_colors(const CosetAction& c) {
  const uint32_t n = c.degree();
  ColorRefinement cr;
  cr.color.assign(n, 0);
  cr.classes = 1;
  const int width = 1 + c.letters() * (c.involutive() ? 1 : 2);
  std::vector<uint32_t> sig(static_cast<size_t>(n) * width);
  std::vector<uint32_t> order(n);
  while (true) {
    for (uint32_t p = 0; p < n; ++p) {
      uint32_t* s = &sig[static_cast<size_t>(p) * width];
      int k = 0;
      s[k++] = cr.color[p];
      for (int i = 0; i < c.letters(); ++i) {
        s[k++] = cr.color[c.perm(i)[p]];
        if (!c.involutive()) s[k++] = cr.color[c.inverse_perm(i)[p]];
      }
    }
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](uint32_t a, uint32_t b) {
      return std::lexicographical_compare(&sig[size_t(a) * width], &sig[size_t(a) * width] + width,
                                          &sig[size_t(b) * width], &sig[size_t(b) * width] + width);
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<uint32_t> next(n);
    uint32_t cls = 0;
    for (uint32_t k = 0; k < n; ++k) {
      if (k > 0 && less(order[k - 1], order[k])) ++cls;
      next[order[k]] = cls;
    }
    ++cls;
    bool stable = cls == cr.classes;
    cr.color = std::move(next);
    cr.classes = cls;
    if (stable) break;
  }
  return cr;
}

static std::vector<uint32_t> histogram(const ColorRefinement& cr) {
  std::vector<uint32_t> h(cr.classes, 0);
  for (auto c : cr.color) ++h[c];
  return h;
}

std::optional<Seq> conjugacy_equal(const CosetAction& a, const CosetAction& b) {
  if (!same_alphabet(a.mark(), b.mark())) throw SubgroupError("conjugacy test across marks");
  if (a.degree() != b.degree()) return std::nullopt;
  ColorRefinement ca = refine_colors(a), cb = refine_colors(b);
  if (ca.classes != cb.classes || histogram(ca) != histogram(cb)) return std::nullopt;
  CanonicalTable target = canonical_form(a, 0);
  for (uint32_t p = 0; p < b.degree(); ++p) {
    if (cb.color[p] != ca.color[0]) continue;
    if (canonical_form(b, p) == target) return transversal(b)[p];
  }
  return std::nullopt;
}

CanonicalTable class_key(const CosetAction& c, std::vector<uint32_t>* bases) {
  ColorRefinement cr = refine_colors(c);
  auto h = histogram(cr);
  uint32_t best = 0;
  for (uint32_t k = 1; k < cr.classes; ++k)
    if (h[k] < h[best]) best = k;
  std::optional<CanonicalTable> min;
  if (bases) bases->clear();
  for (uint32_t p = 0; p < c.degree(); ++p) {
    if (cr.color[p] != best) continue;
    CanonicalTable t = canonical_form(c, p);
    if (!min || t < *min) {
      min = std::move(t);
      if (bases) bases->assign(1, p);
    } else if (bases && t == *min) {
      bases->push_back(p);
    }
  }
  return *min;
}

std::vector<uint32_t> normalizer_points(const CosetAction& c) {
  ColorRefinement cr = refine_colors(c);
  CanonicalTable base = canonical_form(c, 0);
  std::vector<uint32_t> pts;
  for (uint32_t p = 0; p < c.degree(); ++p)
    if (cr.color[p] == cr.color[0] && (p == 0 || canonical_form(c, p) == base)) pts.push_back(p);
  return pts;
}

CosetAction normalizer(const CosetAction& c) {
  std::vector<uint32_t> s = normalizer_points(c);
  std::vector<uint32_t> block_of(c.degree(), UINT32_MAX);
  std::vector<std::vector<uint32_t>> blocks{s};
  for (uint32_t p : s) block_of[p] = 0;
  std::vector<Perm> perms(c.letters());
  for (size_t k = 0; k < blocks.size(); ++k) {
    for (int i = 0; i < c.letters(); ++i) {
      std::vector<uint32_t> img;
      for (uint32_t p : blocks[k]) img.push_back(c.perm(i)[p]);
      std::sort(img.begin(), img.end());
      uint32_t id = block_of[img[0]];
      if (id == UINT32_MAX) {
        id = static_cast<uint32_t>(blocks.size());
        for (uint32_t p : img) block_of[p] = id;
        blocks.push_back(img);
      }
      perms[i].push_back(id);
    }
  }
  return CosetAction(c.mark(), std::move(perms));
}

bool self_normalizing(const CosetAction& c) { return normalizer_points(c).size() == 1; }

std::vector<ClassEntry> cyclic_class_decomposition(const CosetAction& c, const Seq& w) {
  const uint32_t n = c.degree();
  Perm pw(n);
  for (uint32_t p = 0; p < n; ++p) pw[p] = c.act(p, w);
  auto tr = transversal(c);
  std::vector<char> seen(n, 0);
  std::vector<ClassEntry> out;
  for (uint32_t p = 0; p < n; ++p) {
    if (seen[p]) continue;
    uint32_t len = 0;
    for (uint32_t q = p; !seen[q]; q = pw[q]) {
      seen[q] = 1;
      ++len;
    }
    Seq wm;
    for (uint32_t k = 0; k < len; ++k) wm.insert(wm.end(), w.begin(), w.end());
    Seq rep = concat(concat(tr[p], wm), inverse_seq(tr[p], c.involutive()));
    out.push_back({p, rep, tr[p], len});
  }
  return out;
}

CosetAction induce_up(const CosetAction& sub, const Inclusion& inc) {
  if (!same_alphabet(sub.mark(), inc.inner)) throw SubgroupError("induce_up: subgroup is not over the inner basis");
  const uint32_t m = inc.outer.degree(), n = sub.degree();
  std::vector<Perm> perms(inc.outer.letters(), Perm(static_cast<size_t>(m) * n));
  for (int i = 0; i < inc.outer.letters(); ++i)
    for (uint32_t c = 0; c < m; ++c) {
      uint32_t c2 = inc.outer.perm(i)[c];
      for (uint32_t p = 0; p < n; ++p) perms[i][c * n + p] = c2 * n + sub.act(p, inc.edge[c][i]);
    }
  return rebase(CosetAction(inc.outer.mark(), std::move(perms)), 0);
}

std::vector<CosetAction> subgroup_classes(AlphabetPtr mark, uint32_t n) {
  if (marks::is_ambient(mark)) throw SubgroupError("subgroup_classes needs a free mark");
  if (n == 0 || n > 8) throw SubgroupError("subgroup_classes supports 1 <= n <= 8");
  std::vector<Perm> all;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int r = mark->rank();
  std::vector<size_t> odo(r, 0);
  std::map<CanonicalTable, CosetAction> classes;
  for (;;) {
    std::vector<Perm> perms;
    for (size_t i : odo) perms.push_back(all[i]);
    CosetAction c(mark, std::move(perms));
    // each subgroup appears once as its own based canonical form
    if (c.is_transitive() && canonical_form(c, 0).perms == c.perms()) classes.try_emplace(class_key(c), c);
    int k = 0;
    while (k < r && ++odo[k] == all.size()) odo[k++] = 0;
    if (k == r) break;
  }
  std::vector<CosetAction> out;
  for (auto& [key, c] : classes) out.push_back(std::move(c));
  return out;
}

}  // namespace tf
