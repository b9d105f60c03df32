#include "teichforge/modp.hpp"

#include <stdexcept>
#include <tuple>

namespace tf {

static uint32_t mulmod(uint32_t a, uint32_t b, uint32_t q) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % q);
}

uint32_t mod_inv(uint32_t a, uint32_t q) {
  uint64_t r = 1, b = a % q, e = q - 2;
  if (b == 0) throw std::domain_error("inverse of zero");
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

uint32_t mod_reduce(long long a, uint32_t q) {
  long long r = a % static_cast<long long>(q);
  return static_cast<uint32_t>(r < 0 ? r + q : r);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t next_prime(uint64_t n) {
  uint64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

std::vector<int> rref(ModMat& rows, uint32_t q) {
  std::vector<int> piv;
  if (rows.empty()) return piv;
  const int cols = static_cast<int>(rows[0].size());
  size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    uint32_t inv = mod_inv(rows[r][c], q);
    for (auto& x : rows[r]) x = mulmod(x, inv, q);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      uint32_t f = rows[i][c];
      for (int j = c; j < cols; ++j) rows[i][j] = (rows[i][j] + q - mulmod(f, rows[r][j], q)) % q;
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

ModMat kernel(const ModMat& m, int cols, uint32_t q) {
  ModMat a = m;
  auto piv = rref(a, q);
  std::vector<int> is_piv(cols, -1);
  for (size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
  ModMat out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f] >= 0) continue;
    ModVec v(cols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (q - a[i][f]) % q;
    out.push_back(std::move(v));
  }
  return out;
}

ModVec mat_vec(const ModMat& m, const ModVec& v, uint32_t q) {
  ModVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    uint64_t s = 0;
    for (size_t j = 0; j < v.size(); ++j) s = (s + static_cast<uint64_t>(m[i][j]) * v[j]) % q;
    r[i] = static_cast<uint32_t>(s);
  }
  return r;
}

ModSubspace ModSubspace::span(uint32_t q, int dim, ModMat vectors) {
  ModSubspace s(q, dim);
  for (auto& v : vectors) {
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("vector dimension mismatch");
    for (auto& x : v) x %= q;
  }
  s.piv_ = rref(vectors, q);
  s.rows_ = std::move(vectors);
  return s;
}

ModSubspace ModSubspace::whole(uint32_t q, int dim) {
  ModMat id(dim, ModVec(dim, 0));
  for (int i = 0; i < dim; ++i) id[i][i] = 1;
  return span(q, dim, std::move(id));
}

ModVec ModSubspace::reduce(ModVec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t f = v[piv_[i]];
    if (!f) continue;
    for (int j = 0; j < dim_; ++j) v[j] = (v[j] + q_ - mulmod(f, rows_[i][j], q_)) % q_;
  }
  return v;
}

bool ModSubspace::contains(const ModVec& v) const {
  for (auto x : reduce(v))
    if (x) return false;
  return true;
}

bool ModSubspace::contains(const ModSubspace& o) const {
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

std::vector<int> ModSubspace::free_columns() const {
  std::vector<int> f;
  size_t k = 0;
  for (int c = 0; c < dim_; ++c) {
    if (k < piv_.size() && piv_[k] == c)
      ++k;
    else
      f.push_back(c);
  }
  return f;
}

ModVec ModSubspace::quotient_coords(const ModVec& v) const {
  ModVec r = reduce(v), out;
  for (int c : free_columns()) out.push_back(r[c]);
  return out;
}

ModSubspace ModSubspace::operator+(const ModSubspace& o) const {
  ModMat all = rows_;
  all.insert(all.end(), o.rows_.begin(), o.rows_.end());
  return span(q_, dim_, std::move(all));
}

ModSubspace ModSubspace::intersect(const ModSubspace& o) const {
  // U ∩ V = kernel of the quotient map by V restricted to U
  std::vector<int> fc = o.free_columns();
  if (rows_.empty()) return ModSubspace(q_, dim_);
  ModMat m(fc.size(), ModVec(rows_.size(), 0));
  for (size_t j = 0; j < rows_.size(); ++j) {
    ModVec r = o.reduce(rows_[j]);
    for (size_t i = 0; i < fc.size(); ++i) m[i][j] = r[fc[i]];
  }
  ModMat ker = kernel(m, static_cast<int>(rows_.size()), q_);
  ModMat out;
  for (const auto& c : ker) {
    ModVec v(dim_, 0);
    for (size_t j = 0; j < rows_.size(); ++j)
      for (int k = 0; k < dim_; ++k) v[k] = (v[k] + mulmod(c[j], rows_[j][k], q_)) % q_;
    out.push_back(std::move(v));
  }
  return span(q_, dim_, std::move(out));
}

ModSubspace ModSubspace::image(const ModMat& m, int target_dim) const {
  ModMat out;
  for (const auto& r : rows_) out.push_back(mat_vec(m, r, q_));
  return span(q_, target_dim, std::move(out));
}

ModSubspace ModSubspace::preimage(const ModMat& m, int cols) const {
  std::vector<int> fc = free_columns();
  // columns of (quotient map) * m
  ModMat qm(fc.size(), ModVec(cols, 0));
  for (int j = 0; j < cols; ++j) {
    ModVec col(dim_, 0);
    for (int i = 0; i < dim_; ++i) col[i] = m[i][j] % q_;
    ModVec r = reduce(col);
    for (size_t i = 0; i < fc.size(); ++i) qm[i][j] = r[fc[i]];
  }
  return span(q_, cols, kernel(qm, cols, q_));
}

bool ModSubspace::operator<(const ModSubspace& o) const {
  return std::tie(q_, dim_, rows_) < std::tie(o.q_, o.dim_, o.rows_);
}

}  // namespace tf
