#pragma once

#include <cstdint>
#include <vector>

namespace tf {

using ModVec = std::vector<uint32_t>;
// Row-major: m[i] is row i.
using ModMat = std::vector<ModVec>;

uint32_t mod_inv(uint32_t a, uint32_t q);
uint32_t mod_reduce(long long a, uint32_t q);
bool is_prime(uint64_t n);
uint64_t next_prime(uint64_t n);  // smallest prime > n

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(ModMat& rows, uint32_t q);
// Basis of {v : M v = 0}; M has `cols` columns.
ModMat kernel(const ModMat& m, int cols, uint32_t q);
ModVec mat_vec(const ModMat& m, const ModVec& v, uint32_t q);

// Subspace of (Z/q)^d stored by its canonical reduced echelon basis.
class ModSubspace {
 public:
  ModSubspace() = default;
  ModSubspace(uint32_t q, int dim) : q_(q), dim_(dim) {}

  static ModSubspace span(uint32_t q, int dim, ModMat vectors);
  static ModSubspace whole(uint32_t q, int dim);

  uint32_t prime() const { return q_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int codim() const { return dim_ - rank(); }
  const ModMat& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  ModVec reduce(ModVec v) const;
  bool contains(const ModVec& v) const;
  bool contains(const ModSubspace& o) const;
  // coordinates of v + U in the quotient, read off the non-pivot columns
  ModVec quotient_coords(const ModVec& v) const;
  std::vector<int> free_columns() const;

  ModSubspace intersect(const ModSubspace& o) const;
  ModSubspace operator+(const ModSubspace& o) const;
  // image under M : (Z/q)^dim -> (Z/q)^rows(M)
  ModSubspace image(const ModMat& m, int target_dim) const;
  // {v in (Z/q)^cols : M v in this}
  ModSubspace preimage(const ModMat& m, int cols) const;

  bool operator==(const ModSubspace& o) const {
    return q_ == o.q_ && dim_ == o.dim_ && rows_ == o.rows_;
  }
  bool operator!=(const ModSubspace& o) const { return !(*this == o); }
  bool operator<(const ModSubspace& o) const;

 private:
  uint32_t q_ = 2;
  int dim_ = 0;
  ModMat rows_;
  std::vector<int> piv_;
};

}  // namespace tf
