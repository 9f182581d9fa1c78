#pragma once

// The tensor algebra T(V) of a diagonal braiding, truncated at degree D, and its
// quotients by homogeneous Hopf ideals.
//
// The ideal I_n of T(V)_n is kept in RREF; the quotient basis of degree n is
// the set of words whose index is not a pivot column.  Shuffle coproduct:
// the T_a ⊗ T_b component of a word picks the a letters at positions L for the
// left factor; each pair (p in R, r in L, p < r) contributes q_{i_p i_r}.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nichols_forge/braided.hpp"
#include "nichols_forge/linalg.hpp"

namespace nf {

BasedSpace tensor_space(const DiagonalBraiding& b, std::size_t n);
std::string word_label(const Word& w);

// Δ_n^{a,n-a}: T_n -> T_a ⊗ T_{n-a}.
Matrix shuffle_coproduct(const DiagonalBraiding& b, std::size_t n, std::size_t a);
// All blocks a = 0..n.
std::vector<Matrix> shuffle_coproduct(const DiagonalBraiding& b, std::size_t n);

struct PrimitiveReport {
  std::size_t degree = 0;
  Subspace space;
  std::size_t dim() const { return space.dim(); }
};

// A homogeneous element of a quotient, in quotient coordinates.
struct HomogeneousElement {
  std::size_t degree = 0;
  Vector coords;
};

class GradedQuotient {
 public:
  static GradedQuotient tensor_algebra(const DiagonalBraiding& b, std::size_t cutoff);

  const DiagonalBraiding& braiding() const { return braiding_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t letters() const { return braiding_.dim(); }

  std::size_t dim(std::size_t n) const;
  std::vector<std::size_t> dims() const;
  // Tensor-word indices used as the basis of degree n.
  const std::vector<std::size_t>& basis_words(std::size_t n) const;
  std::vector<std::string> labels(std::size_t n) const;
  const Subspace& ideal(std::size_t n) const;

  // π_n applied to one tensor word / an arbitrary tensor vector.
  SparseRow project_word(std::size_t n, std::size_t word) const;
  SparseRow project(std::size_t n, const SparseRow& tensor_vector) const;
  // Representative in T_n of a quotient vector (section of π_n).
  SparseRow lift(std::size_t n, const SparseRow& coords) const;

  // Q_a ⊗ Q_b -> Q_{a+b}, needs a + b <= cutoff.
  const Matrix& mul(std::size_t a, std::size_t b) const;
  // Q_n -> Q_a ⊗ Q_{n-a}.
  const Matrix& cop(std::size_t n, std::size_t a) const;

  PrimitiveReport primitives(std::size_t n) const;
  bool is_primitive(const HomogeneousElement& x) const;
  GradedQuotient quotient_by_hopf_ideal(const std::vector<HomogeneousElement>& gens) const;
  // mul: Q_1 ⊗ Q_{n-1} -> Q_n onto for 2 <= n <= cutoff.
  bool generated_in_degree_one() const;

 private:
  GradedQuotient() = default;
  void build_from_ideals(std::vector<Subspace> ideals);

  DiagonalBraiding braiding_;
  std::size_t cutoff_ = 0;
  std::vector<Subspace> ideals_;
  std::vector<std::vector<std::size_t>> basis_;
  std::vector<std::vector<long>> basis_pos_;  // word -> basis index or -1
  std::vector<std::vector<long>> ideal_row_;  // word -> ideal row with that pivot or -1
  std::vector<std::vector<Matrix>> mul_;      // mul_[a][b]
  std::vector<std::vector<Matrix>> cop_;      // cop_[n][a]
};

}  // namespace nf
