#pragma once

// Diagonal braidings c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i and their braid-group lifts.
//
// Words of length d in n letters are indexed base n with the first letter most
// significant.  A permutation w of {0..d-1} moves the letter at position p to
// position w[p]; its positive lift T_w scales a word by the product of q_{i_p i_r}
// over the pairs p < r with w[p] > w[r].

#include <cstddef>
#include <vector>

#include "nichols_forge/linalg.hpp"
#include "nichols_forge/scalar.hpp"

namespace nf {

class DiagonalBraiding {
 public:
  DiagonalBraiding() = default;
  explicit DiagonalBraiding(std::vector<std::vector<Scalar>> q);

  std::size_t dim() const { return q_.size(); }
  const Scalar& q(std::size_t i, std::size_t j) const { return q_[i][j]; }
  const std::vector<std::vector<Scalar>>& matrix() const { return q_; }

  // Braiding on V*: written in the dual basis it is the same matrix.
  DiagonalBraiding dual() const { return *this; }

  friend bool operator==(const DiagonalBraiding& a, const DiagonalBraiding& b) { return a.q_ == b.q_; }

 private:
  std::vector<std::vector<Scalar>> q_;
};

// Yetter-Drinfeld points over G = Z/d_1 x ... x Z/d_r.
struct YDDatum {
  struct Point {
    std::vector<long> g;      // exponent vector
    std::vector<Scalar> chi;  // value on each cyclic generator
  };
  std::vector<int> group;
  std::vector<Point> points;
};

void validate(const YDDatum& d);
Scalar character_value(const YDDatum& d, std::size_t chi_index, const std::vector<long>& g);
// q_ij = chi_j(g_i).
DiagonalBraiding yd_to_braiding(const YDDatum& d);

using Word = std::vector<int>;
using Permutation = std::vector<int>;

std::size_t word_index(const Word& w, std::size_t n);
Word word_from_index(std::size_t index, std::size_t length, std::size_t n);
std::size_t int_pow(std::size_t base, std::size_t e);

// c on V ⊗ V as an n^2 x n^2 matrix.
Matrix braiding_on_pair(const DiagonalBraiding& b);
Matrix braiding_on_pair_inverse(const DiagonalBraiding& b);
// c acting on the tensor positions k, k+1 of V^{⊗d}.
Matrix crossing(const DiagonalBraiding& b, std::size_t d, std::size_t k);
bool check_braid_equation(const DiagonalBraiding& b);

bool is_permutation(const Permutation& w);
std::size_t inversions(const Permutation& w);
// Lexicographically smallest reduced word (generator k swaps positions k, k+1),
// listed left to right: w = s_{word[0]} s_{word[1]} ...
std::vector<int> reduced_word(const Permutation& w);
// Every reduced word of w; exponential, for tests.
std::vector<std::vector<int>> all_reduced_words(const Permutation& w);
Permutation permutation_of_word(const std::vector<int>& word, std::size_t d);

// Scalar and target word of T_w applied to one basis word.
struct LiftImage {
  Scalar coeff;
  Word word;
};
LiftImage apply_lift(const DiagonalBraiding& b, const Permutation& w, const Word& letters);

struct BraidLift {
  std::size_t degree = 0;
  std::vector<int> word;
  Matrix matrix;
};
// Composes crossings along the reduced word.
BraidLift braid_lift(const Permutation& w, const DiagonalBraiding& b);
// Same lift following an arbitrary word of generators.
Matrix lift_along_word(const std::vector<int>& word, std::size_t d, const DiagonalBraiding& b);

}  // namespace nf
