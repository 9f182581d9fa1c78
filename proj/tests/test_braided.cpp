#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nichols_forge/braided.hpp"
#include "nichols_forge/errors.hpp"

using namespace nf;

namespace {

Scalar z(int n, long k = 1) { return Scalar::root_of_unity(n, k); }

Matrix lift_by_formula(const Permutation& w, const DiagonalBraiding& b) {
  const std::size_t n = b.dim(), d = w.size(), total = int_pow(n, d);
  Matrix m(total, total);
  for (std::size_t c = 0; c < total; ++c) {
    LiftImage img = apply_lift(b, w, word_from_index(c, d, n));
    m.set(word_index(img.word, n), c, img.coeff);
  }
  return m;
}

DiagonalBraiding random_braiding(std::mt19937& rng, std::size_t n) {
  std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n));
  for (auto& row : q)
    for (auto& x : row) x = z(12, static_cast<long>(rng() % 12));
  return DiagonalBraiding(q);
}

}  // namespace

TEST_CASE("yd_to_braiding") {
  YDDatum d1{{2}, {{{1}, {Scalar(-1)}}}};
  CHECK(yd_to_braiding(d1).matrix() == std::vector<std::vector<Scalar>>{{Scalar(-1)}});
  YDDatum d2{{}, {{{}, {}}, {{}, {}}}};
  CHECK(yd_to_braiding(d2).matrix() == std::vector<std::vector<Scalar>>{{1, 1}, {1, 1}});
  YDDatum d3{{3}, {{{1}, {z(3)}}, {{1}, {z(3)}}}};
  CHECK(yd_to_braiding(d3).matrix() == std::vector<std::vector<Scalar>>{{z(3), z(3)}, {z(3), z(3)}});
  // q_ij = chi_j(g_i) is not symmetric in general.
  YDDatum d4{{4}, {{{1}, {z(4)}}, {{2}, {Scalar(-1)}}}};
  auto b4 = yd_to_braiding(d4);
  CHECK(b4.q(0, 1) == Scalar(-1));
  CHECK(b4.q(1, 0) == Scalar(-1));
  CHECK(b4.q(1, 1) == Scalar(1));
  CHECK(check_braid_equation(b4));
  YDDatum bad{{2}, {{{1}, {z(3)}}}};
  CHECK_THROWS_AS(yd_to_braiding(bad), MalformedInput);
  YDDatum bad2{{2}, {{{2}, {Scalar(-1)}}}};
  CHECK_THROWS_AS(yd_to_braiding(bad2), MalformedInput);
}

TEST_CASE("braiding on a pair") {
  CHECK(braiding_on_pair(DiagonalBraiding({{Scalar(-1)}})) == Matrix::from_dense({{-1}}));
  CHECK(braiding_on_pair(DiagonalBraiding({{z(3)}})) == Matrix::from_dense({{z(3)}}));
  Matrix flip = braiding_on_pair(DiagonalBraiding({{1, 1}, {1, 1}}));
  CHECK(flip == Matrix::from_dense({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  std::mt19937 rng(5);
  for (int t = 0; t < 5; ++t) {
    auto b = random_braiding(rng, 2 + t % 2);
    CHECK(check_braid_equation(b));
    Matrix c = braiding_on_pair(b);
    CHECK(c * braiding_on_pair_inverse(b) == Matrix::identity(c.rows()));
    CHECK(inverse(c) == braiding_on_pair_inverse(b));
  }
  CHECK_THROWS_AS(DiagonalBraiding({{Scalar(0)}}), MalformedInput);
}

TEST_CASE("reduced words") {
  CHECK(reduced_word({0, 1, 2}).empty());
  CHECK(reduced_word({1, 0}) == std::vector<int>{0});
  CHECK(reduced_word({2, 1, 0}) == std::vector<int>{0, 1, 0});
  for (std::size_t d = 1; d <= 5; ++d) {
    Permutation w(d);
    std::iota(w.begin(), w.end(), 0);
    do {
      auto word = reduced_word(w);
      CHECK(word.size() == inversions(w));
      CHECK(permutation_of_word(word, d) == w);
      auto all = all_reduced_words(w);
      CHECK(*std::min_element(all.begin(), all.end()) == word);
    } while (std::next_permutation(w.begin(), w.end()));
  }
}

TEST_CASE("braid lifts") {
  DiagonalBraiding q1({{z(5)}});
  CHECK(braid_lift({0, 1, 2}, q1).matrix == Matrix::identity(1));
  CHECK(braid_lift({1, 0}, q1).matrix == Matrix::from_dense({{z(5)}}));
  CHECK(braid_lift({2, 1, 0}, q1).matrix == Matrix::from_dense({{z(5, 3)}}));
  CHECK(braid_lift({0, 1, 2}, DiagonalBraiding({{1, 2}, {3, 4}})).matrix == Matrix::identity(8));
}

TEST_CASE("Matsumoto property and lift formula, d <= 4") {
  std::mt19937 rng(9);
  for (std::size_t n = 1; n <= 2; ++n) {
    auto b = random_braiding(rng, n);
    for (std::size_t d = 1; d <= 4; ++d) {
      Permutation w(d);
      std::iota(w.begin(), w.end(), 0);
      do {
        Matrix ref = braid_lift(w, b).matrix;
        for (const auto& word : all_reduced_words(w)) CHECK(lift_along_word(word, d, b) == ref);
        CHECK(lift_by_formula(w, b) == ref);
      } while (std::next_permutation(w.begin(), w.end()));
    }
  }
}
