#include "nichols_forge/braided.hpp"

#include <algorithm>
#include <numeric>

#include "nichols_forge/errors.hpp"

namespace nf {

DiagonalBraiding::DiagonalBraiding(std::vector<std::vector<Scalar>> q) : q_(std::move(q)) {
  for (const auto& row : q_) {
    if (row.size() != q_.size()) throw MalformedInput("braiding matrix is not square");
    for (const auto& x : row)
      if (x.is_zero()) throw MalformedInput("braiding entries must be nonzero");
  }
}

void validate(const YDDatum& d) {
  for (int order : d.group)
    if (order < 1) throw MalformedInput("cyclic factor orders must be positive");
  for (const auto& p : d.points) {
    if (p.g.size() != d.group.size() || p.chi.size() != d.group.size())
      throw MalformedInput("group element or character has the wrong number of components");
    for (std::size_t k = 0; k < d.group.size(); ++k) {
      if (p.g[k] < 0 || p.g[k] >= d.group[k]) throw MalformedInput("group element exponent out of range");
      if (p.chi[k].is_zero() || !p.chi[k].pow(d.group[k]).is_one())
        throw MalformedInput("character value order does not divide the cyclic factor order");
    }
  }
}

Scalar character_value(const YDDatum& d, std::size_t chi_index, const std::vector<long>& g) {
  Scalar v(1);
  const auto& chi = d.points.at(chi_index).chi;
  for (std::size_t k = 0; k < d.group.size(); ++k) v *= chi[k].pow(g[k]);
  return v;
}

DiagonalBraiding yd_to_braiding(const YDDatum& d) {
  validate(d);
  const std::size_t n = d.points.size();
  std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = character_value(d, j, d.points[i].g);
  return DiagonalBraiding(std::move(q));
}

std::size_t int_pow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

std::size_t word_index(const Word& w, std::size_t n) {
  std::size_t idx = 0;
  for (int letter : w) idx = idx * n + static_cast<std::size_t>(letter);
  return idx;
}

Word word_from_index(std::size_t index, std::size_t length, std::size_t n) {
  Word w(length);
  for (std::size_t p = length; p-- > 0;) {
    w[p] = static_cast<int>(index % n);
    index /= n;
  }
  return w;
}

Matrix braiding_on_pair(const DiagonalBraiding& b) {
  const std::size_t n = b.dim();
  Matrix m(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(j * n + i, i * n + j, b.q(i, j));
  return m;
}

Matrix braiding_on_pair_inverse(const DiagonalBraiding& b) {
  const std::size_t n = b.dim();
  Matrix m(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i * n + j, j * n + i, b.q(i, j).inverse());
  return m;
}

Matrix crossing(const DiagonalBraiding& b, std::size_t d, std::size_t k) {
  if (k + 1 >= d) throw InvalidParameter("crossing position out of range");
  const std::size_t n = b.dim();
  return kron(kron(Matrix::identity(int_pow(n, k)), braiding_on_pair(b)), Matrix::identity(int_pow(n, d - k - 2)));
}

bool check_braid_equation(const DiagonalBraiding& b) {
  Matrix c1 = crossing(b, 3, 0), c2 = crossing(b, 3, 1);
  return c1 * c2 * c1 == c2 * c1 * c2;
}

bool is_permutation(const Permutation& w) {
  std::vector<bool> seen(w.size(), false);
  for (int x : w) {
    if (x < 0 || static_cast<std::size_t>(x) >= w.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

std::size_t inversions(const Permutation& w) {
  std::size_t c = 0;
  for (std::size_t p = 0; p < w.size(); ++p)
    for (std::size_t r = p + 1; r < w.size(); ++r)
      if (w[p] > w[r]) ++c;
  return c;
}

namespace {

Permutation inverse_perm(const Permutation& w) {
  Permutation inv(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) inv[static_cast<std::size_t>(w[p])] = static_cast<int>(p);
  return inv;
}

// s_k w: swap the values k and k+1.
Permutation left_mult(const Permutation& w, int k) {
  Permutation r = w;
  for (auto& x : r) {
    if (x == k) x = k + 1;
    else if (x == k + 1) x = k;
  }
  return r;
}

void collect_words(const Permutation& w, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  Permutation inv = inverse_perm(w);
  bool any = false;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (inv[k] > inv[k + 1]) {
      any = true;
      prefix.push_back(static_cast<int>(k));
      collect_words(left_mult(w, static_cast<int>(k)), prefix, out);
      prefix.pop_back();
    }
  }
  if (!any) out.push_back(prefix);
}

}  // namespace

std::vector<int> reduced_word(const Permutation& w) {
  if (!is_permutation(w)) throw InvalidParameter("not a permutation");
  std::vector<int> word;
  Permutation cur = w;
  for (;;) {
    Permutation inv = inverse_perm(cur);
    int k = -1;
    for (std::size_t c = 0; c + 1 < cur.size(); ++c)
      if (inv[c] > inv[c + 1]) {
        k = static_cast<int>(c);
        break;
      }
    if (k < 0) break;
    word.push_back(k);
    cur = left_mult(cur, k);
  }
  return word;
}

std::vector<std::vector<int>> all_reduced_words(const Permutation& w) {
  if (!is_permutation(w)) throw InvalidParameter("not a permutation");
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  collect_words(w, prefix, out);
  return out;
}

Permutation permutation_of_word(const std::vector<int>& word, std::size_t d) {
  Permutation w(d);
  std::iota(w.begin(), w.end(), 0);
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = left_mult(w, *it);
  return w;
}

LiftImage apply_lift(const DiagonalBraiding& b, const Permutation& w, const Word& letters) {
  const std::size_t d = letters.size();
  LiftImage out{Scalar(1), Word(d)};
  for (std::size_t p = 0; p < d; ++p) out.word[static_cast<std::size_t>(w[p])] = letters[p];
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t r = p + 1; r < d; ++r)
      if (w[p] > w[r])
        out.coeff *= b.q(static_cast<std::size_t>(letters[p]), static_cast<std::size_t>(letters[r]));
  return out;
}

Matrix lift_along_word(const std::vector<int>& word, std::size_t d, const DiagonalBraiding& b) {
  Matrix m = Matrix::identity(int_pow(b.dim(), d));
  // w = s_{word[0]} ... s_{word[l-1]}, so the last generator acts first.
  for (int k : word) m = m * crossing(b, d, static_cast<std::size_t>(k));
  return m;
}

BraidLift braid_lift(const Permutation& w, const DiagonalBraiding& b) {
  BraidLift out;
  out.degree = w.size();
  out.word = reduced_word(w);
  out.matrix = lift_along_word(out.word, w.size(), b);
  return out;
}

}  // namespace nf
