#include "nichols_forge/freehopf.hpp"

#include <algorithm>
#include <map>

#include "nichols_forge/errors.hpp"
#include "nichols_forge/parallel.hpp"

namespace nf {

namespace {

struct ShuffleTerm {
  std::size_t left_len;
  std::size_t left;
  std::size_t right;
  Scalar coeff;
};

// Every (L, R) split of a word, grouped by nothing; callers filter by left_len.
std::vector<ShuffleTerm> shuffle_terms(const DiagonalBraiding& b, const Word& w) {
  const std::size_t n = w.size(), d = b.dim();
  std::vector<ShuffleTerm> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t left = 0, right = 0, len = 0;
    Scalar c(1);
    for (std::size_t p = 0; p < n; ++p) {
      if (mask >> p & 1) {
        left = left * d + static_cast<std::size_t>(w[p]);
        ++len;
      } else {
        right = right * d + static_cast<std::size_t>(w[p]);
        for (std::size_t r = p + 1; r < n; ++r)
          if (mask >> r & 1) c *= b.q(static_cast<std::size_t>(w[p]), static_cast<std::size_t>(w[r]));
      }
    }
    out.push_back({len, left, right, std::move(c)});
  }
  return out;
}

void check_degree(std::size_t n, std::size_t cutoff) {
  if (n > cutoff) throw DegreeOutOfRange("degree " + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff));
}

}  // namespace

std::string word_label(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int letter : w) s += "x" + std::to_string(letter);
  return s;
}

BasedSpace tensor_space(const DiagonalBraiding& b, std::size_t n) {
  BasedSpace s;
  const std::size_t total = int_pow(b.dim(), n);
  s.labels.reserve(total);
  for (std::size_t i = 0; i < total; ++i) s.labels.push_back(word_label(word_from_index(i, n, b.dim())));
  return s;
}

Matrix shuffle_coproduct(const DiagonalBraiding& b, std::size_t n, std::size_t a) {
  if (a > n) throw DegreeOutOfRange("coproduct split exceeds degree");
  const std::size_t d = b.dim(), total = int_pow(d, n), rb = int_pow(d, n - a);
  Matrix m(int_pow(d, a) * rb, total);
  for (std::size_t c = 0; c < total; ++c)
    for (const auto& t : shuffle_terms(b, word_from_index(c, n, d)))
      if (t.left_len == a) m.add_to(t.left * rb + t.right, c, t.coeff);
  return m;
}

std::vector<Matrix> shuffle_coproduct(const DiagonalBraiding& b, std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t a = 0; a <= n; ++a) out.push_back(shuffle_coproduct(b, n, a));
  return out;
}

GradedQuotient GradedQuotient::tensor_algebra(const DiagonalBraiding& b, std::size_t cutoff) {
  GradedQuotient q;
  q.braiding_ = b;
  q.cutoff_ = cutoff;
  std::vector<Subspace> ideals;
  for (std::size_t n = 0; n <= cutoff; ++n) ideals.emplace_back(int_pow(b.dim(), n));
  q.build_from_ideals(std::move(ideals));
  return q;
}

void GradedQuotient::build_from_ideals(std::vector<Subspace> ideals) {
  ideals_ = std::move(ideals);
  const std::size_t D = cutoff_, d = braiding_.dim();
  basis_.assign(D + 1, {});
  basis_pos_.assign(D + 1, {});
  ideal_row_.assign(D + 1, {});
  for (std::size_t n = 0; n <= D; ++n) {
    const std::size_t total = int_pow(d, n);
    basis_pos_[n].assign(total, -1);
    ideal_row_[n].assign(total, -1);
    for (std::size_t k = 0; k < ideals_[n].dim(); ++k)
      ideal_row_[n][ideals_[n].pivots()[k]] = static_cast<long>(k);
    for (std::size_t w = 0; w < total; ++w) {
      if (ideal_row_[n][w] >= 0) continue;
      basis_pos_[n][w] = static_cast<long>(basis_[n].size());
      basis_[n].push_back(w);
    }
  }

  // Block jobs: mul (a, b) with a + b <= D, and cop (n, a).
  std::vector<std::pair<std::size_t, std::size_t>> mul_jobs, cop_jobs;
  for (std::size_t a = 0; a <= D; ++a)
    for (std::size_t b = 0; a + b <= D; ++b) mul_jobs.emplace_back(a, b);
  for (std::size_t n = 0; n <= D; ++n) cop_jobs.emplace_back(n, 0);

  mul_.assign(D + 1, std::vector<Matrix>(D + 1));
  cop_.assign(D + 1, {});
  std::vector<Matrix> mul_out(mul_jobs.size());
  std::vector<std::vector<Matrix>> cop_out(cop_jobs.size());
  parallel_for(mul_jobs.size() + cop_jobs.size(), [&](std::size_t job) {
    if (job < mul_jobs.size()) {
      auto [a, b] = mul_jobs[job];
      const std::size_t da = dim(a), db = dim(b), shift = int_pow(d, b);
      Matrix mt(da * db, dim(a + b));
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
          mt.set_row(i * db + j, project_word(a + b, basis_[a][i] * shift + basis_[b][j]));
      mul_out[job] = mt.transpose();
      return;
    }
    const std::size_t n = cop_jobs[job - mul_jobs.size()].first;
    std::vector<Matrix> blocks;
    std::vector<Matrix> cols;  // transposed blocks, row = basis word of Q_n
    for (std::size_t a = 0; a <= n; ++a) cols.emplace_back(dim(n), dim(a) * dim(n - a));
    for (std::size_t k = 0; k < dim(n); ++k) {
      std::vector<std::map<std::size_t, Scalar>> acc(n + 1);
      for (const auto& t : shuffle_terms(braiding_, word_from_index(basis_[n][k], n, d))) {
        const std::size_t a = t.left_len, db = dim(n - a);
        SparseRow l = project_word(a, t.left);
        if (l.empty()) continue;
        SparseRow r = project_word(n - a, t.right);
        for (const auto& x : l)
          for (const auto& y : r) acc[a][x.col * db + y.col] += t.coeff * x.val * y.val;
      }
      for (std::size_t a = 0; a <= n; ++a) {
        SparseRow row;
        for (auto& [c, v] : acc[a])
          if (!v.is_zero()) row.push_back({c, std::move(v)});
        cols[a].set_row(k, std::move(row));
      }
    }
    for (auto& c : cols) blocks.push_back(c.transpose());
    cop_out[job - mul_jobs.size()] = std::move(blocks);
  });
  for (std::size_t j = 0; j < mul_jobs.size(); ++j) mul_[mul_jobs[j].first][mul_jobs[j].second] = std::move(mul_out[j]);
  for (std::size_t j = 0; j < cop_jobs.size(); ++j) cop_[cop_jobs[j].first] = std::move(cop_out[j]);
}

std::size_t GradedQuotient::dim(std::size_t n) const {
  check_degree(n, cutoff_);
  return basis_[n].size();
}

std::vector<std::size_t> GradedQuotient::dims() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= cutoff_; ++n) out.push_back(dim(n));
  return out;
}

const std::vector<std::size_t>& GradedQuotient::basis_words(std::size_t n) const {
  check_degree(n, cutoff_);
  return basis_[n];
}

std::vector<std::string> GradedQuotient::labels(std::size_t n) const {
  std::vector<std::string> out;
  for (std::size_t w : basis_words(n)) out.push_back(word_label(word_from_index(w, n, letters())));
  return out;
}

const Subspace& GradedQuotient::ideal(std::size_t n) const {
  check_degree(n, cutoff_);
  return ideals_[n];
}

SparseRow GradedQuotient::project_word(std::size_t n, std::size_t word) const {
  long b = basis_pos_[n][word];
  if (b >= 0) return {{static_cast<std::size_t>(b), Scalar(1)}};
  // e_w = (e_w - row) + row and row ∈ I, where row has pivot w.
  SparseRow out;
  for (const auto& e : ideals_[n].rows()[static_cast<std::size_t>(ideal_row_[n][word])]) {
    long pos = basis_pos_[n][e.col];
    if (pos >= 0) out.push_back({static_cast<std::size_t>(pos), -e.val});
  }
  return out;
}

SparseRow GradedQuotient::project(std::size_t n, const SparseRow& v) const {
  check_degree(n, cutoff_);
  std::map<std::size_t, Scalar> acc;
  for (const auto& e : v) {
    if (e.col >= basis_pos_[n].size()) throw DimensionMismatch("tensor vector exceeds degree dimension");
    for (const auto& x : project_word(n, e.col)) acc[x.col] += e.val * x.val;
  }
  SparseRow out;
  for (auto& [c, s] : acc)
    if (!s.is_zero()) out.push_back({c, std::move(s)});
  return out;
}

SparseRow GradedQuotient::lift(std::size_t n, const SparseRow& coords) const {
  check_degree(n, cutoff_);
  SparseRow out;
  for (const auto& e : coords) out.push_back({basis_[n].at(e.col), e.val});
  return out;
}

const Matrix& GradedQuotient::mul(std::size_t a, std::size_t b) const {
  check_degree(a + b, cutoff_);
  return mul_[a][b];
}

const Matrix& GradedQuotient::cop(std::size_t n, std::size_t a) const {
  check_degree(n, cutoff_);
  if (a > n) throw DegreeOutOfRange("coproduct split exceeds degree");
  return cop_[n][a];
}

PrimitiveReport GradedQuotient::primitives(std::size_t n) const {
  if (n < 1) throw DegreeOutOfRange("primitives are computed in degrees >= 1");
  check_degree(n, cutoff_);
  PrimitiveReport r;
  r.degree = n;
  if (n == 1) {
    r.space = Subspace::full(dim(1));
    return r;
  }
  std::vector<Matrix> blocks;
  for (std::size_t a = 1; a < n; ++a) blocks.push_back(cop_[n][a]);
  r.space = kernel(vstack(blocks));
  return r;
}

bool GradedQuotient::is_primitive(const HomogeneousElement& x) const {
  check_degree(x.degree, cutoff_);
  if (x.coords.size() != dim(x.degree)) throw DimensionMismatch("element has wrong length for its degree");
  for (std::size_t a = 1; a < x.degree; ++a) {
    Vector img = cop_[x.degree][a].apply(x.coords);
    for (const auto& s : img)
      if (!s.is_zero()) return false;
  }
  return true;
}

GradedQuotient GradedQuotient::quotient_by_hopf_ideal(const std::vector<HomogeneousElement>& gens) const {
  std::vector<std::vector<SparseRow>> new_gens(cutoff_ + 1);
  for (const auto& g : gens) {
    if (g.degree < 2) throw DegreeOutOfRange("ideal generators must have degree >= 2");
    check_degree(g.degree, cutoff_);
    if (!is_primitive(g)) throw NonPrimitiveGenerator("generator of degree " + std::to_string(g.degree) + " is not primitive");
    new_gens[g.degree].push_back(lift(g.degree, to_sparse(g.coords)));
  }
  if (gens.empty()) return *this;
  const std::size_t d = letters();
  std::vector<Subspace> ideals;
  ideals.push_back(ideals_[0]);
  ideals.push_back(ideals_[1]);
  for (std::size_t n = 2; n <= cutoff_; ++n) {
    // I_n = old I_n + gens_n + I_{n-1} V + V I_{n-1}.
    std::vector<SparseRow> span = ideals_[n].rows();
    span.insert(span.end(), new_gens[n].begin(), new_gens[n].end());
    const std::size_t high = int_pow(d, n - 1);
    for (const auto& r : ideals[n - 1].rows()) {
      for (std::size_t l = 0; l < d; ++l) {
        SparseRow right, left;
        for (const auto& e : r) {
          right.push_back({e.col * d + l, e.val});
          left.push_back({l * high + e.col, e.val});
        }
        span.push_back(std::move(right));
        span.push_back(std::move(left));
      }
    }
    ideals.push_back(Subspace::span(int_pow(d, n), span));
  }
  GradedQuotient q;
  q.braiding_ = braiding_;
  q.cutoff_ = cutoff_;
  q.build_from_ideals(std::move(ideals));
  return q;
}

bool GradedQuotient::generated_in_degree_one() const {
  for (std::size_t n = 2; n <= cutoff_; ++n)
    if (rank(mul_[1][n - 1]) != dim(n)) return false;
  return true;
}

}  // namespace nf
