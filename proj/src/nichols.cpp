#include "nichols_forge/nichols.hpp"

#include <algorithm>
#include <numeric>

#include "nichols_forge/errors.hpp"
#include "nichols_forge/parallel.hpp"

namespace nf {

const char* to_string(Termination t) {
  return t == Termination::Finite ? "finite" : "undetermined-at-cutoff";
}

NicholsReport nichols_compute(const DiagonalBraiding& b, std::size_t cutoff) {
  if (cutoff < 2) throw InvalidParameter("degree cutoff must be at least 2");
  NicholsReport r;
  r.braiding = b;
  r.cutoff = cutoff;
  auto q = std::make_shared<GradedQuotient>(GradedQuotient::tensor_algebra(b, cutoff));
  for (std::size_t iter = 0;; ++iter) {
    std::size_t found = 0;
    for (std::size_t n = 2; n <= cutoff; ++n) {
      PrimitiveReport p = q->primitives(n);
      if (p.dim() == 0) continue;
      std::vector<HomogeneousElement> gens;
      for (const auto& row : p.space.rows()) gens.push_back({n, to_dense(row, q->dim(n))});
      r.relations.push_back({iter, n, p.dim()});
      q = std::make_shared<GradedQuotient>(q->quotient_by_hopf_ideal(gens));
      found = p.dim();
      break;
    }
    if (found == 0) break;
  }
  r.dims = q->dims();
  r.quotient = q;
  auto zero = std::find(r.dims.begin(), r.dims.end(), std::size_t{0});
  if (zero != r.dims.end() && q->generated_in_degree_one()) {
    r.termination = Termination::Finite;
    r.top_degree = static_cast<std::size_t>(zero - r.dims.begin()) - 1;
    r.total = std::accumulate(r.dims.begin(), zero, std::size_t{0});
  }
  return r;
}

bool oracle_within_cutoff(const DiagonalBraiding& b, std::size_t n) {
  if (n > 9) return false;
  double work = 1;
  for (std::size_t k = 0; k < n; ++k) work *= static_cast<double>(b.dim());
  for (std::size_t k = 2; k <= n; ++k) work *= static_cast<double>(k);
  return work <= kOracleBudget;
}

std::size_t symmetrizer_rank(const DiagonalBraiding& b, std::size_t n) {
  if (!oracle_within_cutoff(b, n))
    throw OracleCutoffExceeded("symmetrizer of degree " + std::to_string(n) + " exceeds the oracle budget");
  const std::size_t d = b.dim();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= d;
  if (n == 0) return 1;
  std::vector<Permutation> perms;
  Permutation w(n);
  std::iota(w.begin(), w.end(), 0);
  do perms.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));

  // Column c of Ω_n: Σ_w (Π_{p<r, w(p)>w(r)} q_{i_p i_r}) e_{w·c}.
  std::vector<SparseRow> columns(total);
  parallel_for(total, [&](std::size_t c) {
    std::vector<int> letters(n);
    std::size_t x = c;
    for (std::size_t p = n; p-- > 0;) {
      letters[p] = static_cast<int>(x % d);
      x /= d;
    }
    std::vector<Scalar> acc(total);
    std::vector<int> moved(n);
    for (const auto& perm : perms) {
      Scalar coeff(1);
      for (std::size_t p = 0; p < n; ++p) {
        moved[static_cast<std::size_t>(perm[p])] = letters[p];
        for (std::size_t r = p + 1; r < n; ++r)
          if (perm[p] > perm[r]) coeff *= b.q(static_cast<std::size_t>(letters[p]), static_cast<std::size_t>(letters[r]));
      }
      std::size_t row = 0;
      for (int l : moved) row = row * d + static_cast<std::size_t>(l);
      acc[row] += coeff;
    }
    columns[c] = to_sparse(acc);
  });
  return Subspace::span(total, columns).dim();
}

std::vector<std::size_t> hilbert_series(const NicholsReport& r) {
  if (r.termination == Termination::Finite)
    return std::vector<std::size_t>(r.dims.begin(), r.dims.begin() + static_cast<long>(r.top_degree) + 1);
  return r.dims;
}

bool poincare_symmetric(const NicholsReport& r) {
  if (r.termination != Termination::Finite) return false;
  for (std::size_t n = 0; n <= r.top_degree; ++n)
    if (r.dims[n] != r.dims[r.top_degree - n]) return false;
  return true;
}

}  // namespace nf
