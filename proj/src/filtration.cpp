#include "nichols_forge/filtration.hpp"

#include <algorithm>
#include <numeric>

#include "nichols_forge/dualize.hpp"
#include "nichols_forge/errors.hpp"

namespace nf {

const char* to_string(FiltrationKind k) {
  switch (k) {
    case FiltrationKind::Radical:
      return "radical";
    case FiltrationKind::Coradical:
      return "coradical";
    default:
      return "degree";
  }
}

Subspace HopfFiltration::at(int i) const {
  if (i < lo) return Subspace(ambient);
  if (i > hi) return Subspace::full(ambient);
  return chain[static_cast<std::size_t>(i - lo)];
}

std::vector<std::size_t> HopfFiltration::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : chain) out.push_back(s.dim());
  return out;
}

HopfFiltration radical_filtration(const HopfStructure& t) {
  require_ccc(t);
  auto powers = radical_powers(t);  // J^0 .. J^K = 0
  HopfFiltration f;
  f.kind = FiltrationKind::Radical;
  f.degree_sign = -1;
  f.ambient = t.total_dim();
  const int K = static_cast<int>(powers.size()) - 1;
  f.lo = -K;
  f.hi = 0;
  for (int i = f.lo; i <= 0; ++i) f.chain.push_back(powers[static_cast<std::size_t>(-i)]);
  return f;
}

HopfFiltration coradical_filtration(const HopfStructure& t) {
  require_ccc(t);
  FlatStructure fl = t.flat();
  const std::size_t N = t.total_dim();
  HopfFiltration f;
  f.kind = FiltrationKind::Coradical;
  f.degree_sign = 1;
  f.ambient = N;
  f.lo = -1;
  f.chain.push_back(Subspace(N));
  Subspace h0 = image(fl.unit);
  f.chain.push_back(h0);
  QuotientMap q0 = quotient(N, h0);
  // H_n = Ker((π_{n-1} ⊗ π_0) Δ).
  while (f.chain.back().dim() < N) {
    QuotientMap qp = quotient(N, f.chain.back());
    Subspace next = kernel(kron(qp.projection, q0.projection) * fl.comul);
    if (next == f.chain.back()) throw NotCcc("coradical filtration does not exhaust the algebra");
    f.chain.push_back(std::move(next));
  }
  f.hi = static_cast<int>(f.chain.size()) - 2;
  return f;
}

HopfFiltration degree_filtration(const HopfStructure& t) {
  if (!t.grading) throw NotGraded("degree filtration needs a grading");
  const auto& deg = *t.grading;
  const std::size_t N = t.total_dim();
  HopfFiltration f;
  f.kind = FiltrationKind::Degree;
  f.degree_sign = 1;
  f.ambient = N;
  int top = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  int bottom = deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
  f.lo = bottom - 1;
  f.hi = top;
  for (int i = f.lo; i <= f.hi; ++i) {
    std::vector<SparseRow> rows;
    for (std::size_t g = 0; g < N; ++g)
      if (deg[g] <= i) rows.push_back({{g, Scalar(1)}});
    f.chain.push_back(Subspace::span(N, rows));
  }
  return f;
}

HopfFiltration weight_filtration(const HopfStructure& t, const GradingSplit& s) {
  const std::size_t N = t.total_dim();
  if (s.basis.rows() != N || s.basis.cols() != N || s.level.size() != N)
    throw InvalidFiltration("split does not match the structure");
  HopfFiltration f;
  f.kind = FiltrationKind::Degree;
  f.degree_sign = s.degree_sign;
  f.ambient = N;
  f.lo = N ? *std::min_element(s.level.begin(), s.level.end()) - 1 : -1;
  f.hi = N ? *std::max_element(s.level.begin(), s.level.end()) : 0;
  const Matrix cols = s.basis.transpose();
  for (int i = f.lo; i <= f.hi; ++i) {
    std::vector<SparseRow> rows;
    for (std::size_t c = 0; c < N; ++c)
      if (s.level[c] <= i) rows.push_back(cols.row(c));
    f.chain.push_back(Subspace::span(N, rows));
  }
  return f;
}

namespace {

Subspace tensor_span(const Subspace& a, const Subspace& b) {
  std::vector<SparseRow> rows;
  const std::size_t n = b.ambient();
  for (const auto& x : a.rows())
    for (const auto& y : b.rows()) {
      SparseRow r;
      for (const auto& e : x)
        for (const auto& g : y) r.push_back({e.col * n + g.col, e.val * g.val});
      rows.push_back(std::move(r));
    }
  return Subspace::span(a.ambient() * n, rows);
}

bool maps_into(const Matrix& m, const Subspace& src, const Subspace& dst) {
  if (src.dim() == 0) return true;
  return dst.contains(src.image_under(m));
}

}  // namespace

FiltrationChecks check_filtration(const HopfStructure& t, const HopfFiltration& f) {
  FlatStructure fl = t.flat();
  const std::size_t N = t.total_dim();
  FiltrationChecks c;
  if (f.chain.size() != static_cast<std::size_t>(f.hi - f.lo + 1) || f.ambient != N)
    throw InvalidFiltration("filtration chain does not match its window");
  c.exhaustive = f.at(f.hi).dim() == N;
  c.separated = f.at(f.lo).dim() == 0;
  c.nested = true;
  for (int i = f.lo; i < f.hi; ++i)
    if (!f.at(i + 1).contains(f.at(i))) c.nested = false;
  c.multiplicative = true;
  for (int i = f.lo; i <= f.hi && c.multiplicative; ++i)
    for (int j = f.lo; j <= f.hi && c.multiplicative; ++j)
      if (!maps_into(fl.m, tensor_span(f.at(i), f.at(j)), f.at(i + j))) c.multiplicative = false;
  c.comultiplicative = true;
  for (int k = f.lo; k <= f.hi && c.comultiplicative; ++k) {
    Subspace target(N * N);
    for (int i = f.lo; i <= f.hi; ++i) target = target + tensor_span(f.at(i), f.at(k - i));
    if (!maps_into(fl.comul, f.at(k), target)) c.comultiplicative = false;
  }
  c.counit = true;
  const Subspace below = f.at(-1);
  for (const auto& r : below.rows())
    if (!fl.counit.apply(to_dense(r, N))[0].is_zero()) c.counit = false;
  c.unit = f.at(0).contains(fl.unit.column_vector(0));
  c.antipode = true;
  for (int i = f.lo; i <= f.hi; ++i)
    if (!maps_into(fl.antipode, f.at(i), f.at(i))) c.antipode = false;
  return c;
}

std::vector<int> GradingSplit::degree() const {
  std::vector<int> d;
  for (int l : level) d.push_back(degree_sign * l);
  return d;
}

GradingSplit grading_split(const HopfStructure& t, const HopfFiltration& f) {
  const std::size_t N = t.total_dim();
  if (f.ambient != N || f.chain.size() != static_cast<std::size_t>(f.hi - f.lo + 1))
    throw InvalidFiltration("filtration does not belong to this structure");
  if (f.at(f.hi).dim() != N || f.at(f.lo).dim() != 0) throw InvalidFiltration("filtration is not bounded");
  struct Column {
    std::size_t isotype;
    int degree;
    std::size_t pivot;
    int level;
    SparseRow vec;
  };
  std::vector<Column> cols;
  for (int i = f.lo + 1; i <= f.hi; ++i) {
    const Subspace big = f.at(i), small = f.at(i - 1);
    if (!big.contains(small)) throw InvalidFiltration("filtration is not nested");
    // Complement: rows of R_i whose pivot is not a pivot of R_{i-1}.
    const auto& sp = small.pivots();
    for (std::size_t k = 0; k < big.dim(); ++k) {
      std::size_t p = big.pivots()[k];
      if (std::binary_search(sp.begin(), sp.end(), p)) continue;
      const SparseRow& r = big.rows()[k];
      std::size_t iso = t.object.isotype_of(p);
      for (const auto& e : r)
        if (t.object.isotype_of(e.col) != iso) throw InvalidFiltration("filtration piece is not a subobject");
      cols.push_back({iso, f.degree_sign * i, p, i, r});
    }
  }
  std::stable_sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) {
    if (a.isotype != b.isotype) return a.isotype < b.isotype;
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.pivot < b.pivot;
  });
  GradingSplit s;
  s.lo = f.lo;
  s.hi = f.hi;
  s.degree_sign = f.degree_sign;
  std::vector<SparseRow> rows;
  for (auto& c : cols) {
    s.level.push_back(c.level);
    s.pivot.push_back(c.pivot);
    rows.push_back(std::move(c.vec));
  }
  s.basis = Matrix::from_rows(N, std::move(rows)).transpose();
  // Isotype sizes must match the block layout.
  for (std::size_t i = 0; i < t.object.count(); ++i)
    for (std::size_t k = 0; k < t.object.dim(i); ++k)
      if (cols.size() != N || cols[t.object.offset(i) + k].isotype != i)
        throw InvalidFiltration("adapted basis does not match the isotype decomposition");
  return s;
}

HopfStructure associated_graded(const HopfStructure& t, const HopfFiltration& f) {
  FiltrationChecks checks = check_filtration(t, f);
  if (!checks.all()) throw InvalidFiltration("not a Hopf algebra filtration");
  GradingSplit s = grading_split(t, f);
  FlatStructure fl = t.flat();
  const std::size_t N = t.total_dim();

  // gr_i = R_i / R_{i-1}: π_{i-1} is the quotient by R_{i-1}, and gr_i has basis
  // π_{i-1} of the adapted columns of level i.
  std::map<int, QuotientMap> proj;
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t g = 0; g < N; ++g) members[s.level[g]].push_back(g);
  for (const auto& [lev, idx] : members) proj.emplace(lev, quotient(N, f.at(lev - 1)));
  auto gr_basis = [&](int lev) {
    const auto& idx = members.at(lev);
    std::vector<std::size_t> all(N);
    std::iota(all.begin(), all.end(), 0);
    return proj.at(lev).projection * s.basis.submatrix(all, idx);
  };
  std::map<int, Matrix> grb;
  for (const auto& [lev, idx] : members) grb.emplace(lev, gr_basis(lev));
  auto coords = [&](int lev, const Vector& v) -> Vector {
    // Coordinates of the class of v ∈ R_lev in gr_lev.
    auto x = solve(grb.at(lev), proj.at(lev).projection.apply(v));
    if (!x) throw InvalidFiltration("structure map leaves the filtration");
    return *x;
  };

  FlatStructure out;
  out.m = Matrix(N, N * N);
  out.comul = Matrix(N * N, N);
  out.unit = Matrix(N, 1);
  out.counit = Matrix(1, N);
  out.antipode = Matrix(N, N);
  auto col = [&](std::size_t g) { return s.basis.column_vector(g); };
  std::vector<Vector> basis_cols(N);
  for (std::size_t g = 0; g < N; ++g) basis_cols[g] = col(g);

  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      int lev = s.level[a] + s.level[b];
      if (!members.count(lev)) continue;
      Vector prod = (fl.m * kron(Matrix::column(basis_cols[a]), Matrix::column(basis_cols[b]))).column_vector(0);
      Vector c = coords(lev, prod);
      const auto& idx = members.at(lev);
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (!c[k].is_zero()) out.m.set(idx[k], a * N + b, c[k]);
    }
  for (std::size_t c = 0; c < N; ++c) {
    Vector d = fl.comul.apply(basis_cols[c]);
    for (const auto& [li, ii] : members) {
      int lj = s.level[c] - li;
      if (!members.count(lj)) continue;
      const auto& jj = members.at(lj);
      Matrix qq = kron(proj.at(li).projection, proj.at(lj).projection);
      auto x = solve(kron(grb.at(li), grb.at(lj)), qq.apply(d));
      if (!x) throw InvalidFiltration("coproduct leaves the filtration");
      for (std::size_t p = 0; p < ii.size(); ++p)
        for (std::size_t r = 0; r < jj.size(); ++r) {
          const Scalar& v = (*x)[p * jj.size() + r];
          if (!v.is_zero()) out.comul.set(ii[p] * N + jj[r], c, v);
        }
    }
    Vector sv = fl.antipode.apply(basis_cols[c]);
    Vector sc = coords(s.level[c], sv);
    const auto& idx = members.at(s.level[c]);
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (!sc[k].is_zero()) out.antipode.set(idx[k], c, sc[k]);
    if (s.level[c] == 0) out.counit.set(0, c, fl.counit.apply(basis_cols[c])[0]);
  }
  if (members.count(0)) {
    Vector uc = coords(0, fl.unit.column_vector(0));
    const auto& idx = members.at(0);
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (!uc[k].is_zero()) out.unit.set(idx[k], 0, uc[k]);
  }
  return HopfStructure::from_flat(t.object, out, s.degree());
}

namespace {

struct AdaptedFlat {
  FlatStructure flat;
  ExponentTable table;
};

AdaptedFlat adapted(const HopfStructure& t, const GradingSplit& s) {
  const std::size_t N = t.total_dim();
  if (s.basis.rows() != N || s.basis.cols() != N || s.level.size() != N)
    throw InvalidFiltration("split does not match the structure");
  Matrix P = s.basis, Pi;
  try {
    Pi = inverse(P);
  } catch (const SingularTransform&) {
    throw InvalidFiltration("split basis is singular");
  }
  FlatStructure f = t.flat(), g;
  g.m = Pi * f.m * kron(P, P);
  g.comul = kron(Pi, Pi) * f.comul * P;
  g.unit = Pi * f.unit;
  g.counit = f.counit * P;
  g.antipode = Pi * f.antipode * P;
  AdaptedFlat out{g, {}};
  auto& tab = out.table;
  tab.min_exponent = 0;
  bool first = true;
  auto note = [&](const char* name, int e) {
    ++tab.counts[name][e];
    if (first || e < tab.min_exponent) tab.min_exponent = e;
    first = false;
  };
  const auto& L = s.level;
  for (std::size_t c = 0; c < N; ++c)
    for (const auto& e : g.m.row(c)) note("m", L[e.col / N] + L[e.col % N] - L[c]);
  for (std::size_t r = 0; r < N * N; ++r)
    for (const auto& e : g.comul.row(r)) note("comul", L[e.col] - L[r / N] - L[r % N]);
  for (std::size_t r = 0; r < N; ++r) {
    if (!g.unit.get(r, 0).is_zero()) note("unit", -L[r]);
    if (!g.counit.get(0, r).is_zero()) note("counit", L[r]);
    for (const auto& e : g.antipode.row(r)) note("antipode", L[e.col] - L[r]);
  }
  if (first) tab.min_exponent = 0;
  return out;
}

Matrix keep_zero_exponent(const Matrix& m, const std::function<int(std::size_t, std::size_t)>& exponent) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow row;
    for (const auto& e : m.row(r))
      if (exponent(r, e.col) == 0) row.push_back(e);
    out.set_row(r, std::move(row));
  }
  return out;
}

}  // namespace

ExponentTable exponent_table(const HopfStructure& t, const GradingSplit& s) { return adapted(t, s).table; }

HopfStructure degenerate_limit(const HopfStructure& t, const GradingSplit& s) {
  AdaptedFlat a = adapted(t, s);
  if (!a.table.non_negative()) throw InvalidFiltration("negative λ-exponent: the split does not come from a filtration");
  const std::size_t N = t.total_dim();
  const auto& L = s.level;
  FlatStructure g;
  g.m = keep_zero_exponent(a.flat.m, [&](std::size_t c, std::size_t ab) { return L[ab / N] + L[ab % N] - L[c]; });
  g.comul = keep_zero_exponent(a.flat.comul, [&](std::size_t ab, std::size_t c) { return L[c] - L[ab / N] - L[ab % N]; });
  g.unit = keep_zero_exponent(a.flat.unit, [&](std::size_t r, std::size_t) { return -L[r]; });
  g.counit = keep_zero_exponent(a.flat.counit, [&](std::size_t, std::size_t c) { return L[c]; });
  g.antipode = keep_zero_exponent(a.flat.antipode, [&](std::size_t r, std::size_t c) { return L[c] - L[r]; });
  return HopfStructure::from_flat(t.object, g, s.degree());
}

HopfStructure one_param_orbit(const HopfStructure& t, const GradingSplit& s, const Scalar& lambda) {
  if (lambda.is_zero()) throw InvalidParameter("λ must be nonzero; use degenerate_limit for λ -> 0");
  const std::size_t N = t.total_dim();
  if (s.basis.rows() != N || s.level.size() != N) throw InvalidFiltration("split does not match the structure");
  Matrix D(N, N);
  for (std::size_t g = 0; g < N; ++g) D.set(g, g, lambda.pow(-s.level[g]));
  Matrix phi = s.basis * D * inverse(s.basis);
  return act(split_transform(t.object, phi), t);
}

bool PathReport::constant() const {
  for (std::size_t d : dims)
    if (d != dims.front()) return false;
  return true;
}

bool PathReport::semicontinuous() const {
  for (std::size_t d : dims)
    if (d > limit_dim) return false;
  return true;
}

PathReport primitive_dims_along_path(const HopfStructure& t, const GradingSplit& s, const std::vector<Scalar>& lambdas) {
  PathReport r;
  for (const auto& l : lambdas) r.dims.push_back(primitives_of(one_param_orbit(t, s, l)).dim());
  r.limit_dim = primitives_of(degenerate_limit(t, s)).dim();
  return r;
}

}  // namespace nf
