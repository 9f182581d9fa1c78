#include "nichols_forge/dualize.hpp"

#include <algorithm>

#include "nichols_forge/errors.hpp"
#include "nichols_forge/filtration.hpp"

namespace nf {

namespace {

Matrix flip(std::size_t n) {
  Matrix f(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f.set(b * n + a, a * n + b, Scalar(1));
  return f;
}

}  // namespace

DualResult dual_with_map(const HopfStructure& t) {
  check_shapes(t);
  const DecomposedObject& obj = t.object;
  const LineCategory& cat = obj.category();
  std::vector<Isotype> iso;
  for (const auto& i : obj.isotypes()) iso.push_back({cat.negate(i.label), i.dim});
  DecomposedObject dobj(cat, iso);
  const std::size_t N = obj.total_dim();

  std::vector<std::size_t> position(N);
  for (std::size_t i = 0; i < obj.count(); ++i) {
    long j = dobj.find(cat.negate(obj.isotypes()[i].label));
    for (std::size_t k = 0; k < obj.dim(i); ++k)
      position[obj.offset(i) + k] = dobj.offset(static_cast<std::size_t>(j)) + k;
  }
  Matrix P(N, N);
  for (std::size_t a = 0; a < N; ++a) P.set(position[a], a, Scalar(1));
  Matrix Pt = P.transpose();

  FlatStructure f = t.flat(), g;
  Matrix F = flip(N);
  g.m = P * (f.comul.transpose() * F) * kron(Pt, Pt);
  g.comul = kron(P, P) * (F * f.m.transpose()) * Pt;
  g.unit = P * f.counit.transpose();
  g.counit = f.unit.transpose() * Pt;
  g.antipode = P * f.antipode.transpose() * Pt;

  std::optional<std::vector<int>> grading;
  if (t.grading) {
    std::vector<int> d(N);
    for (std::size_t a = 0; a < N; ++a) d[position[a]] = (*t.grading)[a];
    grading = std::move(d);
  }
  return {HopfStructure::from_flat(dobj, g, grading), std::move(position)};
}

HopfStructure dual_structure(const HopfStructure& t) { return dual_with_map(t).structure; }

HopfStructure graded_dual(const HopfStructure& t) {
  if (!t.grading) throw NotGraded("graded dual needs a grading");
  if (!respects_grading(t)) throw NotGraded("structure maps do not respect the grading");
  return dual_structure(t);
}

Subspace primitives_of(const HopfStructure& t) {
  FlatStructure f = t.flat();
  const std::size_t N = t.total_dim();
  Matrix I = Matrix::identity(N);
  return kernel(f.comul - kron(I, f.unit) - kron(f.unit, I));
}

void require_ccc(const HopfStructure& t) {
  if (!check_connected(t)) throw NotCcc("structure is not connected");
  if (!check_coconnected(t)) throw NotCcc("structure is not coconnected");
}

PairingReport pairing_report(const HopfStructure& t) {
  require_ccc(t);
  DualResult d = dual_with_map(t);
  Subspace p = primitives_of(t);
  Subspace pd = primitives_of(d.structure);
  PairingReport r;
  r.dim_p = p.dim();
  r.dim_p_dual = pd.dim();
  r.pairing = Matrix(pd.dim(), p.dim());
  const std::size_t N = t.total_dim();
  for (std::size_t i = 0; i < pd.dim(); ++i) {
    Vector fi = to_dense(pd.rows()[i], N);
    for (std::size_t j = 0; j < p.dim(); ++j) {
      Scalar s;
      for (const auto& e : p.rows()[j]) s += fi[d.position[e.col]] * e.val;
      if (!s.is_zero()) r.pairing.set(i, j, s);
    }
  }
  r.rank = rank(r.pairing);
  r.nichols = r.dim_p == r.dim_p_dual && r.rank == r.dim_p;
  return r;
}

Subspace generated_subalgebra(const HopfStructure& t, const Subspace& gens) {
  FlatStructure f = t.flat();
  const std::size_t N = t.total_dim();
  Subspace a = image(f.unit);
  while (true) {
    std::vector<SparseRow> rows = a.rows();
    for (const auto& x : a.rows())
      for (const auto& y : gens.rows()) {
        Vector xy(N * N);
        for (const auto& e : x)
          for (const auto& g : y) xy[e.col * N + g.col] += e.val * g.val;
        rows.push_back(to_sparse(f.m.apply(xy)));
      }
    Subspace next = Subspace::span(N, rows);
    if (next.dim() == a.dim()) return next;
    a = std::move(next);
  }
}

GenerationReport generation_check(const HopfStructure& t) {
  require_ccc(t);
  GenerationReport r;
  const std::size_t N = t.total_dim();
  r.generated = generated_subalgebra(t, primitives_of(t)).dim() == N;
  HopfStructure d = dual_structure(t);
  r.dual_generated = generated_subalgebra(d, primitives_of(d)).dim() == N;
  return r;
}

GragrcReport gragrc_check(const HopfStructure& t) {
  require_ccc(t);
  GragrcReport r;
  HopfStructure gra = associated_graded(t, radical_filtration(t));
  HopfStructure grc = associated_graded(t, coradical_filtration(t));
  try {
    IsoSearchStats stats;
    r.witness = graded_iso_search(gra, grc, &stats);
    if (r.witness) {
      r.nichols = true;
      r.note = "isomorphism found after " + std::to_string(stats.candidates_tried) + " candidates";
    } else {
      r.note = stats.truncated ? "search family truncated, no isomorphism found" : "no isomorphism in the searched family";
    }
  } catch (const NotGraded& e) {
    r.note = std::string("iso search not applicable: ") + e.what();
  }
  return r;
}

bool coradical_is_dual_radical(const HopfStructure& t) {
  HopfFiltration h = coradical_filtration(t);
  DualResult d = dual_with_map(t);
  std::vector<Subspace> jd = radical_powers(d.structure);
  const std::size_t N = t.total_dim();
  // Functionals on t written in the original coordinates.
  auto pulled = [&](const Subspace& s) {
    std::vector<SparseRow> rows;
    for (const auto& r : s.rows()) {
      Vector v(N);
      for (std::size_t a = 0; a < N; ++a) v[a] = to_dense(r, N)[d.position[a]];
      rows.push_back(to_sparse(v));
    }
    return Subspace::span(N, rows).annihilator();
  };
  for (int n = h.lo; n <= h.hi; ++n) {
    std::size_t k = static_cast<std::size_t>(n + 1);
    Subspace jk = k < jd.size() ? jd[k] : Subspace(N);
    if (h.at(n) != pulled(jk)) return false;
  }
  return true;
}

}  // namespace nf
