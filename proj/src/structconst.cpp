#include "nichols_forge/structconst.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nichols_forge/dualize.hpp"
#include "nichols_forge/errors.hpp"
#include "nichols_forge/nichols.hpp"
#include "nichols_forge/parallel.hpp"

namespace nf {

// ---- LineCategory ----

LineCategory::LineCategory(std::vector<int> moduli, std::vector<std::vector<Scalar>> pairing)
    : moduli_(std::move(moduli)), pairing_(std::move(pairing)) {
  if (pairing_.size() != moduli_.size()) throw MalformedInput("pairing size does not match label rank");
  for (const auto& row : pairing_) {
    if (row.size() != moduli_.size()) throw MalformedInput("pairing matrix is not square");
    for (const auto& x : row)
      if (x.is_zero()) throw MalformedInput("pairing entries must be nonzero");
  }
  for (int m : moduli_)
    if (m < 0) throw MalformedInput("label moduli must be non-negative");
}

LineCategory LineCategory::free(const DiagonalBraiding& b) {
  return LineCategory(std::vector<int>(b.dim(), 0), b.matrix());
}

LineCategory LineCategory::yetter_drinfeld(const YDDatum& d) {
  validate(d);
  const std::size_t r = d.group.size();
  std::vector<int> moduli(2 * r);
  std::vector<std::vector<Scalar>> pairing(2 * r, std::vector<Scalar>(2 * r, Scalar(1)));
  for (std::size_t j = 0; j < r; ++j) {
    moduli[j] = moduli[r + j] = d.group[j];
    pairing[j][r + j] = Scalar::root_of_unity(d.group[j], 1);
  }
  return LineCategory(std::move(moduli), std::move(pairing));
}

std::vector<Label> LineCategory::yd_letter_labels(const YDDatum& d) {
  validate(d);
  const std::size_t r = d.group.size();
  std::vector<Label> out;
  for (const auto& p : d.points) {
    Label l(2 * r);
    for (std::size_t j = 0; j < r; ++j) {
      l[j] = p.g[j];
      long c = -1;
      for (long k = 0; k < d.group[j]; ++k)
        if (Scalar::root_of_unity(d.group[j], k) == p.chi[j]) c = k;
      if (c < 0) throw MalformedInput("character value is not a root of unity of the factor order");
      l[r + j] = c;
    }
    out.push_back(std::move(l));
  }
  return out;
}

Label LineCategory::normalize(Label l) const {
  if (l.size() != rank()) throw MalformedInput("label has the wrong rank");
  for (std::size_t a = 0; a < l.size(); ++a)
    if (moduli_[a] > 0) l[a] = ((l[a] % moduli_[a]) + moduli_[a]) % moduli_[a];
  return l;
}

Label LineCategory::add(const Label& a, const Label& b) const {
  Label s(rank());
  for (std::size_t k = 0; k < rank(); ++k) s[k] = a[k] + b[k];
  return normalize(std::move(s));
}

Label LineCategory::negate(const Label& a) const {
  Label s(rank());
  for (std::size_t k = 0; k < rank(); ++k) s[k] = -a[k];
  return normalize(std::move(s));
}

Scalar LineCategory::braid(const Label& a, const Label& b) const {
  Scalar s(1);
  for (std::size_t x = 0; x < rank(); ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y = 0; y < rank(); ++y)
      if (b[y] != 0 && !pairing_[x][y].is_one()) s *= pairing_[x][y].pow(a[x] * b[y]);
  }
  return s;
}

std::vector<Label> LineCategory::unit_vectors() const {
  std::vector<Label> out;
  for (std::size_t k = 0; k < rank(); ++k) {
    Label l(rank(), 0);
    l[k] = 1;
    out.push_back(normalize(l));
  }
  return out;
}

// ---- DecomposedObject ----

DecomposedObject::DecomposedObject(LineCategory cat, std::vector<Isotype> isotypes) : cat_(std::move(cat)) {
  for (auto& iso : isotypes) {
    iso.label = cat_.normalize(iso.label);
    if (iso.dim == 0) throw MalformedInput("isotypes must have positive multiplicity");
  }
  std::sort(isotypes.begin(), isotypes.end(), [](const Isotype& a, const Isotype& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < isotypes.size(); ++i)
    if (isotypes[i].label == isotypes[i - 1].label) throw MalformedInput("duplicate isotype label");
  iso_ = std::move(isotypes);
  offsets_.resize(iso_.size());
  for (std::size_t i = 0; i < iso_.size(); ++i) {
    offsets_[i] = total_;
    total_ += iso_[i].dim;
  }
  prod_.assign(iso_.size(), std::vector<long>(iso_.size(), -1));
  for (std::size_t i = 0; i < iso_.size(); ++i)
    for (std::size_t j = 0; j < iso_.size(); ++j) prod_[i][j] = find(cat_.add(iso_[i].label, iso_[j].label));
}

std::size_t DecomposedObject::isotype_of(std::size_t global) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

long DecomposedObject::find(const Label& l) const {
  Label n = cat_.normalize(l);
  auto it = std::lower_bound(iso_.begin(), iso_.end(), n, [](const Isotype& a, const Label& b) { return a.label < b; });
  if (it == iso_.end() || it->label != n) return -1;
  return static_cast<long>(it - iso_.begin());
}

// ---- HopfStructure ----

HopfStructure HopfStructure::zeros(const DecomposedObject& obj) {
  HopfStructure t;
  t.object = obj;
  const std::size_t c = obj.count();
  t.mul.assign(c, std::vector<Matrix>(c));
  t.comul.assign(c, std::vector<Matrix>(c));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      long k = obj.product(i, j);
      if (k < 0) continue;
      std::size_t dk = obj.dim(static_cast<std::size_t>(k));
      t.mul[i][j] = Matrix(dk, obj.dim(i) * obj.dim(j));
      t.comul[i][j] = Matrix(obj.dim(i) * obj.dim(j), dk);
    }
  long z = obj.unit_index();
  std::size_t d0 = z >= 0 ? obj.dim(static_cast<std::size_t>(z)) : 0;
  t.unit = Matrix(d0, 1);
  t.counit = Matrix(1, d0);
  for (std::size_t i = 0; i < c; ++i) t.antipode.emplace_back(obj.dim(i), obj.dim(i));
  return t;
}

HopfStructure HopfStructure::trivial(const LineCategory& cat) {
  DecomposedObject obj(cat, {{cat.zero(), 1}});
  HopfStructure t = zeros(obj);
  t.mul[0][0].set(0, 0, Scalar(1));
  t.comul[0][0].set(0, 0, Scalar(1));
  t.unit.set(0, 0, Scalar(1));
  t.counit.set(0, 0, Scalar(1));
  t.antipode[0].set(0, 0, Scalar(1));
  t.grading = std::vector<int>{0};
  return t;
}

void check_shapes(const HopfStructure& t) {
  const auto& obj = t.object;
  const std::size_t c = obj.count();
  auto fail = [](const std::string& what) { throw MalformedBlock(what); };
  if (t.mul.size() != c || t.comul.size() != c || t.antipode.size() != c) fail("block tables have the wrong size");
  for (std::size_t i = 0; i < c; ++i) {
    if (t.mul[i].size() != c || t.comul[i].size() != c) fail("block tables have the wrong size");
    for (std::size_t j = 0; j < c; ++j) {
      long k = obj.product(i, j);
      std::size_t dk = k >= 0 ? obj.dim(static_cast<std::size_t>(k)) : 0;
      std::size_t dij = k >= 0 ? obj.dim(i) * obj.dim(j) : 0;
      const std::string where = " block (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (t.mul[i][j].rows() != dk || t.mul[i][j].cols() != dij) fail("multiplication" + where + " has the wrong shape");
      if (t.comul[i][j].rows() != dij || t.comul[i][j].cols() != dk) fail("comultiplication" + where + " has the wrong shape");
    }
    if (t.antipode[i].rows() != obj.dim(i) || t.antipode[i].cols() != obj.dim(i))
      fail("antipode block " + std::to_string(i) + " has the wrong shape");
  }
  long z = obj.unit_index();
  std::size_t d0 = z >= 0 ? obj.dim(static_cast<std::size_t>(z)) : 0;
  if (t.unit.rows() != d0 || t.unit.cols() != 1) fail("unit block has the wrong shape");
  if (t.counit.rows() != 1 || t.counit.cols() != d0) fail("counit block has the wrong shape");
  if (t.grading && t.grading->size() != obj.total_dim()) fail("grading has the wrong length");
}

FlatStructure HopfStructure::flat() const {
  check_shapes(*this);
  const auto& obj = object;
  const std::size_t N = obj.total_dim(), c = obj.count();
  FlatStructure f;
  std::vector<SparseRow> mt(N * N), ct(N);  // transposed: rows of m^T, rows of Δ^T
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      long k = obj.product(i, j);
      if (k < 0) continue;
      const std::size_t oi = obj.offset(i), oj = obj.offset(j), ok = obj.offset(static_cast<std::size_t>(k));
      const std::size_t dj = obj.dim(j);
      Matrix mtb = mul[i][j].transpose();
      for (std::size_t col = 0; col < mtb.rows(); ++col) {
        std::size_t g = (oi + col / dj) * N + oj + col % dj;
        for (const auto& e : mtb.row(col)) mt[g].push_back({ok + e.col, e.val});
      }
      Matrix ctb = comul[i][j].transpose();
      for (std::size_t col = 0; col < ctb.rows(); ++col)
        for (const auto& e : ctb.row(col)) ct[ok + col].push_back({(oi + e.col / dj) * N + oj + e.col % dj, e.val});
    }
  for (auto& r : mt) std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  for (auto& r : ct) std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  f.m = Matrix::from_rows(N, std::move(mt)).transpose();
  f.comul = Matrix::from_rows(N * N, std::move(ct)).transpose();
  f.unit = Matrix(N, 1);
  f.counit = Matrix(1, N);
  long z = obj.unit_index();
  if (z >= 0) {
    std::size_t oz = obj.offset(static_cast<std::size_t>(z));
    for (std::size_t r = 0; r < unit.rows(); ++r) f.unit.set(oz + r, 0, unit.get(r, 0));
    for (std::size_t r = 0; r < counit.cols(); ++r) f.counit.set(0, oz + r, counit.get(0, r));
  }
  f.antipode = direct_sum(antipode);
  return f;
}

HopfStructure HopfStructure::from_flat(const DecomposedObject& obj, const FlatStructure& f,
                                       std::optional<std::vector<int>> grading) {
  const std::size_t N = obj.total_dim();
  if (f.m.rows() != N || f.m.cols() != N * N || f.comul.rows() != N * N || f.comul.cols() != N ||
      f.unit.rows() != N || f.unit.cols() != 1 || f.counit.rows() != 1 || f.counit.cols() != N ||
      f.antipode.rows() != N || f.antipode.cols() != N)
    throw MalformedBlock("flat structure maps have the wrong shape");
  HopfStructure t = zeros(obj);
  t.grading = std::move(grading);
  auto iso = [&](std::size_t g) { return obj.isotype_of(g); };
  Matrix mt = f.m.transpose();
  for (std::size_t col = 0; col < N * N; ++col) {
    std::size_t a = col / N, b = col % N, i = iso(a), j = iso(b);
    long k = obj.product(i, j);
    for (const auto& e : mt.row(col)) {
      if (k < 0 || iso(e.col) != static_cast<std::size_t>(k))
        throw MalformedBlock("multiplication does not respect the isotype decomposition");
      t.mul[i][j].set(e.col - obj.offset(static_cast<std::size_t>(k)),
                      (a - obj.offset(i)) * obj.dim(j) + (b - obj.offset(j)), e.val);
    }
  }
  for (std::size_t row = 0; row < N * N; ++row) {
    std::size_t a = row / N, b = row % N, i = iso(a), j = iso(b);
    long k = obj.product(i, j);
    for (const auto& e : f.comul.row(row)) {
      if (k < 0 || iso(e.col) != static_cast<std::size_t>(k))
        throw MalformedBlock("comultiplication does not respect the isotype decomposition");
      t.comul[i][j].set((a - obj.offset(i)) * obj.dim(j) + (b - obj.offset(j)),
                        e.col - obj.offset(static_cast<std::size_t>(k)), e.val);
    }
  }
  long z = obj.unit_index();
  for (std::size_t r = 0; r < N; ++r) {
    Scalar u = f.unit.get(r, 0), e = f.counit.get(0, r);
    if (u.is_zero() && e.is_zero()) continue;
    if (z < 0 || iso(r) != static_cast<std::size_t>(z)) throw MalformedBlock("unit or counit leaves the unit isotype");
    std::size_t off = obj.offset(static_cast<std::size_t>(z));
    t.unit.set(r - off, 0, u);
    t.counit.set(0, r - off, e);
  }
  for (std::size_t r = 0; r < N; ++r)
    for (const auto& e : f.antipode.row(r)) {
      std::size_t i = iso(r);
      if (iso(e.col) != i) throw MalformedBlock("antipode does not respect the isotype decomposition");
      t.antipode[i].set(r - obj.offset(i), e.col - obj.offset(i), e.val);
    }
  if (t.grading && t.grading->size() != N) throw MalformedBlock("grading has the wrong length");
  return t;
}

bool operator==(const HopfStructure& a, const HopfStructure& b) {
  return a.object == b.object && a.mul == b.mul && a.comul == b.comul && a.unit == b.unit && a.counit == b.counit &&
         a.antipode == b.antipode && a.grading == b.grading;
}

// ---- axioms ----

const char* axiom_name(int a) {
  static const char* names[] = {"assoc",          "unit",          "coassoc",    "counit", "bialgebra",
                                "antipode-left", "antipode-right", "well-formed"};
  return names[a];
}

bool AxiomReport::pass() const {
  for (bool b : ok)
    if (!b) return false;
  return true;
}

namespace {

std::string tuple(std::initializer_list<std::size_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + ")";
}

// v ⊗ w -> w ⊗ v on K^p ⊗ K^q.
Matrix flip(std::size_t p, std::size_t q) {
  Matrix m(q * p, p * q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) m.set(j * p + i, i * q + j, Scalar(1));
  return m;
}

}  // namespace

AxiomReport verify_axioms(const HopfStructure& t) {
  check_shapes(t);
  AxiomReport rep;
  const auto& obj = t.object;
  const auto& cat = obj.category();
  const std::size_t c = obj.count();
  auto fail = [&](int ax, const std::string& where) {
    if (rep.ok[ax]) rep.first_failure[ax] = where;
    rep.ok[ax] = false;
  };
  auto I = [&](std::size_t i) { return Matrix::identity(obj.dim(i)); };
  auto lab = [&](std::size_t i) -> const Label& { return obj.isotypes()[i].label; };

  const long zl = obj.unit_index();
  if (zl < 0) {
    fail(kWellFormed, "no unit isotype");
    fail(kUnit, "no unit isotype");
    fail(kCounit, "no unit isotype");
    fail(kAntipodeLeft, "no unit isotype");
    fail(kAntipodeRight, "no unit isotype");
  }
  if (t.grading && t.grading->size() != obj.total_dim()) fail(kWellFormed, "grading length");

  // Each axiom family is independent; run them as separate jobs and merge.
  std::vector<AxiomReport> parts(5);
  parallel_for(parts.size(), [&](std::size_t job) {
    AxiomReport& r = parts[job];
    auto pf = [&](int ax, const std::string& where) {
      if (r.ok[ax]) r.first_failure[ax] = where;
      r.ok[ax] = false;
    };
    if (job == 0) {
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
          for (std::size_t l = 0; l < c; ++l) {
            long tgt = obj.find(cat.add(cat.add(lab(i), lab(j)), lab(l)));
            if (tgt < 0) continue;
            long a = obj.product(i, j), b = obj.product(j, l);
            std::size_t dt = obj.dim(static_cast<std::size_t>(tgt)), ds = obj.dim(i) * obj.dim(j) * obj.dim(l);
            Matrix lhs = a >= 0 ? t.mul[static_cast<std::size_t>(a)][l] * kron(t.mul[i][j], I(l)) : Matrix(dt, ds);
            Matrix rhs = b >= 0 ? t.mul[i][static_cast<std::size_t>(b)] * kron(I(i), t.mul[j][l]) : Matrix(dt, ds);
            if (lhs != rhs) pf(kAssoc, "m(m⊗1) ≠ m(1⊗m) at " + tuple({i, j, l}));
            // Coassociativity on B_tgt -> B_i ⊗ B_j ⊗ B_l.
            Matrix clhs = a >= 0 ? kron(t.comul[i][j], I(l)) * t.comul[static_cast<std::size_t>(a)][l] : Matrix(ds, dt);
            Matrix crhs = b >= 0 ? kron(I(i), t.comul[j][l]) * t.comul[i][static_cast<std::size_t>(b)] : Matrix(ds, dt);
            if (clhs != crhs) pf(kCoassoc, "(Δ⊗1)Δ ≠ (1⊗Δ)Δ at " + tuple({i, j, l}));
          }
    } else if (job == 1 && zl >= 0) {
      const std::size_t z = static_cast<std::size_t>(zl);
      for (std::size_t i = 0; i < c; ++i) {
        if (t.mul[z][i] * kron(t.unit, I(i)) != I(i)) pf(kUnit, "m(u⊗1) ≠ 1 on isotype " + std::to_string(i));
        if (t.mul[i][z] * kron(I(i), t.unit) != I(i)) pf(kUnit, "m(1⊗u) ≠ 1 on isotype " + std::to_string(i));
        if (kron(t.counit, I(i)) * t.comul[z][i] != I(i)) pf(kCounit, "(ε⊗1)Δ ≠ 1 on isotype " + std::to_string(i));
        if (kron(I(i), t.counit) * t.comul[i][z] != I(i)) pf(kCounit, "(1⊗ε)Δ ≠ 1 on isotype " + std::to_string(i));
      }
    } else if (job == 2) {
      // Δ m = (m⊗m)(1⊗σ⊗1)(Δ⊗Δ) on B_i ⊗ B_j, compared per output pair (p, r).
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          const Label total = cat.add(lab(i), lab(j));
          const long tgt = obj.product(i, j);
          std::map<std::pair<std::size_t, std::size_t>, Matrix> rhs;
          for (std::size_t a = 0; a < c; ++a) {
            long b = obj.find(cat.add(lab(i), cat.negate(lab(a))));
            if (b < 0) continue;
            for (std::size_t e = 0; e < c; ++e) {
              long f = obj.find(cat.add(lab(j), cat.negate(lab(e))));
              if (f < 0) continue;
              const std::size_t bb = static_cast<std::size_t>(b), ff = static_cast<std::size_t>(f);
              long p = obj.product(a, e), q = obj.product(bb, ff);
              if (p < 0 || q < 0) continue;
              Matrix sigma = flip(obj.dim(bb), obj.dim(e)).scaled(cat.braid(lab(bb), lab(e)));
              Matrix term = kron(t.mul[a][e], t.mul[bb][ff]) * kron(kron(I(a), sigma), I(ff)) *
                            kron(t.comul[a][bb], t.comul[e][ff]);
              auto key = std::make_pair(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
              auto it = rhs.find(key);
              if (it == rhs.end()) rhs.emplace(key, std::move(term));
              else it->second += term;
            }
          }
          for (std::size_t p = 0; p < c; ++p) {
            long q = obj.find(cat.add(total, cat.negate(lab(p))));
            if (q < 0) continue;
            const std::size_t qq = static_cast<std::size_t>(q);
            Matrix lhs = tgt >= 0 ? t.comul[p][qq] * t.mul[i][j] : Matrix(obj.dim(p) * obj.dim(qq), obj.dim(i) * obj.dim(j));
            auto it = rhs.find({p, qq});
            bool eq = it == rhs.end() ? lhs.is_zero() : lhs == it->second;
            if (!eq) pf(kBialgebra, "Δm ≠ (m⊗m)(1⊗σ⊗1)(Δ⊗Δ) at " + tuple({i, j, p, qq}));
          }
        }
      if (zl >= 0) {
        const std::size_t z = static_cast<std::size_t>(zl);
        for (std::size_t i = 0; i < c; ++i)
          for (std::size_t j = 0; j < c; ++j) {
            if (obj.product(i, j) != zl) continue;
            Matrix expect = (i == z && j == z) ? kron(t.counit, t.counit) : Matrix(1, obj.dim(i) * obj.dim(j));
            if (t.counit * t.mul[i][j] != expect) pf(kBialgebra, "ε m ≠ ε⊗ε at " + tuple({i, j}));
            Matrix expect_u = (i == z && j == z) ? kron(t.unit, t.unit) : Matrix(obj.dim(i) * obj.dim(j), 1);
            if (t.comul[i][j] * t.unit != expect_u) pf(kBialgebra, "Δ u ≠ u⊗u at " + tuple({i, j}));
          }
        if (t.counit * t.unit != Matrix::from_dense({{1}})) pf(kBialgebra, "ε u ≠ 1");
      }
    } else if ((job == 3 || job == 4) && zl >= 0) {
      const std::size_t z = static_cast<std::size_t>(zl);
      const int ax = job == 3 ? kAntipodeLeft : kAntipodeRight;
      for (std::size_t k = 0; k < c; ++k) {
        Matrix sum(obj.dim(k), obj.dim(k));
        for (std::size_t i = 0; i < c; ++i)
          for (std::size_t j = 0; j < c; ++j) {
            if (obj.product(i, j) != static_cast<long>(k)) continue;
            Matrix mid = job == 3 ? kron(t.antipode[i], I(j)) : kron(I(i), t.antipode[j]);
            sum += t.mul[i][j] * mid * t.comul[i][j];
          }
        Matrix expect = k == z ? t.unit * t.counit : Matrix(obj.dim(k), obj.dim(k));
        if (sum != expect)
          pf(ax, std::string(job == 3 ? "m(S⊗1)Δ" : "m(1⊗S)Δ") + " ≠ uε on isotype " + std::to_string(k));
      }
    }
  });
  for (const auto& p : parts)
    for (int ax = 0; ax < kAxiomCount; ++ax)
      if (!p.ok[ax]) fail(ax, p.first_failure[ax]);
  return rep;
}

// ---- ccc ----

std::vector<Subspace> radical_powers(const HopfStructure& t) {
  FlatStructure f = t.flat();
  const std::size_t N = t.total_dim();
  Subspace J = kernel(f.counit);
  std::vector<Subspace> out{Subspace::full(N), J};
  Matrix bj = J.basis_matrix();
  while (out.back().dim() > 0) {
    Subspace next = image(f.m * kron(out.back().basis_matrix(), bj));
    if (next == out.back()) break;  // stable and nonzero: not nilpotent
    out.push_back(std::move(next));
  }
  return out;
}

bool check_connected(const HopfStructure& t) {
  // The chain strictly decreases until it stabilizes, so J^n = 0 for n = dim B
  // exactly when it reaches zero.
  return radical_powers(t).back().dim() == 0;
}

bool check_coconnected(const HopfStructure& t) { return check_connected(dual_structure(t)); }

// ---- Γ-action ----

BlockTransform identity_transform(const DecomposedObject& obj) {
  BlockTransform g;
  for (std::size_t i = 0; i < obj.count(); ++i) g.push_back(Matrix::identity(obj.dim(i)));
  return g;
}

Matrix flat_transform(const DecomposedObject& obj, const BlockTransform& g) {
  if (g.size() != obj.count()) throw DimensionMismatch("transform has the wrong number of blocks");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i].rows() != obj.dim(i) || g[i].cols() != obj.dim(i))
      throw DimensionMismatch("transform block " + std::to_string(i) + " has the wrong shape");
  return direct_sum(g);
}

BlockTransform split_transform(const DecomposedObject& obj, const Matrix& flat) {
  const std::size_t N = obj.total_dim();
  if (flat.rows() != N || flat.cols() != N) throw DimensionMismatch("transform has the wrong shape");
  BlockTransform g;
  for (std::size_t i = 0; i < obj.count(); ++i) g.emplace_back(obj.dim(i), obj.dim(i));
  for (std::size_t r = 0; r < N; ++r)
    for (const auto& e : flat.row(r)) {
      std::size_t i = obj.isotype_of(r);
      if (obj.isotype_of(e.col) != i) throw MalformedBlock("transform mixes isotypes");
      g[i].set(r - obj.offset(i), e.col - obj.offset(i), e.val);
    }
  return g;
}

BlockTransform compose(const BlockTransform& a, const BlockTransform& b) {
  if (a.size() != b.size()) throw DimensionMismatch("transforms have different block counts");
  BlockTransform out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return out;
}

HopfStructure act(const BlockTransform& g, const HopfStructure& t) {
  Matrix G = flat_transform(t.object, g);
  Matrix Gi = inverse(G);
  FlatStructure f = t.flat(), h;
  h.m = G * f.m * kron(Gi, Gi);
  h.comul = kron(G, G) * f.comul * Gi;
  h.unit = G * f.unit;
  h.counit = f.counit * Gi;
  h.antipode = G * f.antipode * Gi;
  std::optional<std::vector<int>> grading;
  if (t.grading) {
    bool keeps = true;
    for (std::size_t r = 0; r < G.rows() && keeps; ++r)
      for (const auto& e : G.row(r))
        if ((*t.grading)[r] != (*t.grading)[e.col]) keeps = false;
    if (keeps) grading = t.grading;
  }
  return HopfStructure::from_flat(t.object, h, std::move(grading));
}

// ---- grading ----

bool respects_grading(const HopfStructure& t) {
  if (!t.grading) return false;
  const auto& deg = *t.grading;
  const std::size_t N = t.total_dim();
  FlatStructure f = t.flat();
  for (std::size_t r = 0; r < N; ++r)
    for (const auto& e : f.m.row(r))
      if (deg[r] != deg[e.col / N] + deg[e.col % N]) return false;
  for (std::size_t r = 0; r < N * N; ++r)
    for (const auto& e : f.comul.row(r))
      if (deg[e.col] != deg[r / N] + deg[r % N]) return false;
  for (std::size_t r = 0; r < N; ++r) {
    if (!f.unit.get(r, 0).is_zero() && deg[r] != 0) return false;
    if (!f.counit.get(0, r).is_zero() && deg[r] != 0) return false;
    for (const auto& e : f.antipode.row(r))
      if (deg[r] != deg[e.col]) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<std::size_t>> indices_by_degree(const std::vector<int>& deg) {
  int top = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(std::max(top, 0)) + 1);
  for (std::size_t g = 0; g < deg.size(); ++g) {
    if (deg[g] < 0) return {};
    out[static_cast<std::size_t>(deg[g])].push_back(g);
  }
  return out;
}

// Columns m(e_x ⊗ e_w) for x of degree 1 and w of degree n-1, given images of
// those basis vectors (columns of X and W) in some structure.
Matrix degree_products(const FlatStructure& f, const Matrix& X, const Matrix& W) {
  return f.m * kron(X, W);
}

Matrix select_columns(std::size_t N, const std::vector<std::size_t>& cols) {
  Matrix m(N, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) m.set(cols[k], k, Scalar(1));
  return m;
}

}  // namespace

bool generated_in_degree_one(const HopfStructure& t) {
  if (!t.grading) return false;
  auto bydeg = indices_by_degree(*t.grading);
  if (bydeg.empty()) return false;
  const std::size_t N = t.total_dim();
  FlatStructure f = t.flat();
  if (bydeg.size() < 2) return true;
  Matrix X = select_columns(N, bydeg[1]);
  for (std::size_t n = 2; n < bydeg.size(); ++n) {
    if (bydeg[n].empty()) continue;
    Matrix P = degree_products(f, X, select_columns(N, bydeg[n - 1]));
    if (rank(P.submatrix(bydeg[n], [&] {
          std::vector<std::size_t> all(P.cols());
          std::iota(all.begin(), all.end(), 0);
          return all;
        }())) != bydeg[n].size())
      return false;
  }
  return true;
}

std::optional<BlockTransform> graded_iso_search(const HopfStructure& t1, const HopfStructure& t2, IsoSearchStats* stats) {
  for (const HopfStructure* t : {&t1, &t2}) {
    if (!t->grading || !respects_grading(*t)) throw NotGraded("isomorphism search needs graded structures");
    if (!generated_in_degree_one(*t)) throw NotGraded("isomorphism search needs structures generated in degree one");
  }
  if (!(t1.object == t2.object)) return std::nullopt;
  const auto& obj = t1.object;
  const std::size_t N = obj.total_dim(), c = obj.count();
  const auto& deg1 = *t1.grading;
  const auto& deg2 = *t2.grading;
  // Degree multisets must agree isotype by isotype.
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<int> a(deg1.begin() + static_cast<long>(obj.offset(i)), deg1.begin() + static_cast<long>(obj.offset(i) + obj.dim(i)));
    std::vector<int> b(deg2.begin() + static_cast<long>(obj.offset(i)), deg2.begin() + static_cast<long>(obj.offset(i) + obj.dim(i)));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  auto by1 = indices_by_degree(deg1), by2 = indices_by_degree(deg2);
  if (by1.size() != by2.size()) return std::nullopt;
  if (by1[0].size() != 1 || by2[0].size() != 1) return std::nullopt;
  FlatStructure f1 = t1.flat(), f2 = t2.flat();

  // Degree-one basis vectors grouped by isotype.
  std::vector<std::vector<std::size_t>> d1a(c), d1b(c);
  if (by1.size() > 1) {
    for (std::size_t g : by1[1]) d1a[obj.isotype_of(g)].push_back(g);
    for (std::size_t g : by2[1]) d1b[obj.isotype_of(g)].push_back(g);
  }
  std::vector<std::vector<std::size_t>> perms(c);
  for (std::size_t i = 0; i < c; ++i) {
    perms[i].resize(d1a[i].size());
    std::iota(perms[i].begin(), perms[i].end(), 0);
  }
  constexpr std::size_t kCandidateCap = 40320;
  std::size_t tried = 0;
  for (;;) {
    if (tried == kCandidateCap) {
      if (stats) stats->truncated = true;
      break;
    }
    ++tried;
    // Build γ degree by degree.
    Matrix G(N, N);
    Scalar u1 = f1.unit.get(by1[0][0], 0), u2 = f2.unit.get(by2[0][0], 0);
    bool ok = !u1.is_zero() && !u2.is_zero();
    if (ok) G.set(by2[0][0], by1[0][0], u2 / u1);
    for (std::size_t i = 0; ok && i < c; ++i)
      for (std::size_t s = 0; s < d1a[i].size(); ++s) G.set(d1b[i][perms[i][s]], d1a[i][s], Scalar(1));
    for (std::size_t n = 2; ok && n < by1.size(); ++n) {
      if (by1[n].empty()) continue;
      Matrix X1 = select_columns(N, by1[1]), W1 = select_columns(N, by1[n - 1]);
      Matrix P1 = degree_products(f1, X1, W1).transpose().submatrix(
          [&] {
            std::vector<std::size_t> all(X1.cols() * W1.cols());
            std::iota(all.begin(), all.end(), 0);
            return all;
          }(),
          by1[n]);
      Matrix P2 = degree_products(f2, G * X1, G * W1).transpose().submatrix(
          [&] {
            std::vector<std::size_t> all(X1.cols() * W1.cols());
            std::iota(all.begin(), all.end(), 0);
            return all;
          }(),
          by2[n]);
      // γ_n P1 = P2  <=>  P1^T γ_n^T = P2^T.
      auto sol = solve_many(P1, P2);
      if (!sol) {
        ok = false;
        break;
      }
      Matrix gnT = *sol;  // |by1[n]| x |by2[n]|
      for (std::size_t a = 0; a < gnT.rows(); ++a)
        for (const auto& e : gnT.row(a)) G.set(by2[n][e.col], by1[n][a], e.val);
    }
    if (ok) {
      try {
        BlockTransform gamma = split_transform(obj, G);
        if (act(gamma, t1) == t2) {
          if (stats) stats->candidates_tried = tried;
          return gamma;
        }
      } catch (const MalformedBlock&) {
      } catch (const SingularTransform&) {
      }
    }
    // Next candidate: odometer over per-isotype permutations.
    std::size_t i = 0;
    for (; i < c; ++i)
      if (std::next_permutation(perms[i].begin(), perms[i].end())) break;
    if (i == c) break;
  }
  if (stats) stats->candidates_tried = tried;
  return std::nullopt;
}

// ---- from_nichols ----

HopfStructure from_nichols(const NicholsReport& r) {
  LineCategory cat = LineCategory::free(r.braiding);
  return from_nichols(r, cat, cat.unit_vectors());
}

HopfStructure from_nichols(const NicholsReport& r, const LineCategory& cat, const std::vector<Label>& letter_labels) {
  if (r.termination != Termination::Finite || !r.quotient)
    throw NotFinite("Hopf structure needs a finite Nichols algebra (raise the degree cutoff)");
  const GradedQuotient& q = *r.quotient;
  if (letter_labels.size() != q.letters()) throw MalformedInput("one label per letter is required");
  for (std::size_t i = 0; i < q.letters(); ++i)
    for (std::size_t j = 0; j < q.letters(); ++j)
      if (cat.braid(letter_labels[i], letter_labels[j]) != r.braiding.q(i, j))
        throw MalformedInput("letter labels do not realize the braiding");
  const std::size_t top = r.top_degree;

  struct Item {
    Label label;
    std::size_t degree, index;
  };
  std::vector<Item> items;
  for (std::size_t n = 0; n <= top; ++n)
    for (std::size_t k = 0; k < q.dim(n); ++k) {
      Word w = word_from_index(q.basis_words(n)[k], n, q.letters());
      Label l = cat.zero();
      for (int x : w) l = cat.add(l, letter_labels[static_cast<std::size_t>(x)]);
      items.push_back({l, n, k});
    }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.index < b.index;
  });
  std::vector<Isotype> isos;
  for (const auto& it : items) {
    if (isos.empty() || isos.back().label != it.label) isos.push_back({it.label, 0});
    ++isos.back().dim;
  }
  DecomposedObject obj(cat, isos);
  const std::size_t N = items.size();
  std::vector<std::vector<std::size_t>> global(top + 1);
  for (std::size_t n = 0; n <= top; ++n) global[n].resize(q.dim(n));
  std::vector<int> grading(N);
  for (std::size_t g = 0; g < N; ++g) {
    global[items[g].degree][items[g].index] = g;
    grading[g] = static_cast<int>(items[g].degree);
  }

  // Antipode degree by degree: S_n = -Σ_{a<n} m(S_a ⊗ 1) Δ^{a,n-a}.
  std::vector<Matrix> S(top + 1);
  S[0] = Matrix::identity(1);
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix acc(q.dim(n), q.dim(n));
    for (std::size_t a = 0; a < n; ++a) acc += q.mul(a, n - a) * kron(S[a], Matrix::identity(q.dim(n - a))) * q.cop(n, a);
    S[n] = acc.scaled(Scalar(-1));
  }

  FlatStructure f;
  f.m = Matrix(N, N * N);
  f.comul = Matrix(N * N, N);
  f.unit = Matrix(N, 1);
  f.counit = Matrix(1, N);
  f.antipode = Matrix(N, N);
  std::vector<SparseRow> mt(N * N), ct(N);
  for (std::size_t a = 0; a <= top; ++a)
    for (std::size_t b = 0; a + b <= top; ++b) {
      Matrix mtb = q.mul(a, b).transpose();
      const std::size_t db = q.dim(b);
      for (std::size_t col = 0; col < mtb.rows(); ++col) {
        std::size_t g = global[a][col / db] * N + global[b][col % db];
        for (const auto& e : mtb.row(col)) mt[g].push_back({global[a + b][e.col], e.val});
      }
    }
  for (std::size_t n = 0; n <= top; ++n)
    for (std::size_t a = 0; a <= n; ++a) {
      Matrix ctb = q.cop(n, a).transpose();
      const std::size_t db = q.dim(n - a);
      for (std::size_t col = 0; col < ctb.rows(); ++col)
        for (const auto& e : ctb.row(col))
          ct[global[n][col]].push_back({global[a][e.col / db] * N + global[n - a][e.col % db], e.val});
    }
  for (auto& rr : mt) std::sort(rr.begin(), rr.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
  for (auto& rr : ct) std::sort(rr.begin(), rr.end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
  f.m = Matrix::from_rows(N, std::move(mt)).transpose();
  f.comul = Matrix::from_rows(N * N, std::move(ct)).transpose();
  f.unit.set(global[0][0], 0, Scalar(1));
  f.counit.set(0, global[0][0], Scalar(1));
  for (std::size_t n = 0; n <= top; ++n)
    for (std::size_t rr = 0; rr < S[n].rows(); ++rr)
      for (const auto& e : S[n].row(rr)) f.antipode.set(global[n][rr], global[n][e.col], e.val);
  return HopfStructure::from_flat(obj, f, grading);
}

}  // namespace nf
