#include "nichols_forge/fusion.hpp"

#include <atomic>
#include <numeric>
#include <optional>

#include "nichols_forge/errors.hpp"
#include "nichols_forge/parallel.hpp"

namespace nf {

Matrix FusionData::alpha_block(int i, int j, int k, int a, int b, int c) const {
  auto it = alpha.find({i, j, k, a, b, c});
  if (it != alpha.end()) return it->second;
  return Matrix(static_cast<std::size_t>(N(i, c, b) * N(j, k, c)), static_cast<std::size_t>(N(i, j, a) * N(a, k, b)));
}

Matrix FusionData::sigma_block(int i, int j, int k) const {
  auto it = sigma.find({i, j, k});
  if (it != sigma.end()) return it->second;
  return Matrix(static_cast<std::size_t>(N(j, i, k)), static_cast<std::size_t>(N(i, j, k)));
}

bool FusionReport::pass() const {
  for (const auto& c : checks)
    if (!c.informational && !c.ok) return false;
  return true;
}

namespace {

std::string tuple_str(std::initializer_list<int> xs) {
  std::string s = "(";
  bool first = true;
  for (int x : xs) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + ")";
}

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

// K^p ⊗ K^q -> K^q ⊗ K^p.
Matrix flip(std::size_t p, std::size_t q) {
  Matrix m(q * p, p * q);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < q; ++y) m.set(y * p + x, x * q + y, Scalar(1));
  return m;
}

// (x, y, z) -> (x, z, y) on K^n1 ⊗ K^n2 ⊗ K^n3.
Matrix swap23(std::size_t n1, std::size_t n2, std::size_t n3) {
  return kron(Matrix::identity(n1), flip(n2, n3));
}

Matrix I(int n) { return Matrix::identity(sz(n)); }

// Collects per-slot partial results and merges them in index order.
class Collector {
 public:
  Collector(std::string name, std::size_t slots, const FusionOptions& o) : name_(std::move(name)), parts_(slots), opt_(o) {}
  bool stopped() const { return opt_.stop_at_first && stop_.load(); }
  void count(std::size_t slot) { ++parts_[slot].checked; }
  void fail(std::size_t slot, std::string where) {
    auto& p = parts_[slot];
    p.ok = false;
    if (p.failures.size() < opt_.max_failures) p.failures.push_back(std::move(where));
    stop_.store(true);
  }
  FusionCheck merge() const {
    FusionCheck c;
    c.name = name_;
    for (const auto& p : parts_) {
      c.checked += p.checked;
      if (!p.ok) c.ok = false;
      for (const auto& f : p.failures)
        if (c.failures.size() < opt_.max_failures) c.failures.push_back(f);
    }
    return c;
  }

 private:
  std::string name_;
  std::vector<FusionCheck> parts_;
  FusionOptions opt_;
  std::atomic<bool> stop_{false};
};

struct AlphaTotal {
  Matrix m;
  std::vector<std::size_t> row_off, col_off;  // indexed by c and by a
};

// ⊕_a V_{ij}^a ⊗ V_{ak}^b -> ⊕_c V_{ic}^b ⊗ V_{jk}^c for fixed i, j, k, b.
AlphaTotal alpha_total(const FusionData& f, int i, int j, int k, int b) {
  AlphaTotal t;
  std::size_t rows = 0, cols = 0;
  for (int c = 0; c < f.s; ++c) {
    t.row_off.push_back(rows);
    rows += sz(f.N(i, c, b) * f.N(j, k, c));
  }
  for (int a = 0; a < f.s; ++a) {
    t.col_off.push_back(cols);
    cols += sz(f.N(i, j, a) * f.N(a, k, b));
  }
  t.m = Matrix(rows, cols);
  for (int a = 0; a < f.s; ++a)
    for (int c = 0; c < f.s; ++c) {
      auto it = f.alpha.find({i, j, k, a, b, c});
      if (it == f.alpha.end()) continue;
      const Matrix& blk = it->second;
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (const auto& e : blk.row(r)) t.m.set(t.row_off[sz(c)] + r, t.col_off[sz(a)] + e.col, e.val);
    }
  return t;
}

// Blocks of the inverse of alpha_total: inv[c][a]: V_{ic}^b ⊗ V_{jk}^c -> V_{ij}^a ⊗ V_{ak}^b.
std::optional<std::vector<std::vector<Matrix>>> alpha_inverse(const FusionData& f, int i, int j, int k, int b) {
  AlphaTotal t = alpha_total(f, i, j, k, b);
  Matrix inv;
  try {
    inv = inverse(t.m);
  } catch (const SingularTransform&) {
    return std::nullopt;
  }
  std::vector<std::vector<Matrix>> out(sz(f.s), std::vector<Matrix>(sz(f.s)));
  for (int c = 0; c < f.s; ++c)
    for (int a = 0; a < f.s; ++a) {
      std::vector<std::size_t> rows(sz(f.N(i, j, a) * f.N(a, k, b))), cols(sz(f.N(i, c, b) * f.N(j, k, c)));
      std::iota(rows.begin(), rows.end(), t.col_off[sz(a)]);
      std::iota(cols.begin(), cols.end(), t.row_off[sz(c)]);
      out[sz(c)][sz(a)] = inv.submatrix(rows, cols);
    }
  return out;
}

bool shapes_ok(const FusionData& f, std::string* why) {
  auto bad = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const std::size_t s = sz(f.s);
  if (f.s < 1) return bad("no simples");
  if (f.fusion.size() != s * s * s) return bad("fusion table has the wrong size");
  for (int n : f.fusion)
    if (n < 0) return bad("negative fusion coefficient");
  if (f.l.size() != s || f.r.size() != s || f.dual.size() != s || f.ev.size() != s || f.coev.size() != s)
    return bad("unit or duality data has the wrong length");
  if (!f.labels.empty() && f.labels.size() != s) return bad("labels have the wrong length");
  for (int d : f.dual)
    if (d < 0 || d >= f.s) return bad("dual index out of range");
  for (const auto& [key, m] : f.alpha) {
    for (int x : key)
      if (x < 0 || x >= f.s) return bad("alpha key out of range " + tuple_str({key[0], key[1], key[2], key[3], key[4], key[5]}));
    auto [i, j, k, a, b, c] = key;
    if (m.rows() != sz(f.N(i, c, b) * f.N(j, k, c)) || m.cols() != sz(f.N(i, j, a) * f.N(a, k, b)))
      return bad("alpha block " + tuple_str({i, j, k, a, b, c}) + " has the wrong shape");
  }
  for (const auto& [key, m] : f.sigma) {
    for (int x : key)
      if (x < 0 || x >= f.s) return bad("sigma key out of range");
    auto [i, j, k] = key;
    if (m.rows() != sz(f.N(j, i, k)) || m.cols() != sz(f.N(i, j, k)))
      return bad("sigma block " + tuple_str({i, j, k}) + " has the wrong shape");
  }
  return true;
}

void require_shapes(const FusionData& f) {
  std::string why;
  if (!shapes_ok(f, &why)) throw MalformedBlock(why);
}

}  // namespace

FusionCheck verify_fusion_structure(const FusionData& f, const FusionOptions& o) {
  FusionCheck c;
  c.name = "structure";
  auto fail = [&](const std::string& w) {
    c.ok = false;
    if (c.failures.size() < o.max_failures) c.failures.push_back(w);
  };
  std::string why;
  ++c.checked;
  if (!shapes_ok(f, &why)) {
    fail(why);
    return c;
  }
  for (int i = 0; i < f.s; ++i)
    for (int j = 0; j < f.s; ++j) {
      ++c.checked;
      int want = i == j ? 1 : 0;
      if (f.N(0, i, j) != want || f.N(i, 0, j) != want) fail("unit fusion " + tuple_str({i, j}));
      if (f.N(i, j, 0) != (j == f.dual[sz(i)] ? 1 : 0)) fail("duality fusion " + tuple_str({i, j}));
    }
  for (int i = 0; i < f.s; ++i) {
    ++c.checked;
    if (f.dual[sz(f.dual[sz(i)])] != i) fail("duality is not an involution at " + std::to_string(i));
    if (f.l[sz(i)].is_zero() || f.r[sz(i)].is_zero()) fail("zero unit vector at " + std::to_string(i));
    if (f.ev[sz(i)].is_zero() || f.coev[sz(i)].is_zero()) fail("zero duality map at " + std::to_string(i));
  }
  for (int i = 0; i < f.s; ++i)
    for (int j = 0; j < f.s; ++j)
      for (int k = 0; k < f.s; ++k) {
        if (f.N(i, j, k) == 0) continue;
        ++c.checked;
        if (f.N(i, j, k) != f.N(j, i, k) || rank(f.sigma_block(i, j, k)) != sz(f.N(i, j, k)))
          fail("sigma not invertible " + tuple_str({i, j, k}));
      }
  for (int i = 0; i < f.s; ++i)
    for (int j = 0; j < f.s; ++j)
      for (int k = 0; k < f.s; ++k)
        for (int b = 0; b < f.s; ++b) {
          AlphaTotal t = alpha_total(f, i, j, k, b);
          if (t.m.rows() == 0 && t.m.cols() == 0) continue;
          ++c.checked;
          if (t.m.rows() != t.m.cols() || rank(t.m) != t.m.rows()) fail("alpha not invertible " + tuple_str({i, j, k, b}));
        }
  return c;
}

FusionCheck verify_pentagon(const FusionData& f, const FusionOptions& o) {
  require_shapes(f);
  const int s = f.s;
  Collector col("pentagon", sz(s), o);
  parallel_for(sz(s), [&](std::size_t slot) {
    const int i = static_cast<int>(slot);
    for (int j = 0; j < s; ++j)
      for (int k = 0; k < s; ++k)
        for (int l = 0; l < s; ++l)
          for (int a = 0; a < s; ++a) {
            if (f.N(i, j, a) == 0) continue;
            for (int b = 0; b < s; ++b) {
              if (f.N(a, k, b) == 0) continue;
              for (int c = 0; c < s; ++c) {
                if (f.N(b, l, c) == 0) continue;
                if (col.stopped()) return;
                for (int e = 0; e < s; ++e) {
                  if (f.N(i, e, c) == 0) continue;
                  for (int ff = 0; ff < s; ++ff) {
                    if (f.N(j, ff, e) == 0 || f.N(k, l, ff) == 0) continue;
                    col.count(slot);
                    // ((ij)k)l -> (i(jk))l -> i((jk)l) -> i(j(kl))
                    Matrix lhs(sz(f.N(i, e, c) * f.N(j, ff, e) * f.N(k, l, ff)),
                               sz(f.N(i, j, a) * f.N(a, k, b) * f.N(b, l, c)));
                    for (int d = 0; d < s; ++d) {
                      if (f.N(j, k, d) == 0 || f.N(i, d, b) == 0 || f.N(d, l, e) == 0) continue;
                      Matrix step1 = kron(f.alpha_block(i, j, k, a, b, d), I(f.N(b, l, c)));
                      Matrix step2 = swap23(sz(f.N(i, e, c)), sz(f.N(d, l, e)), sz(f.N(j, k, d))) *
                                     kron(f.alpha_block(i, d, l, b, c, e), I(f.N(j, k, d))) *
                                     swap23(sz(f.N(i, d, b)), sz(f.N(j, k, d)), sz(f.N(b, l, c)));
                      Matrix step3 = kron(I(f.N(i, e, c)), f.alpha_block(j, k, l, d, e, ff));
                      lhs += step3 * step2 * step1;
                    }
                    // ((ij)k)l -> (ij)(kl) -> i(j(kl))
                    Matrix rhs = kron(f.alpha_block(i, j, ff, a, c, e), I(f.N(k, l, ff))) *
                                 kron(I(f.N(i, j, a)), f.alpha_block(a, k, l, b, c, ff));
                    if (lhs != rhs) col.fail(slot, tuple_str({i, j, k, l, a, b, c, e, ff}));
                  }
                }
              }
            }
          }
  });
  return col.merge();
}

FusionCheck verify_units(const FusionData& f, const FusionOptions& o) {
  require_shapes(f);
  const int s = f.s;
  Collector col("unit", sz(s), o);
  parallel_for(sz(s), [&](std::size_t slot) {
    const int i = static_cast<int>(slot);
    for (int j = 0; j < s; ++j)
      for (int k = 0; k < s; ++k) {
        const int n = f.N(i, j, k);
        if (n == 0 || col.stopped()) continue;
        col.count(slot);
        // α_{i,1,j}^{i,k,j}(r_i ⊗ v) = v ⊗ l_j
        Matrix lhs = f.alpha_block(i, 0, j, i, k, j).scaled(f.r[sz(i)]);
        Matrix rhs = I(n).scaled(f.l[sz(j)]);
        if (lhs != rhs) col.fail(slot, tuple_str({i, j, k}));
      }
  });
  return col.merge();
}

FusionCheck verify_duality(const FusionData& f, const FusionOptions& o) {
  require_shapes(f);
  Collector col("duality", sz(f.s), o);
  parallel_for(sz(f.s), [&](std::size_t slot) {
    const int i = static_cast<int>(slot), ib = f.dual[slot];
    col.count(slot);
    // 1 -> coev_i ⊗ l_i -> α_{i,ī,i}^{1,i,1} -> r_i ⊗ v -> ev_i(v)
    Matrix a = f.alpha_block(i, ib, i, 0, i, 0);
    Scalar v = a.rows() == 1 && a.cols() == 1 ? a.get(0, 0) : Scalar(0);
    if (f.r[slot].is_zero()) {
      col.fail(slot, tuple_str({i}) + " r is zero");
      return;
    }
    Scalar composite = f.coev[slot] * f.l[slot] * v * f.ev[slot] / f.r[slot];
    if (!composite.is_one()) col.fail(slot, tuple_str({i}) + " composite " + composite.to_string());
  });
  return col.merge();
}

FusionCheck verify_duality_reverse(const FusionData& f, const FusionOptions& o) {
  require_shapes(f);
  Collector col("duality-reverse", sz(f.s), o);
  parallel_for(sz(f.s), [&](std::size_t slot) {
    const int i = static_cast<int>(slot), ib = f.dual[slot];
    col.count(slot);
    // 1 -> r_ī ⊗ coev_i -> α⁻¹_{ī,i,ī} -> v ⊗ l_ī -> ev_i(v)
    auto inv = alpha_inverse(f, ib, i, ib, ib);
    if (!inv) {
      col.fail(slot, tuple_str({i}) + " alpha not invertible");
      return;
    }
    const Matrix& a = (*inv)[0][0];
    Scalar v = a.rows() == 1 && a.cols() == 1 ? a.get(0, 0) : Scalar(0);
    if (f.l[sz(ib)].is_zero()) {
      col.fail(slot, tuple_str({i}) + " l is zero");
      return;
    }
    Scalar composite = f.r[sz(ib)] * f.coev[slot] * v * f.ev[slot] / f.l[sz(ib)];
    if (!composite.is_one()) col.fail(slot, tuple_str({i}) + " composite " + composite.to_string());
  });
  FusionCheck c = col.merge();
  c.informational = true;
  return c;
}

FusionCheck verify_braiding(const FusionData& f, const FusionOptions& o) {
  require_shapes(f);
  const int s = f.s;
  Collector col("hexagon", sz(s), o);
  parallel_for(sz(s), [&](std::size_t slot) {
    const int x = static_cast<int>(slot);
    for (int y = 0; y < s; ++y)
      for (int z = 0; z < s; ++z)
        for (int b = 0; b < s; ++b) {
          if (col.stopped()) return;
          // H1: L(x,y,z)_{a,b} -> R(y,z,x)_{d,b}
          for (int a = 0; a < s; ++a) {
            if (f.N(x, y, a) == 0 || f.N(a, z, b) == 0) continue;
            for (int d = 0; d < s; ++d) {
              if (f.N(y, d, b) == 0 || f.N(z, x, d) == 0) continue;
              col.count(slot);
              Matrix lhs(sz(f.N(y, d, b) * f.N(z, x, d)), sz(f.N(x, y, a) * f.N(a, z, b)));
              for (int c = 0; c < s; ++c) {
                if (f.N(x, c, b) == 0 || f.N(y, z, c) == 0) continue;
                Matrix sig = flip(sz(f.N(c, x, b)), sz(f.N(y, z, c))) * kron(f.sigma_block(x, c, b), I(f.N(y, z, c)));
                lhs += f.alpha_block(y, z, x, c, b, d) * sig * f.alpha_block(x, y, z, a, b, c);
              }
              Matrix rhs = kron(I(f.N(y, d, b)), f.sigma_block(x, z, d)) * f.alpha_block(y, x, z, a, b, d) *
                           kron(f.sigma_block(x, y, a), I(f.N(a, z, b)));
              if (lhs != rhs) col.fail(slot, "H1 " + tuple_str({x, y, z, a, b, d}));
            }
          }
          // H2: R(x,y,z)_{c,b} -> L(z,x,y)_{e,b}
          bool any = false;
          for (int c = 0; c < s && !any; ++c) any = f.N(x, c, b) > 0 && f.N(y, z, c) > 0;
          if (!any) continue;
          auto inv_xyz = alpha_inverse(f, x, y, z, b);
          auto inv_zxy = alpha_inverse(f, z, x, y, b);
          auto inv_xzy = alpha_inverse(f, x, z, y, b);
          if (!inv_xyz || !inv_zxy || !inv_xzy) {
            col.fail(slot, "H2 alpha not invertible " + tuple_str({x, y, z, b}));
            continue;
          }
          for (int c = 0; c < s; ++c) {
            if (f.N(x, c, b) == 0 || f.N(y, z, c) == 0) continue;
            for (int e = 0; e < s; ++e) {
              if (f.N(z, x, e) == 0 || f.N(e, y, b) == 0) continue;
              col.count(slot);
              Matrix lhs(sz(f.N(z, x, e) * f.N(e, y, b)), sz(f.N(x, c, b) * f.N(y, z, c)));
              for (int a = 0; a < s; ++a) {
                if (f.N(x, y, a) == 0 || f.N(a, z, b) == 0) continue;
                Matrix sig = flip(sz(f.N(x, y, a)), sz(f.N(z, a, b))) * kron(I(f.N(x, y, a)), f.sigma_block(a, z, b));
                lhs += (*inv_zxy)[sz(a)][sz(e)] * sig * (*inv_xyz)[sz(c)][sz(a)];
              }
              Matrix rhs = kron(f.sigma_block(x, z, e), I(f.N(e, y, b))) * (*inv_xzy)[sz(c)][sz(e)] *
                           kron(I(f.N(x, c, b)), f.sigma_block(y, z, c));
              if (lhs != rhs) col.fail(slot, "H2 " + tuple_str({x, y, z, c, b, e}));
            }
          }
        }
  });
  return col.merge();
}

FusionReport verify_fusion(const FusionData& f, const FusionOptions& o) {
  FusionReport r;
  r.checks.push_back(verify_fusion_structure(f, o));
  if (!r.checks.back().ok) return r;
  for (auto fn : {verify_pentagon, verify_units, verify_duality, verify_duality_reverse, verify_braiding}) {
    r.checks.push_back(fn(f, o));
    if (o.stop_at_first && !r.checks.back().ok && !r.checks.back().informational) break;
  }
  return r;
}

FusionData pointed_center_data(const std::vector<int>& group) {
  for (int d : group)
    if (d < 1) throw InvalidParameter("cyclic factor orders must be positive");
  const std::size_t r = group.size();
  // Elements of G as exponent vectors, first factor most significant.
  std::vector<std::vector<long>> elems{{}};
  for (int d : group) {
    std::vector<std::vector<long>> next;
    for (const auto& e : elems)
      for (long k = 0; k < d; ++k) {
        auto v = e;
        v.push_back(k);
        next.push_back(std::move(v));
      }
    elems = std::move(next);
  }
  const int n = static_cast<int>(elems.size());
  FusionData f;
  f.s = n * n;
  for (const auto& g : elems)
    for (const auto& c : elems) {
      Label l(g.begin(), g.end());
      l.insert(l.end(), c.begin(), c.end());
      f.labels.push_back(std::move(l));
    }
  auto index_of = [&](const Label& l) {
    int idx = 0;
    for (std::size_t a = 0; a < 2 * r; ++a) {
      int d = group[a % r];
      idx = idx * d + static_cast<int>(((l[a] % d) + d) % d);
    }
    return idx;
  };
  auto combine = [&](int i, int j, int sign) {
    Label l(2 * r);
    for (std::size_t a = 0; a < 2 * r; ++a) l[a] = f.labels[sz(i)][a] + sign * f.labels[sz(j)][a];
    return index_of(l);
  };
  f.fusion.assign(sz(f.s) * sz(f.s) * sz(f.s), 0);
  Matrix one = Matrix::identity(1);
  for (int i = 0; i < f.s; ++i)
    for (int j = 0; j < f.s; ++j) {
      int k = combine(i, j, 1);
      f.fusion[sz((i * f.s + j) * f.s + k)] = 1;
      // σ((g,χ),(h,ψ)) = ψ(g)
      Scalar q(1);
      for (std::size_t a = 0; a < r; ++a)
        q *= Scalar::root_of_unity(group[a], f.labels[sz(j)][r + a] * f.labels[sz(i)][a]);
      f.sigma[{i, j, k}] = Matrix::from_dense({{q}});
    }
  for (int i = 0; i < f.s; ++i)
    for (int j = 0; j < f.s; ++j)
      for (int k = 0; k < f.s; ++k) {
        int a = combine(i, j, 1), c = combine(j, k, 1), b = combine(a, k, 1);
        f.alpha[{i, j, k, a, b, c}] = one;
      }
  Label zero(2 * r, 0);
  for (int i = 0; i < f.s; ++i) {
    Label neg(2 * r);
    for (std::size_t a = 0; a < 2 * r; ++a) neg[a] = -f.labels[sz(i)][a];
    f.dual.push_back(index_of(neg));
  }
  f.l.assign(sz(f.s), Scalar(1));
  f.r.assign(sz(f.s), Scalar(1));
  f.ev.assign(sz(f.s), Scalar(1));
  f.coev.assign(sz(f.s), Scalar(1));
  return f;
}

DiagonalBraiding fusion_braiding(const FusionData& f, const std::vector<int>& simples) {
  require_shapes(f);
  const std::size_t n = simples.size();
  std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const int i = simples[a], j = simples[b];
      if (i < 0 || i >= f.s || j < 0 || j >= f.s) throw InvalidParameter("simple index out of range");
      int target = -1;
      for (int k = 0; k < f.s; ++k) {
        if (f.N(i, j, k) == 0) continue;
        if (target >= 0 || f.N(i, j, k) != 1) throw InvalidParameter("simples are not invertible lines");
        target = k;
      }
      if (target < 0) throw InvalidParameter("simples are not invertible lines");
      Matrix m = f.sigma_block(i, j, target);
      q[a][b] = m.get(0, 0);
    }
  return DiagonalBraiding(q);
}

std::string FusionEntry::describe() const {
  switch (kind) {
    case Alpha:
      return "alpha" + tuple_str({key[0], key[1], key[2], key[3], key[4], key[5]}) + "[" + std::to_string(row) + "," +
             std::to_string(col) + "]";
    case Sigma:
      return "sigma" + tuple_str({key[0], key[1], key[2]}) + "[" + std::to_string(row) + "," + std::to_string(col) + "]";
    case Left:
      return "l" + tuple_str({key[0]});
    case Right:
      return "r" + tuple_str({key[0]});
    case Ev:
      return "ev" + tuple_str({key[0]});
    default:
      return "coev" + tuple_str({key[0]});
  }
}

std::vector<FusionEntry> fusion_entries(const FusionData& f) {
  std::vector<FusionEntry> out;
  for (const auto& [key, m] : f.alpha)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out.push_back({FusionEntry::Alpha, key, r, c});
  for (const auto& [key, m] : f.sigma)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out.push_back({FusionEntry::Sigma, {key[0], key[1], key[2]}, r, c});
  for (auto kind : {FusionEntry::Left, FusionEntry::Right, FusionEntry::Ev, FusionEntry::Coev})
    for (int i = 0; i < f.s; ++i) out.push_back({kind, {i}, 0, 0});
  return out;
}

FusionData perturbed(const FusionData& f, const FusionEntry& e, const Scalar& delta) {
  FusionData g = f;
  const std::size_t i = sz(e.key[0]);
  switch (e.kind) {
    case FusionEntry::Alpha:
      g.alpha.at(e.key).add_to(e.row, e.col, delta);
      break;
    case FusionEntry::Sigma:
      g.sigma.at({e.key[0], e.key[1], e.key[2]}).add_to(e.row, e.col, delta);
      break;
    case FusionEntry::Left:
      g.l.at(i) += delta;
      break;
    case FusionEntry::Right:
      g.r.at(i) += delta;
      break;
    case FusionEntry::Ev:
      g.ev.at(i) += delta;
      break;
    case FusionEntry::Coev:
      g.coev.at(i) += delta;
      break;
  }
  return g;
}

}  // namespace nf
