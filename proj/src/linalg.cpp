#include "nichols_forge/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nichols_forge/errors.hpp"

namespace nf {

namespace {

// Dense scratch row with a touched list, reused across multiplications.
class Accumulator {
 public:
  explicit Accumulator(std::size_t dim) : vals_(dim), used_(dim, false) {}

  void add(std::size_t col, const Scalar& v) {
    if (!used_[col]) {
      used_[col] = true;
      touched_.push_back(col);
      vals_[col] = v;
    } else {
      vals_[col] += v;
    }
  }

  SparseRow take() {
    std::sort(touched_.begin(), touched_.end());
    SparseRow out;
    out.reserve(touched_.size());
    for (std::size_t c : touched_) {
      if (!vals_[c].is_zero()) out.push_back({c, std::move(vals_[c])});
      vals_[c] = Scalar();
      used_[c] = false;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Scalar> vals_;
  std::vector<bool> used_;
  std::vector<std::size_t> touched_;
};

}  // namespace

SparseRow to_sparse(const Vector& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.push_back({i, v[i]});
  return r;
}

Vector to_dense(const SparseRow& r, std::size_t dim) {
  Vector v(dim);
  for (const auto& e : r) v[e.col] = e.val;
  return v;
}

SparseRow row_axpy(const SparseRow& x, const Scalar& a, const SparseRow& y) {
  if (a.is_zero()) return x;
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].col < x[i].col) {
      out.push_back({y[j].col, a * y[j].val});
      ++j;
    } else {
      Scalar s = x[i].val + a * y[j].val;
      if (!s.is_zero()) out.push_back({x[i].col, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseRow row_scaled(const SparseRow& x, const Scalar& a) {
  if (a.is_zero()) return {};
  SparseRow out = x;
  for (auto& e : out) e.val *= a;
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar(1)});
  return m;
}

Matrix Matrix::from_dense(const std::vector<Vector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged dense matrix");
    m.data_[i] = to_sparse(rows[i]);
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<SparseRow> rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, std::move(rows[i]));
  return m;
}

Matrix Matrix::column(const Vector& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) m.data_[i].push_back({0, v[i]});
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Scalar Matrix::get(std::size_t i, std::size_t j) const {
  const auto& r = data_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) return it->val;
  return Scalar();
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) throw DimensionMismatch("matrix index out of range");
  auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) {
    if (v.is_zero()) r.erase(it);
    else it->val = v;
  } else if (!v.is_zero()) {
    r.insert(it, {j, v});
  }
}

void Matrix::add_to(std::size_t i, std::size_t j, const Scalar& v) {
  if (v.is_zero()) return;
  set(i, j, get(i, j) + v);
}

void Matrix::set_row(std::size_t i, SparseRow r) {
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k].col >= cols_ || (k > 0 && r[k].col <= r[k - 1].col))
      throw DimensionMismatch("row entries out of range or unsorted");
  }
  r.erase(std::remove_if(r.begin(), r.end(), [](const Entry& e) { return e.val.is_zero(); }), r.end());
  data_.at(i) = std::move(r);
}

bool Matrix::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) t.data_[e.col].push_back({i, e.val});
  return t;
}

Matrix Matrix::scaled(const Scalar& a) const {
  Matrix m(rows_, cols_);
  if (a.is_zero()) return m;
  for (std::size_t i = 0; i < rows_; ++i) m.data_[i] = row_scaled(data_[i], a);
  return m;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i])
      if (!v[e.col].is_zero()) out[i] += e.val * v[e.col];
  return out;
}

Vector Matrix::column_vector(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = get(i, j);
  return out;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  std::vector<long> cmap(cols_, -1);
  for (std::size_t k = 0; k < cols.size(); ++k) cmap.at(cols[k]) = static_cast<long>(k);
  Matrix m(rows.size(), cols.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    SparseRow r;
    for (const auto& e : data_.at(rows[k]))
      if (cmap[e.col] >= 0) r.push_back({static_cast<std::size_t>(cmap[e.col]), e.val});
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    m.data_[k] = std::move(r);
  }
  return m;
}

std::vector<Vector> Matrix::to_dense() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (const auto& r : data_) out.push_back(nf::to_dense(r, cols_));
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) data_[i] = row_axpy(data_[i], Scalar(1), o.data_[i]);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) data_[i] = row_axpy(data_[i], Scalar(-1), o.data_[i]);
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  Accumulator acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    if (a.data_[i].empty()) continue;
    for (const auto& e : a.data_[i])
      for (const auto& f : b.data_[e.col]) acc.add(f.col, e.val * f.val);
    c.data_[i] = acc.take();
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << get(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < b.rows(); ++k) {
      SparseRow r;
      for (const auto& e : a.row(i))
        for (const auto& f : b.row(k)) r.push_back({e.col * b.cols() + f.col, e.val * f.val});
      m.set_row(i * b.rows() + k, std::move(r));
    }
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  std::size_t cols = blocks[0].cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += b.rows();
  }
  Matrix m(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) m.set_row(off + i, b.row(i));
    off += b.rows();
  }
  return m;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  std::size_t rows = blocks[0].rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw DimensionMismatch("hstack row mismatch");
    cols += b.cols();
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    SparseRow r;
    std::size_t off = 0;
    for (const auto& b : blocks) {
      for (const auto& e : b.row(i)) r.push_back({e.col + off, e.val});
      off += b.cols();
    }
    m.set_row(i, std::move(r));
  }
  return m;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix m(rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      SparseRow r;
      for (const auto& e : b.row(i)) r.push_back({e.col + co, e.val});
      m.set_row(ro + i, std::move(r));
    }
    ro += b.rows();
    co += b.cols();
  }
  return m;
}

// ---- Echelon ----

SparseRow Echelon::reduce(SparseRow v) const {
  if (rows_.empty() || v.empty()) return v;
  std::map<std::size_t, Scalar> work;
  for (auto& e : v) work.emplace(e.col, std::move(e.val));
  auto it = work.begin();
  while (it != work.end()) {
    std::size_t col = it->first;
    long r = col < row_of_pivot_.size() ? row_of_pivot_[col] : -1;
    if (r < 0) {
      ++it;
      continue;
    }
    Scalar c = -it->second;
    it = work.erase(it);
    const SparseRow& piv = rows_[static_cast<std::size_t>(r)];
    for (std::size_t k = 1; k < piv.size(); ++k) {
      auto [pos, inserted] = work.try_emplace(piv[k].col);
      pos->second += c * piv[k].val;
      if (pos->second.is_zero()) work.erase(pos);
    }
    it = work.upper_bound(col);
  }
  SparseRow out;
  out.reserve(work.size());
  for (auto& [c, s] : work) out.push_back({c, std::move(s)});
  return out;
}

bool Echelon::insert(SparseRow v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  if (v.back().col >= dim_) throw DimensionMismatch("vector exceeds echelon dimension");
  Scalar inv = v.front().val.inverse();
  if (!inv.is_one())
    for (auto& e : v) e.val *= inv;
  if (row_of_pivot_.size() < dim_) row_of_pivot_.assign(dim_, -1);
  row_of_pivot_[v.front().col] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

Subspace Echelon::rref() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].front().col > rows_[b].front().col; });
  std::vector<long> final_of_pivot(dim_, -1);
  std::vector<SparseRow> done;
  done.reserve(rows_.size());
  for (std::size_t idx : order) {
    SparseRow r = rows_[idx];
    // Later pivots are already fully reduced, so clearing them one by one is enough.
    std::vector<std::pair<std::size_t, Scalar>> hits;
    for (std::size_t k = 1; k < r.size(); ++k)
      if (final_of_pivot[r[k].col] >= 0) hits.emplace_back(r[k].col, r[k].val);
    for (auto& [col, val] : hits) r = row_axpy(r, -val, done[static_cast<std::size_t>(final_of_pivot[col])]);
    final_of_pivot[r.front().col] = static_cast<long>(done.size());
    done.push_back(std::move(r));
  }
  Subspace s(dim_);
  s.rows_.assign(done.rbegin(), done.rend());
  for (const auto& r : s.rows_) s.pivots_.push_back(r.front().col);
  return s;
}

// ---- Subspace ----

namespace {

// Sparsest rows first keeps fill-in down during elimination.
Subspace span_rows(std::size_t ambient, std::vector<SparseRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  Echelon e(ambient);
  for (auto& r : rows) {
    if (e.rank() == ambient) break;
    e.insert(std::move(r));
  }
  return e.rref();
}

}  // namespace

Subspace Subspace::span(std::size_t ambient, const std::vector<SparseRow>& vectors) {
  return span_rows(ambient, vectors);
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
  std::vector<SparseRow> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw DimensionMismatch("spanning vector has wrong length");
    rows.push_back(to_sparse(v));
  }
  return span_rows(ambient, std::move(rows));
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.rows_.push_back({{i, Scalar(1)}});
    s.pivots_.push_back(i);
  }
  return s;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_rows(ambient_, rows_).transpose(); }

SparseRow Subspace::reduce(SparseRow v) const {
  // Rows are fully reduced, so a single pass in pivot order suffices.
  for (std::size_t k = 0; k < rows_.size() && !v.empty(); ++k) {
    std::size_t p = pivots_[k];
    auto it = std::lower_bound(v.begin(), v.end(), p, [](const Entry& e, std::size_t c) { return e.col < c; });
    if (it == v.end() || it->col != p) continue;
    Scalar c = -it->val;
    v = row_axpy(v, c, rows_[k]);
  }
  return v;
}

bool Subspace::contains(const SparseRow& v) const { return reduce(v).empty(); }

bool Subspace::contains(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambients");
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambients");
  std::vector<SparseRow> all = rows_;
  all.insert(all.end(), o.rows_.begin(), o.rows_.end());
  return span_rows(ambient_, std::move(all));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambients");
  // (A + B)^perp = A^perp ∩ B^perp, so A ∩ B = (A^perp + B^perp)^perp.
  return (annihilator() + o.annihilator()).annihilator();
}

Subspace Subspace::annihilator() const { return kernel(Matrix::from_rows(ambient_, rows_)); }

Subspace Subspace::image_under(const Matrix& m) const {
  if (m.cols() != ambient_) throw DimensionMismatch("image_under shape mismatch");
  Matrix img = m * basis_matrix();
  return image(img);
}

// ---- free functions ----

Subspace row_space(const Matrix& m) {
  std::vector<SparseRow> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) rows.push_back(m.row(i));
  return span_rows(m.cols(), std::move(rows));
}

std::size_t rank(const Matrix& m) { return row_space(m).dim(); }

Subspace kernel(const Matrix& m) {
  Subspace rs = row_space(m);
  const auto& piv = rs.pivots();
  std::vector<SparseRow> basis;
  for (std::size_t f : rs.non_pivots()) {
    // x_f = 1, x_p = -R[p][f].
    SparseRow v;
    for (std::size_t k = 0; k < piv.size(); ++k) {
      Scalar c;
      for (const auto& e : rs.rows()[k])
        if (e.col == f) c = e.val;
      if (!c.is_zero()) v.push_back({piv[k], -c});
    }
    v.push_back({f, Scalar(1)});
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    basis.push_back(std::move(v));
  }
  return span_rows(m.cols(), std::move(basis));
}

Subspace image(const Matrix& m) { return row_space(m.transpose()); }

std::optional<Matrix> solve_many(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw DimensionMismatch("solve shape mismatch");
  const std::size_t n = m.cols();
  Matrix aug = hstack({m, b});
  Subspace rs = row_space(aug);
  Matrix x(n, b.cols());
  for (std::size_t k = 0; k < rs.dim(); ++k) {
    const auto& r = rs.rows()[k];
    std::size_t p = rs.pivots()[k];
    if (p >= n) return std::nullopt;
    for (const auto& e : r)
      if (e.col >= n) x.set(p, e.col - n, e.val);
  }
  return x;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  auto x = solve_many(m, Matrix::column(b));
  if (!x) return std::nullopt;
  return x->column_vector(0);
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw SingularTransform("non-square matrix has no inverse");
  if (rank(m) != m.rows()) throw SingularTransform("singular matrix");
  auto x = solve_many(m, Matrix::identity(m.rows()));
  return *x;
}

QuotientMap quotient(std::size_t ambient, const Subspace& sub) {
  if (sub.ambient() != ambient) throw DimensionMismatch("quotient: subspace is not in the ambient space");
  QuotientMap q;
  q.basis_columns = sub.non_pivots();
  q.dim = q.basis_columns.size();
  std::vector<long> index(ambient, -1);
  for (std::size_t k = 0; k < q.dim; ++k) index[q.basis_columns[k]] = static_cast<long>(k);
  Matrix proj_t(ambient, q.dim);  // row j = image of e_j
  for (std::size_t j = 0; j < ambient; ++j)
    if (index[j] >= 0) proj_t.set(j, static_cast<std::size_t>(index[j]), Scalar(1));
  for (std::size_t k = 0; k < sub.dim(); ++k) {
    SparseRow img;
    for (const auto& e : sub.rows()[k])
      if (index[e.col] >= 0) img.push_back({static_cast<std::size_t>(index[e.col]), -e.val});
    proj_t.set_row(sub.pivots()[k], std::move(img));
  }
  q.projection = proj_t.transpose();
  q.section = Matrix(ambient, q.dim);
  for (std::size_t k = 0; k < q.dim; ++k) q.section.set(q.basis_columns[k], k, Scalar(1));
  return q;
}

}  // namespace nf
