#pragma once

// Exact linear algebra over Scalar.
//
// Matrices are stored as sorted sparse rows.  Every subspace is kept in
// reduced row echelon form (basis vectors are the rows), so equality of
// subspaces is equality of their row lists.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nichols_forge/scalar.hpp"

namespace nf {

struct Entry {
  std::size_t col;
  Scalar val;
  bool operator==(const Entry& o) const { return col == o.col && val == o.val; }
};

// Sorted by column, no stored zeros.
using SparseRow = std::vector<Entry>;
using Vector = std::vector<Scalar>;

SparseRow to_sparse(const Vector& v);
Vector to_dense(const SparseRow& r, std::size_t dim);
SparseRow row_axpy(const SparseRow& x, const Scalar& a, const SparseRow& y);  // x + a*y
SparseRow row_scaled(const SparseRow& x, const Scalar& a);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_dense(const std::vector<Vector>& rows);
  static Matrix from_rows(std::size_t cols, std::vector<SparseRow> rows);
  static Matrix column(const Vector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  Scalar get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void add_to(std::size_t i, std::size_t j, const Scalar& v);
  const SparseRow& row(std::size_t i) const { return data_[i]; }
  void set_row(std::size_t i, SparseRow r);

  bool is_zero() const;
  Matrix transpose() const;
  Matrix scaled(const Scalar& a) const;
  Vector apply(const Vector& v) const;
  Vector column_vector(std::size_t j) const;
  // Rows at the given indices and columns at the given indices, in order.
  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  std::vector<Vector> to_dense() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseRow> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix vstack(const std::vector<Matrix>& blocks);
Matrix hstack(const std::vector<Matrix>& blocks);
// Block-diagonal direct sum.
Matrix direct_sum(const std::vector<Matrix>& blocks);

// A subspace of K^dim held as RREF rows sorted by pivot column.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<SparseRow>& vectors);
  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<std::size_t> non_pivots() const;
  // Basis vectors as the columns of an ambient x dim matrix.
  Matrix basis_matrix() const;

  bool contains(const SparseRow& v) const;
  bool contains(const Vector& v) const { return contains(to_sparse(v)); }
  bool contains(const Subspace& o) const;
  // Normal form of v modulo the subspace (zero at every pivot column).
  SparseRow reduce(SparseRow v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // Vectors w with <u,w> = 0 for all u (standard bilinear pairing).
  Subspace annihilator() const;
  // Image under M (M.cols() == ambient()).
  Subspace image_under(const Matrix& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  friend class Echelon;
  std::size_t ambient_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivots_;
};

// Incremental row echelon basis.  Rows have distinct leading columns and
// pivot entries equal to one; rref() finishes the back substitution.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  // Clears every pivot column of v.
  SparseRow reduce(SparseRow v) const;
  // Returns true if v was independent of the current rows.
  bool insert(SparseRow v);
  Subspace rref() const;

 private:
  std::size_t dim_;
  std::vector<SparseRow> rows_;
  std::vector<long> row_of_pivot_;  // -1 if column has no pivot
};

std::size_t rank(const Matrix& m);
Subspace row_space(const Matrix& m);
Subspace kernel(const Matrix& m);  // {x : Mx = 0}
Subspace image(const Matrix& m);   // column space
std::optional<Vector> solve(const Matrix& m, const Vector& b);
// Solves M X = B column by column; nullopt if any column is inconsistent.
std::optional<Matrix> solve_many(const Matrix& m, const Matrix& b);
// Throws SingularTransform for singular or non-square input.
Matrix inverse(const Matrix& m);

struct QuotientMap {
  std::size_t dim = 0;
  Matrix projection;  // dim x ambient, kernel = sub
  Matrix section;     // ambient x dim, projection * section = identity
  // Ambient coordinates used as quotient basis (non-pivot columns of sub).
  std::vector<std::size_t> basis_columns;
};

QuotientMap quotient(std::size_t ambient, const Subspace& sub);

// Printable basis labels for a based space.
struct BasedSpace {
  std::vector<std::string> labels;
  std::size_t dim() const { return labels.size(); }
};

}  // namespace nf
