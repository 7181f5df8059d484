#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "voa/scalar.hpp"

namespace voa {

// Sparse exact vector over the rationals. Entries are kept with strictly
// increasing indices and no explicit zeros, so equality is plain comparison.
class Vector {
 public:
  Vector() = default;

  static Vector unit(int index);

  // Accumulates c into entry `index`.
  void add_term(int index, const Scalar& c);

  const std::vector<std::pair<int, Scalar>>& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }
  int leading_index() const;           // lowest occupied index
  const Scalar& leading_coeff() const;
  int max_index() const { return e_.empty() ? -1 : e_.back().first; }
  Scalar at(int index) const;          // zero when absent

  Vector scaled(const Scalar& c) const;
  // *this += c * o, merge of two sorted entry lists
  Vector& axpy(const Scalar& c, const Vector& o);
  Vector& operator+=(const Vector& o) { return axpy(Scalar(1), o); }
  Vector& operator-=(const Vector& o) { return axpy(Scalar(-1), o); }

  bool operator==(const Vector& o) const { return e_ == o.e_; }

 private:
  std::vector<std::pair<int, Scalar>> e_;
};

// Subspace of a fixed coordinate space, stored as a reduced row echelon
// basis. RREF is canonical, so two subspaces are equal iff their rows are.
// `degree` tags which graded slice the space belongs to; mixing slices or
// ambient dimensions is a structural error.
class Subspace {
 public:
  Subspace() = default;
  Subspace(int degree, int ambient_dim);

  static Subspace span(const std::vector<Vector>& vs, int ambient_dim, int degree = 0);

  int degree() const { return degree_; }
  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vector>& rows() const { return rows_; }

  // Eliminates v against the basis; the residue is zero iff v is a member.
  Vector reduce(Vector v) const;
  bool member(const Vector& v) const { return reduce(v).is_zero(); }
  bool contains(const Subspace& other) const;

  // Reduces and, if independent, inserts v. Returns true when dim grew.
  bool insert(Vector v);

  bool operator==(const Subspace& o) const;

  static Subspace sum(const Subspace& s, const Subspace& t);
  static Subspace intersect(const Subspace& s, const Subspace& t);

 private:
  void check_compatible(const Subspace& o, const char* op) const;
  void check_vector(const Vector& v) const;

  int degree_ = 0;
  int ambient_ = 0;
  std::vector<Vector> rows_;  // RREF: pivot columns strictly increasing, pivots 1
};

// Dense exact matrix, row major.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static Matrix identity(int n);

  Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Scalar& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  bool operator==(const Matrix& o) const = default;
};

Matrix matmul(const Matrix& x, const Matrix& y);
Scalar determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);

// Solves M x = rhs where each unknown and each right hand side is a sparse
// Vector (multiple simultaneous coordinates). Free unknowns are set to zero.
// Returns nullopt when inconsistent.
std::optional<std::vector<Vector>> solve(const Matrix& m, const std::vector<Vector>& rhs);
std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& rhs);

// Coefficients c with sum c_i cols_i = target, free coefficients zero.
std::optional<std::vector<Scalar>> express_in_span(const std::vector<Vector>& cols,
                                                   const Vector& target);

// Degreewise collection of subspaces, slices 0..max_degree.
class GradedFamily {
 public:
  GradedFamily() = default;
  explicit GradedFamily(int max_degree);

  int max_degree() const { return static_cast<int>(slices_.size()) - 1; }
  void set(int m, Subspace s);
  bool has(int m) const;
  const Subspace& slice(int m) const;
  std::vector<int> dims() const;
  bool contains(const GradedFamily& other) const;  // degreewise
  bool operator==(const GradedFamily& o) const;

 private:
  std::vector<std::optional<Subspace>> slices_;
};

}  // namespace voa
