#include "voa/linalg.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "voa/errors.hpp"

namespace voa {

Vector Vector::unit(int index) {
  Vector v;
  v.add_term(index, Scalar(1));
  return v;
}

void Vector::add_term(int index, const Scalar& c) {
  if (index < 0) throw StructuralError("negative vector index");
  if (c.is_zero()) return;
  auto it = std::lower_bound(e_.begin(), e_.end(), index,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != e_.end() && it->first == index) {
    it->second += c;
    if (it->second.is_zero()) e_.erase(it);
  } else {
    e_.insert(it, {index, c});
  }
}

int Vector::leading_index() const {
  if (e_.empty()) throw StructuralError("leading index of zero vector");
  return e_.front().first;
}

const Scalar& Vector::leading_coeff() const {
  if (e_.empty()) throw StructuralError("leading coefficient of zero vector");
  return e_.front().second;
}

Scalar Vector::at(int index) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), index,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != e_.end() && it->first == index) return it->second;
  return Scalar(0);
}

Vector Vector::scaled(const Scalar& c) const {
  Vector out;
  if (c.is_zero()) return out;
  out.e_.reserve(e_.size());
  for (const auto& [i, v] : e_) out.e_.emplace_back(i, c * v);
  return out;
}

Vector& Vector::axpy(const Scalar& c, const Vector& o) {
  if (c.is_zero() || o.e_.empty()) return *this;
  std::vector<std::pair<int, Scalar>> out;
  out.reserve(e_.size() + o.e_.size());
  auto i = e_.begin();
  auto j = o.e_.begin();
  while (i != e_.end() || j != o.e_.end()) {
    if (j == o.e_.end() || (i != e_.end() && i->first < j->first)) {
      out.push_back(*i);
      ++i;
    } else if (i == e_.end() || j->first < i->first) {
      Scalar s = c * j->second;
      if (!s.is_zero()) out.emplace_back(j->first, std::move(s));
      ++j;
    } else {
      Scalar s = i->second + c * j->second;
      if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  e_ = std::move(out);
  return *this;
}

Subspace::Subspace(int degree, int ambient_dim) : degree_(degree), ambient_(ambient_dim) {
  if (ambient_dim < 0) throw StructuralError("negative ambient dimension");
}

Subspace Subspace::span(const std::vector<Vector>& vs, int ambient_dim, int degree) {
  Subspace s(degree, ambient_dim);
  for (const auto& v : vs) s.insert(v);
  return s;
}

void Subspace::check_compatible(const Subspace& o, const char* op) const {
  if (ambient_ != o.ambient_ || degree_ != o.degree_)
    throw StructuralError(std::string(op) + ": incompatible subspaces (degree " +
                          std::to_string(degree_) + "/" + std::to_string(o.degree_) +
                          ", ambient " + std::to_string(ambient_) + "/" +
                          std::to_string(o.ambient_) + ")");
}

void Subspace::check_vector(const Vector& v) const {
  if (v.max_index() >= ambient_)
    throw StructuralError("vector index " + std::to_string(v.max_index()) +
                          " outside ambient dimension " + std::to_string(ambient_));
}

Vector Subspace::reduce(Vector v) const {
  check_vector(v);
  // pivot columns are zero in every other row, so one pass is enough
  for (const auto& r : rows_) {
    Scalar c = v.at(r.leading_index());
    if (!c.is_zero()) v.axpy(-c, r);
  }
  return v;
}

bool Subspace::contains(const Subspace& other) const {
  check_compatible(other, "contains");
  for (const auto& r : other.rows_)
    if (!member(r)) return false;
  return true;
}

bool Subspace::insert(Vector v) {
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  v = v.scaled(v.leading_coeff().inverse());
  int p = v.leading_index();
  for (auto& r : rows_) {
    Scalar c = r.at(p);
    if (!c.is_zero()) r.axpy(-c, v);
  }
  auto it = rows_.begin();
  while (it != rows_.end() && it->leading_index() < p) ++it;
  rows_.insert(it, std::move(v));
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return degree_ == o.degree_ && ambient_ == o.ambient_ && rows_ == o.rows_;
}

Subspace Subspace::sum(const Subspace& s, const Subspace& t) {
  s.check_compatible(t, "sum");
  Subspace out = s;
  for (const auto& r : t.rows_) out.insert(r);
  return out;
}

// Zassenhaus: reduce {(s,s)} + {(t,0)} in the doubled space; rows whose
// pivot lands in the second block give a basis of the intersection.
Subspace Subspace::intersect(const Subspace& s, const Subspace& t) {
  s.check_compatible(t, "intersect");
  int n = s.ambient_;
  Subspace doubled(0, 2 * n);
  for (const auto& r : s.rows_) {
    Vector w;
    for (const auto& [i, c] : r.entries()) {
      w.add_term(i, c);
      w.add_term(i + n, c);
    }
    doubled.insert(std::move(w));
  }
  for (const auto& r : t.rows_) doubled.insert(r);
  Subspace out(s.degree_, n);
  for (const auto& r : doubled.rows_) {
    if (r.leading_index() < n) continue;
    Vector w;
    for (const auto& [i, c] : r.entries()) w.add_term(i - n, c);
    out.insert(std::move(w));
  }
  return out;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw StructuralError("matmul: shape mismatch");
  Matrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return out;
}

Scalar determinant(Matrix m) {
  if (m.rows != m.cols) throw StructuralError("determinant of non-square matrix");
  Scalar det(1);
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m.at(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
      det = -det;
    }
    det *= m.at(col, col);
    Scalar inv = m.at(col, col).inverse();
    for (int r = col + 1; r < n; ++r) {
      if (m.at(r, col).is_zero()) continue;
      Scalar f = m.at(r, col) * inv;
      for (int c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
    }
  }
  return det;
}

namespace {

// Shared elimination: returns pivot (row, col) pairs after reducing `work`
// in place, applying every row operation to `rhs` through the callbacks.
struct RowOps {
  std::function<void(int, int)> swap_rows;
  std::function<void(int, const Scalar&)> scale_row;          // row *= c
  std::function<void(int, const Scalar&, int)> axpy_rows;     // row r += c * row s
};

std::vector<std::pair<int, int>> eliminate(Matrix& work, const RowOps& ops) {
  std::vector<std::pair<int, int>> pivots;
  int row = 0;
  for (int col = 0; col < work.cols && row < work.rows; ++col) {
    int piv = -1;
    for (int r = row; r < work.rows; ++r)
      if (!work.at(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row) {
      for (int c = 0; c < work.cols; ++c) std::swap(work.at(piv, c), work.at(row, c));
      ops.swap_rows(piv, row);
    }
    Scalar inv = work.at(row, col).inverse();
    if (!(work.at(row, col) == Scalar(1))) {
      for (int c = col; c < work.cols; ++c) work.at(row, c) *= inv;
      ops.scale_row(row, inv);
    }
    for (int r = 0; r < work.rows; ++r) {
      if (r == row || work.at(r, col).is_zero()) continue;
      Scalar f = work.at(r, col);
      for (int c = col; c < work.cols; ++c) work.at(r, c) -= f * work.at(row, c);
      ops.axpy_rows(r, -f, row);
    }
    pivots.emplace_back(row, col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows != m.cols) throw StructuralError("inverse of non-square matrix");
  Matrix work = m;
  Matrix aug = Matrix::identity(m.rows);
  RowOps ops{
      [&](int a, int b) {
        for (int c = 0; c < aug.cols; ++c) std::swap(aug.at(a, c), aug.at(b, c));
      },
      [&](int r, const Scalar& s) {
        for (int c = 0; c < aug.cols; ++c) aug.at(r, c) *= s;
      },
      [&](int r, const Scalar& s, int src) {
        for (int c = 0; c < aug.cols; ++c) aug.at(r, c) += s * aug.at(src, c);
      }};
  auto pivots = eliminate(work, ops);
  if (static_cast<int>(pivots.size()) != m.rows) return std::nullopt;
  return aug;
}

std::optional<std::vector<Vector>> solve(const Matrix& m, const std::vector<Vector>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows)
    throw StructuralError("solve: rhs size does not match row count");
  Matrix work = m;
  std::vector<Vector> r = rhs;
  RowOps ops{[&](int a, int b) { std::swap(r[a], r[b]); },
             [&](int row, const Scalar& s) { r[row] = r[row].scaled(s); },
             [&](int row, const Scalar& s, int src) { r[row].axpy(s, r[src]); }};
  auto pivots = eliminate(work, ops);
  // rows below the pivot count have zero coefficients; rhs must vanish there
  std::vector<bool> pivot_row(m.rows, false);
  for (auto [row, col] : pivots) pivot_row[row] = true;
  for (int i = 0; i < m.rows; ++i)
    if (!pivot_row[i] && !r[i].is_zero()) return std::nullopt;
  std::vector<Vector> x(m.cols);
  for (auto [row, col] : pivots) x[col] = r[row];
  return x;
}

std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& rhs) {
  std::vector<Vector> wrapped(rhs.size());
  for (size_t i = 0; i < rhs.size(); ++i) wrapped[i].add_term(0, rhs[i]);
  auto sol = solve(m, wrapped);
  if (!sol) return std::nullopt;
  std::vector<Scalar> out(sol->size());
  for (size_t i = 0; i < sol->size(); ++i) out[i] = (*sol)[i].at(0);
  return out;
}

std::optional<std::vector<Scalar>> express_in_span(const std::vector<Vector>& cols,
                                                   const Vector& target) {
  int rows = target.max_index() + 1;
  for (const auto& c : cols) rows = std::max(rows, c.max_index() + 1);
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (const auto& [i, v] : cols[j].entries()) m.at(i, j) = v;
  std::vector<Scalar> rhs(rows);
  for (const auto& [i, v] : target.entries()) rhs[i] = v;
  return solve(m, rhs);
}

GradedFamily::GradedFamily(int max_degree) {
  if (max_degree < 0) throw StructuralError("negative max degree for graded family");
  slices_.resize(max_degree + 1);
}

void GradedFamily::set(int m, Subspace s) {
  if (m < 0 || m >= static_cast<int>(slices_.size()))
    throw StructuralError("graded family degree out of range: " + std::to_string(m));
  slices_[m] = std::move(s);
}

bool GradedFamily::has(int m) const {
  return m >= 0 && m < static_cast<int>(slices_.size()) && slices_[m].has_value();
}

const Subspace& GradedFamily::slice(int m) const {
  if (!has(m)) throw StructuralError("graded family slice unset at degree " + std::to_string(m));
  return *slices_[m];
}

std::vector<int> GradedFamily::dims() const {
  std::vector<int> out;
  out.reserve(slices_.size());
  for (const auto& s : slices_) out.push_back(s ? s->dim() : 0);
  return out;
}

bool GradedFamily::contains(const GradedFamily& other) const {
  if (max_degree() != other.max_degree())
    throw StructuralError("graded family containment across different ranges");
  for (int m = 0; m <= max_degree(); ++m) {
    if (!has(m) || !other.has(m)) throw StructuralError("graded family containment with unset slice");
    if (!slice(m).contains(other.slice(m))) return false;
  }
  return true;
}

bool GradedFamily::operator==(const GradedFamily& o) const {
  if (max_degree() != o.max_degree()) return false;
  for (int m = 0; m <= max_degree(); ++m) {
    if (has(m) != o.has(m)) return false;
    if (has(m) && !(slice(m) == o.slice(m))) return false;
  }
  return true;
}

}  // namespace voa
