#pragma once

#include <map>
#include <string>
#include <vector>

#include "voa/linalg.hpp"

namespace voa {

// Monomial in the variables u^(n), n >= 0, with weight(u^(n)) = n + 1.
// Exponents are kept sorted by variable order with positive multiplicities.
class DiffMonomial {
 public:
  DiffMonomial() = default;  // the constant 1

  static DiffMonomial from_exponents(std::vector<std::pair<int, int>> exps);

  bool is_one() const { return exps_.empty(); }
  int weight() const;
  int length() const;  // total multiplicity
  const std::vector<std::pair<int, int>>& exponents() const { return exps_; }

  DiffMonomial times(const DiffMonomial& o) const;
  DiffMonomial with_var(int n, int mult = 1) const;
  // removes one power of u^(n); precondition: present
  DiffMonomial without_one(int n) const;

  bool operator==(const DiffMonomial&) const = default;
  bool operator<(const DiffMonomial& o) const { return exps_ < o.exps_; }

  std::string str() const;

 private:
  std::vector<std::pair<int, int>> exps_;  // (n, multiplicity), n ascending
};

class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(const DiffMonomial& m) { terms_[m] = Scalar(1); }
  static DiffPoly one() { return DiffPoly(DiffMonomial()); }

  const std::map<DiffMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const DiffMonomial& m, const Scalar& c);
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { a += b; return a; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { a -= b; return a; }
  friend DiffPoly operator*(const Scalar& c, const DiffPoly& p);
  DiffPoly mul(const DiffPoly& o) const;

  bool operator==(const DiffPoly&) const = default;

  int weight() const;          // shared weight of all terms; -1 when zero
  bool is_homogeneous() const;

  std::string str() const;

 private:
  std::map<DiffMonomial, Scalar> terms_;
};

// Weight-graded context for C[u^(n)] with basis caches and the sign
// automorphism u^(n) -> -u^(n).
class DiffAlgebra {
 public:
  explicit DiffAlgebra(int cutoff);

  int cutoff() const { return cutoff_; }
  const std::vector<DiffMonomial>& basis(int w) const;
  int dim(int w) const { return static_cast<int>(basis(w).size()); }
  int index_of(const DiffMonomial& m) const;

  DiffPoly d(const DiffPoly& p) const;      // weight +1, cutoff checked
  DiffPoly sigma(const DiffPoly& p) const;  // (-1)^length per monomial
  DiffPoly reynolds(const DiffPoly& p) const;

  Vector to_vector(const DiffPoly& p, int w) const;
  DiffPoly from_vector(const Vector& v, int w) const;

  // span of unit vectors of even-length monomials
  Subspace invariant_slice(int w) const;
  std::vector<int> invariant_dims(int up_to) const;

  // weightwise span of products of derivatives of G (the unital differential
  // subalgebra generated by G)
  GradedFamily subalgebra_span(const std::vector<DiffPoly>& gens, int up_to) const;

  struct GrowthRow {
    int weight = 0;
    int invariant_dim = 0;
    int reachable_dim = 0;
    int new_generators = 0;
  };
  struct GrowthResult {
    std::vector<GrowthRow> rows;
    std::vector<DiffPoly> generators;
  };
  // Greedy differential generation of the sigma invariants: at each weight,
  // adjoin a complement basis of the reachable span inside the invariants.
  GrowthResult generator_growth(int up_to) const;

 private:
  int cutoff_;
  mutable std::vector<std::vector<DiffMonomial>> bases_;
  mutable std::vector<std::map<DiffMonomial, int>> index_;
};

}  // namespace voa
