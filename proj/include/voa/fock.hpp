#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "voa/linalg.hpp"
#include "voa/scalar.hpp"

namespace voa {

// One oscillator factor: flavor index and (positive) mode of the creation
// operator, i.e. a2[-5] is Factor{2, 5}.
struct Factor {
  int flavor = 0;
  int mode = 1;
  bool operator==(const Factor&) const = default;
};

// Canonical factor order: flavors ascending, modes descending within a flavor,
// so a0[-3]a0[-1]a1[-2] is in order. Monomials are compared factor by factor
// in this order, which lists e.g. the degree 4 basis as the partitions
// 4, 3+1, 2+2, 2+1+1, 1+1+1+1.
bool factor_canon_less(const Factor& a, const Factor& b);

// Product of creation operators applied to the vacuum, kept in canonical
// factor order. The empty monomial is the vacuum itself.
class FockMonomial {
 public:
  FockMonomial() = default;
  static FockMonomial from_factors(std::vector<Factor> fs);

  bool is_vacuum() const { return factors_.empty(); }
  int weight() const;
  int size() const { return static_cast<int>(factors_.size()); }
  const std::vector<Factor>& factors() const { return factors_; }

  Factor front() const;
  FockMonomial tail() const;                 // drop the first factor
  FockMonomial with_factor(Factor f) const;  // insert keeping canonical order

  bool operator==(const FockMonomial&) const = default;
  bool operator<(const FockMonomial& o) const;

  // Text form like "a0[-2]a0[-1]^2|0>"; the bare vacuum is "|0>".
  std::string str() const;
  static FockMonomial parse(std::string_view s);

 private:
  std::vector<Factor> factors_;
};

// Finite rational linear combination of monomials.
class FockState {
 public:
  FockState() = default;
  explicit FockState(const FockMonomial& m) { terms_[m] = Scalar(1); }

  static FockState vacuum() { return FockState(FockMonomial()); }

  const std::map<FockMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  void add_term(const FockMonomial& m, const Scalar& c);
  FockState& operator+=(const FockState& o);
  FockState& operator-=(const FockState& o);
  friend FockState operator+(FockState a, const FockState& b) { a += b; return a; }
  friend FockState operator-(FockState a, const FockState& b) { a -= b; return a; }
  friend FockState operator*(const Scalar& c, const FockState& s);
  bool operator==(const FockState&) const = default;
  bool operator<(const FockState& o) const { return terms_ < o.terms_; }

  // Weight shared by all terms. StructuralError when mixed; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;
  // Coefficient of the vacuum monomial.
  Scalar vacuum_coeff() const;

  std::string str() const;
  // Accepts sums like "a0[-2]|0> + 2*a0[-1]^2|0> - 1/2*|0>".
  static FockState parse(std::string_view s);

 private:
  std::map<FockMonomial, Scalar> terms_;
};

// Memo for the structural product recursion, owned by the model so repeated
// sweeps share work. Internal plumbing for the products module.
struct NthProductCache;

// Free boson Fock space truncated at a weight cutoff. `level(f,g)` is the
// symmetric pairing of the rank many currents; the default constructor uses
// k times the identity. Every operation that would produce weight above the
// cutoff throws CutoffError.
class Model {
 public:
  Model(int rank, const Scalar& level, int cutoff);
  Model(int rank, Matrix gram, int cutoff);

  int rank() const { return rank_; }
  int cutoff() const { return cutoff_; }
  const Matrix& gram() const { return gram_; }
  const Scalar& level(int f, int g) const;

  void check_degree(int d, const char* op) const;

  int dim(int m) const;
  const std::vector<FockMonomial>& basis(int m) const;
  int index_of(const FockMonomial& mono) const;
  FockState basis_state(int m, int i) const;

  // a{f}[-1]|0>, the weight one current of flavor f.
  FockState generator(int f) const;

  FockState derivative(const FockState& s) const;
  FockState derivative_pow(FockState s, int k) const;

  // Action of the mode alpha{f}_n: n < 0 creates (weight grows by -n),
  // n > 0 annihilates against the pairing, n = 0 kills everything.
  FockState mode_action(int f, int n, const FockState& s) const;

  Vector to_vector(const FockState& s, int m) const;
  FockState from_vector(const Vector& v, int m) const;
  Subspace full_space(int m) const;
  GradedFamily full_family(int up_to) const;

  NthProductCache& product_cache() const { return *cache_; }

 private:
  void validate() const;
  FockState mode_action_mono(int f, int n, const FockMonomial& mono) const;

  int rank_;
  int cutoff_;
  Matrix gram_;
  mutable std::vector<std::vector<FockMonomial>> bases_;
  mutable std::vector<std::map<FockMonomial, int>> index_;
  mutable std::mutex basis_mu_;
  std::unique_ptr<NthProductCache> cache_;
};

struct NthKey {
  FockMonomial a;
  int n;
  FockMonomial b;
  bool operator==(const NthKey&) const = default;
};

struct NthKeyHash {
  size_t operator()(const NthKey& k) const;
};

struct NthProductCache {
  std::unordered_map<NthKey, FockState, NthKeyHash> memo;
  std::mutex mu;
};

}  // namespace voa
