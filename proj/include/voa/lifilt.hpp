#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "voa/products.hpp"
#include "voa/report.hpp"

namespace voa {

// Depth-first enumeration of right-nested words :d^{d1}x_{i1} (d^{d2}x_{i2} (...)):
// over the given homogeneous generators, every word of weight <= up_to.
// fn(degree, deriv_total, value) is called once per word, the vacuum included
// as the empty word; return false to abort the walk.
void for_each_word(const Model& m, const std::vector<FockState>& gens, int up_to,
                   const std::function<bool(int, int, const FockState&)>& fn);

// Degreewise span of all such words (slice m lives in V^m). Stops early once
// every slice is full.
GradedFamily reachable_family(const Model& m, const std::vector<FockState>& gens, int up_to);

// E_n pieces: span of generator words with at least n derivatives in total.
// Decreasing in n, E_0 = V, and E_n meets V^m trivially once n > m.
class Filtration {
 public:
  Filtration(const Model& m, int up_to);

  const Model& model() const { return model_; }
  int up_to() const { return up_to_; }

  // E_n intersected with V^m; n <= 0 gives the full slice.
  const Subspace& piece(int n, int m) const;

 private:
  const Model& model_;
  int up_to_;
  std::vector<std::vector<std::pair<int, Vector>>> words_;  // per degree: (deriv total, coords)
  mutable std::map<std::pair<int, int>, Subspace> cache_;
  mutable std::mutex mu_;
};

// Largest n with a inside E_n; requires homogeneous nonzero a.
int rank_of(const Filtration& f, const FockState& a);

struct GrElement {
  int degree = 0;
  int rank = 0;
  FockState rep;
};

GrElement gr_element(const Filtration& f, const FockState& a);
GrElement gr_mul(const Model& m, const GrElement& x, const GrElement& y);
GrElement gr_d(const Model& m, const GrElement& x);
// True when the class of x.rep vanishes in E_rank / E_{rank+1}.
bool gr_is_zero(const Filtration& f, const GrElement& x);

// Commutators of E_i x E_j basis pairs land in E_{i+j+1}, at product degree m.
CheckReport check_grok(const Filtration& f, int i, int j, int m);

struct StrongGenReport {
  bool pass = true;
  int first_fail_degree = -1;
  int missing_dim = 0;
  std::vector<int> reach_dims;
  std::vector<int> target_dims;
  bool gr_checked = false;
  bool gr_pass = true;
  bool agree = true;  // flat verdict == gr verdict, when the gr test ran
};

// Words from gens span the target family (default: all of V) degreewise.
// When a filtration is supplied and the target is V, the equivalent gr-level
// generation test also runs and the verdicts are compared.
StrongGenReport strong_gen_test(const Model& m, const std::vector<FockState>& gens,
                                int up_to, const GradedFamily* target = nullptr,
                                const Filtration* filt = nullptr);

// Words with every derivative order >= 1 and total derivative count exactly d.
std::vector<FockState> ed_generators(const Model& m, const std::vector<FockState>& gens,
                                     int d);

// Degreewise comparison of gr V (rank 1) against the differential commutative
// polynomial algebra in u^(n): dimension match, basis correspondence cell by
// cell, derivative compatibility, and a product table sweep.
CheckReport gr_to_diffcomm(const Filtration& f, int up_to);

}  // namespace voa
