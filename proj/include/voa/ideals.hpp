#pragma once

#include <optional>
#include <vector>

#include "voa/lifilt.hpp"
#include "voa/products.hpp"
#include "voa/report.hpp"

namespace voa {

enum class IdealSide { right, two_sided };

// A degreewise ideal built to a cutoff: closed under d and under the normally
// ordered product with everything (on the right; both sides when two_sided).
struct IdealFamily {
  IdealSide side = IdealSide::right;
  std::vector<FockState> generators;
  GradedFamily family;
  int cutoff = 0;
};

// Least such family containing X. All closure operations strictly raise
// degree (multiplying by the vacuum slice is the identity), so one ascending
// pass per degree is exact.
IdealFamily ideal_closure(const Model& m, const std::vector<FockState>& X,
                          IdealSide side, int cutoff);

// Degreewise span of nop(d^k x, v) over x in X, k >= 0, v a basis vector
// (vacuum included). A plain subspace family: not an ideal in general.
GradedFamily xv_span(const Model& m, const std::vector<FockState>& X, int cutoff);

// Re-multiplies every slice by every basis element and differentiates,
// verifying the result stays inside the family.
CheckReport audit_closed(const Model& m, const IdealFamily& I);

// Smallest N < cutoff with piece(N, m) inside I at every m <= cutoff, if any.
// (N = cutoff would be vacuous: no word of degree <= cutoff carries that many
// derivatives.)
std::optional<int> is_full(const Filtration& f, const IdealFamily& I);

// Flat test: xv_span(X) == I degreewise. Also runs the same question one
// filtration level at a time (classes of nop(d^k x, v) against I's cells) and
// requires the two verdicts to agree.
CheckReport ideal_strong_gen_test(const Filtration& f, const GradedFamily& I,
                                  const std::vector<FockState>& X);

struct ChainReport {
  bool pass = false;
  int stable_from = -1;  // least k with closure(X_k) == closure(X_j) for all j >= k
  bool stable_within = false;
  bool gr_lemma_pass = true;  // slice-graded equality of consecutive ideals forces equality
  int gr_pairs_checked = 0;
  std::vector<std::vector<int>> dims;  // per set, per degree
};

// Ascending chain of closures from nested generator sets.
ChainReport chain_experiment(const Filtration& f,
                             const std::vector<std::vector<FockState>>& sets,
                             IdealSide side, int cutoff);

ordered_json chain_json(const ChainReport& r);

}  // namespace voa
