#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "voa/lambda_poly.hpp"
#include "voa/linalg.hpp"
#include "voa/products.hpp"

namespace voa {

// Reconstruction of the lambda bracket from the normally ordered product
// alone. The forward path uses nop, derivatives and exact linear algebra
// only; it never evaluates a bracket or a nonnegative product directly.

struct RecoverySystem {
  int n = -1;                   // top lambda power: deg a + deg b - 1
  Matrix matrix;                // (n+1)x(n+1), entry (i,j) = (-1)^j / (i+j+1)
  std::vector<FockState> lhs;   // d^{n-i}( (d^i a) b - b (d^i a) )
};

// The coefficient matrix above; invertible for every n.
Matrix recovery_matrix(int n);

// Degree headroom a full recovery of the pair needs from the model.
int required_cutoff(int deg_a, int deg_b);

RecoverySystem build_system(const Model& m, const FockState& a, const FockState& b);

// Unique solution y_j = d^{n+j+1} c_j of the system, by exact inversion.
std::vector<FockState> solve_mod_torsion(const Model& m, const RecoverySystem& sys);

// Solves d^k x = w for homogeneous x of the given degree. The flag marks the
// one genuinely ambiguous case: target degree 0 with k >= 1, where any
// multiple of the vacuum is killed. Unsolvable input is a consistency error.
std::pair<FockState, bool> divide_partial(const Model& m, const FockState& w, int k,
                                          int target_degree);

// Vacuum coefficient of the top bracket coefficient of [a b], determined by
// expanding (a, u, b) = (int a)[u b] + (int u)[a b] with nop arithmetic.
// u must be admissible: d^{deg a + deg b} u not proportional to
// d^{deg u + deg b} a.
Scalar resolve_central(const Model& m, const FockState& a, const FockState& b,
                       const FockState& u);

// Same via the diagonal identity (a, a, a) = 2 (int a)[a a]; no helper needed.
Scalar resolve_central_self(const Model& m, const FockState& a);

struct RecoveryResult {
  LambdaPoly bracket;
  std::optional<FockState> u_used;  // empty when no central resolution was needed
  bool used_self_identity = false;
};

// Full pipeline; the result equals the directly computed bracket.
RecoveryResult recover_bracket(const Model& m, const FockState& a, const FockState& b);

}  // namespace voa
