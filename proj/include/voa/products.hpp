#pragma once

#include <string>
#include <vector>

#include "voa/fock.hpp"
#include "voa/lambda_poly.hpp"
#include "voa/report.hpp"

namespace voa {

// a_(n) b for any integer n, extended bilinearly. Memoized per model.
FockState nth_product(const Model& m, const FockState& a, int n, const FockState& b);

// Normally ordered product ab = a_(-1) b.
FockState nop(const Model& m, const FockState& a, const FockState& b);

// (ab)c - a(bc)
FockState associator(const Model& m, const FockState& a, const FockState& b,
                     const FockState& c);

// ab - ba
FockState commutator(const Model& m, const FockState& a, const FockState& b);

// Right-nested product of derivatives: for factors (d_i, x_i) computes
// :d^{d_1}x_1 (d^{d_2}x_2 (... )):, the empty product being the vacuum.
FockState right_assoc(const Model& m, const std::vector<std::pair<int, FockState>>& factors);

// [a_lambda b] = sum_n lambda^n a_(n)b / n!
LambdaPoly lambda_bracket(const Model& m, const FockState& a, const FockState& b);

// Integral from -d to 0: lambda^j c_j goes to (-1)^j d^{j+1}(c_j) / (j+1).
FockState integrate_dl_lower(const Model& m, const LambdaPoly& p);

// Substitution lambda -> -lambda - d (coefficients get derivative powers).
LambdaPoly substitute_minus_lambda_d(const Model& m, const LambdaPoly& p);

// Derivative applied to every coefficient.
LambdaPoly apply_derivative(const Model& m, const LambdaPoly& p);

// [a_lambda b]c and a[b_lambda c] style coefficient-wise products.
LambdaPoly poly_times_state(const Model& m, const LambdaPoly& p, const FockState& c);
LambdaPoly state_times_poly(const Model& m, const FockState& b, const LambdaPoly& p);

// [a_lambda bc] = [a_lambda b]c + b[a_lambda c] + int_0^lambda [[a_lambda b]_mu c] dmu
LambdaPoly wick_rhs(const Model& m, const FockState& a, const FockState& b,
                    const FockState& c);

// Correction term sum_j d^{j+1}a/(j+1) applied to the bracket coefficients:
// (ab)c - a(bc) should equal this.
FockState quasi_assoc_rhs(const Model& m, const FockState& a, const FockState& b,
                          const FockState& c);

// Nested brackets for the Jacobi check, as bivariate polynomials in
// (lambda, mu).
LambdaPoly bracket_a_bc(const Model& m, const FockState& a, const FockState& b,
                        const FockState& c);  // [a_lambda [b_mu c]]
LambdaPoly bracket_ab_c(const Model& m, const FockState& a, const FockState& b,
                        const FockState& c);  // [[a_lambda b]_{lambda+mu} c]

// Conformal vector (1/2) sum (K^{-1})_{fg} a{f}[-1]a{g}[-1]|0>.
FockState virasoro(const Model& m);

enum class IdentityName {
  left_symmetry,
  commass,
  quasicomm,
  wick,
  skew,
  sesquilinearity,
  jacobi,
  conformal_weight,
  virasoro,
  vacuum,
  translation,
};

const std::vector<IdentityName>& all_identities();
std::string identity_str(IdentityName id);
IdentityName identity_from_str(const std::string& s);
int identity_arity(IdentityName id);

// Evaluates both sides of the named identity on the given arguments and
// reports exact equality. details: args, discrepancy (and extras such as
// the central charge for the virasoro check).
CheckReport check_identity(const Model& m, IdentityName id,
                           const std::vector<FockState>& args);

enum class ProductMode { all_products, nonneg_products };

// Degreewise span of a_(n)b over slices of A and B, n restricted by mode,
// results graded by weight up to out_cutoff.
GradedFamily subspace_product(const Model& m, const GradedFamily& a, const GradedFamily& b,
                              ProductMode mode, int out_cutoff);

// Scoped audit: while any instance is alive, public calls that evaluate
// brackets or nth products with n >= 0 are counted. Lets tests prove that
// a code path derives brackets instead of consuming them.
class BracketAudit {
 public:
  BracketAudit();
  ~BracketAudit();
  BracketAudit(const BracketAudit&) = delete;
  BracketAudit& operator=(const BracketAudit&) = delete;

  static bool active();
  static long violations();
  static void reset_violations();
};

namespace detail {
void note_bracket_use();
}

}  // namespace voa
