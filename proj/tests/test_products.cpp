#include <functional>
#include <vector>

#include "doctest.h"
#include "voa/errors.hpp"
#include "voa/products.hpp"

using voa::FockMonomial;
using voa::FockState;
using voa::LambdaPoly;
using voa::Model;
using voa::Scalar;

namespace {

FockState alpha_word(std::vector<int> modes) {
  std::vector<voa::Factor> fs;
  for (int m : modes) fs.push_back(voa::Factor{0, m});
  return FockState(FockMonomial::from_factors(std::move(fs)));
}

// every ordered tuple of basis states with degrees summing to at most `total`
void for_tuples(const Model& m, int arity, int total,
                const std::function<void(const std::vector<FockState>&)>& fn) {
  std::vector<FockState> args;
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == arity) {
      fn(args);
      return;
    }
    for (int d = 0; d <= left; ++d)
      for (int i = 0; i < m.dim(d); ++i) {
        args.push_back(m.basis_state(d, i));
        rec(slot + 1, left - d);
        args.pop_back();
      }
  };
  rec(0, total);
}

}  // namespace

TEST_SUITE("products") {

TEST_CASE("generator products at level k") {
  Model m(1, Scalar(2), 8);
  FockState b = m.generator(0);
  // b_(1) b = k |0>, b_(0) b = 0, b_(-1) b = a[-1]^2|0>
  CHECK(nth_product(m, b, 1, b) == Scalar(2) * FockState::vacuum());
  CHECK(nth_product(m, b, 0, b).is_zero());
  CHECK(nth_product(m, b, 5, b).is_zero());
  CHECK(nop(m, b, b) == alpha_word({1, 1}));
  // nop with a generator is bare creation: b_( -1) x = a[-1] x
  FockState x = alpha_word({2, 1});
  CHECK(nop(m, b, x) == alpha_word({2, 1, 1}));
  // vacuum is a two sided unit for nop
  CHECK(nop(m, FockState::vacuum(), x) == x);
  CHECK(nop(m, x, FockState::vacuum()) == x);
}

TEST_CASE("lambda bracket of the generators") {
  Model m(1, Scalar(2), 8);
  FockState b = m.generator(0);
  LambdaPoly p = lambda_bracket(m, b, b);
  // [b_l b] = k l |0> : true lambda coefficient at power 1 is b_(1)b / 1!
  CHECK(p.degree_lambda() == 1);
  CHECK(p.coeff(0).is_zero());
  CHECK(p.coeff(1) == Scalar(2) * FockState::vacuum());

  // [b_l :bb:] = 2k l b + (lambda^0 term zero)
  LambdaPoly q = lambda_bracket(m, b, nop(m, b, b));
  CHECK(q.coeff(1) == Scalar(4) * b);
  CHECK(q.coeff(0).is_zero());

  Model r2(2, Scalar(1), 6);
  CHECK(lambda_bracket(r2, r2.generator(0), r2.generator(1)).is_zero());
}

TEST_CASE("virasoro element") {
  Model m(1, Scalar(2), 8);
  FockState w = virasoro(m);
  CHECK(w == Scalar(1, 4) * alpha_word({1, 1}));  // (1/2) k^{-1} :bb:

  // w_(1) x = deg(x) x and w_(0) x = dx on every basis state
  for (int d = 0; d <= 5; ++d)
    for (int i = 0; i < m.dim(d); ++i) {
      FockState x = m.basis_state(d, i);
      CHECK(nth_product(m, w, 1, x) == Scalar(d) * x);
      CHECK(nth_product(m, w, 0, x) == m.derivative(x));
    }

  // central term: w_(3) w = (c/2) |0> with c = rank
  CHECK(nth_product(m, w, 3, w) == Scalar(1, 2) * FockState::vacuum());
  Model r2(2, Scalar(3), 6);
  CHECK(nth_product(r2, virasoro(r2), 3, virasoro(r2)) == FockState::vacuum());
}

TEST_CASE("translation axiom pieces") {
  Model m(1, Scalar(1), 8);
  FockState b = m.generator(0);
  FockState bb = nop(m, b, b);
  // d(ab) = (da)b + a(db)
  CHECK(m.derivative(nop(m, b, bb)) ==
        nop(m, m.derivative(b), bb) + nop(m, b, m.derivative(bb)));
  // (da)_(n) b = -n a_(n-1) b
  for (int n = -2; n <= 3; ++n)
    CHECK(nth_product(m, m.derivative(b), n, bb) ==
          Scalar(-n) * nth_product(m, b, n - 1, bb));
}

TEST_CASE("associator matches the quasi associativity correction") {
  Model m(1, Scalar(3), 10);
  FockState b = m.generator(0);
  CHECK(associator(m, b, b, b) == quasi_assoc_rhs(m, b, b, b));
  // frozen value: (bb)b - b(bb) = k d^2 b = 2k a[-3]|0>
  CHECK(associator(m, b, b, b) == Scalar(6) * alpha_word({3}));

  FockState bb = nop(m, b, b);
  CHECK(associator(m, bb, b, b) == quasi_assoc_rhs(m, bb, b, b));
  CHECK(associator(m, b, bb, b) == quasi_assoc_rhs(m, b, bb, b));
}

TEST_CASE("identity suite passes exhaustively on small tuples") {
  Model m(1, Scalar(1), 8);
  for (voa::IdentityName id : voa::all_identities()) {
    int arity = identity_arity(id);
    int budget = 4;
    INFO("identity ", identity_str(id));
    if (arity == 0) {
      CHECK(check_identity(m, id, {}).pass);
      continue;
    }
    int checked = 0;
    for_tuples(m, arity, budget, [&](const std::vector<FockState>& args) {
      voa::CheckReport r = check_identity(m, id, args);
      if (!r.pass) {
        CAPTURE(r.details.dump());
        CHECK(r.pass);
      }
      ++checked;
    });
    CHECK(checked > 0);
  }
}

TEST_CASE("identity suite also passes at rank 2") {
  Model m(2, Scalar(2), 6);
  for (voa::IdentityName id : voa::all_identities()) {
    int arity = identity_arity(id);
    if (arity == 0) {
      CHECK(check_identity(m, id, {}).pass);
      continue;
    }
    for_tuples(m, arity, 3, [&](const std::vector<FockState>& args) {
      CHECK(check_identity(m, id, args).pass);
    });
  }
}

TEST_CASE("virasoro check reports the central charge") {
  Model m(2, Scalar(5), 6);
  voa::CheckReport r = check_identity(m, voa::IdentityName::virasoro, {});
  CHECK(r.pass);
  CHECK(r.details["central_charge"] == "2");
}

TEST_CASE("identity name round trip") {
  for (voa::IdentityName id : voa::all_identities())
    CHECK(voa::identity_from_str(identity_str(id)) == id);
  CHECK_THROWS_AS(voa::identity_from_str("nonsense"), voa::StructuralError);
  CHECK_THROWS_AS(
      check_identity(Model(1, Scalar(1), 6), voa::IdentityName::skew,
                     {FockState::vacuum()}),
      voa::StructuralError);  // wrong arity
}

TEST_CASE("skew symmetry in closed form") {
  Model m(1, Scalar(1), 8);
  FockState b = m.generator(0);
  FockState bb = nop(m, b, b);
  LambdaPoly lhs = lambda_bracket(m, b, bb);
  LambdaPoly rhs = Scalar(-1) * substitute_minus_lambda_d(m, lambda_bracket(m, bb, b));
  CHECK(lhs == rhs);
}

TEST_CASE("integrate_dl_lower") {
  Model m(1, Scalar(1), 8);
  FockState b = m.generator(0);
  LambdaPoly p;
  p.add_term(0, 0, b);           // -> -(-1)^0? integral of l^0 c over [-d,0] = d(c)
  p.add_term(1, 0, b);           // l^1 c -> -d^2(c)/2 with sign (-1)^1
  FockState got = integrate_dl_lower(m, p);
  FockState want = m.derivative(b) - Scalar(1, 2) * m.derivative_pow(b, 2);
  CHECK(got == want);
}

TEST_CASE("right_assoc builds nested normally ordered words") {
  Model m(1, Scalar(1), 8);
  FockState b = m.generator(0);
  CHECK(right_assoc(m, {}) == FockState::vacuum());
  CHECK(right_assoc(m, {{0, b}}) == b);
  CHECK(right_assoc(m, {{1, b}}) == alpha_word({2}));
  // (0,b),(1,b) -> :b (db): = a[-1]a[-2]|0>
  CHECK(right_assoc(m, {{0, b}, {1, b}}) == nop(m, b, m.derivative(b)));
  CHECK(right_assoc(m, {{0, b}, {0, b}, {0, b}}) == nop(m, b, nop(m, b, b)));
}

TEST_CASE("subspace products respect the weight grading") {
  Model m(1, Scalar(1), 6);
  voa::GradedFamily full = m.full_family(3);
  voa::GradedFamily out =
      subspace_product(m, full, full, voa::ProductMode::all_products, 6);
  // products of low degree slices span everything reachable
  for (int d = 0; d <= 6; ++d) CHECK(out.slice(d).dim() == m.dim(d));

  // nonneg mode from the degree one slice only reaches lowered degrees
  voa::GradedFamily line(1);
  line.set(0, voa::Subspace(0, m.dim(0)));
  line.set(1, m.full_space(1));
  voa::GradedFamily small =
      subspace_product(m, line, line, voa::ProductMode::nonneg_products, 6);
  CHECK(small.slice(0).dim() == 1);  // b_(1)b = k|0>
  for (int d = 1; d <= 6; ++d) CHECK(small.slice(d).dim() == 0);
}

TEST_CASE("bracket audit flags bracket consumption") {
  Model m(1, Scalar(1), 8);
  FockState b = m.generator(0);
  CHECK_FALSE(voa::BracketAudit::active());
  {
    voa::BracketAudit audit;
    CHECK(voa::BracketAudit::active());
    voa::BracketAudit::reset_violations();
    nop(m, b, b);                       // n = -1: allowed
    m.derivative(b);                    // allowed
    CHECK(voa::BracketAudit::violations() == 0);
    nth_product(m, b, 1, b);            // n >= 0: counted
    CHECK(voa::BracketAudit::violations() == 1);
    lambda_bracket(m, b, b);            // counted too
    CHECK(voa::BracketAudit::violations() == 2);
  }
  CHECK_FALSE(voa::BracketAudit::active());
}

TEST_CASE("cutoff errors name the operation") {
  Model m(1, Scalar(1), 4);
  FockState top = FockState(FockMonomial::from_factors({{0, 4}}));
  try {
    nop(m, m.generator(0), top);
    FAIL("expected CutoffError");
  } catch (const voa::CutoffError& e) {
    CHECK(std::string(e.what()).find("cutoff") != std::string::npos);
  }
}

}  // TEST_SUITE
