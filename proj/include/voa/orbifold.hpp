#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "voa/ideals.hpp"
#include "voa/lifilt.hpp"
#include "voa/linalg.hpp"
#include "voa/products.hpp"
#include "voa/report.hpp"

namespace voa {

// Finite group acting on the flavor space by exact rational matrices that
// preserve the level form; the action extends factorwise to the whole model
// and commutes with derivatives and the grading.
struct GroupAction {
  std::vector<Matrix> elements;

  static GroupAction trivial(const Model& m);
  static GroupAction sign_flip(const Model& m);    // {1, -1}
  static GroupAction flavor_swap(const Model& m);  // {1, swap of flavors 0 and 1}
  // Validates: identity present, closed under products and inverses, and
  // every g preserves the level form (g^T K g = K).
  static GroupAction from_matrices(const Model& m, std::vector<Matrix> elems);
};

// Multiplicative extension of the flavor matrix; fixes the vacuum.
FockState group_apply(const Model& m, const Matrix& g, const FockState& a);

// Averaging projector (1/|G|) sum_g g(a).
FockState reynolds(const Model& m, const GroupAction& G, const FockState& a);

// Degreewise image of the projector.
GradedFamily invariant_family(const Model& m, const GroupAction& G, int cutoff);

// Same dimensions by a second route: average of traces of the group elements
// on each graded slice.
std::vector<int> invariant_dims_by_character(const Model& m, const GroupAction& G,
                                             int cutoff);

struct SearchResult {
  std::vector<FockState> generators;
  std::vector<int> generator_degrees;
  StrongGenReport test;
};

// Greedy generator hunt inside the invariant subalgebra: degree by degree up
// to max_gen_degree, adopt a complement basis of what current generators
// already reach; then test strong generation of the invariants up to cutoff.
SearchResult strong_gen_search(const Model& m, const GroupAction& G, int cutoff,
                               int max_gen_degree);

// One summand of a membership witness: nop(d^d x, coeff) when x_left,
// nop(coeff, d^d x) when x_right.
struct WitnessTerm {
  enum class Side { x_left, x_right };
  FockState coeff;
  int x_index = 0;
  int d = 0;
  Side side = Side::x_left;
};

FockState evaluate_witness(const Model& m, const std::vector<FockState>& X,
                           const std::vector<WitnessTerm>& terms);

// Expresses u inside span{nop(d^d x, v)} + span{nop(v, d^d x)} by exact
// linear solve, deterministic column order. nullopt when u is outside.
std::optional<std::vector<WitnessTerm>> xv_vx_membership(const Model& m,
                                                         const FockState& u,
                                                         const std::vector<FockState>& X,
                                                         int cutoff);

// u rebuilt from elements of X and scalars only: each node carries the terms
// of a witness whose coefficients were pushed through the projector; a
// positive-degree coefficient recurses into a child node, a degree-0 one
// bottoms out as a scalar.
struct RewriteNode {
  struct Term {
    int x_index = 0;
    int d = 0;
    WitnessTerm::Side side = WitnessTerm::Side::x_left;
    FockState coeff;  // projector image, kept for evaluation
    Scalar scalar;    // the coefficient when it has degree 0
    std::unique_ptr<RewriteNode> child;  // set when the coefficient recursed
  };
  FockState value;
  std::vector<Term> terms;
};

struct RewriteResult {
  bool complete = false;
  std::unique_ptr<RewriteNode> tree;
  std::vector<FockState> missing;  // invariants no witness could be found for
};

// The rewriting procedure: verify the witness, project its coefficients,
// recurse on the invariant coefficients of lower degree. A missing
// lower-degree witness is reported, not hidden.
RewriteResult hilbert_rewrite(const Model& m, const GroupAction& G, const FockState& u,
                              const std::vector<FockState>& X,
                              const std::vector<WitnessTerm>& expr);

// Recomputes the state a tree stands for, using only X, scalars and nop.
FockState evaluate_rewrite(const Model& m, const std::vector<FockState>& X,
                           const RewriteNode& node);

ordered_json rewrite_json(const Model& m, const std::vector<FockState>& X,
                          const RewriteNode& node);

}  // namespace voa
