#include "voa/orbifold.hpp"

#include <algorithm>

#include "voa/errors.hpp"

namespace voa {

namespace {

Matrix transpose(const Matrix& g) {
  Matrix t(g.cols, g.rows);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) t.at(j, i) = g.at(i, j);
  return t;
}

}  // namespace

GroupAction GroupAction::trivial(const Model& m) {
  return from_matrices(m, {Matrix::identity(m.rank())});
}

GroupAction GroupAction::sign_flip(const Model& m) {
  Matrix neg = Matrix::identity(m.rank());
  for (int i = 0; i < m.rank(); ++i) neg.at(i, i) = Scalar(-1);
  return from_matrices(m, {Matrix::identity(m.rank()), neg});
}

GroupAction GroupAction::flavor_swap(const Model& m) {
  if (m.rank() < 2) throw StructuralError("flavor swap needs rank >= 2");
  Matrix s = Matrix::identity(m.rank());
  s.at(0, 0) = Scalar(0);
  s.at(1, 1) = Scalar(0);
  s.at(0, 1) = Scalar(1);
  s.at(1, 0) = Scalar(1);
  return from_matrices(m, {Matrix::identity(m.rank()), s});
}

GroupAction GroupAction::from_matrices(const Model& m, std::vector<Matrix> elems) {
  if (elems.empty()) throw StructuralError("a group needs at least the identity");
  int r = m.rank();
  for (const auto& g : elems) {
    if (g.rows != r || g.cols != r)
      throw StructuralError("group element has the wrong shape");
    if (!(matmul(matmul(transpose(g), m.gram()), g) == m.gram()))
      throw StructuralError("group element does not preserve the level form");
  }
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j)
      if (elems[i] == elems[j]) throw StructuralError("repeated group element");
  auto present = [&](const Matrix& g) {
    return std::find(elems.begin(), elems.end(), g) != elems.end();
  };
  if (!present(Matrix::identity(r)))
    throw StructuralError("group is missing the identity");
  for (const auto& g : elems) {
    bool invertible = false;
    for (const auto& h : elems) {
      if (!present(matmul(g, h))) throw StructuralError("group is not closed");
      if (matmul(g, h) == Matrix::identity(r)) invertible = true;
    }
    if (!invertible) throw StructuralError("group element has no inverse");
  }
  GroupAction G;
  G.elements = std::move(elems);
  return G;
}

FockState group_apply(const Model& m, const Matrix& g, const FockState& a) {
  FockState out;
  for (const auto& [mono, c] : a.terms()) {
    std::vector<std::pair<FockMonomial, Scalar>> acc = {{FockMonomial(), c}};
    for (const auto& f : mono.factors()) {
      std::vector<std::pair<FockMonomial, Scalar>> next;
      for (const auto& [mm, cc] : acc) {
        for (int fp = 0; fp < m.rank(); ++fp) {
          const Scalar& w = g.at(fp, f.flavor);
          if (w.is_zero()) continue;
          next.emplace_back(mm.with_factor(Factor{fp, f.mode}), cc * w);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [mm, cc] : acc) out.add_term(mm, cc);
  }
  return out;
}

FockState reynolds(const Model& m, const GroupAction& G, const FockState& a) {
  FockState sum;
  for (const auto& g : G.elements) sum += group_apply(m, g, a);
  return Scalar(1, static_cast<long>(G.elements.size())) * sum;
}

GradedFamily invariant_family(const Model& m, const GroupAction& G, int cutoff) {
  m.check_degree(cutoff, "invariant family");
  GradedFamily fam(cutoff);
  for (int d = 0; d <= cutoff; ++d) {
    Subspace s(d, m.dim(d));
    for (int i = 0; i < m.dim(d); ++i) {
      FockState img = reynolds(m, G, m.basis_state(d, i));
      if (!img.is_zero()) s.insert(m.to_vector(img, d));
    }
    fam.set(d, std::move(s));
  }
  return fam;
}

std::vector<int> invariant_dims_by_character(const Model& m, const GroupAction& G,
                                             int cutoff) {
  m.check_degree(cutoff, "character count");
  std::vector<int> dims;
  for (int d = 0; d <= cutoff; ++d) {
    Scalar total(0);
    for (const auto& g : G.elements) {
      for (int i = 0; i < m.dim(d); ++i) {
        Vector img = m.to_vector(group_apply(m, g, m.basis_state(d, i)), d);
        total += img.at(i);
      }
    }
    Scalar avg = total / Scalar(static_cast<long>(G.elements.size()));
    if (!avg.is_integer() || avg.sign() < 0)
      throw ConsistencyError("character average is not a nonnegative integer");
    dims.push_back(static_cast<int>(avg.to_long()));
  }
  return dims;
}

SearchResult strong_gen_search(const Model& m, const GroupAction& G, int cutoff,
                               int max_gen_degree) {
  if (max_gen_degree < 0 || max_gen_degree > cutoff)
    throw StructuralError("generator degree bound must lie within the cutoff");
  GradedFamily U = invariant_family(m, G, cutoff);
  SearchResult res;
  for (int deg = 1; deg <= max_gen_degree; ++deg) {
    Subspace reach = reachable_family(m, res.generators, deg).slice(deg);
    for (const auto& row : U.slice(deg).rows()) {
      if (reach.member(row)) continue;
      reach.insert(row);
      res.generators.push_back(m.from_vector(row, deg));
      res.generator_degrees.push_back(deg);
    }
  }
  res.test = strong_gen_test(m, res.generators, cutoff, &U);
  return res;
}

FockState evaluate_witness(const Model& m, const std::vector<FockState>& X,
                           const std::vector<WitnessTerm>& terms) {
  FockState out;
  for (const auto& t : terms) {
    if (t.x_index < 0 || t.x_index >= static_cast<int>(X.size()))
      throw StructuralError("witness refers to a missing generator");
    FockState xd = m.derivative_pow(X[t.x_index], t.d);
    out += t.side == WitnessTerm::Side::x_left ? nop(m, xd, t.coeff)
                                               : nop(m, t.coeff, xd);
  }
  return out;
}

std::optional<std::vector<WitnessTerm>> xv_vx_membership(const Model& m,
                                                         const FockState& u,
                                                         const std::vector<FockState>& X,
                                                         int cutoff) {
  if (u.is_zero()) return std::vector<WitnessTerm>{};
  if (!u.is_homogeneous())
    throw StructuralError("membership solve wants a homogeneous state");
  for (const auto& x : X)
    if (x.is_zero() || !x.is_homogeneous() || x.degree() < 1)
      throw StructuralError("membership generators must be homogeneous of degree >= 1");
  int mu = u.degree();
  if (mu > cutoff) throw StructuralError("membership target beyond the cutoff");
  m.check_degree(mu, "membership solve");

  struct Column {
    int x_index;
    int d;
    int v_index;
    WitnessTerm::Side side;
  };
  std::vector<Column> meta;
  std::vector<Vector> cols;
  for (int side = 0; side < 2; ++side) {
    for (int xi = 0; xi < static_cast<int>(X.size()); ++xi) {
      int dx = X[xi].degree();
      for (int d = 0; dx + d <= mu; ++d) {
        FockState xd = m.derivative_pow(X[xi], d);
        int dv = mu - dx - d;
        for (int vi = 0; vi < m.dim(dv); ++vi) {
          FockState v = m.basis_state(dv, vi);
          FockState prod = side == 0 ? nop(m, xd, v) : nop(m, v, xd);
          meta.push_back({xi, d, vi,
                          side == 0 ? WitnessTerm::Side::x_left
                                    : WitnessTerm::Side::x_right});
          cols.push_back(m.to_vector(prod, mu));
        }
      }
    }
  }
  auto coeffs = express_in_span(cols, m.to_vector(u, mu));
  if (!coeffs) return std::nullopt;

  // merge columns that share (x, d, side) into one term with a state coefficient
  std::vector<WitnessTerm> terms;
  auto find_term = [&](int xi, int d, WitnessTerm::Side s) -> WitnessTerm& {
    for (auto& t : terms)
      if (t.x_index == xi && t.d == d && t.side == s) return t;
    terms.push_back(WitnessTerm{FockState(), xi, d, s});
    return terms.back();
  };
  for (size_t i = 0; i < meta.size(); ++i) {
    if ((*coeffs)[i].is_zero()) continue;
    int dv = mu - X[meta[i].x_index].degree() - meta[i].d;
    find_term(meta[i].x_index, meta[i].d, meta[i].side).coeff +=
        (*coeffs)[i] * m.basis_state(dv, meta[i].v_index);
  }
  return terms;
}

namespace {

std::unique_ptr<RewriteNode> rewrite_node(const Model& m, const GroupAction& G,
                                          const FockState& u,
                                          const std::vector<FockState>& X,
                                          const std::vector<WitnessTerm>& expr,
                                          RewriteResult& res) {
  if (!(evaluate_witness(m, X, expr) == u))
    throw StructuralError("witness does not evaluate to the target");
  auto node = std::make_unique<RewriteNode>();
  node->value = u;
  FockState rebuilt;
  for (const auto& t : expr) {
    FockState r = reynolds(m, G, t.coeff);
    if (r.is_zero()) continue;
    RewriteNode::Term nt;
    nt.x_index = t.x_index;
    nt.d = t.d;
    nt.side = t.side;
    nt.coeff = r;
    FockState xd = m.derivative_pow(X[t.x_index], t.d);
    rebuilt += t.side == WitnessTerm::Side::x_left ? nop(m, xd, r) : nop(m, r, xd);
    node->terms.push_back(std::move(nt));
  }
  // pushing every coefficient through the projector must preserve the value,
  // because the generators are invariant
  if (!(rebuilt == u))
    throw ConsistencyError("projecting the witness coefficients changed its value");
  for (auto& nt : node->terms) {
    if (nt.coeff.degree() == 0) {
      nt.scalar = nt.coeff.vacuum_coeff();
      continue;
    }
    auto w = xv_vx_membership(m, nt.coeff, X, m.cutoff());
    if (!w) {
      res.complete = false;
      res.missing.push_back(nt.coeff);
      continue;
    }
    nt.child = rewrite_node(m, G, nt.coeff, X, *w, res);
  }
  return node;
}

}  // namespace

RewriteResult hilbert_rewrite(const Model& m, const GroupAction& G, const FockState& u,
                              const std::vector<FockState>& X,
                              const std::vector<WitnessTerm>& expr) {
  if (u.is_zero() || !u.is_homogeneous() || u.degree() < 1)
    throw StructuralError("rewriting wants a homogeneous target of degree >= 1");
  if (!(reynolds(m, G, u) == u))
    throw StructuralError("rewriting target is not invariant");
  for (const auto& x : X)
    if (!(reynolds(m, G, x) == x))
      throw StructuralError("rewriting generators must be invariant");
  RewriteResult res;
  res.complete = true;
  res.tree = rewrite_node(m, G, u, X, expr, res);
  return res;
}

FockState evaluate_rewrite(const Model& m, const std::vector<FockState>& X,
                           const RewriteNode& node) {
  FockState out;
  for (const auto& t : node.terms) {
    FockState coeff;
    if (t.child)
      coeff = evaluate_rewrite(m, X, *t.child);
    else if (!t.coeff.is_zero() && t.coeff.degree() == 0)
      coeff = t.scalar * FockState::vacuum();
    else
      coeff = t.coeff;  // unresolved branch: fall back to the stored state
    FockState xd = m.derivative_pow(X[t.x_index], t.d);
    out += t.side == WitnessTerm::Side::x_left ? nop(m, xd, coeff)
                                               : nop(m, coeff, xd);
  }
  return out;
}

ordered_json rewrite_json(const Model& m, const std::vector<FockState>& X,
                          const RewriteNode& node) {
  ordered_json j;
  j["value"] = node.value.str();
  ordered_json terms = ordered_json::array();
  for (const auto& t : node.terms) {
    ordered_json tj;
    tj["x"] = t.x_index;
    tj["d"] = t.d;
    tj["side"] = t.side == WitnessTerm::Side::x_left ? "left" : "right";
    if (t.child)
      tj["coeff"] = rewrite_json(m, X, *t.child);
    else if (!t.coeff.is_zero() && t.coeff.degree() == 0)
      tj["scalar"] = t.scalar.str();
    else
      tj["unresolved"] = t.coeff.str();
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  return j;
}

}  // namespace voa
