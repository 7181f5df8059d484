#include "voa/ideals.hpp"

#include <algorithm>

#include "voa/errors.hpp"

namespace voa {

namespace {

void require_generators(const std::vector<FockState>& X) {
  for (const auto& x : X)
    if (x.is_zero() || !x.is_homogeneous() || x.degree() < 1)
      throw StructuralError(
          "ideal generators must be homogeneous of degree >= 1 (the vacuum "
          "generates everything)");
}

}  // namespace

IdealFamily ideal_closure(const Model& m, const std::vector<FockState>& X,
                          IdealSide side, int cutoff) {
  m.check_degree(cutoff, "ideal closure");
  require_generators(X);
  std::vector<Subspace> slices;
  for (int d = 0; d <= cutoff; ++d) slices.emplace_back(d, m.dim(d));
  for (const auto& x : X)
    if (x.degree() <= cutoff) slices[x.degree()].insert(m.to_vector(x, x.degree()));
  for (int deg = 1; deg <= cutoff; ++deg) {
    Subspace& out = slices[deg];
    auto full = [&] { return out.dim() == m.dim(deg); };
    for (const auto& r : slices[deg - 1].rows()) {
      if (full()) break;
      out.insert(m.to_vector(m.derivative(m.from_vector(r, deg - 1)), deg));
    }
    for (int j = 1; j < deg && !full(); ++j) {
      int w = deg - j;
      for (const auto& r : slices[j].rows()) {
        if (full()) break;
        FockState s = m.from_vector(r, j);
        for (int bi = 0; bi < m.dim(w) && !full(); ++bi) {
          FockState v = m.basis_state(w, bi);
          out.insert(m.to_vector(nop(m, s, v), deg));
          if (side == IdealSide::two_sided && !full())
            out.insert(m.to_vector(nop(m, v, s), deg));
        }
      }
    }
  }
  IdealFamily I;
  I.side = side;
  I.generators = X;
  I.cutoff = cutoff;
  GradedFamily fam(cutoff);
  for (int d = 0; d <= cutoff; ++d) fam.set(d, std::move(slices[d]));
  I.family = std::move(fam);
  return I;
}

GradedFamily xv_span(const Model& m, const std::vector<FockState>& X, int cutoff) {
  m.check_degree(cutoff, "xv span");
  for (const auto& x : X)
    if (x.is_zero() || !x.is_homogeneous())
      throw StructuralError("xv span wants homogeneous nonzero elements");
  std::vector<Subspace> slices;
  for (int d = 0; d <= cutoff; ++d) slices.emplace_back(d, m.dim(d));
  for (const auto& x : X) {
    for (int k = 0; x.degree() + k <= cutoff; ++k) {
      FockState xd = m.derivative_pow(x, k);
      if (xd.is_zero()) break;
      int dx = xd.degree();
      for (int w = 0; dx + w <= cutoff; ++w) {
        Subspace& out = slices[dx + w];
        for (int bi = 0; bi < m.dim(w); ++bi) {
          if (out.dim() == m.dim(dx + w)) break;
          out.insert(m.to_vector(nop(m, xd, m.basis_state(w, bi)), dx + w));
        }
      }
    }
  }
  GradedFamily fam(cutoff);
  for (int d = 0; d <= cutoff; ++d) fam.set(d, std::move(slices[d]));
  return fam;
}

CheckReport audit_closed(const Model& m, const IdealFamily& I) {
  CheckReport r;
  r.name = "ideal_closed";
  int checks = 0;
  ordered_json violations = ordered_json::array();
  for (int deg = 0; deg <= I.cutoff; ++deg) {
    for (const auto& row : I.family.slice(deg).rows()) {
      FockState s = m.from_vector(row, deg);
      if (deg + 1 <= I.cutoff) {
        ++checks;
        if (!I.family.slice(deg + 1).member(m.to_vector(m.derivative(s), deg + 1)))
          violations.push_back(ordered_json{{"op", "d"}, {"degree", deg}});
      }
      for (int w = 1; deg + w <= I.cutoff; ++w) {
        for (int bi = 0; bi < m.dim(w); ++bi) {
          FockState v = m.basis_state(w, bi);
          ++checks;
          if (!I.family.slice(deg + w).member(m.to_vector(nop(m, s, v), deg + w)))
            violations.push_back(
                ordered_json{{"op", "nop_right"}, {"degree", deg}, {"w", w}});
          if (I.side == IdealSide::two_sided) {
            ++checks;
            if (!I.family.slice(deg + w).member(m.to_vector(nop(m, v, s), deg + w)))
              violations.push_back(
                  ordered_json{{"op", "nop_left"}, {"degree", deg}, {"w", w}});
          }
        }
      }
    }
  }
  r.details["checks"] = checks;
  r.details["violations"] = violations;
  r.pass = violations.empty();
  return r;
}

std::optional<int> is_full(const Filtration& f, const IdealFamily& I) {
  if (I.cutoff > f.up_to())
    throw StructuralError("fullness sweep needs filtration data through the cutoff");
  for (int N = 0; N < I.cutoff; ++N) {
    bool ok = true;
    for (int m = 0; m <= I.cutoff && ok; ++m)
      if (!I.family.slice(m).contains(f.piece(N, m))) ok = false;
    if (ok) return N;
  }
  return std::nullopt;
}

CheckReport ideal_strong_gen_test(const Filtration& f, const GradedFamily& I,
                                  const std::vector<FockState>& X) {
  const Model& m = f.model();
  int cutoff = I.max_degree();
  if (cutoff > f.up_to())
    throw StructuralError("strong generation test needs filtration data through the cutoff");
  for (const auto& x : X) {
    if (x.is_zero() || !x.is_homogeneous())
      throw StructuralError("strong generation wants homogeneous nonzero elements");
    if (x.degree() > cutoff || !I.slice(x.degree()).member(m.to_vector(x, x.degree())))
      throw StructuralError("strong generation candidates must lie inside the ideal");
  }

  CheckReport r;
  r.name = "ideal_strong_gen";
  GradedFamily xv = xv_span(m, X, cutoff);
  bool flat = true;
  ordered_json dims = ordered_json::array();
  for (int d = 0; d <= cutoff; ++d) {
    bool eq = xv.slice(d) == I.slice(d);
    dims.push_back(ordered_json{
        {"degree", d}, {"xv", xv.slice(d).dim()}, {"ideal", I.slice(d).dim()}});
    if (!eq) flat = false;
  }
  r.details["dims"] = dims;
  r.details["flat_pass"] = flat;

  // same question in the associated graded: for each cell E_n/E_{n+1} at
  // degree m, the classes of nop(d^k x, v) with rank(x) + k + rank(v) = n
  // must span the cell cut out by I
  std::vector<int> xrank(X.size());
  for (size_t i = 0; i < X.size(); ++i) xrank[i] = rank_of(f, X[i]);
  bool gr = true;
  for (int deg = 0; deg <= cutoff && gr; ++deg) {
    for (int n = 0; n <= deg && gr; ++n) {
      Subspace lhs = f.piece(n + 1, deg);
      Subspace cut = Subspace::intersect(I.slice(deg), f.piece(n, deg));
      for (const auto& row : cut.rows()) lhs.insert(row);
      Subspace rhs = f.piece(n + 1, deg);
      for (size_t i = 0; i < X.size(); ++i) {
        for (int k = 0; xrank[i] + k <= n; ++k) {
          int dv = deg - X[i].degree() - k;
          if (dv < 0) break;
          FockState xd = m.derivative_pow(X[i], k);
          if (xd.is_zero()) break;
          int j = n - xrank[i] - k;
          if (j > dv) continue;  // that filtration piece is zero
          for (const auto& vrow : f.piece(j, dv).rows())
            rhs.insert(m.to_vector(nop(m, xd, m.from_vector(vrow, dv)), deg));
        }
      }
      if (!(lhs == rhs)) gr = false;
    }
  }
  r.details["gr_pass"] = gr;
  bool agree = (flat == gr);
  r.details["agree"] = agree;
  r.pass = flat && agree;
  return r;
}

ChainReport chain_experiment(const Filtration& f,
                             const std::vector<std::vector<FockState>>& sets,
                             IdealSide side, int cutoff) {
  if (sets.empty()) throw StructuralError("chain experiment needs at least one set");
  for (size_t k = 0; k + 1 < sets.size(); ++k)
    for (const auto& x : sets[k])
      if (std::find(sets[k + 1].begin(), sets[k + 1].end(), x) == sets[k + 1].end())
        throw StructuralError("chain generator sets must be nested");
  const Model& m = f.model();
  if (cutoff > f.up_to())
    throw StructuralError("chain experiment needs filtration data through the cutoff");

  ChainReport r;
  std::vector<IdealFamily> ideals;
  for (const auto& X : sets) {
    ideals.push_back(ideal_closure(m, X, side, cutoff));
    std::vector<int> row;
    for (int d = 0; d <= cutoff; ++d) row.push_back(ideals.back().family.slice(d).dim());
    r.dims.push_back(std::move(row));
  }

  r.stable_from = static_cast<int>(sets.size()) - 1;
  for (int k = static_cast<int>(sets.size()) - 2; k >= 0; --k) {
    if (ideals[k].family == ideals[k + 1].family)
      r.stable_from = k;
    else
      break;
  }
  r.stable_within = sets.size() == 1 || r.stable_from < static_cast<int>(sets.size()) - 1;

  // graded equality of consecutive ideals must force slice equality
  for (size_t k = 0; k + 1 < sets.size(); ++k) {
    const GradedFamily &A = ideals[k].family, &B = ideals[k + 1].family;
    bool gr_equal = true;
    for (int deg = 0; deg <= cutoff && gr_equal; ++deg) {
      for (int n = 0; n <= deg && gr_equal; ++n) {
        Subspace ca = f.piece(n + 1, deg);
        Subspace cut_a = Subspace::intersect(A.slice(deg), f.piece(n, deg));
        for (const auto& row : cut_a.rows()) ca.insert(row);
        Subspace cb = f.piece(n + 1, deg);
        Subspace cut_b = Subspace::intersect(B.slice(deg), f.piece(n, deg));
        for (const auto& row : cut_b.rows()) cb.insert(row);
        if (!(ca == cb)) gr_equal = false;
      }
    }
    ++r.gr_pairs_checked;
    if (gr_equal && !(A == B)) r.gr_lemma_pass = false;
  }
  r.pass = r.stable_within && r.gr_lemma_pass;
  return r;
}

ordered_json chain_json(const ChainReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["stable_from"] = r.stable_from;
  j["stable_within"] = r.stable_within;
  j["gr_lemma_pass"] = r.gr_lemma_pass;
  j["gr_pairs_checked"] = r.gr_pairs_checked;
  j["dims"] = r.dims;
  return j;
}

}  // namespace voa
