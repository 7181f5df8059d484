#include "voa/lifilt.hpp"

#include <algorithm>
#include <set>

#include "voa/diffcomm.hpp"
#include "voa/errors.hpp"

namespace voa {

void for_each_word(const Model& m, const std::vector<FockState>& gens, int up_to,
                   const std::function<bool(int, int, const FockState&)>& fn) {
  m.check_degree(up_to, "word enumeration");
  for (const auto& g : gens)
    if (g.is_zero() || !g.is_homogeneous() || g.degree() < 1)
      throw StructuralError("word generators must be homogeneous of degree >= 1");
  if (!fn(0, 0, FockState::vacuum())) return;
  // suffix-first DFS: each step prepends a head d^d(g) to the word built so far
  std::function<bool(int, int, const FockState&)> rec =
      [&](int s, int dsum, const FockState& v) -> bool {
    for (size_t i = 0; i < gens.size(); ++i) {
      int base = gens[i].degree();
      for (int d = 0; s + base + d <= up_to; ++d) {
        FockState next = nop(m, m.derivative_pow(gens[i], d), v);
        if (!fn(s + base + d, dsum + d, next)) return false;
        if (!rec(s + base + d, dsum + d, next)) return false;
      }
    }
    return true;
  };
  rec(0, 0, FockState::vacuum());
}

GradedFamily reachable_family(const Model& m, const std::vector<FockState>& gens,
                              int up_to) {
  std::vector<Subspace> acc;
  int unfull = 0;
  for (int d = 0; d <= up_to; ++d) {
    acc.emplace_back(d, m.dim(d));
    ++unfull;
  }
  for_each_word(m, gens, up_to, [&](int s, int dsum, const FockState& v) {
    (void)dsum;
    if (!v.is_zero() && acc[s].dim() < m.dim(s)) {
      acc[s].insert(m.to_vector(v, s));
      if (acc[s].dim() == m.dim(s)) --unfull;
    }
    return unfull > 0;
  });
  GradedFamily fam(up_to);
  for (int d = 0; d <= up_to; ++d) fam.set(d, std::move(acc[d]));
  return fam;
}

Filtration::Filtration(const Model& m, int up_to) : model_(m), up_to_(up_to) {
  m.check_degree(up_to, "filtration");
  words_.resize(up_to + 1);
  std::vector<FockState> gens;
  for (int f = 0; f < m.rank(); ++f) gens.push_back(m.generator(f));
  for_each_word(m, gens, up_to, [&](int s, int dsum, const FockState& v) {
    if (!v.is_zero()) words_[s].emplace_back(dsum, m.to_vector(v, s));
    return true;
  });
}

const Subspace& Filtration::piece(int n, int m) const {
  if (m < 0 || m > up_to_)
    throw StructuralError("filtration degree " + std::to_string(m) + " out of range");
  int nn = std::max(n, 0);
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(nn, m);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Subspace s(m, model_.dim(m));
  if (nn == 0) {
    s = model_.full_space(m);
  } else {
    for (const auto& [dsum, vec] : words_[m])
      if (dsum >= nn) s.insert(vec);
  }
  return cache_.emplace(key, std::move(s)).first->second;
}

int rank_of(const Filtration& f, const FockState& a) {
  if (a.is_zero()) throw StructuralError("rank of the zero state is undefined");
  int m = a.degree();
  Vector v = f.model().to_vector(a, m);
  // membership is monotone decreasing in n; find the last true
  int lo = 0, hi = m + 1;  // piece(m+1, m) is trivially empty
  while (lo + 1 < hi) {
    int mid = (lo + hi) / 2;
    if (f.piece(mid, m).member(v))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

GrElement gr_element(const Filtration& f, const FockState& a) {
  return GrElement{a.degree(), a.is_zero() ? 0 : rank_of(f, a), a};
}

GrElement gr_mul(const Model& m, const GrElement& x, const GrElement& y) {
  return GrElement{x.degree + y.degree, x.rank + y.rank, nop(m, x.rep, y.rep)};
}

GrElement gr_d(const Model& m, const GrElement& x) {
  return GrElement{x.degree + 1, x.rank + 1, m.derivative(x.rep)};
}

bool gr_is_zero(const Filtration& f, const GrElement& x) {
  if (x.rep.is_zero()) return true;
  return f.piece(x.rank + 1, x.degree).member(f.model().to_vector(x.rep, x.degree));
}

CheckReport check_grok(const Filtration& f, int i, int j, int m) {
  if (i < 0 || j < 0 || i + j + 1 > m || m > f.up_to())
    throw StructuralError("grok check wants 0 <= i, j with i + j + 1 <= m <= range");
  const Model& M = f.model();
  CheckReport r;
  r.name = "grok";
  r.details["i"] = i;
  r.details["j"] = j;
  r.details["m"] = m;
  const Subspace& target = f.piece(i + j + 1, m);
  int checked = 0;
  ordered_json violations = ordered_json::array();
  for (int mi = 0; mi <= m; ++mi) {
    int mj = m - mi;
    const Subspace &A = f.piece(i, mi), &B = f.piece(j, mj);
    for (const auto& ra : A.rows()) {
      FockState x = M.from_vector(ra, mi);
      for (const auto& rb : B.rows()) {
        FockState y = M.from_vector(rb, mj);
        FockState c = commutator(M, x, y);
        ++checked;
        if (!target.member(M.to_vector(c, m)))
          violations.push_back(ordered_json{{"mi", mi},
                                            {"mj", mj},
                                            {"commutator", state_json(c)}});
      }
    }
  }
  r.details["pairs_checked"] = checked;
  r.details["violations"] = violations;
  r.pass = violations.empty();
  return r;
}

StrongGenReport strong_gen_test(const Model& m, const std::vector<FockState>& gens,
                                int up_to, const GradedFamily* target,
                                const Filtration* filt) {
  StrongGenReport rep;
  GradedFamily reach = reachable_family(m, gens, up_to);
  GradedFamily full;
  const GradedFamily* tgt = target;
  if (!tgt) {
    full = m.full_family(up_to);
    tgt = &full;
  }
  for (int d = 0; d <= up_to; ++d) {
    const Subspace &got = reach.slice(d), &want = tgt->slice(d);
    rep.reach_dims.push_back(got.dim());
    rep.target_dims.push_back(want.dim());
    if (!(got == want) && rep.pass) {
      rep.pass = false;
      rep.first_fail_degree = d;
      rep.missing_dim = want.dim() - Subspace::intersect(got, want).dim();
    }
  }
  // gr-level version of the same question: classes of words with exactly n
  // derivatives must span E_n/E_{n+1} cell by cell
  if (!target && filt && filt->up_to() >= up_to) {
    rep.gr_checked = true;
    std::map<std::pair<int, int>, std::vector<Vector>> cells;
    for_each_word(m, gens, up_to, [&](int s, int dsum, const FockState& v) {
      if (!v.is_zero()) cells[{s, dsum}].push_back(m.to_vector(v, s));
      return true;
    });
    for (int d = 0; d <= up_to && rep.gr_pass; ++d) {
      for (int n = 0; n <= d && rep.gr_pass; ++n) {
        Subspace cell = filt->piece(n + 1, d);
        auto it = cells.find({d, n});
        if (it != cells.end())
          for (const auto& v : it->second) cell.insert(v);
        if (!(cell == filt->piece(n, d))) rep.gr_pass = false;
      }
    }
    rep.agree = (rep.pass == rep.gr_pass);
  }
  return rep;
}

std::vector<FockState> ed_generators(const Model& m, const std::vector<FockState>& gens,
                                     int d) {
  if (d < 1) throw StructuralError("derivative total must be at least 1");
  for (const auto& g : gens)
    if (g.is_zero() || !g.is_homogeneous() || g.degree() < 1)
      throw StructuralError("generators must be homogeneous of degree >= 1");
  std::set<FockState> out;
  // words with every derivative order >= 1 summing to exactly d
  std::function<void(int, const FockState&)> rec = [&](int dtot, const FockState& v) {
    for (const auto& g : gens) {
      for (int di = 1; dtot + di <= d; ++di) {
        FockState next = nop(m, m.derivative_pow(g, di), v);
        if (dtot + di == d) {
          if (!next.is_zero()) out.insert(next);
        } else {
          rec(dtot + di, next);
        }
      }
    }
  };
  rec(0, FockState::vacuum());
  return {out.begin(), out.end()};
}

namespace {

// right-nested Fock word matching a variable monomial: u^(n) contributes the
// factor d^n b, higher orders first
FockState word_for(const Model& m, const DiffMonomial& mono) {
  std::vector<std::pair<int, FockState>> factors;
  const auto& exps = mono.exponents();
  for (auto it = exps.rbegin(); it != exps.rend(); ++it)
    for (int t = 0; t < it->second; ++t) factors.emplace_back(it->first, m.generator(0));
  return right_assoc(m, factors);
}

}  // namespace

CheckReport gr_to_diffcomm(const Filtration& f, int up_to) {
  const Model& M = f.model();
  if (M.rank() != 1)
    throw StructuralError("gr comparison is defined for the rank-1 model");
  if (up_to > f.up_to()) throw StructuralError("comparison range beyond filtration");
  DiffAlgebra A(up_to + 1);  // +1 headroom for derivative compatibility
  CheckReport r;
  r.name = "gr_to_diffcomm";
  ordered_json fails = ordered_json::array();

  ordered_json dims = ordered_json::array();
  for (int m = 0; m <= up_to; ++m) {
    dims.push_back(ordered_json{{"m", m}, {"fock", M.dim(m)}, {"poly", A.dim(m)}});
    if (M.dim(m) != A.dim(m))
      fails.push_back(ordered_json{{"kind", "dimension"}, {"m", m}});
  }
  r.details["dims"] = dims;

  // basis correspondence cell by cell: the words for weight-m monomials with
  // n derivatives must be independent mod E_{n+1} and fill E_n
  int cells = 0;
  for (int m = 0; m <= up_to; ++m) {
    std::map<int, std::vector<Vector>> by_rank;
    for (const auto& mono : A.basis(m))
      by_rank[m - mono.length()].push_back(M.to_vector(word_for(M, mono), m));
    for (int n = 0; n <= m; ++n) {
      ++cells;
      Subspace cell = f.piece(n + 1, m);
      int base = cell.dim();
      auto it = by_rank.find(n);
      int count = 0;
      if (it != by_rank.end()) {
        count = static_cast<int>(it->second.size());
        for (const auto& v : it->second) cell.insert(v);
      }
      bool spans = cell == f.piece(n, m);
      bool independent = cell.dim() == base + count;
      if (!spans || !independent)
        fails.push_back(ordered_json{{"kind", "cell"}, {"m", m}, {"n", n},
                                     {"spans", spans}, {"independent", independent}});
    }
  }
  r.details["cells_checked"] = cells;

  // derivative compatibility: d(word) matches the word of d(monomial) mod
  // one filtration level deeper
  int dchecks = 0;
  for (int m = 0; m + 1 <= up_to; ++m) {
    for (const auto& mono : A.basis(m)) {
      ++dchecks;
      FockState lhs = M.derivative(word_for(M, mono));
      DiffPoly dmono = A.d(DiffPoly(mono));
      for (const auto& [q, c] : dmono.terms())
        lhs -= c * word_for(M, q);
      int n = m - mono.length();
      if (!lhs.is_zero() &&
          !f.piece(n + 2, m + 1).member(M.to_vector(lhs, m + 1)))
        fails.push_back(
            ordered_json{{"kind", "derivative"}, {"monomial", mono.str()}});
    }
  }
  r.details["derivative_checks"] = dchecks;

  // product compatibility on low-degree pairs
  int pchecks = 0;
  int pair_budget = std::min(6, up_to);
  for (int m1 = 1; m1 <= pair_budget; ++m1) {
    for (int m2 = m1; m1 + m2 <= pair_budget; ++m2) {
      for (const auto& p : A.basis(m1)) {
        for (const auto& q : A.basis(m2)) {
          ++pchecks;
          FockState lhs = nop(M, word_for(M, p), word_for(M, q)) -
                          word_for(M, p.times(q));
          int n = (m1 - p.length()) + (m2 - q.length());
          if (!lhs.is_zero() &&
              !f.piece(n + 1, m1 + m2).member(M.to_vector(lhs, m1 + m2)))
            fails.push_back(ordered_json{{"kind", "product"},
                                         {"left", p.str()},
                                         {"right", q.str()}});
        }
      }
    }
  }
  r.details["product_checks"] = pchecks;
  r.details["failures"] = fails;
  r.pass = fails.empty();
  return r;
}

}  // namespace voa
