#include "voa/diffcomm.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

DiffMonomial DiffMonomial::from_exponents(std::vector<std::pair<int, int>> exps) {
  std::sort(exps.begin(), exps.end());
  DiffMonomial m;
  for (auto [n, mult] : exps) {
    if (n < 0) throw StructuralError("negative variable order");
    if (mult < 0) throw StructuralError("negative exponent");
    if (mult == 0) continue;
    if (!m.exps_.empty() && m.exps_.back().first == n)
      m.exps_.back().second += mult;
    else
      m.exps_.emplace_back(n, mult);
  }
  return m;
}

int DiffMonomial::weight() const {
  int w = 0;
  for (auto [n, mult] : exps_) w += (n + 1) * mult;
  return w;
}

int DiffMonomial::length() const {
  int l = 0;
  for (auto [n, mult] : exps_) l += mult;
  return l;
}

DiffMonomial DiffMonomial::times(const DiffMonomial& o) const {
  std::vector<std::pair<int, int>> all = exps_;
  all.insert(all.end(), o.exps_.begin(), o.exps_.end());
  return from_exponents(std::move(all));
}

DiffMonomial DiffMonomial::with_var(int n, int mult) const {
  std::vector<std::pair<int, int>> all = exps_;
  all.emplace_back(n, mult);
  return from_exponents(std::move(all));
}

DiffMonomial DiffMonomial::without_one(int n) const {
  DiffMonomial m = *this;
  for (auto& [var, mult] : m.exps_) {
    if (var != n) continue;
    mult -= 1;
    if (mult == 0)
      m.exps_.erase(std::find_if(m.exps_.begin(), m.exps_.end(),
                                 [n](const auto& p) { return p.first == n; }));
    return m;
  }
  throw StructuralError("variable u^(" + std::to_string(n) + ") not present");
}

std::string DiffMonomial::str() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto [n, mult] : exps_) {
    if (!first) os << ' ';
    first = false;
    if (n == 0)
      os << 'u';
    else
      os << "u^(" << n << ")";
    if (mult > 1) os << '^' << mult;
  }
  return os.str();
}

void DiffPoly::add_term(const DiffMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator*(const Scalar& c, const DiffPoly& p) {
  DiffPoly out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : p.terms_) out.terms_.emplace(m, c * v);
  return out;
}

DiffPoly DiffPoly::mul(const DiffPoly& o) const {
  DiffPoly out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(m1.times(m2), c1 * c2);
  return out;
}

int DiffPoly::weight() const {
  if (terms_.empty()) return -1;
  int w = terms_.begin()->first.weight();
  for (const auto& [m, c] : terms_)
    if (m.weight() != w) throw StructuralError("weight of mixed-weight polynomial");
  return w;
}

bool DiffPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int w = terms_.begin()->first.weight();
  for (const auto& [m, c] : terms_)
    if (m.weight() != w) return false;
  return true;
}

std::string DiffPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar abs = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (!(abs == Scalar(1)) || m.is_one()) os << abs.str();
    if (!m.is_one()) {
      if (!(abs == Scalar(1))) os << '*';
      os << m.str();
    }
  }
  return os.str();
}

DiffAlgebra::DiffAlgebra(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw StructuralError("negative cutoff");
  bases_.resize(cutoff + 1);
  index_.resize(cutoff + 1);
}

const std::vector<DiffMonomial>& DiffAlgebra::basis(int w) const {
  if (w < 0 || w > cutoff_)
    throw CutoffError("weight " + std::to_string(w) + " outside cutoff " +
                      std::to_string(cutoff_));
  if (bases_[w].empty() && index_[w].empty()) {
    // monomials of weight w: partitions of w with part p giving a u^(p-1)
    std::vector<DiffMonomial> out;
    std::vector<std::pair<int, int>> cur;  // (variable order, multiplicity)
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
      if (rem == 0) {
        out.push_back(DiffMonomial::from_exponents(cur));
        return;
      }
      for (int p = std::min(rem, maxp); p >= 1; --p) {
        if (!cur.empty() && cur.back().first == p - 1)
          cur.back().second += 1;
        else
          cur.emplace_back(p - 1, 1);
        rec(rem - p, p);
        if (cur.back().second > 1)
          cur.back().second -= 1;
        else
          cur.pop_back();
      }
    };
    rec(w, w);
    std::sort(out.begin(), out.end());
    for (int i = 0; i < static_cast<int>(out.size()); ++i) index_[w][out[i]] = i;
    bases_[w] = std::move(out);
  }
  return bases_[w];
}

int DiffAlgebra::index_of(const DiffMonomial& m) const {
  int w = m.weight();
  basis(w);
  auto it = index_[w].find(m);
  if (it == index_[w].end()) throw StructuralError("monomial outside basis: " + m.str());
  return it->second;
}

DiffPoly DiffAlgebra::d(const DiffPoly& p) const {
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.weight() + 1 > cutoff_)
      throw CutoffError("derivative leaves weight window at " + std::to_string(m.weight() + 1));
    for (auto [n, mult] : m.exponents())
      out.add_term(m.without_one(n).with_var(n + 1), Scalar(mult) * c);
  }
  return out;
}

DiffPoly DiffAlgebra::sigma(const DiffPoly& p) const {
  DiffPoly out;
  for (const auto& [m, c] : p.terms())
    out.add_term(m, m.length() % 2 == 0 ? c : -c);
  return out;
}

DiffPoly DiffAlgebra::reynolds(const DiffPoly& p) const {
  DiffPoly out = p;
  out += sigma(p);
  return Scalar(1, 2) * out;
}

Vector DiffAlgebra::to_vector(const DiffPoly& p, int w) const {
  Vector v;
  for (const auto& [m, c] : p.terms()) {
    if (m.weight() != w)
      throw StructuralError("polynomial has weight " + std::to_string(m.weight()) +
                            " term, expected " + std::to_string(w));
    v.add_term(index_of(m), c);
  }
  return v;
}

DiffPoly DiffAlgebra::from_vector(const Vector& v, int w) const {
  const auto& b = basis(w);
  DiffPoly out;
  for (const auto& [i, c] : v.entries()) {
    if (i >= static_cast<int>(b.size()))
      throw StructuralError("vector index outside weight " + std::to_string(w) + " basis");
    out.add_term(b[i], c);
  }
  return out;
}

Subspace DiffAlgebra::invariant_slice(int w) const {
  const auto& b = basis(w);
  Subspace s(w, static_cast<int>(b.size()));
  for (int i = 0; i < static_cast<int>(b.size()); ++i)
    if (b[i].length() % 2 == 0) s.insert(Vector::unit(i));
  return s;
}

std::vector<int> DiffAlgebra::invariant_dims(int up_to) const {
  std::vector<int> out;
  for (int w = 0; w <= up_to; ++w) out.push_back(invariant_slice(w).dim());
  return out;
}

GradedFamily DiffAlgebra::subalgebra_span(const std::vector<DiffPoly>& gens, int up_to) const {
  if (up_to > cutoff_) throw CutoffError("span range above cutoff");
  for (const auto& g : gens)
    if (g.is_zero() || !g.is_homogeneous() || g.weight() < 1)
      throw StructuralError("subalgebra generators must be homogeneous of weight >= 1");
  GradedFamily fam(up_to);
  std::vector<Subspace> acc;
  for (int w = 0; w <= up_to; ++w) acc.emplace_back(w, dim(w));
  acc[0].insert(Vector::unit(0));  // the constant 1

  // products over factors d^k(gens[i]); factor multisets enumerated once via
  // nondecreasing (i, k), the partial product inserted at every step
  std::function<void(size_t, int, int, const DiffPoly&)> rec =
      [&](size_t gi, int kmin, int budget, const DiffPoly& value) {
        for (size_t i = gi; i < gens.size(); ++i) {
          int base = gens[i].weight();
          for (int k = (i == gi ? kmin : 0); base + k <= budget; ++k) {
            DiffPoly factor = gens[i];
            for (int t = 0; t < k; ++t) factor = d(factor);
            DiffPoly next = value.mul(factor);
            if (next.is_zero()) continue;
            int w = next.weight();
            acc[w].insert(to_vector(next, w));
            rec(i, k, budget - base - k, next);
          }
        }
      };
  rec(0, 0, up_to, DiffPoly::one());
  for (int w = 0; w <= up_to; ++w) fam.set(w, std::move(acc[w]));
  return fam;
}

DiffAlgebra::GrowthResult DiffAlgebra::generator_growth(int up_to) const {
  if (up_to > cutoff_) throw CutoffError("growth range above cutoff");
  GrowthResult res;
  for (int w = 1; w <= up_to; ++w) {
    GradedFamily reach = subalgebra_span(res.generators, w);
    Subspace inv = invariant_slice(w);
    const Subspace& got = reach.slice(w);
    // products of invariants stay invariant, so the reachable slice must sit
    // inside the invariant slice; anything else is a bug
    if (!inv.contains(got))
      throw ConsistencyError("reachable span left the invariant subspace at weight " +
                             std::to_string(w));
    GrowthRow row;
    row.weight = w;
    row.invariant_dim = inv.dim();
    row.reachable_dim = got.dim();
    Subspace cur = got;
    for (const auto& b : basis(w)) {
      if (b.length() % 2 != 0) continue;
      Vector v = Vector::unit(index_of(b));
      if (cur.member(v)) continue;
      cur.insert(v);
      res.generators.push_back(DiffPoly(b));
      row.new_generators += 1;
    }
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace voa
