#include "voa/products.hpp"

#include <mutex>

#include "voa/errors.hpp"

namespace voa {

namespace {

thread_local int audit_depth = 0;
thread_local long audit_hits = 0;

int max_deg(const FockState& s) {
  int d = -1;
  for (const auto& [m, c] : s.terms()) d = std::max(d, m.weight());
  return d;
}

FockState nth_mono(const Model& M, const FockMonomial& a, int n, const FockMonomial& b);

FockState nth_mono_state(const Model& M, const FockMonomial& a, int n, const FockState& c) {
  FockState out;
  for (const auto& [mb, cb] : c.terms()) out += cb * nth_mono(M, a, n, mb);
  return out;
}

// Structural recursion on the first factor of a. With u = a{f}[-m]|0>:
//   u_(-1-j) contributes binom(j+m-1, m-1) alpha{f}_{-(j+m)}
//   u_(j)    contributes (-1)^{m-1} binom(j, m-1) alpha{f}_{j-m+1}
// and (u_(-1) rest)_(n) b unfolds into the two sums below.
FockState nth_mono(const Model& M, const FockMonomial& a, int n, const FockMonomial& b) {
  int dres = a.weight() + b.weight() - n - 1;
  if (dres < 0) return {};
  M.check_degree(dres, "nth product");
  if (a.is_vacuum()) return n == -1 ? FockState(b) : FockState();

  NthKey key{a, n, b};
  auto& cache = M.product_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.memo.find(key);
    if (it != cache.memo.end()) return it->second;
  }

  Factor lead = a.front();
  FockMonomial rest = a.tail();
  const int m = lead.mode;
  const int f = lead.flavor;
  FockState acc;

  // creation half: rest_(n+j) b dies once n+j reaches its weight budget
  int vanish = rest.weight() + b.weight();
  for (int j = 0; n + j < vanish; ++j) {
    FockState inner = nth_mono(M, rest, n + j, b);
    if (inner.is_zero()) continue;
    acc += Scalar::binomial(static_cast<unsigned long>(j + m - 1),
                            static_cast<unsigned long>(m - 1)) *
           M.mode_action(f, -(j + m), inner);
  }

  // annihilation half: only modes present in b can pair
  Scalar sign = (m % 2 == 0) ? Scalar(-1) : Scalar(1);
  for (int mu = 1; mu <= b.weight(); ++mu) {
    FockState hit = M.mode_action(f, mu, FockState(b));
    if (hit.is_zero()) continue;
    int j = mu + m - 1;
    Scalar c = sign * Scalar::binomial(static_cast<unsigned long>(j),
                                       static_cast<unsigned long>(m - 1));
    acc += c * nth_mono_state(M, rest, n - 1 - j, hit);
  }

  std::lock_guard<std::mutex> lock(cache.mu);
  auto [it, fresh] = cache.memo.try_emplace(std::move(key), std::move(acc));
  return it->second;
}

FockState nth_state(const Model& M, const FockState& a, int n, const FockState& b) {
  FockState out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out += (ca * cb) * nth_mono(M, ma, n, mb);
  return out;
}

LambdaPoly bracket_impl(const Model& M, const FockState& a, const FockState& b) {
  LambdaPoly p;
  int da = max_deg(a), db = max_deg(b);
  if (da < 0 || db < 0) return p;
  for (int n = 0; n <= da + db - 1; ++n) {
    FockState s = nth_state(M, a, n, b);
    if (!s.is_zero()) p.add_term(n, 0, Scalar::factorial(n).inverse() * s);
  }
  return p;
}

LambdaPoly swap_vars(const LambdaPoly& p) {
  LambdaPoly out;
  for (const auto& [k, s] : p.coefficients()) out.add_term(k.second, k.first, s);
  return out;
}

}  // namespace

namespace detail {
void note_bracket_use() {
  if (audit_depth > 0) ++audit_hits;
}
}  // namespace detail

BracketAudit::BracketAudit() { ++audit_depth; }
BracketAudit::~BracketAudit() { --audit_depth; }
bool BracketAudit::active() { return audit_depth > 0; }
long BracketAudit::violations() { return audit_hits; }
void BracketAudit::reset_violations() { audit_hits = 0; }

FockState nth_product(const Model& m, const FockState& a, int n, const FockState& b) {
  if (n >= 0) detail::note_bracket_use();
  return nth_state(m, a, n, b);
}

FockState nop(const Model& m, const FockState& a, const FockState& b) {
  return nth_state(m, a, -1, b);
}

FockState associator(const Model& m, const FockState& a, const FockState& b,
                     const FockState& c) {
  return nop(m, nop(m, a, b), c) - nop(m, a, nop(m, b, c));
}

FockState commutator(const Model& m, const FockState& a, const FockState& b) {
  return nop(m, a, b) - nop(m, b, a);
}

FockState right_assoc(const Model& m, const std::vector<std::pair<int, FockState>>& factors) {
  FockState acc = FockState::vacuum();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    acc = nop(m, m.derivative_pow(it->second, it->first), acc);
  return acc;
}

LambdaPoly lambda_bracket(const Model& m, const FockState& a, const FockState& b) {
  detail::note_bracket_use();
  return bracket_impl(m, a, b);
}

FockState integrate_dl_lower(const Model& m, const LambdaPoly& p) {
  if (!p.is_univariate())
    throw StructuralError("definite integral wants a univariate polynomial");
  FockState out;
  for (const auto& [k, s] : p.coefficients()) {
    int j = k.first;
    Scalar c = Scalar(j % 2 == 0 ? 1 : -1) / Scalar(j + 1);
    out += c * m.derivative_pow(s, j + 1);
  }
  return out;
}

LambdaPoly substitute_minus_lambda_d(const Model& m, const LambdaPoly& p) {
  if (!p.is_univariate())
    throw StructuralError("substitution wants a univariate polynomial");
  LambdaPoly out;
  for (const auto& [k, s] : p.coefficients()) {
    int j = k.first;
    Scalar sign(j % 2 == 0 ? 1 : -1);
    for (int i = 0; i <= j; ++i) {
      Scalar c = sign * Scalar::binomial(static_cast<unsigned long>(j),
                                         static_cast<unsigned long>(i));
      out.add_term(j - i, 0, c * m.derivative_pow(s, i));
    }
  }
  return out;
}

LambdaPoly apply_derivative(const Model& m, const LambdaPoly& p) {
  LambdaPoly out;
  for (const auto& [k, s] : p.coefficients())
    out.add_term(k.first, k.second, m.derivative(s));
  return out;
}

LambdaPoly poly_times_state(const Model& m, const LambdaPoly& p, const FockState& c) {
  LambdaPoly out;
  for (const auto& [k, s] : p.coefficients()) out.add_term(k.first, k.second, nop(m, s, c));
  return out;
}

LambdaPoly state_times_poly(const Model& m, const FockState& b, const LambdaPoly& p) {
  LambdaPoly out;
  for (const auto& [k, s] : p.coefficients()) out.add_term(k.first, k.second, nop(m, b, s));
  return out;
}

LambdaPoly wick_rhs(const Model& m, const FockState& a, const FockState& b,
                    const FockState& c) {
  detail::note_bracket_use();
  LambdaPoly pab = bracket_impl(m, a, b);
  LambdaPoly out = poly_times_state(m, pab, c);
  out += state_times_poly(m, b, bracket_impl(m, a, c));
  // integral term: [[a_l b]_mu c] then mu^k -> lambda^{k+1}/(k+1)
  for (const auto& [k, d] : pab.coefficients()) {
    LambdaPoly inner = bracket_impl(m, d, c);
    for (const auto& [kk, e] : inner.coefficients())
      out.add_term(k.first + kk.first + 1, 0, Scalar(kk.first + 1).inverse() * e);
  }
  return out;
}

FockState quasi_assoc_rhs(const Model& m, const FockState& a, const FockState& b,
                          const FockState& c) {
  FockState out;
  LambdaPoly pbc = bracket_impl(m, b, c);
  for (const auto& [k, cf] : pbc.coefficients()) {
    int j = k.first;
    out += Scalar(j + 1).inverse() * nop(m, m.derivative_pow(a, j + 1), cf);
  }
  LambdaPoly pac = bracket_impl(m, a, c);
  for (const auto& [k, cf] : pac.coefficients()) {
    int j = k.first;
    out += Scalar(j + 1).inverse() * nop(m, m.derivative_pow(b, j + 1), cf);
  }
  return out;
}

LambdaPoly bracket_a_bc(const Model& m, const FockState& a, const FockState& b,
                        const FockState& c) {
  detail::note_bracket_use();
  LambdaPoly out;
  LambdaPoly pbc = bracket_impl(m, b, c);
  for (const auto& [k, f] : pbc.coefficients()) {
    LambdaPoly inner = bracket_impl(m, a, f);
    for (const auto& [kk, g] : inner.coefficients()) out.add_term(kk.first, k.first, g);
  }
  return out;
}

LambdaPoly bracket_ab_c(const Model& m, const FockState& a, const FockState& b,
                        const FockState& c) {
  detail::note_bracket_use();
  LambdaPoly out;
  LambdaPoly pab = bracket_impl(m, a, b);
  for (const auto& [k, d] : pab.coefficients()) {
    LambdaPoly inner = bracket_impl(m, d, c);
    for (const auto& [kk, h] : inner.coefficients()) {
      int kpow = kk.first;
      // (lambda + mu)^kpow expansion
      for (int t = 0; t <= kpow; ++t) {
        Scalar bc = Scalar::binomial(static_cast<unsigned long>(kpow),
                                     static_cast<unsigned long>(t));
        out.add_term(k.first + t, kpow - t, bc * h);
      }
    }
  }
  return out;
}

FockState virasoro(const Model& m) {
  auto inv = inverse(m.gram());
  if (!inv) throw StructuralError("level matrix not invertible");
  FockState out;
  for (int f = 0; f < m.rank(); ++f)
    for (int g = 0; g < m.rank(); ++g) {
      const Scalar& c = inv->at(f, g);
      if (c.is_zero()) continue;
      out.add_term(FockMonomial::from_factors({{f, 1}, {g, 1}}), Scalar(1, 2) * c);
    }
  return out;
}

const std::vector<IdentityName>& all_identities() {
  static const std::vector<IdentityName> ids = {
      IdentityName::left_symmetry,    IdentityName::commass,
      IdentityName::quasicomm,        IdentityName::wick,
      IdentityName::skew,             IdentityName::sesquilinearity,
      IdentityName::jacobi,           IdentityName::conformal_weight,
      IdentityName::virasoro,         IdentityName::vacuum,
      IdentityName::translation,
  };
  return ids;
}

std::string identity_str(IdentityName id) {
  switch (id) {
    case IdentityName::left_symmetry: return "left_symmetry";
    case IdentityName::commass: return "commass";
    case IdentityName::quasicomm: return "quasicomm";
    case IdentityName::wick: return "wick";
    case IdentityName::skew: return "skew";
    case IdentityName::sesquilinearity: return "sesquilinearity";
    case IdentityName::jacobi: return "jacobi";
    case IdentityName::conformal_weight: return "conformal_weight";
    case IdentityName::virasoro: return "virasoro";
    case IdentityName::vacuum: return "vacuum";
    case IdentityName::translation: return "translation";
  }
  throw StructuralError("unknown identity");
}

IdentityName identity_from_str(const std::string& s) {
  for (auto id : all_identities())
    if (identity_str(id) == s) return id;
  throw StructuralError("unknown identity name: " + s);
}

int identity_arity(IdentityName id) {
  switch (id) {
    case IdentityName::left_symmetry:
    case IdentityName::commass:
    case IdentityName::wick:
    case IdentityName::jacobi: return 3;
    case IdentityName::quasicomm:
    case IdentityName::skew:
    case IdentityName::sesquilinearity:
    case IdentityName::translation: return 2;
    case IdentityName::conformal_weight:
    case IdentityName::vacuum: return 1;
    case IdentityName::virasoro: return 0;
  }
  throw StructuralError("unknown identity");
}

CheckReport check_identity(const Model& m, IdentityName id,
                           const std::vector<FockState>& args) {
  if (static_cast<int>(args.size()) != identity_arity(id))
    throw StructuralError("identity " + identity_str(id) + " expects " +
                          std::to_string(identity_arity(id)) + " arguments");
  CheckReport r;
  r.name = identity_str(id);
  ordered_json ja = ordered_json::array();
  for (const auto& s : args) ja.push_back(s.str());
  r.details["args"] = ja;

  auto finish_state = [&](const FockState& d) {
    r.pass = d.is_zero();
    r.details["discrepancy"] = state_json(d);
  };
  auto finish_poly = [&](const LambdaPoly& d) {
    r.pass = d.is_zero();
    r.details["discrepancy"] = poly_json(d);
  };

  switch (id) {
    case IdentityName::left_symmetry: {
      finish_state(associator(m, args[0], args[1], args[2]) -
                   associator(m, args[1], args[0], args[2]));
      break;
    }
    case IdentityName::commass: {
      const auto &a = args[0], &b = args[1], &c = args[2];
      FockState rhs = nop(m, commutator(m, c, a), b);
      rhs += nop(m, a, commutator(m, c, b));
      rhs -= commutator(m, c, nop(m, a, b));
      finish_state(associator(m, a, b, c) - rhs);
      break;
    }
    case IdentityName::quasicomm: {
      finish_state(commutator(m, args[0], args[1]) -
                   integrate_dl_lower(m, lambda_bracket(m, args[0], args[1])));
      break;
    }
    case IdentityName::wick: {
      LambdaPoly lhs = lambda_bracket(m, args[0], nop(m, args[1], args[2]));
      finish_poly(lhs - wick_rhs(m, args[0], args[1], args[2]));
      break;
    }
    case IdentityName::skew: {
      LambdaPoly lhs = lambda_bracket(m, args[0], args[1]);
      LambdaPoly rhs = substitute_minus_lambda_d(m, lambda_bracket(m, args[1], args[0]));
      finish_poly(lhs + rhs);
      break;
    }
    case IdentityName::sesquilinearity: {
      const auto &a = args[0], &b = args[1];
      LambdaPoly p = lambda_bracket(m, a, b);
      LambdaPoly d_left = lambda_bracket(m, m.derivative(a), b) + p.shifted(1, 0);
      LambdaPoly d_right =
          lambda_bracket(m, a, m.derivative(b)) - (apply_derivative(m, p) + p.shifted(1, 0));
      r.pass = d_left.is_zero() && d_right.is_zero();
      r.details["discrepancy"] =
          ordered_json{{"derivative_left", poly_json(d_left)},
                       {"derivative_right", poly_json(d_right)}};
      break;
    }
    case IdentityName::jacobi: {
      const auto &a = args[0], &b = args[1], &c = args[2];
      LambdaPoly d = bracket_a_bc(m, a, b, c);
      d -= swap_vars(bracket_a_bc(m, b, a, c));
      d -= bracket_ab_c(m, a, b, c);
      finish_poly(d);
      break;
    }
    case IdentityName::conformal_weight: {
      const auto& x = args[0];
      if (x.is_zero() || !x.is_homogeneous())
        throw StructuralError("conformal weight check wants a nonzero homogeneous state");
      int w = x.degree();
      LambdaPoly p = lambda_bracket(m, virasoro(m), x);
      FockState d0 = p.coeff(0) - m.derivative(x);
      FockState d1 = p.coeff(1) - Scalar(w) * x;
      r.pass = d0.is_zero() && d1.is_zero();
      r.details["weight"] = w;
      r.details["discrepancy"] =
          ordered_json{{"coeff0", state_json(d0)}, {"coeff1", state_json(d1)}};
      break;
    }
    case IdentityName::virasoro: {
      FockState w = virasoro(m);
      LambdaPoly p = lambda_bracket(m, w, w);
      FockState d0 = p.coeff(0) - m.derivative(w);
      FockState d1 = p.coeff(1) - Scalar(2) * w;
      FockState d2 = p.coeff(2);
      FockState c3 = p.coeff(3);
      Scalar charge = Scalar(12) * c3.vacuum_coeff();
      FockState d3 = c3 - (Scalar(1, 12) * charge) * FockState::vacuum();
      bool higher = true;
      for (const auto& [k, s] : p.coefficients())
        if (k.first >= 4 && !s.is_zero()) higher = false;
      r.pass = d0.is_zero() && d1.is_zero() && d2.is_zero() && d3.is_zero() && higher;
      r.details["central_charge"] = charge.str();
      r.details["discrepancy"] = ordered_json{{"coeff0", state_json(d0)},
                                              {"coeff1", state_json(d1)},
                                              {"coeff2", state_json(d2)},
                                              {"coeff3", state_json(d3)}};
      break;
    }
    case IdentityName::vacuum: {
      const auto& a = args[0];
      FockState dl = nop(m, FockState::vacuum(), a) - a;
      FockState dr = nop(m, a, FockState::vacuum()) - a;
      int da = max_deg(a);
      FockState dpos;
      for (int n = 0; n <= da + 1; ++n)
        dpos += nth_product(m, a, n, FockState::vacuum());
      FockState dt = nth_product(m, a, -2, FockState::vacuum()) - m.derivative(a);
      r.pass = dl.is_zero() && dr.is_zero() && dpos.is_zero() && dt.is_zero();
      r.details["discrepancy"] = ordered_json{{"unit_left", state_json(dl)},
                                              {"unit_right", state_json(dr)},
                                              {"nonneg_modes", state_json(dpos)},
                                              {"creation_vs_derivative", state_json(dt)}};
      break;
    }
    case IdentityName::translation: {
      const auto &a = args[0], &b = args[1];
      int da = max_deg(a), db = max_deg(b);
      ordered_json fails = ordered_json::array();
      bool ok = true;
      if (da >= 0 && db >= 0) {
        for (int n = da + db - m.cutoff(); n <= da + db; ++n) {
          FockState leib = m.derivative(nth_product(m, a, n, b)) -
                           nth_product(m, m.derivative(a), n, b) -
                           nth_product(m, a, n, m.derivative(b));
          FockState shift = nth_product(m, m.derivative(a), n, b) +
                            Scalar(n) * nth_product(m, a, n - 1, b);
          if (!leib.is_zero() || !shift.is_zero()) {
            ok = false;
            fails.push_back(ordered_json{{"n", n},
                                         {"leibniz", state_json(leib)},
                                         {"shifted_mode", state_json(shift)}});
          }
        }
      }
      r.pass = ok;
      r.details["discrepancy"] = fails;
      break;
    }
  }
  return r;
}

GradedFamily subspace_product(const Model& m, const GradedFamily& a, const GradedFamily& b,
                              ProductMode mode, int out_cutoff) {
  m.check_degree(out_cutoff, "subspace product");
  GradedFamily out(out_cutoff);
  std::vector<Subspace> acc;
  acc.reserve(out_cutoff + 1);
  for (int d = 0; d <= out_cutoff; ++d) acc.emplace_back(d, m.dim(d));
  for (int ma = 0; ma <= a.max_degree(); ++ma) {
    for (int mb = 0; mb <= b.max_degree(); ++mb) {
      const Subspace &sa = a.slice(ma), &sb = b.slice(mb);
      if (sa.dim() == 0 || sb.dim() == 0) continue;
      int n_lo = ma + mb - 1 - out_cutoff;
      if (mode == ProductMode::nonneg_products) n_lo = std::max(0, n_lo);
      for (const auto& ra : sa.rows()) {
        FockState x = m.from_vector(ra, ma);
        for (const auto& rb : sb.rows()) {
          FockState y = m.from_vector(rb, mb);
          for (int n = n_lo; n <= ma + mb - 1; ++n) {
            if (mode == ProductMode::nonneg_products && n < 0) continue;
            FockState p = nth_product(m, x, n, y);
            if (p.is_zero()) continue;
            int d = ma + mb - n - 1;
            acc[d].insert(m.to_vector(p, d));
          }
        }
      }
    }
  }
  for (int d = 0; d <= out_cutoff; ++d) out.set(d, std::move(acc[d]));
  return out;
}

}  // namespace voa
