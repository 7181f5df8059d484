#include "voa/recovery.hpp"

#include "voa/errors.hpp"

namespace voa {

Matrix recovery_matrix(int n) {
  if (n < 0) throw StructuralError("recovery matrix needs n >= 0");
  Matrix m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      m.at(i, j) = Scalar((j % 2 == 0) ? 1 : -1, i + j + 1);
  return m;
}

int required_cutoff(int deg_a, int deg_b) { return 2 * (deg_a + deg_b); }

namespace {

int degree_or_zero(const FockState& a) { return a.is_zero() ? 0 : a.degree(); }

void require_homogeneous(const FockState& a, const char* what) {
  if (!a.is_zero() && !a.is_homogeneous())
    throw StructuralError(std::string(what) + " must be homogeneous");
}

}  // namespace

RecoverySystem build_system(const Model& m, const FockState& a, const FockState& b) {
  require_homogeneous(a, "first argument");
  require_homogeneous(b, "second argument");
  RecoverySystem sys;
  if (degree_or_zero(a) == 0 || degree_or_zero(b) == 0) return sys;  // nothing to solve
  int n = a.degree() + b.degree() - 1;
  sys.n = n;
  sys.matrix = recovery_matrix(n);
  for (int i = 0; i <= n; ++i) {
    FockState da = m.derivative_pow(a, i);
    FockState diff = nop(m, da, b) - nop(m, b, da);
    sys.lhs.push_back(m.derivative_pow(diff, n - i));
  }
  return sys;
}

std::vector<FockState> solve_mod_torsion(const Model& m, const RecoverySystem& sys) {
  (void)m;
  if (sys.n < 0) return {};
  auto inv = inverse(sys.matrix);
  if (!inv) throw ConsistencyError("recovery matrix unexpectedly singular");
  std::vector<FockState> y(sys.n + 1);
  for (int j = 0; j <= sys.n; ++j)
    for (int i = 0; i <= sys.n; ++i) y[j] += inv->at(j, i) * sys.lhs[i];
  return y;
}

std::pair<FockState, bool> divide_partial(const Model& m, const FockState& w, int k,
                                          int target_degree) {
  if (k < 0 || target_degree < 0)
    throw StructuralError("derivative division wants k >= 0 and a valid degree");
  require_homogeneous(w, "dividend");
  bool ambiguous = (target_degree == 0 && k > 0);
  if (w.is_zero()) return {FockState(), ambiguous};
  if (w.degree() != target_degree + k)
    throw StructuralError("dividend degree does not match k + target degree");
  std::vector<Vector> cols;
  for (int i = 0; i < m.dim(target_degree); ++i)
    cols.push_back(m.to_vector(
        m.derivative_pow(m.basis_state(target_degree, i), k), w.degree()));
  auto coeffs = express_in_span(cols, m.to_vector(w, w.degree()));
  if (!coeffs)
    throw ConsistencyError("state is not divisible by that derivative power");
  FockState x;
  for (int i = 0; i < m.dim(target_degree); ++i)
    x += (*coeffs)[i] * m.basis_state(target_degree, i);
  return {x, ambiguous};
}

namespace {

// c_0 .. c_n of [a b] up to the central slot, which comes back as zero:
// system solve followed by derivative division.
std::vector<FockState> known_coefficients(const Model& m, const FockState& a,
                                          const FockState& b) {
  RecoverySystem sys = build_system(m, a, b);
  if (sys.n < 0) return {};
  std::vector<FockState> y = solve_mod_torsion(m, sys);
  int total = a.degree() + b.degree();
  std::vector<FockState> c;
  for (int j = 0; j <= sys.n; ++j)
    c.push_back(divide_partial(m, y[j], sys.n + j + 1, total - 1 - j).first);
  return c;
}

// (int_0^d x)[y b] assembled from explicit bracket coefficients.
FockState integral_times(const Model& m, const FockState& x,
                         const std::vector<FockState>& coeffs) {
  FockState out;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    out += Scalar(1, static_cast<long>(j) + 1) *
           nop(m, m.derivative_pow(x, static_cast<int>(j) + 1), coeffs[j]);
  }
  return out;
}

}  // namespace

Scalar resolve_central(const Model& m, const FockState& a, const FockState& b,
                       const FockState& u) {
  require_homogeneous(a, "first argument");
  require_homogeneous(b, "second argument");
  require_homogeneous(u, "resolvent");
  if (a.is_zero() || b.is_zero() || a.degree() + b.degree() == 0) return Scalar(0);
  if (u.is_zero() || u.degree() < 1)
    throw StructuralError("resolvent must be homogeneous of degree >= 1");
  int da = a.degree(), db = b.degree(), du = u.degree();
  int n = da + db - 1, nu = du + db - 1;
  int total = da + du + db;
  m.check_degree(total, "central resolution");

  FockState v_gamma = Scalar(1, n + 1) * m.derivative_pow(u, n + 1);
  FockState v_delta;
  if (da >= 1) v_delta = Scalar(1, nu + 1) * m.derivative_pow(a, nu + 1);
  Vector vg = m.to_vector(v_gamma, total);
  Vector vd = m.to_vector(v_delta, total);
  Subspace delta_line(total, m.dim(total));
  delta_line.insert(vd);
  if (delta_line.member(vg))
    throw StructuralError(
        "resolvent is derivative-dependent on the first argument");

  FockState residual = associator(m, a, u, b);
  residual -= integral_times(m, a, known_coefficients(m, u, b));
  residual -= integral_times(m, u, known_coefficients(m, a, b));
  auto coeffs = express_in_span({vg, vd}, m.to_vector(residual, total));
  if (!coeffs)
    throw ConsistencyError("central residual escapes the expected line");
  return (*coeffs)[0];
}

Scalar resolve_central_self(const Model& m, const FockState& a) {
  require_homogeneous(a, "argument");
  if (a.is_zero() || a.degree() == 0) return Scalar(0);
  int da = a.degree();
  int n = 2 * da - 1;
  m.check_degree(3 * da, "central resolution");
  FockState residual = associator(m, a, a, a);
  std::vector<FockState> known = known_coefficients(m, a, a);
  residual -= Scalar(2) * integral_times(m, a, known);
  FockState v = Scalar(2, n + 1) * m.derivative_pow(a, n + 1);
  auto coeffs = express_in_span({m.to_vector(v, 3 * da)},
                                m.to_vector(residual, 3 * da));
  if (!coeffs)
    throw ConsistencyError("central residual escapes the expected line");
  return (*coeffs)[0];
}

RecoveryResult recover_bracket(const Model& m, const FockState& a, const FockState& b) {
  require_homogeneous(a, "first argument");
  require_homogeneous(b, "second argument");
  RecoveryResult res;
  if (a.is_zero() || b.is_zero()) return res;
  int da = a.degree(), db = b.degree();
  int n = da + db - 1;
  if (n < 0) return res;
  if (2 * (da + db) - 1 > m.cutoff())
    throw CutoffError("bracket recovery at these degrees needs cutoff >= " +
                      std::to_string(required_cutoff(da, db)));

  std::vector<FockState> c = known_coefficients(m, a, b);

  Scalar gamma(0);
  if (da >= 1 && db >= 1) {
    if (a == b && 3 * da <= m.cutoff()) {
      gamma = resolve_central_self(m, a);
      res.u_used = a;
      res.used_self_identity = true;
    } else {
      // two orientations: resolve [a b] directly, or [b a] and flip via
      // skew symmetry of the top coefficient
      bool done = false;
      for (int orient = 0; orient < 2 && !done; ++orient) {
        const FockState& x = orient == 0 ? a : b;
        const FockState& y = orient == 0 ? b : a;
        int dx = x.degree(), dy = y.degree();
        for (int du = 1; du + dx + dy <= m.cutoff() && !done; ++du) {
          if (2 * (du + dy) - 1 > m.cutoff()) continue;
          for (int bi = 0; bi < m.dim(du) && !done; ++bi) {
            FockState u = m.basis_state(du, bi);
            FockState vg = m.derivative_pow(u, dx + dy);
            FockState vd = m.derivative_pow(x, du + dy);
            Subspace line(dx + du + dy, m.dim(dx + du + dy));
            line.insert(m.to_vector(vd, dx + du + dy));
            if (line.member(m.to_vector(vg, dx + du + dy))) continue;
            Scalar g = resolve_central(m, x, y, u);
            gamma = (orient == 0 || n % 2 == 1) ? g : -g;
            res.u_used = u;
            done = true;
          }
        }
      }
      if (!done)
        throw CutoffError(
            "no admissible resolvent fits the cutoff; bracket recovery at "
            "these degrees needs cutoff >= " +
            std::to_string(required_cutoff(da, db)));
    }
  }

  LambdaPoly out;
  for (size_t j = 0; j < c.size(); ++j)
    out.add_term(static_cast<int>(j), 0, c[j]);
  if (!gamma.is_zero()) {
    FockState central;
    central.add_term(FockMonomial(), gamma);
    out.add_term(n, 0, central);
  }
  res.bracket = out;
  return res;
}

}  // namespace voa
