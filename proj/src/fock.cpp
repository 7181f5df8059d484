#include "voa/fock.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

bool factor_canon_less(const Factor& a, const Factor& b) {
  if (a.flavor != b.flavor) return a.flavor < b.flavor;
  return a.mode > b.mode;
}

FockMonomial FockMonomial::from_factors(std::vector<Factor> fs) {
  for (const auto& f : fs) {
    if (f.flavor < 0) throw StructuralError("negative flavor index");
    if (f.mode < 1) throw StructuralError("creation mode must be positive");
  }
  std::sort(fs.begin(), fs.end(), factor_canon_less);
  FockMonomial m;
  m.factors_ = std::move(fs);
  return m;
}

int FockMonomial::weight() const {
  int w = 0;
  for (const auto& f : factors_) w += f.mode;
  return w;
}

Factor FockMonomial::front() const {
  if (factors_.empty()) throw StructuralError("front of vacuum monomial");
  return factors_.front();
}

FockMonomial FockMonomial::tail() const {
  if (factors_.empty()) throw StructuralError("tail of vacuum monomial");
  FockMonomial m;
  m.factors_.assign(factors_.begin() + 1, factors_.end());
  return m;
}

FockMonomial FockMonomial::with_factor(Factor f) const {
  if (f.flavor < 0) throw StructuralError("negative flavor index");
  if (f.mode < 1) throw StructuralError("creation mode must be positive");
  FockMonomial m = *this;
  auto it = std::lower_bound(m.factors_.begin(), m.factors_.end(), f, factor_canon_less);
  m.factors_.insert(it, f);
  return m;
}

bool FockMonomial::operator<(const FockMonomial& o) const {
  return std::lexicographical_compare(factors_.begin(), factors_.end(),
                                      o.factors_.begin(), o.factors_.end(),
                                      factor_canon_less);
}

std::string FockMonomial::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < factors_.size();) {
    size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    os << 'a' << factors_[i].flavor << "[-" << factors_[i].mode << ']';
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  os << "|0>";
  return os.str();
}

namespace {

int parse_uint(std::string_view s, size_t& pos, const char* what) {
  size_t start = pos;
  long v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    if (v > 1'000'000) throw StructuralError(std::string("absurd ") + what + " in monomial");
    ++pos;
  }
  if (pos == start) throw StructuralError(std::string("expected ") + what + " in monomial");
  return static_cast<int>(v);
}

void expect(std::string_view s, size_t& pos, std::string_view lit) {
  if (s.substr(pos, lit.size()) != lit)
    throw StructuralError("malformed monomial near position " + std::to_string(pos) + ": " +
                          std::string(s));
  pos += lit.size();
}

}  // namespace

FockMonomial FockMonomial::parse(std::string_view s) {
  std::vector<Factor> fs;
  size_t pos = 0;
  while (pos < s.size() && s[pos] == 'a') {
    ++pos;
    int flavor = parse_uint(s, pos, "flavor");
    expect(s, pos, "[-");
    int mode = parse_uint(s, pos, "mode");
    expect(s, pos, "]");
    int rep = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      rep = parse_uint(s, pos, "exponent");
    }
    for (int r = 0; r < rep; ++r) fs.push_back({flavor, mode});
  }
  expect(s, pos, "|0>");
  if (pos != s.size())
    throw StructuralError("trailing characters after monomial: " + std::string(s));
  return from_factors(std::move(fs));
}

void FockState::add_term(const FockMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FockState& FockState::operator+=(const FockState& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

FockState& FockState::operator-=(const FockState& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

FockState operator*(const Scalar& c, const FockState& s) {
  FockState out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : s.terms_) out.terms_.emplace(m, c * v);
  return out;
}

int FockState::degree() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.weight();
  for (const auto& [m, c] : terms_)
    if (m.weight() != d)
      throw StructuralError("degree of inhomogeneous state: " + str());
  return d;
}

bool FockState::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.weight();
  for (const auto& [m, c] : terms_)
    if (m.weight() != d) return false;
  return true;
}

Scalar FockState::vacuum_coeff() const {
  auto it = terms_.find(FockMonomial());
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::string FockState::str() const {
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
    if (!(abs == Scalar(1))) os << abs.str() << '*';
    os << m.str();
  }
  return os.str();
}

FockState FockState::parse(std::string_view s) {
  std::string flat;
  flat.reserve(s.size());
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) flat.push_back(ch);
  if (flat.empty()) throw StructuralError("empty state literal");
  if (flat == "0") return FockState();

  FockState out;
  size_t pos = 0;
  while (pos < flat.size()) {
    int sign = 1;
    if (flat[pos] == '+' || flat[pos] == '-') {
      sign = flat[pos] == '-' ? -1 : 1;
      ++pos;
    }
    // term runs to the next +/- outside brackets
    size_t end = pos;
    int depth = 0;
    while (end < flat.size()) {
      char ch = flat[end];
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if ((ch == '+' || ch == '-') && depth == 0 && end > pos) break;
      ++end;
    }
    std::string_view term(flat.data() + pos, end - pos);
    if (term.empty()) throw StructuralError("empty term in state literal: " + flat);
    Scalar coeff(sign);
    size_t star = term.find('*');
    if (star != std::string_view::npos) {
      coeff *= Scalar::from_string(term.substr(0, star));
      term = term.substr(star + 1);
    }
    out.add_term(FockMonomial::parse(term), coeff);
    pos = end;
  }
  return out;
}

Model::Model(int rank, const Scalar& level, int cutoff)
    : rank_(rank), cutoff_(cutoff), gram_(rank > 0 ? rank : 0, rank > 0 ? rank : 0),
      cache_(std::make_unique<NthProductCache>()) {
  for (int f = 0; f < rank_ && rank > 0; ++f) gram_.at(f, f) = level;
  validate();
}

Model::Model(int rank, Matrix gram, int cutoff)
    : rank_(rank), cutoff_(cutoff), gram_(std::move(gram)),
      cache_(std::make_unique<NthProductCache>()) {
  validate();
}

void Model::validate() const {
  if (rank_ < 1) throw StructuralError("model rank must be at least 1");
  if (cutoff_ < 2) throw StructuralError("cutoff must be at least 2");
  if (gram_.rows != rank_ || gram_.cols != rank_)
    throw StructuralError("level matrix shape does not match rank");
  for (int f = 0; f < rank_; ++f)
    for (int g = f + 1; g < rank_; ++g)
      if (!(gram_.at(f, g) == gram_.at(g, f)))
        throw StructuralError("level matrix must be symmetric");
  if (determinant(gram_).is_zero())
    throw StructuralError("level matrix must be nondegenerate");
  bases_.resize(cutoff_ + 1);
  index_.resize(cutoff_ + 1);
}

const Scalar& Model::level(int f, int g) const {
  if (f < 0 || f >= rank_ || g < 0 || g >= rank_)
    throw StructuralError("flavor index out of range");
  return gram_.at(f, g);
}

void Model::check_degree(int d, const char* op) const {
  if (d > cutoff_)
    throw CutoffError(std::string(op) + " needs degree " + std::to_string(d) +
                      " above cutoff " + std::to_string(cutoff_));
}

namespace {

// Partitions of w with parts at most maxp, descending, then continue with
// the remaining flavors. Collects every flavored monomial of total weight w.
void enumerate_flavored(int rank, int flavor, int w, std::vector<Factor>& cur,
                        std::vector<FockMonomial>& out) {
  if (flavor == rank) {
    if (w == 0) out.push_back(FockMonomial::from_factors(cur));
    return;
  }
  // weight assigned to this flavor: partition enumeration inline
  struct Rec {
    int rank, flavor;
    std::vector<Factor>& cur;
    std::vector<FockMonomial>& out;
    void parts(int rem, int maxp, int total_left) {
      if (rem == 0) {
        enumerate_flavored(rank, flavor + 1, total_left, cur, out);
        return;
      }
      for (int p = std::min(rem, maxp); p >= 1; --p) {
        cur.push_back({flavor, p});
        parts(rem - p, p, total_left);
        cur.pop_back();
      }
    }
  };
  Rec rec{rank, flavor, cur, out};
  for (int wf = 0; wf <= w; ++wf) rec.parts(wf, wf, w - wf);
}

}  // namespace

const std::vector<FockMonomial>& Model::basis(int m) const {
  if (m < 0) throw StructuralError("negative degree");
  check_degree(m, "basis");
  std::lock_guard<std::mutex> lock(basis_mu_);
  if (bases_[m].empty() && index_[m].empty()) {
    std::vector<FockMonomial> out;
    std::vector<Factor> cur;
    enumerate_flavored(rank_, 0, m, cur, out);
    std::sort(out.begin(), out.end());
    for (int i = 0; i < static_cast<int>(out.size()); ++i) index_[m][out[i]] = i;
    bases_[m] = std::move(out);
  }
  return bases_[m];
}

int Model::dim(int m) const { return static_cast<int>(basis(m).size()); }

int Model::index_of(const FockMonomial& mono) const {
  int w = mono.weight();
  basis(w);
  std::lock_guard<std::mutex> lock(basis_mu_);
  auto it = index_[w].find(mono);
  if (it == index_[w].end())
    throw StructuralError("monomial outside model: " + mono.str());
  return it->second;
}

FockState Model::basis_state(int m, int i) const {
  const auto& b = basis(m);
  if (i < 0 || i >= static_cast<int>(b.size()))
    throw StructuralError("basis index out of range");
  return FockState(b[i]);
}

FockState Model::generator(int f) const {
  if (f < 0 || f >= rank_) throw StructuralError("flavor index out of range");
  return FockState(FockMonomial::from_factors({{f, 1}}));
}

FockState Model::derivative(const FockState& s) const {
  FockState out;
  for (const auto& [mono, c] : s.terms()) {
    check_degree(mono.weight() + 1, "derivative");
    const auto& fs = mono.factors();
    for (size_t i = 0; i < fs.size(); ++i) {
      std::vector<Factor> next = fs;
      next[i].mode += 1;
      out.add_term(FockMonomial::from_factors(std::move(next)), c * Scalar(fs[i].mode));
    }
  }
  return out;
}

FockState Model::derivative_pow(FockState s, int k) const {
  if (k < 0) throw StructuralError("negative derivative power");
  for (int i = 0; i < k; ++i) s = derivative(s);
  return s;
}

FockState Model::mode_action_mono(int f, int n, const FockMonomial& mono) const {
  if (f < 0 || f >= rank_) throw StructuralError("flavor index out of range");
  FockState out;
  if (n == 0) return out;
  if (n < 0) {
    check_degree(mono.weight() - n, "mode action");
    out.add_term(mono.with_factor({f, -n}), Scalar(1));
    return out;
  }
  const auto& fs = mono.factors();
  for (size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].mode != n) continue;
    const Scalar& pair = gram_.at(f, fs[i].flavor);
    if (pair.is_zero()) continue;
    std::vector<Factor> rest;
    rest.reserve(fs.size() - 1);
    for (size_t j = 0; j < fs.size(); ++j)
      if (j != i) rest.push_back(fs[j]);
    out.add_term(FockMonomial::from_factors(std::move(rest)), Scalar(n) * pair);
  }
  return out;
}

FockState Model::mode_action(int f, int n, const FockState& s) const {
  FockState out;
  for (const auto& [mono, c] : s.terms()) out += c * mode_action_mono(f, n, mono);
  return out;
}

Vector Model::to_vector(const FockState& s, int m) const {
  Vector v;
  for (const auto& [mono, c] : s.terms()) {
    if (mono.weight() != m)
      throw StructuralError("state has weight " + std::to_string(mono.weight()) +
                            " term, expected " + std::to_string(m));
    v.add_term(index_of(mono), c);
  }
  return v;
}

FockState Model::from_vector(const Vector& v, int m) const {
  const auto& b = basis(m);
  FockState out;
  for (const auto& [i, c] : v.entries()) {
    if (i >= static_cast<int>(b.size()))
      throw StructuralError("vector index outside basis of degree " + std::to_string(m));
    out.add_term(b[i], c);
  }
  return out;
}

Subspace Model::full_space(int m) const {
  int d = dim(m);
  Subspace s(m, d);
  for (int i = 0; i < d; ++i) s.insert(Vector::unit(i));
  return s;
}

GradedFamily Model::full_family(int up_to) const {
  check_degree(up_to, "full family");
  GradedFamily fam(up_to);
  for (int m = 0; m <= up_to; ++m) fam.set(m, full_space(m));
  return fam;
}

size_t NthKeyHash::operator()(const NthKey& k) const {
  auto mix = [](size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  size_t h = mix(0x243f6a8885a308d3ULL, static_cast<size_t>(k.n) + 0x10000);
  for (const auto& f : k.a.factors())
    h = mix(h, (static_cast<size_t>(f.flavor) << 16) | static_cast<size_t>(f.mode));
  h = mix(h, 0xfeedULL);
  for (const auto& f : k.b.factors())
    h = mix(h, (static_cast<size_t>(f.flavor) << 16) | static_cast<size_t>(f.mode));
  return h;
}

}  // namespace voa
