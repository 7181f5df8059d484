#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "voa/fock.hpp"

namespace voa {

// Polynomial in one or two formal variables (lambda, mu) with state
// coefficients. Brackets are stored by true lambda coefficients, so the
// n-th product enters as coeff(n) = a_(n)b / n!.
class LambdaPoly {
 public:
  using Key = std::pair<int, int>;  // (lambda power, mu power)

  LambdaPoly() = default;

  const std::map<Key, FockState>& coefficients() const { return c_; }

  FockState coeff(int i, int j = 0) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? FockState() : it->second;
  }

  void add_term(int i, int j, const FockState& s) {
    if (s.is_zero()) return;
    auto [it, fresh] = c_.try_emplace({i, j}, s);
    if (!fresh) {
      it->second += s;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  bool is_zero() const { return c_.empty(); }

  bool is_univariate() const {
    for (const auto& [k, s] : c_)
      if (k.second != 0) return false;
    return true;
  }

  int degree_lambda() const {
    int d = -1;
    for (const auto& [k, s] : c_) d = std::max(d, k.first);
    return d;
  }

  int degree_mu() const {
    int d = -1;
    for (const auto& [k, s] : c_) d = std::max(d, k.second);
    return d;
  }

  // Multiplies by lambda^di mu^dj.
  LambdaPoly shifted(int di, int dj) const {
    LambdaPoly out;
    for (const auto& [k, s] : c_) out.add_term(k.first + di, k.second + dj, s);
    return out;
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (const auto& [k, s] : o.c_) add_term(k.first, k.second, s);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    for (const auto& [k, s] : o.c_) add_term(k.first, k.second, Scalar(-1) * s);
    return *this;
  }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { a += b; return a; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { a -= b; return a; }
  friend LambdaPoly operator*(const Scalar& c, const LambdaPoly& p) {
    LambdaPoly out;
    for (const auto& [k, s] : p.c_) out.add_term(k.first, k.second, c * s);
    return out;
  }

  bool operator==(const LambdaPoly&) const = default;

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, s] : c_) {
      if (!first) os << " + ";
      first = false;
      os << "l^" << k.first;
      if (k.second != 0) os << " m^" << k.second;
      os << " (" << s.str() << ")";
    }
    return os.str();
  }

 private:
  std::map<Key, FockState> c_;
};

}  // namespace voa
