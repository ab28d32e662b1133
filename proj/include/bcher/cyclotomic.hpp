#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace bcher {

using Rational = mpq_class;

inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

// Dense univariate polynomials over Q, coefficient k is the x^k term.
namespace upoly {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (a[k] == 0) continue;
    Rational f = a[k] / lead;
    std::size_t shift = k - (b.size() - 1);
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    if (k == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

}  // namespace upoly

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

class CycloField {
 public:
  // Cached per order; the returned pointer is shared and immutable.
  static FieldPtr get(int n) {
    if (n < 1) throw InvalidParameters("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<int, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<CycloField>(new CycloField(n, cyclotomic_poly_locked(n, cache)));
    cache.emplace(n, f);
    return f;
  }

  int order() const { return n_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const upoly::Poly& minimal_polynomial() const { return phi_; }
  // x^k mod Phi_N as a coefficient vector of length degree(), for 0 <= k < N.
  const std::vector<Rational>& power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

 private:
  CycloField(int n, upoly::Poly phi) : n_(n), phi_(std::move(phi)) {
    int d = degree();
    powers_.resize(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
      upoly::Poly xk(static_cast<std::size_t>(k) + 1, Rational(0));
      xk[static_cast<std::size_t>(k)] = 1;
      auto r = upoly::divmod(xk, phi_).second;
      r.resize(static_cast<std::size_t>(d), Rational(0));
      powers_[static_cast<std::size_t>(k)] = std::move(r);
    }
  }

  static upoly::Poly cyclotomic_poly_locked(int n, std::map<int, FieldPtr>& cache) {
    upoly::Poly num(static_cast<std::size_t>(n) + 1, Rational(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      upoly::Poly phid;
      auto it = cache.find(d);
      if (it != cache.end()) {
        phid = it->second->phi_;
      } else {
        phid = cyclotomic_poly_locked(d, cache);
        cache.emplace(d, std::shared_ptr<CycloField>(new CycloField(d, phid)));
      }
      num = upoly::divmod(num, phid).first;
    }
    return num;
  }

  int n_;
  upoly::Poly phi_;
  std::vector<std::vector<Rational>> powers_;
};

inline FieldPtr field_create(int n) { return CycloField::get(n); }

// Element of Q(zeta_N) in the power basis {zeta^k : 0 <= k < phi(N)}.
class Cyclo {
 public:
  Cyclo() : Cyclo(CycloField::get(1)) {}
  explicit Cyclo(FieldPtr f) : f_(std::move(f)), c_(static_cast<std::size_t>(f_->degree()), Rational(0)) {}
  Cyclo(FieldPtr f, const Rational& r) : Cyclo(std::move(f)) { c_[0] = r; }
  Cyclo(FieldPtr f, long r) : Cyclo(std::move(f), Rational(r)) {}
  Cyclo(FieldPtr f, std::vector<Rational> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<std::size_t>(f_->degree()))
      throw InvalidParameters("coefficient vector length must equal phi(N)");
  }

  static Cyclo root(const FieldPtr& f, long k) {
    long n = f->order();
    long r = ((k % n) + n) % n;
    return Cyclo(f, f->power(static_cast<int>(r)));
  }

  const FieldPtr& field() const { return f_; }
  int order() const { return f_->order(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }
  const Rational& rational_part() const { return c_[0]; }

  Cyclo& operator+=(const Cyclo& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this * o.inverse(); }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  Cyclo operator-() const {
    Cyclo r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    a.check(b);
    const std::size_t d = a.c_.size();
    if (d == 1) return Cyclo(a.f_, a.c_[0] * b.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    if (a.is_rational()) return b.scaled(a.c_[0]);
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclo r(a.f_);
    const int n = a.f_->order();
    for (std::size_t k = 0; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      if (k < d) {
        r.c_[k] += prod[k];
      } else {
        const auto& red = a.f_->power(static_cast<int>(k % static_cast<std::size_t>(n)));
        for (std::size_t t = 0; t < d; ++t)
          if (red[t] != 0) r.c_[t] += prod[k] * red[t];
      }
    }
    return r;
  }

  Cyclo scaled(const Rational& s) const {
    Cyclo r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }

  // Extended Euclid on the coefficient polynomial and Phi_N.
  Cyclo inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic element");
    if (is_rational()) return Cyclo(f_, Rational(1) / c_[0]);
    upoly::Poly a(c_.begin(), c_.end());
    upoly::trim(a);
    upoly::Poly r0 = f_->minimal_polynomial(), r1 = a;
    upoly::Poly s0{}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
      auto [q, r] = upoly::divmod(r0, r1);
      upoly::Poly s = upoly::sub(s0, upoly::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r1 is a nonzero constant and s1 * a == r1 mod Phi.
    Rational inv = Rational(1) / r1[0];
    Cyclo out(f_);
    auto red = upoly::divmod(s1, f_->minimal_polynomial()).second;
    for (std::size_t k = 0; k < red.size(); ++k) out.c_[k] = red[k] * inv;
    return out;
  }

  Cyclo pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo result(f_, 1L), base(*this);
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    return a.f_->order() == b.f_->order() && a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Total order used for canonical keys.
  friend int compare(const Cyclo& a, const Cyclo& b) {
    if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      int c = cmp(a.c_[k], b.c_[k]);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
  }
  friend bool operator<(const Cyclo& a, const Cyclo& b) { return compare(a, b) < 0; }

  // Human-readable form, z denotes the primitive root zeta_N.
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      Rational v = c_[k];
      if (!first) os << (v < 0 ? " - " : " + ");
      else if (v < 0) os << "-";
      if (v < 0) v = -v;
      first = false;
      if (k == 0) {
        os << v.get_str();
      } else {
        if (v != 1) os << v.get_str() << "*";
        os << "z" << order();
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void check(const Cyclo& o) const {
    if (f_->order() != o.f_->order())
      throw FieldMismatch("cyclotomic orders differ: " + std::to_string(f_->order()) + " vs " +
                          std::to_string(o.f_->order()));
  }

  FieldPtr f_;
  std::vector<Rational> c_;
};

inline Cyclo root_of_unity(const FieldPtr& f, long k) { return Cyclo::root(f, k); }

enum class ArithOp { Add, Sub, Mul };

inline Cyclo arith(const Cyclo& a, const Cyclo& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return a;
}

inline Cyclo invert(const Cyclo& a) { return a.inverse(); }

// zeta_M -> zeta_N^(N/M).
inline Cyclo promote(const Cyclo& a, const FieldPtr& target) {
  int m = a.order(), n = target->order();
  if (n % m != 0)
    throw NotASubfield("Q(zeta_" + std::to_string(m) + ") is not a subfield of Q(zeta_" + std::to_string(n) + ")");
  if (m == n) return a;
  Cyclo out(target);
  const int step = n / m;
  const auto& c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    out += Cyclo::root(target, static_cast<long>(k) * step).scaled(c[k]);
  }
  return out;
}

// Smallest e > 0 with a^e = 1, searching e | bound; 0 if none.
inline long multiplicative_order(const Cyclo& a, long bound) {
  if (a.is_zero()) return 0;
  for (long e = 1; e <= bound; ++e) {
    if (bound % e != 0) continue;
    if (a.pow(e).is_one()) return e;
  }
  return 0;
}

inline long lcm_orders(long a, long b) { return std::lcm(a, b); }

}  // namespace bcher
