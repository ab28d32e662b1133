#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace bcher {

// Exponent vector (a_1..a_n) of x_1^a_1 ... x_n^a_n in ascending (normal) order.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline Monomial unit_monomial(std::size_t n, std::size_t i) {
  Monomial m(n, 0);
  m[i] = 1;
  return m;
}

// Graded lexicographic order with x_1 > x_2 > ... > x_n.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

inline std::string monomial_str(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "x" << (k + 1);
    if (m[k] > 1) os << "^" << m[k];
  }
  return first ? "1" : os.str();
}

// Parses "x1^2*x3" (or "1") into an exponent vector of length n.
inline Monomial parse_monomial(const std::string& text, std::size_t n) {
  Monomial m(n, 0);
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s == "1" || s.empty()) return m;
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    if (factor.size() < 2 || (factor[0] != 'x' && factor[0] != 'y'))
      throw ParseError("bad monomial factor '" + factor + "'");
    auto caret = factor.find('^');
    int idx = std::stoi(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    int e = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
    if (idx < 1 || static_cast<std::size_t>(idx) > n || e < 0)
      throw ParseError("monomial index out of range in '" + text + "'");
    m[static_cast<std::size_t>(idx - 1)] += e;
  }
  return m;
}

// All exponent vectors of total degree d, x_1-heaviest first.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, d);
  return out;
}

inline std::vector<Monomial> monomials_up_to(std::size_t n, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

class QMatrix;
using QMatrixPtr = std::shared_ptr<const QMatrix>;

// Deformation matrix with q_ii = 1 and q_ij q_ji = 1.
class QMatrix {
 public:
  static QMatrixPtr create(const std::vector<std::vector<Cyclo>>& entries) {
    return std::make_shared<const QMatrix>(entries, Token{});
  }
  static QMatrixPtr ones(const FieldPtr& f, std::size_t n) {
    return create(std::vector<std::vector<Cyclo>>(n, std::vector<Cyclo>(n, Cyclo(f, 1L))));
  }
  static QMatrixPtr minus_one(const FieldPtr& f, std::size_t n) {
    std::vector<std::vector<Cyclo>> e(n, std::vector<Cyclo>(n, Cyclo(f, -1L)));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = Cyclo(f, 1L);
    return create(e);
  }

  struct Token {};
  QMatrix(const std::vector<std::vector<Cyclo>>& entries, Token) : q_(entries) {
    n_ = q_.size();
    if (n_ == 0) throw InvalidQMatrix("empty matrix");
    f_ = q_[0][0].field();
    for (std::size_t i = 0; i < n_; ++i) {
      if (q_[i].size() != n_) throw InvalidQMatrix("matrix is not square (row " + std::to_string(i + 1) + ")");
      for (std::size_t j = 0; j < n_; ++j)
        if (q_[i][j].order() != f_->order())
          throw InvalidQMatrix("entries lie in different fields at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (!q_[i][i].is_one())
        throw InvalidQMatrix("q_ii != 1 at i=" + std::to_string(i + 1));
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!(q_[i][j] * q_[j][i]).is_one())
          throw InvalidQMatrix("q_ij*q_ji != 1 at (i,j)=(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
    // Discrete logs base zeta_N where available, for fast products of powers.
    const long n = f_->order();
    logs_.assign(n_, std::vector<long>(n_, -1));
    all_roots_ = true;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        for (long k = 0; k < n; ++k)
          if (Cyclo::root(f_, k) == q_[i][j]) {
            logs_[i][j] = k;
            break;
          }
        if (logs_[i][j] < 0) all_roots_ = false;
      }
  }

  std::size_t n() const { return n_; }
  const FieldPtr& field() const { return f_; }
  const Cyclo& operator()(std::size_t i, std::size_t j) const { return q_[i][j]; }
  const std::vector<std::vector<Cyclo>>& entries() const { return q_; }

  QMatrixPtr transposed() const {
    std::vector<std::vector<Cyclo>> t(n_, std::vector<Cyclo>(n_, Cyclo(f_)));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t[i][j] = q_[j][i];
    return create(t);
  }

  bool same_as(const QMatrix& o) const { return this == &o || (n_ == o.n_ && q_ == o.q_); }

  // prod_{j>i} q_ji^(a_j b_i): the scalar in x^a * x^b = factor * x^(a+b).
  Cyclo product_factor(const Monomial& a, const Monomial& b) const {
    if (all_roots_) {
      long e = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (b[i] == 0) continue;
        for (std::size_t j = i + 1; j < n_; ++j)
          if (a[j] != 0) e += logs_[j][i] * a[j] * b[i];
      }
      return Cyclo::root(f_, e);
    }
    Cyclo r(f_, 1L);
    for (std::size_t i = 0; i < n_; ++i) {
      if (b[i] == 0) continue;
      for (std::size_t j = i + 1; j < n_; ++j)
        if (a[j] != 0) r = r * q_[j][i].pow(static_cast<long>(a[j]) * b[i]);
    }
    return r;
  }

  // prod_i q_ik^(a_i) for fixed k.
  Cyclo column_power(const Monomial& a, std::size_t k) const {
    Cyclo r(f_, 1L);
    for (std::size_t i = 0; i < n_; ++i)
      if (a[i] != 0) r = r * q_[i][k].pow(a[i]);
    return r;
  }

 private:
  std::size_t n_ = 0;
  FieldPtr f_;
  std::vector<std::vector<Cyclo>> q_;
  std::vector<std::vector<long>> logs_;
  bool all_roots_ = false;
};

inline QMatrixPtr qmatrix_create(const std::vector<std::vector<Cyclo>>& entries) { return QMatrix::create(entries); }

// Element of S_q(V) in the normal-ordered monomial basis.
class QPoly {
 public:
  using Terms = std::map<Monomial, Cyclo, GrlexLess>;

  explicit QPoly(QMatrixPtr q) : q_(std::move(q)) {}

  static QPoly constant(const QMatrixPtr& q, const Cyclo& c) {
    QPoly p(q);
    p.add_term(Monomial(q->n(), 0), c);
    return p;
  }
  static QPoly constant(const QMatrixPtr& q, long c) { return constant(q, Cyclo(q->field(), c)); }
  static QPoly variable(const QMatrixPtr& q, std::size_t i) {
    QPoly p(q);
    p.add_term(unit_monomial(q->n(), i), Cyclo(q->field(), 1L));
    return p;
  }
  static QPoly monomial(const QMatrixPtr& q, const Monomial& m, const Cyclo& c) {
    QPoly p(q);
    p.add_term(m, c);
    return p;
  }
  static QPoly monomial(const QMatrixPtr& q, const Monomial& m) { return monomial(q, m, Cyclo(q->field(), 1L)); }

  const QMatrixPtr& qmatrix() const { return q_; }
  const FieldPtr& field() const { return q_->field(); }
  std::size_t n() const { return q_->n(); }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  Cyclo coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Cyclo(field()) : it->second;
  }

  void add_term(const Monomial& m, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  QPoly& operator+=(const QPoly& o) {
    check(o);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    check(o);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  QPoly operator-() const {
    QPoly r(q_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }
  friend QPoly operator*(const Cyclo& s, const QPoly& p) {
    QPoly r(p.q_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : p.t_) r.t_.emplace(m, s * c);
    return r;
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    a.check(b);
    QPoly r(a.q_);
    Monomial sum(a.n(), 0);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = ma[k] + mb[k];
        r.add_term(sum, a.q_->product_factor(ma, mb) * ca * cb);
      }
    return r;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  // Leading term in grlex order; requires nonzero.
  const std::pair<const Monomial, Cyclo>& leading() const { return *t_.rbegin(); }

  int degree() const { return t_.empty() ? -1 : total_degree(t_.rbegin()->first); }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second.str() << ")*" << monomial_str(it->first);
    }
    return os.str();
  }

 private:
  void check(const QPoly& o) const {
    if (!q_->same_as(*o.q_)) throw QMatrixMismatch("polynomials live over different q-matrices");
  }

  QMatrixPtr q_;
  Terms t_;
};

struct NotDivisible : Error {
  NotDivisible(const std::string& what, QPoly rem) : Error(what), remainder(std::move(rem)) {}
  QPoly remainder;
};

inline QPoly multiply(const QPoly& p, const QPoly& r) { return p * r; }

inline bool is_central_monomial(const QMatrix& q, const Monomial& a) {
  for (std::size_t k = 0; k < q.n(); ++k)
    if (!q.column_power(a, k).is_one()) return false;
  return true;
}

// x_k p = p x_k for all k; monomials map to distinct monomials so this is termwise.
inline bool is_central(const QPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (!is_central_monomial(*p.qmatrix(), m)) return false;
  return true;
}

// g with d*g = p, by leading-term elimination in grlex order.
inline QPoly divide_by_central(const QPoly& p, const QPoly& d) {
  if (d.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (!p.qmatrix()->same_as(*d.qmatrix())) throw QMatrixMismatch("divide_by_central: q-matrices differ");
  if (!is_central(d)) throw NotCentral("divisor is not central: " + d.str());
  const QMatrix& q = *p.qmatrix();
  const auto& [dm, dc] = d.leading();
  Cyclo dc_inv = dc.inverse();
  QPoly rest = p, quotient(p.qmatrix()), remainder(p.qmatrix());
  Monomial g(q.n(), 0);
  while (!rest.is_zero()) {
    auto [lm, lc] = rest.leading();
    if (!divides(dm, lm)) {
      remainder.add_term(lm, lc);
      rest.add_term(lm, -lc);
      continue;
    }
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = lm[k] - dm[k];
    Cyclo coef = lc * dc_inv * q.product_factor(dm, g).inverse();
    QPoly step = QPoly::monomial(p.qmatrix(), g, coef);
    quotient += step;
    rest -= d * step;
  }
  if (!remainder.is_zero()) throw NotDivisible("not divisible by " + d.str() + "; remainder " + remainder.str(), remainder);
  return quotient;
}

// g with x_i * g = p; x_i * x^b = (prod_{k<i} q_ik^{b_k}) x^(b+e_i).
inline QPoly left_divide_by_variable(const QPoly& p, std::size_t i) {
  const QMatrix& q = *p.qmatrix();
  QPoly out(p.qmatrix());
  Monomial ei = unit_monomial(q.n(), i);
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) {
      QPoly rem(p.qmatrix());
      rem.add_term(m, c);
      throw NotDivisible("monomial " + monomial_str(m) + " has no factor x" + std::to_string(i + 1), rem);
    }
    Monomial b = m;
    b[i] -= 1;
    out.add_term(b, c * q.product_factor(ei, b).inverse());
  }
  return out;
}

}  // namespace bcher
