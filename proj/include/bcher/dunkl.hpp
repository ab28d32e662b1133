#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "qpoly.hpp"
#include "wgroup.hpp"

namespace bcher {

// Linear endomorphism of S_q(V) stored by its values on all monomials of degree <= max_degree.
class Operator {
 public:
  using Images = std::map<Monomial, QPoly, GrlexLess>;

  Operator(QMatrixPtr q, int max_degree, int shift) : q_(std::move(q)), max_(max_degree), shift_(shift) {
    if (max_ < 0) throw DegreeWindowEmpty("operator degree window is empty");
  }

  template <class Fn>
  static Operator build(const QMatrixPtr& q, int max_degree, int shift, Fn&& fn) {
    Operator op(q, max_degree, shift);
    for (const auto& m : monomials_up_to(q->n(), max_degree)) {
      QPoly img = fn(m);
      if (!img.is_zero()) op.images_.emplace(m, std::move(img));
    }
    return op;
  }

  static Operator zero(const QMatrixPtr& q, int max_degree, int shift = 0) { return Operator(q, max_degree, shift); }
  static Operator identity(const QMatrixPtr& q, int max_degree) {
    return build(q, max_degree, 0, [&](const Monomial& m) { return QPoly::monomial(q, m); });
  }

  const QMatrixPtr& qmatrix() const { return q_; }
  int max_degree() const { return max_; }
  int shift() const { return shift_; }
  const Images& images() const { return images_; }
  bool is_zero() const { return images_.empty(); }

  QPoly image(const Monomial& m) const {
    if (total_degree(m) > max_)
      throw DegreeWindowEmpty("monomial " + monomial_str(m) + " exceeds operator degree " + std::to_string(max_));
    auto it = images_.find(m);
    return it == images_.end() ? QPoly(q_) : it->second;
  }

  QPoly apply(const QPoly& p) const {
    QPoly out(q_);
    for (const auto& [m, c] : p.terms()) {
      auto it = images_.find(m);
      if (total_degree(m) > max_)
        throw DegreeWindowEmpty("monomial " + monomial_str(m) + " exceeds operator degree " + std::to_string(max_));
      if (it != images_.end()) out += c * it->second;
    }
    return out;
  }

  // First monomial in the common window where the two operators differ.
  std::optional<Monomial> first_difference(const Operator& o) const {
    const int d = std::min(max_, o.max_);
    for (const auto& m : monomials_up_to(q_->n(), d))
      if (image(m) != o.image(m)) return m;
    return std::nullopt;
  }
  std::optional<Monomial> first_nonzero() const {
    for (const auto& [m, p] : images_) return m;
    return std::nullopt;
  }

  friend bool operator==(const Operator& a, const Operator& b) { return !a.first_difference(b).has_value(); }

  std::vector<std::pair<std::string, std::string>> report() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [m, p] : images_) out.emplace_back(monomial_str(m), p.str());
    return out;
  }

 private:
  QMatrixPtr q_;
  int max_;
  int shift_;
  Images images_;
};

// A∘B on the window where both are defined.
inline Operator op_compose(const Operator& a, const Operator& b) {
  if (!a.qmatrix()->same_as(*b.qmatrix())) throw QMatrixMismatch("op_compose: q-matrices differ");
  const int d = std::min(b.max_degree(), a.max_degree() - b.shift());
  if (d < 0) throw DegreeWindowEmpty("composition leaves no valid degrees");
  return Operator::build(a.qmatrix(), d, a.shift() + b.shift(), [&](const Monomial& m) { return a.apply(b.image(m)); });
}

inline Operator op_add(const Operator& a, const Operator& b, const Cyclo& scale_b) {
  if (!a.qmatrix()->same_as(*b.qmatrix())) throw QMatrixMismatch("op_add: q-matrices differ");
  int shift = a.shift();
  if (a.shift() != b.shift()) {
    if (a.is_zero()) shift = b.shift();
    else if (!b.is_zero()) throw InvalidParameters("op_add: operators shift degree differently");
  }
  const int d = std::min(a.max_degree(), b.max_degree());
  return Operator::build(a.qmatrix(), d, shift, [&](const Monomial& m) { return a.image(m) + scale_b * b.image(m); });
}

inline Operator op_add(const Operator& a, const Operator& b) { return op_add(a, b, Cyclo(a.qmatrix()->field(), 1L)); }
inline Operator op_sub(const Operator& a, const Operator& b) { return op_add(a, b, Cyclo(a.qmatrix()->field(), -1L)); }

inline Operator op_scale(const Operator& a, const Cyclo& s) {
  return Operator::build(a.qmatrix(), a.max_degree(), a.shift(), [&](const Monomial& m) { return s * a.image(m); });
}

// A∘B - sign*q*B∘A.
inline Operator q_bracket(const Operator& a, const Operator& b, const Cyclo& q, int sign) {
  return op_add(op_compose(a, b), op_compose(b, a), sign > 0 ? -q : q);
}

inline Operator group_operator(const QMatrixPtr& q, const MonomialMatrix& w, int max_degree) {
  return Operator::build(q, max_degree, 0, [&](const Monomial& m) { return act_on_poly(w, QPoly::monomial(q, m)); });
}

// Left multiplication by a homogeneous polynomial.
inline Operator left_mult(const QPoly& p, int max_degree) {
  int deg = p.is_zero() ? 0 : p.degree();
  for (const auto& [m, c] : p.terms())
    if (total_degree(m) != deg) throw InvalidParameters("left_mult needs a homogeneous polynomial");
  return Operator::build(p.qmatrix(), max_degree, deg, [&](const Monomial& m) { return p * QPoly::monomial(p.qmatrix(), m); });
}

inline Operator variable_operator(const QMatrixPtr& q, std::size_t i, int max_degree) {
  return left_mult(QPoly::variable(q, i), max_degree);
}

// d/dx_i in braided form: x^a -> a_i prod_{k<i} q_ki^{a_k} x^(a-e_i).
inline Operator braided_partial(const QMatrixPtr& q, std::size_t i, int max_degree) {
  check_index(i, q->n());
  return Operator::build(q, max_degree, -1, [&](const Monomial& a) {
    QPoly out(q);
    if (a[i] == 0) return out;
    Cyclo coef(q->field(), static_cast<long>(a[i]));
    for (std::size_t k = 0; k < i; ++k)
      if (a[k]) coef = coef * (*q)(k, i).pow(a[k]);
    Monomial b = a;
    b[i] -= 1;
    out.add_term(b, coef);
    return out;
  });
}

// Degree -1 operator with d(x_j) = values[j] and d(ab) = d(a) w(b) + a d(b).
inline Operator twisted_derivation(const QMatrixPtr& q, const MonomialMatrix& w, const Vec& values, int max_degree) {
  const std::size_t n = q->n();
  if (values.size() != n || w.n() != n) throw InvalidParameters("twisted_derivation: rank mismatch");
  if (!preserves_q(w, *q)) throw InvalidParameters("twisted_derivation: w does not preserve q");
  // d must kill the relations x_j x_i - q_ji x_i x_j.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QPoly wi = act_on_poly(w, QPoly::variable(q, i)), wj = act_on_poly(w, QPoly::variable(q, j));
      QPoly lhs = values[j] * wi + values[i] * QPoly::variable(q, j);
      QPoly rhs = (*q)(j, i) * (values[i] * wj + values[j] * QPoly::variable(q, i));
      if (lhs != rhs)
        throw InvalidParameters("twisted_derivation: values incompatible with w at (i,j)=(" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ")");
    }
  std::map<Monomial, QPoly, GrlexLess> memo;
  return Operator::build(q, max_degree, -1, [&](const Monomial& a) {
    QPoly out(q);
    std::size_t k = 0;
    while (k < n && a[k] == 0) ++k;
    if (k == n) return out;
    // x^a = x_k * x^(a - e_k) with k the smallest index present.
    Monomial rest = a;
    rest[k] -= 1;
    QPoly tail = QPoly::monomial(q, rest);
    out += values[k] * act_on_poly(w, tail);
    auto it = memo.find(rest);
    if (it != memo.end()) out += QPoly::variable(q, k) * it->second;
    memo.emplace(a, out);
    return out;
  });
}

// Representatives of C modulo {±1}: zeta_m^k for 0 <= k < m/2, as exponents in the ambient field.
inline std::vector<long> c_tilde_exponents(int m, const FieldPtr& f) {
  std::vector<long> out;
  const long step = f->order() / m;
  for (long k = 0; k < m / 2; ++k) out.push_back(k * step);
  return out;
}

// f -> sum_{eps in S} (x_i + eps x_j)/(x_i^2 - eps^2 x_j^2) (1 - sigma_ij^(eps)) f, S a subset of C = mu_m given
// by exponents in the ambient field; all terms share the central denominator prod_{C~}(x_i^2 - e^2 x_j^2).
inline Operator divided_difference_sigma(const QMatrixPtr& q, std::size_t i, std::size_t j, int m, int max_degree,
                                         std::optional<std::vector<long>> subset = std::nullopt) {
  const std::size_t n = q->n();
  check_index(i, n);
  check_index(j, n);
  if (i == j) throw BadIndices("divided difference needs i != j");
  if (m <= 0 || m % 2) throw InvalidParameters("|C| must be even");
  const FieldPtr& f = q->field();
  if (f->order() % m) throw InvalidParameters("ambient field does not contain the m-th roots of unity");
  const long step = f->order() / m;
  std::vector<long> eps;
  if (subset) eps = *subset;
  else
    for (long k = 0; k < m; ++k) eps.push_back(k * step);

  QPoly xi = QPoly::variable(q, i), xj = QPoly::variable(q, j);
  QPoly xi2 = xi * xi, xj2 = xj * xj;
  auto tilde = c_tilde_exponents(m, f);
  QPoly den = QPoly::constant(q, 1L);
  for (long e : tilde) den = den * (xi2 - Cyclo::root(f, 2 * e) * xj2);

  struct Term {
    MonomialMatrix sigma;
    QPoly numerator;
  };
  std::vector<Term> terms;
  for (long e : eps) {
    Cyclo z = Cyclo::root(f, e);
    QPoly num = xi + z * xj;
    for (long t : tilde)
      if (Cyclo::root(f, 2 * t) != z * z) num = num * (xi2 - Cyclo::root(f, 2 * t) * xj2);
    terms.push_back({make_sigma(n, i, j, z), num});
  }
  return Operator::build(q, max_degree, -1, [&](const Monomial& a) {
    QPoly fa = QPoly::monomial(q, a), total(q);
    for (const auto& t : terms) total += t.numerator * (fa - act_on_poly(t.sigma, fa));
    return divide_by_central(total, den);
  });
}

// f -> x_i^{-1} (1 - t_i^(eps)) f.
inline Operator divided_difference_t(const QMatrixPtr& q, std::size_t i, const Cyclo& eps, int max_degree) {
  check_index(i, q->n());
  MonomialMatrix t = make_t(q->n(), i, eps);
  return Operator::build(q, max_degree, -1, [&](const Monomial& a) {
    QPoly fa = QPoly::monomial(q, a);
    QPoly diff = fa - act_on_poly(t, fa);
    return diff.is_zero() ? diff : left_divide_by_variable(diff, i);
  });
}

// D_ij = (x_i^2 - x_j^2)^{-1} [(x_i + x_j)(1 - sigma_ij) + (x_i - x_j)(1 - sigma_ji)], sigma = sigma^(1).
inline Operator operator_Dij(const QMatrixPtr& q, std::size_t i, std::size_t j, int max_degree) {
  const std::size_t n = q->n();
  check_index(i, n);
  check_index(j, n);
  if (i == j) throw BadIndices("D_ij needs i != j");
  Cyclo one(q->field(), 1L);
  MonomialMatrix sij = make_sigma(n, i, j, one), sji = make_sigma(n, j, i, one);
  QPoly xi = QPoly::variable(q, i), xj = QPoly::variable(q, j);
  QPoly den = xi * xi - xj * xj;
  return Operator::build(q, max_degree, -1, [&](const Monomial& a) {
    QPoly fa = QPoly::monomial(q, a);
    QPoly num = (xi + xj) * (fa - act_on_poly(sij, fa)) + (xi - xj) * (fa - act_on_poly(sji, fa));
    return divide_by_central(num, den);
  });
}

struct NegativeParams {
  int m = 2;
  int mp = 1;
  Cyclo c1;
  std::optional<Cyclo> c1_prime;  // rank 2 only
  std::map<long, Cyclo> c;        // k -> c at eps' = zeta_{m'}^k, 0 < k < m'
  bool degenerate = false;
};

struct AbelianParams {
  std::vector<int> orders;                  // cyclic orders m_i
  std::vector<std::map<long, Cyclo>> c;     // per variable: k -> c_{i, zeta_{m_i}^k}
  bool degenerate = false;
};

struct SymmetricParams {
  Cyclo c;
};

inline void validate(const NegativeParams& p, std::size_t n, const FieldPtr& f) {
  if (p.m <= 0 || p.m % 2) throw InvalidParameters("|C| must be even");
  if (p.mp <= 0 || p.m % p.mp) throw InvalidParameters("|C'| must divide |C|");
  if (f->order() % p.m) throw InvalidParameters("ambient field does not contain mu_m");
  if (p.c1_prime && n != 2) throw InvalidParameters("c1' is only available in rank 2");
  if (p.c1_prime && p.m % 4 != 0)
    throw InvalidParameters("c1' needs 4 | |C|: otherwise -1 is not a square in C and the split operator is not polynomial");
  for (const auto& [k, v] : p.c)
    if (k <= 0 || k >= p.mp) throw InvalidParameters("c is indexed by eps' in C' \\ {1}");
}

// Exponents in the ambient field of C^2 and C \ C^2.
inline std::pair<std::vector<long>, std::vector<long>> square_split(int m, const FieldPtr& f) {
  const long step = f->order() / m;
  std::vector<long> sq, rest;
  for (long k = 0; k < m; ++k) (k % 2 == 0 ? sq : rest).push_back(k * step);
  return {sq, rest};
}

inline std::vector<Operator> dunkl_negative(const NegativeParams& p, std::size_t n, int max_degree, FieldPtr f = nullptr) {
  if (!f) f = field_create(p.m);
  validate(p, n, f);
  auto q = QMatrix::minus_one(f, n);
  const Cyclo c1 = promote(p.c1, f);
  const long step_p = f->order() / p.mp;
  std::vector<Operator> out;
  for (std::size_t i = 0; i < n; ++i) {
    Operator op = p.degenerate ? Operator::zero(q, max_degree, -1) : braided_partial(q, i, max_degree);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (p.c1_prime) {
        auto [sq, rest] = square_split(p.m, f);
        if (!c1.is_zero()) op = op_add(op, divided_difference_sigma(q, i, j, p.m, max_degree, sq), c1);
        Cyclo c1p = promote(*p.c1_prime, f);
        if (!c1p.is_zero()) op = op_add(op, divided_difference_sigma(q, i, j, p.m, max_degree, rest), c1p);
      } else if (!c1.is_zero()) {
        op = op_add(op, divided_difference_sigma(q, i, j, p.m, max_degree), c1);
      }
    }
    for (const auto& [k, ck] : p.c) {
      Cyclo cc = promote(ck, f);
      if (cc.is_zero()) continue;
      Cyclo e = Cyclo::root(f, k * step_p);
      op = op_add(op, divided_difference_t(q, i, e, max_degree), cc / (Cyclo(f, 1L) - e));
    }
    out.push_back(std::move(op));
  }
  return out;
}

// Same operators assembled from D_ij = (x_i^2-x_j^2)^{-1}[(x_i+x_j)(1-sigma_ij) + (x_i-x_j)(1-sigma_ji)],
// conjugated by t_j^(eps), eps in C~, and the q-Heisenberg derivation d_i with gamma_i d_i = braided partial.
inline std::vector<Operator> dunkl_negative_via_Dij(const NegativeParams& p, std::size_t n, int max_degree,
                                                    FieldPtr f = nullptr) {
  if (!f) f = field_create(p.m);
  validate(p, n, f);
  if (p.c1_prime) throw InvalidParameters("the D_ij expansion has no rank-2 split");
  auto q = QMatrix::minus_one(f, n);
  const Cyclo c1 = promote(p.c1, f), one(f, 1L);
  const long step_p = f->order() / p.mp;
  auto gammas = gamma_generators(*q);
  std::vector<Operator> out;
  for (std::size_t i = 0; i < n; ++i) {
    Operator gi = group_operator(q, gammas[i], max_degree + 1);
    Vec ei(n, Cyclo(f));
    ei[i] = one;
    Operator partial = p.degenerate ? Operator::zero(q, max_degree, -1) : twisted_derivation(q, gammas[i], ei, max_degree);
    Operator refl = Operator::zero(q, max_degree, -1);
    for (std::size_t j = 0; j < n && !c1.is_zero(); ++j) {
      if (j == i) continue;
      Operator dij = operator_Dij(q, i, j, max_degree);
      for (long e : c_tilde_exponents(p.m, f)) {
        MonomialMatrix t = make_t(n, j, Cyclo::root(f, e));
        Operator conj =
            op_compose(group_operator(q, t, max_degree), op_compose(dij, group_operator(q, t.inverse(), max_degree)));
        refl = op_add(refl, conj, c1);
      }
    }
    for (const auto& [k, ck] : p.c) {
      Cyclo cc = promote(ck, f);
      if (cc.is_zero()) continue;
      Cyclo e = Cyclo::root(f, k * step_p);
      refl = op_add(refl, divided_difference_t(q, i, e, max_degree), cc / (one - e));
    }
    // nabla_i = d_i + gamma_i refl, and the braided operator is gamma_i nabla_i.
    Operator nabla = op_add(partial, op_compose(gi, refl));
    out.push_back(op_compose(gi, nabla));
  }
  return out;
}

inline std::vector<Operator> dunkl_abelian(const QMatrixPtr& q, const AbelianParams& p, int max_degree) {
  const std::size_t n = q->n();
  const FieldPtr& f = q->field();
  if (p.orders.size() != n || p.c.size() > n) throw InvalidParameters("abelian parameters do not match the rank");
  std::vector<Operator> out;
  for (std::size_t i = 0; i < n; ++i) {
    const int mi = p.orders[i];
    if (mi <= 0 || f->order() % mi) throw InvalidParameters("cyclic order " + std::to_string(mi) + " not in the ambient field");
    Operator op = p.degenerate ? Operator::zero(q, max_degree, -1) : braided_partial(q, i, max_degree);
    if (i < p.c.size())
      for (const auto& [k, ck] : p.c[i]) {
        if (k <= 0 || k >= mi) throw InvalidParameters("abelian c is indexed by eps in C_i \\ {1}");
        Cyclo cc = promote(ck, f);
        if (cc.is_zero()) continue;
        Cyclo e = Cyclo::root(f, k * (f->order() / mi));
        op = op_add(op, divided_difference_t(q, i, e, max_degree), cc / (Cyclo(f, 1L) - e));
      }
    out.push_back(std::move(op));
  }
  return out;
}

// Classical Dunkl operators for S_n on the commutative polynomial ring.
inline std::vector<Operator> dunkl_symmetric(std::size_t n, const SymmetricParams& p, int max_degree, FieldPtr f = nullptr) {
  if (!f) f = p.c.field();
  auto q = QMatrix::ones(f, n);
  const Cyclo c = promote(p.c, f);
  std::vector<Operator> out;
  for (std::size_t i = 0; i < n; ++i) {
    Operator op = braided_partial(q, i, max_degree);
    for (std::size_t j = 0; j < n && !c.is_zero(); ++j) {
      if (j == i) continue;
      MonomialMatrix s = make_transposition(f, n, i, j);
      QPoly den = QPoly::variable(q, i) - QPoly::variable(q, j);
      Operator dd = Operator::build(q, max_degree, -1, [&](const Monomial& a) {
        QPoly fa = QPoly::monomial(q, a);
        return divide_by_central(fa - act_on_poly(s, fa), den);
      });
      op = op_add(op, dd, c);
    }
    out.push_back(std::move(op));
  }
  return out;
}

struct FactorSpec {
  std::variant<NegativeParams, AbelianParams, SymmetricParams> params;
  std::size_t rank = 1;
  QMatrixPtr abelian_q;  // diagonal block for abelian factors
};

struct ProductResult {
  QMatrixPtr q;
  std::vector<Operator> ops;
  std::vector<std::size_t> factor_of;  // variable -> factor
};

inline int factor_field_order(const FactorSpec& s) {
  if (auto* np = std::get_if<NegativeParams>(&s.params)) return np->m;
  if (std::holds_alternative<AbelianParams>(s.params)) return s.abelian_q ? s.abelian_q->field()->order() : 1;
  return std::get<SymmetricParams>(s.params).c.order();
}

// Braided product: q_ij = r_kl for i in factor k < l containing j; the operator of a variable in factor k
// multiplies by prod_{l<k} r_lk^{deg m_l} and applies the factor's own operator to the k-th block.
inline ProductResult dunkl_product(const std::vector<FactorSpec>& factors, const std::vector<std::vector<Cyclo>>& r,
                                   int max_degree) {
  const std::size_t nf = factors.size();
  if (nf == 0) throw InvalidParameters("dunkl_product needs at least one factor");
  if (r.size() < nf) throw InvalidParameters("r must be an nf x nf array");
  long order = 1;
  for (const auto& s : factors) order = std::lcm(order, static_cast<long>(factor_field_order(s)));
  for (std::size_t k = 0; k < nf; ++k)
    for (std::size_t l = k + 1; l < nf; ++l) {
      if (r[k].size() <= l || r[k][l].is_zero()) throw InvalidParameters("r_kl must be nonzero");
      order = std::lcm(order, static_cast<long>(r[k][l].order()));
    }
  FieldPtr f = field_create(static_cast<int>(order));

  std::vector<std::size_t> offset, factor_of;
  std::size_t n = 0;
  for (std::size_t k = 0; k < nf; ++k) {
    if (factors[k].rank == 0) throw InvalidParameters("factor rank must be positive");
    offset.push_back(n);
    for (std::size_t t = 0; t < factors[k].rank; ++t) factor_of.push_back(k);
    n += factors[k].rank;
  }

  std::vector<std::vector<Operator>> local;
  std::vector<std::vector<std::vector<Cyclo>>> blocks;
  for (const auto& s : factors) {
    const std::size_t nk = s.rank;
    if (auto* np = std::get_if<NegativeParams>(&s.params)) {
      local.push_back(dunkl_negative(*np, nk, max_degree, f));
    } else if (auto* ap = std::get_if<AbelianParams>(&s.params)) {
      if (!s.abelian_q || s.abelian_q->n() != nk) throw InvalidParameters("abelian factor needs its q-matrix");
      std::vector<std::vector<Cyclo>> e(nk, std::vector<Cyclo>(nk, Cyclo(f)));
      for (std::size_t a = 0; a < nk; ++a)
        for (std::size_t b = 0; b < nk; ++b) e[a][b] = promote((*s.abelian_q)(a, b), f);
      local.push_back(dunkl_abelian(QMatrix::create(e), *ap, max_degree));
    } else {
      local.push_back(dunkl_symmetric(nk, std::get<SymmetricParams>(s.params), max_degree, f));
    }
    blocks.push_back(local.back()[0].qmatrix()->entries());
  }

  std::vector<std::vector<Cyclo>> e(n, std::vector<Cyclo>(n, Cyclo(f, 1L)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = factor_of[i], l = factor_of[j];
      if (k == l) e[i][j] = blocks[k][i - offset[k]][j - offset[k]];
      else if (k < l) e[i][j] = promote(r[k][l], f);
      else e[i][j] = promote(r[l][k], f).inverse();
    }
  auto q = QMatrix::create(e);

  ProductResult res{q, {}, factor_of};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = factor_of[i];
    const Operator& loc = local[k][i - offset[k]];
    res.ops.push_back(Operator::build(q, max_degree, -1, [&](const Monomial& a) {
      Cyclo pre(f, 1L);
      for (std::size_t l = 0; l < k; ++l) {
        int deg = 0;
        for (std::size_t t = 0; t < factors[l].rank; ++t) deg += a[offset[l] + t];
        if (deg) pre = pre * promote(r[l][k], f).pow(deg);
      }
      Monomial block(a.begin() + static_cast<long>(offset[k]), a.begin() + static_cast<long>(offset[k] + factors[k].rank));
      QPoly out(q), img = loc.image(block);
      for (const auto& [bm, c] : img.terms()) {
        Monomial full = a;
        for (std::size_t t = 0; t < bm.size(); ++t) full[offset[k] + t] = bm[t];
        out.add_term(full, pre * c);
      }
      return out;
    }));
  }
  return res;
}

}  // namespace bcher
