#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cyclotomic.hpp"
#include "doubles.hpp"
#include "dunkl.hpp"
#include "errors.hpp"
#include "qpoly.hpp"
#include "wgroup.hpp"

namespace bcher {

using GroupTerms = std::vector<std::pair<MonomialMatrix, Cyclo>>;

// Algebra generated by S_q(V), S_q(V*) and W with
//   y_j x_i - q_ij x_i y_j = table[j][i],  w x_i w^-1 = w(x_i),  w y_i w^-1 = w(y_i).
struct Presentation {
  QMatrixPtr q;
  Group w;
  std::vector<std::vector<GroupTerms>> table;
  bool degenerate = false;
  std::variant<std::monostate, NegativeParams, SymmetricParams, AbelianParams> family;
  std::string name;

  std::size_t n() const { return q->n(); }
  const FieldPtr& field() const { return q->field(); }
};

// Checks shapes and that every table element lies in W.
inline Presentation make_presentation(QMatrixPtr q, Group w, std::vector<std::vector<GroupTerms>> table,
                                      bool degenerate = false, std::string name = "custom") {
  const std::size_t n = q->n();
  if (w.rank() != n) throw QMatrixMismatch("presentation: group and q-matrix differ in rank");
  if (table.size() != n) throw InvalidParameters("presentation: table needs n rows");
  for (auto& row : table) {
    if (row.size() != n) throw InvalidParameters("presentation: table needs n columns");
    for (auto& terms : row)
      for (auto& [g, c] : terms) {
        if (!w.contains(g)) throw NotInGroup("presentation: table element " + g.str() + " is not in W");
        c = promote(c, q->field());
      }
  }
  Presentation p;
  p.q = std::move(q);
  p.w = std::move(w);
  p.table = std::move(table);
  p.degenerate = degenerate;
  p.name = std::move(name);
  return p;
}

// i != j: y_j x_i + x_i y_j = -c_1 sum_e e sigma_ij^(e);
// y_i x_i - x_i y_i = 1 + c_1 sum_{l != i, e} sigma_il^(e) + sum_k c_k t_i^(zeta_m'^k).
// In rank 2 with c_1' set, the terms with e outside C^2 carry c_1'.
inline Presentation presentation_negative(const NegativeParams& p, std::size_t n, FieldPtr f = nullptr) {
  if (!f) f = field_create(p.m);
  validate(p, n, f);
  Group w = build_w_cc(p.m, p.mp, n, Group::kDefaultCap, f);
  const long step = f->order() / p.m, stepp = f->order() / p.mp;
  const Cyclo c1 = promote(p.c1, f);
  const Cyclo c1p = p.c1_prime ? promote(*p.c1_prime, f) : c1;
  auto coef = [&](long k) { return k % 2 ? c1p : c1; };
  std::vector<std::vector<GroupTerms>> table(n, std::vector<GroupTerms>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      GroupTerms& t = table[j][i];
      if (i != j) {
        for (long k = 0; k < p.m; ++k) {
          Cyclo e = Cyclo::root(f, k * step);
          if (!coef(k).is_zero()) t.emplace_back(make_sigma(n, i, j, e), -(coef(k) * e));
        }
        continue;
      }
      if (!p.degenerate) t.emplace_back(MonomialMatrix::identity(f, n), Cyclo(f, 1L));
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) continue;
        for (long k = 0; k < p.m; ++k)
          if (!coef(k).is_zero()) t.emplace_back(make_sigma(n, i, l, Cyclo::root(f, k * step)), coef(k));
      }
      for (const auto& [k, v] : p.c)
        if (!v.is_zero()) t.emplace_back(make_t(n, i, Cyclo::root(f, k * stepp)), promote(v, f));
    }
  std::ostringstream name;
  name << "negative(m=" << p.m << ",m'=" << p.mp << ",n=" << n << (p.degenerate ? ",degenerate" : "") << ")";
  Presentation out = make_presentation(QMatrix::minus_one(f, n), std::move(w), std::move(table), p.degenerate, name.str());
  out.family = p;
  return out;
}

// Rational Cherednik algebra of S_n: y_i x_i - x_i y_i = 1 + c sum_{l != i} s_il, y_j x_i - x_i y_j = -c s_ij.
inline Presentation presentation_rational_sn(std::size_t n, const SymmetricParams& p, FieldPtr f = nullptr) {
  if (n == 0) throw InvalidParameters("rank must be positive");
  if (!f) f = p.c.field();
  const Cyclo c = promote(p.c, f);
  std::vector<MonomialMatrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(make_transposition(f, n, i, i + 1));
  if (gens.empty()) gens.push_back(MonomialMatrix::identity(f, n));
  Group w(gens);
  std::vector<std::vector<GroupTerms>> table(n, std::vector<GroupTerms>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) {
        if (!c.is_zero()) table[j][i].emplace_back(make_transposition(f, n, i, j), -c);
        continue;
      }
      table[j][i].emplace_back(MonomialMatrix::identity(f, n), Cyclo(f, 1L));
      for (std::size_t l = 0; l < n && !c.is_zero(); ++l)
        if (l != i) table[j][i].emplace_back(make_transposition(f, n, i, l), c);
    }
  Presentation out =
      make_presentation(QMatrix::ones(f, n), std::move(w), std::move(table), false, "rational_sn(n=" + std::to_string(n) + ")");
  out.family = SymmetricParams{c};
  return out;
}

// W = prod_i <t_i^(zeta_{m_i})>; y_i x_i - x_i y_i = 1 + sum_k c_{i,k} t_i^(zeta_{m_i}^k), other pairs q-commute.
inline Presentation presentation_abelian(const QMatrixPtr& q, const AbelianParams& p) {
  const std::size_t n = q->n();
  const FieldPtr& f = q->field();
  if (p.orders.size() != n || p.c.size() > n) throw InvalidParameters("abelian parameters do not match the rank");
  std::vector<MonomialMatrix> gens;
  for (std::size_t i = 0; i < n; ++i) {
    const int mi = p.orders[i];
    if (mi <= 0 || f->order() % mi) throw InvalidParameters("cyclic order " + std::to_string(mi) + " not in the ambient field");
    gens.push_back(make_t(n, i, Cyclo::root(f, f->order() / mi)));
  }
  Group w(gens);
  std::vector<std::vector<GroupTerms>> table(n, std::vector<GroupTerms>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.degenerate) table[i][i].emplace_back(MonomialMatrix::identity(f, n), Cyclo(f, 1L));
    if (i >= p.c.size()) continue;
    for (const auto& [k, v] : p.c[i]) {
      if (k <= 0 || k >= p.orders[i]) throw InvalidParameters("abelian c is indexed by eps in C_i \\ {1}");
      if (!v.is_zero()) table[i][i].emplace_back(make_t(n, i, Cyclo::root(f, k * (f->order() / p.orders[i]))), promote(v, f));
    }
  }
  Presentation out = make_presentation(q, std::move(w), std::move(table), p.degenerate, "abelian(n=" + std::to_string(n) + ")");
  out.family = p;
  return out;
}

// W together with Gamma_q.
inline Group lifted_group(const Presentation& p) {
  auto gens = p.w.generators();
  for (const auto& g : gamma_generators(*p.q)) gens.push_back(g);
  return Group(gens);
}

// beta(y_j (x) x_i) = gamma_j table[j][i], a commutator map over W Gamma_q.
inline CommutatorMap lifted_commutator(const Presentation& p) {
  const std::size_t n = p.n();
  auto gam = gamma_generators(*p.q);
  CommutatorMap b(p.field(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [w, c] : p.table[j][i]) {
        Matrix l = zero_matrix(p.field(), n, n);
        l[j][i] = c;
        b.add(gam[j] * w, l);
      }
  return b;
}

// The table itself as a map beta(y_j (x) x_i) = table[j][i], the shape braided_reduce returns.
inline CommutatorMap table_map(const Presentation& p) {
  const std::size_t n = p.n();
  CommutatorMap b(p.field(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [w, c] : p.table[j][i]) {
        Matrix l = zero_matrix(p.field(), n, n);
        l[j][i] = c;
        b.add(w, l);
      }
  return b;
}

// Commutator of the -1 Cherednik algebra of W Gamma written with -id factored out:
//   i != j: (-id) c_1 sum_e (-e) s_ij^(e)
//   i = j : (-id) (t_i^(-1) + c_{-1} - c_1 sum_{l != i, e} s_il^(e) + sum_{e' != +-1} c_e' t_i^(-e'))
// Its braided reduction is the negative table with c_1 replaced by -c_1.
inline CommutatorMap minus_id_commutator(const NegativeParams& p, std::size_t n, FieldPtr f = nullptr) {
  if (!f) f = field_create(p.m);
  validate(p, n, f);
  if (p.c1_prime) throw InvalidParameters("the -id form has no rank-2 split");
  const long step = f->order() / p.m, stepp = f->order() / p.mp;
  const Cyclo one(f, 1L), minus(f, -1L), c1 = promote(p.c1, f);
  const MonomialMatrix mid = MonomialMatrix::diagonal(Vec(n, minus));
  CommutatorMap b(f, n);
  auto put = [&](std::size_t j, std::size_t i, const MonomialMatrix& w, const Cyclo& v) {
    Matrix l = zero_matrix(f, n, n);
    l[j][i] = v;
    b.add(mid * w, l);
  };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) {
        for (long k = 0; k < p.m; ++k) {
          Cyclo e = Cyclo::root(f, k * step);
          put(j, i, make_srefl(n, i, j, e), -(c1 * e));
        }
        continue;
      }
      if (!p.degenerate) put(i, i, make_t(n, i, minus), one);
      for (std::size_t l = 0; l < n; ++l)
        if (l != i)
          for (long k = 0; k < p.m; ++k) put(i, i, make_srefl(n, i, l, Cyclo::root(f, k * step)), -c1);
      for (const auto& [k, v] : p.c) {
        Cyclo e = Cyclo::root(f, k * stepp);
        if (e == minus) put(i, i, MonomialMatrix::identity(f, n), promote(v, f));
        else put(i, i, make_t(n, i, -e), promote(v, f));
      }
    }
  return b;
}

// The table invariants: the lifted commutator is equivariant and q-commutative.
inline bool check_presentation(const Presentation& p, std::string* why = nullptr) {
  CommutatorMap b = lifted_commutator(p);
  if (!check_equivariance(b, lifted_group(p))) {
    if (why) *why = "lifted commutator is not equivariant";
    return false;
  }
  return check_q_commutativity(b, *p.q, why);
}

struct Token {
  enum Kind { X = 0, G = 1, Y = 2 };
  Kind kind = X;
  std::size_t i = 0;
  MonomialMatrix g;

  static Token x(std::size_t i) { return {X, i, {}}; }
  static Token y(std::size_t i) { return {Y, i, {}}; }
  static Token group(MonomialMatrix g) { return {G, 0, std::move(g)}; }

  friend bool operator==(const Token& a, const Token& b) { return a.kind == b.kind && a.i == b.i && a.g == b.g; }
  friend bool operator<(const Token& a, const Token& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.i != b.i) return a.i < b.i;
    return a.g < b.g;
  }
  std::string str() const {
    if (kind == G) return "g" + g.str();
    return (kind == X ? "x" : "y") + std::to_string(i + 1);
  }
};

using Word = std::vector<Token>;
using WordSum = std::map<Word, Cyclo>;

inline std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& t : w) s += (s.empty() ? "" : " ") + t.str();
  return s;
}

inline void add_to(WordSum& s, const Word& w, const Cyclo& c) {
  if (c.is_zero()) return;
  auto it = s.find(w);
  if (it == s.end()) {
    s.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  }
}

// Basis element x^a w y^b of S_q(V) (x) CW (x) S_q(V*).
struct BasisTriple {
  Monomial x;
  MonomialMatrix g;
  Monomial y;

  friend bool operator==(const BasisTriple& a, const BasisTriple& b) { return a.x == b.x && a.g == b.g && a.y == b.y; }
  friend bool operator<(const BasisTriple& a, const BasisTriple& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.g != b.g) return a.g < b.g;
    return a.y < b.y;
  }
};

class AlgebraElement {
 public:
  using Terms = std::map<BasisTriple, Cyclo>;

  AlgebraElement(FieldPtr f, std::size_t n) : f_(std::move(f)), n_(n) {}

  static AlgebraElement one(const Presentation& p) { return basis(p, {Monomial(p.n(), 0), id(p), Monomial(p.n(), 0)}); }
  static AlgebraElement x(const Presentation& p, std::size_t i) {
    check_index(i, p.n());
    return basis(p, {unit_monomial(p.n(), i), id(p), Monomial(p.n(), 0)});
  }
  static AlgebraElement y(const Presentation& p, std::size_t i) {
    check_index(i, p.n());
    return basis(p, {Monomial(p.n(), 0), id(p), unit_monomial(p.n(), i)});
  }
  static AlgebraElement group(const Presentation& p, const MonomialMatrix& w) {
    if (!p.w.contains(w)) throw NotInGroup("element " + w.str() + " is not in W");
    return basis(p, {Monomial(p.n(), 0), w, Monomial(p.n(), 0)});
  }
  static AlgebraElement basis(const Presentation& p, BasisTriple t) {
    AlgebraElement a(p.field(), p.n());
    a.add(std::move(t), Cyclo(p.field(), 1L));
    return a;
  }

  const FieldPtr& field() const { return f_; }
  std::size_t n() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  Cyclo coeff(const BasisTriple& t) const {
    auto it = t_.find(t);
    return it == t_.end() ? Cyclo(f_) : it->second;
  }

  void add(BasisTriple t, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = t_.find(t);
    if (it == t_.end()) {
      t_.emplace(std::move(t), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [t, c] : o.t_) add(t, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [t, c] : o.t_) add(t, -c);
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Cyclo& s, const AlgebraElement& a) {
    AlgebraElement r(a.f_, a.n_);
    for (const auto& [t, c] : a.t_) r.add(t, s * c);
    return r;
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.t_ == b.t_; }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  // Representative word x..x g y..y of each term.
  WordSum words() const {
    WordSum s;
    for (const auto& [t, c] : t_) add_to(s, word_of(t), c);
    return s;
  }

  static Word word_of(const BasisTriple& t) {
    Word w;
    for (std::size_t k = 0; k < t.x.size(); ++k)
      for (int e = 0; e < t.x[k]; ++e) w.push_back(Token::x(k));
    if (!t.g.is_identity()) w.push_back(Token::group(t.g));
    for (std::size_t k = 0; k < t.y.size(); ++k)
      for (int e = 0; e < t.y[k]; ++e) w.push_back(Token::y(k));
    return w;
  }

  // Terms "(c)*x-monomial*[w]*y-monomial"; identity group elements and unit monomials are omitted.
  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : t_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (total_degree(t.x)) os << "*" << monomial_str(t.x);
      if (!t.g.is_identity()) os << "*" << t.g.str();
      if (total_degree(t.y)) {
        std::string ys = monomial_str(t.y);
        for (auto& ch : ys)
          if (ch == 'x') ch = 'y';
        os << "*" << ys;
      }
    }
    return os.str();
  }

 private:
  static MonomialMatrix id(const Presentation& p) { return MonomialMatrix::identity(p.field(), p.n()); }

  FieldPtr f_;
  std::size_t n_;
  Terms t_;
};

enum class Strategy { Leftmost, Rightmost };

namespace detail {

// Redex at p: a G(identity) token at p, or a pair (p, p+1) out of the order x.. G y.. .
inline bool reducible_at(const Word& w, std::size_t p) {
  if (w[p].kind == Token::G && w[p].g.is_identity()) return true;
  if (p + 1 >= w.size()) return false;
  const Token &a = w[p], &b = w[p + 1];
  if (a.kind == b.kind) return a.kind == Token::G || a.i > b.i;
  return a.kind > b.kind;
}

inline std::optional<std::size_t> find_redex(const Word& w, Strategy s) {
  if (s == Strategy::Leftmost) {
    for (std::size_t p = 0; p < w.size(); ++p)
      if (reducible_at(w, p)) return p;
  } else {
    for (std::size_t p = w.size(); p-- > 0;)
      if (reducible_at(w, p)) return p;
  }
  return std::nullopt;
}

inline Word splice(const Word& w, std::size_t p, std::size_t len, std::initializer_list<Token> mid) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(p + len), w.end());
  return out;
}

// One rewriting step at p. Each output word is shorter, or has the same length and one inversion fewer
// between token kinds (G before X, Y before X or G), or only an adjacent x or y pair sorted; so
// (length, kind inversions, index inversions) decreases lexicographically and rewriting terminates.
inline std::vector<std::pair<Word, Cyclo>> rewrite(const Word& w, std::size_t p, const Presentation& P) {
  const FieldPtr& f = P.field();
  const QMatrix& q = *P.q;
  const Token &a = w[p];
  if (a.kind == Token::G && a.g.is_identity()) return {{splice(w, p, 1, {}), Cyclo(f, 1L)}};
  const Token& b = w[p + 1];
  if (a.kind == Token::X && b.kind == Token::X)
    return {{splice(w, p, 2, {Token::x(b.i), Token::x(a.i)}), q(a.i, b.i)}};
  if (a.kind == Token::Y && b.kind == Token::Y)
    return {{splice(w, p, 2, {Token::y(b.i), Token::y(a.i)}), q(a.i, b.i)}};
  if (a.kind == Token::G && b.kind == Token::G) return {{splice(w, p, 2, {Token::group(a.g * b.g)}), Cyclo(f, 1L)}};
  if (a.kind == Token::G && b.kind == Token::X)
    return {{splice(w, p, 2, {Token::x(a.g.image_index(b.i)), a}), a.g.scalar(b.i)}};
  if (a.kind == Token::Y && b.kind == Token::G) {
    // y_i w = w w^-1(y_i)
    MonomialMatrix d = act_on_dual(b.g.inverse());
    return {{splice(w, p, 2, {b, Token::y(d.image_index(a.i))}), d.scalar(a.i)}};
  }
  // (Y j, X i)
  std::vector<std::pair<Word, Cyclo>> out;
  out.emplace_back(splice(w, p, 2, {b, a}), q(b.i, a.i));
  for (const auto& [g, c] : P.table[a.i][b.i]) out.emplace_back(splice(w, p, 2, {Token::group(g)}), c);
  return out;
}

inline BasisTriple triple_of(const Word& w, const Presentation& P) {
  BasisTriple t{Monomial(P.n(), 0), MonomialMatrix::identity(P.field(), P.n()), Monomial(P.n(), 0)};
  for (const auto& tok : w) {
    if (tok.kind == Token::X) ++t.x[tok.i];
    if (tok.kind == Token::G) t.g = tok.g;
    if (tok.kind == Token::Y) ++t.y[tok.i];
  }
  return t;
}

inline void check_word(const Word& w, const Presentation& P) {
  for (const auto& t : w) {
    if (t.kind == Token::G) {
      if (!P.w.contains(t.g)) throw NotInGroup("word token " + t.str() + " is not in W");
    } else {
      check_index(t.i, P.n());
    }
  }
}

}  // namespace detail

inline AlgebraElement normal_form(const WordSum& s, const Presentation& P, Strategy strategy = Strategy::Leftmost) {
  for (const auto& [w, c] : s) detail::check_word(w, P);
  AlgebraElement out(P.field(), P.n());
  WordSum work;
  for (const auto& [w, c] : s) add_to(work, w, promote(c, P.field()));
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Word& w = node.key();
    const Cyclo& c = node.mapped();
    auto p = detail::find_redex(w, strategy);
    if (!p) {
      out.add(detail::triple_of(w, P), c);
      continue;
    }
    for (const auto& [w2, c2] : detail::rewrite(w, *p, P)) add_to(work, w2, c * c2);
  }
  return out;
}

inline AlgebraElement normal_form(const Word& w, const Presentation& P, Strategy strategy = Strategy::Leftmost) {
  return normal_form(WordSum{{w, Cyclo(P.field(), 1L)}}, P, strategy);
}

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Presentation& P) {
  if (a.n() != P.n() || b.n() != P.n()) throw QMatrixMismatch("multiply: elements of a different rank");
  WordSum s;
  for (const auto& [ta, ca] : a.terms()) {
    Word wa = AlgebraElement::word_of(ta);
    for (const auto& [tb, cb] : b.terms()) {
      Word w = wa;
      Word wb = AlgebraElement::word_of(tb);
      w.insert(w.end(), wb.begin(), wb.end());
      add_to(s, w, ca * cb);
    }
  }
  return normal_form(s, P);
}

// y_j on S_q(V) from the table alone: y_j 1 = 0, y_j (x_i g) = q_ij x_i (y_j g) + table[j][i] g.
inline std::vector<Operator> table_operators(const Presentation& P, int max_degree) {
  const auto& q = P.q;
  const std::size_t n = P.n();
  std::vector<Operator> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::map<Monomial, QPoly, GrlexLess> memo;
    out.push_back(Operator::build(q, max_degree, -1, [&](const Monomial& a) {
      QPoly res(q);
      std::size_t i = 0;
      while (i < n && a[i] == 0) ++i;
      if (i < n) {
        Monomial rest = a;
        rest[i] -= 1;
        QPoly g = QPoly::monomial(q, rest);
        res = (*q)(i, j) * (QPoly::variable(q, i) * memo.at(rest));
        for (const auto& [w, c] : P.table[j][i]) res += c * act_on_poly(w, g);
      }
      memo.emplace(a, res);
      return res;
    }));
  }
  return out;
}

// The Verma module S_q(V): x_i by left multiplication, W by act_on_poly, y_i by the Dunkl operator of the
// family (the table recursion for custom presentations).
class VermaModule {
 public:
  VermaModule(const Presentation& P, int max_degree) : P_(&P), max_(max_degree) {
    const std::size_t n = P.n();
    const FieldPtr& f = P.field();
    ops_ = std::visit(
        [&](const auto& fam) -> std::vector<Operator> {
          using T = std::decay_t<decltype(fam)>;
          if constexpr (std::is_same_v<T, NegativeParams>) return dunkl_negative(fam, n, max_degree, f);
          else if constexpr (std::is_same_v<T, SymmetricParams>) return dunkl_symmetric(n, fam, max_degree, f);
          else if constexpr (std::is_same_v<T, AbelianParams>) return dunkl_abelian(P.q, fam, max_degree);
          else return table_operators(P, max_degree);
        },
        P.family);
  }

  int max_degree() const { return max_; }
  const std::vector<Operator>& y_operators() const { return ops_; }

  QPoly act(const Word& w, const QPoly& p) const {
    QPoly r = p;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->kind == Token::X) r = QPoly::variable(P_->q, it->i) * r;
      else if (it->kind == Token::G) r = act_on_poly(it->g, r);
      else r = ops_.at(it->i).apply(r);
    }
    return r;
  }

  QPoly act(const WordSum& s, const QPoly& p) const {
    QPoly out(P_->q);
    for (const auto& [w, c] : s) out += c * act(w, p);
    return out;
  }

  QPoly act(const AlgebraElement& a, const QPoly& p) const { return act(a.words(), p); }

 private:
  const Presentation* P_;
  int max_;
  std::vector<Operator> ops_;
};

inline QPoly verma_action(const AlgebraElement& a, const QPoly& p, const Presentation& P, int max_degree) {
  return VermaModule(P, max_degree).act(a, p);
}

// Relations as differences of words: x_i x_j - q_ij x_j x_i and the same for y (i < j); w x_i - w(x_i) w and
// w y_i - w(y_i) w for the generators w of W; y_j x_i - q_ij x_i y_j - table[j][i].
inline std::vector<std::pair<std::string, WordSum>> defining_relations(const Presentation& P) {
  const std::size_t n = P.n();
  const FieldPtr& f = P.field();
  const Cyclo one(f, 1L);
  const QMatrix& q = *P.q;
  std::vector<std::pair<std::string, WordSum>> out;
  auto idx = [](std::size_t i) { return std::to_string(i + 1); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      WordSum xs, ys;
      add_to(xs, {Token::x(i), Token::x(j)}, one);
      add_to(xs, {Token::x(j), Token::x(i)}, -q(i, j));
      add_to(ys, {Token::y(i), Token::y(j)}, one);
      add_to(ys, {Token::y(j), Token::y(i)}, -q(i, j));
      out.emplace_back("x" + idx(i) + " x" + idx(j), xs);
      out.emplace_back("y" + idx(i) + " y" + idx(j), ys);
    }
  for (const auto& g : P.w.generators()) {
    MonomialMatrix d = act_on_dual(g);
    for (std::size_t i = 0; i < n; ++i) {
      WordSum xs, ys;
      add_to(xs, {Token::group(g), Token::x(i)}, one);
      add_to(xs, {Token::x(g.image_index(i)), Token::group(g)}, -g.scalar(i));
      add_to(ys, {Token::group(g), Token::y(i)}, one);
      add_to(ys, {Token::y(d.image_index(i)), Token::group(g)}, -d.scalar(i));
      out.emplace_back("g" + g.str() + " x" + idx(i), xs);
      out.emplace_back("g" + g.str() + " y" + idx(i), ys);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      WordSum s;
      add_to(s, {Token::y(j), Token::x(i)}, one);
      add_to(s, {Token::x(i), Token::y(j)}, -q(i, j));
      for (const auto& [g, c] : P.table[j][i]) add_to(s, {Token::group(g)}, -c);
      out.emplace_back("y" + idx(j) + " x" + idx(i), s);
    }
  return out;
}

struct VermaFailure {
  std::string relation;
  Monomial monomial;
  QPoly value;
};

// First relation and monomial of degree <= D on which a defining relation acts nontrivially.
inline std::optional<VermaFailure> verma_relation_check(const Presentation& P, int max_degree) {
  VermaModule M(P, max_degree + 2);
  for (const auto& [name, rel] : defining_relations(P))
    for (const auto& a : monomials_up_to(P.n(), max_degree)) {
      QPoly v = M.act(rel, QPoly::monomial(P.q, a));
      if (!v.is_zero()) return VermaFailure{name, a, v};
    }
  return std::nullopt;
}

struct PbwReport {
  std::size_t trials = 0;
  std::size_t agreed = 0;
  std::optional<Word> counterexample;
  std::optional<AlgebraElement> leftmost, rightmost;

  bool consistent() const { return !counterexample; }
};

// Random words of length 1..max_len over X(i), Y(i) and G(w); an equal mix of the three token kinds.
inline Word random_word(const Presentation& P, std::size_t max_len, std::mt19937_64& rng) {
  const std::size_t n = P.n();
  const auto& elems = P.w.elements();
  const std::size_t len = 1 + static_cast<std::size_t>(rng() % std::max<std::size_t>(max_len, 1));
  Word w;
  for (std::size_t k = 0; k < len; ++k) {
    switch (rng() % 3) {
      case 0: w.push_back(Token::x(rng() % n)); break;
      case 1: w.push_back(Token::group(elems[rng() % elems.size()])); break;
      default: w.push_back(Token::y(rng() % n)); break;
    }
  }
  return w;
}

inline PbwReport pbw_consistency(const Presentation& P, std::size_t trials, std::size_t max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PbwReport r;
  for (std::size_t t = 0; t < trials; ++t) {
    Word w = random_word(P, max_len, rng);
    AlgebraElement a = normal_form(w, P, Strategy::Leftmost);
    AlgebraElement b = normal_form(w, P, Strategy::Rightmost);
    ++r.trials;
    if (a == b) {
      ++r.agreed;
      continue;
    }
    r.counterexample = w;
    r.leftmost = std::move(a);
    r.rightmost = std::move(b);
    break;
  }
  return r;
}

}  // namespace bcher
