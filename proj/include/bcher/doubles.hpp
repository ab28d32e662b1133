#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "qpoly.hpp"
#include "wgroup.hpp"

namespace bcher {

// Matrix of a group element on the space in question; column j is the image of basis vector j.
using ActionFn = std::function<Matrix(const MonomialMatrix&)>;

inline Matrix natural_action(const MonomialMatrix& w) { return w.dense(); }

// beta(y_j (x) x_i) = sum_w L_w[j][i] w, i.e. beta(f (x) v) = sum_w <L_w v, f> w.
class CommutatorMap {
 public:
  CommutatorMap(FieldPtr f, std::size_t dim) : f_(std::move(f)), dim_(dim) {}

  const FieldPtr& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  const std::map<MonomialMatrix, Matrix>& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }

  // Adds L to the entry at w; zero entries are dropped.
  void add(const MonomialMatrix& w, const Matrix& l) {
    if (l.size() != dim_ || (dim_ && l[0].size() != dim_)) throw InvalidParameters("commutator map: L_w has the wrong shape");
    auto it = e_.find(w);
    Matrix sum = it == e_.end() ? l : mat_add(it->second, l);
    if (it != e_.end()) e_.erase(it);
    if (!is_zero_matrix(sum)) e_.emplace(w, std::move(sum));
  }

  Matrix at(const MonomialMatrix& w) const {
    auto it = e_.find(w);
    return it == e_.end() ? zero_matrix(f_, dim_, dim_) : it->second;
  }

  // beta(y_j (x) x_i) as a list of (group element, coefficient).
  std::vector<std::pair<MonomialMatrix, Cyclo>> value(std::size_t j, std::size_t i) const {
    std::vector<std::pair<MonomialMatrix, Cyclo>> out;
    for (const auto& [w, l] : e_)
      if (!l[j][i].is_zero()) out.emplace_back(w, l[j][i]);
    return out;
  }

  friend bool operator==(const CommutatorMap& a, const CommutatorMap& b) { return a.dim_ == b.dim_ && a.e_ == b.e_; }
  friend bool operator!=(const CommutatorMap& a, const CommutatorMap& b) { return !(a == b); }

 private:
  FieldPtr f_;
  std::size_t dim_;
  std::map<MonomialMatrix, Matrix> e_;
};

// L_{g w g^-1} = g L_w g^-1 for every generator g.
inline bool check_equivariance(const CommutatorMap& beta, const std::vector<MonomialMatrix>& gens,
                               const ActionFn& act = natural_action) {
  for (const auto& g : gens) {
    const MonomialMatrix gi = g.inverse();
    const Matrix a = act(g), ai = act(gi);
    for (const auto& [w, l] : beta.entries())
      if (beta.at(g * w * gi) != mat_mul(mat_mul(a, l), ai)) return false;
  }
  return true;
}

inline bool check_equivariance(const CommutatorMap& beta, const Group& w, const ActionFn& act = natural_action) {
  return check_equivariance(beta, w.generators(), act);
}

namespace detail {

inline Matrix outer(const Vec& u, const Vec& v) {
  Matrix m(u.size(), Vec(v.size(), Cyclo(u.at(0).field())));
  for (std::size_t a = 0; a < u.size(); ++a)
    if (!u[a].is_zero())
      for (std::size_t b = 0; b < v.size(); ++b) m[a][b] = u[a] * v[b];
  return m;
}

inline Vec column(const Matrix& m, std::size_t j) {
  Vec v;
  v.reserve(m.size());
  for (const auto& row : m) v.push_back(row[j]);
  return v;
}

inline Vec unit(const FieldPtr& f, std::size_t n, std::size_t i) {
  Vec v(n, Cyclo(f));
  v[i] = Cyclo(f, 1L);
  return v;
}

inline Vec axpy(const Cyclo& a, const Vec& x, Vec y) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
  return y;
}

}  // namespace detail

// Both tensor identities, for every support element and every ordered pair i != j.
// On failure `why` names the first failing (side, w, i, j).
inline bool check_q_commutativity(const CommutatorMap& beta, const QMatrix& q, std::string* why = nullptr) {
  using detail::axpy;
  using detail::column;
  using detail::outer;
  using detail::unit;
  const std::size_t n = q.n();
  if (beta.dim() != n) throw QMatrixMismatch("commutator map and q-matrix differ in rank");
  const FieldPtr& f = q.field();
  const Cyclo one(f, 1L), minus(f, -1L);
  for (const auto& [w, l] : beta.entries()) {
    const Matrix wv = w.dense(), wd = act_on_dual(w).dense();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        // (x_i - q_ij w x_i) (x) L x_j = (q_ij x_j - w x_j) (x) L x_i
        Vec u1 = axpy(-q(i, j), column(wv, i), unit(f, n, i));
        Vec u2 = axpy(minus, column(wv, j), axpy(q(i, j), unit(f, n, j), Vec(n, Cyclo(f))));
        bool ok = outer(u1, column(l, j)) == outer(u2, column(l, i));
        // (y_i - q_ji w y_i) (x) L* y_j = (q_ji y_j - w y_j) (x) L* y_i, with L* y_j = row j of L
        Vec d1 = axpy(-q(j, i), column(wd, i), unit(f, n, i));
        Vec d2 = axpy(minus, column(wd, j), axpy(q(j, i), unit(f, n, j), Vec(n, Cyclo(f))));
        bool ok_dual = outer(d1, l[j]) == outer(d2, l[i]);
        if (!ok || !ok_dual) {
          if (why)
            *why = std::string(ok ? "V*" : "V") + " equation fails at w=" + w.str() + " i=" + std::to_string(i + 1) +
                   " j=" + std::to_string(j + 1);
          return false;
        }
      }
  }
  return true;
}

// Basis of V (x) V indexed a*n + b for x_a (x) x_b.
// T^-(u (x) v) = (L_w (x) id)(u (x) w(v) + v (x) u).
inline Matrix t_minus(const MonomialMatrix& w, const CommutatorMap& beta, const ActionFn& act = natural_action) {
  const std::size_t n = beta.dim();
  const Matrix l = beta.at(w), a = act(w);
  Matrix t = zero_matrix(beta.field(), n * n, n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t c = 0; c < n; ++c) {
        if (!l[c][x].is_zero())
          for (std::size_t d = 0; d < n; ++d)
            if (!a[d][y].is_zero()) t[c * n + d][x * n + y] += l[c][x] * a[d][y];
        if (!l[c][y].is_zero()) t[c * n + x][x * n + y] += l[c][y];
      }
  return t;
}

// T^+(f (x) g) = (id (x) L_w^*)(w^-1(f) (x) g + g (x) f) on V* (x) V*.
inline Matrix t_plus(const MonomialMatrix& w, const CommutatorMap& beta, const ActionFn& act = natural_action) {
  const std::size_t n = beta.dim();
  const Matrix l = beta.at(w), a = act(w);  // w^-1 acts on V* by the transpose of a
  Matrix t = zero_matrix(beta.field(), n * n, n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t d = 0; d < n; ++d) {
        if (!l[y][d].is_zero())
          for (std::size_t c = 0; c < n; ++c)
            if (!a[x][c].is_zero()) t[c * n + d][x * n + y] += a[x][c] * l[y][d];
        if (!l[x][d].is_zero()) t[y * n + d][x * n + y] += l[x][d];
      }
  return t;
}

enum class Side { V, Dual };

// Subspace of V (x) V or V* (x) V*, kept in reduced row echelon form.
struct RelationSpace {
  Side side = Side::V;
  std::size_t n = 0;
  FieldPtr field;
  Matrix basis;

  RelationSpace() = default;
  RelationSpace(Side s, std::size_t rank, FieldPtr f, Matrix rows)
      : side(s), n(rank), field(std::move(f)), basis(rows.empty() ? Matrix{} : rref(std::move(rows))) {}

  std::size_t dim() const { return basis.size(); }
  bool contains(const Vec& v) const {
    if (is_zero_vec(v)) return true;
    Matrix m = basis;
    m.push_back(v);
    return rank(m) == basis.size();
  }
  bool contains(const RelationSpace& o) const {
    for (const auto& v : o.basis)
      if (!contains(v)) return false;
    return true;
  }
  friend bool operator==(const RelationSpace& a, const RelationSpace& b) {
    return a.side == b.side && a.n == b.n && a.basis == b.basis;
  }
};

inline RelationSpace whole_space(Side s, std::size_t n, const FieldPtr& f) {
  return RelationSpace(s, n, f, identity_matrix(f, n * n));
}

inline RelationSpace intersect(const RelationSpace& a, const RelationSpace& b) {
  const std::size_t cols = a.n * a.n;
  Matrix ann = stack(kernel(a.basis, cols, a.field), kernel(b.basis, cols, a.field));
  return RelationSpace(a.side, a.n, a.field, kernel(ann, cols, a.field));
}

// Quadratic relations of S_q(V) (side V: x_i x_j - q_ij x_j x_i) or of S_{q^T}(V*) (y_i y_j - q_ji y_j y_i).
inline RelationSpace wedge_q(const QMatrix& q, Side side) {
  const std::size_t n = q.n();
  Matrix rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec v(n * n, Cyclo(q.field()));
      v[i * n + j] = Cyclo(q.field(), 1L);
      v[j * n + i] = side == Side::V ? -q(i, j) : -q(j, i);
      rows.push_back(std::move(v));
    }
  return RelationSpace(side, n, q.field(), rows);
}

// ker(id + Psi) for a braiding on a space of dimension `dim`.
inline RelationSpace ker_id_plus(const Matrix& psi, std::size_t dim, const FieldPtr& f, Side side = Side::V) {
  Matrix m = mat_add(identity_matrix(f, dim * dim), psi);
  return RelationSpace(side, dim, f, kernel(m, dim * dim, f));
}

struct MaxRelations {
  RelationSpace minus;
  RelationSpace plus;
};

// R^-_max = cap ker T^-_w, R^+_max = cap ker T^+_w over the support.
inline MaxRelations r_max(const CommutatorMap& beta, const std::vector<MonomialMatrix>& gens,
                          const ActionFn& act = natural_action) {
  if (!check_equivariance(beta, gens, act)) throw NotEquivariant("r_max: commutator map is not equivariant");
  const std::size_t n = beta.dim(), cols = n * n;
  Matrix tm, tp;
  for (const auto& [w, l] : beta.entries()) {
    tm = stack(std::move(tm), t_minus(w, beta, act));
    tp = stack(std::move(tp), t_plus(w, beta, act));
  }
  return {RelationSpace(Side::V, n, beta.field(), kernel(tm, cols, beta.field())),
          RelationSpace(Side::Dual, n, beta.field(), kernel(tp, cols, beta.field()))};
}

inline MaxRelations r_max(const CommutatorMap& beta, const Group& w, const ActionFn& act = natural_action) {
  return r_max(beta, w.generators(), act);
}

inline CommutatorMap diamond(const CommutatorMap& a, const CommutatorMap& b) {
  if (a.dim() != b.dim()) throw InvalidParameters("diamond: ranks differ");
  CommutatorMap out = a;
  for (const auto& [w, l] : b.entries()) out.add(w, l);
  return out;
}

inline CommutatorMap star(const CommutatorMap& a, const CommutatorMap& b) {
  if (a.dim() != b.dim()) throw InvalidParameters("star: ranks differ");
  CommutatorMap out(a.field(), a.dim());
  for (const auto& [w, l] : a.entries()) {
    auto it = b.entries().find(w);
    if (it != b.entries().end()) out.add(w, mat_mul(l, it->second));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Yetter-Drinfeld modules

struct YDModule {
  std::vector<std::string> labels;
  Group group;
  std::vector<Matrix> action;             // one per group.generators()
  std::vector<MonomialMatrix> grading;    // |e_a|

  std::size_t dim() const { return grading.size(); }
  const FieldPtr& field() const { return group.field(); }
};

// Matrices of all group elements, built along a breadth-first search over generator words.
// Throws NotYetterDrinfeld when two words for the same element give different matrices.
inline std::map<MonomialMatrix, Matrix> element_actions(const YDModule& y) {
  const auto& gens = y.group.generators();
  if (y.action.size() != gens.size()) throw NotYetterDrinfeld("YD module: one action matrix per generator expected");
  for (const auto& a : y.action)
    if (a.size() != y.dim() || (y.dim() && a[0].size() != y.dim()))
      throw NotYetterDrinfeld("YD module: action matrix has the wrong shape");
  std::map<MonomialMatrix, Matrix> out;
  auto id = MonomialMatrix::identity(y.field(), y.group.rank());
  out.emplace(id, identity_matrix(y.field(), y.dim()));
  std::deque<MonomialMatrix> queue{id};
  while (!queue.empty()) {
    MonomialMatrix e = queue.front();
    queue.pop_front();
    const Matrix ae = out.at(e);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      MonomialMatrix h = gens[k] * e;
      Matrix ah = mat_mul(y.action[k], ae);
      auto [it, fresh] = out.emplace(h, ah);
      if (fresh) queue.push_back(h);
      else if (it->second != ah) throw NotYetterDrinfeld("YD module: action is not a representation of the group");
    }
  }
  return out;
}

// Checks the representation, the degrees, and |g(e_a)| = g |e_a| g^-1 for every generator g.
inline std::map<MonomialMatrix, Matrix> validate_yd(const YDModule& y) {
  auto acts = element_actions(y);
  if (y.labels.size() != y.dim()) throw NotYetterDrinfeld("YD module: one label per basis vector expected");
  for (const auto& d : y.grading)
    if (!y.group.contains(d)) throw NotYetterDrinfeld("YD module: degree " + d.str() + " is not in the group");
  const auto& gens = y.group.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const MonomialMatrix gi = gens[k].inverse();
    for (std::size_t a = 0; a < y.dim(); ++a) {
      const MonomialMatrix target = gens[k] * y.grading[a] * gi;
      for (std::size_t b = 0; b < y.dim(); ++b)
        if (!y.action[k][b][a].is_zero() && y.grading[b] != target)
          throw NotYetterDrinfeld("YD module: generator " + std::to_string(k) + " moves " + y.labels[a] +
                                  " out of the conjugate component");
    }
  }
  return acts;
}

inline ActionFn yd_action(const YDModule& y) {
  auto acts = std::make_shared<const std::map<MonomialMatrix, Matrix>>(validate_yd(y));
  return [acts](const MonomialMatrix& g) {
    auto it = acts->find(g);
    if (it == acts->end()) throw NotInGroup("element " + g.str() + " does not act on the YD module");
    return it->second;
  };
}

// Psi(e_a (x) e_b) = |e_a|(e_b) (x) e_a; basis of Y (x) Y indexed a*dim + b.
inline Matrix yd_braiding(const YDModule& y) {
  auto acts = validate_yd(y);
  const std::size_t d = y.dim();
  Matrix psi = zero_matrix(y.field(), d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    const Matrix& g = acts.at(y.grading[a]);
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        if (!g[c][b].is_zero()) psi[c * d + a][a * d + b] = g[c][b];
  }
  return psi;
}

// Y* with the dual basis: g acts by the transpose of g^-1, and |e_a^*| = |e_a|^-1.
inline YDModule dual_yd(const YDModule& y) {
  auto acts = validate_yd(y);
  YDModule out{{}, y.group, {}, {}};
  for (const auto& l : y.labels) out.labels.push_back(l + "*");
  for (const auto& g : y.group.generators()) out.action.push_back(transpose(acts.at(g.inverse())));
  for (const auto& g : y.grading) out.grading.push_back(g.inverse());
  return out;
}

// V = span(x_i) over a group containing Gamma_q, graded by |x_i| = gamma_i.
inline YDModule vector_yd(const QMatrix& q, const Group& w) {
  YDModule y{{}, w, {}, gamma_generators(q)};
  for (std::size_t i = 0; i < q.n(); ++i) y.labels.push_back("x" + std::to_string(i + 1));
  for (const auto& g : w.generators()) y.action.push_back(g.dense());
  validate_yd(y);
  return y;
}

// beta_Y(f (x) v) = <v, f> |v|: L_w is the projection onto Y_w.
inline CommutatorMap heisenberg_beta(const YDModule& y) {
  validate_yd(y);
  CommutatorMap beta(y.field(), y.dim());
  for (std::size_t a = 0; a < y.dim(); ++a) {
    Matrix l = zero_matrix(y.field(), y.dim(), y.dim());
    l[a][a] = Cyclo(y.field(), 1L);
    beta.add(y.grading[a], l);
  }
  return beta;
}

// Hilbert function of T(Y)/<R> in degrees 0..d_max.
inline std::vector<std::size_t> quad_algebra_dims(const RelationSpace& r, int d_max) {
  constexpr std::size_t kCap = 200000;
  if (d_max < 0) throw InvalidParameters("quad_algebra_dims: negative degree");
  if (d_max > 6) throw TooLarge("quad_algebra_dims: degrees above 6 are not supported");
  const std::size_t dim = r.n;
  std::vector<std::size_t> out{1};
  std::size_t total = 1;
  for (int d = 1; d <= d_max; ++d) {
    total *= dim;
    if (total > kCap) throw TooLarge("quad_algebra_dims: degree " + std::to_string(d) + " exceeds the size cap");
    if (d == 1 || r.basis.empty()) {
      out.push_back(total);
      continue;
    }
    SparseEchelon ech(r.field);
    std::size_t pre = 1;
    for (int k = 0; k + 2 <= d; ++k) {
      const std::size_t post = total / (pre * dim * dim);
      for (const auto& rel : r.basis)
        for (std::size_t p = 0; p < pre; ++p)
          for (std::size_t s = 0; s < post; ++s) {
            std::map<std::size_t, Cyclo> row;
            for (std::size_t ab = 0; ab < dim * dim; ++ab)
              if (!rel[ab].is_zero()) row.emplace((p * dim * dim + ab) * post + s, rel[ab]);
            ech.add(std::move(row));
          }
      pre *= dim;
    }
    out.push_back(total - ech.rank());
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// q-reflections

struct RootDatum {
  MonomialMatrix label;  // the q-reflection gamma_B s
  Vec alpha;             // s(v) = v - <v, alpha_check> alpha
  Vec alpha_check;
  Cyclo c;
  // gamma_k alpha and gamma_k alpha_check for the first k in the support of alpha. The commutator
  // term of gamma_B s is c <x, alpha_q_check> <alpha_q, y>; with the untwisted pair the q-commutativity
  // equations fail for s = s_ij^(e) in a negative block. On a positive block gamma_k is the identity.
  Vec alpha_q;
  Vec alpha_q_check;
};

inline Cyclo pairing(const Vec& v, const Vec& f) {
  Cyclo r(v.at(0).field());
  for (std::size_t k = 0; k < v.size(); ++k) r += v[k] * f[k];
  return r;
}

// Root and coroot of a complex reflection, alpha normalized to have first nonzero entry 1.
inline std::optional<std::pair<Vec, Vec>> reflection_root(const Matrix& s) {
  const std::size_t n = s.size();
  const FieldPtr& f = s.at(0).at(0).field();
  Matrix d = mat_add(identity_matrix(f, n), mat_scale(s, Cyclo(f, -1L)));
  if (rank(d) != 1) return std::nullopt;
  std::size_t col = 0;
  while (is_zero_vec(detail::column(d, col))) ++col;
  Vec alpha = detail::column(d, col);
  std::size_t k = 0;
  while (alpha[k].is_zero()) ++k;
  Cyclo inv = alpha[k].inverse();
  for (auto& x : alpha) x = x * inv;
  Vec check = d[k];
  if (pairing(alpha, check).is_zero()) return std::nullopt;  // transvection
  return std::make_pair(alpha, check);
}

// gamma_B^-1 g is a complex reflection whose root lies in V_B and coroot in V*_B.
inline std::optional<RootDatum> q_reflection_datum(const MonomialMatrix& g, const QMatrix& q, const BlockStructure& bs) {
  for (std::size_t b = 0; b < bs.blocks.size(); ++b) {
    MonomialMatrix s = bs.gamma[b].inverse() * g;
    if (s.is_identity() || !preserves_q(s, q)) continue;
    auto rc = reflection_root(s.dense());
    if (!rc) continue;
    bool inside = true;
    for (std::size_t k = 0; k < q.n() && inside; ++k)
      if (bs.block_of[k] != b && (!rc->first[k].is_zero() || !rc->second[k].is_zero())) inside = false;
    if (!inside) continue;
    std::size_t k = 0;
    while (rc->first[k].is_zero()) ++k;
    const MonomialMatrix gk = gamma_generators(q)[k];
    Vec aq = gk.apply(rc->first), cq = act_on_dual(gk).apply(rc->second);
    return RootDatum{g, rc->first, rc->second, Cyclo(q.field()), std::move(aq), std::move(cq)};
  }
  return std::nullopt;
}

struct QReflections {
  YDModule module;  // Y_q with basis [gamma_B s] = gamma_B s (x) alpha_s
  Matrix mu;        // dim x n; column j is mu_c(x_j)
  Matrix nu;        // dim x n; column j is nu(y_j) in the basis dual to [gamma_B s]
  std::vector<RootDatum> roots;
};

inline QReflections build_q_reflections(const Group& wt, const QMatrix& q,
                                        const std::vector<std::pair<MonomialMatrix, Cyclo>>& c) {
  const std::size_t n = q.n();
  const FieldPtr& f = q.field();
  if (wt.rank() != n) throw QMatrixMismatch("build_q_reflections: group and q-matrix differ in rank");
  const BlockStructure bs = block_structure(q);
  for (const auto& g : gamma_generators(q))
    if (!wt.contains(g)) throw NotInGroup("build_q_reflections: gamma " + g.str() + " is not in the group");
  for (const auto& g : bs.gamma)
    if (!wt.contains(g)) throw NotInGroup("build_q_reflections: gamma_B " + g.str() + " is not in the group");

  QReflections out;
  std::map<MonomialMatrix, std::size_t> index;
  for (const auto& g : wt.elements())
    if (auto r = q_reflection_datum(g, q, bs)) {
      index.emplace(g, out.roots.size());
      out.roots.push_back(std::move(*r));
    }
  for (const auto& [g, v] : c) {
    if (!wt.contains(g)) throw NotInGroup("build_q_reflections: " + g.str() + " is not in the group");
    auto it = index.find(g);
    if (it == index.end()) throw InvalidParameters("build_q_reflections: " + g.str() + " is not a q-reflection");
    out.roots[it->second].c = v;
  }

  const std::size_t dim = out.roots.size();
  YDModule& y = out.module;
  y.group = wt;
  for (const auto& r : out.roots) {
    y.labels.push_back("[" + r.label.str() + "]");
    y.grading.push_back(r.label);
  }
  for (const auto& w : wt.generators()) {
    const MonomialMatrix wi = w.inverse();
    Matrix a = zero_matrix(f, dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const RootDatum& r = out.roots[k];
      const std::size_t h = index.at(w * r.label * wi);
      if (out.roots[h].c != r.c) throw NotConjugationInvariant("build_q_reflections: c is not conjugation invariant");
      // w(g (x) alpha_g) = wgw^-1 (x) w(alpha_g) = lambda [wgw^-1]
      Vec img = w.apply(r.alpha_q);
      const Vec& ah = out.roots[h].alpha_q;
      std::size_t p = 0;
      while (ah[p].is_zero()) ++p;
      Cyclo lambda = img[p] / ah[p];
      for (std::size_t t = 0; t < n; ++t)
        if (img[t] != lambda * ah[t]) throw Error("build_q_reflections: conjugate root is not proportional");
      a[h][k] = lambda;
    }
    y.action.push_back(std::move(a));
  }
  validate_yd(y);

  out.mu = zero_matrix(f, dim, n);
  out.nu = zero_matrix(f, dim, n);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      out.mu[k][j] = out.roots[k].c * out.roots[k].alpha_q_check[j];
      out.nu[k][j] = out.roots[k].alpha_q[j];
    }
  return out;
}

// Degenerate commutator sum_s c_s <x, alpha_q_check> <alpha_q, y> gamma_B s; with `c0` the parameter
// is <alpha_q, alpha_q_check>^-1 instead of c_s.
inline CommutatorMap reflection_beta(std::size_t n, const FieldPtr& f, const std::vector<RootDatum>& roots,
                                     bool c0 = false) {
  CommutatorMap beta(f, n);
  for (const auto& r : roots) {
    Cyclo c = c0 ? pairing(r.alpha_q, r.alpha_q_check).inverse() : r.c;
    if (c.is_zero()) continue;
    Matrix l = zero_matrix(f, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) l[a][b] = c * r.alpha_q[a] * r.alpha_q_check[b];
    beta.add(r.label, l);
  }
  return beta;
}

// The roots with nonzero parameter span V.
inline bool roots_span(const std::vector<RootDatum>& roots, std::size_t n) {
  Matrix m;
  for (const auto& r : roots)
    if (!r.c.is_zero()) m.push_back(r.alpha_q);
  return rank(m) == n;
}

struct EmbeddingReport {
  bool product = false;  // beta gamma = beta_Y o (nu (x) mu)
  bool minus = false;    // (mu (x) mu) S^- in ker(id + Psi_Y)
  bool plus = false;     // (nu (x) nu) R^+ in ker(id + Psi_Y*)
  bool all() const { return product && minus && plus; }
};

// beta, gamma act on V (rank n) by the natural action of Y.group; mu, nu are dim Y x n.
// S^- = R^-_max(gamma) and R^+ = R^+_max(beta).
inline EmbeddingReport embedding_report(const CommutatorMap& beta, const CommutatorMap& gamma, const Matrix& mu,
                                        const Matrix& nu, const YDModule& y) {
  const std::size_t n = beta.dim(), d = y.dim();
  const FieldPtr& f = beta.field();
  if (gamma.dim() != n || mu.size() != d || nu.size() != d || (d && (mu[0].size() != n || nu[0].size() != n)))
    throw InvalidParameters("embedding_conditions: inconsistent shapes");
  EmbeddingReport rep;

  CommutatorMap pulled(f, n);
  for (std::size_t a = 0; a < d; ++a) {
    Matrix l = zero_matrix(f, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) l[j][i] = nu[a][j] * mu[a][i];
    pulled.add(y.grading[a], l);
  }
  rep.product = star(beta, gamma) == pulled;

  auto maps_into = [&](const RelationSpace& r, const Matrix& m, const Matrix& psi) {
    const Matrix k = kron(m, m);
    const Matrix op = mat_add(identity_matrix(f, d * d), psi);
    for (const auto& v : r.basis)
      if (!is_zero_vec(mat_vec(op, mat_vec(k, v)))) return false;
    return true;
  };
  const auto& gens = y.group.generators();
  rep.minus = maps_into(r_max(gamma, gens).minus, mu, yd_braiding(y));
  rep.plus = maps_into(r_max(beta, gens).plus, nu, yd_braiding(dual_yd(y)));
  return rep;
}

inline bool embedding_conditions(const CommutatorMap& beta, const CommutatorMap& gamma, const Matrix& mu,
                                 const Matrix& nu, const YDModule& y) {
  return embedding_report(beta, gamma, mu, nu, y).all();
}

// Braided commutator [y~_j, x_i]_q = gamma_j^-1 beta(y_j (x) x_i), as a commutator map.
inline CommutatorMap braided_reduce(const CommutatorMap& beta, const QMatrix& q) {
  const std::size_t n = q.n();
  if (beta.dim() != n) throw QMatrixMismatch("braided_reduce: commutator map and q-matrix differ in rank");
  const auto gens = gamma_generators(q);
  const Group gamma(gens);
  CommutatorMap out(beta.field(), n);
  for (const auto& [w, l] : beta.entries()) {
    if (!normalizes(w, gamma, gens)) throw NotNormalized("braided_reduce: " + w.str() + " does not normalize Gamma_q");
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero_vec(l[j])) continue;
      Matrix row = zero_matrix(beta.field(), n, n);
      row[j] = l[j];
      out.add(gens[j].inverse() * w, row);
    }
  }
  return out;
}

}  // namespace bcher
