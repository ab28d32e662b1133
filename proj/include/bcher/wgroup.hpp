#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "qpoly.hpp"

namespace bcher {

// x_j -> d_j x_{perm[j]}; 0-based indices.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(std::vector<std::size_t> perm, Vec scalars) : perm_(std::move(perm)), d_(std::move(scalars)) {
    const std::size_t n = perm_.size();
    if (d_.size() != n || n == 0) throw InvalidParameters("monomial matrix: perm and scalars differ in length");
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (perm_[j] >= n || seen[perm_[j]]) throw InvalidParameters("monomial matrix: not a permutation");
      seen[perm_[j]] = true;
      if (d_[j].is_zero()) throw InvalidParameters("monomial matrix: zero scalar");
    }
  }

  static MonomialMatrix identity(const FieldPtr& f, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return MonomialMatrix(p, Vec(n, Cyclo(f, 1L)));
  }
  static MonomialMatrix diagonal(Vec d) {
    std::vector<std::size_t> p(d.size());
    std::iota(p.begin(), p.end(), 0);
    return MonomialMatrix(p, std::move(d));
  }

  std::size_t n() const { return perm_.size(); }
  const FieldPtr& field() const { return d_.at(0).field(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const Vec& scalars() const { return d_; }
  std::size_t image_index(std::size_t j) const { return perm_[j]; }
  const Cyclo& scalar(std::size_t j) const { return d_[j]; }

  bool is_identity() const {
    for (std::size_t j = 0; j < n(); ++j)
      if (perm_[j] != j || !d_[j].is_one()) return false;
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t j = 0; j < n(); ++j)
      if (perm_[j] != j) return false;
    return true;
  }

  // (g*h)(x_j) = g(h(x_j)).
  friend MonomialMatrix operator*(const MonomialMatrix& g, const MonomialMatrix& h) {
    if (g.n() != h.n()) throw InvalidParameters("monomial matrices of different rank");
    std::vector<std::size_t> p(g.n());
    Vec d(g.n(), Cyclo(g.field()));
    for (std::size_t j = 0; j < g.n(); ++j) {
      p[j] = g.perm_[h.perm_[j]];
      d[j] = h.d_[j] * g.d_[h.perm_[j]];
    }
    MonomialMatrix r;
    r.perm_ = std::move(p);
    r.d_ = std::move(d);
    return r;
  }

  MonomialMatrix inverse() const {
    MonomialMatrix r = *this;
    for (std::size_t j = 0; j < n(); ++j) {
      r.perm_[perm_[j]] = j;
      r.d_[perm_[j]] = d_[j].inverse();
    }
    return r;
  }

  Cyclo det() const {
    std::vector<bool> seen(n(), false);
    long sign = 1;
    for (std::size_t s = 0; s < n(); ++s) {
      if (seen[s]) continue;
      std::size_t len = 0;
      for (std::size_t k = s; !seen[k]; k = perm_[k]) {
        seen[k] = true;
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
    Cyclo r(field(), sign);
    for (const auto& x : d_) r = r * x;
    return r;
  }

  // Column j holds d_j in row perm[j].
  Matrix dense() const {
    Matrix m = zero_matrix(field(), n(), n());
    for (std::size_t j = 0; j < n(); ++j) m[perm_[j]][j] = d_[j];
    return m;
  }

  Vec apply(const Vec& v) const {
    Vec out(n(), Cyclo(field()));
    for (std::size_t j = 0; j < n(); ++j) out[perm_[j]] += d_[j] * v[j];
    return out;
  }

  friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) { return a.perm_ == b.perm_ && a.d_ == b.d_; }
  friend bool operator!=(const MonomialMatrix& a, const MonomialMatrix& b) { return !(a == b); }
  friend bool operator<(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.perm_ != b.perm_) return a.perm_ < b.perm_;
    for (std::size_t j = 0; j < a.d_.size(); ++j) {
      int c = compare(a.d_[j], b.d_[j]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  // Images of x1..xn, e.g. "[x2,-x1]".
  std::string str() const {
    std::string s = "[";
    for (std::size_t j = 0; j < n(); ++j) {
      if (j) s += ",";
      const Cyclo& c = d_[j];
      std::string x = "x" + std::to_string(perm_[j] + 1);
      if (c.is_one()) s += x;
      else if ((-c).is_one()) s += "-" + x;
      else s += "(" + c.str() + ")" + x;
    }
    return s + "]";
  }

 private:
  std::vector<std::size_t> perm_;
  Vec d_;
};

inline void check_index(std::size_t i, std::size_t n) {
  if (i >= n) throw BadIndices("index " + std::to_string(i + 1) + " out of range 1.." + std::to_string(n));
}

// t_i^(eps): x_i -> eps x_i.
inline MonomialMatrix make_t(std::size_t n, std::size_t i, const Cyclo& eps) {
  check_index(i, n);
  if (eps.is_zero()) throw InvalidParameters("t_i with zero scalar");
  Vec d(n, Cyclo(eps.field(), 1L));
  d[i] = eps;
  return MonomialMatrix::diagonal(d);
}

// sigma_ij^(eps): x_i -> eps x_j, x_j -> -eps^-1 x_i.
inline MonomialMatrix make_sigma(std::size_t n, std::size_t i, std::size_t j, const Cyclo& eps) {
  check_index(i, n);
  check_index(j, n);
  if (i == j) throw BadIndices("sigma_ij needs i != j");
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  p[i] = j;
  p[j] = i;
  Vec d(n, Cyclo(eps.field(), 1L));
  d[i] = eps;
  d[j] = -eps.inverse();
  return MonomialMatrix(p, d);
}

// s_ij^(eps) = (ij) t_i^(eps) t_j^(eps^-1): x_i -> eps x_j, x_j -> eps^-1 x_i.
inline MonomialMatrix make_srefl(std::size_t n, std::size_t i, std::size_t j, const Cyclo& eps) {
  check_index(i, n);
  check_index(j, n);
  if (i == j) throw BadIndices("s_ij needs i != j");
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  p[i] = j;
  p[j] = i;
  Vec d(n, Cyclo(eps.field(), 1L));
  d[i] = eps;
  d[j] = eps.inverse();
  return MonomialMatrix(p, d);
}

inline MonomialMatrix make_transposition(const FieldPtr& f, std::size_t n, std::size_t i, std::size_t j) {
  return make_srefl(n, i, j, Cyclo(f, 1L));
}

// Adjoint action on y_1..y_n: y_j -> d_j^-1 y_{perm[j]}.
inline MonomialMatrix act_on_dual(const MonomialMatrix& g) {
  Vec d = g.scalars();
  for (auto& x : d) x = x.inverse();
  return MonomialMatrix(g.perm(), d);
}

// Image of a normal-ordered monomial: the ordered product of d_j x_{perm[j]} powers.
inline std::pair<Monomial, Cyclo> act_on_monomial(const MonomialMatrix& g, const QMatrix& q, const Monomial& a) {
  const std::size_t n = g.n();
  Monomial acc(n, 0), step(n, 0);
  Cyclo coef(q.field(), 1L);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j] == 0) continue;
    std::fill(step.begin(), step.end(), 0);
    step[g.image_index(j)] = a[j];
    coef = coef * g.scalar(j).pow(a[j]) * q.product_factor(acc, step);
    acc[g.image_index(j)] += a[j];
  }
  return {acc, coef};
}

inline QPoly act_on_poly(const MonomialMatrix& g, const QPoly& p) {
  QPoly out(p.qmatrix());
  for (const auto& [m, c] : p.terms()) {
    auto [img, k] = act_on_monomial(g, *p.qmatrix(), m);
    out.add_term(img, k * c);
  }
  return out;
}

// (q_kl - q_ij) A_k^i A_l^j = 0 for all k,l,i,j, with A_k^i the (row k, column i) entry.
inline bool preserves_q(const Matrix& a, const QMatrix& q) {
  const std::size_t n = q.n();
  if (a.size() != n) throw InvalidParameters("preserves_q: rank mismatch");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (a[k][i].is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) {
          if (a[l][j].is_zero() || q(k, l) == q(i, j)) continue;
          return false;
        }
    }
  return true;
}

inline bool preserves_q(const MonomialMatrix& g, const QMatrix& q) { return preserves_q(g.dense(), q); }

class Group {
 public:
  static constexpr std::size_t kDefaultCap = 100000;

  Group() = default;

  // Breadth-first closure of the generators.
  Group(std::vector<MonomialMatrix> gens, std::size_t cap = kDefaultCap) : gens_(std::move(gens)) {
    if (gens_.empty()) throw InvalidParameters("group needs at least one generator");
    const std::size_t n = gens_[0].n();
    const int order = gens_[0].field()->order();
    for (const auto& g : gens_)
      if (g.n() != n || g.field()->order() != order) throw InvalidParameters("generators differ in rank or field");
    std::set<MonomialMatrix> seen;
    std::deque<MonomialMatrix> queue;
    auto id = MonomialMatrix::identity(gens_[0].field(), n);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
      MonomialMatrix e = std::move(queue.front());
      queue.pop_front();
      for (const auto& g : gens_) {
        MonomialMatrix h = g * e;
        if (seen.insert(h).second) {
          if (seen.size() > cap) throw CapExceeded("group closure exceeded cap of " + std::to_string(cap) + " elements");
          queue.push_back(std::move(h));
        }
      }
    }
    elems_.assign(seen.begin(), seen.end());
  }

  // Subgroup given by an explicit closed element list; a small generating set is chosen greedily.
  static Group from_elements(std::vector<MonomialMatrix> elems) {
    Group g;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    g.elems_ = std::move(elems);
    std::set<MonomialMatrix> span{MonomialMatrix::identity(g.elems_.at(0).field(), g.elems_[0].n())};
    for (const auto& e : g.elems_) {
      if (span.count(e)) continue;
      g.gens_.push_back(e);
      span = closure_set(g.gens_);
    }
    if (g.gens_.empty()) g.gens_.push_back(g.elems_[0]);
    return g;
  }

  std::size_t size() const { return elems_.size(); }
  std::size_t rank() const { return elems_.at(0).n(); }
  const FieldPtr& field() const { return elems_.at(0).field(); }
  const std::vector<MonomialMatrix>& elements() const { return elems_; }
  const std::vector<MonomialMatrix>& generators() const { return gens_; }

  bool contains(const MonomialMatrix& g) const { return std::binary_search(elems_.begin(), elems_.end(), g); }
  std::size_t index_of(const MonomialMatrix& g) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), g);
    if (it == elems_.end() || *it != g) throw NotInGroup("element " + g.str() + " is not in the group");
    return static_cast<std::size_t>(it - elems_.begin());
  }

 private:
  static std::set<MonomialMatrix> closure_set(const std::vector<MonomialMatrix>& gens) {
    Group g(gens);
    return std::set<MonomialMatrix>(g.elems_.begin(), g.elems_.end());
  }

  std::vector<MonomialMatrix> gens_;
  std::vector<MonomialMatrix> elems_;
};

inline Group generate_group(const std::vector<MonomialMatrix>& gens, std::size_t cap = Group::kDefaultCap) {
  return Group(gens, cap);
}

inline FieldPtr ambient_field(const FieldPtr& f, int m) {
  if (!f) return field_create(m);
  if (f->order() % m != 0)
    throw InvalidParameters("ambient field order " + std::to_string(f->order()) + " is not divisible by " +
                            std::to_string(m));
  return f;
}

// W_{C,C'} with |C| = m, |C'| = m'.
inline Group build_w_cc(int m, int mp, std::size_t n, std::size_t cap = Group::kDefaultCap, FieldPtr f = nullptr) {
  if (m <= 0 || m % 2 != 0) throw InvalidParameters("|C| must be even");
  if (mp <= 0 || m % mp != 0) throw InvalidParameters("|C'| must divide |C|");
  if (n == 0) throw InvalidParameters("rank must be positive");
  f = ambient_field(f, m);
  const long step = f->order() / m;
  std::vector<MonomialMatrix> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (long k = 0; k < m; ++k) gens.push_back(make_sigma(n, i, j, Cyclo::root(f, k * step)));
  for (std::size_t i = 0; i < n; ++i) gens.push_back(make_t(n, i, Cyclo::root(f, step * (m / mp))));
  return Group(gens, cap);
}

// G(m,p,n): monomial matrices with m-th root entries whose product is an (m/p)-th root of unity.
inline Group build_gmpn(int m, int p, std::size_t n, std::size_t cap = Group::kDefaultCap, FieldPtr f = nullptr) {
  if (m <= 0 || p <= 0 || m % p != 0) throw InvalidParameters("G(m,p,n) needs p | m");
  if (n == 0) throw InvalidParameters("rank must be positive");
  f = ambient_field(f, m);
  const long step = f->order() / m;
  Cyclo z = Cyclo::root(f, step);
  std::vector<MonomialMatrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(make_transposition(f, n, i, i + 1));
  gens.push_back(make_t(n, 0, z.pow(p)));
  if (n >= 2) {
    Vec d(n, Cyclo(f, 1L));
    d[0] = z;
    d[1] = z.inverse();
    gens.push_back(MonomialMatrix::diagonal(d));
  }
  return Group(gens, cap);
}

// Elements g of G(m,p,n) with det(g)^(m/2p) = 1; requires m/(2p) an odd integer.
inline Group build_gmpn_plus(int m, int p, std::size_t n, std::size_t cap = Group::kDefaultCap, FieldPtr f = nullptr) {
  if (p <= 0 || m % (2 * p) != 0 || (m / (2 * p)) % 2 == 0)
    throw InvalidParameters("G(m,p,n)_+ needs m/(2p) to be an odd integer");
  Group big = build_gmpn(m, p, n, cap, f);
  const long e = m / (2 * p);
  std::vector<MonomialMatrix> keep;
  for (const auto& g : big.elements())
    if (g.det().pow(e).is_one()) keep.push_back(g);
  return Group::from_elements(keep);
}

inline std::vector<MonomialMatrix> gamma_generators(const QMatrix& q) {
  std::vector<MonomialMatrix> out;
  for (std::size_t i = 0; i < q.n(); ++i) {
    Vec d(q.n(), Cyclo(q.field()));
    for (std::size_t j = 0; j < q.n(); ++j) d[j] = q(i, j);
    out.push_back(MonomialMatrix::diagonal(d));
  }
  return out;
}

inline Group gamma_group(const QMatrix& q, std::size_t cap = Group::kDefaultCap) { return Group(gamma_generators(q), cap); }

// g gamma_i g^-1 lies in Gamma_q for all i.
inline bool normalizes(const MonomialMatrix& g, const Group& gamma, const std::vector<MonomialMatrix>& gamma_gens) {
  MonomialMatrix gi = g.inverse();
  for (const auto& y : gamma_gens)
    if (!gamma.contains(g * y * gi)) return false;
  return true;
}

struct BlockStructure {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> negative;
  std::vector<std::vector<Cyclo>> pair_values;  // q_{B,C}; diagonal holds the block sign
  std::vector<MonomialMatrix> gamma;            // gamma_B
  std::vector<std::size_t> block_of;            // index -> block number
};

inline BlockStructure block_structure(const QMatrix& q) {
  const std::size_t n = q.n();
  const FieldPtr& f = q.field();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Cyclo one(f, 1L), minus(f, -1L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (q(i, j) != one && q(i, j) != minus) continue;
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k)
        if (k != i && k != j && q(i, k) != q(j, k)) same = false;
      if (same) parent[find(j)] = find(i);
    }
  BlockStructure bs;
  bs.block_of.assign(n, 0);
  std::vector<long> id(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (id[r] < 0) {
      id[r] = static_cast<long>(bs.blocks.size());
      bs.blocks.emplace_back();
    }
    bs.block_of[i] = static_cast<std::size_t>(id[r]);
    bs.blocks[static_cast<std::size_t>(id[r])].push_back(i);
  }
  const std::size_t nb = bs.blocks.size();
  bs.pair_values.assign(nb, std::vector<Cyclo>(nb, one));
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& B = bs.blocks[b];
    bool neg = B.size() > 1 && q(B[0], B[1]) == minus;
    bs.negative.push_back(neg);
    for (std::size_t c = 0; c < nb; ++c)
      bs.pair_values[b][c] = (b == c) ? (neg ? minus : one) : q(B[0], bs.blocks[c][0]);
  }
  for (std::size_t b = 0; b < nb; ++b) {
    Vec d(n, one);
    for (std::size_t j = 0; j < n; ++j) d[j] = bs.pair_values[b][bs.block_of[j]];
    bs.gamma.push_back(MonomialMatrix::diagonal(d));
  }
  return bs;
}

}  // namespace bcher
