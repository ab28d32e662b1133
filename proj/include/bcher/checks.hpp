#pragma once

// Named verification checks driven by JSON configurations, and their reports.

#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cherednik.hpp"
#include "cyclotomic.hpp"
#include "doubles.hpp"
#include "dunkl.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "qpoly.hpp"
#include "wgroup.hpp"

#ifndef BCHER_VERSION
#define BCHER_VERSION "0.1.0"
#endif

namespace bcher {

inline const char* version() { return BCHER_VERSION; }

struct Report {
  std::string check;
  json params = json::object();
  std::string status = "error";  // pass | fail | error
  json counterexample;           // null unless failing
  json details = json::object();
  double duration_ms = 0;
  std::string version = BCHER_VERSION;

  bool passed() const { return status == "pass"; }
};

// Without timing the serialization depends only on the configuration, seed and version.
inline json report_to_json(const Report& r, bool timing = true) {
  json j{{"check", r.check}, {"params", r.params}, {"status", r.status}};
  if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
  if (!r.details.empty()) j["details"] = r.details;
  if (timing) j["duration_ms"] = r.duration_ms;
  j["version"] = r.version;
  return j;
}

inline Report report_from_json(const json& j) {
  Report r;
  r.check = j.at("check").get<std::string>();
  r.params = j.at("params");
  r.status = j.at("status").get<std::string>();
  if (j.contains("counterexample")) r.counterexample = j.at("counterexample");
  if (j.contains("details")) r.details = j.at("details");
  r.duration_ms = j.value("duration_ms", 0.0);
  r.version = j.at("version").get<std::string>();
  return r;
}

inline std::string report_text(const Report& r, bool timing = true) { return report_to_json(r, timing).dump(2) + "\n"; }

inline void emit_report(const Report& r, const std::string& path, bool timing = true) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path + " for writing");
  out << report_text(r, timing);
  if (!out) throw IOError("write to " + path + " failed");
}

namespace checks {

// A check fills status, counterexample and details.
using CheckFn = std::function<void(const Cfg&, Report&)>;

inline void pass(Report& r) { r.status = "pass"; }
inline void fail(Report& r, json counterexample) {
  r.status = "fail";
  r.counterexample = std::move(counterexample);
}

inline FieldPtr ambient(const Cfg& c, long minimum = 1) {
  long order = std::lcm(declared_order(c.raw()), minimum);
  if (c.has("field")) order = std::lcm(order, c.positive("field", 100000));
  return field_create(static_cast<int>(order));
}

inline int degree_bound(const Cfg& c, int fallback, int max = 12) {
  long d = c.get_int("D", fallback);
  if (d < 0 || d > max) throw ConfigError(c.path() + "/D", "degree bound must lie in 0.." + std::to_string(max));
  return static_cast<int>(d);
}

inline std::map<long, Cyclo> exponent_map(const Cfg& c, const FieldPtr& f) {
  std::map<long, Cyclo> out;
  if (!c.raw().is_object()) throw ConfigError(c.where(), "expected an object {\"k\": scalar}");
  for (const auto& [k, v] : c.raw().items()) {
    long e = 0;
    try {
      e = std::stol(k);
    } catch (const std::exception&) {
      throw ConfigError(c.path() + "/" + k, "keys must be integers");
    }
    out.emplace(e, cyclo_from_json(c.at(k), f));
  }
  return out;
}

inline NegativeParams negative_params(const Cfg& c, const FieldPtr& f) {
  NegativeParams p;
  p.m = static_cast<int>(c.positive("m", 1000));
  p.mp = static_cast<int>(c.positive(c.has("m'") ? "m'" : "mp", 1000));
  p.c1 = c.has("c1") ? cyclo_from_json(c.at("c1"), f) : Cyclo(f);
  if (c.has("c1_prime")) p.c1_prime = cyclo_from_json(c.at("c1_prime"), f);
  if (c.has("c")) p.c = exponent_map(c.at("c"), f);
  p.degenerate = c.get_bool("degenerate", false);
  return p;
}

inline AbelianParams abelian_params(const Cfg& c, const FieldPtr& f) {
  AbelianParams p;
  Cfg o = c.at("orders");
  for (std::size_t k = 0; k < o.size(); ++k) p.orders.push_back(static_cast<int>(o.at(k).as_int()));
  if (c.has("c")) {
    Cfg cc = c.at("c");
    for (std::size_t k = 0; k < cc.size(); ++k) p.c.push_back(exponent_map(cc.at(k), f));
  }
  p.degenerate = c.get_bool("degenerate", false);
  return p;
}

inline std::size_t q_rank(const Cfg& c) {
  if (c.has("n")) return static_cast<std::size_t>(c.positive("n", 64));
  const json& q = c.at("Q").raw();
  if (q.is_array()) return q.size();
  if (q.is_object() && q.contains("exponents") && q["exponents"].is_array()) return q["exponents"].size();
  throw ConfigError(c.where(), "missing key 'n'");
}

inline QMatrixPtr q_of(const Cfg& c, const FieldPtr& f) { return qmatrix_from_json(c.at("Q"), f, q_rank(c)); }

template <class F>
auto translate(const Cfg& c, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const InvalidParameters& e) {
    throw ConfigError(c.where(), e.what());
  } catch (const InvalidQMatrix& e) {
    throw ConfigError(c.where(), e.what());
  } catch (const NotASubfield& e) {
    throw ConfigError(c.where(), e.what());
  }
}

// {"family": "negative" | "rational_sn" | "abelian", ...}; "corrupt": true removes the last reflection term of
// y_1 x_1, which breaks equivariance.
inline Presentation presentation_from_json(const Cfg& c, const FieldPtr& f) {
  const std::string fam = c.at("family").as_string();
  Presentation P = translate(c, [&] {
    if (fam == "negative") return presentation_negative(negative_params(c, f), static_cast<std::size_t>(c.positive("n", 16)), f);
    if (fam == "rational_sn")
      return presentation_rational_sn(static_cast<std::size_t>(c.positive("n", 16)), SymmetricParams{cyclo_from_json(c.at("c"), f)}, f);
    if (fam == "abelian") return presentation_abelian(q_of(c, f), abelian_params(c, f));
    throw ConfigError(c.at("family").where(), "unknown presentation family '" + fam + "'");
  });
  if (c.get_bool("corrupt", false)) {
    auto& t = P.table[0][0];
    auto it = std::find_if(t.rbegin(), t.rend(), [](const auto& e) { return !e.first.is_identity(); });
    if (it == t.rend()) throw ConfigError(c.path() + "/corrupt", "the table has no reflection term to remove");
    t.erase(std::next(it).base());
    P.family = std::monostate{};
    P.name += "+corrupt";
  }
  return P;
}

inline json word_json(const Word& w) { return word_str(w); }

// ---------------------------------------------------------------------------------------------------------
// Dunkl operator checks

// Negative-family operators with a per-pair c_1 (row i, column j used in the operator of x_i).
inline std::vector<Operator> negative_per_pair(const NegativeParams& p, std::size_t n, int d, const FieldPtr& f,
                                               const std::vector<std::vector<Cyclo>>& c1) {
  auto q = QMatrix::minus_one(f, n);
  const long step_p = f->order() / p.mp;
  std::vector<Operator> out;
  for (std::size_t i = 0; i < n; ++i) {
    Operator op = p.degenerate ? Operator::zero(q, d, -1) : braided_partial(q, i, d);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && !c1[i][j].is_zero()) op = op_add(op, divided_difference_sigma(q, i, j, p.m, d), c1[i][j]);
    for (const auto& [k, ck] : p.c) {
      Cyclo e = Cyclo::root(f, k * step_p);
      op = op_add(op, divided_difference_t(q, i, e, d), ck / (Cyclo(f, 1L) - e));
    }
    out.push_back(std::move(op));
  }
  return out;
}

// Pairwise brackets A_i A_j - q_ij A_j A_i for i < j.
inline bool pairwise_brackets(const std::vector<Operator>& ops, const QMatrix& q, Report& r) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      Operator b = q_bracket(ops[i], ops[j], q(i, j), +1);
      if (auto m = b.first_nonzero()) {
        fail(r, json{{"pair", {i + 1, j + 1}}, {"monomial", monomial_str(*m)}, {"value", poly_to_json(b.image(*m))}});
        return false;
      }
    }
  return true;
}

inline void anticommute(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  NegativeParams p = negative_params(c, f);
  const std::size_t n = static_cast<std::size_t>(c.positive("n", 8));
  const int d = degree_bound(c, 4);
  std::vector<Operator> ops;
  try {
    if (c.has("pair_c1")) {
      std::vector<std::vector<Cyclo>> c1(n, std::vector<Cyclo>(n, promote(p.c1, f)));
      Cfg pc = c.at("pair_c1");
      for (std::size_t k = 0; k < pc.size(); ++k) {
        Cfg e = pc.at(k);
        long i = e.at(0).as_int(), j = e.at(1).as_int();
        if (i < 1 || j < 1 || i > static_cast<long>(n) || j > static_cast<long>(n) || i == j)
          throw ConfigError(e.where(), "pair indices must be distinct and in 1..n");
        c1[i - 1][j - 1] = cyclo_from_json(e.at(2), f);
      }
      translate(c, [&] { validate(p, n, f); });
      ops = negative_per_pair(p, n, d, f, c1);
    } else {
      ops = translate(c, [&] { return dunkl_negative(p, n, d, f); });
    }
  } catch (const NotDivisible& e) {
    fail(r, json{{"stage", "construction"}, {"remainder", poly_to_json(e.remainder)}});
    return;
  }
  r.details["operators_built_to_degree"] = d;
  if (pairwise_brackets(ops, *ops[0].qmatrix(), r)) pass(r);
}

inline Operator group_sum_operator(const QMatrixPtr& q, const GroupTerms& terms, int d) {
  Operator out = Operator::zero(q, d);
  for (const auto& [w, c] : terms) out = op_add(out, group_operator(q, w, d), c);
  return out;
}

// Abelian family: pairwise q-brackets and y_i x_j - q_ji x_j y_i = delta_ij (1 + sum c t_i); product family:
// pairwise brackets of the composite operators.
inline void qcommute(const Cfg& c, Report& r) {
  const std::string fam = c.get_string("family", "abelian");
  const int d = degree_bound(c, 4);
  if (fam == "abelian") {
    FieldPtr f = ambient(c);
    QMatrixPtr q = q_of(c, f);
    AbelianParams p = abelian_params(c, f);
    auto ops = translate(c, [&] { return dunkl_abelian(q, p, d); });
    Presentation P = translate(c, [&] { return presentation_abelian(q, p); });
    if (!pairwise_brackets(ops, *q, r)) return;
    for (std::size_t i = 0; i < q->n(); ++i)
      for (std::size_t j = 0; j < q->n(); ++j) {
        auto x = variable_operator(q, j, d);
        auto lhs = op_add(op_compose(ops[i], x), op_compose(x, ops[i]), -(*q)(j, i));
        auto rhs = group_sum_operator(q, P.table[i][j], d - 1);
        if (auto m = lhs.first_difference(rhs)) {
          fail(r, json{{"relation", "y" + std::to_string(i + 1) + " x" + std::to_string(j + 1)}, {"monomial", monomial_str(*m)}});
          return;
        }
      }
    pass(r);
    return;
  }
  if (fam != "product") throw ConfigError(c.path() + "/family", "expected 'abelian' or 'product'");
  FieldPtr f = ambient(c);
  std::vector<FactorSpec> factors;
  Cfg fs = c.at("factors");
  for (std::size_t k = 0; k < fs.size(); ++k) {
    Cfg e = fs.at(k);
    const std::string kind = e.at("family").as_string();
    const std::size_t n = static_cast<std::size_t>(e.positive("n", 16));
    if (kind == "symmetric") factors.push_back({SymmetricParams{cyclo_from_json(e.at("c"), f)}, n, nullptr});
    else if (kind == "negative") factors.push_back({negative_params(e, f), n, nullptr});
    else if (kind == "abelian") factors.push_back({abelian_params(e, f), n, q_of(e, f)});
    else throw ConfigError(e.at("family").where(), "unknown factor family '" + kind + "'");
  }
  std::vector<std::vector<Cyclo>> rr(factors.size(), std::vector<Cyclo>(factors.size(), Cyclo(f, 1L)));
  Cfg rc = c.at("r");
  for (std::size_t a = 0; a < rc.size() && a < rr.size(); ++a)
    for (std::size_t b = 0; b < rc.at(a).size() && b < rr.size(); ++b) rr[a][b] = cyclo_from_json(rc.at(a).at(b), f);
  ProductResult res = translate(c, [&] { return dunkl_product(factors, rr, d); });
  r.details["rank"] = res.q->n();
  if (pairwise_brackets(res.ops, *res.q, r)) pass(r);
}

inline void formula_equivalence(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  NegativeParams p = negative_params(c, f);
  const std::size_t n = static_cast<std::size_t>(c.positive("n", 8));
  const int d = degree_bound(c, 4);
  auto a = translate(c, [&] { return dunkl_negative(p, n, d, f); });
  auto b = translate(c, [&] { return dunkl_negative_via_Dij(p, n, d, f); });
  for (std::size_t i = 0; i < n; ++i)
    if (auto m = a[i].first_difference(b[i])) {
      fail(r, json{{"index", i + 1}, {"monomial", monomial_str(*m)}, {"formula", poly_to_json(a[i].image(*m))},
                   {"expansion", poly_to_json(b[i].image(*m))}});
      return;
    }
  pass(r);
}

// [gamma_i D_ij, x_k] and [gamma_i D_i^(e), x_l] as group-algebra operators.
inline void dij_identity(const Cfg& c, Report& r) {
  const int m = static_cast<int>(c.positive("m", 1000));
  if (m % 2) throw ConfigError(c.path() + "/m", "|C| must be even");
  FieldPtr f = ambient(c, m);
  const std::size_t n = static_cast<std::size_t>(c.positive("n", 8));
  if (n < 2) throw ConfigError(c.path() + "/n", "needs n >= 2");
  const int d = degree_bound(c, 3);
  auto q = QMatrix::minus_one(f, n);
  auto gammas = gamma_generators(*q);
  const Cyclo one(f, 1L);
  auto commutator = [&](const Operator& a, std::size_t k) {
    auto x = variable_operator(q, k, d + 1);
    return op_sub(op_compose(a, x), op_compose(x, a));
  };
  auto check = [&](const Operator& lhs, const Operator& rhs, const std::string& name) {
    if (auto mono = lhs.first_difference(rhs)) {
      fail(r, json{{"identity", name}, {"monomial", monomial_str(*mono)}});
      return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto g = op_compose(group_operator(q, gammas[i], d + 1), operator_Dij(q, i, j, d + 1));
      auto sp = gammas[i] * make_sigma(n, i, j, one), sm = gammas[i] * make_sigma(n, i, j, -one);
      const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      if (!check(commutator(g, i), group_sum_operator(q, {{sp, one}, {sm, one}}, d), "[g_i D_" + ij + ", x_" + std::to_string(i + 1) + "]"))
        return;
      if (!check(commutator(g, j), group_sum_operator(q, {{sp, one}, {sm, -one}}, d), "[g_i D_" + ij + ", x_" + std::to_string(j + 1) + "]"))
        return;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && !check(commutator(g, k), Operator::zero(q, d), "[g_i D_" + ij + ", x_" + std::to_string(k + 1) + "]"))
          return;
    }
  const long step = f->order() / m;
  for (long k = 1; k < m; ++k) {
    Cyclo e = Cyclo::root(f, k * step);
    for (std::size_t i = 0; i < n; ++i) {
      auto g = op_compose(group_operator(q, gammas[i], d + 1), divided_difference_t(q, i, e, d + 1));
      for (std::size_t l = 0; l < n; ++l) {
        auto want = l == i ? group_sum_operator(q, {{gammas[i] * make_t(n, i, e), one - e}}, d) : Operator::zero(q, d);
        if (!check(commutator(g, l), want,
                   "[g_i D_" + std::to_string(i + 1) + "^(z^" + std::to_string(k) + "), x_" + std::to_string(l + 1) + "]"))
          return;
      }
    }
  }
  pass(r);
}

// y_j x_i - q_ij x_i y_j = delta_ij and y_i y_j = q_ij y_j y_i for the braided partials; the Heisenberg
// double of V over Gamma_q reduces to the same relation.
inline void braided_weyl(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  QMatrixPtr q = q_of(c, f);
  const std::size_t n = q->n();
  const int d = degree_bound(c, 4);
  std::vector<Operator> ops;
  for (std::size_t i = 0; i < n; ++i) ops.push_back(braided_partial(q, i, d));
  if (!pairwise_brackets(ops, *q, r)) return;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      auto x = variable_operator(q, i, d);
      auto lhs = op_add(op_compose(ops[j], x), op_compose(x, ops[j]), -(*q)(i, j));
      auto rhs = i == j ? Operator::identity(q, d - 1) : Operator::zero(q, d - 1);
      if (auto m = lhs.first_difference(rhs)) {
        fail(r, json{{"relation", "d" + std::to_string(j + 1) + " x" + std::to_string(i + 1)}, {"monomial", monomial_str(*m)}});
        return;
      }
    }
  CommutatorMap red = translate(c, [&] { return braided_reduce(heisenberg_beta(vector_yd(*q, gamma_group(*q))), *q); });
  CommutatorMap weyl(f, n);
  weyl.add(MonomialMatrix::identity(f, n), identity_matrix(f, n));
  if (!(red == weyl)) {
    fail(r, json{{"relation", "braided reduction of the Heisenberg double"}});
    return;
  }
  pass(r);
}

// ---------------------------------------------------------------------------------------------------------
// Algebra checks

inline void pbw(const Cfg& c, Report& r) {
  Cfg pc = c.at("presentation");
  FieldPtr f = ambient(pc);
  Presentation P = presentation_from_json(pc, f);
  const long trials = c.get_int("trials", 200), len = c.get_int("max_len", 6), seed = c.get_int("seed", 1);
  if (trials <= 0 || trials > 100000 || len <= 0 || len > 12) throw ConfigError(c.where(), "trials or max_len out of range");
  auto rep = pbw_consistency(P, static_cast<std::size_t>(trials), static_cast<std::size_t>(len), static_cast<std::uint64_t>(seed));
  r.details["presentation"] = P.name;
  r.details["group_order"] = P.w.size();
  r.details["trials"] = rep.trials;
  r.details["agreed"] = rep.agreed;
  if (rep.consistent()) {
    pass(r);
    return;
  }
  fail(r, json{{"word", word_json(*rep.counterexample)}, {"leftmost", rep.leftmost->str()}, {"rightmost", rep.rightmost->str()}});
}

inline void verma(const Cfg& c, Report& r) {
  Cfg pc = c.at("presentation");
  FieldPtr f = ambient(pc);
  Presentation P = presentation_from_json(pc, f);
  const int d = degree_bound(c, 4);
  r.details["presentation"] = P.name;
  r.details["relations"] = defining_relations(P).size();
  auto failure = translate(c, [&] { return verma_relation_check(P, d); });
  if (!failure) {
    pass(r);
    return;
  }
  fail(r, json{{"relation", failure->relation}, {"monomial", monomial_str(failure->monomial)}, {"value", poly_to_json(failure->value)}});
}

// ---------------------------------------------------------------------------------------------------------
// Commutator map checks

struct BetaData {
  CommutatorMap beta;
  Group group;
  QMatrixPtr q;
};

// {"kind": "cherednik_sn" (n, c, degenerate) | "heisenberg" (Q) | "zero" (n) | "presentation" (presentation, lifted
// over W Gamma_q) | "explicit" (group, entries [{w, L}], optional Q)}.
inline BetaData beta_from_json(const Cfg& c, const FieldPtr& f) {
  const std::string kind = c.at("kind").as_string();
  if (kind == "cherednik_sn") {
    const std::size_t n = static_cast<std::size_t>(c.positive("n", 8));
    if (n < 2) throw ConfigError(c.path() + "/n", "needs n >= 2");
    const Cyclo cc = cyclo_from_json(c.at("c"), f);
    std::vector<MonomialMatrix> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(make_transposition(f, n, i, i + 1));
    BetaData b{CommutatorMap(f, n), Group(gens), QMatrix::ones(f, n)};
    if (!c.get_bool("degenerate", false)) b.beta.add(MonomialMatrix::identity(f, n), identity_matrix(f, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec a(n, Cyclo(f));
        a[i] = Cyclo(f, 1L);
        a[j] = Cyclo(f, -1L);
        b.beta.add(make_transposition(f, n, i, j), mat_scale(detail::outer(a, a), cc));
      }
    return b;
  }
  if (kind == "heisenberg") {
    QMatrixPtr q = q_of(c, f);
    Group g = gamma_group(*q);
    return {heisenberg_beta(vector_yd(*q, g)), g, q};
  }
  if (kind == "zero") {
    const std::size_t n = static_cast<std::size_t>(c.positive("n", 8));
    return {CommutatorMap(f, n), Group({MonomialMatrix::identity(f, n)}), QMatrix::ones(f, n)};
  }
  if (kind == "presentation") {
    Presentation P = presentation_from_json(c.at("presentation"), f);
    return {lifted_commutator(P), lifted_group(P), P.q};
  }
  if (kind == "explicit") {
    Group g = group_from_json(c.at("group"), f);
    const std::size_t n = g.rank();
    BetaData b{CommutatorMap(f, n), g, c.has("Q") ? qmatrix_from_json(c.at("Q"), f, n) : QMatrix::ones(f, n)};
    Cfg es = c.at("entries");
    for (std::size_t k = 0; k < es.size(); ++k) {
      Cfg e = es.at(k);
      MonomialMatrix w = monomial_matrix_from_json(e.at("w"), f);
      if (w.n() != n) throw ConfigError(e.at("w").where(), "rank differs from the group");
      Matrix l;
      Cfg lc = e.at("L");
      for (std::size_t a = 0; a < lc.size(); ++a) {
        l.emplace_back();
        for (std::size_t t = 0; t < lc.at(a).size(); ++t) l.back().push_back(cyclo_from_json(lc.at(a).at(t), f));
      }
      translate(e, [&] { b.beta.add(w, l); });
    }
    return b;
  }
  throw ConfigError(c.at("kind").where(), "unknown commutator kind '" + kind + "'");
}

inline json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(cyclo_to_json(x));
  return out;
}

// First generator g and support element w with L_{g w g^-1} != g L_w g^-1.
inline std::optional<json> equivariance_witness(const CommutatorMap& beta, const Group& g) {
  for (const auto& h : g.generators()) {
    const MonomialMatrix hi = h.inverse();
    for (const auto& [w, l] : beta.entries())
      if (beta.at(h * w * hi) != mat_mul(mat_mul(h.dense(), l), hi.dense()))
        return json{{"generator", monomial_matrix_to_json(h)}, {"w", monomial_matrix_to_json(w)}};
  }
  return std::nullopt;
}

inline void rmax(const Cfg& c, Report& r) {
  Cfg bc = c.at("beta");
  FieldPtr f = ambient(c);
  BetaData b = beta_from_json(bc, f);
  const std::size_t n = b.beta.dim();
  const std::string side = c.get_string("side", "minus");
  if (side != "minus" && side != "plus") throw ConfigError(c.path() + "/side", "expected 'minus' or 'plus'");
  const Side s = side == "minus" ? Side::V : Side::Dual;
  if (auto w = equivariance_witness(b.beta, b.group)) {
    fail(r, json{{"reason", "commutator map is not equivariant"}, {"witness", *w}});
    return;
  }
  MaxRelations m = r_max(b.beta, b.group);
  const RelationSpace& got = side == "minus" ? m.minus : m.plus;
  const std::string expect = c.get_string("expect", "wedge_q");
  RelationSpace want(s, n, f, {});
  if (expect == "wedge_q") want = wedge_q(*b.q, s);
  else if (expect == "wedge") want = wedge_q(*QMatrix::ones(f, n), s);
  else if (expect == "full") want = whole_space(s, n, f);
  else if (expect != "zero") throw ConfigError(c.path() + "/expect", "expected wedge_q, wedge, full or zero");
  r.details["dimension"] = got.dim();
  r.details["expected_dimension"] = want.dim();
  if (got == want) {
    pass(r);
    return;
  }
  json ce{{"dimension", got.dim()}, {"expected_dimension", want.dim()}};
  for (const auto& v : want.basis)
    if (!got.contains(v)) {
      ce["missing"] = vec_json(v);
      break;
    }
  for (const auto& v : got.basis)
    if (!want.contains(v)) {
      ce["extra"] = vec_json(v);
      break;
    }
  fail(r, ce);
}

inline void equivariance(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  BetaData b = beta_from_json(c.at("beta"), f);
  r.details["group_order"] = b.group.size();
  r.details["support"] = b.beta.entries().size();
  if (auto w = equivariance_witness(b.beta, b.group)) fail(r, *w);
  else pass(r);
}

inline void qcommutativity(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  BetaData b = beta_from_json(c.at("beta"), f);
  QMatrixPtr q = c.has("Q") ? qmatrix_from_json(c.at("Q"), f, b.beta.dim()) : b.q;
  std::string why;
  if (translate(c, [&] { return check_q_commutativity(b.beta, *q, &why); })) pass(r);
  else fail(r, json{{"reason", why}});
}

inline void reduction(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  NegativeParams p = negative_params(c, f);
  const std::size_t n = static_cast<std::size_t>(c.positive("n", 8));
  CommutatorMap form = translate(c, [&] { return minus_id_commutator(p, n, f); });
  auto q = QMatrix::minus_one(f, n);
  CommutatorMap red = translate(c, [&] { return braided_reduce(form, *q); });
  NegativeParams flipped = p;
  flipped.c1 = -promote(p.c1, f);
  Presentation same = translate(c, [&] { return presentation_negative(p, n, f); });
  Presentation target = translate(c, [&] { return presentation_negative(flipped, n, f); });
  r.details["matches_table_at_minus_c1"] = red == table_map(target);
  r.details["matches_table_at_c1"] = red == table_map(same);
  r.details["reduced_equivariant"] = check_equivariance(red, target.w);
  if (red == table_map(target) && check_equivariance(red, target.w)) {
    pass(r);
    return;
  }
  json ce = json::array();
  CommutatorMap want = table_map(target);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      auto a = red.value(j, i), b = want.value(j, i);
      if (a != b) ce.push_back(json{{"j", j + 1}, {"i", i + 1}});
    }
  fail(r, json{{"differing_entries", ce}});
}

// ---------------------------------------------------------------------------------------------------------
// Groups, blocks, relation algebras, embeddings

inline json blocks_json(const BlockStructure& bs) {
  json blocks = json::array(), neg = json::array();
  for (std::size_t b = 0; b < bs.blocks.size(); ++b) {
    json blk = json::array();
    for (auto k : bs.blocks[b]) blk.push_back(k + 1);
    blocks.push_back(blk);
    neg.push_back(static_cast<bool>(bs.negative[b]));
  }
  return json{{"blocks", blocks}, {"negative", neg}};
}

inline void blocks(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  QMatrixPtr q = q_of(c, f);
  json got = blocks_json(block_structure(*q));
  r.details = got;
  if (c.has("expect") && c.at("expect").raw() != got) fail(r, json{{"expected", c.at("expect").raw()}, {"actual", got}});
  else pass(r);
}

inline void nq_membership(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  if (c.has("matrix")) {
    Cfg mc = c.at("matrix");
    Matrix a;
    for (std::size_t i = 0; i < mc.size(); ++i) {
      a.emplace_back();
      for (std::size_t j = 0; j < mc.at(i).size(); ++j) a.back().push_back(cyclo_from_json(mc.at(i).at(j), f));
    }
    QMatrixPtr q = qmatrix_from_json(c.at("Q"), f, a.size());
    if (a.size() != q->n()) throw ConfigError(mc.where(), "matrix and q-matrix differ in rank");
    if (preserves_q(a, *q)) pass(r);
    else fail(r, json{{"matrix", "does not preserve the q-relations"}});
    return;
  }
  Group g = group_from_json(c.at("group"), f);
  QMatrixPtr q = qmatrix_from_json(c.at("Q"), f, g.rank());
  if (g.rank() != q->n()) throw ConfigError(c.where(), "group and q-matrix differ in rank");
  r.details["generators"] = g.generators().size();
  for (const auto& w : g.generators())
    if (!preserves_q(w, *q)) {
      fail(r, json{{"generator", monomial_matrix_to_json(w)}});
      return;
    }
  pass(r);
}

inline void group_check(const Cfg& c, Report& r) {
  FieldPtr f = ambient(c);
  const std::size_t cap = static_cast<std::size_t>(c.get_int("cap", Group::kDefaultCap));
  Group g = translate(c, [&] { return group_from_json(c.at("group"), f, cap); });
  r.details["order"] = g.size();
  json ce = json::object();
  if (c.has("expect_order") && static_cast<std::size_t>(c.at("expect_order").as_int()) != g.size()) {
    ce["order"] = g.size();
    ce["expected_order"] = c.at("expect_order").as_int();
  }
  if (c.has("equals")) {
    Group h = translate(c, [&] { return group_from_json(c.at("equals"), f, cap); });
    r.details["equals_order"] = h.size();
    if (g.elements() != h.elements()) {
      for (const auto& e : g.elements())
        if (!h.contains(e)) {
          ce["only_in_group"] = monomial_matrix_to_json(e);
          break;
        }
      for (const auto& e : h.elements())
        if (!g.contains(e)) {
          ce["only_in_equals"] = monomial_matrix_to_json(e);
          break;
        }
      if (ce.empty()) ce["element_sets"] = "differ";
    }
  }
  if (ce.empty()) pass(r);
  else fail(r, ce);
}

// Hilbert function of the quadratic algebra T(V)/(wedge_q) against binomial(n+d-1, d).
inline void hilbert(const Cfg& c, Report& r) {
  const int dmax = static_cast<int>(c.get_int("d_max", 5));
  if (dmax < 0 || dmax > 6) throw ConfigError(c.path() + "/d_max", "expected 0..6");
  std::vector<QMatrixPtr> qs;
  if (c.has("random")) {
    const long count = c.positive("random", 100);
    const long nmin = c.get_int("n_min", 1), nmax = c.get_int("n_max", 3), omax = c.get_int("order_max", 6);
    if (nmin < 1 || nmax < nmin || nmax > 4 || omax < 1 || omax > 12) throw ConfigError(c.where(), "n_min, n_max or order_max out of range");
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.get_int("seed", 1)));
    for (long t = 0; t < count; ++t) {
      const std::size_t n = static_cast<std::size_t>(nmin) + rng() % static_cast<std::size_t>(nmax - nmin + 1);
      std::vector<std::vector<std::pair<long, long>>> e(n, std::vector<std::pair<long, long>>(n, {1, 0}));
      long order = 1;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          long o = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(omax)), k = static_cast<long>(rng() % static_cast<std::uint64_t>(o));
          e[i][j] = {o, k};
          e[j][i] = {o, o - k};
          order = std::lcm(order, o);
        }
      FieldPtr f = field_create(static_cast<int>(order));
      std::vector<std::vector<Cyclo>> m(n, std::vector<Cyclo>(n, Cyclo(f, 1L)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) m[i][j] = Cyclo::root(f, e[i][j].second * (order / e[i][j].first));
      qs.push_back(QMatrix::create(m));
    }
  } else {
    qs.push_back(q_of(c, ambient(c)));
  }
  json dims = json::array();
  for (const auto& q : qs) {
    const std::size_t n = q->n();
    auto got = quad_algebra_dims(wedge_q(*q, Side::V), dmax);
    dims.push_back(got);
    for (int d = 0; d <= dmax; ++d) {
      mpz_class want;
      mpz_bin_uiui(want.get_mpz_t(), n + d - 1, static_cast<unsigned long>(d));
      if (d == 0) want = 1;
      if (got[static_cast<std::size_t>(d)] != want.get_ui()) {
        fail(r, json{{"Q", qmatrix_to_json(*q)}, {"degree", d}, {"dimension", got[static_cast<std::size_t>(d)]},
                     {"expected", want.get_ui()}});
        r.details["dimensions"] = dims;
        return;
      }
    }
  }
  r.details["dimensions"] = dims;
  pass(r);
}

struct EmbeddingData {
  CommutatorMap beta, gamma;
  QReflections qr;
  std::size_t n;
};

inline EmbeddingData embedding_data(const QReflections& qr, std::size_t n, const FieldPtr& f) {
  return {reflection_beta(n, f, qr.roots, true), reflection_beta(n, f, qr.roots), qr, n};
}

// {"data": "s2" (c; S_2 on its reflection line) | "b2plus" (c1; B_2^+ with Gamma and -id, c = c1 on the sigma
// class and 1/2 on the t class) | "generic" (group, Q, c: [{w, c}] or all: scalar)}.
inline void embedding(const Cfg& c, Report& r) {
  const std::string data = c.at("data").as_string();
  std::optional<EmbeddingData> e;
  if (data == "s2") {
    FieldPtr f = ambient(c);
    MonomialMatrix s = make_t(1, 0, Cyclo(f, -1L));
    Group w({s});
    auto qr = translate(c, [&] { return build_q_reflections(w, *QMatrix::ones(f, 1), {{s, cyclo_from_json(c.at("c"), f)}}); });
    e = embedding_data(qr, 1, f);
  } else if (data == "b2plus") {
    FieldPtr f = ambient(c, 4);
    auto q = QMatrix::minus_one(f, 2);
    auto gens = build_w_cc(2, 1, 2, Group::kDefaultCap, f).generators();
    for (const auto& g : gamma_generators(*q)) gens.push_back(g);
    gens.push_back(MonomialMatrix::diagonal(Vec(2, Cyclo(f, -1L))));
    Group wt(gens);
    const Cyclo c1 = cyclo_from_json(c.at("c1"), f);
    std::vector<std::pair<MonomialMatrix, Cyclo>> cs;
    for (const auto& rd : build_q_reflections(wt, *q, {}).roots)
      cs.emplace_back(rd.label, rd.label.is_diagonal() ? Cyclo(f, Rational(1, 2)) : c1);
    auto qr = build_q_reflections(wt, *q, cs);
    e = embedding_data(qr, 2, f);
    // the lifted braided Cherednik commutator of B_2^+ with parameter c1
    NegativeParams p;
    p.m = 2;
    p.mp = 1;
    p.c1 = c1;
    r.details["equals_lifted_cherednik"] = lifted_commutator(presentation_negative(p, 2, f)) == e->gamma;
  } else if (data == "generic") {
    FieldPtr f = ambient(c);
    Group wt = group_from_json(c.at("group"), f);
    QMatrixPtr q = qmatrix_from_json(c.at("Q"), f, wt.rank());
    std::vector<std::pair<MonomialMatrix, Cyclo>> cs;
    if (c.has("all")) {
      Cyclo v = cyclo_from_json(c.at("all"), f);
      for (const auto& rd : translate(c, [&] { return build_q_reflections(wt, *q, {}); }).roots) cs.emplace_back(rd.label, v);
    } else {
      Cfg cc = c.at("c");
      for (std::size_t k = 0; k < cc.size(); ++k)
        cs.emplace_back(monomial_matrix_from_json(cc.at(k).at("w"), f), cyclo_from_json(cc.at(k).at("c"), f));
    }
    auto qr = translate(c, [&] { return build_q_reflections(wt, *q, cs); });
    e = embedding_data(qr, wt.rank(), f);
  } else {
    throw ConfigError(c.at("data").where(), "expected s2, b2plus or generic");
  }
  EmbeddingReport rep = embedding_report(e->beta, e->gamma, e->qr.mu, e->qr.nu, e->qr.module);
  const bool span = roots_span(e->qr.roots, e->n);
  r.details["q_reflections"] = e->qr.roots.size();
  r.details["product"] = rep.product;
  r.details["minus"] = rep.minus;
  r.details["plus"] = rep.plus;
  r.details["roots_span"] = span;
  if (rep.all() && span) pass(r);
  else fail(r, json{{"product", rep.product}, {"minus", rep.minus}, {"plus", rep.plus}, {"roots_span", span}});
}

inline const std::map<std::string, CheckFn>& registry() {
  static const std::map<std::string, CheckFn> table{
      {"anticommute", anticommute},
      {"qcommute", qcommute},
      {"pbw", pbw},
      {"verma", verma},
      {"formula-equivalence", formula_equivalence},
      {"dij-identity", dij_identity},
      {"rmax", rmax},
      {"equivariance", equivariance},
      {"qcommutativity", qcommutativity},
      {"blocks", blocks},
      {"nq-membership", nq_membership},
      {"embedding", embedding},
      {"hilbert", hilbert},
      {"braided-weyl", braided_weyl},
      {"reduction", reduction},
      {"group", group_check},
  };
  return table;
}

}  // namespace checks

inline std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : checks::registry()) out.push_back(k);
  return out;
}

// Runs the check named by config["check"]. Invalid configurations raise ConfigError; library errors during the
// computation give status "error" with the message in details.
inline Report run_check(const json& config) {
  Cfg c(config);
  Report r;
  r.check = c.at("check").as_string();
  r.params = config;
  auto it = checks::registry().find(r.check);
  if (it == checks::registry().end()) throw ConfigError("/check", "unknown check '" + r.check + "'");
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(c, r);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.status = "error";
    r.counterexample = nullptr;
    r.details["error"] = e.what();
  }
  r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace bcher
