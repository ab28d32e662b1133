#pragma once

// JSON reading and writing of scalars, q-matrices, monomial matrices and groups.
// A scalar is {"order": N, "coeffs": {"k": "p/q", ...}} for sum (p/q) zeta_N^k, or a plain "p/q" or integer.

#include <json.hpp>

#include <numeric>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "qpoly.hpp"
#include "wgroup.hpp"

namespace bcher {

using json = nlohmann::ordered_json;

// A node of a configuration document together with its JSON pointer, for error locations.
class Cfg {
 public:
  Cfg(const json& j, std::string path = "") : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }
  std::string where() const { return path_.empty() ? "/" : path_; }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Cfg at(const std::string& key) const {
    if (!j_->is_object()) throw ConfigError(where(), "expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) throw ConfigError(where(), "missing key '" + key + "'");
    return Cfg(*it, path_ + "/" + key);
  }
  Cfg at(std::size_t i) const {
    if (!j_->is_array()) throw ConfigError(where(), "expected an array");
    if (i >= j_->size()) throw ConfigError(where(), "index " + std::to_string(i) + " out of range");
    return Cfg((*j_)[i], path_ + "/" + std::to_string(i));
  }
  std::size_t size() const {
    if (!j_->is_array()) throw ConfigError(where(), "expected an array");
    return j_->size();
  }

  long as_int() const {
    if (!j_->is_number_integer()) throw ConfigError(where(), "expected an integer");
    return j_->get<long>();
  }
  bool as_bool() const {
    if (!j_->is_boolean()) throw ConfigError(where(), "expected true or false");
    return j_->get<bool>();
  }
  std::string as_string() const {
    if (!j_->is_string()) throw ConfigError(where(), "expected a string");
    return j_->get<std::string>();
  }

  long get_int(const std::string& key, long fallback) const { return has(key) ? at(key).as_int() : fallback; }
  bool get_bool(const std::string& key, bool fallback) const { return has(key) ? at(key).as_bool() : fallback; }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? at(key).as_string() : fallback;
  }

  // Positive integer key, with an upper bound guarding against runaway configurations.
  long positive(const std::string& key, long max = 1000000) const {
    long v = at(key).as_int();
    if (v <= 0 || v > max) throw ConfigError(at(key).where(), "expected an integer in 1.." + std::to_string(max));
    return v;
  }

 private:
  const json* j_;
  std::string path_;
};

inline json cyclo_to_json(const Cyclo& c) {
  json coeffs = json::object();
  const auto& v = c.coeffs();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) coeffs[std::to_string(k)] = v[k].get_str();
  return json{{"order", c.order()}, {"coeffs", coeffs}};
}

// Parses a scalar in its own field Q(zeta_N) (N = 1 for rationals).
inline Cyclo cyclo_from_json(const Cfg& c) {
  const json& j = c.raw();
  try {
    if (j.is_number_integer()) return Cyclo(field_create(1), Rational(j.get<long>()));
    if (j.is_string()) return Cyclo(field_create(1), parse_rational(j.get<std::string>()));
  } catch (const ParseError& e) {
    throw ConfigError(c.where(), e.what());
  }
  if (!j.is_object()) throw ConfigError(c.where(), "expected a cyclotomic literal");
  const long order = c.positive("order", 100000);
  FieldPtr f = field_create(static_cast<int>(order));
  Cyclo out(f);
  if (!c.has("coeffs")) return out;
  Cfg co = c.at("coeffs");
  if (!co.raw().is_object()) throw ConfigError(co.where(), "coeffs must be an object {\"k\": \"p/q\"}");
  for (const auto& [k, v] : co.raw().items()) {
    Cfg node = co.at(k);
    long e = 0;
    try {
      std::size_t used = 0;
      e = std::stol(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      throw ConfigError(node.where(), "exponent keys must be integers");
    }
    Rational r;
    try {
      r = v.is_number_integer() ? Rational(v.get<long>()) : parse_rational(node.as_string());
    } catch (const ParseError& err) {
      throw ConfigError(node.where(), err.what());
    }
    out += Cyclo::root(f, e).scaled(r);
  }
  return out;
}

inline Cyclo cyclo_from_json(const Cfg& c, const FieldPtr& f) {
  Cyclo v = cyclo_from_json(c);
  try {
    return promote(v, f);
  } catch (const NotASubfield& e) {
    throw ConfigError(c.where(), e.what());
  }
}

// Largest field any literal in the document needs: lcm of every "order", "m" and "orders" entry.
inline long declared_order(const json& j) {
  long l = 1;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if ((k == "order" || k == "m") && v.is_number_integer() && v.get<long>() > 0) l = std::lcm(l, v.get<long>());
      if (k == "orders" && v.is_array())
        for (const auto& o : v)
          if (o.is_number_integer() && o.get<long>() > 0) l = std::lcm(l, o.get<long>());
      l = std::lcm(l, declared_order(v));
    }
  } else if (j.is_array()) {
    for (const auto& v : j) l = std::lcm(l, declared_order(v));
  }
  return l;
}

// A q-matrix: 1 or -1 with "n" given separately, a square array of scalars, or {"order": N, "exponents": [[...]]}.
inline QMatrixPtr qmatrix_from_json(const Cfg& c, const FieldPtr& f, std::size_t n_hint = 0) {
  const json& j = c.raw();
  try {
    if (j.is_number_integer()) {
      if (n_hint == 0) throw ConfigError(c.where(), "a scalar q-matrix needs the rank \"n\"");
      if (j.get<long>() == 1) return QMatrix::ones(f, n_hint);
      if (j.get<long>() == -1) return QMatrix::minus_one(f, n_hint);
      throw ConfigError(c.where(), "a scalar q-matrix must be 1 or -1");
    }
    std::vector<std::vector<Cyclo>> e;
    if (j.is_object()) {
      const long order = c.positive("order", 100000);
      Cfg ex = c.at("exponents");
      for (std::size_t r = 0; r < ex.size(); ++r) {
        e.emplace_back();
        for (std::size_t s = 0; s < ex.at(r).size(); ++s)
          e.back().push_back(promote(Cyclo::root(field_create(static_cast<int>(order)), ex.at(r).at(s).as_int()), f));
      }
    } else {
      for (std::size_t r = 0; r < c.size(); ++r) {
        e.emplace_back();
        for (std::size_t s = 0; s < c.at(r).size(); ++s) e.back().push_back(cyclo_from_json(c.at(r).at(s), f));
      }
    }
    return QMatrix::create(e);
  } catch (const InvalidQMatrix& err) {
    throw ConfigError(c.where(), err.what());
  } catch (const NotASubfield& err) {
    throw ConfigError(c.where(), err.what());
  }
}

inline json qmatrix_to_json(const QMatrix& q) {
  json rows = json::array();
  for (std::size_t i = 0; i < q.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < q.n(); ++j) row.push_back(cyclo_to_json(q(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// {"perm": [images of x1..xn, 1-based], "scalars": [d_1..d_n]}: x_j -> d_j x_perm[j].
inline MonomialMatrix monomial_matrix_from_json(const Cfg& c, const FieldPtr& f) {
  Cfg p = c.at("perm"), s = c.at("scalars");
  if (p.size() != s.size() || p.size() == 0) throw ConfigError(c.where(), "perm and scalars differ in length");
  std::vector<std::size_t> perm;
  Vec d;
  for (std::size_t k = 0; k < p.size(); ++k) {
    long v = p.at(k).as_int();
    if (v < 1 || v > static_cast<long>(p.size())) throw ConfigError(p.at(k).where(), "image index out of range");
    perm.push_back(static_cast<std::size_t>(v - 1));
    d.push_back(cyclo_from_json(s.at(k), f));
  }
  try {
    return MonomialMatrix(perm, d);
  } catch (const InvalidParameters& e) {
    throw ConfigError(c.where(), e.what());
  }
}

inline json monomial_matrix_to_json(const MonomialMatrix& g) {
  json perm = json::array(), sc = json::array();
  for (std::size_t j = 0; j < g.n(); ++j) {
    perm.push_back(g.image_index(j) + 1);
    sc.push_back(cyclo_to_json(g.scalar(j)));
  }
  return json{{"perm", perm}, {"scalars", sc}};
}

inline std::size_t rank_from(const Cfg& c) { return static_cast<std::size_t>(c.positive("n", 64)); }

// {"family": "w_cc" (m, mp, n) | "gmpn" (m, p, n) | "gmpn_plus" (m, p, n) | "generators" (generators: [...])}.
inline Group group_from_json(const Cfg& c, const FieldPtr& f, std::size_t cap = Group::kDefaultCap) {
  const std::string fam = c.at("family").as_string();
  try {
    if (fam == "w_cc")
      return build_w_cc(static_cast<int>(c.positive("m", 1000)), static_cast<int>(c.positive("mp", 1000)), rank_from(c), cap, f);
    if (fam == "gmpn")
      return build_gmpn(static_cast<int>(c.positive("m", 1000)), static_cast<int>(c.positive("p", 1000)), rank_from(c), cap, f);
    if (fam == "gmpn_plus")
      return build_gmpn_plus(static_cast<int>(c.positive("m", 1000)), static_cast<int>(c.positive("p", 1000)), rank_from(c), cap, f);
    if (fam == "generators") {
      Cfg g = c.at("generators");
      std::vector<MonomialMatrix> gens;
      for (std::size_t k = 0; k < g.size(); ++k) gens.push_back(monomial_matrix_from_json(g.at(k), f));
      return Group(gens, cap);
    }
  } catch (const InvalidParameters& e) {
    throw ConfigError(c.where(), e.what());
  }
  throw ConfigError(c.at("family").where(), "unknown group family '" + fam + "'");
}

// [{"monomial": "x1^2*x3", "coeff": literal}, ...] in descending grlex order.
inline json poly_to_json(const QPoly& p) {
  json out = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    out.push_back(json{{"monomial", monomial_str(it->first)}, {"coeff", cyclo_to_json(it->second)}});
  return out;
}

}  // namespace bcher
