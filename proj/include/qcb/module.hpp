// Concrete U_q-modules: weight-graded bases with sparse generator
// actions, builders for the A_n fundamentals and the two G2 fundamental
// fixtures, JSON module files, tensor products under the comultiplication
// Delta(F) = F x 1 + K x F, Delta(E) = E x K^-1 + 1 x E, divided powers,
// defining-relation verification, and a generic-evaluation rank oracle
// for weight multiplicities.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcb/laurent.hpp"
#include "qcb/root_data.hpp"

namespace qcb {

struct RelationViolationError : std::runtime_error {
  explicit RelationViolationError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse action table: act[col] = list of (row, coeff), meaning
// generator . basis[col] = sum coeff * basis[row].
using SparseAction = std::map<int, std::vector<std::pair<int, LaurentPoly>>>;

struct ModuleRep {
  CartanDatum datum;
  Weight highest;
  std::vector<std::string> labels;
  std::vector<Weight> weights;       // index 0 is the highest-weight vector
  std::vector<SparseAction> f_act;   // one per simple root
  std::vector<SparseAction> e_act;

  int dim() const { return static_cast<int>(weights.size()); }

  // lambda - mu in root coordinates; throws if the basis weight is not
  // below the highest weight.
  RootVector depth(int idx) const {
    auto nu = datum.weight_to_root(CartanDatum::sub(highest, weights[idx]));
    if (!nu) throw std::logic_error("basis weight not in highest + root lattice");
    return *nu;
  }
};

// Module vectors as sparse coordinate maps, for relation checking.
using ModVec = std::map<int, LaurentPoly>;

namespace detail {

inline void mv_add(ModVec& v, int idx, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

}  // namespace detail

enum class Gen { E, F, K };

inline ModVec module_act(const ModuleRep& m, Gen g, int i, const ModVec& v) {
  ModVec out;
  if (g == Gen::K) {
    for (const auto& [idx, c] : v) {
      const int exp = m.datum.d(i) * m.weights[idx].coords[i - 1];
      detail::mv_add(out, idx, c * LaurentPoly::q_power(exp));
    }
    return out;
  }
  const auto& table = (g == Gen::F ? m.f_act : m.e_act)[i - 1];
  for (const auto& [idx, c] : v) {
    auto it = table.find(idx);
    if (it == table.end()) continue;
    for (const auto& [row, coeff] : it->second) detail::mv_add(out, row, c * coeff);
  }
  return out;
}

struct RelationReport {
  bool ok = true;
  std::string failure;
};

// Checks, on every basis vector: the weight step of each E/F entry (the
// executable form of the K-conjugation relations), the E-F commutator,
// and both quantum Serre relations.
inline RelationReport verify_module_relations(const ModuleRep& m) {
  const CartanDatum& cd = m.datum;
  const int rank = cd.rank();
  auto fail = [](std::string what) { return RelationReport{false, std::move(what)}; };

  for (int i = 1; i <= rank; ++i) {
    const Weight alpha = cd.simple_root(i);
    for (const auto& [col, entries] : m.f_act[i - 1])
      for (const auto& [row, c] : entries) {
        if (c.is_zero()) return fail("stored zero coefficient in F" + std::to_string(i));
        if (m.weights[row] != CartanDatum::sub(m.weights[col], alpha))
          return fail("F" + std::to_string(i) + " does not lower weight by alpha_" + std::to_string(i));
      }
    for (const auto& [col, entries] : m.e_act[i - 1])
      for (const auto& [row, c] : entries) {
        if (c.is_zero()) return fail("stored zero coefficient in E" + std::to_string(i));
        if (m.weights[row] != CartanDatum::add(m.weights[col], alpha))
          return fail("E" + std::to_string(i) + " does not raise weight by alpha_" + std::to_string(i));
      }
  }

  for (int col = 0; col < m.dim(); ++col) {
    ModVec v;
    v[col] = LaurentPoly::one();
    for (int i = 1; i <= rank; ++i) {
      for (int j = 1; j <= rank; ++j) {
        ModVec lhs = module_act(m, Gen::E, i, module_act(m, Gen::F, j, v));
        ModVec rhs = module_act(m, Gen::F, j, module_act(m, Gen::E, i, v));
        if (i == j) {
          const int mi = m.weights[col].coords[i - 1];
          const LaurentPoly h = mi >= 0 ? q_int(mi, cd.d(i)) : -q_int(-mi, cd.d(i));
          detail::mv_add(rhs, col, h);
        }
        if (lhs != rhs)
          return fail("commutator [E" + std::to_string(i) + ",F" + std::to_string(j) +
                      "] fails on " + m.labels[col]);
      }
    }
    for (int i = 1; i <= rank; ++i)
      for (int j = 1; j <= rank; ++j) {
        if (i == j) continue;
        const int N = 1 - cd.cartan(i, j);
        for (Gen g : {Gen::F, Gen::E}) {
          ModVec acc;
          for (int k = 0; k <= N; ++k) {
            ModVec t = v;
            for (int r = 0; r < k; ++r) t = module_act(m, g, i, t);
            t = module_act(m, g, j, t);
            for (int r = 0; r < N - k; ++r) t = module_act(m, g, i, t);
            LaurentPoly coef = q_binomial(N, k, cd.d(i));
            if (k % 2) coef = -coef;
            for (const auto& [idx, c] : t) detail::mv_add(acc, idx, c * coef);
          }
          if (!acc.empty())
            return fail(std::string("Serre relation (") + (g == Gen::F ? "F" : "E") + "," +
                        std::to_string(i) + "," + std::to_string(j) + ") fails on " + m.labels[col]);
        }
      }
  }
  return {};
}

// V(lambda_k) for A_n: basis of strictly increasing k-subsets of
// {1..n+1}, ordered by (height, subset lex); F_i replaces i by i+1.
inline ModuleRep build_A_fundamental(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("build_A_fundamental: k out of range");
  const CartanDatum cd = CartanDatum::from_type("A" + std::to_string(n));

  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int v = next; v <= n + 1; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);

  auto weight_of = [&](const std::vector<int>& s) {
    Weight w = cd.zero_weight();
    std::set<int> in(s.begin(), s.end());
    for (int i = 1; i <= n; ++i) {
      if (in.count(i) && !in.count(i + 1)) w.coords[i - 1] = 1;
      else if (!in.count(i) && in.count(i + 1)) w.coords[i - 1] = -1;
    }
    return w;
  };

  const Weight top = cd.fundamental_weight(k);
  auto height_of = [&](const std::vector<int>& s) {
    auto nu = cd.weight_to_root(CartanDatum::sub(top, weight_of(s)));
    if (!nu) throw std::logic_error("A fundamental: weight outside root lattice");
    return nu->height();
  };
  std::stable_sort(subsets.begin(), subsets.end(),
                   [&](const auto& a, const auto& b) {
                     const int ha = height_of(a), hb = height_of(b);
                     if (ha != hb) return ha < hb;
                     return a < b;
                   });

  ModuleRep m;
  m.datum = cd;
  m.highest = top;
  std::map<std::vector<int>, int> pos;
  for (const auto& s : subsets) {
    pos[s] = static_cast<int>(m.weights.size());
    m.weights.push_back(weight_of(s));
    std::string label = "v(";
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (t) label += ",";
      label += std::to_string(s[t]);
    }
    m.labels.push_back(label + ")");
  }
  m.f_act.assign(n, {});
  m.e_act.assign(n, {});
  for (const auto& s : subsets) {
    std::set<int> in(s.begin(), s.end());
    for (int i = 1; i <= n; ++i) {
      if (in.count(i) && !in.count(i + 1)) {
        std::vector<int> t;
        for (int v : s) t.push_back(v == i ? i + 1 : v);
        std::sort(t.begin(), t.end());
        m.f_act[i - 1][pos[s]].emplace_back(pos[t], LaurentPoly::one());
        m.e_act[i - 1][pos[t]].emplace_back(pos[s], LaurentPoly::one());
      }
    }
  }
  return m;
}

// The two G2 fundamental modules with their canonical bases, embedded as
// fixtures: the 7-dimensional V(lambda_1) and the 14-dimensional
// V(lambda_2). Actions are derived from the sl2-string structure of the
// canonical basis and validated against the defining relations on
// construction.
inline ModuleRep g2_fundamental(int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("g2_fundamental: k must be 1 or 2");
  const CartanDatum cd = CartanDatum::from_type("G2");
  const LaurentPoly one = LaurentPoly::one();
  const LaurentPoly two1 = q_int(2, 1);    // q + q^-1
  const LaurentPoly three1 = q_int(3, 1);  // q^2 + 1 + q^-2
  const LaurentPoly two2 = q_int(2, 3);    // q^3 + q^-3

  ModuleRep m;
  m.datum = cd;
  auto set_weights = [&](std::vector<std::vector<int>> ws, const std::string& prefix) {
    for (std::size_t t = 0; t < ws.size(); ++t) {
      m.weights.push_back(Weight{ws[t]});
      m.labels.push_back(prefix + std::to_string(t + 1));
    }
  };
  auto entry = [&](std::vector<SparseAction>& act, int i, int col, int row,
                   const LaurentPoly& c) { act[i - 1][col].emplace_back(row, c); };

  m.f_act.assign(2, {});
  m.e_act.assign(2, {});
  if (k == 1) {
    m.highest = cd.fundamental_weight(1);
    set_weights({{1, 0}, {-1, 1}, {2, -1}, {0, 0}, {-2, 1}, {1, -1}, {-1, 0}}, "v");
    entry(m.f_act, 1, 0, 1, one);
    entry(m.f_act, 1, 2, 3, one);
    entry(m.f_act, 1, 3, 4, two1);
    entry(m.f_act, 1, 5, 6, one);
    entry(m.f_act, 2, 1, 2, one);
    entry(m.f_act, 2, 4, 5, one);
    entry(m.e_act, 1, 1, 0, one);
    entry(m.e_act, 1, 3, 2, two1);
    entry(m.e_act, 1, 4, 3, one);
    entry(m.e_act, 1, 6, 5, one);
    entry(m.e_act, 2, 2, 1, one);
    entry(m.e_act, 2, 5, 4, one);
  } else {
    m.highest = cd.fundamental_weight(2);
    set_weights({{0, 1}, {3, -1}, {1, 0}, {-1, 1}, {-3, 2}, {2, -1}, {0, 0}, {0, 0},
                 {3, -2}, {-2, 1}, {1, -1}, {-1, 0}, {-3, 1}, {0, -1}},
                "w");
    // w7 = F1.w6 and w8 = F2.w5 are the two zero-weight canonical vectors.
    entry(m.f_act, 1, 1, 2, one);
    entry(m.f_act, 1, 2, 3, two1);
    entry(m.f_act, 1, 3, 4, three1);
    entry(m.f_act, 1, 5, 6, one);
    entry(m.f_act, 1, 6, 9, two1);
    entry(m.f_act, 1, 7, 9, one);
    entry(m.f_act, 1, 8, 10, one);
    entry(m.f_act, 1, 10, 11, two1);
    entry(m.f_act, 1, 11, 12, three1);
    entry(m.f_act, 2, 0, 1, one);
    entry(m.f_act, 2, 3, 5, one);
    entry(m.f_act, 2, 4, 7, one);
    entry(m.f_act, 2, 6, 8, three1);
    entry(m.f_act, 2, 7, 8, two2);
    entry(m.f_act, 2, 9, 10, one);
    entry(m.f_act, 2, 12, 13, one);
    entry(m.e_act, 1, 2, 1, three1);
    entry(m.e_act, 1, 3, 2, two1);
    entry(m.e_act, 1, 4, 3, one);
    entry(m.e_act, 1, 6, 5, two1);
    entry(m.e_act, 1, 7, 5, one);
    entry(m.e_act, 1, 9, 6, one);
    entry(m.e_act, 1, 10, 8, three1);
    entry(m.e_act, 1, 11, 10, two1);
    entry(m.e_act, 1, 12, 11, one);
    entry(m.e_act, 2, 1, 0, one);
    entry(m.e_act, 2, 5, 3, one);
    entry(m.e_act, 2, 6, 4, three1);
    entry(m.e_act, 2, 7, 4, two2);
    entry(m.e_act, 2, 8, 7, one);
    entry(m.e_act, 2, 10, 9, one);
    entry(m.e_act, 2, 13, 12, one);
  }
  const RelationReport rep = verify_module_relations(m);
  if (!rep.ok) throw RelationViolationError("g2_fundamental fixture invalid: " + rep.failure);
  return m;
}

inline std::string serialize_module(const ModuleRep& m) {
  nlohmann::ordered_json j;
  j["type"] = m.datum.type_string();
  j["highest"] = m.highest.coords;
  j["basis"] = nlohmann::ordered_json::array();
  for (int t = 0; t < m.dim(); ++t)
    j["basis"].push_back({{"label", m.labels[t]}, {"weight", m.weights[t].coords}});
  auto dump_act = [&](const std::vector<SparseAction>& act) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& table : act) {
      nlohmann::ordered_json entries = nlohmann::ordered_json::array();
      for (const auto& [col, list] : table)
        for (const auto& [row, c] : list)
          entries.push_back(nlohmann::ordered_json::array({row, col, c.str()}));
      arr.push_back(entries);
    }
    return arr;
  };
  j["F"] = dump_act(m.f_act);
  j["E"] = dump_act(m.e_act);
  return j.dump(2);
}

// Parses, validates height ordering, and verifies the defining relations.
inline ModuleRep load_module_file(const std::string& bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("module file: invalid JSON: ") + e.what());
  }
  ModuleRep m;
  try {
    m.datum = CartanDatum::from_type(j.at("type").get<std::string>());
    m.highest = Weight{j.at("highest").get<std::vector<int>>()};
    for (const auto& b : j.at("basis")) {
      m.labels.push_back(b.at("label").get<std::string>());
      m.weights.push_back(Weight{b.at("weight").get<std::vector<int>>()});
    }
    const int rank = m.datum.rank();
    auto read_act = [&](const char* key) {
      std::vector<SparseAction> act(rank);
      const auto& arr = j.at(key);
      if (static_cast<int>(arr.size()) != rank)
        throw ParseError(std::string("module file: ") + key + " must have one table per simple root");
      for (int i = 0; i < rank; ++i)
        for (const auto& e : arr[i]) {
          const int row = e.at(0).get<int>();
          const int col = e.at(1).get<int>();
          if (row < 0 || row >= m.dim() || col < 0 || col >= m.dim())
            throw ParseError("module file: basis index out of range");
          act[i][col].emplace_back(row, LaurentPoly::parse(e.at(2).get<std::string>()));
        }
      return act;
    };
    m.f_act = read_act("F");
    m.e_act = read_act("E");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("module file: ") + e.what());
  }

  if (m.dim() == 0) throw ParseError("module file: empty basis");
  for (const auto& w : m.weights)
    if (static_cast<int>(w.coords.size()) != m.datum.rank())
      throw ParseError("module file: weight rank mismatch");
  if (m.weights[0] != m.highest)
    throw ParseError("module file: basis[0] must carry the highest weight");
  int prev_height = 0;
  for (int t = 0; t < m.dim(); ++t) {
    auto nu = m.datum.weight_to_root(CartanDatum::sub(m.highest, m.weights[t]));
    if (!nu) throw ParseError("module file: weight of " + m.labels[t] + " not below highest");
    for (int c : nu->coords)
      if (c < 0) throw ParseError("module file: weight of " + m.labels[t] + " not below highest");
    if (nu->height() < prev_height)
      throw ParseError("module file: basis not ordered by increasing height");
    prev_height = nu->height();
  }
  const RelationReport rep = verify_module_relations(m);
  if (!rep.ok) throw RelationViolationError("module file: " + rep.failure);
  return m;
}

// ---------------------------------------------------------------------------
// Tensor products

using MultiIndex = std::vector<int>;

struct TensorVector {
  std::map<MultiIndex, LaurentPoly> entries;

  bool is_zero() const { return entries.empty(); }
  void add_term(const MultiIndex& idx, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = entries.emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries.erase(it);
    }
  }
  TensorVector& operator+=(const TensorVector& o) {
    for (const auto& [idx, c] : o.entries) add_term(idx, c);
    return *this;
  }
  friend TensorVector operator*(const LaurentPoly& c, const TensorVector& v) {
    TensorVector out;
    if (c.is_zero()) return out;
    for (const auto& [idx, coeff] : v.entries) out.entries[idx] = c * coeff;
    return out;
  }
  LaurentPoly coeff(const MultiIndex& idx) const {
    auto it = entries.find(idx);
    return it == entries.end() ? LaurentPoly() : it->second;
  }
  // The <_lex-largest index of the support.
  MultiIndex leading() const {
    if (entries.empty()) throw std::logic_error("leading index of the zero vector");
    return entries.rbegin()->first;
  }
  bool operator==(const TensorVector&) const = default;
};

struct TensorSpace {
  CartanDatum datum;
  std::vector<ModuleRep> factors;

  explicit TensorSpace(std::vector<ModuleRep> fs) : factors(std::move(fs)) {
    if (factors.empty()) throw std::invalid_argument("TensorSpace: no factors");
    datum = factors[0].datum;
    for (const auto& f : factors)
      if (f.datum.type_string() != datum.type_string())
        throw std::invalid_argument("TensorSpace: mixed Cartan types");
  }

  int arity() const { return static_cast<int>(factors.size()); }

  Weight lambda() const {
    Weight l = datum.zero_weight();
    for (const auto& f : factors) l = CartanDatum::add(l, f.highest);
    return l;
  }

  Weight weight_of(const MultiIndex& idx) const {
    Weight w = datum.zero_weight();
    for (int j = 0; j < arity(); ++j) w = CartanDatum::add(w, factors[j].weights[idx[j]]);
    return w;
  }

  TensorVector highest_vector() const {
    TensorVector v;
    v.entries[MultiIndex(factors.size(), 0)] = LaurentPoly::one();
    return v;
  }
};

// Action of E_i, F_i, K_i through the iterated comultiplication:
// F_i = sum_j K x ... x K x F(slot j) x 1 x ... x 1,
// E_i = sum_j 1 x ... x 1 x E(slot j) x K^-1 x ... x K^-1.
inline TensorVector tensor_act(const TensorSpace& space, Gen g, int i, const TensorVector& v) {
  const int r = space.arity();
  const int di = space.datum.d(i);
  TensorVector out;
  for (const auto& [idx, c] : v.entries) {
    if (g == Gen::K) {
      int exp = 0;
      for (int j = 0; j < r; ++j) exp += di * space.factors[j].weights[idx[j]].coords[i - 1];
      out.add_term(idx, c * LaurentPoly::q_power(exp));
      continue;
    }
    for (int j = 0; j < r; ++j) {
      const auto& table = (g == Gen::F ? space.factors[j].f_act : space.factors[j].e_act)[i - 1];
      auto it = table.find(idx[j]);
      if (it == table.end()) continue;
      int exp = 0;
      if (g == Gen::F) {
        for (int l = 0; l < j; ++l) exp += di * space.factors[l].weights[idx[l]].coords[i - 1];
      } else {
        for (int l = j + 1; l < r; ++l) exp -= di * space.factors[l].weights[idx[l]].coords[i - 1];
      }
      const LaurentPoly pre = c * LaurentPoly::q_power(exp);
      for (const auto& [row, coeff] : it->second) {
        MultiIndex target = idx;
        target[j] = row;
        out.add_term(target, pre * coeff);
      }
    }
  }
  return out;
}

// F_i^{(n)} v, computed incrementally with exact division by [k]_{alpha_i}
// at step k. NonDivisible indicates a divided-power bookkeeping bug.
inline TensorVector divided_power_F(const TensorSpace& space, int i, int n, TensorVector v) {
  if (n < 1) throw std::invalid_argument("divided_power_F: n must be >= 1");
  for (int k = 1; k <= n; ++k) {
    v = tensor_act(space, Gen::F, i, v);
    if (k == 1) continue;
    const LaurentPoly qk = q_int(k, space.datum.d(i));
    TensorVector divided;
    for (const auto& [idx, c] : v.entries) divided.entries[idx] = divide_exact(c, qk);
    v = std::move(divided);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Weight multiplicity oracle: rank over Q of all F-monomial images of the
// highest tensor vector of content nu, with q evaluated at a generic
// rational point (and a second point as a cross-check).

namespace detail {

using RatVec = std::map<MultiIndex, Rat>;

inline RatVec rat_act_F(const TensorSpace& space, int i, const RatVec& v, const Rat& q) {
  const int r = space.arity();
  const int di = space.datum.d(i);
  auto qpow = [&](int e) {
    Rat p = 1;
    const Rat base = e >= 0 ? q : Rat(1) / q;
    for (int t = 0; t < (e >= 0 ? e : -e); ++t) p *= base;
    return p;
  };
  RatVec out;
  for (const auto& [idx, c] : v) {
    for (int j = 0; j < r; ++j) {
      const auto& table = space.factors[j].f_act[i - 1];
      auto it = table.find(idx[j]);
      if (it == table.end()) continue;
      int exp = 0;
      for (int l = 0; l < j; ++l) exp += di * space.factors[l].weights[idx[l]].coords[i - 1];
      const Rat pre = c * qpow(exp);
      for (const auto& [row, coeff] : it->second) {
        MultiIndex target = idx;
        target[j] = row;
        Rat add = pre * coeff.evaluate(q);
        if (add == 0) continue;
        auto [slot, inserted] = out.emplace(target, add);
        if (!inserted) {
          slot->second += add;
          if (slot->second == 0) out.erase(slot);
        }
      }
    }
  }
  return out;
}

inline int rat_rank(std::vector<RatVec> rows) {
  int rank = 0;
  std::map<MultiIndex, std::size_t> pivot_of;
  std::vector<RatVec> pivots;
  for (auto& row : rows) {
    for (;;) {
      if (row.empty()) break;
      const MultiIndex lead = row.rbegin()->first;
      auto it = pivot_of.find(lead);
      if (it == pivot_of.end()) break;
      const RatVec& p = pivots[it->second];
      const Rat f = row.rbegin()->second / p.rbegin()->second;
      for (const auto& [idx, c] : p) {
        auto [slot, inserted] = row.emplace(idx, -f * c);
        if (!inserted) {
          slot->second -= f * c;
          if (slot->second == 0) row.erase(slot);
        }
      }
    }
    if (!row.empty()) {
      pivot_of[row.rbegin()->first] = pivots.size();
      pivots.push_back(std::move(row));
      ++rank;
    }
  }
  return rank;
}

inline void monomial_words(const std::vector<int>& remaining, std::vector<int>& word,
                           std::vector<std::vector<int>>& out) {
  bool done = true;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (remaining[i] == 0) continue;
    done = false;
    std::vector<int> rem = remaining;
    --rem[i];
    word.push_back(static_cast<int>(i + 1));
    monomial_words(rem, word, out);
    word.pop_back();
  }
  if (done) out.push_back(word);
}

}  // namespace detail

// dim of the (lambda - nu)-weight space of the submodule generated by the
// highest tensor vector.
inline int weight_multiplicity_oracle(const TensorSpace& space, const RootVector& nu) {
  std::vector<std::vector<int>> words;
  {
    std::vector<int> word;
    detail::monomial_words(nu.coords, word, words);
  }
  auto rank_at = [&](const Rat& q) {
    std::vector<detail::RatVec> rows;
    for (const auto& word : words) {
      detail::RatVec v;
      v[MultiIndex(space.factors.size(), 0)] = 1;
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        v = detail::rat_act_F(space, *it, v, q);
      if (!v.empty()) rows.push_back(std::move(v));
    }
    return detail::rat_rank(std::move(rows));
  };
  const int r1 = rank_at(Rat(10, 3));
  const int r2 = rank_at(Rat(-13, 7));
  if (r1 != r2)
    throw std::logic_error("weight_multiplicity_oracle: evaluation points disagree");
  return r1;
}

}  // namespace qcb
