// Littelmann path model: exact piecewise-linear paths in weight space,
// the root operators e_alpha / f_alpha (cut-reflect-translate form),
// crystal generation, first directions, adapted monomials and the
// partial order on paths of equal weight.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcb/root_data.hpp"

namespace qcb {

struct MalformedPathError : std::runtime_error {
  explicit MalformedPathError(const std::string& what) : std::runtime_error(what) {}
};

struct PathSegment {
  Weight velocity;  // direction per unit time; stays in W*lambda for paths in Pi_lambda
  Rat duration;     // positive, durations sum to 1
  bool operator==(const PathSegment&) const = default;
};

inline bool operator<(const PathSegment& a, const PathSegment& b) {
  if (a.velocity != b.velocity) return a.velocity < b.velocity;
  return a.duration < b.duration;
}

// Piecewise-linear path from the origin, in canonical form: no
// zero-duration segments, no equal adjacent velocities.
struct LSPath {
  std::vector<PathSegment> segments;

  static LSPath straight(const Weight& lambda) {
    LSPath p;
    bool zero = true;
    for (int c : lambda.coords) zero = zero && c == 0;
    if (!zero) p.segments.push_back({lambda, Rat(1)});
    return p;
  }

  void canonicalize() {
    std::vector<PathSegment> out;
    for (auto& s : segments) {
      if (s.duration == 0) continue;
      if (!out.empty() && out.back().velocity == s.velocity)
        out.back().duration += s.duration;
      else
        out.push_back(std::move(s));
    }
    segments = std::move(out);
  }

  Weight endpoint() const {
    if (segments.empty()) return Weight{};
    const std::size_t rank = segments[0].velocity.coords.size();
    std::vector<Rat> acc(rank, Rat(0));
    for (const auto& s : segments)
      for (std::size_t k = 0; k < rank; ++k) acc[k] += s.duration * s.velocity.coords[k];
    Weight w{std::vector<int>(rank, 0)};
    for (std::size_t k = 0; k < rank; ++k) {
      if (boost::multiprecision::denominator(acc[k]) != 1)
        throw MalformedPathError("non-integral path endpoint");
      w.coords[k] = static_cast<int>(boost::multiprecision::numerator(acc[k]).convert_to<long long>());
    }
    return w;
  }

  bool operator==(const LSPath&) const = default;
};

inline bool operator<(const LSPath& a, const LSPath& b) {
  return std::lexicographical_compare(a.segments.begin(), a.segments.end(),
                                      b.segments.begin(), b.segments.end(),
                                      [](const PathSegment& x, const PathSegment& y) { return x < y; });
}

enum class RootOp { e, f };

// f_i is defined iff h(1) - min h >= 1 where h(t) = <path(t), alpha_i-check>;
// e_i iff min h <= -1. Returns nullopt when undefined (the operator's 0).
inline std::optional<LSPath> root_operator(const CartanDatum& cd, const LSPath& path, int i,
                                           RootOp op) {
  const std::size_t n = path.segments.size();
  std::vector<Rat> h(n + 1);  // values at breakpoints
  h[0] = 0;
  for (std::size_t j = 0; j < n; ++j)
    h[j + 1] = h[j] + path.segments[j].duration * path.segments[j].velocity.coords[i - 1];
  Rat m = 0;
  for (std::size_t j = 0; j <= n; ++j) m = std::min(m, h[j]);
  if (boost::multiprecision::denominator(m) != 1)
    throw MalformedPathError("non-integral minimum of the pairing function");

  auto reflected = [&](const Weight& v) { return cd.simple_reflection(i, v); };
  LSPath out;

  if (op == RootOp::f) {
    if (h[n] - m < 1) return std::nullopt;
    std::size_t j0 = 0;  // last breakpoint attaining the minimum
    for (std::size_t j = 0; j <= n; ++j)
      if (h[j] == m) j0 = j;
    for (std::size_t j = 0; j < j0; ++j) out.segments.push_back(path.segments[j]);
    const Rat target = m + 1;
    std::size_t j = j0;
    for (;; ++j) {
      if (j == n) throw MalformedPathError("f: pairing never reaches min+1");
      const auto& seg = path.segments[j];
      if (h[j + 1] >= target) {
        const int slope = seg.velocity.coords[i - 1];
        const Rat frac = (target - h[j]) / slope;  // slope > 0 here
        out.segments.push_back({reflected(seg.velocity), frac});
        if (frac < seg.duration) out.segments.push_back({seg.velocity, seg.duration - frac});
        ++j;
        break;
      }
      out.segments.push_back({reflected(seg.velocity), seg.duration});
    }
    for (; j < n; ++j) out.segments.push_back(path.segments[j]);
  } else {
    if (m > -1) return std::nullopt;
    std::size_t j1 = 0;  // first breakpoint attaining the minimum
    while (h[j1] != m) ++j1;
    const Rat target = m + 1;
    std::size_t jc = j1;  // crossing segment for max{t <= t1 : h(t) = m+1}
    do {
      --jc;
    } while (h[jc] < target);
    for (std::size_t j = 0; j < jc; ++j) out.segments.push_back(path.segments[j]);
    {
      const auto& seg = path.segments[jc];
      const int slope = seg.velocity.coords[i - 1];  // slope < 0 here
      const Rat frac = (target - h[jc]) / slope;
      if (frac > 0) out.segments.push_back({seg.velocity, frac});
      out.segments.push_back({reflected(seg.velocity), seg.duration - frac});
    }
    for (std::size_t j = jc + 1; j < j1; ++j)
      out.segments.push_back({reflected(path.segments[j].velocity), path.segments[j].duration});
    for (std::size_t j = j1; j < n; ++j) out.segments.push_back(path.segments[j]);
  }

  out.canonicalize();
  return out;
}

// Crystal generated from the straight path to lambda by closing under
// all f_i, vertices deduplicated by canonical form. Vertex 0 is the
// highest path; BFS order is deterministic.
struct PathCrystal {
  Weight lambda;
  std::vector<LSPath> vertices;
  std::vector<int> level;                  // height of lambda - endpoint
  std::map<std::pair<int, int>, int> f_edge;  // (vertex, i) -> vertex
  int highest = 0;
  std::map<LSPath, int> index;

  int find(const LSPath& p) const {
    auto it = index.find(p);
    return it == index.end() ? -1 : it->second;
  }
};

inline PathCrystal generate_crystal(const CartanDatum& cd, const Weight& lambda,
                                    int max_height = -1) {
  if (!cd.is_dominant(lambda)) throw std::invalid_argument("generate_crystal: non-dominant weight");
  PathCrystal g;
  g.lambda = lambda;
  const LSPath top = LSPath::straight(lambda);
  g.vertices.push_back(top);
  g.level.push_back(0);
  g.index[top] = 0;
  for (std::size_t head = 0; head < g.vertices.size(); ++head) {
    if (max_height >= 0 && g.level[head] >= max_height) continue;
    for (int i = 1; i <= cd.rank(); ++i) {
      auto img = root_operator(cd, g.vertices[head], i, RootOp::f);
      if (!img) continue;
      auto [it, inserted] = g.index.try_emplace(*img, static_cast<int>(g.vertices.size()));
      if (inserted) {
        g.vertices.push_back(*img);
        g.level.push_back(g.level[head] + 1);
      }
      g.f_edge[{static_cast<int>(head), i}] = it->second;
    }
  }
  return g;
}

// phi(pi): the minimal coset representative w with w(lambda) equal to the
// path's first direction, as its lex-minimal reduced word.
inline WeylWord first_direction_phi(const CartanDatum& cd, const Weight& lambda,
                                    const LSPath& path) {
  if (path.segments.empty()) return WeylWord{};
  return cd.min_coset_rep(lambda, path.segments[0].velocity);
}

struct AdaptedMonomial {
  std::vector<std::pair<int, int>> factors;  // (simple index, exponent >= 1)
  bool operator==(const AdaptedMonomial&) const = default;
  RootVector content(int rank) const {
    RootVector nu{std::vector<int>(rank, 0)};
    for (auto [i, n] : factors) nu.coords[i - 1] += n;
    return nu;
  }
  std::string str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (auto [i, n] : factors) {
      s += "F" + std::to_string(i);
      if (n > 1) s += "^(" + std::to_string(n) + ")";
    }
    return s;
  }
};

struct PathMonomialData {
  WeylWord phi;
  std::vector<int> eta;
  AdaptedMonomial monomial;
};

// Peels maximal e-powers along the lex-minimal reduced word of phi(pi).
inline PathMonomialData adapted_monomial(const CartanDatum& cd, const Weight& lambda,
                                         const LSPath& path) {
  PathMonomialData out;
  out.phi = first_direction_phi(cd, lambda, path);
  LSPath cur = path;
  for (int i : out.phi.letters) {
    int n = 0;
    while (auto up = root_operator(cd, cur, i, RootOp::e)) {
      cur = *up;
      ++n;
    }
    if (n == 0) throw MalformedPathError("adapted_monomial: no e_i step along phi word");
    out.eta.push_back(n);
    out.monomial.factors.emplace_back(i, n);
  }
  if (!(cur == LSPath::straight(lambda)))
    throw MalformedPathError("adapted_monomial: peeling did not end at the highest path");
  return out;
}

// pi < sigma iff phi(pi) <_B phi(sigma) strictly, or phi equal and
// eta_pi >_lex eta_sigma. Incomparable pairs are false both ways.
inline bool path_order_less(const CartanDatum& cd, const Weight& lambda, const LSPath& p,
                            const LSPath& s) {
  const auto dp = adapted_monomial(cd, lambda, p);
  const auto ds = adapted_monomial(cd, lambda, s);
  if (dp.phi == ds.phi) return dp.eta > ds.eta;  // >_lex on exponent sequences
  return cd.bruhat_leq(dp.phi, ds.phi);
}

inline std::string crystal_to_dot(const CartanDatum& cd, const PathCrystal& g) {
  std::string dot = "digraph crystal {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto data = adapted_monomial(cd, g.lambda, g.vertices[v]);
    std::string eta = "(";
    for (std::size_t k = 0; k < data.eta.size(); ++k) {
      if (k) eta += ",";
      eta += std::to_string(data.eta[k]);
    }
    eta += ")";
    dot += "  v" + std::to_string(v) + " [label=\"eta=" + eta +
           " wt=" + weight_str(g.vertices[v].endpoint()) + "\"];\n";
  }
  for (const auto& [key, to] : g.f_edge)
    dot += "  v" + std::to_string(key.first) + " -> v" + std::to_string(to) +
           " [label=\"" + std::to_string(key.second) + "\"];\n";
  dot += "}\n";
  return dot;
}

}  // namespace qcb
