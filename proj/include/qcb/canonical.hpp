// The main algorithm: canonical basis elements G_lambda(b_pi) of a weight
// block, computed from adapted-monomial vectors by triangular
// bar-correction against previously completed elements.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcb/module.hpp"
#include "qcb/path.hpp"

namespace qcb {

struct NotTriangularError : std::runtime_error {
  explicit NotTriangularError(const std::string& what) : std::runtime_error(what) {}
};

struct CanonicalElement {
  WeylWord phi;
  std::vector<int> eta;
  TensorVector vector;
  MultiIndex leading;
};

struct WeightBlock {
  Weight lambda;
  std::vector<Weight> factors;
  RootVector nu;
  std::vector<CanonicalElement> elements;  // processing order
};

// Per-block cache of monomial vectors F_pi . v_lambda: each vector is one
// single-F action plus one exact division away from its e-predecessor's.
class MonomialCache {
 public:
  explicit MonomialCache(const TensorSpace& space) : space_(space), lambda_(space.lambda()) {
    cache_[LSPath::straight(lambda_)] = space.highest_vector();
  }

  const TensorVector& vector(const LSPath& path) {
    auto it = cache_.find(path);
    if (it != cache_.end()) return it->second;
    const CartanDatum& cd = space_.datum;
    const WeylWord phi = first_direction_phi(cd, lambda_, path);
    if (phi.empty()) throw MalformedPathError("monomial_vector: non-highest path with empty phi");
    const int i1 = phi.letters[0];
    auto pred = root_operator(cd, path, i1, RootOp::e);
    if (!pred) throw MalformedPathError("monomial_vector: e_i undefined along phi word");
    int n1 = 1;
    for (LSPath probe = *pred;;) {
      auto up = root_operator(cd, probe, i1, RootOp::e);
      if (!up) break;
      probe = *up;
      ++n1;
    }
    TensorVector x = tensor_act(space_, Gen::F, i1, vector(*pred));
    const LaurentPoly qn = q_int(n1, cd.d(i1));
    TensorVector divided;
    for (const auto& [idx, c] : x.entries) divided.entries[idx] = divide_exact(c, qn);
    auto [slot, _] = cache_.emplace(path, std::move(divided));
    return slot->second;
  }

 private:
  const TensorSpace& space_;
  Weight lambda_;
  std::map<LSPath, TensorVector> cache_;
};

inline TensorVector monomial_vector(const TensorSpace& space, const LSPath& path) {
  MonomialCache cache(space);
  return cache.vector(path);
}

// Step 2 of the algorithm: sweep the previously computed elements (sorted
// by strictly decreasing leading index), adding the bar-symmetric
// correction of each read coefficient; the result must satisfy the
// canonical-element invariants.
inline CanonicalElement triangular_reduce(TensorVector x,
                                          const std::vector<const CanonicalElement*>& computed,
                                          WeylWord phi = {}, std::vector<int> eta = {}) {
  for (std::size_t k = 0; k + 1 < computed.size(); ++k)
    if (!(computed[k]->leading > computed[k + 1]->leading))
      throw std::invalid_argument("triangular_reduce: computed elements not in decreasing leading order");
  for (const CanonicalElement* el : computed) {
    const LaurentPoly xi = bar_symmetric_correction(x.coeff(el->leading));
    if (!xi.is_zero()) x += xi * el->vector;
  }
  if (x.is_zero()) throw NotTriangularError("triangular_reduce: vector collapsed to zero");
  const MultiIndex lead = x.leading();
  if (!(x.coeff(lead) == LaurentPoly::one()))
    throw NotTriangularError("triangular_reduce: leading coefficient is " + x.coeff(lead).str());
  for (const auto& [idx, c] : x.entries)
    if (idx != lead && !c.in_qZq())
      throw NotTriangularError("triangular_reduce: non-leading coefficient " + c.str() +
                               " not in qZ[q]");
  return CanonicalElement{std::move(phi), std::move(eta), std::move(x), lead};
}

namespace detail {

struct BlockPath {
  LSPath path;
  PathMonomialData data;
};

// Paths of weight nu, with their phi/eta labels.
inline std::vector<BlockPath> block_paths(const TensorSpace& space, const RootVector& nu) {
  const CartanDatum& cd = space.datum;
  const Weight lambda = space.lambda();
  const Weight target = CartanDatum::sub(lambda, cd.root_to_weight(nu));
  const PathCrystal crystal = generate_crystal(cd, lambda, nu.height());
  std::vector<BlockPath> out;
  for (const auto& p : crystal.vertices)
    if (p.endpoint() == target) out.push_back({p, adapted_monomial(cd, lambda, p)});
  return out;
}

}  // namespace detail

// Computes the block of all G_lambda(b_pi) with pi of weight nu,
// processing paths along a linear extension of the partial order. The
// default extension breaks ties by eta descending-lex then phi-word lex;
// pass an rng to draw a random valid extension instead.
inline WeightBlock canonical_block(const TensorSpace& space, const RootVector& nu,
                                   std::mt19937* rng = nullptr) {
  const CartanDatum& cd = space.datum;
  WeightBlock block;
  block.lambda = space.lambda();
  for (const auto& f : space.factors) block.factors.push_back(f.highest);
  block.nu = nu;

  std::vector<detail::BlockPath> paths = detail::block_paths(space, nu);
  const std::size_t n = paths.size();
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) less[a][b] = path_order_less(cd, block.lambda, paths[a].path, paths[b].path);

  MonomialCache cache(space);
  std::vector<bool> done(n, false);
  std::map<MultiIndex, std::size_t> leading_seen;
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::size_t> minimal;
    for (std::size_t a = 0; a < n; ++a) {
      if (done[a]) continue;
      bool is_min = true;
      for (std::size_t b = 0; b < n && is_min; ++b)
        if (!done[b] && less[b][a]) is_min = false;
      if (is_min) minimal.push_back(a);
    }
    if (minimal.empty()) throw std::logic_error("canonical_block: cycle in path order");
    std::size_t pick;
    if (rng) {
      pick = minimal[(*rng)() % minimal.size()];
    } else {
      pick = minimal[0];
      for (std::size_t cand : minimal) {
        const auto& best = paths[pick].data;
        const auto& c = paths[cand].data;
        if (c.eta > best.eta || (c.eta == best.eta && c.phi.letters < best.phi.letters))
          pick = cand;
      }
    }
    done[pick] = true;

    std::vector<const CanonicalElement*> computed;
    for (const auto& el : block.elements) computed.push_back(&el);
    std::sort(computed.begin(), computed.end(),
              [](const CanonicalElement* a, const CanonicalElement* b) { return a->leading > b->leading; });
    CanonicalElement el = triangular_reduce(cache.vector(paths[pick].path), computed,
                                            paths[pick].data.phi, paths[pick].data.eta);
    auto [it, inserted] = leading_seen.emplace(el.leading, round);
    if (!inserted) throw NotTriangularError("canonical_block: duplicate leading index in block");
    block.elements.push_back(std::move(el));
  }
  return block;
}

// Blocks for every nu with a nonempty path set, heights bounded by
// max_height (-1 for the whole module), ordered by (height, nu lex).
inline std::vector<WeightBlock> full_basis(const TensorSpace& space, int max_height = -1) {
  const CartanDatum& cd = space.datum;
  const Weight lambda = space.lambda();
  const PathCrystal crystal = generate_crystal(cd, lambda, max_height);
  std::set<RootVector> nus;
  for (const auto& p : crystal.vertices) {
    auto nu = cd.weight_to_root(CartanDatum::sub(lambda, p.endpoint()));
    if (!nu) throw MalformedPathError("full_basis: path weight outside root lattice");
    nus.insert(*nu);
  }
  std::vector<RootVector> order(nus.begin(), nus.end());
  std::sort(order.begin(), order.end(), [](const RootVector& a, const RootVector& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coords < b.coords;
  });
  std::vector<WeightBlock> blocks;
  for (const auto& nu : order) blocks.push_back(canonical_block(space, nu));
  return blocks;
}

// Coefficients of x in the block's basis (in element order); throws if x
// is not in the span.
inline std::vector<LaurentPoly> express_in_block(const WeightBlock& block, TensorVector x) {
  std::vector<std::size_t> order(block.elements.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return block.elements[a].leading > block.elements[b].leading;
  });
  std::vector<LaurentPoly> coeffs(block.elements.size());
  for (std::size_t k : order) {
    const LaurentPoly c = x.coeff(block.elements[k].leading);
    if (c.is_zero()) continue;
    coeffs[k] = c;
    x += (-c) * block.elements[k].vector;
  }
  if (!x.is_zero())
    throw std::invalid_argument("express_in_block: vector not in the block span");
  return coeffs;
}

inline nlohmann::ordered_json block_to_json(const WeightBlock& block) {
  nlohmann::ordered_json j;
  j["lambda"] = block.lambda.coords;
  j["nu"] = block.nu.coords;
  j["elements"] = nlohmann::ordered_json::array();
  for (const auto& el : block.elements) {
    nlohmann::ordered_json e;
    e["phi"] = el.phi.letters;
    e["eta"] = el.eta;
    e["vector"] = nlohmann::ordered_json::array();
    for (auto it = el.vector.entries.rbegin(); it != el.vector.entries.rend(); ++it)
      e["vector"].push_back({{"index", it->first}, {"coeff", it->second.str()}});
    j["elements"].push_back(std::move(e));
  }
  return j;
}

}  // namespace qcb
