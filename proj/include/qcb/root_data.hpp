// Root systems of finite type: Cartan data, weights in fundamental
// coordinates, roots in simple-root coordinates, the W-invariant inner
// product, and Weyl-group word machinery (lex-minimal reduced words,
// Bruhat order via the subword property, minimal coset representatives,
// Weyl dimension formula).
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcb/laurent.hpp"

namespace qcb {

struct NotInOrbitError : std::runtime_error {
  explicit NotInOrbitError(const std::string& what) : std::runtime_error(what) {}
};

// Weight mu = sum coords[i] * lambda_{i+1} (fundamental coordinates),
// so <mu, alpha_i-check> = coords[i-1].
struct Weight {
  std::vector<int> coords;
  bool operator==(const Weight&) const = default;
  auto operator<=>(const Weight&) const = default;
};

// nu = sum coords[k] * alpha_{k+1} (simple-root coordinates).
struct RootVector {
  std::vector<int> coords;
  bool operator==(const RootVector&) const = default;
  auto operator<=>(const RootVector&) const = default;
  int height() const {
    int h = 0;
    for (int c : coords) h += c;
    return h;
  }
};

// Word in the simple reflections, letters 1-based. A word acts on
// weights rightmost letter first: (l1,...,lr) is s_{l1} ... s_{lr}.
struct WeylWord {
  std::vector<int> letters;
  bool operator==(const WeylWord&) const = default;
  auto operator<=>(const WeylWord&) const = default;
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

inline Weight parse_weight(const std::string& text) {
  Weight w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw ParseError("empty weight coordinate in '" + text + "'");
    w.coords.push_back(std::stoi(part));
  }
  if (w.coords.empty()) throw ParseError("empty weight '" + text + "'");
  return w;
}

inline std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.coords[i]);
  }
  return s + ")";
}

class CartanDatum {
 public:
  // Accepts strings like "A3", "G2"; all finite types A-G.
  static CartanDatum from_type(const std::string& type);

  char letter() const { return letter_; }
  int rank() const { return rank_; }
  std::string type_string() const { return std::string(1, letter_) + std::to_string(rank_); }

  // cartan(i,j) = 2(alpha_i, alpha_j) / (alpha_i, alpha_i), 1-based.
  int cartan(int i, int j) const { return a_[i - 1][j - 1]; }
  // d_i = (alpha_i, alpha_i)/2, in {1,2,3}.
  int d(int i) const { return d_[i - 1]; }

  Weight zero_weight() const { return Weight{std::vector<int>(rank_, 0)}; }
  Weight fundamental_weight(int i) const {
    Weight w = zero_weight();
    w.coords[i - 1] = 1;
    return w;
  }
  Weight rho() const { return Weight{std::vector<int>(rank_, 1)}; }

  // alpha_i in fundamental coordinates: column i of the Cartan matrix.
  Weight simple_root(int i) const {
    Weight w = zero_weight();
    for (int r = 0; r < rank_; ++r) w.coords[r] = a_[r][i - 1];
    return w;
  }

  bool is_dominant(const Weight& mu) const {
    for (int c : mu.coords) if (c < 0) return false;
    return true;
  }

  // s_i(mu) = mu - <mu, alpha_i-check> alpha_i.
  Weight simple_reflection(int i, const Weight& mu) const {
    check_index(i);
    Weight r = mu;
    const int m = mu.coords[i - 1];
    if (m == 0) return r;
    for (int k = 0; k < rank_; ++k) r.coords[k] -= m * a_[k][i - 1];
    return r;
  }

  Weight act(const WeylWord& w, Weight mu) const {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      mu = simple_reflection(*it, mu);
    return mu;
  }

  Weight root_to_weight(const RootVector& nu) const {
    Weight w = zero_weight();
    for (int r = 0; r < rank_; ++r)
      for (int k = 0; k < rank_; ++k) w.coords[r] += a_[r][k] * nu.coords[k];
    return w;
  }

  // Inverse of root_to_weight when the solution is integral.
  std::optional<RootVector> weight_to_root(const Weight& mu) const {
    std::vector<Rat> rhs(rank_);
    for (int r = 0; r < rank_; ++r) rhs[r] = mu.coords[r];
    std::vector<Rat> sol = solve_cartan(rhs);
    RootVector nu{std::vector<int>(rank_, 0)};
    for (int k = 0; k < rank_; ++k) {
      if (boost::multiprecision::denominator(sol[k]) != 1) return std::nullopt;
      Int num = boost::multiprecision::numerator(sol[k]);
      nu.coords[k] = static_cast<int>(num.convert_to<long long>());
    }
    return nu;
  }

  // W-invariant inner product with (alpha,alpha) = 2 for short roots.
  Rat inner(const Weight& mu, const Weight& nu) const {
    std::vector<Rat> rhs(rank_);
    for (int r = 0; r < rank_; ++r) rhs[r] = nu.coords[r];
    std::vector<Rat> c = solve_cartan(rhs);
    Rat acc = 0;
    for (int k = 0; k < rank_; ++k) acc += c[k] * d_[k] * mu.coords[k];
    return acc;
  }

  // All positive roots, in simple-root coordinates.
  std::vector<RootVector> positive_roots() const {
    std::map<std::vector<int>, bool> seen;
    std::vector<std::vector<int>> queue;
    for (int i = 0; i < rank_; ++i) {
      std::vector<int> e(rank_, 0);
      e[i] = 1;
      seen[e] = true;
      queue.push_back(e);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::vector<int> r = queue[head];
      for (int i = 1; i <= rank_; ++i) {
        std::vector<int> img = reflect_root(i, r);
        if (!seen.count(img)) {
          seen[img] = true;
          queue.push_back(img);
        }
      }
    }
    std::vector<RootVector> pos;
    for (const auto& [r, _] : seen) {
      bool nonneg = true;
      for (int c : r) if (c < 0) { nonneg = false; break; }
      if (nonneg) pos.push_back(RootVector{r});
    }
    return pos;
  }

  // Weyl dimension formula, exact.
  Int weyl_dim(const Weight& lambda) const {
    if (!is_dominant(lambda)) throw std::invalid_argument("weyl_dim: non-dominant weight");
    const Weight lr = add(lambda, rho());
    Rat dim = 1;
    for (const RootVector& beta : positive_roots()) {
      dim *= pairing_with_coroot(lr, beta) / pairing_with_coroot(rho(), beta);
    }
    if (boost::multiprecision::denominator(dim) != 1)
      throw std::logic_error("weyl_dim: non-integral result");
    return boost::multiprecision::numerator(dim);
  }

  // Greedy smallest-left-descent scan; also serves as the length oracle.
  WeylWord lex_min_reduced_word(const WeylWord& w) const {
    IMat inv = word_matrix_inverse(w);
    WeylWord out;
    for (;;) {
      int descent = 0;
      for (int i = 1; i <= rank_ && descent == 0; ++i)
        if (column_negative(inv, i - 1)) descent = i;
      if (descent == 0) break;
      out.letters.push_back(descent);
      right_multiply_reflection(inv, descent);
    }
    return out;
  }

  int length(const WeylWord& w) const { return static_cast<int>(lex_min_reduced_word(w).size()); }

  // u <= w in Bruhat order: some subword of the fixed lex-minimal reduced
  // word of w is a reduced word of u. Memoized over (state of u, position).
  bool bruhat_leq(const WeylWord& u, const WeylWord& w) const {
    const WeylWord wred = lex_min_reduced_word(w);
    const WeylWord ured = lex_min_reduced_word(u);
    std::map<std::pair<std::vector<int>, std::size_t>, bool> memo;
    return bruhat_rec(ured, wred, 0, memo);
  }

  // Minimal-length w with w(lambda) = mu, as its lex-minimal reduced word.
  WeylWord min_coset_rep(const Weight& lambda, const Weight& mu) const {
    if (!is_dominant(lambda)) throw std::invalid_argument("min_coset_rep: lambda not dominant");
    Weight cur = mu;
    std::vector<int> applied;
    while (!is_dominant(cur)) {
      int i = 1;
      while (cur.coords[i - 1] >= 0) ++i;
      applied.push_back(i);
      cur = simple_reflection(i, cur);
    }
    if (cur != lambda) throw NotInOrbitError("min_coset_rep: weight not in the orbit of lambda");
    return lex_min_reduced_word(WeylWord{applied});
  }

  static Weight add(const Weight& a, const Weight& b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
  }
  static Weight sub(const Weight& a, const Weight& b) {
    Weight r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return r;
  }

 private:
  using IMat = std::vector<std::vector<long long>>;

  char letter_ = 'A';
  int rank_ = 1;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;

  void check_index(int i) const {
    if (i < 1 || i > rank_) throw std::invalid_argument("simple-root index out of range");
  }

  // s_i on root coordinates: e_j -> e_j - cartan(i,j) e_i.
  std::vector<int> reflect_root(int i, const std::vector<int>& v) const {
    std::vector<int> r = v;
    long long acc = 0;
    for (int j = 0; j < rank_; ++j) acc += static_cast<long long>(a_[i - 1][j]) * v[j];
    r[i - 1] = static_cast<int>(v[i - 1] - acc);
    return r;
  }

  Rat pairing_with_coroot(const Weight& mu, const RootVector& beta) const {
    // <mu, beta-check> = 2 (mu, beta) / (beta, beta)
    Rat mu_beta = 0;
    for (int k = 0; k < rank_; ++k) mu_beta += Rat(beta.coords[k]) * d_[k] * mu.coords[k];
    Rat beta_beta = 0;
    for (int k = 0; k < rank_; ++k)
      for (int l = 0; l < rank_; ++l)
        beta_beta += Rat(beta.coords[k]) * beta.coords[l] * d_[k] * a_[k][l];
    return 2 * mu_beta / beta_beta;
  }

  std::vector<Rat> solve_cartan(std::vector<Rat> rhs) const {
    std::vector<std::vector<Rat>> m(rank_, std::vector<Rat>(rank_));
    for (int r = 0; r < rank_; ++r)
      for (int c = 0; c < rank_; ++c) m[r][c] = a_[r][c];
    for (int col = 0; col < rank_; ++col) {
      int piv = col;
      while (piv < rank_ && m[piv][col] == 0) ++piv;
      if (piv == rank_) throw std::logic_error("singular Cartan matrix");
      std::swap(m[piv], m[col]);
      std::swap(rhs[piv], rhs[col]);
      for (int r = 0; r < rank_; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const Rat f = m[r][col] / m[col][col];
        for (int c = col; c < rank_; ++c) m[r][c] -= f * m[col][c];
        rhs[r] -= f * rhs[col];
      }
    }
    std::vector<Rat> sol(rank_);
    for (int r = 0; r < rank_; ++r) sol[r] = rhs[r] / m[r][r];
    return sol;
  }

  IMat identity_matrix() const {
    IMat m(rank_, std::vector<long long>(rank_, 0));
    for (int i = 0; i < rank_; ++i) m[i][i] = 1;
    return m;
  }

  // M := M * S_i (root-coordinate matrix of s_i).
  void right_multiply_reflection(IMat& m, int i) const {
    // S_i = I - e_i (row i of cartan); (M S_i) col j = M col j - cartan(i,j) * M col i.
    for (int r = 0; r < rank_; ++r) {
      const long long mi = m[r][i - 1];
      if (mi == 0) continue;
      for (int j = 0; j < rank_; ++j) m[r][j] -= mi * a_[i - 1][j];
      // note: j == i-1 updated too: mi - mi*2 = -mi, correct since cartan(i,i)=2
    }
  }

  // Matrix of w^{-1} acting on root coordinates.
  IMat word_matrix_inverse(const WeylWord& w) const {
    IMat m = identity_matrix();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      check_index(*it);
      right_multiply_reflection(m, *it);
    }
    return m;
  }

  // True iff column i holds a negative root (roots are sign-definite).
  bool column_negative(const IMat& m, int col) const {
    bool has_neg = false, has_pos = false;
    for (int r = 0; r < rank_; ++r) {
      if (m[r][col] < 0) has_neg = true;
      if (m[r][col] > 0) has_pos = true;
    }
    if (has_neg && has_pos) throw std::logic_error("mixed-sign root column");
    return has_neg;
  }

  bool bruhat_rec(const WeylWord& u, const WeylWord& wred, std::size_t pos,
                  std::map<std::pair<std::vector<int>, std::size_t>, bool>& memo) const {
    if (u.empty()) return true;
    if (wred.size() - pos < u.size()) return false;
    const auto key = std::make_pair(u.letters, pos);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const int s = wred.letters[pos];
    bool res = bruhat_rec(u, wred, pos + 1, memo);
    if (!res && is_left_descent(s, u)) {
      WeylWord su{std::vector<int>{s}};
      su.letters.insert(su.letters.end(), u.letters.begin(), u.letters.end());
      res = bruhat_rec(lex_min_reduced_word(su), wred, pos + 1, memo);
    }
    memo[key] = res;
    return res;
  }

  // l(s_i u) < l(u), i.e. u^{-1}(alpha_i) < 0.
  bool is_left_descent(int i, const WeylWord& u) const {
    IMat inv = word_matrix_inverse(u);
    return column_negative(inv, i - 1);
  }
};

inline CartanDatum CartanDatum::from_type(const std::string& type) {
  if (type.size() < 2) throw ParseError("Cartan type '" + type + "' too short");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
  int rank = 0;
  try {
    rank = std::stoi(type.substr(1));
  } catch (const std::exception&) {
    throw ParseError("bad rank in Cartan type '" + type + "'");
  }
  auto require = [&](bool ok) {
    if (!ok) throw ParseError("unsupported Cartan type '" + type + "'");
  };

  CartanDatum cd;
  cd.letter_ = letter;
  cd.rank_ = rank;
  cd.a_.assign(rank, std::vector<int>(rank, 0));
  cd.d_.assign(rank, 1);
  for (int i = 0; i < rank; ++i) cd.a_[i][i] = 2;
  auto bond = [&](int i, int j, int aij, int aji) {  // 1-based
    cd.a_[i - 1][j - 1] = aij;
    cd.a_[j - 1][i - 1] = aji;
  };
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) bond(i, i + 1, -1, -1);
  };

  switch (letter) {
    case 'A':
      require(rank >= 1);
      chain(1, rank);
      break;
    case 'B':
      require(rank >= 2);
      chain(1, rank - 1);
      bond(rank - 1, rank, -1, -2);
      for (int i = 0; i < rank - 1; ++i) cd.d_[i] = 2;
      break;
    case 'C':
      require(rank >= 2);
      chain(1, rank - 1);
      bond(rank - 1, rank, -2, -1);
      cd.d_[rank - 1] = 2;
      break;
    case 'D':
      require(rank >= 4);
      chain(1, rank - 1);
      bond(rank - 2, rank, -1, -1);
      break;
    case 'E': {
      require(rank >= 6 && rank <= 8);
      // Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4.
      bond(1, 3, -1, -1);
      for (int i = 3; i < rank; ++i) bond(i, i + 1, -1, -1);
      bond(2, 4, -1, -1);
      break;
    }
    case 'F':
      require(rank == 4);
      bond(1, 2, -1, -1);
      bond(2, 3, -1, -2);
      bond(3, 4, -1, -1);
      cd.d_[0] = cd.d_[1] = 2;
      break;
    case 'G':
      require(rank == 2);
      bond(1, 2, -3, -1);
      cd.d_[1] = 3;
      break;
    default:
      require(false);
  }
  return cd;
}

}  // namespace qcb
