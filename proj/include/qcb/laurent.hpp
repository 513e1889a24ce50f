// Exact arithmetic in Z[q,q^-1]: sparse Laurent polynomials with
// big-integer coefficients, quantum integers/binomials, the bar
// involution q -> q^-1, and the bar-symmetric correction used by the
// triangular reduction.
#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace qcb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct NonDivisibleError : std::runtime_error {
  explicit NonDivisibleError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse Laurent polynomial over Z. Zero coefficients are never stored,
// so equality is structural.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(Int c) {
    if (c != 0) terms_[0] = std::move(c);
  }
  explicit LaurentPoly(long long c) : LaurentPoly(Int(c)) {}

  // c * q^k
  static LaurentPoly q_power(int k, Int c = Int(1)) {
    LaurentPoly p;
    if (c != 0) p.terms_[k] = std::move(c);
    return p;
  }
  static LaurentPoly one() { return LaurentPoly(Int(1)); }

  const std::map<int, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Int(0) : it->second;
  }
  int min_exp() const { return terms_.begin()->first; }    // pre: nonzero
  int max_exp() const { return terms_.rbegin()->first; }   // pre: nonzero

  void add_term(int k, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  bool operator==(const LaurentPoly&) const = default;
  auto operator<=>(const LaurentPoly&) const = default;

  // The involution q -> q^-1.
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.terms_[-k] = c;
    return r;
  }
  bool is_bar_symmetric() const { return *this == bar(); }

  // Membership in qZ[q]: every exponent >= 1.
  bool in_qZq() const { return terms_.empty() || min_exp() >= 1; }

  Rat evaluate(const Rat& q) const {
    Rat acc = 0;
    for (const auto& [k, c] : terms_) {
      Rat p = 1;
      const Rat base = k >= 0 ? q : Rat(1) / q;
      for (int j = 0; j < (k >= 0 ? k : -k); ++j) p *= base;
      acc += Rat(c) * p;
    }
    return acc;
  }

  // Renders terms with exponents descending, e.g. "q^2+2+q^-2", "-q-q^-1".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [k, c] = *it;
      std::string t;
      Int a = c < 0 ? Int(-c) : c;
      if (k == 0) {
        t = a.str();
      } else {
        if (a != 1) t = a.str() + "*";
        t += "q";
        if (k != 1) t += "^" + std::to_string(k);
      }
      if (c < 0)
        out += "-" + t;
      else if (!out.empty())
        out += "+" + t;
      else
        out += t;
    }
    return out;
  }

  // Accepts the str() format; '*' between coefficient and q is optional.
  static LaurentPoly parse(const std::string& text) {
    LaurentPoly r;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i == text.size()) throw ParseError("empty Laurent polynomial");
    bool any = false;
    while (i < text.size()) {
      int sign = 1;
      skip_ws();
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') sign = -1;
        ++i;
        skip_ws();
      } else if (any) {
        throw ParseError("expected '+' or '-' in '" + text + "'");
      }
      std::string digits;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
      Int c = digits.empty() ? Int(1) : Int(digits);
      skip_ws();
      if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
      int k = 0;
      if (i < text.size() && text[i] == 'q') {
        ++i;
        k = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          int esign = 1;
          if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') esign = -1;
            ++i;
          }
          std::string ed;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ed += text[i++];
          if (ed.empty()) throw ParseError("missing exponent in '" + text + "'");
          k = esign * std::stoi(ed);
        }
      } else if (digits.empty()) {
        throw ParseError("malformed term in '" + text + "'");
      }
      r.add_term(k, sign > 0 ? c : Int(-c));
      any = true;
      skip_ws();
    }
    return r;
  }

 private:
  std::map<int, Int> terms_;
};

// [n]_alpha for q_alpha = q^d: q^{d(-n+1)} + q^{d(-n+3)} + ... + q^{d(n-1)}.
inline LaurentPoly q_int(long long n, int d) {
  if (n < 0) throw std::invalid_argument("q_int: negative n");
  LaurentPoly r;
  for (long long j = 0; j < n; ++j) r.add_term(static_cast<int>(d * (-n + 1 + 2 * j)), Int(1));
  return r;
}

inline std::optional<LaurentPoly> try_divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return LaurentPoly();
  // Greedy leading-term division. If b | a the quotient's exponents lie in
  // [min_exp(a)-min_exp(b), max_exp(a)-max_exp(b)], so crossing the lower
  // bound proves non-divisibility and bounds the loop.
  const int k_low = a.min_exp() - b.min_exp();
  LaurentPoly rem = a;
  LaurentPoly quot;
  while (!rem.is_zero()) {
    const int k = rem.max_exp() - b.max_exp();
    if (k < k_low) return std::nullopt;
    const Int lc_r = rem.coeff(rem.max_exp());
    const Int lc_b = b.coeff(b.max_exp());
    if (lc_r % lc_b != 0) return std::nullopt;
    const Int c = lc_r / lc_b;
    quot.add_term(k, c);
    rem -= LaurentPoly::q_power(k, c) * b;
  }
  return quot;
}

inline LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = try_divide_exact(a, b);
  if (!q) throw NonDivisibleError("divide_exact: " + a.str() + " not divisible by " + b.str());
  return *q;
}

inline LaurentPoly q_factorial(long long n, int d) {
  if (n < 0) throw std::invalid_argument("q_factorial: negative n");
  LaurentPoly r = LaurentPoly::one();
  for (long long j = 2; j <= n; ++j) r *= q_int(j, d);
  return r;
}

inline LaurentPoly q_binomial(long long n, long long k, int d) {
  if (k < 0 || k > n) throw std::invalid_argument("q_binomial: k out of range");
  return divide_exact(q_factorial(n, d), q_factorial(k, d) * q_factorial(n - k, d));
}

// The unique xi with bar(xi) = xi and z + xi in qZ[q]: writing z = sum a_k q^k,
// xi subtracts a_k at exponents +-k for every k <= 0.
inline LaurentPoly bar_symmetric_correction(const LaurentPoly& z) {
  LaurentPoly xi;
  for (const auto& [k, c] : z.terms()) {
    if (k > 0) continue;
    xi.add_term(k, -c);
    if (k != 0) xi.add_term(-k, -c);
  }
  return xi;
}

}  // namespace qcb
