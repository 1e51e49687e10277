#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ncminor/graph.hpp"

namespace ncminor {

// GF(q) for prime powers q <= 256. Elements are integers 0..q-1; for
// extension fields the integer packs the polynomial coefficients in base p
// (least significant digit = constant term). Arithmetic goes through full
// lookup tables built once at construction.
class Field {
 public:
  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  // Returns (p, m) with q = p^m, or (0, 0) if q is not a prime power.
  static std::pair<int, int> prime_power(int q) {
    if (q < 2) return {0, 0};
    for (int p = 2; p <= q; ++p) {
      if (!is_prime(p)) continue;
      int m = 0, x = q;
      while (x % p == 0) {
        x /= p;
        ++m;
      }
      if (x == 1) return {p, m};
      if (q % p == 0) return {0, 0};
    }
    return {0, 0};
  }

  static Field make(int q) {
    auto [p, m] = prime_power(q);
    if (p == 0)
      throw Error(ErrorKind::precondition,
                  "field order " + std::to_string(q) + " is not a prime power");
    if (q > 256)
      throw Error(ErrorKind::precondition,
                  "field order " + std::to_string(q) + " above supported 256");
    return Field(q, p, m);
  }

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return m_; }
  int alpha() const { return alpha_; }
  const std::vector<int>& reduction_poly() const { return reduction_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int inv(int a) const {
    if (a == 0) throw Error(ErrorKind::precondition, "inverse of zero");
    return inv_[a];
  }
  int pow(int a, int e) const {
    int r = 1;
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

 private:
  Field(int q, int p, int m) : q_(q), p_(p), m_(m) {
    if (m_ == 1) {
      build_tables([&](int a, int b) { return (a + b) % p_; },
                   [&](int a, int b) { return (a * b) % p_; });
    } else {
      reduction_ = smallest_irreducible(p_, m_);
      build_tables([&](int a, int b) { return add_poly(a, b); },
                   [&](int a, int b) { return mul_poly(a, b); });
    }
    alpha_ = find_primitive();
  }

  template <typename Add, typename Mul>
  void build_tables(Add add_fn, Mul mul_fn) {
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.assign(q_, -1);
    inv_.assign(q_, -1);
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) {
        add_[a * q_ + b] = add_fn(a, b);
        mul_[a * q_ + b] = mul_fn(a, b);
        if (add_[a * q_ + b] == 0) neg_[a] = b;
        if (mul_[a * q_ + b] == 1) inv_[a] = b;
      }
    }
  }

  std::vector<int> unpack(int a) const {
    std::vector<int> digits(m_, 0);
    for (int i = 0; i < m_ && a > 0; ++i) {
      digits[i] = a % p_;
      a /= p_;
    }
    return digits;
  }
  int pack(const std::vector<int>& digits) const {
    int a = 0;
    for (int i = m_ - 1; i >= 0; --i) a = a * p_ + digits[i];
    return a;
  }

  int add_poly(int a, int b) const {
    auto da = unpack(a), db = unpack(b);
    for (int i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
    return pack(da);
  }

  int mul_poly(int a, int b) const {
    auto da = unpack(a), db = unpack(b);
    std::vector<int> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    // Reduce by x^m = -(reduction tail), top-down.
    for (int d = 2 * m_ - 2; d >= m_; --d) {
      int coeff = prod[d];
      if (coeff == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < m_; ++i)
        prod[d - m_ + i] =
            ((prod[d - m_ + i] - coeff * reduction_[i]) % p_ + p_ * p_) % p_;
    }
    prod.resize(m_);
    return pack(prod);
  }

  // Coefficients c[0..m-1] of the monic irreducible x^m + c[m-1]x^{m-1}+...+c[0]
  // with the smallest packed integer value.
  static std::vector<int> smallest_irreducible(int p, int m) {
    int pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    for (int packed = 0; packed < pm; ++packed) {
      std::vector<int> tail(m);
      int x = packed;
      for (int i = 0; i < m; ++i) {
        tail[i] = x % p;
        x /= p;
      }
      if (is_irreducible(tail, p, m)) return tail;
    }
    throw Error(ErrorKind::precondition, "no irreducible polynomial found");
  }

  // Trial division by every monic polynomial of degree 1..m/2 over GF(p).
  static bool is_irreducible(const std::vector<int>& tail, int p, int m) {
    std::vector<int> poly(tail);
    poly.push_back(1);  // monic of degree m
    for (int d = 1; 2 * d <= m; ++d) {
      int count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      for (int packed = 0; packed < count; ++packed) {
        std::vector<int> div(d + 1);
        int x = packed;
        for (int i = 0; i < d; ++i) {
          div[i] = x % p;
          x /= p;
        }
        div[d] = 1;
        if (divides(div, poly, p)) return false;
      }
    }
    return true;
  }

  static bool divides(const std::vector<int>& div, std::vector<int> rem,
                      int p) {
    int dd = static_cast<int>(div.size()) - 1;
    for (int d = static_cast<int>(rem.size()) - 1; d >= dd; --d) {
      int coeff = rem[d] % p;
      if (coeff == 0) continue;
      for (int i = 0; i <= dd; ++i)
        rem[d - dd + i] = ((rem[d - dd + i] - coeff * div[i]) % p + p * p) % p;
    }
    for (int i = 0; i < dd; ++i)
      if (rem[i] % p != 0) return false;
    return true;
  }

  // Smallest element (canonical integer order) of multiplicative order q-1.
  int find_primitive() const {
    for (int a = 1; a < q_; ++a) {
      int x = a;
      int order = 1;
      while (x != 1) {
        x = mul(x, a);
        ++order;
      }
      if (order == q_ - 1) return a;
    }
    throw Error(ErrorKind::precondition, "no primitive element");
  }

  int q_ = 0, p_ = 0, m_ = 0;
  int alpha_ = 0;
  std::vector<int> reduction_;  // tail coefficients, degree 0..m-1
  std::vector<int> add_, mul_, neg_, inv_;
};

// Encoding vector in GF(q)^2.
struct Vec2 {
  int a = 0;
  int b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline bool linearly_independent(const Vec2& u, const Vec2& v, const Field& f) {
  return f.sub(f.mul(u.a, v.b), f.mul(u.b, v.a)) != 0;
}

// The q+1 pairwise independent vectors
// (0,1), (1,0), (1,1), (1,alpha), ..., (1,alpha^{q-2}), in that order.
inline std::vector<Vec2> standard_vectors(const Field& f) {
  std::vector<Vec2> vs;
  vs.reserve(f.q() + 1);
  vs.push_back({0, 1});
  vs.push_back({1, 0});
  int x = 1;
  for (int k = 0; k <= f.q() - 2; ++k) {
    vs.push_back({1, x});
    x = f.mul(x, f.alpha());
  }
  return vs;
}

inline bool is_prime_power(int q) { return Field::prime_power(q).first != 0; }

inline int smallest_prime_power_at_least(int x) {
  int q = std::max(2, x);
  while (!is_prime_power(q)) ++q;
  return q;
}

}  // namespace ncminor
