#ifndef TWODESCENT_TESTS_ORACLES_HPP
#define TWODESCENT_TESTS_ORACLES_HPP

// Brute-force reference implementations. Deliberately naive and independent
// of the library's algorithms; only plain integer arithmetic is shared.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Rat = mpq_class;

inline std::map<Int, unsigned> factor(Int n) {
  std::map<Int, unsigned> out;
  if (n < 0) n = -n;
  for (Int d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<long> primes_below(long n) {
  std::vector<long> out;
  for (long p = 2; p < n; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

inline Int squarefree(const Int& n) {
  Int r = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n)) {
    if (e % 2) r *= p;
  }
  return r;
}

inline long mod(long a, long m) { return ((a % m) + m) % m; }

// +1, -1 or 0 by listing the squares mod p.
inline int legendre(long a, long p) {
  a = mod(a, p);
  if (a == 0) return 0;
  for (long x = 1; x < p; ++x) {
    if (x * x % p == a) return 1;
  }
  return -1;
}

inline bool is_fourth_power_mod(long a, long p) {
  a = mod(a, p);
  for (long x = 0; x < p; ++x) {
    if (x * x % p * x % p * x % p == a) return true;
  }
  return false;
}

// p = A^2 + B^2 with A odd, B even, both positive.
inline std::pair<long, long> two_squares(long p) {
  for (long a = 1; a * a < p; a += 2) {
    for (long b = 2; a * a + b * b <= p; b += 2) {
      if (a * a + b * b == p) return {a, b};
    }
  }
  return {0, 0};
}

// #E(F_q) including infinity, by counting (x, y) pairs.
inline long count_points(long a2, long a4, long a6, long q) {
  std::vector<long> sq_count(q, 0);
  for (long y = 0; y < q; ++y) ++sq_count[y * y % q];
  long n = 1;
  for (long x = 0; x < q; ++x) {
    long v = mod(mod(mod(x * x % q * x, q) + mod(a2, q) * (x * x % q), q) + mod(a4, q) * x % q + mod(a6, q), q);
    n += sq_count[v];
  }
  return n;
}

// Affine group law on y^2 = x^3 + a2 x^2 + a4 x + a6, with a flag for O.
struct Pt {
  bool inf = true;
  Rat x, y;
};

inline Pt add(const Int& a2, const Int& a4, const Pt& P, const Pt& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  Rat lambda;
  if (P.x == Q.x) {
    if (P.y + Q.y == 0) return Pt{};
    lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4) / (2 * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  Pt R;
  R.inf = false;
  R.x = lambda * lambda - a2 - P.x - Q.x;
  R.y = lambda * (P.x - R.x) - P.y;
  return R;
}

// Lutz-Nagell torsion: integral points with y = 0 or y | disc, kept when
// every multiple is integral and O is reached. Integer x found by the
// rational root theorem on x^3 + a2 x^2 + a4 x + (a6 - y^2).
struct TorsionSummary {
  unsigned order = 1;
  unsigned two_torsion = 1;  // including O
  std::vector<Pt> points;    // excluding O
};

inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out;
  Int m = abs(n);
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      if (d * d != m) out.push_back(m / d);
    }
  }
  return out;
}

inline std::vector<Int> integer_roots(const Int& a2, const Int& a4, const Int& c) {
  std::vector<Int> out;
  auto h = [&](const Int& x) { return Int(x * x * x + a2 * x * x + a4 * x + c); };
  if (c == 0) {
    out.push_back(0);
    // x^2 + a2 x + a4 = 0
    Int disc = a2 * a2 - 4 * a4;
    if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
      Int s = sqrt(disc);
      for (const Int& num : {Int(-a2 + s), Int(-a2 - s)}) {
        if (num % 2 == 0) out.push_back(num / 2);
      }
    }
  } else {
    for (const Int& d : divisors(c)) {
      for (const Int& x : {d, Int(-d)}) {
        if (h(x) == 0) out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline TorsionSummary torsion(const Int& a2, const Int& a4, const Int& a6) {
  const Int b2 = 4 * a2, b4 = 2 * a4, b6 = 4 * a6, b8 = 4 * a2 * a6 - a4 * a4;
  const Int disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  // On this model 16 * (cubic discriminant) = disc. The weak form of
  // Lutz-Nagell (y divides the cubic discriminant) is used on purpose.
  const Int cubic_disc = disc / 16;
  std::vector<Int> ys{0};
  for (const Int& d : divisors(cubic_disc)) ys.push_back(d);
  TorsionSummary out;
  for (const Int& y : ys) {
    for (const Int& x : integer_roots(a2, a4, a6 - y * y)) {
      std::vector<Int> signs{y};
      if (y != 0) signs.push_back(-y);
      for (const Int& sy : signs) {
        Pt P{false, Rat(x), Rat(sy)};
        Pt Q = P;
        bool torsion_point = false;
        for (int k = 1; k <= 12; ++k) {
          if (Q.inf) {
            torsion_point = true;
            break;
          }
          if (Q.x.get_den() != 1 || Q.y.get_den() != 1) break;
          Q = add(a2, a4, Q, P);
        }
        if (torsion_point) {
          out.points.push_back(P);
          if (y == 0) ++out.two_torsion;
        }
      }
    }
  }
  out.order = static_cast<unsigned>(out.points.size()) + 1;
  return out;
}

// Invariants [n1, n2] (n1 | n2) or [n] or [] from order and 2-torsion count.
inline std::vector<unsigned> torsion_invariants(const TorsionSummary& t) {
  if (t.order == 1) return {};
  if (t.two_torsion == 4) return {2, t.order / 2};
  return {t.order};
}

// Local certificate at depth K: some r mod p^K with e = v(f(r)) < K,
// e + gap <= K, and f(r) a p-adic square. Every z = r (mod p^K) then has
// f(z) in the same square class as f(r). `only_multiples_of_p` restricts r
// to pZ (used for the reversed quartic near t = 0).
inline bool padic_unit_square(std::uint64_t unit, std::uint64_t p) {
  if (p == 2) return unit % 8 == 1;
  return legendre(static_cast<long>(unit % p), static_cast<long>(p)) == 1;
}

inline bool local_certificate(const std::vector<long>& coeffs_high_first, long p, unsigned K,
                              bool only_multiples_of_p = false) {
  std::uint64_t m = 1;
  for (unsigned i = 0; i < K; ++i) m *= static_cast<std::uint64_t>(p);
  const unsigned gap = p == 2 ? 3 : 1;
  std::vector<std::uint64_t> c;
  for (long v : coeffs_high_first) c.push_back(static_cast<std::uint64_t>(mod(v, static_cast<long>(m))));
  for (std::uint64_t r = 0; r < m; r += (only_multiples_of_p ? static_cast<std::uint64_t>(p) : 1)) {
    std::uint64_t v = 0;
    for (std::uint64_t ci : c) v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * r + ci) % m);
    if (v == 0) continue;
    unsigned e = 0;
    std::uint64_t u = v;
    while (u % static_cast<std::uint64_t>(p) == 0) {
      u /= static_cast<std::uint64_t>(p);
      ++e;
    }
    if (e % 2 != 0 || e + gap > K) continue;
    if (padic_unit_square(u, static_cast<std::uint64_t>(p))) return true;
  }
  return false;
}

}  // namespace oracle

#endif  // TWODESCENT_TESTS_ORACLES_HPP
