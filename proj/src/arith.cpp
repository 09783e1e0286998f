#include "twodescent/arith.hpp"

#include <algorithm>
#include <map>

#include "twodescent/error.hpp"

namespace twodescent {

namespace {

constexpr std::uint64_t kTrialLimit = 1000000;

// Miller-Rabin with the first 13 prime bases is exact below this bound.
const Int& mr_certified_bound() {
  static const Int bound("3317044064679887385961981");
  return bound;
}

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

bool miller_rabin_round(const Int& n, const Int& d, unsigned s, unsigned long base) {
  Int a = base;
  if (a % n == 0) return true;
  Int x;
  Int n1 = n - 1;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Int rho_split(const Int& n) {
  constexpr unsigned long kMaxIterations = 1ul << 22;
  for (unsigned long c = 1; c <= 24; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    unsigned long total = 0;
    const unsigned long m = 128;
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
      total += r;
    } while (g == 1 && total < kMaxIterations);
    if (g == n) {
      do {
        ys = f(ys);
        Int diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

void split_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    if (!primality_is_certified(n)) {
      throw UnfactoredCofactor("unfactored cofactor " + n.get_str() +
                               ": probable prime beyond the certified range");
    }
    ++out[n];
    return;
  }
  Int root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    std::map<Int, unsigned> sub;
    split_into(root, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  Int factor = rho_split(n);
  if (factor == 0) throw UnfactoredCofactor("unfactored cofactor " + n.get_str());
  split_into(factor, out);
  split_into(Int(n / factor), out);
}

}  // namespace

// SquareClass --------------------------------------------------------------

SquareClass SquareClass::from_squarefree(const Int& rep) {
  if (rep == 0) throw DomainError("square class of zero");
  if (squarefree_part(rep).rep() != rep) {
    throw DomainError("not squarefree: " + rep.get_str());
  }
  return SquareClass(rep);
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.rep_.get_mpz_t(), b.rep_.get_mpz_t());
  return SquareClass(Int(a.rep_ * b.rep_ / (g * g)));
}

bool AbsThenSign::operator()(const SquareClass& a, const SquareClass& b) const {
  int c = mpz_cmpabs(a.rep().get_mpz_t(), b.rep().get_mpz_t());
  if (c != 0) return c < 0;
  return a.rep() < b.rep();
}

// Factorization ------------------------------------------------------------

Int Factorization::value() const {
  Int v = sign;
  for (const auto& f : factors) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    v *= pe;
  }
  return v;
}

std::vector<Int> Factorization::primes() const {
  std::vector<Int> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

unsigned val(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("valuation of zero is infinite");
  if (p < 2) throw DomainError("valuation base must be a prime");
  Int rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long b : kBases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned long b : kBases) {
    if (!miller_rabin_round(n, d, s, b)) return false;
  }
  if (n >= mr_certified_bound()) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  }
  return true;
}

bool primality_is_certified(const Int& n) { return n < mr_certified_bound(); }

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

Factorization factorize(const Int& n) {
  if (n == 0) throw DomainError("cannot factor zero");
  Factorization out;
  out.sign = sgn(n);
  Int rest = abs(n);
  for (std::uint64_t p : trial_primes()) {
    if (rest == 1) break;
    if (Int(p) * p > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out.factors.push_back({Int(p), e});
  }
  if (rest > 1) {
    std::map<Int, unsigned> big;
    split_into(rest, big);
    for (auto& [p, e] : big) out.factors.push_back({p, e});
  }
  return out;
}

SquareClass squarefree_part(const Int& n) {
  if (n == 0) throw DomainError("square class of zero");
  Int rep = sgn(n);
  for (const auto& f : factorize(n).factors) {
    if (f.exponent % 2 == 1) rep *= f.prime;
  }
  return SquareClass(rep);
}

Int square_part_root(const Int& n) {
  if (n == 0) throw DomainError("square part of zero");
  Int root = 1;
  for (const auto& f : factorize(n).factors) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent / 2);
    root *= pe;
  }
  return root;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Residue symbols ------------------------------------------------------------

namespace detail {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int legendre_u64(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace detail

namespace {

void require_odd_prime(const Int& p) {
  if (p == 2 || !is_prime(p)) throw DomainError("modulus must be an odd prime: " + p.get_str());
}

Int powm(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  Int b = base % mod;
  if (b < 0) b += mod;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

}  // namespace

int legendre(const Int& a, const Int& p) {
  require_odd_prime(p);
  Int r = a % p;
  if (r == 0) return 0;
  return powm(a, Int((p - 1) / 2), p) == 1 ? 1 : -1;
}

bool is_padic_square(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("is_padic_square: zero");
  if (!is_prime(p)) throw DomainError("is_padic_square: not a prime: " + p.get_str());
  Int unit;
  unsigned long e = mpz_remove(unit.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  if (e % 2 != 0) return false;
  if (p == 2) {
    Int r = unit % 8;
    if (r < 0) r += 8;
    return r == 1;
  }
  return legendre(unit, p) == 1;
}

bool quartic_residue_exp(const Int& a, const Int& p) {
  require_odd_prime(p);
  if (p % 4 != 1) throw DomainError("quartic residue test needs p = 1 (mod 4)");
  if (a % p == 0) throw DomainError("quartic residue test needs p not dividing a");
  if (legendre(a, p) != 1) return false;
  return powm(a, Int((p - 1) / 4), p) == 1;
}

TwoSquares two_squares(const Int& p) {
  if (p % 4 != 1 || !is_prime(p)) {
    throw DomainError("two_squares needs a prime p = 1 (mod 4): " + p.get_str());
  }
  // A square root of -1 from any non-residue c: c^((p-1)/4).
  Int c = 2;
  while (legendre(c, p) != -1) ++c;
  Int x = powm(c, Int((p - 1) / 4), p);
  // Cornacchia: Euclid on (p, x) until the remainder drops below sqrt(p).
  Int a = p, b = x;
  while (b * b > p) {
    Int t = a % b;
    a = b;
    b = t;
  }
  Int rem = p - b * b;
  Int other;
  mpz_sqrt(other.get_mpz_t(), rem.get_mpz_t());
  if (other * other != rem) throw Error("two_squares: Cornacchia step failed for " + p.get_str());
  b = abs(b);
  if (mpz_odd_p(b.get_mpz_t())) return {b, other};
  return {other, b};
}

bool quartic_residue_gauss(const Int& p) {
  if (p % 8 != 1) throw DomainError("Gauss criterion needs p = 1 (mod 8)");
  TwoSquares ts = two_squares(p);
  return Int(ts.odd * ts.even) % 8 == 0;
}

}  // namespace twodescent
