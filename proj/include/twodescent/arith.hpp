#ifndef TWODESCENT_ARITH_HPP
#define TWODESCENT_ARITH_HPP

// Exact integer number theory: valuations, factorization, square classes,
// residue symbols and sums of two squares.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace twodescent {

using Int = mpz_class;

struct PrimePower {
  Int prime;
  unsigned exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

/// sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  Int value() const;
  std::vector<Int> primes() const;
  bool operator==(const Factorization&) const = default;
};

/// Element of Q*/(Q*)^2, stored as a signed squarefree integer.
class SquareClass {
 public:
  SquareClass() : rep_(1) {}

  /// Wraps an integer that is already squarefree. Throws DomainError otherwise.
  static SquareClass from_squarefree(const Int& rep);

  const Int& rep() const { return rep_; }
  bool is_one() const { return rep_ == 1; }
  int sign() const { return sgn(rep_); }
  std::string str() const { return rep_.get_str(); }

  // Both reps squarefree, so cls(x*y) = x*y / gcd(x,y)^2 without factoring.
  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
  SquareClass& operator*=(const SquareClass& other) { return *this = *this * other; }

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }

 private:
  friend SquareClass squarefree_part(const Int& n);
  explicit SquareClass(Int rep) : rep_(std::move(rep)) {}
  Int rep_;
};

/// Orders classes by |rep|, then sign (-1 before 1). This is the ordering used
/// for every printed or serialized set of square classes.
struct AbsThenSign {
  bool operator()(const SquareClass& a, const SquareClass& b) const;
};

// Valuations and factoring ------------------------------------------------

/// Largest k with p^k | n. Throws DomainError for n = 0.
unsigned val(const Int& n, const Int& p);

/// Deterministic Miller-Rabin; exact for n < 3.3e24, probabilistic above.
bool is_prime(const Int& n);

/// True when is_prime(n) is a proof, not just strong evidence.
bool primality_is_certified(const Int& n);

/// Trial division through 10^6, then Brent-Pollard rho. Throws
/// UnfactoredCofactor when a cofactor resists splitting or cannot be
/// certified prime.
Factorization factorize(const Int& n);

/// sign(n) * product of the primes with odd valuation in n.
SquareClass squarefree_part(const Int& n);

/// Largest m with m^2 | n (n != 0). Uses factorize.
Int square_part_root(const Int& n);

/// Integer square root test. Negative numbers are never squares.
bool is_square(const Int& n);

/// Primes <= limit, by sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Residue symbols ---------------------------------------------------------

/// Legendre symbol via Euler's criterion a^((p-1)/2) mod p.
/// Throws DomainError unless p is an odd prime.
int legendre(const Int& a, const Int& p);

/// True iff n is a square in Q_p (n != 0).
bool is_padic_square(const Int& n, const Int& p);

/// True iff x^4 = a (mod p) is solvable, for p = 1 (mod 4) and p not dividing a.
bool quartic_residue_exp(const Int& a, const Int& p);

/// p = A^2 + B^2 with A odd, B even, both positive.
struct TwoSquares {
  Int odd;
  Int even;
};
TwoSquares two_squares(const Int& p);

/// Gauss: for p = 1 (mod 8), 2 is a quartic residue iff A*B = 0 (mod 8).
bool quartic_residue_gauss(const Int& p);

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Legendre symbol for a machine-size odd prime, no primality check.
int legendre_u64(std::uint64_t a, std::uint64_t p);

}  // namespace detail

}  // namespace twodescent

#endif  // TWODESCENT_ARITH_HPP
