#ifndef TWODESCENT_LOCALSOLVE_HPP
#define TWODESCENT_LOCALSOLVE_HPP

// Local solvability of y^2 = f(z) for an integer quartic f, over R and Q_p.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twodescent/curve.hpp"

namespace twodescent {

/// f(z) = c4 z^4 + c3 z^3 + c2 z^2 + c1 z + c0, stored high degree first.
class QuarticForm {
 public:
  QuarticForm(Int c4, Int c3, Int c2, Int c1, Int c0);
  explicit QuarticForm(std::array<Int, 5> coeffs);

  /// c[0] = c4, ..., c[4] = c0.
  const std::array<Int, 5>& coeffs() const { return c_; }
  const Int& leading() const { return c_[0]; }
  const Int& constant() const { return c_[4]; }
  int degree() const;

  Int operator()(const Int& z) const;
  Rat operator()(const Rat& z) const;
  Int derivative(const Int& z) const;

  /// n^4 f(m/n).
  Int homogeneous(const Int& m, const Int& n) const;

  /// Discriminant of the binary quartic form (invariant under reversal).
  Int discriminant() const;

  /// t^4 f(1/t): its value at t = 0 is the leading coefficient, so its Z_p
  /// points near 0 are the points of the smooth model at infinity.
  QuarticForm reversed() const;

  /// c^4 f(z / c) for c != 0.
  QuarticForm rescaled(const Int& c) const;

  QuarticForm operator*(const Int& m) const;

  std::string str() const;
  bool operator==(const QuarticForm&) const = default;

 private:
  std::array<Int, 5> c_;
};

enum class WitnessKind {
  none,
  square_value,  ///< f(z) is a nonzero square in the completion
  root,          ///< f(z) = 0 exactly
  hensel_root,   ///< z approximates a root of f in Z_p (Hensel)
  infinity,      ///< point at infinity of the smooth model
};

struct LocalVerdict {
  bool soluble = false;
  WitnessKind kind = WitnessKind::none;
  std::optional<Rat> z;
  std::string note;
};

/// Residues r mod p^k (ascending) with f(r) congruent to a square mod p^k.
/// Exhaustive; test oracle only. Throws DomainError if p^k > 10^7.
std::vector<std::uint64_t> brute_mod_oracle(const QuarticForm& f, const Int& p, unsigned k);

/// Points with z in Z_p. Worklist over residue classes with a depth cap of
/// val_p(disc) + 6; throws PrecisionExhausted beyond it.
LocalVerdict zp_soluble(const QuarticForm& f, const Int& p);

/// Points of the smooth projective model over Q_p (affine or at infinity).
LocalVerdict qp_soluble(const QuarticForm& f, const Int& p);

/// Some real z has f(z) >= 0. Exact, via a Sturm sequence.
LocalVerdict r_soluble(const QuarticForm& f);

/// Number of distinct real roots of a nonzero rational polynomial
/// (coefficients high degree first).
unsigned count_real_roots(std::vector<Rat> poly);

}  // namespace twodescent

#endif  // TWODESCENT_LOCALSOLVE_HPP
