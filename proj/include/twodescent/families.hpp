#ifndef TWODESCENT_FAMILIES_HPP
#define TWODESCENT_FAMILIES_HPP

// Closed forms for E_p: y^2 = x^3 + p x, E_D: y^2 = x^3 + D x and
// y^2 = x^3 + D, with hooks back into the generic descent.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twodescent/descent.hpp"

namespace twodescent {

struct RankResult {
  enum class Kind { exact, exact_conditional_on_finite_sha, interval };
  Kind kind = Kind::interval;
  int lo = 0;
  int hi = 0;
  std::string note;

  bool operator==(const RankResult&) const = default;
};

std::string kind_name(RankResult::Kind kind);

/// (Sel^phi(E_p), Sel^phi_hat(E'_p)) by p mod 16. Throws DomainError unless
/// p is an odd prime.
std::pair<SelmerSet, SelmerSet> ep_selmer(const Int& p);

/// rank + dim_2 Sha(E_p)[2]: 0, 1 or 2 by p mod 16.
int ep_rank_sha_dim(const Int& p);

/// Closed form where one exists; for p = 1, 9 (mod 16) with 2 a quartic
/// residue, a point search on the homogeneous spaces up to height H.
RankResult ep_rank(const Int& p, const Int& H);

/// True iff x^4 = 2 (mod p) has a solution, for an odd prime p.
bool two_is_quartic_residue(const Int& p);

bool is_power_free(const Int& D, unsigned k);

/// D = u^k * r with r k-th-power-free and u > 0. Returns (r, u).
std::pair<Int, Int> reduce_power_free(const Int& D, unsigned k);

/// Torsion of y^2 = x^3 + D x, D nonzero and fourth-power-free.
TorsionGroup edx_torsion(const Int& D);

/// 2 * (number of primes dividing 2D) - 1.
int edx_rank_upper(const Int& D);

/// Torsion of y^2 = x^3 + D, D nonzero and sixth-power-free. Points are on
/// that model, not the shifted one.
TorsionGroup edconst_torsion(const Int& D);

struct TableOptions {
  std::optional<int> mod8;       // keep p with p = mod8 (mod 8)
  std::optional<bool> quartic2;  // keep p with two_is_quartic_residue(p) == quartic2
  Int height = 20;
  unsigned jobs = 1;
};

struct TableRow {
  Int p;
  unsigned sel_phi_dim = 0;
  unsigned sel_phi_hat_dim = 0;
  int rank_sha_dim = 0;
  RankResult rank;

  bool operator==(const TableRow&) const = default;
};

/// Rows for the odd primes p <= p_max passing the filters, ascending in p.
/// Throws BudgetExceeded for p_max > 10^6.
std::vector<TableRow> ep_table(const Int& p_max, const TableOptions& options);

}  // namespace twodescent

#endif  // TWODESCENT_FAMILIES_HPP
