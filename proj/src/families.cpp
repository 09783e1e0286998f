#include "twodescent/families.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "twodescent/error.hpp"

namespace twodescent {

namespace {

void require_odd_prime(const Int& p) {
  if (p < 3 || !is_prime(p)) throw DomainError("expected an odd prime, got " + p.get_str());
}

unsigned mod16(const Int& p) { return static_cast<unsigned>(Int(p % 16).get_ui()); }

SelmerSet classes(std::initializer_list<Int> reps) {
  SelmerSet out;
  for (const Int& r : reps) out.insert(squarefree_part(r));
  return out;
}

void require_nonzero(const Int& D) {
  if (D == 0) throw DomainError("D must be nonzero");
}

}  // namespace

std::string kind_name(RankResult::Kind kind) {
  switch (kind) {
    case RankResult::Kind::exact:
      return "exact";
    case RankResult::Kind::exact_conditional_on_finite_sha:
      return "exact_conditional_on_finite_sha";
    case RankResult::Kind::interval:
      return "interval";
  }
  return "interval";
}

std::pair<SelmerSet, SelmerSet> ep_selmer(const Int& p) {
  require_odd_prime(p);
  SelmerSet hat = classes({1, p});
  switch (mod16(p)) {
    case 7:
    case 11:
      return {classes({1, -p}), hat};
    case 3:
      return {classes({1, -p, -2, 2 * p}), hat};
    case 15:
      return {classes({1, -p, 2, -2 * p}), hat};
    case 5:
    case 13:
      // The p = 5 line is printed as {1, -p, -1, -p}; closure forces {+-1, +-p}.
      return {classes({1, -1, p, -p}), hat};
    default:
      return {classes({1, -1, 2, -2, p, -p, 2 * p, -2 * p}), hat};
  }
}

int ep_rank_sha_dim(const Int& p) {
  require_odd_prime(p);
  switch (mod16(p)) {
    case 7:
    case 11:
      return 0;
    case 1:
    case 9:
      return 2;
    default:
      return 1;
  }
}

bool two_is_quartic_residue(const Int& p) {
  require_odd_prime(p);
  if (p % 4 == 3) return legendre(2, p) == 1;  // x -> x^2 is a bijection on squares
  if (p % 8 == 5) return false;                 // 2 is not even a square
  return quartic_residue_gauss(p);
}

RankResult ep_rank(const Int& p, const Int& H) {
  const int bound = ep_rank_sha_dim(p);
  if (bound == 0) return {RankResult::Kind::exact, 0, 0, "Selmer group is the torsion image"};
  if (bound == 1) {
    return {RankResult::Kind::exact_conditional_on_finite_sha, 1, 1,
            "rank + dim Sha[2] = 1; rank 1 if Sha is finite"};
  }
  if (!quartic_residue_gauss(p)) {
    return {RankResult::Kind::exact, 0, 0,
            "2 is not a quartic residue: C_-1, C_2, C_-2 have no rational points"};
  }
  const DescentReport r = descent_report(Curve(0, p, 0), H);
  if (r.rank_lower == 2) {
    return {RankResult::Kind::exact, 2, 2, "certified by points up to height " + H.get_str()};
  }
  if (r.rank_lower == 1) {
    return {RankResult::Kind::interval, 1, 2,
            "one point class found up to height " + H.get_str() + "; rank 2 if Sha finite"};
  }
  return {RankResult::Kind::interval, 0, 2,
          "rank 0 or 2; no points up to height " + H.get_str() + ", conjecturally 0"};
}

bool is_power_free(const Int& D, unsigned k) {
  require_nonzero(D);
  for (const PrimePower& pp : factorize(D).factors) {
    if (pp.exponent >= k) return false;
  }
  return true;
}

std::pair<Int, Int> reduce_power_free(const Int& D, unsigned k) {
  require_nonzero(D);
  Int r = D < 0 ? -1 : 1;
  Int u = 1;
  for (const PrimePower& pp : factorize(D).factors) {
    Int q;
    mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent / k);
    u *= q;
    mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent % k);
    r *= q;
  }
  return {r, u};
}

TorsionGroup edx_torsion(const Int& D) {
  if (!is_power_free(D, 4)) throw DomainError("D = " + D.get_str() + " is not fourth-power-free");
  if (D == 4) return make_torsion({4}, {Point(2, 4)});
  if (is_square(-D)) {
    Int s;
    Int m = -D;
    mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
    return make_torsion({2, 2}, {Point(0, 0), Point(Rat(s), 0)});
  }
  return make_torsion({2}, {Point(0, 0)});
}

int edx_rank_upper(const Int& D) {
  require_nonzero(D);
  return 2 * static_cast<int>(factorize(2 * D).factors.size()) - 1;
}

TorsionGroup edconst_torsion(const Int& D) {
  if (!is_power_free(D, 6)) throw DomainError("D = " + D.get_str() + " is not sixth-power-free");
  if (D == 1) return make_torsion({6}, {Point(2, 3)});
  if (is_square(D)) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());
    return make_torsion({3}, {Point(0, Rat(s))});
  }
  if (D == -432) return make_torsion({3}, {Point(12, 36)});
  Int c;
  if (mpz_root(c.get_mpz_t(), D.get_mpz_t(), 3) != 0) {
    return make_torsion({2}, {Point(Rat(-c), 0)});
  }
  return make_torsion({});
}

std::vector<TableRow> ep_table(const Int& p_max, const TableOptions& options) {
  if (p_max > 1000000) throw BudgetExceeded("table limit is 10^6, got " + p_max.get_str());
  std::vector<Int> primes;
  if (p_max >= 3) {
    for (std::uint64_t q : primes_up_to(p_max.get_ui())) {
      if (q == 2) continue;
      Int p(static_cast<unsigned long>(q));
      if (options.mod8 && Int(p % 8) != *options.mod8) continue;
      if (options.quartic2 && two_is_quartic_residue(p) != *options.quartic2) continue;
      primes.push_back(p);
    }
  }

  std::vector<TableRow> rows(primes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < primes.size(); i = next++) {
      try {
        const Int& p = primes[i];
        const auto sel = ep_selmer(p);
        rows[i] = TableRow{p, dim2(sel.first), dim2(sel.second), ep_rank_sha_dim(p), ep_rank(p, options.height)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace twodescent
