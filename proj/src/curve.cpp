#include "twodescent/curve.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "twodescent/error.hpp"

namespace twodescent {

namespace {

void append_term(std::ostringstream& os, const Int& coeff, const char* monomial) {
  if (coeff == 0) return;
  os << (coeff < 0 ? " - " : " + ");
  Int a = abs(coeff);
  if (a != 1 || monomial[0] == '\0') os << a;
  os << monomial;
}

void require_on_curve(const Curve& E, const Point& P) {
  if (!on_curve(E, P)) throw DomainError("point " + P.str() + " is not on " + E.str());
}

bool is_integral(const Point& P) {
  return P.is_infinity() || (P.x().get_den() == 1 && P.y().get_den() == 1);
}

// Monotone integer search for a root of h on [lo, hi].
template <typename F>
void bisect_root(const F& h, Int lo, Int hi, std::vector<Int>& out) {
  if (lo > hi) return;
  int slo = sgn(h(lo));
  int shi = sgn(h(hi));
  if (slo == 0) {
    out.push_back(lo);
    return;
  }
  if (shi == 0) {
    out.push_back(hi);
    return;
  }
  if (slo == shi) return;
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (mid <= lo) mid = lo + 1;
    int sm = sgn(h(mid));
    if (sm == 0) {
      out.push_back(mid);
      return;
    }
    if (sm == slo) lo = mid;
    else hi = mid;
  }
}

}  // namespace

// Curve ----------------------------------------------------------------------

Curve::Curve(Int a2, Int a4, Int a6) : a2_(std::move(a2)), a4_(std::move(a4)), a6_(std::move(a6)) {
  if (discriminant(*this) == 0) throw DomainError("singular model: " + str());
}

Rat Curve::rhs(const Rat& x) const { return ((x + a2_) * x + a4_) * x + a6_; }
Int Curve::rhs(const Int& x) const { return ((x + a2_) * x + a4_) * x + a6_; }

std::string Curve::str() const {
  std::ostringstream os;
  os << "y^2 = x^3";
  append_term(os, a2_, "x^2");
  append_term(os, a4_, "x");
  append_term(os, a6_, "");
  return os.str();
}

std::string Point::str() const {
  if (!finite_) return "O";
  return "(" + x_.get_str() + ", " + y_.get_str() + ")";
}

// Torsion group bookkeeping -----------------------------------------------------

unsigned TorsionGroup::order() const {
  unsigned n = 1;
  for (unsigned k : invariants) n *= k;
  return n;
}

std::string TorsionGroup::name() const {
  if (invariants.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(invariants[i]);
  }
  return s;
}

bool TorsionGroup::is_mazur() const {
  if (invariants.empty()) return true;
  if (invariants.size() == 1) {
    unsigned n = invariants[0];
    return n >= 2 && (n <= 10 || n == 12);
  }
  return invariants.size() == 2 && invariants[0] == 2 && invariants[1] % 2 == 0 &&
         invariants[1] >= 2 && invariants[1] <= 8;
}

TorsionGroup make_torsion(std::vector<unsigned> invariants, std::vector<Point> generators) {
  return TorsionGroup{std::move(invariants), std::move(generators)};
}

// Invariants and group law -------------------------------------------------------

Int discriminant(const Curve& E) {
  Int b2 = 4 * E.a2();
  Int b4 = 2 * E.a4();
  Int b6 = 4 * E.a6();
  Int b8 = 4 * E.a2() * E.a6() - E.a4() * E.a4();
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

Rat j_invariant(const Curve& E) {
  if (E.a2() != 0) throw DomainError("j_invariant supports a2 = 0 models only");
  Int four_a = 4 * E.a4();
  Rat j = Rat(-1728 * four_a * four_a * four_a, discriminant(E));
  j.canonicalize();
  return j;
}

bool on_curve(const Curve& E, const Point& P) {
  if (P.is_infinity()) return true;
  return P.y() * P.y() == E.rhs(P.x());
}

Point neg(const Curve& E, const Point& P) {
  require_on_curve(E, P);
  if (P.is_infinity()) return P;
  return Point(P.x(), -P.y());
}

Point add(const Curve& E, const Point& P, const Point& Q) {
  require_on_curve(E, P);
  require_on_curve(E, Q);
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  Rat lambda;
  if (P.x() == Q.x()) {
    if (P.y() == -Q.y()) return Point::infinity();
    lambda = (3 * P.x() * P.x() + 2 * E.a2() * P.x() + E.a4()) / (2 * P.y());
  } else {
    lambda = (Q.y() - P.y()) / (Q.x() - P.x());
  }
  Rat x3 = lambda * lambda - E.a2() - P.x() - Q.x();
  Rat y3 = lambda * (P.x() - x3) - P.y();
  return Point(x3, y3);
}

Point mul(const Curve& E, const Int& m, const Point& P) {
  require_on_curve(E, P);
  Point base = m < 0 ? neg(E, P) : P;
  Int k = abs(m);
  Point acc;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add(E, acc, base);
    k >>= 1;
    if (k > 0) base = add(E, base, base);
  }
  return acc;
}

unsigned point_order(const Curve& E, const Point& P, unsigned limit) {
  Point acc = P;
  for (unsigned k = 1; k <= limit; ++k) {
    if (acc.is_infinity()) return k;
    acc = add(E, acc, P);
  }
  return 0;
}

// Reduction -------------------------------------------------------------------------

Int count_points_mod(const Curve& E, const Int& q) {
  if (q == 2 || !is_prime(q)) throw DomainError("count_points_mod needs an odd prime");
  if (discriminant(E) % q == 0) {
    throw DomainError("bad reduction at " + q.get_str());
  }
  if (!q.fits_ulong_p() || q > 100000000) throw BudgetExceeded("point count modulus too large");
  const std::uint64_t p = q.get_ui();
  auto reduce = [p](const Int& v) {
    Int r = v % Int(p);
    if (r < 0) r += p;
    return r.get_ui();
  };
  const std::uint64_t a2 = reduce(E.a2()), a4 = reduce(E.a4()), a6 = reduce(E.a6());
  long long total = static_cast<long long>(p) + 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = (detail::mulmod((x + a2) % p, x, p) + a4) % p;
    v = (detail::mulmod(v, x, p) + a6) % p;
    total += detail::legendre_u64(v, p);
  }
  return Int(static_cast<long>(total));
}

Int torsion_order_bound(const Curve& E, unsigned k) {
  if (k == 0) throw DomainError("torsion_order_bound needs k >= 1");
  const Int disc = discriminant(E);
  Int g = 0;
  unsigned used = 0;
  for (unsigned long q = 3; used < k; q += 2) {
    if (!is_prime(Int(q)) || disc % q == 0) continue;
    Int n = count_points_mod(E, Int(q));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ++used;
  }
  return g;
}

// Torsion -------------------------------------------------------------------------------

std::vector<Int> integer_roots_monic_cubic(const Int& b, const Int& c, const Int& d) {
  auto h = [&](const Int& x) { return Int(((x + b) * x + c) * x + d); };
  std::vector<Int> roots;
  Int bound = 1 + std::max({abs(b), abs(c), abs(d)});
  // Critical points (-2b +- sqrt(4b^2 - 12c)) / 6, located to within one unit.
  Int disc = 4 * b * b - 12 * c;
  std::vector<Int> splits;
  if (disc > 0) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    Int lo_crit, hi_crit;
    Int num_lo = -2 * b - s, num_hi = -2 * b + s;
    mpz_fdiv_q_ui(lo_crit.get_mpz_t(), num_lo.get_mpz_t(), 6);
    mpz_fdiv_q_ui(hi_crit.get_mpz_t(), num_hi.get_mpz_t(), 6);
    splits = {lo_crit, hi_crit};
  }
  Int start = -bound;
  for (const Int& k : splits) {
    Int stop = k - 2;
    bisect_root(h, start, std::min(stop, bound), roots);
    for (Int x = std::max(Int(k - 1), start); x <= k + 1; ++x) {
      if (h(x) == 0) roots.push_back(x);
    }
    start = std::max(start, Int(k + 2));
  }
  bisect_root(h, start, bound, roots);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

namespace {

// Canonical ordering for picking generators: x ascending, then |y|, positive y first.
bool canonical_less(const Point& a, const Point& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (abs(a.y()) != abs(b.y())) return abs(a.y()) < abs(b.y());
  return a.y() > b.y();
}

// Order of an integral point, or 0 if it is of infinite order. Multiples of
// a torsion point are integral, so a non-integral multiple proves infinite order.
unsigned integral_torsion_order(const Curve& E, const Point& P) {
  Point acc = P;
  for (unsigned k = 1; k <= 12; ++k) {
    if (acc.is_infinity()) return k;
    if (!is_integral(acc)) return 0;
    acc = add(E, acc, P);
  }
  return 0;
}

}  // namespace

TorsionGroup torsion_subgroup(const Curve& E) {
  const Int disc = discriminant(E);
  std::vector<Point> candidates;
  for (const Int& x : integer_roots_monic_cubic(E.a2(), E.a4(), E.a6())) {
    candidates.emplace_back(Rat(x), Rat(0));
  }
  // y > 0 with y^2 | Delta.
  std::vector<Int> ys{1};
  for (const auto& f : factorize(disc).factors) {
    std::vector<Int> next;
    for (const Int& y : ys) {
      Int pk = 1;
      for (unsigned e = 0; 2 * e <= f.exponent; ++e) {
        next.push_back(y * pk);
        pk *= f.prime;
      }
    }
    ys = std::move(next);
  }
  for (const Int& y : ys) {
    for (const Int& x : integer_roots_monic_cubic(E.a2(), E.a4(), E.a6() - y * y)) {
      candidates.emplace_back(Rat(x), Rat(y));
      candidates.emplace_back(Rat(x), Rat(-y));
    }
  }

  std::vector<std::pair<Point, unsigned>> torsion;
  unsigned two_torsion = 1;
  for (const Point& P : candidates) {
    unsigned ord = integral_torsion_order(E, P);
    if (ord == 0) continue;
    torsion.emplace_back(P, ord);
    if (ord == 2) ++two_torsion;
  }
  std::sort(torsion.begin(), torsion.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  const unsigned n = static_cast<unsigned>(torsion.size()) + 1;
  if (n == 1) return make_torsion({});

  auto first_of_order = [&](unsigned ord) -> Point {
    for (const auto& [P, o] : torsion) {
      if (o == ord) return P;
    }
    throw Error("torsion_subgroup: no point of order " + std::to_string(ord) + " on " + E.str());
  };

  if (two_torsion == 4) {
    const unsigned m = n / 2;
    Point big = first_of_order(m);
    Point half = mul(E, Int(m / 2), big);
    for (const auto& [P, o] : torsion) {
      if (o == 2 && !(P == half)) {
        if (m == 2) return make_torsion({2, 2}, {big, P});
        return make_torsion({2, m}, {P, big});
      }
    }
    throw Error("torsion_subgroup: inconsistent 2-torsion on " + E.str());
  }
  TorsionGroup T = make_torsion({n}, {first_of_order(n)});
  if (!T.is_mazur()) throw Error("torsion_subgroup: non-Mazur structure " + T.name());
  return T;
}

Curve from_cubic_const(const Int& c) {
  if (c == 0) throw DomainError("from_cubic_const needs c != 0");
  return Curve(-3 * c, 3 * c * c, 0);
}

}  // namespace twodescent
