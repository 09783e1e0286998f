#include "doctest.h"
#include "oracles.hpp"
#include "twodescent/descent.hpp"
#include "twodescent/error.hpp"

using namespace twodescent;

namespace {

SquareClass cls(long d) { return SquareClass::from_squarefree(Int(d)); }

SelmerSet set_of(std::initializer_list<long> reps) {
  SelmerSet out;
  for (long r : reps) out.insert(cls(r));
  return out;
}

void check_report_invariants(const DescentReport& r) {
  INFO(r.curve.str());
  CHECK(is_subgroup(r.selmer_phi));
  CHECK(is_subgroup(r.selmer_phi_hat));
  CHECK(r.selmer_phi.count(squarefree_part(r.isogenous.a4())));
  CHECK(r.selmer_phi_hat.count(squarefree_part(r.curve.a4() * 16)));
  for (const SquareClass& d : r.image_phi) CHECK(r.selmer_phi.count(d));
  for (const SquareClass& d : r.image_phi_hat) CHECK(r.selmer_phi_hat.count(d));
  CHECK(0 <= r.rank_lower);
  CHECK(r.rank_lower <= r.rank_upper);
  CHECK(r.rank_upper - r.rank_lower ==
        static_cast<int>(r.sha_phi_dim_upper + r.sha_phi_hat_dim_upper) - std::max(0, 2 - static_cast<int>(dim2(r.image_phi) + dim2(r.image_phi_hat))));
  CHECK(r.parity_flag == ((r.rank_upper - r.rank_lower) % 2 != 0));
  for (const Point& g : r.generators) {
    CHECK(on_curve(r.curve, g));
    CHECK(point_order(r.curve, g) == 0);
  }
}

}  // namespace

TEST_CASE("isogenous curve") {
  CHECK(isogenous_curve(Curve(6, 1, 0)).Eprime == Curve(-12, 32, 0));
  CHECK(isogenous_curve(Curve(0, 17, 0)).Eprime == Curve(0, -68, 0));
  for (long p : {3L, 5L, 73L}) CHECK(isogenous_curve(Curve(0, p, 0)).Eprime == Curve(0, -4 * p, 0));
  CHECK(isogenous_curve(Curve(6, 1, 0)).second() == Curve(24, 16, 0));
  CHECK_THROWS_AS(isogenous_curve(Curve(0, 0, 8)), DomainError);
}

TEST_CASE("phi and the isomorphism back from E''") {
  const IsogenyPair pair = isogenous_curve(Curve(6, 1, 0));
  const Point img = phi_map(pair, Point(Rat(-1), Rat(2)));
  CHECK(img == Point(Rat(4), Rat(0)));
  CHECK(on_curve(pair.Eprime, img));
  CHECK(phi_map(pair, Point(Rat(0), Rat(0))).is_infinity());
  CHECK(phi_map(pair, Point()).is_infinity());
  CHECK_THROWS_AS(phi_map(pair, Point(Rat(1), Rat(1))), DomainError);

  // phi_hat o phi = [2], read through E'' -> E.
  const IsogenyPair dual = isogenous_curve(pair.Eprime);
  CHECK(dual.Eprime == pair.second());
  for (const Curve& E : {Curve(-6, 12, 0), Curve(0, 73, 0), Curve(6, 1, 0)}) {
    const IsogenyPair p1 = isogenous_curve(E);
    const IsogenyPair p2 = isogenous_curve(p1.Eprime);
    for (long x = -30; x <= 60; ++x) {
      Int v = E.rhs(Int(x));
      if (!is_square(v) || x == 0) continue;
      const Point P(Rat(x), Rat(sqrt(v)));
      CHECK(from_second(phi_map(p2, phi_map(p1, P))) == mul(E, 2, P));
    }
  }
}

TEST_CASE("connecting map") {
  CHECK(delta_class(Curve(-12, 32, 0), Point(Rat(0), Rat(0))) == cls(2));
  CHECK(delta_class(Curve(-12, 32, 0), Point()).is_one());
  CHECK(delta_class(Curve(6, 1, 0), Point(Rat(-1), Rat(2))) == cls(-1));
  CHECK(delta_class(Curve(0, 73, 0), Point(Rat(9, 16), Rat(411, 64))) == cls(1));
  CHECK_THROWS_AS(delta_class(Curve(6, 1, 0), Point(Rat(1), Rat(1))), DomainError);
  // A homomorphism on points of E(Q) for the dual direction.
  const Curve E(-6, 12, 0);
  const Point P(Rat(3), Rat(3)), T(Rat(0), Rat(0));
  CHECK(delta_class(E, add(E, P, T)) == delta_class(E, P) * delta_class(E, T));
  CHECK(delta_class(E, mul(E, 2, P)).is_one());
}

TEST_CASE("bad set and Q(S,2)") {
  BadSet S = bad_set(Curve(6, 1, 0));
  CHECK(S.primes == std::vector<Int>{2});
  CHECK(S.includes_infinity);
  std::vector<SquareClass> q = qs2(S);
  CHECK(q == std::vector<SquareClass>{cls(-1), cls(1), cls(-2), cls(2)});
  BadSet Sp = bad_set(Curve(0, 17, 0));
  CHECK(Sp.primes == std::vector<Int>{2, 17});
  CHECK(qs2(Sp).size() == 8);
  CHECK(qs2(BadSet{{2, 3, 5}, true}).size() == 16);
}

TEST_CASE("subgroup helpers") {
  CHECK(dim2(set_of({1})) == 0);
  CHECK(dim2(set_of({1, -1, 2, -2})) == 2);
  CHECK(is_subgroup(set_of({1, -1, 2, -2})));
  CHECK_FALSE(is_subgroup(set_of({1, -1, 2})));
  CHECK_FALSE(is_subgroup(set_of({-1, 2, -2})));
  CHECK(span(set_of({-1, 17})) == set_of({1, -1, 17, -17}));
  CHECK(span({}) == set_of({1}));
}

TEST_CASE("homogeneous spaces") {
  // 2 w^2 = 4 - 24 z^2 + 32 z^4, times 2.
  CHECK(hom_space(Curve(6, 1, 0), cls(2)) == QuarticForm(64, 0, -48, 0, 8));
  for (long d : {-1L, 2L, -34L}) {
    // d w^2 = d^2 - 4 p z^4, times d.
    CHECK(hom_space(Curve(0, 17, 0), cls(d)) == QuarticForm(-68 * d, 0, 0, 0, d * d * d));
  }
  CHECK(hom_space(Curve(6, 1, 0), cls(1)) == QuarticForm(32, 0, -12, 0, 1));
}

TEST_CASE("selmer sets") {
  CHECK(selmer(Curve(6, 1, 0)) == set_of({1, 2}));
  CHECK(selmer(Curve(-12, 32, 0)) == set_of({1, -1}));
  CHECK(selmer(Curve(0, 17, 0)) == set_of({1, -1, 2, -2, 17, -17, 34, -34}));
  CHECK(selmer(Curve(0, -68, 0)) == set_of({1, 17}));
}

TEST_CASE("no negative or even classes in Sel of E'_p") {
  int tested = 0;
  for (long p : oracle::primes_below(200)) {
    if (p == 2) continue;
    for (const SquareClass& d : selmer(Curve(0, -4 * p, 0))) {
      CHECK(d.sign() > 0);
      CHECK(d.rep() % 2 != 0);
    }
    if (++tested == 20) break;
  }
  CHECK(tested == 20);
}

TEST_CASE("point search") {
  auto pt = search_point(Curve(6, 1, 0), cls(2), 2);
  REQUIRE(pt);
  CHECK_FALSE(pt->at_infinity);
  CHECK(pt->z == Rat(1, 2));
  CHECK(pt->w == 0);

  pt = search_point(Curve(-12, 32, 0), cls(-1), 2);
  REQUIRE(pt);
  CHECK(pt->z == Rat(1, 2));
  CHECK(pt->w == 2);
  // -w^2 = 1 - 24 z^2 + 16 z^4 at z = 1/2.
  CHECK(-Rat(4) == 1 - 24 * Rat(1, 4) + 16 * Rat(1, 16));

  // The class of a^2 - 4b is always hit, at infinity when no small affine point exists.
  pt = search_point(Curve(0, 17, 0), cls(-17), 3);
  REQUIRE(pt);
  CHECK(pt->at_infinity);

  CHECK_FALSE(search_point(Curve(0, 17, 0), cls(-1), 20));
  // 1 is always hit at z = 0.
  pt = search_point(Curve(0, 17, 0), cls(1), 1);
  REQUIRE(pt);
  CHECK(pt->z == 0);
}

TEST_CASE("search order is by height") {
  // z^4 - 5 z^2 + 4 vanishes at z = 1, 2, but z = 0 comes first.
  auto mn = search_quartic(QuarticForm(1, 0, -5, 0, 4), 5);
  REQUIRE(mn);
  CHECK(mn->first == 0);
  // 3 (m^4 + n^4) = w^2 forces 3 | m and 3 | n.
  mn = search_quartic(QuarticForm(3, 0, 0, 0, 3), 30);
  CHECK_FALSE(mn.has_value());
  // Big coefficients go through the exact fallback.
  Int big("1000000000000000000000");
  mn = search_quartic(QuarticForm(3 * big * big, 0, 0, 0, 3 * big * big), 3);
  CHECK_FALSE(mn.has_value());
  mn = search_quartic(QuarticForm(big * big, 0, 0, 0, 0), 3);
  REQUIRE(mn);
}

TEST_CASE("lifting points") {
  const IsogenyPair pair = isogenous_curve(Curve(6, 1, 0));
  Point L = lift_point(pair, cls(2), HomPoint{false, Rat(1, 2), Rat(0)});
  CHECK(L == Point(Rat(8), Rat(0)));
  CHECK(on_curve(pair.Eprime, L));
  CHECK(delta_class(pair.Eprime, L) == cls(2));

  const IsogenyPair dual = isogenous_curve(pair.Eprime);
  L = lift_point(dual, cls(-1), HomPoint{false, Rat(1, 2), Rat(2)});
  CHECK(L == Point(Rat(-4), Rat(16)));
  CHECK(on_curve(Curve(24, 16, 0), L));
  CHECK(from_second(L) == Point(Rat(-1), Rat(2)));

  CHECK_THROWS_WITH_AS(lift_point(pair, cls(1), HomPoint{false, Rat(0), Rat(1)}),
                       doctest::Contains("torsion image"), DomainError);
  CHECK_THROWS_WITH_AS(lift_point(pair, cls(2), HomPoint{true, Rat(0), Rat(0)}),
                       doctest::Contains("torsion image"), DomainError);
}

TEST_CASE("report for y^2 = x^3 + 6x^2 + x") {
  const DescentReport r = descent_report(Curve(6, 1, 0), 5);
  check_report_invariants(r);
  CHECK(r.selmer_phi.size() == 2);
  CHECK(r.selmer_phi_hat.size() == 2);
  CHECK(r.rank_exact());
  CHECK(r.rank_lower == 0);
  CHECK(r.sha_phi_dim_upper == 0);
  CHECK(r.sha_phi_hat_dim_upper == 0);
  CHECK(r.generators.empty());
}

TEST_CASE("report for y^2 = x^3 + 17x") {
  const DescentReport r = descent_report(Curve(0, 17, 0), 20);
  check_report_invariants(r);
  CHECK(r.selmer_phi.size() == 8);
  CHECK(r.selmer_phi_hat.size() == 2);
  CHECK(r.rank_lower == 0);
  CHECK(r.rank_upper == 2);
  CHECK(r.sha_phi_dim_upper == 2);
  CHECK(r.torsion.name() == "Z/2");
  CHECK_FALSE(r.parity_flag);
}

TEST_CASE("report for the shifted model of y^2 = x^3 + 8") {
  const DescentReport r = descent_report(Curve(-6, 12, 0), 10);
  check_report_invariants(r);
  CHECK(r.selmer_phi.size() == 4);
  CHECK(r.selmer_phi_hat.size() == 2);
  CHECK(r.rank_exact());
  CHECK(r.rank_lower == 1);
  REQUIRE(r.generators.size() == 1);
  const Point& g = r.generators[0];
  CHECK(Point(g.x() - 2, g.y()) == Point(Rat(1), Rat(3)));
}

TEST_CASE("rank formula with full 2-torsion") {
  // y^2 = x^3 - n^2 x: rank 0 for n = 1, 2; rank 1 for n = 5, 6, 7.
  for (long n : {1L, 2L}) {
    const DescentReport r = descent_report(Curve(0, -n * n, 0), 20);
    check_report_invariants(r);
    CHECK(r.torsion.invariants == std::vector<unsigned>{2, 2});
    CHECK(r.rank_lower == 0);
    CHECK(r.rank_upper == 0);
  }
  for (long n : {5L, 6L, 7L}) {
    const DescentReport r = descent_report(Curve(0, -n * n, 0), 30);
    check_report_invariants(r);
    CHECK(r.rank_lower == 1);
    CHECK(r.rank_upper == 1);
    CHECK(r.generators.size() >= 1);
  }
}

TEST_CASE("found classes are subgroups and lifts are consistent") {
  for (long a = -6; a <= 6; ++a) {
    for (long b = -12; b <= 12; ++b) {
      if (b == 0 || a * a == 4 * b) continue;
      const DescentReport r = descent_report(Curve(a, b, 0), 8);
      check_report_invariants(r);
      CHECK(is_subgroup(r.image_phi));
      CHECK(is_subgroup(r.image_phi_hat));
    }
  }
}
