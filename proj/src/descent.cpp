#include "twodescent/descent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twodescent/error.hpp"

namespace twodescent {

namespace {

using i128 = __int128;

void require_descent_shape(const Curve& E) {
  if (E.a6() != 0) {
    throw DomainError("descent needs a6 = 0 (a rational 2-torsion point at (0,0)); "
                      "for y^2 = x^3 + c^3 use the shifted model from from_cubic_const");
  }
}

// Exact square test for a nonnegative 128-bit value.
bool is_square_i128(i128 v) {
  if (v < 0) return false;
  static const auto tables = [] {
    struct Tables {
      bool m64[64] = {}, m63[63] = {}, m65[65] = {}, m11[11] = {};
    } t;
    for (int i = 0; i < 64; ++i) t.m64[i * i % 64] = true;
    for (int i = 0; i < 63; ++i) t.m63[i * i % 63] = true;
    for (int i = 0; i < 65; ++i) t.m65[i * i % 65] = true;
    for (int i = 0; i < 11; ++i) t.m11[i * i % 11] = true;
    return t;
  }();
  if (!tables.m64[static_cast<int>(v & 63)]) return false;
  if (!tables.m63[static_cast<int>(v % 63)]) return false;
  if (!tables.m65[static_cast<int>(v % 65)]) return false;
  if (!tables.m11[static_cast<int>(v % 11)]) return false;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

i128 to_i128(const Int& v) {
  // Callers guarantee |v| < 2^126.
  Int hi = v >> 64;
  Int lo = v - (hi << 64);
  return (static_cast<i128>(hi.get_si()) << 64) + static_cast<i128>(lo.get_ui());
}

// Calls visit(m, n) in height order until it returns true.
template <typename Visit>
bool enumerate_heights(long H, Visit&& visit) {
  for (long h = 1; h <= H; ++h) {
    for (long n = 1; n <= h; ++n) {
      if (n < h) {
        if (std::gcd(h, n) != 1) continue;
        if (visit(h, n) || visit(-h, n)) return true;
        continue;
      }
      for (long a = 0; a <= h; ++a) {
        if (std::gcd(a, n) != 1) continue;
        if (visit(a, n)) return true;
        if (a != 0 && visit(-a, n)) return true;
      }
    }
  }
  return false;
}

SelmerSet add_class(const SelmerSet& group, const SquareClass& d) {
  SelmerSet gens = group;
  gens.insert(d);
  return span(gens);
}

Int naive_height(const Rat& x) { return std::max(abs(x.get_num()), abs(x.get_den())); }

// Smallest-height representative of {+-P + T : T torsion}.
Point reduce_by_torsion(const Curve& E, const Point& P, const std::vector<Point>& torsion) {
  Point best = P;
  auto better = [](const Point& a, const Point& b) {
    Int ha = naive_height(a.x()), hb = naive_height(b.x());
    if (ha != hb) return ha < hb;
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() > b.y();
  };
  for (const Point& T : torsion) {
    for (const Point& Q : {add(E, P, T), add(E, neg(E, P), T)}) {
      if (better(Q, best)) best = Q;
    }
  }
  return best;
}

std::vector<Point> torsion_points(const Curve& E, const TorsionGroup& T) {
  std::vector<Point> pts{Point::infinity()};
  for (const Point& g : T.generators) {
    std::vector<Point> next;
    unsigned ord = point_order(E, g, 12);
    for (const Point& base : pts) {
      Point acc = base;
      for (unsigned k = 0; k < ord; ++k) {
        next.push_back(acc);
        acc = add(E, acc, g);
      }
    }
    pts = std::move(next);
  }
  return pts;
}

struct DirectionResult {
  SelmerSet selmer;
  SelmerSet image;
  std::vector<ClassRecord> records;
  std::vector<Point> lifted;  // on pair.Eprime
};

// One direction of the descent for the pair (source -> target).
DirectionResult run_direction(const IsogenyPair& pair, const Int& H) {
  DirectionResult out;
  // Torsion of the target with known classes: O, (0,0) and the other
  // 2-torsion points (roots of x^2 + a' x + b').
  SelmerSet image{SquareClass(), squarefree_part(pair.Eprime.a4())};
  const Int& a = pair.Eprime.a2();
  const Int& b = pair.Eprime.a4();
  Int disc = a * a - 4 * b;
  if (is_square(disc)) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    for (const Int& root : {Int((-a + s) / 2), Int((-a - s) / 2)}) {
      if (root != 0) image.insert(squarefree_part(root));
    }
  }
  image = span(image);

  for (LocalTest& t : local_tests(pair.E)) {
    if (!t.everywhere_locally_soluble) {
      out.records.push_back({t.d, t.quartic, ClassStatus::not_locally_soluble,
                             "not locally soluble at " + t.failing_place});
      continue;
    }
    out.selmer.insert(t.d);
    if (image.count(t.d)) {
      out.records.push_back({t.d, t.quartic, ClassStatus::global_point, "image of torsion or found points"});
      continue;
    }
    std::optional<HomPoint> pt = search_point(pair.E, t.d, H);
    if (!pt) {
      out.records.push_back({t.d, t.quartic, ClassStatus::locally_soluble_no_point,
                             "everywhere locally soluble, no point up to height " + H.get_str()});
      continue;
    }
    std::string where = pt->at_infinity ? "point at infinity"
                                        : "(z, w) = (" + pt->z.get_str() + ", " + pt->w.get_str() + ")";
    if (!pt->at_infinity && pt->z != 0) {
      Point L = lift_point(pair, t.d, *pt);
      if (delta_class(pair.Eprime, L) != t.d) {
        throw Error("lifted point " + L.str() + " has class " + delta_class(pair.Eprime, L).str() +
                    ", expected " + t.d.str());
      }
      out.lifted.push_back(L);
      where += " -> " + L.str();
    }
    image = add_class(image, t.d);
    out.records.push_back({t.d, t.quartic, ClassStatus::global_point, where});
  }
  if (!is_subgroup(out.selmer)) {
    throw Error("selmer set of " + pair.E.str() + " is not a subgroup");
  }
  for (const SquareClass& d : image) {
    if (!out.selmer.count(d)) {
      throw Error("class " + d.str() + " has a global point but failed a local test on " + pair.E.str());
    }
  }
  // Later finds may have generated classes recorded earlier as point-free.
  for (ClassRecord& r : out.records) {
    if (r.status == ClassStatus::locally_soluble_no_point && image.count(r.d)) {
      r.status = ClassStatus::global_point;
      r.detail = "generated by found points";
    }
  }
  out.image = std::move(image);
  return out;
}

}  // namespace

// Curves and maps --------------------------------------------------------------------

Curve IsogenyPair::second() const { return Curve(4 * E.a2(), 16 * E.a4(), 0); }

IsogenyPair isogenous_curve(const Curve& E) {
  require_descent_shape(E);
  const Int& a = E.a2();
  const Int& b = E.a4();
  return IsogenyPair{E, Curve(-2 * a, a * a - 4 * b, 0)};
}

Point phi_map(const IsogenyPair& pair, const Point& P) {
  if (!on_curve(pair.E, P)) throw DomainError("phi_map: point " + P.str() + " is not on " + pair.E.str());
  if (P.is_infinity() || P.x() == 0) return Point::infinity();
  const Rat x2 = P.x() * P.x();
  return Point(P.y() * P.y() / x2, P.y() * (pair.E.a4() - x2) / x2);
}

Point from_second(const Point& P) {
  if (P.is_infinity()) return P;
  return Point(P.x() / 4, P.y() / 8);
}

SquareClass delta_class(const Curve& C, const Point& P) {
  if (!on_curve(C, P)) throw DomainError("delta_class: point " + P.str() + " is not on " + C.str());
  if (P.is_infinity()) return SquareClass();
  if (P.x() == 0) return squarefree_part(C.a4());
  // num/den ~ num*den mod squares.
  return squarefree_part(P.x().get_num() * P.x().get_den());
}

// Q(S, 2) -------------------------------------------------------------------------------

BadSet bad_set(const Curve& E) {
  require_descent_shape(E);
  const Int& a = E.a2();
  const Int& b = E.a4();
  std::set<Int> primes{2};
  for (const Int& p : factorize(b).primes()) primes.insert(p);
  for (const Int& p : factorize(a * a - 4 * b).primes()) primes.insert(p);
  return BadSet{std::vector<Int>(primes.begin(), primes.end()), true};
}

std::vector<SquareClass> qs2(const BadSet& S) {
  std::vector<Int> reps{1, -1};
  for (const Int& p : S.primes) {
    const std::size_t n = reps.size();
    for (std::size_t i = 0; i < n; ++i) reps.push_back(reps[i] * p);
  }
  std::vector<SquareClass> out;
  out.reserve(reps.size());
  for (const Int& r : reps) out.push_back(SquareClass::from_squarefree(r));
  std::sort(out.begin(), out.end(), AbsThenSign{});
  return out;
}

unsigned dim2(const SelmerSet& set) {
  unsigned d = 0;
  while ((std::size_t{1} << d) < set.size()) ++d;
  return d;
}

bool is_subgroup(const SelmerSet& set) {
  if (!set.count(SquareClass())) return false;
  for (const SquareClass& x : set) {
    for (const SquareClass& y : set) {
      if (!set.count(x * y)) return false;
    }
  }
  return true;
}

SelmerSet span(const SelmerSet& generators) {
  SelmerSet group{SquareClass()};
  for (const SquareClass& g : generators) {
    if (group.count(g)) continue;
    SelmerSet next = group;
    for (const SquareClass& h : group) next.insert(g * h);
    group = std::move(next);
  }
  return group;
}

// Homogeneous spaces --------------------------------------------------------------

QuarticForm hom_space(const Curve& E, const SquareClass& d) {
  require_descent_shape(E);
  const Int& a = E.a2();
  const Int& b = E.a4();
  const Int& r = d.rep();
  return QuarticForm(r * (a * a - 4 * b), 0, -2 * a * r * r, 0, r * r * r);
}

std::vector<LocalTest> local_tests(const Curve& E) {
  const BadSet S = bad_set(E);
  std::vector<LocalTest> out;
  for (const SquareClass& d : qs2(S)) {
    LocalTest t{d, hom_space(E, d), true, ""};
    if (!r_soluble(t.quartic).soluble) {
      t.everywhere_locally_soluble = false;
      t.failing_place = "R";
    } else {
      for (const Int& p : S.primes) {
        if (!qp_soluble(t.quartic, p).soluble) {
          t.everywhere_locally_soluble = false;
          t.failing_place = p.get_str();
          break;
        }
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

SelmerSet selmer(const Curve& E) {
  SelmerSet out;
  for (const LocalTest& t : local_tests(E)) {
    if (t.everywhere_locally_soluble) out.insert(t.d);
  }
  return out;
}

// Global points ----------------------------------------------------------------------

std::optional<std::pair<Int, Int>> search_quartic(const QuarticForm& f, const Int& H) {
  if (H < 1) return std::nullopt;
  if (!H.fits_slong_p() || H > 1000000) throw BudgetExceeded("search height too large");
  const long h = H.get_si();

  Int coeff_sum = 0;
  for (const Int& c : f.coeffs()) coeff_sum += abs(c);
  Int h4 = H * H * H * H;
  std::optional<std::pair<Int, Int>> found;
  if (coeff_sum * h4 < (Int(1) << 124)) {
    std::array<i128, 5> c;
    for (int i = 0; i < 5; ++i) c[i] = to_i128(f.coeffs()[i]);
    enumerate_heights(h, [&](long m, long n) {
      const i128 n2 = static_cast<i128>(n) * n;
      const i128 v = (((c[0] * m + c[1] * n) * m + c[2] * n2) * m + c[3] * n2 * n) * m + c[4] * n2 * n2;
      if (!is_square_i128(v)) return false;
      found = std::make_pair(Int(m), Int(n));
      return true;
    });
    return found;
  }
  enumerate_heights(h, [&](long m, long n) {
    if (!is_square(f.homogeneous(Int(m), Int(n)))) return false;
    found = std::make_pair(Int(m), Int(n));
    return true;
  });
  return found;
}

std::optional<HomPoint> search_point(const Curve& E, const SquareClass& d, const Int& H) {
  const QuarticForm f = hom_space(E, d);
  if (auto mn = search_quartic(f, H)) {
    const auto& [m, n] = *mn;
    Int Y;
    Int v = f.homogeneous(m, n);
    mpz_sqrt(Y.get_mpz_t(), v.get_mpz_t());
    // Y^2 = n^4 f(m/n) and f(z) = (d w)^2, so |w| = Y / (|d| n^2).
    HomPoint pt{false, Rat(m, n), Rat(Y, abs(d.rep()) * n * n)};
    pt.z.canonicalize();
    pt.w.canonicalize();
    return pt;
  }
  if (squarefree_part(E.a2() * E.a2() - 4 * E.a4()) == d) {
    return HomPoint{true, Rat(0), Rat(0)};
  }
  return std::nullopt;
}

Point lift_point(const IsogenyPair& pair, const SquareClass& d, const HomPoint& pt) {
  if (pt.at_infinity || pt.z == 0) {
    throw DomainError("torsion image: z = 0 or infinity maps to O or (0,0), not lifted by formula");
  }
  const Rat& z = pt.z;
  const Rat dd(d.rep());
  Point L(dd / (z * z), -dd * pt.w / (z * z * z));
  if (!on_curve(pair.Eprime, L)) {
    throw DomainError("lift_point: (" + z.get_str() + ", " + pt.w.get_str() + ") is not on C_" + d.str());
  }
  return L;
}

// Report --------------------------------------------------------------------------------

DescentReport descent_report(const Curve& E, const Int& H) {
  const IsogenyPair pair = isogenous_curve(E);
  const IsogenyPair dual = isogenous_curve(pair.Eprime);

  DirectionResult fwd = run_direction(pair, H);
  DirectionResult back = run_direction(dual, H);

  DescentReport r{E, pair.Eprime};
  r.selmer_phi = fwd.selmer;
  r.selmer_phi_hat = back.selmer;
  r.image_phi = fwd.image;
  r.image_phi_hat = back.image;
  r.phi_classes = std::move(fwd.records);
  r.phi_hat_classes = std::move(back.records);
  r.search_height = H;

  const int s = static_cast<int>(dim2(r.selmer_phi));
  const int s_hat = static_cast<int>(dim2(r.selmer_phi_hat));
  const int g = static_cast<int>(dim2(r.image_phi));
  const int g_hat = static_cast<int>(dim2(r.image_phi_hat));
  // rank = dim E/2E - dim E(Q)[2], and
  //   dim E/2E = g + g_hat + dim phi(E(Q)[2]) - dim E'(Q)[phi_hat].
  // E'(Q)[phi_hat] = {O, (0,0)} always. With E(Q)[2] = Z/2, phi kills it:
  //   rank = g + g_hat + 0 - 1 - 1.
  // With E(Q)[2] = (Z/2)^2, phi(E(Q)[2]) = {O, (0,0)}:
  //   rank = g + g_hat + 1 - 1 - 2.
  // Either way rank = g + g_hat - 2, and the Selmer dimensions bound g, g_hat.
  r.rank_upper = s + s_hat - 2;
  r.rank_lower = std::max(0, g + g_hat - 2);
  r.sha_phi_dim_upper = static_cast<unsigned>(s - g);
  r.sha_phi_hat_dim_upper = static_cast<unsigned>(s_hat - g_hat);
  if ((r.rank_upper - r.rank_lower) % 2 != 0) {
    r.parity_flag = true;
    r.parity_note = "point search height too small or nontrivial Sha";
  }

  r.torsion = torsion_subgroup(E);
  const std::vector<Point> tors = torsion_points(E, r.torsion);
  auto keep = [&](const Point& P) {
    if (point_order(E, P, 12) != 0) return;
    Point Q = reduce_by_torsion(E, P, tors);
    if (std::find(r.generators.begin(), r.generators.end(), Q) == r.generators.end()) {
      r.generators.push_back(Q);
    }
  };
  for (const Point& L : fwd.lifted) keep(from_second(phi_map(dual, L)));
  for (const Point& L : back.lifted) keep(from_second(L));
  return r;
}

}  // namespace twodescent
