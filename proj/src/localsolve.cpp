#include "twodescent/localsolve.hpp"

#include <algorithm>
#include <sstream>

#include "twodescent/error.hpp"

namespace twodescent {

// QuarticForm --------------------------------------------------------------------

QuarticForm::QuarticForm(Int c4, Int c3, Int c2, Int c1, Int c0)
    : QuarticForm(std::array<Int, 5>{std::move(c4), std::move(c3), std::move(c2), std::move(c1),
                                     std::move(c0)}) {}

QuarticForm::QuarticForm(std::array<Int, 5> coeffs) : c_(std::move(coeffs)) {
  if (std::all_of(c_.begin(), c_.end(), [](const Int& c) { return c == 0; })) {
    throw DomainError("quartic form is identically zero");
  }
}

int QuarticForm::degree() const {
  for (int i = 0; i < 5; ++i) {
    if (c_[i] != 0) return 4 - i;
  }
  return 0;
}

Int QuarticForm::operator()(const Int& z) const {
  Int v = c_[0];
  for (int i = 1; i < 5; ++i) v = v * z + c_[i];
  return v;
}

Rat QuarticForm::operator()(const Rat& z) const {
  Rat v = c_[0];
  for (int i = 1; i < 5; ++i) v = v * z + c_[i];
  return v;
}

Int QuarticForm::derivative(const Int& z) const {
  return (((4 * c_[0]) * z + 3 * c_[1]) * z + 2 * c_[2]) * z + c_[3];
}

Int QuarticForm::homogeneous(const Int& m, const Int& n) const {
  Int v = 0;
  Int mp = 1;
  // sum c_i m^(4-i) n^i, accumulated from the constant term upward.
  std::array<Int, 5> npow;
  npow[0] = 1;
  for (int i = 1; i < 5; ++i) npow[i] = npow[i - 1] * n;
  for (int i = 4; i >= 0; --i) {
    v += c_[i] * mp * npow[i];
    mp *= m;
  }
  return v;
}

Int QuarticForm::discriminant() const {
  const Int &a = c_[0], &b = c_[1], &c = c_[2], &d = c_[3], &e = c_[4];
  Int I = 12 * a * e - 3 * b * d + c * c;
  Int J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c * c * c;
  return (4 * I * I * I - J * J) / 27;
}

QuarticForm QuarticForm::reversed() const { return QuarticForm(c_[4], c_[3], c_[2], c_[1], c_[0]); }

QuarticForm QuarticForm::rescaled(const Int& c) const {
  if (c == 0) throw DomainError("rescale by zero");
  std::array<Int, 5> out;
  Int cp = 1;
  for (int i = 0; i < 5; ++i) {
    out[i] = c_[i] * cp;
    cp *= c;
  }
  return QuarticForm(out);
}

QuarticForm QuarticForm::operator*(const Int& m) const {
  std::array<Int, 5> out = c_;
  for (auto& v : out) v *= m;
  return QuarticForm(out);
}

std::string QuarticForm::str() const {
  std::ostringstream os;
  os << "(" << c_[0] << "," << c_[1] << "," << c_[2] << "," << c_[3] << "," << c_[4] << ")";
  return os.str();
}

// Brute force --------------------------------------------------------------------------

std::vector<std::uint64_t> brute_mod_oracle(const QuarticForm& f, const Int& p, unsigned k) {
  if (k == 0) throw DomainError("brute_mod_oracle needs k >= 1");
  Int modulus;
  mpz_pow_ui(modulus.get_mpz_t(), p.get_mpz_t(), k);
  if (modulus > 10000000) throw DomainError("modulus too large for brute force");
  const std::uint64_t m = modulus.get_ui();
  std::vector<char> is_sq(m, 0);
  for (std::uint64_t w = 0; w < m; ++w) is_sq[w * w % m] = 1;
  std::array<std::uint64_t, 5> c;
  for (int i = 0; i < 5; ++i) {
    Int r = f.coeffs()[i] % modulus;
    if (r < 0) r += modulus;
    c[i] = r.get_ui();
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t z = 0; z < m; ++z) {
    std::uint64_t v = c[0];
    for (int i = 1; i < 5; ++i) v = (v * z + c[i]) % m;
    if (is_sq[v]) out.push_back(z);
  }
  return out;
}

// p-adic ------------------------------------------------------------------------------------

namespace {

using Coeffs = std::array<Int, 5>;  // low degree first

Int eval_low(const Coeffs& g, const Int& t) {
  Int v = g[4];
  for (int i = 3; i >= 0; --i) v = v * t + g[i];
  return v;
}

Int deriv_low(const Coeffs& g, const Int& t) {
  Int v = 4 * g[4];
  for (int i = 3; i >= 1; --i) v = v * t + i * g[i];
  return v;
}

// g(r + s t).
Coeffs translate(Coeffs g, const Int& r, const Int& s) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 3; j >= i; --j) g[j] += r * g[j + 1];
  }
  Int sp = s;
  for (int i = 1; i < 5; ++i) {
    g[i] *= sp;
    sp *= s;
  }
  return g;
}

unsigned content_val(const Coeffs& g, const Int& p, std::size_t from = 0) {
  unsigned c = ~0u;
  for (std::size_t i = from; i < 5; ++i) {
    if (g[i] != 0) c = std::min(c, val(g[i], p));
  }
  return c;
}

// Divides out the largest even power of p from the content; square classes
// of the values are unchanged.
void strip_even_content(Coeffs& g, const Int& p) {
  const unsigned c = content_val(g, p);
  if (c < 2) return;
  Int q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), 2 * (c / 2));
  for (auto& x : g) x /= q;
}

struct ZpSearch {
  const Int& p;
  unsigned depth_cap;
  unsigned stable_gap;

  // g(t) with z = z0 + p^k t. Returns a verdict when a point is found.
  std::optional<LocalVerdict> run(const Coeffs& g, const Int& z0, const Int& pk, unsigned k) const {
    for (Int r = 0; r < p; ++r) {
      const Int z = z0 + pk * r;
      const Int gr = eval_low(g, r);
      if (gr == 0) return LocalVerdict{true, WitnessKind::root, Rat(z), "f(z) = 0"};
      const unsigned e = val(gr, p);
      const Int dg = deriv_low(g, r);
      if (dg != 0 && e > 2 * val(dg, p)) {
        return LocalVerdict{true, WitnessKind::hensel_root, Rat(z),
                            "Hensel root of f congruent to z mod " + p.get_str() + "^" + std::to_string(k + 1)};
      }
      Coeffs h = translate(g, r, p);
      // All values on z + p^(k+1) Z_p share the square class of g(r).
      if (content_val(h, p, 1) >= e + stable_gap) {
        if (is_padic_square(gr, p)) {
          return LocalVerdict{true, WitnessKind::square_value, Rat(z),
                              "f(z) is a square in Q_" + p.get_str()};
        }
        continue;
      }
      if (k + 1 >= depth_cap) {
        throw PrecisionExhausted("precision exhausted at p = " + p.get_str());
      }
      strip_even_content(h, p);
      if (auto v = run(h, z, pk * p, k + 1)) return v;
    }
    return std::nullopt;
  }
};

}  // namespace

LocalVerdict zp_soluble(const QuarticForm& f, const Int& p) {
  if (!is_prime(p)) throw DomainError("zp_soluble: not a prime: " + p.get_str());
  const Int disc = f.discriminant();
  if (disc == 0) throw DomainError("zp_soluble: quartic " + f.str() + " has zero discriminant");
  Coeffs g;
  for (int i = 0; i < 5; ++i) g[i] = f.coeffs()[4 - i];
  strip_even_content(g, p);
  // Square class of f is constant on r + p^k Z_p once the higher Taylor terms
  // are divisible by p^(v(f(r)) + 1), or p^(v + 3) at p = 2.
  const ZpSearch search{p, val(disc, p) + 6, (p == 2) ? 3u : 1u};
  try {
    if (auto v = search.run(g, 0, 1, 0)) return *v;
  } catch (const PrecisionExhausted&) {
    throw PrecisionExhausted("precision exhausted for " + f.str() + " at p = " + p.get_str());
  }
  return {false, WitnessKind::none, std::nullopt, "no Z_" + p.get_str() + " points"};
}

LocalVerdict qp_soluble(const QuarticForm& f, const Int& p) {
  LocalVerdict affine = zp_soluble(f, p);
  if (affine.soluble) return affine;
  LocalVerdict rev = zp_soluble(f.reversed(), p);
  if (!rev.soluble) {
    return {false, WitnessKind::none, std::nullopt, "no Q_" + p.get_str() + " points"};
  }
  if (*rev.z == 0) {
    if (rev.kind == WitnessKind::hensel_root) {
      // The reversed root lies near t = 0 but not at it; its inverse is a
      // genuine affine Q_p root of f with negative valuation.
      return {true, WitnessKind::hensel_root, std::nullopt, "root of f with negative valuation"};
    }
    return {true, WitnessKind::infinity, std::nullopt, "point at infinity"};
  }
  Rat z = 1 / *rev.z;
  return {true, rev.kind, z, rev.note + " (via t = 1/z)"};
}

// Real place ------------------------------------------------------------------------

namespace {

using Poly = std::vector<Rat>;  // high degree first

void trim(Poly& p) {
  auto it = std::find_if(p.begin(), p.end(), [](const Rat& c) { return c != 0; });
  p.erase(p.begin(), it);
}

Poly derivative(const Poly& p) {
  Poly d;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i) d.push_back(p[i] * static_cast<long>(n - 1 - i));
  trim(d);
  return d;
}

Poly remainder(Poly num, const Poly& den) {
  while (num.size() >= den.size() && !num.empty()) {
    Rat q = num[0] / den[0];
    for (std::size_t i = 0; i < den.size(); ++i) num[i] -= q * den[i];
    num.erase(num.begin());
    trim(num);
  }
  return num;
}

// Sign variations of the chain at +infinity (or -infinity).
unsigned variations_at_infinity(const std::vector<Poly>& chain, bool positive) {
  unsigned count = 0;
  int last = 0;
  for (const Poly& p : chain) {
    int s = sgn(p[0]);
    if (!positive && (p.size() - 1) % 2 == 1) s = -s;
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

unsigned count_real_roots(std::vector<Rat> poly) {
  trim(poly);
  if (poly.empty()) throw DomainError("count_real_roots: zero polynomial");
  if (poly.size() == 1) return 0;
  std::vector<Poly> chain{poly, derivative(poly)};
  while (chain.back().size() > 1) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

LocalVerdict r_soluble(const QuarticForm& f) {
  Poly poly(f.coeffs().begin(), f.coeffs().end());
  trim(poly);
  if (poly[0] > 0) {
    // Beyond the Cauchy bound the leading term dominates.
    Rat bound = 1;
    for (std::size_t i = 1; i < poly.size(); ++i) bound += abs(poly[i]) / poly[0];
    return {true, WitnessKind::square_value, bound, "positive leading coefficient"};
  }
  if (poly.size() > 1 && count_real_roots(poly) > 0) {
    return {true, WitnessKind::root, std::nullopt, "f has a real root"};
  }
  return {false, WitnessKind::none, std::nullopt, "f < 0 on R"};
}

}  // namespace twodescent
