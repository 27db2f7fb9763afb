#include "apnkit/upoly.hpp"

#include <algorithm>

namespace apnkit {
namespace upoly {

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r = a.size() >= b.size() ? a : b;
  const Coeffs& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] ^= s[i];
  trim(r);
  return r;
}

void add_shifted(Coeffs& a, const Coeffs& b, std::size_t shift) {
  if (b.empty()) return;
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] ^= b[i];
  trim(a);
}

Coeffs mul(const FieldSpec& F, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const Elem ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= F.mul(ai, b[j]);
  }
  trim(r);
  return r;
}

Coeffs scale(const FieldSpec& F, const Coeffs& a, Elem c) {
  if (c == 0) return {};
  if (c == 1) return a;
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

Coeffs monic(const FieldSpec& F, const Coeffs& a) {
  if (a.empty() || a.back() == 1) return a;
  return scale(F, a, F.inv(a.back()));
}

std::pair<Coeffs, Coeffs> divmod(const FieldSpec& F, const Coeffs& a, const Coeffs& b) {
  if (b.empty()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
  if (a.size() < b.size()) return {{}, a};
  Coeffs r = a;
  const std::size_t db = b.size() - 1;
  Coeffs q(a.size() - db, 0);
  const Elem inv_lead = F.inv(b.back());
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    const Elem c = F.mul(r[i], inv_lead);
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] ^= F.mul(c, b[j]);
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

Coeffs rem(const FieldSpec& F, const Coeffs& a, const Coeffs& b) {
  if (b.empty()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
  if (a.size() < b.size()) return a;
  Coeffs r = a;
  const std::size_t db = b.size() - 1;
  const Elem inv_lead = F.inv(b.back());
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    const Elem c = F.mul(r[i], inv_lead);
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] ^= F.mul(c, b[j]);
  }
  r.resize(db);
  trim(r);
  return r;
}

Coeffs exact_quo(const FieldSpec& F, const Coeffs& a, const Coeffs& b) {
  auto [q, r] = divmod(F, a, b);
  if (!r.empty()) throw Error(Errc::InexactDivision, "univariate division leaves a remainder");
  return q;
}

Coeffs gcd(const FieldSpec& F, Coeffs a, Coeffs b) {
  while (!b.empty()) {
    Coeffs r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Coeffs inv_mod(const FieldSpec& F, const Coeffs& a, const Coeffs& m) {
  // Extended Euclid tracking only the coefficient of a.
  Coeffs r0 = m, r1 = rem(F, a, m);
  Coeffs s0, s1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(F, r0, r1);
    Coeffs s = add(s0, mul(F, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw Error(Errc::ZeroInverse, "polynomial is not invertible modulo m");
  return rem(F, scale(F, s0, F.inv(r0[0])), m);
}

Coeffs mul_mod(const FieldSpec& F, const Coeffs& a, const Coeffs& b, const Coeffs& m) {
  return rem(F, mul(F, a, b), m);
}

namespace {

Coeffs square(const FieldSpec& F, const Coeffs& a) {
  if (a.empty()) return {};
  Coeffs r(2 * a.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[2 * i] = F.sqr(a[i]);
  return r;
}

Coeffs x_poly() { return Coeffs{0, 1}; }

}  // namespace

Coeffs frobenius_mod(const FieldSpec& F, Coeffs a, int k, const Coeffs& m) {
  a = rem(F, a, m);
  for (int i = 0; i < k; ++i) a = rem(F, square(F, a), m);
  return a;
}

Coeffs derivative(const Coeffs& a) {
  if (a.size() <= 1) return {};
  Coeffs r(a.size() - 1, 0);
  for (std::size_t i = 1; i < a.size(); i += 2) r[i - 1] = a[i];
  trim(r);
  return r;
}

Coeffs sqrt(const FieldSpec& F, const Coeffs& a) {
  if (a.empty()) return {};
  Coeffs r((a.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i % 2 == 1 && a[i] != 0) throw Error(Errc::InvalidArgument, "polynomial is not a square");
    if (i % 2 == 0) r[i / 2] = F.sqrt(a[i]);
  }
  trim(r);
  return r;
}

Elem eval(const FieldSpec& F, const Coeffs& a, Elem x) {
  Elem r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.mul(r, x) ^ a[i];
  return r;
}

Coeffs map(const Embedding& e, const Coeffs& a) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = e.map(a[i]);
  return r;
}

bool is_irreducible(const FieldSpec& F, const Coeffs& f) {
  const int n = deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  const Coeffs fm = monic(F, f);
  Coeffs h = x_poly();
  for (int i = 1; 2 * i <= n; ++i) {
    h = frobenius_mod(F, h, F.degree(), fm);
    Coeffs g = gcd(F, fm, add(h, x_poly()));
    if (!is_one(g)) return false;
  }
  return true;
}

FactorList squarefree(const FieldSpec& F, const Coeffs& f) {
  FactorList out;
  if (deg(f) <= 0) return out;
  Coeffs fp = derivative(f);
  if (fp.empty()) {
    for (auto& [g, e] : squarefree(F, sqrt(F, f))) out.emplace_back(std::move(g), 2 * e);
    return out;
  }
  Coeffs c = gcd(F, f, fp);
  Coeffs w = exact_quo(F, f, c);
  int i = 1;
  while (!is_one(w)) {
    Coeffs y = gcd(F, w, c);
    Coeffs z = exact_quo(F, w, y);
    if (deg(z) > 0) out.emplace_back(monic(F, z), i);
    ++i;
    w = std::move(y);
    c = exact_quo(F, c, w);
  }
  if (deg(c) > 0) {
    for (auto& [g, e] : squarefree(F, sqrt(F, c))) out.emplace_back(std::move(g), 2 * e);
  }
  return out;
}

FactorList distinct_degree(const FieldSpec& F, const Coeffs& f) {
  FactorList out;
  Coeffs rest = monic(F, f);
  Coeffs h = x_poly();
  for (int d = 1; 2 * d <= deg(rest); ++d) {
    h = frobenius_mod(F, h, F.degree(), rest);
    Coeffs g = gcd(F, rest, add(h, x_poly()));
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      rest = exact_quo(F, rest, g);
      h = rem(F, h, rest);
    }
  }
  if (deg(rest) > 0) out.emplace_back(rest, deg(rest));
  return out;
}

std::vector<Coeffs> equal_degree(const FieldSpec& F, const Coeffs& f, int d, std::mt19937_64& rng) {
  const int n = deg(f);
  if (n <= d) return {f};
  const int trace_len = F.degree() * d;
  while (true) {
    Coeffs a(static_cast<std::size_t>(n), 0);
    for (auto& c : a) c = ((Elem{rng()} << 64) | rng()) & F.mask();
    trim(a);
    if (deg(a) <= 0) continue;
    // Absolute trace map a + a^2 + ... + a^(2^(md - 1)) mod f.
    Coeffs t = a, p = a;
    for (int i = 1; i < trace_len; ++i) {
      p = rem(F, square(F, p), f);
      t = add(t, p);
    }
    Coeffs g = gcd(F, f, t);
    if (deg(g) > 0 && deg(g) < n) {
      auto left = equal_degree(F, g, d, rng);
      auto right = equal_degree(F, exact_quo(F, f, g), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

namespace {

bool coeffs_less(const Coeffs& a, const Coeffs& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

Factored factor(const FieldSpec& F, const Coeffs& f, std::uint64_t seed) {
  if (f.empty()) throw Error(Errc::ZeroPolynomial, "cannot factor the zero polynomial");
  Factored out;
  out.unit = f.back();
  std::mt19937_64 rng(seed);
  for (auto& [s, e] : squarefree(F, monic(F, f))) {
    for (auto& [g, d] : distinct_degree(F, s)) {
      for (auto& p : equal_degree(F, g, d, rng)) out.factors.emplace_back(monic(F, p), e);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (coeffs_less(a.first, b.first)) return true;
    if (coeffs_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

std::vector<Elem> roots(const FieldSpec& F, const Coeffs& f, std::uint64_t seed) {
  if (f.empty()) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<Elem> out;
  if (deg(f) == 0) return out;
  Coeffs fm = monic(F, f);
  Coeffs h = frobenius_mod(F, x_poly(), F.degree(), fm);
  Coeffs g = gcd(F, fm, add(h, x_poly()));
  if (deg(g) <= 0) return out;
  std::mt19937_64 rng(seed);
  for (auto& lin : equal_degree(F, g, 1, rng)) out.push_back(monic(F, lin)[0]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace upoly

UPoly::UPoly(FieldSpec spec, Coeffs coeffs) : spec_(std::move(spec)), c_(std::move(coeffs)) {
  upoly::trim(c_);
  for (auto v : c_) {
    if (!spec_.contains(v)) throw Error(Errc::CoefficientOutOfField, hex128(v) + " not in field");
  }
}

UPoly UPoly::operator+(const UPoly& o) const {
  if (spec_ != o.spec_) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  return UPoly(spec_, upoly::add(c_, o.c_));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (spec_ != o.spec_) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  return UPoly(spec_, upoly::mul(spec_, c_, o.c_));
}

UFactorization UPoly::factor(std::uint64_t seed) const {
  auto fac = upoly::factor(spec_, c_, seed);
  UFactorization out;
  out.unit = fac.unit;
  for (auto& [g, e] : fac.factors) out.factors.emplace_back(UPoly(spec_, g), e);
  return out;
}

}  // namespace apnkit
