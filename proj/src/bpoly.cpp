#include "apnkit/bpoly.hpp"

#include <algorithm>

namespace apnkit {

int BPoly::deg_y() const noexcept {
  int d = c.empty() ? -1 : 0;
  for (const auto& ci : c) d = std::max(d, upoly::deg(ci));
  return d;
}

int BPoly::total_degree() const noexcept {
  int d = -1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].empty()) d = std::max(d, static_cast<int>(i) + upoly::deg(c[i]));
  }
  return d;
}

void BPoly::trim() {
  for (auto& ci : c) upoly::trim(ci);
  while (!c.empty() && c.back().empty()) c.pop_back();
}

namespace bpoly {

namespace {

std::uint32_t& slot(Monomial& m, Var v) { return v == Var::X ? m.ex : v == Var::Y ? m.ey : m.ez; }

void add_into(Coeffs& a, const Coeffs& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
}

BPoly primitive_part(const FieldSpec& F, const BPoly& p) {
  if (p.is_zero()) return p;
  return divide_y(F, p, content_x(F, p));
}

}  // namespace

BPoly from_mpoly(const MPoly& p, Var vx, Var vy) {
  BPoly r;
  for (const auto& [k, coef] : p.terms()) {
    const Monomial m = Monomial::from_key(k);
    if (m.total() != m.exp(vx) + m.exp(vy)) {
      throw Error(Errc::TooManyVariables, "polynomial uses a third variable");
    }
    const auto i = m.exp(vx), j = m.exp(vy);
    if (r.c.size() <= i) r.c.resize(i + 1);
    if (r.c[i].size() <= j) r.c[i].resize(j + 1, 0);
    r.c[i][j] ^= coef;
  }
  r.trim();
  return r;
}

MPoly to_mpoly(const FieldSpec& F, const BPoly& p, Var vx, Var vy) {
  MPoly r(F);
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    for (std::size_t j = 0; j < p.c[i].size(); ++j) {
      if (p.c[i][j] == 0) continue;
      Monomial m;
      slot(m, vx) = static_cast<std::uint32_t>(i);
      slot(m, vy) += static_cast<std::uint32_t>(j);
      r.add_term(m, p.c[i][j]);
    }
  }
  return r;
}

BPoly constant(Elem c) {
  BPoly r;
  if (c) r.c = {Coeffs{c}};
  return r;
}

BPoly from_y(Coeffs y_poly) {
  upoly::trim(y_poly);
  BPoly r;
  if (!y_poly.empty()) r.c.push_back(std::move(y_poly));
  return r;
}

BPoly from_x(const Coeffs& x_poly) {
  BPoly r;
  for (Elem e : x_poly) r.c.push_back(e ? Coeffs{e} : Coeffs{});
  r.trim();
  return r;
}

BPoly add(const BPoly& a, const BPoly& b) {
  BPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size());
  for (std::size_t i = 0; i < b.c.size(); ++i) add_into(r.c[i], b.c[i]);
  r.trim();
  return r;
}

BPoly mul(const FieldSpec& F, const BPoly& a, const BPoly& b) {
  BPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.resize(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].empty()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].empty()) continue;
      add_into(r.c[i + j], upoly::mul(F, a.c[i], b.c[j]));
    }
  }
  r.trim();
  return r;
}

BPoly scale(const FieldSpec& F, const BPoly& a, Elem s) {
  BPoly r;
  if (s == 0) return r;
  r.c.reserve(a.c.size());
  for (const auto& ci : a.c) r.c.push_back(upoly::scale(F, ci, s));
  return r;
}

BPoly scale_y(const FieldSpec& F, const BPoly& a, const Coeffs& s) {
  BPoly r;
  if (s.empty()) return r;
  r.c.reserve(a.c.size());
  for (const auto& ci : a.c) r.c.push_back(upoly::mul(F, ci, s));
  r.trim();
  return r;
}

BPoly swap(const BPoly& p) {
  BPoly r;
  const int dy = p.deg_y();
  if (dy < 0) return r;
  r.c.assign(dy + 1, Coeffs(p.c.size(), 0));
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    for (std::size_t j = 0; j < p.c[i].size(); ++j) r.c[j][i] = p.c[i][j];
  }
  r.trim();
  return r;
}

Coeffs eval_y(const FieldSpec& F, const BPoly& p, Elem y0) {
  Coeffs r(p.c.size(), 0);
  for (std::size_t i = 0; i < p.c.size(); ++i) r[i] = upoly::eval(F, p.c[i], y0);
  upoly::trim(r);
  return r;
}

namespace {

// a(y + y0) by Horner's rule.
Coeffs taylor_shift(const FieldSpec& F, const Coeffs& a, Elem y0) {
  if (y0 == 0 || a.size() <= 1) return a;
  Coeffs r;
  for (std::size_t k = a.size(); k-- > 0;) {
    // r = r * (y + y0) + a[k]
    Coeffs next(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] ^= r[i];
      next[i] ^= F.mul(r[i], y0);
    }
    next[0] ^= a[k];
    r = std::move(next);
  }
  upoly::trim(r);
  return r;
}

}  // namespace

BPoly shift_y(const FieldSpec& F, const BPoly& p, Elem y0) {
  BPoly r;
  r.c.reserve(p.c.size());
  for (const auto& ci : p.c) r.c.push_back(taylor_shift(F, ci, y0));
  r.trim();
  return r;
}

BPoly shear(const FieldSpec& F, const BPoly& p, Elem s) {
  if (s == 0 || p.is_zero()) return p;
  BPoly r;
  BPoly power = constant(1);
  BPoly lin;
  lin.c = {Coeffs{0, s}, Coeffs{1}};
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    if (i) power = mul(F, power, lin);
    if (p.c[i].empty()) continue;
    r = add(r, scale_y(F, power, p.c[i]));
  }
  return r;
}

BPoly deriv_x(const BPoly& p) {
  BPoly r;
  if (p.c.size() <= 1) return r;
  r.c.resize(p.c.size() - 1);
  for (std::size_t i = 1; i < p.c.size(); i += 2) r.c[i - 1] = p.c[i];
  r.trim();
  return r;
}

BPoly deriv_y(const BPoly& p) {
  BPoly r;
  r.c.reserve(p.c.size());
  for (const auto& ci : p.c) r.c.push_back(upoly::derivative(ci));
  r.trim();
  return r;
}

BPoly sqrt(const FieldSpec& F, const BPoly& p) {
  BPoly r;
  if (p.is_zero()) return r;
  r.c.resize(p.c.size() / 2 + 1);
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    if (p.c[i].empty()) continue;
    if (i % 2) throw Error(Errc::InvalidArgument, "bivariate square root of a non-square");
    r.c[i / 2] = upoly::sqrt(F, p.c[i]);
  }
  r.trim();
  return r;
}

BPoly map(const Embedding& e, const BPoly& p) {
  BPoly r;
  r.c.reserve(p.c.size());
  for (const auto& ci : p.c) r.c.push_back(upoly::map(e, ci));
  return r;
}

std::optional<BPoly> preimage(const Embedding& e, const BPoly& p) {
  BPoly r;
  r.c.reserve(p.c.size());
  for (const auto& ci : p.c) {
    Coeffs out(ci.size(), 0);
    for (std::size_t j = 0; j < ci.size(); ++j) {
      if (ci[j] == 0) continue;
      auto v = e.preimage(ci[j]);
      if (!v) return std::nullopt;
      out[j] = *v;
    }
    r.c.push_back(std::move(out));
  }
  return r;
}

BPoly frobenius(const FieldSpec& F, const BPoly& p, int k) {
  BPoly r = p;
  for (auto& ci : r.c) {
    for (auto& v : ci) v = F.frobenius(v, k);
  }
  return r;
}

Coeffs content_x(const FieldSpec& F, const BPoly& p) {
  Coeffs g;
  for (const auto& ci : p.c) {
    if (ci.empty()) continue;
    g = upoly::gcd(F, g, ci);
    if (upoly::is_one(g)) break;
  }
  return g;
}

Coeffs content_y(const FieldSpec& F, const BPoly& p) { return content_x(F, swap(p)); }

BPoly divide_y(const FieldSpec& F, const BPoly& p, const Coeffs& d) {
  if (upoly::is_one(d)) return p;
  BPoly r;
  r.c.reserve(p.c.size());
  for (const auto& ci : p.c) r.c.push_back(ci.empty() ? Coeffs{} : upoly::exact_quo(F, ci, d));
  return r;
}

std::optional<BPoly> try_divide(const FieldSpec& F, const BPoly& p, const BPoly& q) {
  if (q.is_zero()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
  if (p.is_zero()) return BPoly{};
  const int dq = q.deg_x();
  if (p.deg_x() < dq || p.deg_y() < q.deg_y()) return std::nullopt;
  BPoly r = p;
  BPoly quo;
  quo.c.resize(p.deg_x() - dq + 1);
  const Coeffs& lq = q.lc_x();
  const bool unit_lc = lq.size() == 1;
  const Elem lq_inv = unit_lc ? F.inv(lq[0]) : Elem{0};
  while (!r.is_zero() && r.deg_x() >= dq) {
    const int shift = r.deg_x() - dq;
    Coeffs qc;
    if (unit_lc) {
      qc = upoly::scale(F, r.lc_x(), lq_inv);
    } else {
      auto [qq, rr] = upoly::divmod(F, r.lc_x(), lq);
      if (!rr.empty()) return std::nullopt;
      qc = std::move(qq);
    }
    for (int i = 0; i <= dq; ++i) {
      if (!q.c[i].empty()) add_into(r.c[i + shift], upoly::mul(F, qc, q.c[i]));
    }
    quo.c[shift] = std::move(qc);
    r.trim();
  }
  if (!r.is_zero()) return std::nullopt;
  quo.trim();
  return quo;
}

BPoly exact_divide(const FieldSpec& F, const BPoly& p, const BPoly& q) {
  auto r = try_divide(F, p, q);
  if (!r) throw Error(Errc::InexactDivision, "bivariate division is not exact");
  return *r;
}

BPoly pseudo_rem(const FieldSpec& F, const BPoly& p, const BPoly& q) {
  if (q.is_zero()) throw Error(Errc::ZeroPolynomial, "pseudo-remainder by zero");
  const int dq = q.deg_x();
  BPoly r = p;
  int steps = std::max(0, p.deg_x() - dq + 1);
  while (!r.is_zero() && r.deg_x() >= dq) {
    const int shift = r.deg_x() - dq;
    const Coeffs lr = r.lc_x();
    for (auto& ci : r.c) ci = upoly::mul(F, ci, q.lc_x());
    for (int i = 0; i <= dq; ++i) {
      if (!q.c[i].empty()) add_into(r.c[i + shift], upoly::mul(F, lr, q.c[i]));
    }
    r.trim();
    --steps;
  }
  for (; steps > 0 && !r.is_zero(); --steps) r = scale_y(F, r, q.lc_x());
  return r;
}

Elem grlex_lc(const BPoly& p) {
  int best_t = -1, best_i = -1;
  Elem lc = 0;
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    if (p.c[i].empty()) continue;
    const int t = static_cast<int>(i) + upoly::deg(p.c[i]);
    if (t > best_t || (t == best_t && static_cast<int>(i) > best_i)) {
      best_t = t;
      best_i = static_cast<int>(i);
      lc = p.c[i].back();
    }
  }
  return lc;
}

BPoly grlex_monic(const FieldSpec& F, const BPoly& p) {
  if (p.is_zero()) return p;
  const Elem lc = grlex_lc(p);
  return lc == 1 ? p : scale(F, p, F.inv(lc));
}

namespace {

// Tries to prove gcd(a, b) = 1 for x-primitive a, b by finding y0 (in F or
// a small extension) with both leading coefficients nonzero and coprime
// specializations.
bool coprime_by_specialization(const FieldSpec& F, const BPoly& a, const BPoly& b) {
  constexpr int kPointsPerField = 24;
  for (int e = 1; e <= 4; ++e) {
    if (F.degree() * e > kMaxFieldDegree) break;
    FieldSpec K = F;
    BPoly ak = a, bk = b;
    if (e > 1) {
      K = extension_field(F, e);
      const Embedding emb = embed_field(F, K);
      ak = map(emb, a);
      bk = map(emb, b);
    }
    const Elem count = K.degree() >= 64 ? Elem{kPointsPerField} : std::min<Elem>(K.size(), kPointsPerField);
    for (Elem y0 = 0; y0 < count; ++y0) {
      if (upoly::eval(K, ak.lc_x(), y0) == 0 || upoly::eval(K, bk.lc_x(), y0) == 0) continue;
      const Coeffs g = upoly::gcd(K, eval_y(K, ak, y0), eval_y(K, bk, y0));
      if (upoly::deg(g) == 0) return true;
    }
  }
  return false;
}

BPoly gcd_primitive(const FieldSpec& F, BPoly a, BPoly b) {
  if (a.deg_x() <= 0 || b.deg_x() <= 0) return constant(1);
  if (coprime_by_specialization(F, a, b)) return constant(1);
  if (a.deg_x() < b.deg_x()) std::swap(a, b);
  while (!b.is_zero()) {
    BPoly r = pseudo_rem(F, a, b);
    a = std::move(b);
    b = primitive_part(F, r);
    if (b.deg_x() == 0) return constant(1);
  }
  return primitive_part(F, a);
}

}  // namespace

BPoly gcd(const FieldSpec& F, const BPoly& p, const BPoly& q) {
  if (p.is_zero() && q.is_zero()) throw Error(Errc::ZeroPolynomial, "gcd(0, 0) is undefined");
  if (p.is_zero()) return grlex_monic(F, q);
  if (q.is_zero()) return grlex_monic(F, p);
  const Coeffs cp = content_x(F, p), cq = content_x(F, q);
  const Coeffs c = upoly::gcd(F, cp, cq);
  const BPoly g = gcd_primitive(F, divide_y(F, p, cp), divide_y(F, q, cq));
  return grlex_monic(F, scale_y(F, g, c));
}

}  // namespace bpoly
}  // namespace apnkit
