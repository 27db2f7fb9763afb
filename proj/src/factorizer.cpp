#include "apnkit/factorizer.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "apnkit/bpoly.hpp"

namespace apnkit {

namespace {

using FacList = std::vector<std::pair<BPoly, int>>;
using YSeries = std::vector<Coeffs>;  // s[k] = coefficient of y^k, a polynomial in x

bool is_const(const BPoly& p) { return p.total_degree() <= 0; }

BPoly divide_x(const FieldSpec& F, const BPoly& p, const Coeffs& d) {
  return bpoly::swap(bpoly::divide_y(F, bpoly::swap(p), d));
}

// p(x, y + s*x)
BPoly yshear(const FieldSpec& F, const BPoly& p, Elem s) {
  return bpoly::swap(bpoly::shear(F, bpoly::swap(p), s));
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Squarefree decomposition (characteristic 2).

FacList squarefree(const FieldSpec& F, const BPoly& p) {
  FacList out;
  if (is_const(p)) return out;
  const BPoly dx = bpoly::deriv_x(p), dy = bpoly::deriv_y(p);
  if (dx.is_zero() && dy.is_zero()) {
    for (auto& [g, e] : squarefree(F, bpoly::sqrt(F, p))) out.emplace_back(std::move(g), 2 * e);
    return out;
  }
  BPoly c = bpoly::gcd(F, p, dx);
  if (!is_const(c)) c = bpoly::gcd(F, c, dy);
  BPoly w = bpoly::exact_divide(F, p, c);
  for (int i = 1; !is_const(w); ++i) {
    BPoly y = is_const(c) ? bpoly::constant(1) : bpoly::gcd(F, w, c);
    BPoly z = bpoly::exact_divide(F, w, y);
    if (!is_const(z)) out.emplace_back(bpoly::grlex_monic(F, z), i);
    w = std::move(y);
    if (!is_const(c)) c = bpoly::exact_divide(F, c, w);
  }
  if (!is_const(c)) {
    for (auto& [g, e] : squarefree(F, bpoly::sqrt(F, c))) out.emplace_back(std::move(g), 2 * e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting modulo y^N.

Coeffs series_coeff(const YSeries& s, std::size_t k) { return k < s.size() ? s[k] : Coeffs{}; }

YSeries to_series(const BPoly& p, std::size_t N) {
  BPoly t = bpoly::swap(p);
  YSeries s(N);
  for (std::size_t k = 0; k < N && k < t.c.size(); ++k) s[k] = t.c[k];
  return s;
}

BPoly from_series(const YSeries& s) {
  BPoly t;
  t.c = s;
  t.trim();
  return bpoly::swap(t);
}

YSeries series_mul(const FieldSpec& F, const YSeries& a, const YSeries& b, std::size_t N) {
  YSeries r(N);
  for (std::size_t i = 0; i < a.size() && i < N; ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < N; ++j) {
      if (b[j].empty()) continue;
      r[i + j] = upoly::add(r[i + j], upoly::mul(F, a[i], b[j]));
    }
  }
  return r;
}

// f = A*B mod y^N with A = a0, B = b0 mod y; a0, b0 monic and coprime.
std::pair<YSeries, YSeries> lift_pair(const FieldSpec& F, const YSeries& f, const Coeffs& a0, const Coeffs& b0,
                                      std::size_t N) {
  YSeries A(N), B(N);
  A[0] = a0;
  B[0] = b0;
  const Coeffs s = upoly::inv_mod(F, b0, a0);
  for (std::size_t k = 1; k < N; ++k) {
    Coeffs e = series_coeff(f, k);
    for (std::size_t i = 0; i < k; ++i) {
      if (A[i].empty() || B[k - i].empty()) continue;
      e = upoly::add(e, upoly::mul(F, A[i], B[k - i]));
    }
    // A[k] and B[0] pair is handled by the update below; B[k] is still zero.
    if (e.empty()) continue;
    Coeffs da = upoly::rem(F, upoly::mul(F, e, s), a0);
    Coeffs db = upoly::exact_quo(F, upoly::add(e, upoly::mul(F, da, b0)), a0);
    A[k] = std::move(da);
    B[k] = std::move(db);
  }
  return {std::move(A), std::move(B)};
}

std::vector<YSeries> lift_all(const FieldSpec& F, const YSeries& f, const std::vector<Coeffs>& facs,
                              std::size_t lo, std::size_t hi, std::size_t N) {
  if (hi - lo == 1) return {f};
  const std::size_t mid = (lo + hi) / 2;
  Coeffs a0{1}, b0{1};
  for (std::size_t i = lo; i < mid; ++i) a0 = upoly::mul(F, a0, facs[i]);
  for (std::size_t i = mid; i < hi; ++i) b0 = upoly::mul(F, b0, facs[i]);
  auto [A, B] = lift_pair(F, f, a0, b0, N);
  auto left = lift_all(F, A, facs, lo, mid, N);
  auto right = lift_all(F, B, facs, mid, hi, N);
  left.insert(left.end(), std::make_move_iterator(right.begin()), std::make_move_iterator(right.end()));
  return left;
}

// ---------------------------------------------------------------------------
// Recombination. g is monic in x with deg_x g = total degree.

std::vector<BPoly> recombine(const FieldSpec& F, BPoly g, const std::vector<YSeries>& lifted, std::size_t N,
                             std::uint64_t& budget) {
  const std::size_t r = lifted.size();
  std::vector<int> xdeg(r);
  std::vector<Coeffs> trace(r);  // coefficient of x^(e_i - 1), as a series in y
  for (std::size_t i = 0; i < r; ++i) {
    xdeg[i] = upoly::deg(lifted[i][0]);
    Coeffs t(N, 0);
    for (std::size_t k = 0; k < N; ++k) {
      const Coeffs& ck = lifted[i][k];
      if (xdeg[i] >= 1 && static_cast<int>(ck.size()) >= xdeg[i]) t[k] = ck[xdeg[i] - 1];
    }
    trace[i] = std::move(t);
  }
  std::vector<int> active(r);
  for (std::size_t i = 0; i < r; ++i) active[i] = static_cast<int>(i);
  std::vector<BPoly> out;

  for (std::size_t s = 1; 2 * s <= active.size();) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      if (budget == 0) throw Error(Errc::RecombinationBudgetExceeded, "subset budget exhausted");
      --budget;
      // Cheap filter: the x^(e-1) coefficient of a true factor has y-degree <= 1.
      bool pass = true;
      for (std::size_t k = 2; k < N && pass; ++k) {
        Elem acc = 0;
        for (std::size_t i : idx) acc ^= trace[active[i]][k];
        pass = acc == 0;
      }
      if (pass) {
        YSeries prod = lifted[active[idx[0]]];
        int e = xdeg[active[idx[0]]];
        for (std::size_t i = 1; i < s; ++i) {
          prod = series_mul(F, prod, lifted[active[idx[i]]], N);
          e += xdeg[active[idx[i]]];
        }
        BPoly cand = from_series(prod);
        bool bounded = true;
        for (std::size_t i = 0; i < cand.c.size() && bounded; ++i) {
          bounded = upoly::deg(cand.c[i]) <= e - static_cast<int>(i);
        }
        if (bounded) {
          if (auto q = bpoly::try_divide(F, g, cand)) {
            out.push_back(std::move(cand));
            g = std::move(*q);
            std::vector<int> rest;
            for (std::size_t i = 0, j = 0; i < active.size(); ++i) {
              if (j < s && idx[j] == i) {
                ++j;
                continue;
              }
              rest.push_back(active[i]);
            }
            active = std::move(rest);
            found = true;
            break;
          }
        }
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == active.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (!is_const(g)) out.push_back(std::move(g));
  return out;
}

// ---------------------------------------------------------------------------
// Squarefree, primitive input: irreducible factors over F, or nullopt when F
// has no usable shear or specialization point.

constexpr Elem kPointCap = 256;
constexpr int kGoodPoints = 6;

std::optional<std::vector<BPoly>> factor_sqfree_over(const FieldSpec& F, const BPoly& g, std::uint64_t seed,
                                                     std::uint64_t& budget, std::size_t max_factors = SIZE_MAX) {
  const int D = g.total_degree();
  if (D <= 1) return std::vector<BPoly>{bpoly::grlex_monic(F, g)};
  if (g.deg_y() == 0) {
    std::vector<BPoly> out;
    for (const auto& [h, e] : upoly::factor(F, bpoly::swap(g).c[0], seed).factors) out.push_back(bpoly::from_x(h));
    return out;
  }
  if (g.deg_x() == 0) {
    std::vector<BPoly> out;
    for (const auto& [h, e] : upoly::factor(F, g.c[0], seed).factors) out.push_back(bpoly::from_y(h));
    return out;
  }

  const Elem cap = F.degree() >= 64 ? kPointCap : std::min<Elem>(F.size(), kPointCap);
  BPoly h = g;
  bool swapped = false;
  Elem shear = 0;
  // Monic in x of full degree, and separable in x so that some
  // specialization can be squarefree.
  auto good_orientation = [&](const BPoly& p) {
    if (p.deg_x() != D || p.lc_x().size() != 1) return false;
    const BPoly dx = bpoly::deriv_x(p);
    return !dx.is_zero() && bpoly::gcd(F, p, dx).total_degree() == 0;
  };
  if (!good_orientation(h)) {
    if (good_orientation(bpoly::swap(h))) {
      h = bpoly::swap(h);
      swapped = true;
    } else {
      for (Elem s = 1; s < cap && !shear; ++s) {
        BPoly t = yshear(F, h, s);
        if (good_orientation(t)) {
          h = std::move(t);
          shear = s;
        }
      }
      if (!shear) return std::nullopt;
    }
  }

  Elem best_y0 = 0;
  upoly::Factored best;
  int good = 0;
  for (Elem y0 = 0; y0 < cap && good < kGoodPoints; ++y0) {
    const Coeffs u = bpoly::eval_y(F, h, y0);
    const Coeffs du = upoly::derivative(u);
    if (du.empty() || upoly::deg(upoly::gcd(F, u, du)) != 0) continue;
    auto fu = upoly::factor(F, u, seed);
    if (good == 0 || fu.factors.size() < best.factors.size()) {
      best = std::move(fu);
      best_y0 = y0;
    }
    ++good;
    if (best.factors.size() == 1) break;
  }
  if (good == 0 || best.factors.size() > max_factors) return std::nullopt;
  if (best.factors.size() == 1) return std::vector<BPoly>{bpoly::grlex_monic(F, g)};

  BPoly hh = bpoly::shift_y(F, h, best_y0);
  hh = bpoly::scale(F, hh, F.inv(hh.lc_x()[0]));
  const std::size_t N = static_cast<std::size_t>(hh.deg_y()) + 1;
  std::vector<Coeffs> ufacs;
  for (const auto& [f, e] : best.factors) ufacs.push_back(f);
  const auto lifted = lift_all(F, to_series(hh, N), ufacs, 0, ufacs.size(), N);
  std::vector<BPoly> parts = recombine(F, hh, lifted, N, budget);

  std::vector<BPoly> out;
  for (auto& f : parts) {
    BPoly t = bpoly::shift_y(F, f, best_y0);
    if (shear) t = yshear(F, t, shear);
    if (swapped) t = bpoly::swap(t);
    out.push_back(bpoly::grlex_monic(F, t));
  }
  return out;
}

std::vector<BPoly> factor_sqfree(const FieldSpec& F, const BPoly& g, const FactorOptions& opt,
                                 std::uint64_t& budget) {
  if (auto r = factor_sqfree_over(F, g, opt.seed, budget)) return *r;
  // Extensions of degree prime to D split fewer factors further, and fields
  // of 32+ elements offer enough points to find a sparse specialization.
  const int D = g.total_degree();
  std::vector<int> order;
  for (int e = 2; e <= opt.max_extension && F.degree() * e <= kMaxFieldDegree; ++e) order.push_back(e);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto rank = [&](int e) { return (std::gcd(e, D) == 1 ? 0 : 2) + (F.degree() * e >= 5 ? 0 : 1); };
    return rank(a) < rank(b);
  });
  // First pass skips fields where every point splits into many factors
  // (x^(2^e-1) is constant on F_{2^e}^*, for instance).
  constexpr std::size_t kManyFactors = 12;
  for (int pass = 0; pass < 2; ++pass) {
    for (int e : order) {
      const FieldSpec K = extension_field(F, e);
      const Embedding emb = embed_field(F, K);
      auto rk = factor_sqfree_over(K, bpoly::map(emb, g), opt.seed, budget, pass == 0 ? kManyFactors : SIZE_MAX);
      if (!rk) continue;
      // Group into orbits of a -> a^(2^m) and push each orbit product down.
      std::vector<BPoly> out;
      std::vector<bool> used(rk->size(), false);
      for (std::size_t i = 0; i < rk->size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        BPoly prod = (*rk)[i];
        BPoly cur = (*rk)[i];
        while (true) {
          cur = bpoly::grlex_monic(K, bpoly::frobenius(K, cur, F.degree()));
          if (cur == (*rk)[i]) break;
          auto it = std::find(rk->begin(), rk->end(), cur);
          if (it == rk->end()) throw Error(Errc::InvalidArgument, "conjugate factor missing in extension split");
          used[it - rk->begin()] = true;
          prod = bpoly::mul(K, prod, cur);
        }
        auto down = bpoly::preimage(emb, prod);
        if (!down) throw Error(Errc::InvalidArgument, "orbit product is not defined over the base field");
        out.push_back(bpoly::grlex_monic(F, *down));
      }
      return out;
    }
  }
  throw Error(Errc::NoGoodSpecialization,
              "no squarefree specialization within extensions of degree " + std::to_string(opt.max_extension));
}

// Full factorization of a nonzero BPoly; factors grlex-monic.
FacList factor_bpoly(const FieldSpec& F, const BPoly& p, const FactorOptions& opt) {
  std::uint64_t budget = opt.recombination_budget;
  FacList out;
  const Coeffs cy = bpoly::content_x(F, p);
  for (const auto& [h, e] : upoly::factor(F, cy, opt.seed).factors) out.emplace_back(bpoly::from_y(h), e);
  const BPoly p1 = bpoly::divide_y(F, p, cy);
  const Coeffs cx = bpoly::content_y(F, p1);
  for (const auto& [h, e] : upoly::factor(F, cx, opt.seed).factors) out.emplace_back(bpoly::from_x(h), e);
  const BPoly p2 = divide_x(F, p1, cx);
  for (const auto& [s, mult] : squarefree(F, p2)) {
    for (auto& f : factor_sqfree(F, s, opt, budget)) out.emplace_back(std::move(f), mult);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::pair<Var, Var> variable_pair(const MPoly& p) {
  std::vector<Var> used;
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (p.uses(v)) used.push_back(v);
  }
  if (used.size() > 2) throw Error(Errc::TooManyVariables, "expected a polynomial in at most two variables");
  if (used.size() == 2) return {used[0], used[1]};
  if (used.size() == 1) return {used[0], used[0] == Var::X ? Var::Y : Var::X};
  return {Var::X, Var::Y};
}

void finish(Factorization& f, const MPoly& input) {
  std::sort(f.factors.begin(), f.factors.end(),
            [](const auto& a, const auto& b) { return factor_less(a.first, b.first); });
  // merge repeated factors
  std::vector<std::pair<MPoly, int>> merged;
  for (auto& [g, e] : f.factors) {
    if (!merged.empty() && merged.back().first == g) {
      merged.back().second += e;
    } else {
      merged.emplace_back(std::move(g), e);
    }
  }
  f.factors = std::move(merged);
  if (f.expand() != input) throw Error(Errc::InvalidArgument, "factorization failed its round-trip check");
}

MPoly rehomogenize(const MPoly& f, int degree) {
  MPoly r(f.spec());
  for (const auto& [k, c] : f.terms()) {
    Monomial m = Monomial::from_key(k);
    m.ez = static_cast<std::uint32_t>(degree) - m.ex - m.ey;
    r.add_term(m, c);
  }
  return r.monic();
}

// Dense image of p(x, y, a*x + b*y + c).
BPoly section_bpoly(const FieldSpec& K, const MPoly& p, Elem a, Elem b, Elem c) {
  const int D = p.total_degree();
  BPoly lin;
  lin.c = {Coeffs{c, b}, Coeffs{a}};
  lin.trim();
  std::vector<BPoly> pw{bpoly::constant(1)};
  for (int i = 1; i <= D; ++i) pw.push_back(bpoly::mul(K, pw.back(), lin));
  std::vector<Coeffs> acc(D + 1, Coeffs(D + 1, 0));  // acc[i][j]: x^i y^j
  for (const auto& [key, coef] : p.terms()) {
    const Monomial m = Monomial::from_key(key);
    const BPoly& L = pw[m.ez];
    for (std::size_t i = 0; i < L.c.size(); ++i) {
      for (std::size_t j = 0; j < L.c[i].size(); ++j) {
        if (L.c[i][j]) acc[i + m.ex][j + m.ey] ^= K.mul(coef, L.c[i][j]);
      }
    }
  }
  BPoly r;
  r.c = std::move(acc);
  r.trim();
  return r;
}

// A polynomial irreducible over F with a nonsingular F-rational point is
// absolutely irreducible: Frobenius permutes the conjugate factors, so all of
// them would pass through the point and make it singular. Homogeneous input
// is read in the chart z = 1. Returns the point as text, if one is found.
std::optional<std::string> smooth_rational_point(const MPoly& p) {
  const FieldSpec& F = p.spec();
  MPoly q = p;
  if (p.uses(Var::Z) && p.is_homogeneous()) q = substitute(p, {Var::X, Var::Y, Elem{1}});
  std::vector<Var> vars;
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (q.uses(v)) vars.push_back(v);
  }
  if (vars.size() != 2) return std::nullopt;
  const Var u = vars[0], w = vars[1];
  const MPoly du = q.derivative(u), dw = q.derivative(w);
  auto at = [&](const MPoly& m, Elem a, Elem b) {
    Elem xyz[3] = {0, 0, 0};
    xyz[static_cast<int>(u)] = a;
    xyz[static_cast<int>(w)] = b;
    return m.eval(xyz[0], xyz[1], xyz[2]);
  };
  const int line_deg = q.degree_in(w);
  const std::uint64_t tries = F.degree() >= 8 ? 256 : F.size();
  for (std::uint64_t i = 0; i < tries; ++i) {
    const Elem a = i;
    // q(a, t) as a univariate polynomial in t.
    Coeffs line(line_deg + 1, 0);
    for (const auto& [key, c] : q.terms()) {
      const Monomial m = Monomial::from_key(key);
      const std::uint32_t e[3] = {m.ex, m.ey, m.ez};
      line[e[static_cast<int>(w)]] ^= F.mul(c, F.pow(a, std::uint64_t{e[static_cast<int>(u)]}));
    }
    upoly::trim(line);
    if (upoly::deg(line) < 1) continue;
    for (Elem b : upoly::roots(F, line)) {
      if (at(du, a, b) || at(dw, a, b)) {
        return "(" + hex128(a) + ", " + hex128(b) + ")";
      }
    }
  }
  return std::nullopt;
}

using FactorFn = Factorization (*)(const MPoly&, const FactorOptions&);

Verdict verdict_by(const MPoly& p, const FactorOptions& opt, FactorFn factor) {
  Verdict v;
  const Factorization base = factor(p, opt);
  const int n = base.count();
  if (n == 0) throw Error(Errc::InvalidArgument, "constant polynomial has no irreducibility verdict");
  if (n > 1) {
    v.status = Status::ReducibleOverBase;
    v.witness = base;
    v.certificate = "factorization over F_2^" + std::to_string(p.spec().degree());
    return v;
  }
  const FieldSpec& F = p.spec();
  const int D = p.total_degree();
  // Irreducibility survives extensions of degree prime to D, so a nonsingular
  // point over such an extension is as good as one over F.
  for (int e = 1; opt.point_certificates && F.degree() * e <= 32; ++e) {
    if (std::gcd(e, D) != 1 || (e > 1 && F.degree() * e < 4)) continue;
    const FieldSpec E = e == 1 ? F : extension_field(F, e);
    const auto pt = smooth_rational_point(e == 1 ? p : p.mapped(embed_field(F, E)));
    if (!pt) continue;
    v.status = Status::AbsolutelyIrreducible;
    v.conjugate_count = 1;
    v.certificate = "irreducible over F_2^" + std::to_string(F.degree()) + " with nonsingular point " + *pt +
                    " over F_2^" + std::to_string(E.degree());
    return v;
  }
  for (int q : prime_divisors(D)) {
    if (F.degree() * q > kMaxFieldDegree) {
      v.status = Status::Undetermined;
      v.certificate = "extension of degree " + std::to_string(F.degree() * q) + " exceeds the field limit";
      return v;
    }
    const FieldSpec K = extension_field(F, q);
    const MPoly pk = p.mapped(embed_field(F, K));
    Factorization fk = factor(pk, opt);
    if (fk.count() > 1) {
      const Verdict inner = verdict_by(fk.factors.front().first, opt, factor);
      const int r1 = inner.status == Status::AbsolutelyIrreducible ? 1 : inner.conjugate_count;
      v.status = Status::IrreducibleNotAbsolutely;
      v.conjugate_count = fk.count() * r1;
      v.certificate = "splits over F_2^" + std::to_string(K.degree());
      v.witness = std::move(fk);
      return v;
    }
  }
  v.status = Status::AbsolutelyIrreducible;
  v.conjugate_count = 1;
  v.certificate = "irreducible over every prime-degree extension dividing " + std::to_string(D);
  return v;
}

// Bivariate verdict on a dense section over K.
Status section_status(const FieldSpec& K, const BPoly& s, const FactorOptions& opt) {
  const MPoly m = bpoly::to_mpoly(K, s, Var::X, Var::Y);
  const Verdict v = verdict_by(m, opt, &factor_bivariate);
  return v.status;
}

Verdict verdict_by_sections(const MPoly& p, const FactorOptions& opt) {
  const FieldSpec& F = p.spec();
  const int D = p.total_degree();
  const auto primes = prime_divisors(D);
  const int qmax = primes.empty() ? 1 : primes.back();
  // Keep the split checks inside 64-bit fields when that still leaves a
  // reasonably large plane field.
  auto widest = [&](int limit) {
    int best = 1;
    for (int e = 1; F.degree() * e <= 10 && F.degree() * e * qmax <= limit; ++e) best = e;
    return best;
  };
  int ext = widest(64);
  if (F.degree() * ext < 4) ext = widest(kMaxFieldDegree);
  std::mt19937_64 rng(opt.seed ^ 0x5ec7105ull);
  Verdict v;
  for (int t = 0; t < opt.section_attempts; ++t) {
    // The first few planes use base field coefficients.
    const int e = t < 3 ? 1 : ext;
    if (e == 1 && F.size() < 4 && F.degree() < 64 && t > 0) continue;
    const FieldSpec K = e == 1 ? F : extension_field(F, e);
    const MPoly pk = e == 1 ? p : p.mapped(embed_field(F, K));
    const Elem a = Elem{rng()} & K.mask(), b = (Elem{rng()} | 1) & K.mask(), c = Elem{rng()} & K.mask();
    const BPoly s = section_bpoly(K, pk, a, b, c);
    if (s.total_degree() != D) continue;
    if (section_status(K, s, opt) == Status::AbsolutelyIrreducible) {
      v.status = Status::AbsolutelyIrreducible;
      v.conjugate_count = 1;
      v.certificate = "section z = " + hex128(a) + "*x + " + hex128(b) + "*y + " + hex128(c) + " over F_2^" +
                      std::to_string(K.degree()) + " is absolutely irreducible of full degree";
      return v;
    }
  }
  v.status = Status::Undetermined;
  v.certificate = "no absolutely irreducible plane section found in " + std::to_string(opt.section_attempts) +
                  " attempts";
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* status_name(Status s) {
  switch (s) {
    case Status::ReducibleOverBase: return "reducible_over_base";
    case Status::IrreducibleNotAbsolutely: return "irreducible_not_absolutely";
    case Status::AbsolutelyIrreducible: return "absolutely_irreducible";
    case Status::Undetermined: return "undetermined";
  }
  return "undetermined";
}

bool factor_less(const MPoly& a, const MPoly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  return std::lexicographical_compare(a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end(),
                                      [](const auto& u, const auto& v) {
                                        if (u.first != v.first) return u.first > v.first;
                                        return u.second < v.second;
                                      });
}

MPoly Factorization::expand() const {
  MPoly r = MPoly::constant(field, unit);
  for (const auto& [g, e] : factors) r = r * g.pow(static_cast<std::uint32_t>(e));
  return r;
}

int Factorization::count() const {
  int n = 0;
  for (const auto& [g, e] : factors) n += e;
  return n;
}

Factorization factor_bivariate(const MPoly& p, const FactorOptions& opt) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "cannot factor the zero polynomial");
  if (p.total_degree() > opt.max_degree) {
    throw Error(Errc::DegreeOverflow, "total degree " + std::to_string(p.total_degree()) + " exceeds " +
                                          std::to_string(opt.max_degree));
  }
  const auto [vx, vy] = variable_pair(p);
  const FieldSpec& F = p.spec();
  Factorization out;
  out.field = F;
  out.unit = p.leading_coeff();
  for (auto& [f, e] : factor_bpoly(F, bpoly::from_mpoly(p, vx, vy), opt)) {
    out.factors.emplace_back(bpoly::to_mpoly(F, f, vx, vy).monic(), e);
  }
  finish(out, p);
  return out;
}

Factorization factor_homogeneous(const MPoly& p, const FactorOptions& opt) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "cannot factor the zero polynomial");
  if (!p.is_homogeneous()) throw Error(Errc::NotHomogeneous, "factor_homogeneous needs a homogeneous input");
  if (p.total_degree() > opt.max_degree) {
    throw Error(Errc::DegreeOverflow, "total degree " + std::to_string(p.total_degree()) + " exceeds " +
                                          std::to_string(opt.max_degree));
  }
  const FieldSpec& F = p.spec();
  Monomial low{kMaxExponent, kMaxExponent, kMaxExponent};
  for (const auto& [k, c] : p.terms()) {
    const Monomial m = Monomial::from_key(k);
    low = {std::min(low.ex, m.ex), std::min(low.ey, m.ey), std::min(low.ez, m.ez)};
  }
  Factorization out;
  out.field = F;
  out.unit = p.leading_coeff();
  const std::pair<Var, std::uint32_t> mono[] = {{Var::X, low.ex}, {Var::Y, low.ey}, {Var::Z, low.ez}};
  for (const auto& [v, e] : mono) {
    if (e) out.factors.emplace_back(MPoly::variable(F, v), static_cast<int>(e));
  }
  const MPoly q = exact_div(p, MPoly::monomial(F, low));
  if (q.total_degree() > 0) {
    const MPoly affine = substitute(q, {Var::X, Var::Y, Elem{1}});
    for (const auto& [f, e] : factor_bivariate(affine, opt).factors) {
      out.factors.emplace_back(rehomogenize(f, f.total_degree()), e);
    }
  }
  finish(out, p);
  return out;
}

Verdict is_absolutely_irreducible(const MPoly& p, const FactorOptions& opt) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "zero polynomial has no irreducibility verdict");
  if (p.total_degree() < 1) throw Error(Errc::InvalidArgument, "constant polynomial has no irreducibility verdict");
  const bool trivariate = p.uses(Var::X) && p.uses(Var::Y) && p.uses(Var::Z);
  if (!trivariate) return verdict_by(p, opt, &factor_bivariate);
  if (p.is_homogeneous()) return verdict_by(p, opt, &factor_homogeneous);
  if (p.total_degree() > opt.max_degree) {
    throw Error(Errc::DegreeOverflow, "total degree " + std::to_string(p.total_degree()) + " exceeds " +
                                          std::to_string(opt.max_degree));
  }
  return verdict_by_sections(p, opt);
}

FactorWitness has_absolutely_irreducible_factor(const MPoly& p, const FactorOptions& opt) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "zero polynomial");
  const bool trivariate = p.uses(Var::X) && p.uses(Var::Y) && p.uses(Var::Z);
  FactorWitness w;
  if (trivariate && !p.is_homogeneous()) {
    if (is_absolutely_irreducible(p, opt).status == Status::AbsolutelyIrreducible) {
      w.found = true;
      w.factor = p.monic();
    }
    return w;
  }
  const Factorization f = trivariate ? factor_homogeneous(p, opt) : factor_bivariate(p, opt);
  std::vector<MPoly> distinct;
  for (const auto& [g, e] : f.factors) distinct.push_back(g);
  std::sort(distinct.begin(), distinct.end(), [](const MPoly& a, const MPoly& b) {
    return a.terms().begin()->first < b.terms().begin()->first;
  });
  for (const auto& g : distinct) {
    if (is_absolutely_irreducible(g, opt).status == Status::AbsolutelyIrreducible) {
      w.found = true;
      w.factor = g;
      return w;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

Factorization oracle_factor_tiny(const MPoly& p) {
  const FieldSpec& F = p.spec();
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "cannot factor the zero polynomial");
  if (p.total_degree() > 6 || F.degree() > 2) {
    throw Error(Errc::DegreeOverflow, "oracle limited to total degree 6 over F_2 or F_4");
  }
  if (p.uses(Var::Z)) throw Error(Errc::TooManyVariables, "oracle works in x and y");
  const auto q = static_cast<Elem>(F.size());
  std::vector<std::pair<Elem, Elem>> points;
  for (Elem x = 0; x < q; ++x)
    for (Elem y = 0; y < q; ++y) points.emplace_back(x, y);

  Factorization out;
  out.field = F;
  out.unit = p.leading_coeff();
  MPoly rest = p;
  for (int t = 1; 2 * t <= rest.total_degree();) {
    std::vector<std::size_t> live;  // points where rest does not vanish
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (rest.eval(points[i].first, points[i].second, 0) != 0) live.push_back(i);
    }
    bool found = false;
    for (int lead_ex = t; lead_ex >= 0 && !found; --lead_ex) {
      const Monomial lead{static_cast<std::uint32_t>(lead_ex), static_cast<std::uint32_t>(t - lead_ex), 0};
      std::vector<Monomial> lower;
      for (int d = 0; d <= t; ++d)
        for (int ex = d; ex >= 0; --ex) {
          const Monomial m{static_cast<std::uint32_t>(ex), static_cast<std::uint32_t>(d - ex), 0};
          if (m.key() < lead.key()) lower.push_back(m);
        }
      // values[j][i]: monomial j at live point i
      auto value = [&](const Monomial& m, std::size_t pt) {
        return F.mul(F.pow(points[pt].first, std::uint64_t{m.ex}), F.pow(points[pt].second, std::uint64_t{m.ey}));
      };
      std::vector<Elem> cur(live.size());
      for (std::size_t i = 0; i < live.size(); ++i) cur[i] = value(lead, live[i]);
      std::vector<std::vector<Elem>> mv(lower.size(), std::vector<Elem>(live.size()));
      for (std::size_t j = 0; j < lower.size(); ++j)
        for (std::size_t i = 0; i < live.size(); ++i) mv[j][i] = value(lower[j], live[i]);
      std::vector<Elem> digits(lower.size(), 0);
      while (true) {
        bool ok = true;
        for (Elem v : cur) {
          if (v == 0) {
            ok = false;
            break;
          }
        }
        if (ok) {
          MPoly cand = MPoly::monomial(F, lead);
          for (std::size_t j = 0; j < lower.size(); ++j) cand.add_term(lower[j], digits[j]);
          MPoly quo(F);
          if (try_exact_div(rest, cand, quo)) {
            out.factors.emplace_back(std::move(cand), 1);
            rest = std::move(quo);
            found = true;
            break;
          }
        }
        // odometer step, updating point values incrementally
        std::size_t j = 0;
        for (; j < digits.size(); ++j) {
          const Elem old = digits[j];
          digits[j] = old + 1 == q ? 0 : old + 1;
          const Elem delta = old ^ digits[j];
          for (std::size_t i = 0; i < live.size(); ++i) cur[i] ^= F.mul(delta, mv[j][i]);
          if (digits[j] != 0) break;
        }
        if (j == digits.size()) break;
      }
    }
    if (!found) ++t;
  }
  if (rest.total_degree() > 0) out.factors.emplace_back(rest.monic(), 1);
  finish(out, p);
  return out;
}

}  // namespace apnkit
