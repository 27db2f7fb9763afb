#include "apnkit/surface.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace apnkit {

namespace {

bool is_power_of_two(std::uint64_t v) { return v && !(v & (v - 1)); }

MPoly var(const FieldSpec& F, Var v) { return MPoly::variable(F, v); }

MPoly hyperplanes(const FieldSpec& F) {
  const MPoly x = var(F, Var::X), y = var(F, Var::Y), z = var(F, Var::Z);
  return (x + y) * (x + z) * (y + z);
}

// Adds c * (x^j + y^j + z^j + (x+y+z)^j) to num. By Lucas' theorem the
// multinomial coefficients of (x+y+z)^j are odd exactly on splittings of the
// bits of j, and the three pure powers cancel.
void add_numerator(MPoly& num, std::uint64_t j, Elem c) {
  if (j >= kMaxExponent) throw Error(Errc::ExponentOverflow, "exponent exceeds 2^20");
  const auto J = static_cast<std::uint32_t>(j);
  for (std::uint32_t a = J;; a = (a - 1) & J) {
    const std::uint32_t rest = J ^ a;
    for (std::uint32_t b = rest;; b = (b - 1) & rest) {
      const std::uint32_t cz = rest ^ b;
      if (a != J && b != J && cz != J) num.add_term({a, b, cz}, c);
      if (b == 0) break;
    }
    if (a == 0) break;
  }
}

class Parser {
 public:
  Parser(std::string_view s, const FieldSpec& F) : s_(s), F_(F) {}

  SBoxPoly run() {
    SBoxPoly f{F_, {}};
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    while (true) {
      term(f);
      skip_ws();
      if (pos_ == s_.size()) break;
      if (s_[pos_] != '+') fail("expected '+'");
      ++pos_;
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::SyntaxError, what + " at column " + std::to_string(pos_ + 1));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  void term(SBoxPoly& f) {
    skip_ws();
    Elem c = 1;
    if (!at('x')) {
      const std::size_t start = pos_;
      if (at('0') && pos_ + 1 < s_.size() && (s_[pos_ + 1] == 'x' || s_[pos_ + 1] == 'X')) pos_ += 2;
      while (pos_ < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected coefficient or 'x'");
      c = F_.parse_element(s_.substr(start, pos_ - start));
      skip_ws();
      if (!at('*')) {
        f.add_term(0, c);
        return;
      }
      ++pos_;
      skip_ws();
      if (!at('x')) fail("expected 'x'");
    }
    ++pos_;  // 'x'
    std::uint64_t e = 1;
    skip_ws();
    if (at('^')) {
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
      e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned>(s_[pos_++] - '0');
        if (e >> 62) throw Error(Errc::ExponentOverflow, "exponent too large");
      }
    }
    f.add_term(e, c);
  }

  std::string_view s_;
  const FieldSpec& F_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

SBoxPoly SBoxPoly::parse(std::string_view text, const FieldSpec& spec) { return Parser(text, spec).run(); }

std::string SBoxPoly::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto [e, c] = *it;
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += c == 1 ? "1" : hex128(c);
      continue;
    }
    if (c != 1) out += hex128(c) + "*";
    out += "x";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

Elem SBoxPoly::coeff(std::uint64_t e) const noexcept {
  auto it = std::lower_bound(terms.begin(), terms.end(), e, [](const auto& t, std::uint64_t v) { return t.first < v; });
  return it != terms.end() && it->first == e ? it->second : Elem{0};
}

void SBoxPoly::add_term(std::uint64_t e, Elem c) {
  if (!spec.contains(c)) throw Error(Errc::CoefficientOutOfField, hex128(c) + " is outside the coefficient field");
  if (c == 0) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), e, [](const auto& t, std::uint64_t v) { return t.first < v; });
  if (it != terms.end() && it->first == e) {
    it->second ^= c;
    if (it->second == 0) terms.erase(it);
  } else {
    terms.insert(it, {e, c});
  }
}

SBoxPoly SBoxPoly::operator+(const SBoxPoly& o) const {
  if (spec != o.spec) throw Error(Errc::FieldMismatch, "functions over different fields");
  SBoxPoly r = *this;
  for (const auto& [e, c] : o.terms) r.add_term(e, c);
  return r;
}

SBoxPoly SBoxPoly::normalized(std::vector<std::string>* log) const {
  SBoxPoly r{spec, {}};
  for (const auto& [e, c] : terms) {
    if (e == 0 || is_power_of_two(e)) {
      if (log) {
        log->push_back("dropped " + std::string(e == 0 ? "constant" : "linearized") + " term " +
                       SBoxPoly{spec, {{e, c}}}.to_string());
      }
      continue;
    }
    r.terms.emplace_back(e, c);
  }
  return r;
}

Elem SBoxPoly::eval(Elem x) const {
  Elem r = 0;
  for (const auto& [e, c] : terms) r ^= spec.mul(c, spec.pow(x, e));
  return r;
}

// ---------------------------------------------------------------------------

MPoly phi_j(std::uint64_t j, const FieldSpec& spec) {
  if (j < 3) throw Error(Errc::DegreeTooSmall, "phi_j needs j >= 3, got " + std::to_string(j));
  static std::mutex mu;
  static std::map<std::pair<const void*, std::uint64_t>, MPoly> cache;
  const auto key = std::make_pair(static_cast<const void*>(spec.data()), j);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  MPoly num(spec);
  add_numerator(num, j, 1);
  MPoly q = num.is_zero() ? MPoly(spec) : exact_div(num, hyperplanes(spec));
  std::lock_guard<std::mutex> lock(mu);
  if (j <= 4096) cache.emplace(key, q);
  return q;
}

MPoly phi_numerator(const SBoxPoly& f) {
  MPoly num(f.spec);
  for (const auto& [e, c] : f.terms) {
    if (e >= 1) add_numerator(num, e, c);
  }
  return num;
}

PhiSurface phi_of(const SBoxPoly& f) {
  PhiSurface s{MPoly(f.spec), f, -1};
  bool any = false;
  for (const auto& [e, c] : f.terms) {
    if (e < 3 || is_power_of_two(e)) continue;
    any = true;
    s.poly += phi_j(e, f.spec).scaled(c);
  }
  if (!any) throw Error(Errc::EmptyFunction, "f has no term of degree >= 3 outside powers of two");
  s.degree = s.poly.total_degree();
  return s;
}

std::vector<MPoly> gold_factorization(int k) {
  if (k < 2 || k > 20) throw Error(Errc::ParameterOutOfRange, "gold_factorization needs 2 <= k <= 20");
  const FieldSpec F = build_field(k);
  std::vector<MPoly> out;
  for (Elem a = 2; a < F.size(); ++a) {
    MPoly form(F);
    form.add_term({1, 0, 0}, 1);
    form.add_term({0, 1, 0}, a);
    form.add_term({0, 0, 1}, a ^ 1);
    out.push_back(std::move(form));
  }
  return out;
}

Section plane_section(const MPoly& p) {
  const FieldSpec& F = p.spec();
  Section s{0, substitute(p, {Var::X, Var::Y, Var::Y})};
  if (s.cofactor.is_zero()) throw Error(Errc::ZeroSection, "p(x, y, y) vanishes identically");
  const MPoly xy = var(F, Var::X) + var(F, Var::Y);
  MPoly q(F);
  while (s.cofactor.total_degree() > 0 && try_exact_div(s.cofactor, xy, q)) {
    s.cofactor = std::move(q);
    q = MPoly(F);
    ++s.multiplicity;
  }
  return s;
}

MPoly section_formula_odd(std::uint64_t n, const FieldSpec& spec) {
  if (n < 5) throw Error(Errc::DegreeTooSmall, "section formula needs n >= 5");
  if (n % 2 == 0) throw Error(Errc::InvalidArgument, "section formula needs odd n");
  const auto e = static_cast<std::uint32_t>(n - 1);
  MPoly num(spec);
  num.add_term({e, 0, 0}, 1);
  num.add_term({0, e, 0}, 1);
  return exact_div(num, (var(spec, Var::X) + var(spec, Var::Y)).pow(2));
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Gold: return "gold";
    case Family::Kasami: return "kasami";
    case Family::Welch: return "welch";
  }
  return "other";
}

bool ExponentClass::is(Family f) const {
  return std::any_of(classes.begin(), classes.end(), [f](const auto& c) { return c.first == f; });
}

ExponentClass classify_exponent(std::uint64_t d) {
  if (d < 3) throw Error(Errc::DegreeTooSmall, "exponent classes start at 3");
  ExponentClass ec{d, {}};
  if (is_power_of_two(d - 1)) ec.classes.emplace_back(Family::Gold, __builtin_ctzll(d - 1));
  for (int k = 2; k < 32; ++k) {
    const std::uint64_t v = (std::uint64_t{1} << (2 * k)) - (std::uint64_t{1} << k) + 1;
    if (v > d) break;
    if (v == d) ec.classes.emplace_back(Family::Kasami, k);
  }
  if (d > 3 && is_power_of_two(d - 3) && d - 3 >= 4) ec.classes.emplace_back(Family::Welch, __builtin_ctzll(d - 3));
  return ec;
}

MPoly phi_pair_gcd(std::uint64_t j1, std::uint64_t j2, const FieldSpec& spec) {
  auto affine = [&](std::uint64_t j) {
    MPoly p = phi_j(j, spec);
    if (p.is_zero()) return p;
    std::uint32_t low = kMaxExponent;
    for (const auto& [k, c] : p.terms()) low = std::min(low, Monomial::from_key(k).ez);
    if (low) p = exact_div(p, MPoly::monomial(spec, {0, 0, low}));
    return substitute(p, {Var::X, Var::Y, Elem{1}});
  };
  return gcd_bivariate(affine(j1), affine(j2));
}

SectionPrediction predict_section(std::uint64_t n, const FieldSpec& spec) {
  if (n < 5) throw Error(Errc::DegreeTooSmall, "plane section predictions start at n = 5");
  if (n % 2 == 0) throw Error(Errc::InvalidArgument, "plane section predictions need odd n");
  const MPoly x = var(spec, Var::X), y = var(spec, Var::Y);
  const MPoly xy = x + y;
  SectionPrediction p{'?', 0, MPoly::constant(spec, 1)};
  if (is_power_of_two(n - 1)) {
    p.part = 'a';
    p.multiplicity = static_cast<int>(n - 3);
    return p;
  }
  if (n % 4 == 3) {
    const auto e = static_cast<std::uint32_t>((n - 3) / 2 + 1);  // 1 + 2m
    p.part = 'b';
    p.cofactor = exact_div(x.pow(e) + y.pow(e), xy).pow(2);
    return p;
  }
  std::uint64_t m = n - 1;
  int l = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++l;
  }
  p.part = 'c';
  p.multiplicity = (1 << l) - 2;
  const auto me = static_cast<std::uint32_t>(m);
  p.cofactor = exact_div(x.pow(me) + y.pow(me), xy).pow(1u << l);
  return p;
}

}  // namespace apnkit
