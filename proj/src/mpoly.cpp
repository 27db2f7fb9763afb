#include "apnkit/mpoly.hpp"

#include <cctype>
#include <unordered_map>
#include <vector>

#include "apnkit/bpoly.hpp"

namespace apnkit {

std::uint64_t Monomial::key() const {
  if (ex >= kMaxExponent || ey >= kMaxExponent || ez >= kMaxExponent) {
    throw Error(Errc::ExponentOverflow, "monomial exponent exceeds 2^20");
  }
  return (std::uint64_t{total()} << 42) | (std::uint64_t{ex} << 21) | ey;
}

MPoly MPoly::constant(const FieldSpec& spec, Elem c) {
  MPoly p(spec);
  p.add_term({}, c);
  return p;
}

MPoly MPoly::variable(const FieldSpec& spec, Var v) {
  Monomial m;
  (v == Var::X ? m.ex : v == Var::Y ? m.ey : m.ez) = 1;
  return monomial(spec, m, 1);
}

MPoly MPoly::monomial(const FieldSpec& spec, Monomial mono, Elem c) {
  MPoly p(spec);
  p.add_term(mono, c);
  return p;
}

bool MPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

int MPoly::total_degree() const noexcept {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first >> 42);
}

int MPoly::degree_in(Var v) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [k, c] : terms_) {
    d = std::max(d, static_cast<int>(Monomial::from_key(k).exp(v)));
  }
  return d;
}

bool MPoly::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const auto top = terms_.begin()->first >> 42;
  return (terms_.rbegin()->first >> 42) == top;
}

Monomial MPoly::leading_monomial() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "zero polynomial has no leading monomial");
  return Monomial::from_key(terms_.begin()->first);
}

Elem MPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m.key());
  return it == terms_.end() ? Elem{0} : it->second;
}

void MPoly::add_term(const Monomial& mono, Elem c) {
  if (c == 0) return;
  if (!spec_.contains(c)) {
    throw Error(Errc::CoefficientOutOfField, hex128(c) + " is not in F_2^" + std::to_string(spec_.degree()));
  }
  auto [it, inserted] = terms_.try_emplace(mono.key(), c);
  if (!inserted) {
    it->second ^= c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MPoly::check_field(const MPoly& o) const {
  if (spec_ != o.spec_) throw Error(Errc::FieldMismatch, "polynomials over different fields");
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_field(o);
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second ^= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  r += o;
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_field(o);
  MPoly r(spec_);
  if (terms_.empty() || o.terms_.empty()) return r;
  std::unordered_map<std::uint64_t, Elem> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ka, ca] : terms_) {
    const Monomial ma = Monomial::from_key(ka);
    for (const auto& [kb, cb] : o.terms_) {
      acc[(ma * Monomial::from_key(kb)).key()] ^= spec_.mul(ca, cb);
    }
  }
  for (const auto& [k, c] : acc) {
    if (c != 0) r.terms_.emplace(k, c);
  }
  return r;
}

MPoly MPoly::scaled(Elem c) const {
  MPoly r(spec_);
  if (c == 0) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, spec_.mul(v, c));
  return r;
}

MPoly MPoly::pow(std::uint32_t e) const {
  MPoly result = constant(spec_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::monic() const {
  if (terms_.empty() || leading_coeff() == 1) return *this;
  return scaled(spec_.inv(leading_coeff()));
}

Elem MPoly::eval(Elem x, Elem y, Elem z) const {
  Elem r = 0;
  for (const auto& [k, c] : terms_) {
    const Monomial m = Monomial::from_key(k);
    Elem t = c;
    if (m.ex) t = spec_.mul(t, spec_.pow(x, std::uint64_t{m.ex}));
    if (m.ey) t = spec_.mul(t, spec_.pow(y, std::uint64_t{m.ey}));
    if (m.ez) t = spec_.mul(t, spec_.pow(z, std::uint64_t{m.ez}));
    r ^= t;
  }
  return r;
}

MPoly MPoly::derivative(Var v) const {
  MPoly r(spec_);
  for (const auto& [k, c] : terms_) {
    Monomial m = Monomial::from_key(k);
    std::uint32_t& e = v == Var::X ? m.ex : v == Var::Y ? m.ey : m.ez;
    if (e % 2 == 0) continue;
    --e;
    r.add_term(m, c);
  }
  return r;
}

MPoly MPoly::mapped(const Embedding& e) const {
  if (e.source() != spec_) throw Error(Errc::FieldMismatch, "embedding source differs from coefficient field");
  MPoly r(e.target());
  for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, e.map(c));
  return r;
}

MPoly MPoly::frobenius(int k) const {
  MPoly r(spec_);
  for (const auto& [key, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), key, spec_.frobenius(c, k));
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    const Monomial m = Monomial::from_key(k);
    std::string term;
    if (c != 1 || k == 0) term = c == 1 ? "1" : hex128(c);
    const std::pair<char, std::uint32_t> vars[] = {{'x', m.ex}, {'y', m.ey}, {'z', m.ez}};
    for (const auto& [name, e] : vars) {
      if (e == 0) continue;
      if (!term.empty()) term += '*';
      term += name;
      if (e > 1) term += '^' + std::to_string(e);
    }
    out += term;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, const FieldSpec& F) : s_(s), F_(F) {}

  MPoly run() {
    MPoly out(F_);
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    while (true) {
      term(out);
      skip_ws();
      if (pos_ == s_.size()) break;
      if (s_[pos_] != '+') fail("expected '+'");
      ++pos_;
      skip_ws();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::SyntaxError, what + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::uint32_t uint() {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_++] - '0');
      if (v >= kMaxExponent) throw Error(Errc::ExponentOverflow, "exponent exceeds 2^20");
    }
    return static_cast<std::uint32_t>(v);
  }

  void term(MPoly& out) {
    Monomial mono;
    Elem coeff = 1;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) fail("expected factor");
      const char ch = s_[pos_];
      if (ch == 'x' || ch == 'y' || ch == 'z') {
        ++pos_;
        std::uint32_t e = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip_ws();
          e = uint();
        }
        std::uint32_t& slot = ch == 'x' ? mono.ex : ch == 'y' ? mono.ey : mono.ez;
        if (slot + e >= kMaxExponent) throw Error(Errc::ExponentOverflow, "exponent exceeds 2^20");
        slot += e;
      } else if (std::isxdigit(static_cast<unsigned char>(ch))) {
        const std::size_t start = pos_;
        if (ch == '0' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == 'x' || s_[pos_ + 1] == 'X')) pos_ += 2;
        while (pos_ < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        coeff = F_.mul(coeff, F_.parse_element(s_.substr(start, pos_ - start)));
      } else {
        fail(std::string("unexpected '") + ch + "'");
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    out.add_term(mono, coeff);
  }

  std::string_view s_;
  const FieldSpec& F_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(std::string_view text, const FieldSpec& spec) { return Parser(text, spec).run(); }

bool try_exact_div(const MPoly& num, const MPoly& den, MPoly& quotient) {
  if (num.spec() != den.spec()) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  if (den.is_zero()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
  const FieldSpec& F = num.spec();
  MPoly q(F);
  MPoly r = num;
  const Monomial lt = den.leading_monomial();
  const Elem inv_lc = F.inv(den.leading_coeff());
  std::vector<std::pair<Monomial, Elem>> den_terms;
  for (const auto& [k, c] : den.terms()) den_terms.emplace_back(Monomial::from_key(k), c);
  while (!r.is_zero()) {
    const Monomial rl = r.leading_monomial();
    if (!lt.divides(rl)) return false;
    const Monomial qm{rl.ex - lt.ex, rl.ey - lt.ey, rl.ez - lt.ez};
    const Elem c = F.mul(r.leading_coeff(), inv_lc);
    q.add_term(qm, c);
    for (const auto& [m, dc] : den_terms) r.add_term(qm * m, F.mul(c, dc));
  }
  quotient = std::move(q);
  return true;
}

MPoly exact_div(const MPoly& num, const MPoly& den) {
  MPoly q(num.spec());
  if (!try_exact_div(num, den, q)) {
    throw Error(Errc::InexactDivision, "(" + den.to_string() + ") does not divide the numerator");
  }
  return q;
}

MPoly substitute(const MPoly& p, const Assignment& assignment) {
  const FieldSpec& F = p.spec();
  MPoly r(F);
  for (const auto& [k, c] : p.terms()) {
    const Monomial m = Monomial::from_key(k);
    const std::uint32_t exps[3] = {m.ex, m.ey, m.ez};
    Monomial out;
    Elem coeff = c;
    for (int v = 0; v < 3; ++v) {
      if (exps[v] == 0) continue;
      if (const Var* target = std::get_if<Var>(&assignment[v])) {
        std::uint32_t& slot = *target == Var::X ? out.ex : *target == Var::Y ? out.ey : out.ez;
        slot += exps[v];
      } else {
        coeff = F.mul(coeff, F.pow(std::get<Elem>(assignment[v]), std::uint64_t{exps[v]}));
      }
    }
    r.add_term(out, coeff);
  }
  return r;
}

MPoly compose(const MPoly& p, const std::array<MPoly, 3>& images) {
  const FieldSpec& F = p.spec();
  for (const auto& im : images) {
    if (im.spec() != F) throw Error(Errc::FieldMismatch, "composition images over a different field");
  }
  std::array<std::map<std::uint32_t, MPoly>, 3> cache;
  auto power = [&](int v, std::uint32_t e) -> const MPoly& {
    auto it = cache[v].find(e);
    if (it != cache[v].end()) return it->second;
    // Build from the largest cached exponent below e.
    MPoly base = MPoly::constant(F, 1);
    std::uint32_t have = 0;
    auto below = cache[v].lower_bound(e);
    if (below != cache[v].begin()) {
      --below;
      base = below->second;
      have = below->first;
    }
    base = base * images[v].pow(e - have);
    return cache[v].emplace(e, std::move(base)).first->second;
  };
  MPoly r(F);
  for (const auto& [k, c] : p.terms()) {
    const Monomial m = Monomial::from_key(k);
    MPoly t = MPoly::constant(F, c);
    if (m.ex) t = t * power(0, m.ex);
    if (m.ey) t = t * power(1, m.ey);
    if (m.ez) t = t * power(2, m.ez);
    r += t;
  }
  return r;
}

HomogeneousDecomposition homogeneous_parts(const MPoly& p) {
  HomogeneousDecomposition parts;
  for (const auto& [k, c] : p.terms()) {
    const int d = static_cast<int>(k >> 42);
    auto it = parts.try_emplace(d, MPoly(p.spec())).first;
    it->second.add_term(Monomial::from_key(k), c);
  }
  return parts;
}

MPoly gcd_bivariate(const MPoly& p, const MPoly& q) {
  if (p.spec() != q.spec()) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  if (p.is_zero() && q.is_zero()) throw Error(Errc::ZeroPolynomial, "gcd(0, 0) is undefined");
  std::vector<Var> used;
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (p.uses(v) || q.uses(v)) used.push_back(v);
  }
  if (used.size() > 2) throw Error(Errc::TooManyVariables, "gcd_bivariate needs inputs in two variables");
  const Var vx = used.size() > 0 ? used[0] : Var::X;
  Var vy = used.size() > 1 ? used[1] : (vx == Var::Y ? Var::Z : Var::Y);
  const FieldSpec& F = p.spec();
  const BPoly g = bpoly::gcd(F, bpoly::from_mpoly(p, vx, vy), bpoly::from_mpoly(q, vx, vy));
  return bpoly::to_mpoly(F, g, vx, vy).monic();
}

}  // namespace apnkit
