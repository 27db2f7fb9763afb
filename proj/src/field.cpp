#include "apnkit/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "apnkit/upoly.hpp"

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace apnkit {

namespace detail {

struct FieldData {
  int m = 1;
  Elem low = 1;
  Elem mask = 1;
  // Log/antilog tables, present when m <= kTableDegree.
  std::vector<std::uint32_t> log;
  std::vector<std::uint32_t> exp;
  std::uint32_t order = 1;  // 2^m - 1 for table fields
};

}  // namespace detail

namespace {

constexpr int kTableDegree = 16;

struct U256 {
  Elem hi = 0;
  Elem lo = 0;
};

inline Elem clmul64(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
  __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                   _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  alignas(16) std::uint64_t out[2];
  _mm_store_si128(reinterpret_cast<__m128i*>(out), r);
  return (Elem{out[1]} << 64) | out[0];
#else
  Elem table[16];
  table[0] = 0;
  table[1] = b;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ b;
  }
  Elem r = 0;
  for (int s = 60; s >= 0; s -= 4) r = (r << 4) ^ table[(a >> s) & 15];
  return r;
#endif
}

inline U256 clmul128(Elem a, Elem b) {
  const auto a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  const auto b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  Elem lo = clmul64(a0, b0);
  Elem hi = clmul64(a1, b1);
  Elem mid = clmul64(a0, b1) ^ clmul64(a1, b0);
  lo ^= mid << 64;
  hi ^= mid >> 64;
  return {hi, lo};
}

// Product reduction by folding the part above X^m back through the modulus.
// Each pass lowers the degree by m - deg(low); the default moduli have tiny
// `low`, so two passes are typical.
inline Elem reduce64(Elem p, int m, Elem low, Elem mask) {
  while (true) {
    Elem hi = p >> m;
    if (hi == 0) return p;
    p = (p & mask) ^ clmul64(static_cast<std::uint64_t>(hi), static_cast<std::uint64_t>(low));
  }
}

inline Elem reduce256(U256 p, int m, Elem low, Elem mask) {
  while (true) {
    Elem hi;
    if (m == 128) {
      hi = p.hi;
    } else {
      hi = (p.lo >> m) | (p.hi << (128 - m));
      // p.hi >> m is zero because products have degree < 2m - 1 <= 254 and
      // folding only lowers the degree.
    }
    if (hi == 0) return p.lo & mask;
    U256 f = clmul128(hi, low);
    p.hi = f.hi;
    p.lo = (p.lo & mask) ^ f.lo;
  }
}

Elem slow_mul(const detail::FieldData& d, Elem a, Elem b) {
  if (d.m <= 64) {
    return reduce64(clmul64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)), d.m,
                    d.low, d.mask);
  }
  return reduce256(clmul128(a, b), d.m, d.low, d.mask);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Elem slow_pow(const detail::FieldData& d, Elem a, std::uint64_t e) {
  Elem r = 1;
  while (e) {
    if (e & 1) r = slow_mul(d, r, a);
    a = slow_mul(d, a, a);
    e >>= 1;
  }
  return r;
}

void build_tables(detail::FieldData& d) {
  const std::uint64_t n = (std::uint64_t{1} << d.m) - 1;
  d.order = static_cast<std::uint32_t>(n);
  if (n == 1) {
    d.log.assign(2, 0);
    d.exp.assign(2, 1);
    return;
  }
  const auto pf = prime_factors(n);
  Elem g = 2;
  for (;; ++g) {
    bool primitive = true;
    for (auto p : pf) {
      if (slow_pow(d, g, n / p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  d.log.assign(n + 1, 0);
  d.exp.assign(2 * n, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    d.exp[i] = static_cast<std::uint32_t>(x);
    d.exp[i + n] = static_cast<std::uint32_t>(x);
    d.log[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(i);
    x = slow_mul(d, x, g);
  }
}

std::shared_ptr<detail::FieldData> make_data(int m, Elem low) {
  auto d = std::make_shared<detail::FieldData>();
  d->m = m;
  d->low = low;
  d->mask = m == 128 ? ~Elem{0} : ((Elem{1} << m) - 1);
  if (m <= kTableDegree) build_tables(*d);
  return d;
}

// Irreducibility of X^m + low over F_2, via the generic univariate test.
bool binary_irreducible(int m, Elem low) {
  Coeffs f(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 0; i < m; ++i) f[i] = (low >> i) & 1;
  f[m] = 1;
  return upoly::is_irreducible(FieldSpec(), f);
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int, Elem>, std::shared_ptr<const detail::FieldData>> fields;
  std::map<int, Elem> default_low;
  std::map<std::pair<const void*, const void*>, std::shared_ptr<const Embedding>> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::shared_ptr<const detail::FieldData> f2_data() {
  static const std::shared_ptr<const detail::FieldData> d = make_data(1, 1);
  return d;
}

}  // namespace

FieldSpec make_field_spec(std::shared_ptr<const detail::FieldData> d) { return FieldSpec(std::move(d)); }

std::string hex128(Elem v) {
  static constexpr char digits[] = "0123456789abcdef";
  if (v == 0) return "0x0";
  std::string s;
  while (v) {
    s.push_back(digits[static_cast<int>(v & 15)]);
    v >>= 4;
  }
  s += "x0";
  std::reverse(s.begin(), s.end());
  return s;
}

Elem parse_hex128(std::string_view text) {
  std::string_view t = text;
  if (t.size() >= 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t.remove_prefix(2);
  if (t.empty()) throw Error(Errc::SyntaxError, "empty hex literal '" + std::string(text) + "'");
  Elem v = 0;
  for (char c : t) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw Error(Errc::SyntaxError, "bad hex digit in '" + std::string(text) + "'");
    if ((v >> 124) != 0) throw Error(Errc::SyntaxError, "hex literal exceeds 128 bits");
    v = (v << 4) | static_cast<unsigned>(d);
  }
  return v;
}

FieldSpec::FieldSpec() : data_(f2_data()) {}

int FieldSpec::degree() const noexcept { return data_->m; }
Elem FieldSpec::modulus_low() const noexcept { return data_->low; }
Elem FieldSpec::mask() const noexcept { return data_->mask; }
std::uint64_t FieldSpec::size() const noexcept {
  return data_->m < 64 ? (std::uint64_t{1} << data_->m) : 0;
}

std::string FieldSpec::modulus_hex() const {
  const int m = data_->m;
  if (m < 128) return hex128((Elem{1} << m) | data_->low);
  // 129 bits: a leading "1" followed by 32 hex digits of the low part.
  std::string body = hex128(data_->low).substr(2);
  return "0x1" + std::string(32 - body.size(), '0') + body;
}

bool FieldSpec::operator==(const FieldSpec& o) const noexcept {
  return data_ == o.data_ || (data_->m == o.data_->m && data_->low == o.data_->low);
}

Elem FieldSpec::mul(Elem a, Elem b) const noexcept {
  const auto& d = *data_;
  if (!d.log.empty()) {
    if (a == 0 || b == 0) return 0;
    return d.exp[d.log[static_cast<std::size_t>(a)] + d.log[static_cast<std::size_t>(b)]];
  }
  return slow_mul(d, a, b);
}

Elem FieldSpec::sqr(Elem a) const noexcept { return mul(a, a); }

Elem FieldSpec::pow(Elem a, Elem e) const noexcept {
  const auto& d = *data_;
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!d.log.empty()) {
    const std::uint64_t r = static_cast<std::uint64_t>(e % d.order);
    return d.exp[(d.log[static_cast<std::size_t>(a)] * r) % d.order];
  }
  Elem r = 1;
  while (e) {
    if (e & 1) r = slow_mul(d, r, a);
    e >>= 1;
    if (e) a = slow_mul(d, a, a);
  }
  return r;
}

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw Error(Errc::ZeroInverse, "inverse of zero");
  const auto& d = *data_;
  if (!d.log.empty()) return d.exp[(d.order - d.log[static_cast<std::size_t>(a)]) % d.order];
  // a^(2^m - 2)
  return pow(a, d.mask - 1);
}

Elem FieldSpec::frobenius(Elem a, int k) const noexcept {
  k %= data_->m;
  for (int i = 0; i < k; ++i) a = sqr(a);
  return a;
}

Elem FieldSpec::sqrt(Elem a) const noexcept { return frobenius(a, data_->m - 1); }

int FieldSpec::trace(Elem a) const noexcept {
  Elem t = a, x = a;
  for (int i = 1; i < data_->m; ++i) {
    x = sqr(x);
    t ^= x;
  }
  return static_cast<int>(t & 1);
}

Elem FieldSpec::parse_element(std::string_view text) const {
  Elem v = parse_hex128(text);
  if (!contains(v)) {
    throw Error(Errc::CoefficientOutOfField,
                std::string(text) + " does not fit F_2^" + std::to_string(degree()));
  }
  return v;
}

namespace {

FieldSpec intern(int m, Elem low) {
  auto& r = registry();
  {
    std::lock_guard lock(r.mu);
    auto it = r.fields.find({m, low});
    if (it != r.fields.end()) return make_field_spec(it->second);
  }
  auto d = make_data(m, low);
  std::lock_guard lock(r.mu);
  auto [it, inserted] = r.fields.emplace(std::pair{m, low}, std::move(d));
  return make_field_spec(it->second);
}

void check_degree(int m) {
  if (m < 1 || m > kMaxFieldDegree) {
    throw Error(Errc::DegreeMismatch, "field degree must lie in [1, 128], got " + std::to_string(m));
  }
}

}  // namespace

FieldSpec build_field(int m) {
  check_degree(m);
  if (m == 1) return FieldSpec();
  auto& r = registry();
  std::optional<Elem> known;
  {
    std::lock_guard lock(r.mu);
    auto it = r.default_low.find(m);
    if (it != r.default_low.end()) known = it->second;
  }
  if (!known) {
    // Constant term must be 1; scan X^m + low in increasing numeric order.
    for (Elem low = 1;; low += 2) {
      if (binary_irreducible(m, low)) {
        known = low;
        break;
      }
    }
    std::lock_guard lock(r.mu);
    r.default_low.emplace(m, *known);
  }
  return intern(m, *known);
}

FieldSpec build_field(int m, Elem modulus_full) {
  check_degree(m);
  if (m == 128) throw Error(Errc::InvalidArgument, "use build_field_hex for m = 128");
  if ((modulus_full >> m) != 1) {
    throw Error(Errc::DegreeMismatch,
                "modulus " + hex128(modulus_full) + " does not have degree " + std::to_string(m));
  }
  const Elem low = modulus_full & ((Elem{1} << m) - 1);
  if (m == 1) return FieldSpec();  // X and X+1 both give F_2 with identical arithmetic
  if (!binary_irreducible(m, low)) {
    throw Error(Errc::NonIrreducibleModulus, hex128(modulus_full) + " is reducible over F_2");
  }
  return intern(m, low);
}

FieldSpec build_field_hex(int m, std::string_view modulus_hex) {
  check_degree(m);
  std::string_view t = modulus_hex;
  if (t.size() >= 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t.remove_prefix(2);
  while (!t.empty() && t.front() == '0') t.remove_prefix(1);
  if (m == 128) {
    if (t.size() != 33 || t.front() != '1') {
      throw Error(Errc::DegreeMismatch, std::string(modulus_hex) + " does not have degree 128");
    }
    const Elem low = parse_hex128(t.substr(1));
    if (!binary_irreducible(m, low)) {
      throw Error(Errc::NonIrreducibleModulus, std::string(modulus_hex) + " is reducible over F_2");
    }
    return intern(m, low);
  }
  if (t.size() > 32) {
    throw Error(Errc::DegreeMismatch, std::string(modulus_hex) + " does not have degree " + std::to_string(m));
  }
  return build_field(m, parse_hex128(modulus_hex));
}

FieldElement::FieldElement(FieldSpec spec, Elem bits) : spec_(std::move(spec)), bits_(bits) {
  if (!spec_.contains(bits_)) {
    throw Error(Errc::CoefficientOutOfField, hex128(bits_) + " is not an element of F_2^" +
                                                 std::to_string(spec_.degree()));
  }
}

void FieldElement::check_same(const FieldElement& o) const {
  if (spec_ != o.spec_) throw Error(Errc::FieldMismatch, "operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {spec_, bits_ ^ o.bits_};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {spec_, spec_.mul(bits_, o.bits_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {spec_, spec_.div(bits_, o.bits_)};
}
FieldElement FieldElement::inverse() const { return {spec_, spec_.inv(bits_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {spec_, spec_.pow(bits_, e)}; }
FieldElement FieldElement::square() const { return {spec_, spec_.sqr(bits_)}; }
FieldElement FieldElement::sqrt() const { return {spec_, spec_.sqrt(bits_)}; }

Elem Embedding::map(Elem a) const noexcept {
  Elem r = 0;
  for (std::size_t i = 0; a; ++i, a >>= 1) {
    if (a & 1) r ^= images_[i];
  }
  return r;
}

std::optional<Elem> Embedding::preimage(Elem b) const {
  // echelon_ rows are (vector, combination) with distinct leading pivots.
  Elem combo = 0;
  for (std::size_t i = 0; i < echelon_.size(); ++i) {
    if ((b >> pivots_[i]) & 1) {
      b ^= echelon_[i].first;
      combo ^= echelon_[i].second;
    }
  }
  if (b != 0) return std::nullopt;
  return combo;
}

Embedding embed_field(const FieldSpec& small, const FieldSpec& big) {
  const int m = small.degree(), M = big.degree();
  if (M % m != 0) {
    throw Error(Errc::NoSubfield, "F_2^" + std::to_string(m) + " is not a subfield of F_2^" + std::to_string(M));
  }
  auto& reg = registry();
  const std::pair<const void*, const void*> key{small.data(), big.data()};
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.embeddings.find(key);
    if (it != reg.embeddings.end()) return *it->second;
  }
  Embedding e;
  e.source_ = small;
  e.target_ = big;
  Elem root = 1;
  if (m > 1) {
    Coeffs f(static_cast<std::size_t>(m) + 1, 0);
    for (int i = 0; i < m; ++i) f[i] = (small.modulus_low() >> i) & 1;
    f[m] = 1;
    auto rs = upoly::roots(big, f);
    root = rs.front();  // ascending, so the smallest bit pattern
  }
  e.images_.resize(static_cast<std::size_t>(m));
  Elem p = 1;
  for (int i = 0; i < m; ++i) {
    e.images_[i] = p;
    p = big.mul(p, root);
  }
  // Gaussian elimination over F_2 on the image vectors.
  for (int i = 0; i < m; ++i) {
    Elem v = e.images_[i];
    Elem c = Elem{1} << i;
    for (std::size_t r = 0; r < e.echelon_.size(); ++r) {
      if ((v >> e.pivots_[r]) & 1) {
        v ^= e.echelon_[r].first;
        c ^= e.echelon_[r].second;
      }
    }
    int piv = 127;
    while (piv >= 0 && !((v >> piv) & 1)) --piv;
    // Images of a basis are independent; piv < 0 would mean a broken root.
    for (std::size_t r = 0; r < e.echelon_.size(); ++r) {
      if ((e.echelon_[r].first >> piv) & 1) {
        e.echelon_[r].first ^= v;
        e.echelon_[r].second ^= c;
      }
    }
    e.echelon_.emplace_back(v, c);
    e.pivots_.push_back(piv);
  }
  auto shared = std::make_shared<const Embedding>(e);
  std::lock_guard lock(reg.mu);
  reg.embeddings.emplace(key, shared);
  return e;
}

}  // namespace apnkit
