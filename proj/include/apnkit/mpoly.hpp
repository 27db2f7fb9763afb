#pragma once

// Sparse polynomials in x, y, z over F_{2^m}.
//
// Terms live in a map ordered by graded lexicographic order (x > y > z),
// largest first, so begin() is the leading term. Monomials are packed into
// a single 64-bit key whose numeric order is exactly that term order.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "apnkit/field.hpp"

namespace apnkit {

enum class Var : int { X = 0, Y = 1, Z = 2 };

inline constexpr std::uint32_t kMaxExponent = 1u << 20;

struct Monomial {
  std::uint32_t ex = 0, ey = 0, ez = 0;

  std::uint32_t total() const noexcept { return ex + ey + ez; }
  std::uint32_t exp(Var v) const noexcept {
    return v == Var::X ? ex : v == Var::Y ? ey : ez;
  }

  /// ExponentOverflow when any exponent reaches 2^20.
  std::uint64_t key() const;
  static Monomial from_key(std::uint64_t k) noexcept {
    Monomial m;
    const auto total = static_cast<std::uint32_t>(k >> 42);
    m.ex = static_cast<std::uint32_t>((k >> 21) & 0x1fffff);
    m.ey = static_cast<std::uint32_t>(k & 0x1fffff);
    m.ez = total - m.ex - m.ey;
    return m;
  }
  bool divides(const Monomial& o) const noexcept { return ex <= o.ex && ey <= o.ey && ez <= o.ez; }
  Monomial operator*(const Monomial& o) const noexcept { return {ex + o.ex, ey + o.ey, ez + o.ez}; }
  bool operator==(const Monomial&) const = default;
};

class MPoly {
 public:
  using Terms = std::map<std::uint64_t, Elem, std::greater<>>;

  explicit MPoly(FieldSpec spec) : spec_(std::move(spec)) {}

  static MPoly constant(const FieldSpec& spec, Elem c);
  static MPoly variable(const FieldSpec& spec, Var v);
  static MPoly monomial(const FieldSpec& spec, Monomial mono, Elem c = 1);

  const FieldSpec& spec() const noexcept { return spec_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const noexcept;
  int degree_in(Var v) const noexcept;
  bool uses(Var v) const noexcept { return degree_in(v) > 0; }
  bool is_homogeneous() const noexcept;

  Monomial leading_monomial() const;
  Elem leading_coeff() const noexcept { return terms_.empty() ? Elem{0} : terms_.begin()->second; }
  Elem coeff(const Monomial& m) const;

  /// Adds c * mono in place (cancelling to zero removes the term).
  void add_term(const Monomial& mono, Elem c);

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const { return *this + o; }
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o);
  MPoly scaled(Elem c) const;
  MPoly pow(std::uint32_t e) const;
  bool operator==(const MPoly& o) const { return spec_ == o.spec_ && terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  /// Divides by the leading coefficient; zero stays zero.
  MPoly monic() const;
  Elem eval(Elem x, Elem y, Elem z) const;
  MPoly derivative(Var v) const;
  /// Coefficient-wise image in the embedding's target field.
  MPoly mapped(const Embedding& e) const;
  /// Coefficient-wise a -> a^(2^k).
  MPoly frobenius(int k) const;

  /// "x^2 + x*y + 0x3*z"; "0" for the zero polynomial.
  std::string to_string() const;
  /// Inverse of to_string. Terms are products of hex constants and x, y, z
  /// powers separated by '*'; SyntaxError carries a 1-based column.
  static MPoly parse(std::string_view text, const FieldSpec& spec);

 private:
  void check_field(const MPoly& o) const;
  FieldSpec spec_;
  Terms terms_;
};

/// q with q * den = num; InexactDivision when the remainder is nonzero.
MPoly exact_div(const MPoly& num, const MPoly& den);
/// Like exact_div but reports failure instead of throwing.
bool try_exact_div(const MPoly& num, const MPoly& den, MPoly& quotient);

/// Target of a variable under `substitute`: another variable or a constant.
using SubstTarget = std::variant<Var, Elem>;
using Assignment = std::array<SubstTarget, 3>;
inline Assignment identity_assignment() { return {Var::X, Var::Y, Var::Z}; }

MPoly substitute(const MPoly& p, const Assignment& assignment);
/// General composition p(images[0], images[1], images[2]).
MPoly compose(const MPoly& p, const std::array<MPoly, 3>& images);

/// Parts keyed by total degree, each homogeneous; empty for zero.
using HomogeneousDecomposition = std::map<int, MPoly>;
HomogeneousDecomposition homogeneous_parts(const MPoly& p);

/// Monic gcd of two polynomials involving at most two variables, via a
/// primitive-part Euclidean sequence over F[second][first]. TooManyVariables
/// when the inputs involve all three.
MPoly gcd_bivariate(const MPoly& p, const MPoly& q);

}  // namespace apnkit
