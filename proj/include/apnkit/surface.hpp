#pragma once

// The surface phi(x,y,z) = (f(x)+f(y)+f(z)+f(x+y+z)) / ((x+y)(x+z)(y+z))
// attached to a polynomial function f, its monomial pieces phi_j, and the
// structural identities they satisfy (Gold splitting, plane sections,
// pairwise coprimality).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "apnkit/mpoly.hpp"

namespace apnkit {

/// f(x) = sum of c * x^e over `terms`, exponents strictly increasing.
struct SBoxPoly {
  FieldSpec spec;
  std::vector<std::pair<std::uint64_t, Elem>> terms;

  /// Grammar: term ('+' term)*, term = [hexcoeff '*'] 'x' ['^' uint] or a
  /// bare hex constant. Repeated exponents are added.
  static SBoxPoly parse(std::string_view text, const FieldSpec& spec);
  /// Highest degree first, e.g. "x^17 + 0x3*x^11 + x^5"; "0" when empty.
  std::string to_string() const;

  bool is_zero() const noexcept { return terms.empty(); }
  /// -1 for the zero function.
  std::int64_t degree() const noexcept { return terms.empty() ? -1 : static_cast<std::int64_t>(terms.back().first); }
  Elem coeff(std::uint64_t e) const noexcept;
  void add_term(std::uint64_t e, Elem c);
  SBoxPoly operator+(const SBoxPoly& o) const;
  bool operator==(const SBoxPoly& o) const { return spec == o.spec && terms == o.terms; }

  /// Drops the constant term and terms of degree 2^s. Each dropped term is
  /// described in `log` when given.
  SBoxPoly normalized(std::vector<std::string>* log = nullptr) const;
  /// f(x) for x in spec.
  Elem eval(Elem x) const;
};

struct PhiSurface {
  MPoly poly;
  SBoxPoly source;
  int degree = -1;
};

/// (x^j + y^j + z^j + (x+y+z)^j) / ((x+y)(x+z)(y+z)); DegreeTooSmall for j < 3.
MPoly phi_j(std::uint64_t j, const FieldSpec& spec);
/// EmptyFunction when f has no term of degree >= 3 outside powers of two.
PhiSurface phi_of(const SBoxPoly& f);
/// f(x)+f(y)+f(z)+f(x+y+z) as a polynomial.
MPoly phi_numerator(const SBoxPoly& f);

/// The 2^k - 2 forms x + a*y + (a+1)*z, a in F_{2^k} minus F_2, ascending in a.
std::vector<MPoly> gold_factorization(int k);

struct Section {
  int multiplicity = 0;
  MPoly cofactor;
};
/// p(x, y, y) = (x+y)^multiplicity * cofactor with x+y not dividing cofactor.
/// ZeroSection when p(x, y, y) = 0.
Section plane_section(const MPoly& p);
/// (x^(n-1) + y^(n-1)) / (x+y)^2 for odd n >= 5.
MPoly section_formula_odd(std::uint64_t n, const FieldSpec& spec);

enum class Family { Gold, Kasami, Welch };
const char* family_name(Family f);

struct ExponentClass {
  std::uint64_t value = 0;
  std::vector<std::pair<Family, int>> classes;  // (family, k), possibly several

  bool is(Family f) const;
  bool is_other() const { return classes.empty(); }
};
/// Gold 2^k+1 (k >= 1), Kasami 4^k-2^k+1 (k >= 2), Welch 2^k+3 (k >= 2).
ExponentClass classify_exponent(std::uint64_t d);

/// gcd of phi_j1 and phi_j2 after setting z = 1 (pure powers of z removed first).
MPoly phi_pair_gcd(std::uint64_t j1, std::uint64_t j2, const FieldSpec& spec);

/// Predicted y = z section of phi_n for odd n >= 5: which case applies
/// ('a' Gold, 'b' n = 3 mod 4, 'c' n = 1 + 2^l*m), the (x+y)-multiplicity and
/// the cofactor in closed form.
struct SectionPrediction {
  char part = '?';
  int multiplicity = 0;
  MPoly cofactor;
};
SectionPrediction predict_section(std::uint64_t n, const FieldSpec& spec);

}  // namespace apnkit
