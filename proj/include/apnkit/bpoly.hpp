#pragma once

// Dense bivariate polynomials used by the gcd and factoring engines.
//
// A BPoly is a polynomial in a main variable x whose coefficients are
// univariate polynomials in y: c[i] is the coefficient of x^i. The zero
// polynomial has no coefficients and every stored top coefficient is nonzero.

#include <optional>
#include <vector>

#include "apnkit/mpoly.hpp"
#include "apnkit/upoly.hpp"

namespace apnkit {

struct BPoly {
  std::vector<Coeffs> c;

  bool is_zero() const noexcept { return c.empty(); }
  int deg_x() const noexcept { return static_cast<int>(c.size()) - 1; }
  int deg_y() const noexcept;
  int total_degree() const noexcept;
  const Coeffs& lc_x() const { return c.back(); }
  void trim();
  bool operator==(const BPoly&) const = default;
};

namespace bpoly {

/// Reads p as a polynomial in (vx, vy); the third variable must be absent.
BPoly from_mpoly(const MPoly& p, Var vx, Var vy);
MPoly to_mpoly(const FieldSpec& F, const BPoly& p, Var vx, Var vy);

BPoly constant(Elem c);
BPoly from_y(Coeffs y_poly);
BPoly from_x(const Coeffs& x_poly);

BPoly add(const BPoly& a, const BPoly& b);
BPoly mul(const FieldSpec& F, const BPoly& a, const BPoly& b);
BPoly scale(const FieldSpec& F, const BPoly& a, Elem s);
BPoly scale_y(const FieldSpec& F, const BPoly& a, const Coeffs& s);

/// Exchange the roles of x and y.
BPoly swap(const BPoly& p);
/// p(x, y0) as a polynomial in x.
Coeffs eval_y(const FieldSpec& F, const BPoly& p, Elem y0);
/// p(x, y + y0)
BPoly shift_y(const FieldSpec& F, const BPoly& p, Elem y0);
/// p(x + s*y, y)
BPoly shear(const FieldSpec& F, const BPoly& p, Elem s);
BPoly deriv_x(const BPoly& p);
BPoly deriv_y(const BPoly& p);
/// Square root when every exponent is even.
BPoly sqrt(const FieldSpec& F, const BPoly& p);
BPoly map(const Embedding& e, const BPoly& p);
/// Coefficients mapped back through the embedding; nullopt if some
/// coefficient is outside the subfield.
std::optional<BPoly> preimage(const Embedding& e, const BPoly& p);
/// Coefficient-wise a -> a^(2^k).
BPoly frobenius(const FieldSpec& F, const BPoly& p, int k);

/// Monic gcd of the x-coefficients (a polynomial in y).
Coeffs content_x(const FieldSpec& F, const BPoly& p);
/// Monic gcd of the y-coefficients (a polynomial in x).
Coeffs content_y(const FieldSpec& F, const BPoly& p);
BPoly divide_y(const FieldSpec& F, const BPoly& p, const Coeffs& d);

/// Exact quotient p / q, or nullopt when q does not divide p.
std::optional<BPoly> try_divide(const FieldSpec& F, const BPoly& p, const BPoly& q);
BPoly exact_divide(const FieldSpec& F, const BPoly& p, const BPoly& q);
/// Pseudo-remainder lc(q)^(deg p - deg q + 1) * p mod q (in x).
BPoly pseudo_rem(const FieldSpec& F, const BPoly& p, const BPoly& q);

/// Leading coefficient under graded lex with x > y.
Elem grlex_lc(const BPoly& p);
BPoly grlex_monic(const FieldSpec& F, const BPoly& p);

/// Monic (graded lex) gcd. Tries to certify coprimality of the primitive
/// parts by one specialization first; otherwise runs the primitive PRS.
BPoly gcd(const FieldSpec& F, const BPoly& p, const BPoly& q);

}  // namespace bpoly
}  // namespace apnkit
