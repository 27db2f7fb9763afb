#pragma once

// Dense univariate polynomials over F_{2^m}: arithmetic, gcds, modular
// exponentiation and complete factorization (squarefree split, distinct
// degree, then trace-based equal degree splitting).
//
// The free functions in `upoly` work on raw coefficient vectors (index =
// degree, no trailing zeros) and are the building blocks of the bivariate
// code. UPoly is the value type exposed to callers.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "apnkit/field.hpp"

namespace apnkit {

using Coeffs = std::vector<Elem>;

namespace upoly {

void trim(Coeffs& a);
inline int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_zero(const Coeffs& a) { return a.empty(); }
inline bool is_one(const Coeffs& a) { return a.size() == 1 && a[0] == 1; }
inline Elem lead(const Coeffs& a) { return a.empty() ? Elem{0} : a.back(); }

Coeffs add(const Coeffs& a, const Coeffs& b);
/// a += b * X^shift
void add_shifted(Coeffs& a, const Coeffs& b, std::size_t shift = 0);
Coeffs mul(const FieldSpec& F, const Coeffs& a, const Coeffs& b);
Coeffs scale(const FieldSpec& F, const Coeffs& a, Elem c);
Coeffs monic(const FieldSpec& F, const Coeffs& a);
std::pair<Coeffs, Coeffs> divmod(const FieldSpec& F, const Coeffs& a, const Coeffs& b);
Coeffs rem(const FieldSpec& F, const Coeffs& a, const Coeffs& b);
/// Quotient, raising InexactDivision when b does not divide a.
Coeffs exact_quo(const FieldSpec& F, const Coeffs& a, const Coeffs& b);
/// Monic gcd; gcd(0, 0) = 0.
Coeffs gcd(const FieldSpec& F, Coeffs a, Coeffs b);
/// Inverse of a modulo m (gcd must be 1).
Coeffs inv_mod(const FieldSpec& F, const Coeffs& a, const Coeffs& m);
Coeffs mul_mod(const FieldSpec& F, const Coeffs& a, const Coeffs& b, const Coeffs& m);
/// a^(2^k) mod m via coefficient-wise squaring.
Coeffs frobenius_mod(const FieldSpec& F, Coeffs a, int k, const Coeffs& m);
Coeffs derivative(const Coeffs& a);
/// Square root of a perfect square (odd coefficients must vanish).
Coeffs sqrt(const FieldSpec& F, const Coeffs& a);
Elem eval(const FieldSpec& F, const Coeffs& a, Elem x);
/// Coefficient-wise image under an embedding.
Coeffs map(const Embedding& e, const Coeffs& a);

bool is_irreducible(const FieldSpec& F, const Coeffs& f);

using FactorList = std::vector<std::pair<Coeffs, int>>;

/// Squarefree decomposition of a monic polynomial; factors are monic and
/// pairwise coprime with multiplicities.
FactorList squarefree(const FieldSpec& F, const Coeffs& f);
/// Distinct degree split of a squarefree monic polynomial: (product of all
/// irreducible factors of degree d, d).
FactorList distinct_degree(const FieldSpec& F, const Coeffs& f);
/// Splits a squarefree monic product of degree-d irreducibles.
std::vector<Coeffs> equal_degree(const FieldSpec& F, const Coeffs& f, int d, std::mt19937_64& rng);

struct Factored {
  Elem unit = 1;
  FactorList factors;  // monic irreducibles, sorted by (degree, coefficients)
};
/// ZeroPolynomial on f = 0.
Factored factor(const FieldSpec& F, const Coeffs& f, std::uint64_t seed = 0);
/// Distinct roots, ascending by bit pattern.
std::vector<Elem> roots(const FieldSpec& F, const Coeffs& f, std::uint64_t seed = 0);

}  // namespace upoly

struct UFactorization;

class UPoly {
 public:
  explicit UPoly(FieldSpec spec) : spec_(std::move(spec)) {}
  UPoly(FieldSpec spec, Coeffs coeffs);

  const FieldSpec& spec() const noexcept { return spec_; }
  const Coeffs& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return upoly::deg(c_); }
  bool is_zero() const noexcept { return c_.empty(); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  bool operator==(const UPoly& o) const { return spec_ == o.spec_ && c_ == o.c_; }

  UFactorization factor(std::uint64_t seed = 0) const;

 private:
  FieldSpec spec_;
  Coeffs c_;
};

struct UFactorization {
  Elem unit = 1;
  std::vector<std::pair<UPoly, int>> factors;
};

}  // namespace apnkit
