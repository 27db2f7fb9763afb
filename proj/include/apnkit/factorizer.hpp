#pragma once

// Factorization of bivariate and homogeneous trivariate polynomials over
// F_{2^m}, and absolute irreducibility verdicts built on top of it.
//
// Bivariate factoring: content removal, squarefree split, a shear making
// the polynomial monic in x, a specialization y = y0, univariate factoring,
// y-adic Hensel lifting and subset recombination. When no usable y0 exists
// in the coefficient field the work moves to a small extension and the
// factors are brought back down as Frobenius orbit products.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apnkit/mpoly.hpp"

namespace apnkit {

struct FactorOptions {
  std::uint64_t seed = 0;
  std::uint64_t recombination_budget = std::uint64_t{1} << 20;
  int max_extension = 8;
  int max_degree = 64;
  // Plane sections tried before a non-homogeneous trivariate input is
  // reported Undetermined.
  int section_attempts = 12;
  // Accept a nonsingular rational point (over F or an extension of degree
  // prime to the total degree) as proof of absolute irreducibility before
  // factoring over extensions.
  bool point_certificates = true;
};

struct Factorization {
  Elem unit = 1;
  FieldSpec field;
  std::vector<std::pair<MPoly, int>> factors;

  MPoly expand() const;
  /// Number of irreducible factors counted with multiplicity.
  int count() const;
};

enum class Status { ReducibleOverBase, IrreducibleNotAbsolutely, AbsolutelyIrreducible, Undetermined };

const char* status_name(Status s);

struct Verdict {
  Status status = Status::Undetermined;
  /// Number of conjugate factors over the algebraic closure (1 when
  /// absolutely irreducible, 0 when unknown or reducible over the base).
  int conjugate_count = 0;
  /// Factorization over the base field when it is reducible there, or over
  /// the smallest extension exhibiting a split.
  std::optional<Factorization> witness;
  /// How the verdict was reached, e.g. "section z = 0x3*x + y + 0x1 over F_2^8".
  std::string certificate;
};

/// Factors a polynomial in at most two variables. DegreeOverflow beyond
/// options.max_degree; NoGoodSpecialization if extensions up to
/// options.max_extension do not help.
Factorization factor_bivariate(const MPoly& p, const FactorOptions& options = {});

/// Factors a homogeneous trivariate polynomial; factors are homogeneous.
Factorization factor_homogeneous(const MPoly& p, const FactorOptions& options = {});

/// Homogeneous or at most bivariate inputs get a complete answer. Other
/// trivariate inputs are certified absolutely irreducible through a plane
/// section of full degree, otherwise Undetermined.
Verdict is_absolutely_irreducible(const MPoly& p, const FactorOptions& options = {});

struct FactorWitness {
  bool found = false;
  std::optional<MPoly> factor;
};

/// First absolutely irreducible factor over the base field, in graded-lex
/// order of leading monomials.
FactorWitness has_absolutely_irreducible_factor(const MPoly& p, const FactorOptions& options = {});

/// Exhaustive reference factorization for tiny inputs (total degree <= 6,
/// field degree <= 2).
Factorization oracle_factor_tiny(const MPoly& p);

/// Canonical order on factors: total degree, then terms.
bool factor_less(const MPoly& a, const MPoly& b);

}  // namespace apnkit
