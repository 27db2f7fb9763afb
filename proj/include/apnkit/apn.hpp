#pragma once

// Differential uniformity by exhaustion: APN tests over F_{2^n}, the
// rational-point criterion on the phi numerator as a second oracle, and
// scans over a range of extension degrees.

#include <cstdint>
#include <optional>
#include <vector>

#include "apnkit/surface.hpp"

namespace apnkit {

inline constexpr int kDefaultMaxApnDegree = 14;
inline constexpr int kDefaultMaxRodierDegree = 8;

struct ApnReport {
  int n = 0;
  bool is_apn = false;
  std::uint64_t max_solutions = 0;
  /// Smallest (a, b) by bit pattern reaching max_solutions (witness mode only).
  std::optional<std::pair<Elem, Elem>> witness;
};

struct ExtensionScan {
  SBoxPoly f;
  std::vector<ApnReport> results;
};

/// Values of f on every element of F_{2^n} (default modulus), indexed by bits.
/// NoCoefficientEmbedding when the coefficient field degree does not divide n.
std::vector<std::uint64_t> value_table(const SBoxPoly& f, int n);

/// #{x : f(x+a) + f(x) = b} in F_{2^n}. ZeroDirection when a = 0.
std::uint64_t differential_count(const SBoxPoly& f, int n, Elem a, Elem b);

/// verdict_only stops at the first fiber larger than 2.
ApnReport is_apn(const SBoxPoly& f, int n, bool verdict_only = false, int max_n = kDefaultMaxApnDegree);

/// True iff every zero of f(x)+f(y)+f(z)+f(x+y+z) in F_{2^n}^3 has two equal
/// coordinates.
bool rodier_check(const SBoxPoly& f, int n, int max_n = kDefaultMaxRodierDegree);

ExtensionScan scan_extensions(const SBoxPoly& f, int n_min, int n_max, bool verdict_only = true,
                              int max_n = kDefaultMaxApnDegree);

/// 2^k+1 (Gold, k >= 1), 4^k-2^k+1 (Kasami, k >= 2), 2^k+3 (Welch, k >= 2).
std::uint64_t exponent_catalog(Family kind, int k);

/// Parameters for x^3 + u*x^36 over F_{2^10}: w is the smallest element of
/// order 3 and u ranges over w*F_32^* and w^2*F_32^*, ascending.
struct EkpParameters {
  FieldSpec field;
  Elem w = 0;
  std::vector<Elem> admissible_u;
};
EkpParameters ekp_parameters();
SBoxPoly ekp_function(Elem u);

}  // namespace apnkit
