#pragma once

// Batch checks of the structural results at desk scale: coprimality of phi
// pairs, y = z plane sections, the odd-degree absolute irreducibility scan
// and sampled instances of the Gold-degree theorems.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apnkit/report.hpp"

namespace apnkit {

struct RunSummary {
  json result;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> log;

  bool ok() const { return failed == 0; }
};

/// Runs fn(0..count-1) on up to `threads` workers; results must be written
/// to per-index slots by fn.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Pairwise coprimality rows for k = 2..k_max plus the fixed family pairs and
/// the (5, 17) non-example.
RunSummary verify_lemma1(int k_max = 5, int threads = 1);

/// Every odd 5 <= n <= max_n: predicted versus observed y = z section.
RunSummary verify_lemma2(std::uint64_t max_n = 101, int threads = 1);

/// Odd 3 < d <= d_max over F_2: non-Gold, non-Kasami d must be absolutely
/// irreducible; Gold and Kasami rows are checked against their splitting.
RunSummary scan_degrees(int d_max = 32, const FactorOptions& options = {}, int threads = 1);

struct TheoremConfig {
  std::string name;  // obstacle | 3mod4 | 1mod4 | gold65
  int k = 4;
  int samples = 50;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> d;  // fixes deg(h) for 3mod4 / 1mod4
  std::string branch = "both";     // obstacle: a | b | both
  FieldSpec coefficients;          // field of the random coefficients
  int threads = 1;
  FactorOptions factor;
};

/// Draws hypothesis-conforming f and checks phi for absolute irreducibility.
/// SampleBudgetExhausted after 100 * samples rejected draws.
RunSummary verify_theorem(const TheoremConfig& config);

}  // namespace apnkit
