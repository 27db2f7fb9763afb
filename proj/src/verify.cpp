#include "apnkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "apnkit/error.hpp"

namespace apnkit {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

MPoly dehomogenized(const MPoly& p) { return substitute(p, {Var::X, Var::Y, Elem{1}}).monic(); }

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

void tally(RunSummary& s, bool pass) { (pass ? s.passed : s.failed)++; }

}  // namespace

RunSummary verify_lemma1(int k_max, int threads) {
  if (k_max < 2 || k_max > 5) throw Error(Errc::ParameterOutOfRange, "lemma1 needs 2 <= k <= 5");
  const FieldSpec F2;
  struct Row {
    std::uint64_t j1, j2;
    std::string kind;
    bool expect_one;
  };
  std::vector<Row> rows;
  for (int k = 2; k <= k_max; ++k) {
    const auto g = exponent_catalog(Family::Gold, k), ka = exponent_catalog(Family::Kasami, k),
               w = exponent_catalog(Family::Welch, k);
    const std::string tag = "k=" + std::to_string(k);
    rows.push_back({g, ka, "gold/kasami " + tag, true});
    rows.push_back({g, w, "gold/welch " + tag, true});
    rows.push_back({ka, w, "kasami/welch " + tag, true});
  }
  // Same-family pairs with coprime parameters; the last field is the
  // largest k involved.
  struct Fixed {
    std::uint64_t j1, j2;
    const char* kind;
    bool expect_one;
    int k;
  };
  const Fixed fixed[] = {
      {5, 9, "gold/gold k=2,3", true, 3},         {9, 17, "gold/gold k=3,4", true, 4},
      {5, 33, "gold/gold k=2,5", true, 5},        {13, 57, "kasami/kasami k=2,3", true, 3},
      {7, 11, "welch/welch k=2,3", true, 3},      {7, 19, "welch/welch k=2,4", true, 4},
      {7, 35, "welch/welch k=2,5", true, 5},      {11, 19, "welch/welch k=3,4", true, 4},
      {11, 35, "welch/welch k=3,5", true, 5},     {19, 35, "welch/welch k=4,5", true, 5},
      // Gold with k | k' shares the F_{2^k} forms: gcd is phi_5 itself.
      {5, 17, "gold/gold k=2,4 (non-example)", false, 4},
  };
  for (const Fixed& f : fixed) {
    if (f.k <= k_max) rows.push_back({f.j1, f.j2, f.kind, f.expect_one});
  }

  std::vector<json> out(rows.size());
  std::vector<char> pass(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const Row& r = rows[i];
    const MPoly g = phi_pair_gcd(r.j1, r.j2, F2);
    const MPoly expected = r.expect_one ? MPoly::constant(F2, 1) : dehomogenized(phi_j(r.j1, F2));
    pass[i] = g == expected;
    out[i] = {{"j1", r.j1},       {"j2", r.j2}, {"pair", r.kind}, {"expected", expected.to_string()},
              {"observed", g.to_string()}, {"pass", static_cast<bool>(pass[i])}};
  });
  RunSummary s;
  s.result = {{"k_max", k_max}, {"rows", out}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    tally(s, pass[i]);
    if (!pass[i]) s.log.push_back("gcd(phi_" + std::to_string(rows[i].j1) + ", phi_" + std::to_string(rows[i].j2) +
                                  ") mismatch");
  }
  return s;
}

RunSummary verify_lemma2(std::uint64_t max_n, int threads) {
  if (max_n > 201) throw Error(Errc::ParameterOutOfRange, "lemma2 needs max_n <= 201");
  const FieldSpec F2;
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 5; n <= max_n; n += 2) ns.push_back(n);
  std::vector<json> out(ns.size());
  std::vector<char> pass(ns.size());
  parallel_for(ns.size(), threads, [&](std::size_t i) {
    const std::uint64_t n = ns[i];
    const SectionPrediction pred = predict_section(n, F2);
    const Section obs = plane_section(phi_j(n, F2));
    const MPoly formula = section_formula_odd(n, F2);
    // The closed form must also agree with the generic odd-n expression.
    MPoly x_plus_y = MPoly::variable(F2, Var::X) + MPoly::variable(F2, Var::Y);
    const bool consistent = x_plus_y.pow(static_cast<std::uint32_t>(pred.multiplicity)) * pred.cofactor == formula;
    pass[i] = obs.multiplicity == pred.multiplicity && obs.cofactor == pred.cofactor && consistent;
    out[i] = {{"n", n},
              {"part", std::string(1, pred.part)},
              {"predicted_multiplicity", pred.multiplicity},
              {"observed_multiplicity", obs.multiplicity},
              {"cofactor_match", obs.cofactor == pred.cofactor},
              {"formula_match", consistent},
              {"pass", static_cast<bool>(pass[i])}};
  });
  RunSummary s;
  s.result = {{"max_n", max_n}, {"rows", out}};
  for (std::size_t i = 0; i < ns.size(); ++i) {
    tally(s, pass[i]);
    if (!pass[i]) s.log.push_back("section mismatch at n = " + std::to_string(ns[i]));
  }
  return s;
}

RunSummary scan_degrees(int d_max, const FactorOptions& opt, int threads) {
  if (d_max > 99) throw Error(Errc::ParameterOutOfRange, "scan needs d_max <= 99");
  // phi_d has degree d - 3, so the top of the range may need a larger cap
  FactorOptions options = opt;
  options.max_degree = std::max(options.max_degree, d_max - 3);
  const FieldSpec F2;
  std::vector<std::uint64_t> ds;
  for (int d = 5; d <= d_max; d += 2) ds.push_back(static_cast<std::uint64_t>(d));
  std::vector<json> out(ds.size());
  std::vector<char> pass(ds.size());
  parallel_for(ds.size(), threads, [&](std::size_t i) {
    const std::uint64_t d = ds[i];
    const ExponentClass cls = classify_exponent(d);
    const MPoly phi = phi_j(d, F2);
    const Verdict v = is_absolutely_irreducible(phi, options);
    json row = {{"d", d}, {"class", to_json(cls)}, {"status", status_name(v.status)},
                {"conjugate_count", v.conjugate_count}};
    int family_k = 0;
    int factor_degree = 0;
    for (const auto& [fam, k] : cls.classes) {
      if (fam == Family::Gold) family_k = k, factor_degree = 1;
      if (fam == Family::Kasami) family_k = k, factor_degree = (1 << k) + 1;
    }
    if (family_k == 0) {
      pass[i] = v.status == Status::AbsolutelyIrreducible;
      row["expected"] = "absolutely_irreducible";
    } else {
      // Expected: 2^k - 2 conjugate factors of equal degree over F_{2^k}.
      const FieldSpec K = build_field(family_k);
      const Factorization fk = factor_homogeneous(phi.mapped(embed_field(F2, K)), options);
      bool shape = fk.count() == (1 << family_k) - 2;
      for (const auto& [g, e] : fk.factors) shape = shape && e == 1 && g.total_degree() == factor_degree;
      pass[i] = v.status != Status::AbsolutelyIrreducible && v.status != Status::Undetermined && shape;
      row["expected"] = "splits into " + std::to_string((1 << family_k) - 2) + " forms of degree " +
                        std::to_string(factor_degree) + " over F_2^" + std::to_string(family_k);
      row["split_factors"] = fk.count();
    }
    row["pass"] = static_cast<bool>(pass[i]);
    out[i] = std::move(row);
  });
  RunSummary s;
  s.result = {{"d_max", d_max}, {"rows", out}};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    tally(s, pass[i]);
    if (!pass[i]) s.log.push_back("unexpected verdict for d = " + std::to_string(ds[i]));
  }
  return s;
}

namespace {

// Counter-based stream: the draw for (seed, sample, attempt) never depends on
// other samples, so thread count does not change results.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(attempt), 0x7e0a3u};
  return std::mt19937_64(seq);
}

Elem random_nonzero(std::mt19937_64& rng, const FieldSpec& F) {
  if (F.degree() == 1) return 1;
  for (;;) {
    Elem e = (Elem{rng()} << 64 | rng()) & F.mask();
    if (e) return e;
  }
}

// Adds each exponent in [lo, hi] outside `skip` (powers of two excluded) with
// probability 1/2 and a random nonzero coefficient.
void random_tail(SBoxPoly& f, std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi,
                 const std::vector<std::uint64_t>& skip) {
  for (std::uint64_t j = lo; j <= hi; ++j) {
    if (is_power_of_two(j) || std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
    if (rng() & 1) f.add_term(j, random_nonzero(rng, f.spec));
  }
}

struct Draw {
  SBoxPoly f;
  std::uint64_t d = 0;
  std::string branch;
};

std::vector<std::uint64_t> admissible_degrees(const std::string& name, int k) {
  const std::uint64_t top = (std::uint64_t{1} << k) + 1;
  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = 3; d < top; d += 2) {
    if (name == "3mod4" && d % 4 == 3) ds.push_back(d);
    if (name == "1mod4" && d % 4 == 1 && d >= 5) ds.push_back(d);
    if (name == "gold65") ds.push_back(d);
  }
  return ds;
}

}  // namespace

RunSummary verify_theorem(const TheoremConfig& cfg) {
  const std::string& name = cfg.name;
  if (name != "obstacle" && name != "3mod4" && name != "1mod4" && name != "gold65") {
    throw Error(Errc::InvalidArgument, "unknown theorem '" + name + "'");
  }
  const int k = name == "gold65" ? 6 : cfg.k;
  if (k < (name == "obstacle" ? 3 : 2) || k > 6) throw Error(Errc::ParameterOutOfRange, "k out of range for " + name);
  if (cfg.samples < 1) throw Error(Errc::ParameterOutOfRange, "samples must be positive");
  if (name == "obstacle" && cfg.branch != "a" && cfg.branch != "b" && cfg.branch != "both") {
    throw Error(Errc::InvalidArgument, "branch must be a, b or both");
  }
  const FieldSpec& C = cfg.coefficients;
  const std::uint64_t gold = (std::uint64_t{1} << k) + 1;
  const std::vector<std::uint64_t> degrees = admissible_degrees(name, k);
  if (cfg.d) {
    if (name == "obstacle" || std::find(degrees.begin(), degrees.end(), *cfg.d) == degrees.end()) {
      throw Error(Errc::ParameterOutOfRange, "d = " + std::to_string(*cfg.d) + " is not admissible for " + name);
    }
  }
  // Precondition for 1mod4: phi_{2^k+1} and phi_d coprime (decided over F_2,
  // which is enough since gcds commute with field extension).
  std::map<std::uint64_t, bool> coprime;
  if (name == "1mod4") {
    for (std::uint64_t d : degrees) coprime[d] = phi_pair_gcd(gold, d, FieldSpec{}).is_constant();
  }

  RunSummary s;
  std::vector<Draw> draws;
  const std::uint64_t budget = 100 * static_cast<std::uint64_t>(cfg.samples);
  std::uint64_t attempts = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      if (attempts++ >= budget) {
        throw Error(Errc::SampleBudgetExhausted,
                    "no hypothesis-conforming sample after " + std::to_string(budget) + " draws");
      }
      auto rng = sample_rng(cfg.seed, static_cast<std::uint64_t>(i), attempt);
      Draw dr{SBoxPoly{C, {}}, 0, ""};
      dr.f.add_term(gold, 1);
      if (name == "obstacle") {
        const std::uint64_t half = (std::uint64_t{1} << (k - 1)) + 1;
        dr.branch = cfg.branch == "both" ? (i % 2 == 0 ? "a" : "b") : cfg.branch;
        dr.f.add_term(half + 2, random_nonzero(rng, C));
        random_tail(dr.f, rng, 3, half, {5});
        if (dr.branch == "b") {
          dr.f.add_term(5, random_nonzero(rng, C));
          std::vector<std::uint64_t> others;
          for (std::uint64_t j = 3; j <= half; ++j) {
            if (j != 5 && !is_power_of_two(j)) others.push_back(j);
          }
          const std::uint64_t j = others[rng() % others.size()];
          if (dr.f.coeff(j) == 0) dr.f.add_term(j, random_nonzero(rng, C));
        }
        dr.d = static_cast<std::uint64_t>(dr.f.degree());
      } else {
        dr.d = cfg.d ? *cfg.d : degrees[rng() % degrees.size()];
        if (name == "1mod4" && !coprime.at(dr.d)) {
          s.log.push_back("sample " + std::to_string(i) + " attempt " + std::to_string(attempt) + ": d = " +
                          std::to_string(dr.d) + " shares a factor with phi_" + std::to_string(gold) +
                          ", skipped");
          continue;
        }
        dr.f.add_term(dr.d, random_nonzero(rng, C));
        random_tail(dr.f, rng, 3, dr.d - 1, {});
      }
      draws.push_back(std::move(dr));
      break;
    }
  }

  std::vector<json> rows(draws.size());
  std::vector<int> outcome(draws.size());  // 1 pass, 0 fail, -1 inconclusive
  parallel_for(draws.size(), cfg.threads, [&](std::size_t i) {
    const Draw& dr = draws[i];
    const PhiSurface phi = phi_of(dr.f);
    json row = {{"index", i}, {"f", dr.f.to_string()}, {"d", dr.d}};
    if (!dr.branch.empty()) row["branch"] = dr.branch;
    if (name == "gold65") {
      const FactorWitness w = has_absolutely_irreducible_factor(phi.poly, cfg.factor);
      outcome[i] = w.found ? 1 : -1;
      row["has_absolutely_irreducible_factor"] = w.found;
    } else {
      const Verdict v = is_absolutely_irreducible(phi.poly, cfg.factor);
      outcome[i] = v.status == Status::AbsolutelyIrreducible ? 1 : 0;
      row["status"] = status_name(v.status);
      row["certificate"] = v.certificate;
    }
    row["pass"] = outcome[i] == 1;
    rows[i] = std::move(row);
  });

  int inconclusive = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (outcome[i] < 0) {
      ++inconclusive;
      s.log.push_back("sample " + std::to_string(i) + ": no absolutely irreducible factor certified");
      continue;
    }
    tally(s, outcome[i] == 1);
    if (outcome[i] == 0) s.log.push_back("sample " + std::to_string(i) + " not certified: " + draws[i].f.to_string());
  }
  s.result = {{"theorem", name},
              {"k", k},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"coefficient_field", to_json(C)},
              {"draws", attempts},
              {"inconclusive", inconclusive},
              {"rows", rows}};
  if (cfg.d) s.result["d"] = *cfg.d;
  if (name == "obstacle") s.result["branch"] = cfg.branch;
  return s;
}

}  // namespace apnkit
