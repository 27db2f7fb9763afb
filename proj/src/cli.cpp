#include "apnkit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "apnkit/error.hpp"
#include "apnkit/verify.hpp"

namespace apnkit::cli {

FieldSpec parse_field(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  int m = 0;
  try {
    std::size_t used = 0;
    m = std::stoi(std::string(head), &used);
    if (used != head.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw Error(Errc::SyntaxError, "field '" + std::string(text) + "': expected m or m:0xMOD");
  }
  if (m < 1 || m > kMaxFieldDegree) throw Error(Errc::ParameterOutOfRange, "field degree must be in 1..128");
  if (colon == std::string_view::npos) return build_field(m);
  return build_field_hex(m, text.substr(colon + 1));
}

std::pair<int, int> parse_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(std::string(s), &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(Errc::SyntaxError, "range '" + std::string(text) + "': expected n or a..b");
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int n = number(text);
    return {n, n};
  }
  const int a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
  if (a > b) throw Error(Errc::ParameterOutOfRange, "empty range " + std::string(text));
  return {a, b};
}

json strip_timing(json report) {
  report.erase("timing");
  return report;
}

namespace {

struct Options {
  std::string field = "1";
  std::string f;
  std::string g;
  std::string n;
  std::string expect;
  std::string out;
  std::string branch = "both";
  std::string theorem;
  int k = 0;
  int d_max = 32;
  int samples = 50;
  int threads = 1;
  int over = 0;
  std::optional<std::uint64_t> d;
  std::uint64_t seed = 0;
  bool verdict_only = false;
  bool normalize = false;
};

struct Outcome {
  json inputs = json::object();
  json result = json::object();
  int passed = 0;
  int failed = 0;
  std::vector<std::string> log;
};

void check(Outcome& o, bool ok, const std::string& what) {
  (ok ? o.passed : o.failed)++;
  if (!ok) o.log.push_back("expectation failed: " + what);
}

void absorb(Outcome& o, RunSummary s) {
  o.result = std::move(s.result);
  o.passed += s.passed;
  o.failed += s.failed;
  for (auto& line : s.log) o.log.push_back(std::move(line));
}

int single_n(const std::string& text) {
  if (text.empty()) throw Error(Errc::InvalidArgument, "--n is required");
  const auto [a, b] = parse_range(text);
  if (a != b) throw Error(Errc::InvalidArgument, "--n takes a single degree here");
  return a;
}

// Parses --f over --field, optionally normalizing, and echoes both.
SBoxPoly read_sbox(const Options& opt, Outcome& o, const FieldSpec& F) {
  if (opt.f.empty()) throw Error(Errc::InvalidArgument, "--f is required");
  SBoxPoly f = SBoxPoly::parse(opt.f, F);
  o.inputs["field"] = to_json(F);
  o.inputs["f"] = opt.f;
  if (opt.normalize) {
    std::vector<std::string> notes;
    f = f.normalized(&notes);
    o.inputs["normalization"] = notes;
  }
  o.inputs["f_canonical"] = f.to_string();
  return f;
}

std::optional<std::uint64_t> monomial_exponent(const SBoxPoly& f) {
  if (f.terms.size() == 1 && f.terms[0].second == 1) return f.terms[0].first;
  return std::nullopt;
}

void forbid_expect(const Options& opt) {
  if (!opt.expect.empty()) throw Error(Errc::InvalidArgument, "--expect is not supported by this command");
}

// --expect apn | not-apn
void expect_apn(const Options& opt, Outcome& o, bool is_apn) {
  if (opt.expect.empty()) return;
  if (opt.expect != "apn" && opt.expect != "not-apn") {
    throw Error(Errc::InvalidArgument, "--expect must be apn or not-apn");
  }
  o.inputs["expect"] = opt.expect;
  check(o, is_apn == (opt.expect == "apn"), "expected " + opt.expect);
}

Outcome field_info(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  o.inputs["field"] = opt.field;
  o.result = to_json(F);
  o.result["default_modulus"] = F == build_field(F.degree());
  if (F.degree() < 64) o.result["size"] = F.size();
  // Smallest generator of the multiplicative group, for small fields.
  if (F.degree() <= 16) {
    const std::uint64_t order = F.size() - 1;
    for (Elem g = 2; g < F.size(); ++g) {
      bool generator = true;
      for (std::uint64_t q = 2, r = order; q <= r && generator; ++q) {
        if (r % q) continue;
        while (r % q == 0) r /= q;
        generator = F.pow(g, order / q) != 1;
      }
      if (order > 1 && generator) {
        o.result["smallest_generator"] = hex128(g);
        break;
      }
    }
  }
  return o;
}

Outcome phi_compute(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const PhiSurface phi = phi_of(read_sbox(opt, o, F));
  o.result = {{"phi", phi.poly.to_string()},
              {"degree", phi.poly.total_degree()},
              {"terms", phi.poly.size()},
              {"homogeneous", phi.poly.is_homogeneous()}};
  return o;
}

Outcome phi_section(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const SBoxPoly f = read_sbox(opt, o, F);
  const Section s = plane_section(phi_of(f).poly);
  o.result = to_json(s);
  // Monomials x^n with odd n >= 5 have a closed form to compare against.
  if (auto n = monomial_exponent(f); n && *n % 2 == 1 && *n >= 5) {
    const SectionPrediction p = predict_section(*n, F);
    const bool ok = p.multiplicity == s.multiplicity && p.cofactor == s.cofactor;
    o.result["predicted"] = {{"part", std::string(1, p.part)}, {"multiplicity", p.multiplicity}, {"match", ok}};
    check(o, ok, "section of phi_" + std::to_string(*n) + " matches its closed form");
  }
  return o;
}

Outcome phi_gcd(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const SBoxPoly f = read_sbox(opt, o, F);
  if (opt.g.empty()) throw Error(Errc::InvalidArgument, "--g is required");
  const SBoxPoly g = SBoxPoly::parse(opt.g, F);
  o.inputs["g"] = opt.g;
  MPoly r(F);
  const auto jf = monomial_exponent(f), jg = monomial_exponent(g);
  if (jf && jg) {
    r = phi_pair_gcd(*jf, *jg, F);
  } else {
    const Assignment z1{Var::X, Var::Y, Elem{1}};
    r = gcd_bivariate(substitute(phi_of(f).poly, z1), substitute(phi_of(g).poly, z1));
  }
  o.result = {{"gcd", r.to_string()}, {"coprime", r.is_constant()}};
  return o;
}

Outcome phi_factor(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  MPoly phi = phi_of(read_sbox(opt, o, F)).poly;
  if (opt.over) {
    const FieldSpec K = build_field(opt.over);
    if (opt.over % F.degree()) throw Error(Errc::NoSubfield, "--over must be a multiple of the field degree");
    phi = phi.mapped(embed_field(F, K));
    o.inputs["over"] = opt.over;
  }
  FactorOptions fo;
  fo.seed = opt.seed;
  const bool trivariate = phi.uses(Var::X) && phi.uses(Var::Y) && phi.uses(Var::Z);
  if (trivariate && !phi.is_homogeneous()) {
    throw Error(Errc::NotHomogeneous, "phi of a non-monomial f is not homogeneous; use phi verdict");
  }
  const Factorization fac = trivariate ? factor_homogeneous(phi, fo) : factor_bivariate(phi, fo);
  o.result = to_json(fac);
  o.result["count"] = fac.count();
  return o;
}

Outcome phi_verdict(const Options& opt) {
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const PhiSurface phi = phi_of(read_sbox(opt, o, F));
  FactorOptions fo;
  fo.seed = opt.seed;
  const Verdict v = is_absolutely_irreducible(phi.poly, fo);
  o.result = to_json(v);
  if (!opt.expect.empty()) {
    o.inputs["expect"] = opt.expect;
    check(o, opt.expect == status_name(v.status), "expected " + opt.expect);
  }
  return o;
}

Outcome scan_cmd(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  o.inputs["d_max"] = opt.d_max;
  FactorOptions fo;
  fo.seed = opt.seed;
  absorb(o, scan_degrees(opt.d_max, fo, opt.threads));
  return o;
}

Outcome lemma1_cmd(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const int k = opt.k ? opt.k : 5;
  o.inputs["k"] = k;
  absorb(o, verify_lemma1(k, opt.threads));
  return o;
}

Outcome lemma2_cmd(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const int n = opt.n.empty() ? 101 : single_n(opt.n);
  if (n < 0) throw Error(Errc::ParameterOutOfRange, "--n must be non-negative");
  o.inputs["n"] = n;
  absorb(o, verify_lemma2(static_cast<std::uint64_t>(n), opt.threads));
  return o;
}

Outcome theorem_cmd(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  TheoremConfig cfg;
  cfg.name = opt.theorem;
  cfg.k = opt.k ? opt.k : 4;
  cfg.samples = opt.samples;
  cfg.seed = opt.seed;
  cfg.d = opt.d;
  cfg.branch = opt.branch;
  cfg.coefficients = parse_field(opt.field);
  cfg.threads = opt.threads;
  cfg.factor.seed = opt.seed;
  o.inputs = {{"theorem", cfg.name}, {"k", cfg.k},          {"samples", cfg.samples},
              {"seed", cfg.seed},    {"branch", cfg.branch}, {"field", to_json(cfg.coefficients)}};
  if (cfg.d) o.inputs["d"] = *cfg.d;
  absorb(o, verify_theorem(cfg));
  return o;
}

Outcome apn_test(const Options& opt) {
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const SBoxPoly f = read_sbox(opt, o, F);
  const int n = single_n(opt.n);
  o.inputs["n"] = n;
  o.inputs["verdict_only"] = opt.verdict_only;
  const ApnReport r = is_apn(f, n, opt.verdict_only);
  o.result = to_json(r, build_field(n));
  expect_apn(opt, o, r.is_apn);
  return o;
}

Outcome apn_rodier(const Options& opt) {
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const SBoxPoly f = read_sbox(opt, o, F);
  const int n = single_n(opt.n);
  o.inputs["n"] = n;
  const bool holds = rodier_check(f, n);
  o.result = {{"n", n}, {"only_trivial_points", holds}};
  expect_apn(opt, o, holds);
  return o;
}

Outcome apn_scan(const Options& opt) {
  forbid_expect(opt);
  Outcome o;
  const FieldSpec F = parse_field(opt.field);
  const SBoxPoly f = read_sbox(opt, o, F);
  if (opt.n.empty()) throw Error(Errc::InvalidArgument, "--n is required");
  const auto [lo, hi] = parse_range(opt.n);
  o.inputs["n"] = {{"min", lo}, {"max", hi}};
  const ExtensionScan s = scan_extensions(f, lo, hi, true);
  json rows = json::array(), apn = json::array();
  for (const ApnReport& r : s.results) {
    rows.push_back({{"n", r.n}, {"is_apn", r.is_apn}, {"max_solutions", r.max_solutions}});
    if (r.is_apn) apn.push_back(r.n);
  }
  o.result = {{"rows", rows}, {"apn_degrees", apn}};
  return o;
}

void print_table(const Outcome& o, std::ostream& err) {
  if (o.result.contains("rows") && o.result["rows"].is_array()) {
    for (const auto& row : o.result["rows"]) {
      std::string line;
      for (const auto& [key, value] : row.items()) {
        if (value.is_structured() || key == "certificate") continue;
        line += key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()) + "  ";
      }
      err << line << "\n";
    }
  } else {
    for (const auto& [key, value] : o.result.items()) {
      err << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
  for (const auto& line : o.log) err << "note: " << line << "\n";
  err << "assertions: " << o.passed << " passed, " << o.failed << " failed\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  std::string command;
  std::function<Outcome(const Options&)> action;

  CLI::App app{"phi surfaces, absolute irreducibility and APN checks over GF(2^m)", "apnkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  Outcome (*fn)(const Options&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    const std::string full = parent->get_name() + " " + name;
    sub->add_option("--out", opt.out, "Write the JSON report to this file instead of stdout");
    sub->add_option("--threads", opt.threads, "Worker threads for batch commands")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Seed for sampling and randomized factoring")->capture_default_str();
    sub->callback([&, full, fn] {
      command = full;
      action = fn;
    });
    return sub;
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", opt.field, "Field as m or m:0xMOD (modulus with its leading bit)")
        ->capture_default_str();
  };
  auto add_f = [&](CLI::App* sub) {
    sub->add_option("--f", opt.f, "Polynomial such as \"x^17 + 0x3*x^11 + x^5\"")->required();
    sub->add_flag("--normalize", opt.normalize, "Drop constant and 2-power terms before use");
  };

  CLI::App* field = app.add_subcommand("field", "Field descriptions");
  field->require_subcommand(1);
  add_field(leaf(field, "info", "Modulus, size and a generator", &field_info));

  CLI::App* phi = app.add_subcommand("phi", "The phi surface of f");
  phi->require_subcommand(1);
  for (auto [name, help, fn] : {std::tuple{"compute", "Compute phi", &phi_compute},
                                std::tuple{"section", "The y = z plane section of phi", &phi_section},
                                std::tuple{"gcd", "gcd of two phi surfaces at z = 1", &phi_gcd},
                                std::tuple{"factor", "Factor phi (homogeneous cases)", &phi_factor},
                                std::tuple{"verdict", "Absolute irreducibility of phi", &phi_verdict}}) {
    CLI::App* sub = leaf(phi, name, help, fn);
    add_field(sub);
    add_f(sub);
    if (std::string(name) == "gcd") sub->add_option("--g", opt.g, "Second polynomial")->required();
    if (std::string(name) == "factor") sub->add_option("--over", opt.over, "Factor over F_{2^M} instead");
    if (std::string(name) == "verdict") {
      sub->add_option("--expect", opt.expect, "Expected status; a mismatch exits with 2");
    }
  }

  CLI::App* scan = app.add_subcommand("scan", "Batch scans");
  scan->require_subcommand(1);
  leaf(scan, "degrees", "phi_d over F_2 for odd 3 < d <= d-max", &scan_cmd)
      ->add_option("--d-max", opt.d_max, "Largest degree (at most 64)")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Structural checks");
  verify->require_subcommand(1);
  leaf(verify, "lemma1", "Pairwise coprimality of Gold, Kasami and Welch phi", &lemma1_cmd)
      ->add_option("--k", opt.k, "Largest k (2..5, default 5)");
  leaf(verify, "lemma2", "y = z sections of phi_n for odd 5 <= n <= N", &lemma2_cmd)
      ->add_option("--n", opt.n, "Largest n (default 101, at most 201)");
  CLI::App* th = leaf(verify, "theorem", "Sampled instances of the Gold-degree theorems", &theorem_cmd);
  th->add_option("name", opt.theorem, "obstacle | 3mod4 | 1mod4 | gold65")
      ->required()
      ->check(CLI::IsMember({"obstacle", "3mod4", "1mod4", "gold65"}));
  th->add_option("--k", opt.k, "f = x^(2^k+1) + h (default 4; gold65 uses 6)");
  th->add_option("--samples", opt.samples, "Number of samples")->capture_default_str();
  th->add_option("--d", opt.d, "Fix deg(h) (3mod4, 1mod4)");
  th->add_option("--branch", opt.branch, "obstacle condition: a, b or both")->capture_default_str();
  add_field(th);

  CLI::App* apn = app.add_subcommand("apn", "Brute-force APN checks");
  apn->require_subcommand(1);
  for (auto [name, help, fn] : {std::tuple{"test", "Differential uniformity on F_{2^n}", &apn_test},
                                std::tuple{"rodier", "Rational points of the phi numerator", &apn_rodier},
                                std::tuple{"scan", "APN on F_{2^n} for a range of n", &apn_scan}}) {
    CLI::App* sub = leaf(apn, name, help, fn);
    add_field(sub);
    add_f(sub);
    sub->add_option("--n", opt.n, std::string(name) == "scan" ? "Range a..b" : "Extension degree")->required();
    if (std::string(name) != "scan") sub->add_option("--expect", opt.expect, "apn or not-apn");
    if (std::string(name) == "test") sub->add_flag("--verdict-only", opt.verdict_only, "Stop at the first violation");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, err, err);
    return code == 0 ? 0 : 1;
  }
  if (opt.threads < 1) {
    err << "error: --threads must be positive\n";
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = action(opt);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  json report = {{"schema_version", kSchemaVersion},
                 {"tool", "apnkit"},
                 {"tool_version", kToolVersion},
                 {"command", command},
                 {"inputs", o.inputs},
                 {"result", o.result},
                 {"assertions", {{"passed", o.passed}, {"failed", o.failed}}},
                 {"ok", o.failed == 0},
                 {"log", o.log},
                 {"timing", {{"elapsed_ms", ms}, {"threads", opt.threads}}}};
  print_table(o, err);
  const std::string text = report.dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!(file << text)) {
      err << "error: cannot write " << opt.out << "\n";
      return 1;
    }
  }
  return o.failed ? 2 : 0;
}

}  // namespace apnkit::cli
