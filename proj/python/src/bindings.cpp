// Thin layer over the C++ core. Structured results cross as JSON text and are
// turned into dicts by the Python package.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "apnkit/apn.hpp"
#include "apnkit/cli.hpp"
#include "apnkit/factorizer.hpp"
#include "apnkit/report.hpp"
#include "apnkit/surface.hpp"
#include "apnkit/verify.hpp"

namespace py = pybind11;
using namespace apnkit;

namespace {

FieldSpec field_of(const std::string& text) { return cli::parse_field(text); }

SBoxPoly sbox(const std::string& f, const std::string& field) { return SBoxPoly::parse(f, field_of(field)); }

std::string summary_text(const RunSummary& s) {
  json j;
  j["result"] = s.result;
  j["passed"] = s.passed;
  j["failed"] = s.failed;
  j["log"] = s.log;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "phi surfaces, absolute irreducibility and APN checks over GF(2^m)";
  m.attr("version") = cli::kToolVersion;

  static py::exception<Error> error(m, "ApnkitError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("field_info", [](const std::string& field) { return to_json(field_of(field)).dump(); }, py::arg("field") = "1");

  m.def(
      "phi",
      [](const std::string& f, const std::string& field) {
        const PhiSurface s = phi_of(sbox(f, field));
        return py::make_tuple(s.poly.to_string(), s.degree);
      },
      py::arg("f"), py::arg("field") = "1");

  m.def("phi_j", [](std::uint64_t j, const std::string& field) { return phi_j(j, field_of(field)).to_string(); },
        py::arg("j"), py::arg("field") = "1");

  m.def(
      "factor",
      [](const std::string& poly, const std::string& field, std::uint64_t seed) {
        FactorOptions opt;
        opt.seed = seed;
        const MPoly p = MPoly::parse(poly, field_of(field));
        return to_json(p.is_homogeneous() && p.total_degree() > 0 ? factor_homogeneous(p, opt) : factor_bivariate(p, opt))
            .dump();
      },
      py::arg("poly"), py::arg("field") = "1", py::arg("seed") = 0);

  m.def(
      "verdict",
      [](const std::string& poly, const std::string& field, std::uint64_t seed) {
        FactorOptions opt;
        opt.seed = seed;
        return to_json(is_absolutely_irreducible(MPoly::parse(poly, field_of(field)), opt)).dump();
      },
      py::arg("poly"), py::arg("field") = "1", py::arg("seed") = 0);

  m.def(
      "is_apn",
      [](const std::string& f, int n, const std::string& field, bool verdict_only) {
        return to_json(is_apn(sbox(f, field), n, verdict_only), build_field(n)).dump();
      },
      py::arg("f"), py::arg("n"), py::arg("field") = "1", py::arg("verdict_only") = false);

  m.def(
      "rodier_check", [](const std::string& f, int n, const std::string& field) { return rodier_check(sbox(f, field), n); },
      py::arg("f"), py::arg("n"), py::arg("field") = "1");

  m.def(
      "apn_degrees",
      [](const std::string& f, int n_min, int n_max, const std::string& field) {
        std::vector<int> out;
        for (const auto& r : scan_extensions(sbox(f, field), n_min, n_max).results) {
          if (r.is_apn) out.push_back(r.n);
        }
        return out;
      },
      py::arg("f"), py::arg("n_min"), py::arg("n_max"), py::arg("field") = "1");

  m.def(
      "verify_lemma1", [](int k, int threads) { return summary_text(verify_lemma1(k, threads)); }, py::arg("k") = 5,
      py::arg("threads") = 1);
  m.def(
      "verify_lemma2", [](std::uint64_t n, int threads) { return summary_text(verify_lemma2(n, threads)); },
      py::arg("n") = 101, py::arg("threads") = 1);
  m.def(
      "scan_degrees", [](int d_max, int threads) { return summary_text(scan_degrees(d_max, {}, threads)); },
      py::arg("d_max") = 32, py::arg("threads") = 1);

  m.def(
      "verify_theorem",
      [](const std::string& name, int k, int samples, std::uint64_t seed, std::optional<std::uint64_t> d,
         const std::string& branch, int threads) {
        TheoremConfig cfg;
        cfg.name = name;
        cfg.k = k;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.d = d;
        cfg.branch = branch;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return summary_text(verify_theorem(cfg));
      },
      py::arg("name"), py::arg("k") = 4, py::arg("samples") = 50, py::arg("seed") = 0, py::arg("d") = py::none(),
      py::arg("branch") = "both", py::arg("threads") = 1);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "apnkit");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
