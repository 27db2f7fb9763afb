#include <algorithm>
#include <random>

#include "apnkit/factorizer.hpp"
#include "apnkit/surface.hpp"
#include "doctest.h"

using namespace apnkit;

namespace {

MPoly P(const char* text, const FieldSpec& F = FieldSpec{}) { return MPoly::parse(text, F); }

MPoly x_(const FieldSpec& F) { return MPoly::variable(F, Var::X); }
MPoly y_(const FieldSpec& F) { return MPoly::variable(F, Var::Y); }
MPoly z_(const FieldSpec& F) { return MPoly::variable(F, Var::Z); }

MPoly denominator(const FieldSpec& F) { return (x_(F) + y_(F)) * (x_(F) + z_(F)) * (y_(F) + z_(F)); }

// x^j + y^j + z^j + (x+y+z)^j by repeated multiplication.
MPoly numerator_direct(std::uint32_t j, const FieldSpec& F) {
  return x_(F).pow(j) + y_(F).pow(j) + z_(F).pow(j) + (x_(F) + y_(F) + z_(F)).pow(j);
}

SBoxPoly random_sbox(std::mt19937_64& rng, const FieldSpec& F, std::uint64_t max_e) {
  SBoxPoly f{F, {}};
  for (std::uint64_t e = 0; e <= max_e; ++e) {
    if (rng() % 2) f.add_term(e, rng() & F.mask());
  }
  return f;
}

}  // namespace

TEST_CASE("sbox text form") {
  const FieldSpec F4 = build_field(2);
  const SBoxPoly f = SBoxPoly::parse("x^17 + 0x3*x^11 + x^5", F4);
  CHECK(f.terms == std::vector<std::pair<std::uint64_t, Elem>>{{5, 1}, {11, 3}, {17, 1}});
  CHECK(f.to_string() == "x^17 + 0x3*x^11 + x^5");
  CHECK(SBoxPoly::parse(f.to_string(), F4) == f);
  CHECK(SBoxPoly::parse("x^3 + x^3", F4).is_zero());
  CHECK(SBoxPoly::parse("0x2*x^3 + 0x3*x^3", F4).terms == std::vector<std::pair<std::uint64_t, Elem>>{{3, 1}});
  CHECK(SBoxPoly::parse("x + 0x1", FieldSpec{}).terms.size() == 2);
  CHECK_THROWS_AS(SBoxPoly::parse("x^^3", F4), Error);
  CHECK_THROWS_AS(SBoxPoly::parse("0x4*x^3", F4), Error);
  CHECK_THROWS_AS(phi_of(SBoxPoly::parse("x^3 + x^3", F4)), Error);
  try {
    (void)SBoxPoly::parse("x^^3", F4);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("column 3") != std::string::npos);
  }
}

TEST_CASE("normalization drops constant and linearized terms") {
  std::vector<std::string> log;
  const SBoxPoly f = SBoxPoly::parse("x^5 + x^4 + x^2 + x + 0x1", FieldSpec{});
  const SBoxPoly g = f.normalized(&log);
  CHECK(g.to_string() == "x^5");
  CHECK(log.size() == 4);
  // the affine part does not change phi
  CHECK(phi_of(f).poly == phi_of(g).poly);
}

TEST_CASE("small phi_j") {
  const FieldSpec F2;
  CHECK(phi_j(3, F2) == P("0x1"));
  CHECK(phi_j(5, F2) == P("x^2 + x*y + x*z + y^2 + y*z + z^2"));
  CHECK(phi_j(4, F2).is_zero());
  CHECK_THROWS_AS(phi_j(2, F2), Error);
  CHECK(phi_j(9, F2).total_degree() == 6);
  CHECK(phi_j(9, F2).is_homogeneous());
}

TEST_CASE("phi_j times the denominator reproduces the numerator") {
  for (int m : {1, 2}) {
    const FieldSpec F = build_field(m);
    for (std::uint32_t j = 3; j <= 40; ++j) {
      CAPTURE(j);
      CHECK(phi_j(j, F) * denominator(F) == numerator_direct(j, F));
    }
  }
}

TEST_CASE("phi_j is symmetric") {
  const FieldSpec F2;
  for (std::uint64_t j = 3; j <= 40; ++j) {
    const MPoly p = phi_j(j, F2);
    CHECK(substitute(p, {Var::Y, Var::X, Var::Z}) == p);
    CHECK(substitute(p, {Var::X, Var::Z, Var::Y}) == p);
    CHECK(substitute(p, {Var::Z, Var::X, Var::Y}) == p);
  }
}

TEST_CASE("doubling identity") {
  const FieldSpec F2;
  const MPoly den = denominator(F2);
  for (std::uint64_t j = 3; j <= 40; ++j) {
    const MPoly p = phi_j(j, F2);
    CHECK(phi_j(2 * j, F2) == p * p * den);
  }
}

TEST_CASE("phi is linear in f") {
  const FieldSpec F4 = build_field(2);
  // phi of a purely affine f is zero (phi_of refuses the empty function)
  auto phi_or_zero = [&](const SBoxPoly& f) {
    return f.normalized().is_zero() ? MPoly(F4) : phi_of(f).poly;
  };
  for (std::uint64_t seed : {0, 1, 2}) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 20; ++t) {
      const SBoxPoly f = random_sbox(rng, F4, 24), g = random_sbox(rng, F4, 24);
      CHECK(phi_or_zero(f + g) == phi_or_zero(f) + phi_or_zero(g));
      if (!f.normalized().is_zero()) CHECK(phi_of(f).poly * denominator(F4) == phi_numerator(f));
    }
  }
}

TEST_CASE("phi of a monomial with a coefficient scales") {
  const FieldSpec F4 = build_field(2);
  const SBoxPoly f = SBoxPoly::parse("0x2*x^7", F4);
  CHECK(phi_of(f).poly == phi_j(7, F4).scaled(2));
}

TEST_CASE("Gold factorization product") {
  const FieldSpec F2;
  for (int k = 2; k <= 5; ++k) {
    const FieldSpec K = build_field(k);
    const auto forms = gold_factorization(k);
    CHECK(forms.size() == (std::size_t{1} << k) - 2);
    MPoly prod = MPoly::constant(K, 1);
    for (const MPoly& l : forms) prod = prod * l;
    CHECK(prod == phi_j((1u << k) + 1, F2).mapped(embed_field(F2, K)));
  }
  CHECK_THROWS_AS(gold_factorization(1), Error);
}

TEST_CASE("Kasami phi_13 over F_4") {
  const FieldSpec F2;
  const FieldSpec F4 = build_field(2);
  const MPoly phi = phi_j(13, F2);
  CHECK(factor_homogeneous(phi).count() == 1);
  const Factorization f = factor_homogeneous(phi.mapped(embed_field(F2, F4)));
  REQUIRE(f.factors.size() == 2);
  const MPoly& a = f.factors[0].first;
  const MPoly& b = f.factors[1].first;
  CHECK(a.total_degree() == 5);
  CHECK(b.total_degree() == 5);
  CHECK(a.frobenius(1) == b);
  CHECK(b.frobenius(1) == a);
  CHECK(is_absolutely_irreducible(a).status == Status::AbsolutelyIrreducible);
  CHECK(is_absolutely_irreducible(b).status == Status::AbsolutelyIrreducible);
}

TEST_CASE("Welch phi are absolutely irreducible") {
  const FieldSpec F2;
  for (int k = 2; k <= 5; ++k) {
    const MPoly phi = phi_j((1u << k) + 3, F2);
    CHECK(phi.total_degree() == (1 << k));
    CHECK(is_absolutely_irreducible(phi).status == Status::AbsolutelyIrreducible);
  }
}

TEST_CASE("exponent classes") {
  auto only = [](std::uint64_t d, Family f, int k) {
    const ExponentClass c = classify_exponent(d);
    return c.classes.size() == 1 && c.classes[0] == std::pair{f, k};
  };
  CHECK(only(3, Family::Gold, 1));
  CHECK(only(5, Family::Gold, 2));
  CHECK(only(7, Family::Welch, 2));
  CHECK(only(9, Family::Gold, 3));
  CHECK(only(11, Family::Welch, 3));
  CHECK(only(13, Family::Kasami, 2));
  CHECK(only(57, Family::Kasami, 3));
  CHECK(classify_exponent(15).is_other());
  CHECK(classify_exponent(21).is_other());
  CHECK_THROWS_AS(classify_exponent(2), Error);
}

TEST_CASE("y = z sections") {
  const FieldSpec F2;
  const std::vector<int> want{2, 0, 6, 0, 2};
  for (std::uint64_t n = 5, i = 0; n <= 13; n += 2, ++i) {
    const Section s = plane_section(phi_j(n, F2));
    CHECK(s.multiplicity == want[i]);
  }
  CHECK_THROWS_AS(plane_section(P("y + z")), Error);
  const Section s = plane_section(P("x^3 + y^2*z"));
  CHECK(s.multiplicity == 1);
  CHECK(s.cofactor == P("x^2 + x*y + y^2"));
}

TEST_CASE("section formula against direct division") {
  const FieldSpec F2;
  const MPoly xy = x_(F2) + y_(F2);
  for (std::uint32_t n = 5; n <= 41; n += 2) {
    const MPoly direct = exact_div(x_(F2).pow(n - 1) + y_(F2).pow(n - 1), xy * xy);
    CHECK(section_formula_odd(n, F2) == direct);
    CHECK(substitute(phi_j(n, F2), {Var::X, Var::Y, Var::Y}) == direct);
  }
}

TEST_CASE("section predictions") {
  const FieldSpec F2;
  CHECK(predict_section(5, F2).part == 'a');
  CHECK(predict_section(7, F2).part == 'b');
  CHECK(predict_section(13, F2).part == 'c');
  CHECK(predict_section(25, F2).part == 'c');
  CHECK(predict_section(25, F2).multiplicity == 6);
  for (std::uint64_t n = 5; n <= 61; n += 2) {
    const SectionPrediction p = predict_section(n, F2);
    const Section s = plane_section(phi_j(n, F2));
    CHECK(p.multiplicity == s.multiplicity);
    CHECK(p.cofactor == s.cofactor);
  }
}

TEST_CASE("pairwise gcds") {
  const FieldSpec F2;
  CHECK(phi_pair_gcd(5, 13, F2) == P("0x1"));
  CHECK(phi_pair_gcd(13, 57, F2) == P("0x1"));
  CHECK(phi_pair_gcd(7, 35, F2) == P("0x1"));
  CHECK(phi_pair_gcd(5, 17, F2) == P("x^2 + x*y + x + y^2 + y + 0x1"));
  CHECK(phi_pair_gcd(9, 33, F2).total_degree() == 0);
}
