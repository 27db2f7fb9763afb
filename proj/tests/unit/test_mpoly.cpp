#include <random>

#include "apnkit/mpoly.hpp"
#include "doctest.h"

using namespace apnkit;

namespace {

MPoly P(const char* s, const FieldSpec& F = FieldSpec()) { return MPoly::parse(s, F); }

MPoly random_poly(std::mt19937_64& rng, const FieldSpec& F, int max_deg, int terms) {
  MPoly p(F);
  for (int i = 0; i < terms; ++i) {
    const auto ex = static_cast<std::uint32_t>(rng() % (max_deg + 1));
    const auto ey = static_cast<std::uint32_t>(rng() % (max_deg + 1 - ex));
    const auto ez = static_cast<std::uint32_t>(rng() % (max_deg + 1 - ex - ey));
    p.add_term({ex, ey, ez}, rng() & F.mask());
  }
  return p;
}

}  // namespace

TEST_CASE("text form round trip") {
  const FieldSpec F4 = build_field(2);
  const MPoly p = P("x^2 + x*y + 0x3*z", F4);
  CHECK(p.to_string() == "x^2 + x*y + 0x3*z");
  CHECK(P("0").to_string() == "0");
  CHECK(P("1 + z + y*x").to_string() == "x*y + z + 1");
  try {
    P("x^^3");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    CHECK(std::string(e.what()).find("column 3") != std::string::npos);
  }
  CHECK_THROWS_AS(P("0x2*x"), Error);
  CHECK_THROWS_AS(P("x^1048576"), Error);
}

TEST_CASE("arithmetic examples") {
  CHECK((P("x+y") * P("x+y")) == P("x^2+y^2"));
  CHECK((P("x+y") * P("x+z") * P("y+z")) == P("x^2*y + x^2*z + x*y^2 + y^2*z + x*z^2 + y*z^2"));
  const MPoly q = P("x*y^3 + z + 1");
  CHECK((q + q).is_zero());
  CHECK(P("x+y+z").pow(4) == P("x^4+y^4+z^4"));
}

TEST_CASE("exact division") {
  const MPoly den = P("x+y") * P("x+z") * P("y+z");
  CHECK(exact_div(P("x^3+y^3+z^3") + P("x+y+z").pow(3), den) == P("1"));
  CHECK(exact_div(P("x^2+y^2"), P("x+y")) == P("x+y"));
  try {
    exact_div(P("x^2+x*y+1"), P("x+y"));
    FAIL("expected InexactDivision");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InexactDivision);
  }
  for (int m : {1, 2, 4}) {
    const FieldSpec F = build_field(m);
    std::mt19937_64 rng(m);
    for (int t = 0; t < 500; ++t) {
      const MPoly a = random_poly(rng, F, 6, 5);
      MPoly b = random_poly(rng, F, 6, 4);
      if (b.is_zero()) b = MPoly::constant(F, 1);
      CHECK(exact_div(a * b, b) == a);
    }
  }
}

TEST_CASE("substitution") {
  const MPoly phi5 = P("x^2+y^2+z^2+x*y+x*z+y*z");
  CHECK(substitute(phi5, {Var::X, Var::Y, Var::Y}) == P("x^2+y^2"));
  CHECK(substitute(phi5, identity_assignment()) == phi5);
  CHECK(substitute(P("x+y+z"), {Var::X, Var::Y, Elem{1}}) == P("x+y+1"));
  const FieldSpec F = build_field(3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const MPoly a = random_poly(rng, F, 5, 4), b = random_poly(rng, F, 5, 4);
    const Assignment asg{Var::Y, Elem(rng() & 7), Var::X};
    CHECK(substitute(a * b, asg) == substitute(a, asg) * substitute(b, asg));
  }
  std::array<MPoly, 3> im{P("x", F), P("y", F), P("x + 0x3*y + 1", F)};
  const MPoly c = compose(P("z^3 + x*z", F), im);
  CHECK(c == P("x + 0x3*y + 1", F).pow(3) + P("x", F) * P("x + 0x3*y + 1", F));
}

TEST_CASE("homogeneous parts") {
  auto parts = homogeneous_parts(P("x^2 + x*y + z"));
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(2) == P("x^2 + x*y"));
  CHECK(parts.at(1) == P("z"));
  CHECK(homogeneous_parts(P("0")).empty());
  std::mt19937_64 rng(11);
  const FieldSpec F = build_field(4);
  for (int t = 0; t < 500; ++t) {
    const MPoly p = random_poly(rng, F, 8, 6);
    MPoly sum(F);
    for (const auto& [d, part] : homogeneous_parts(p)) {
      CHECK(part.is_homogeneous());
      CHECK(part.total_degree() == d);
      sum += part;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("bivariate gcd") {
  const MPoly s = P("x^3 + y + 1"), t = P("x*y + x + y^2");
  CHECK(gcd_bivariate(P("x+y") * s, P("x+y") * t) == P("x+y"));
  CHECK(gcd_bivariate(s, MPoly(FieldSpec())) == s);
  CHECK_THROWS_AS(gcd_bivariate(P("x+y+z"), P("x")), Error);
  const FieldSpec F = build_field(2);
  std::mt19937_64 rng(5);
  for (int t2 = 0; t2 < 100; ++t2) {
    MPoly a = substitute(random_poly(rng, F, 5, 4), {Var::X, Var::Y, Elem{1}});
    MPoly b = substitute(random_poly(rng, F, 5, 4), {Var::X, Var::Y, Elem{1}});
    MPoly c = substitute(random_poly(rng, F, 3, 3), {Var::X, Var::Y, Elem{1}});
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    const MPoly g = gcd_bivariate(a * c, b * c);
    MPoly q(F);
    CHECK(try_exact_div(a * c, g, q));
    CHECK(try_exact_div(b * c, g, q));
    CHECK(try_exact_div(g, c.monic(), q));
    CHECK(g.leading_coeff() == 1);
  }
}
