#include <random>

#include "apnkit/upoly.hpp"
#include "doctest.h"

using namespace apnkit;

namespace {

Coeffs expand(const FieldSpec& F, const upoly::Factored& f) {
  Coeffs r{f.unit};
  for (const auto& [g, e] : f.factors) {
    for (int i = 0; i < e; ++i) r = upoly::mul(F, r, g);
  }
  return r;
}

}  // namespace

TEST_CASE("worked factorizations") {
  const FieldSpec F2;
  auto f = upoly::factor(F2, {0, 1, 0, 0, 1});
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == Coeffs{0, 1});
  CHECK(f.factors[1].first == Coeffs{1, 1});
  CHECK(f.factors[2].first == Coeffs{1, 1, 1});
  auto sq = upoly::factor(F2, {0, 0, 1});
  REQUIRE(sq.factors.size() == 1);
  CHECK(sq.factors[0].second == 2);
  const FieldSpec F4 = build_field(2);
  auto w = upoly::factor(F4, {1, 1, 1});
  REQUIRE(w.factors.size() == 2);
  // roots of X^2+X+1 in F_4 are w and w^2 = w+1: factors X+2 and X+3
  CHECK(w.factors[0].first == Coeffs{2, 1});
  CHECK(w.factors[1].first == Coeffs{3, 1});
  CHECK(upoly::roots(F4, {1, 1, 1}) == std::vector<Elem>{2, 3});
  CHECK_THROWS_AS(upoly::factor(F2, {}), Error);
}

TEST_CASE("factorization round trip on random polynomials") {
  for (int m : {1, 2, 3, 4, 8}) {
    const FieldSpec F = build_field(m);
    for (std::uint64_t seed : {0, 1, 2}) {
      std::mt19937_64 rng(seed * 1000 + m);
      for (int t = 0; t < 1000 / 3 + 1; ++t) {
        const int d = static_cast<int>(rng() % 21);
        Coeffs p(d + 1);
        for (auto& c : p) c = rng() & F.mask();
        if (p.back() == 0) p.back() = 1;
        upoly::trim(p);
        auto fac = upoly::factor(F, p, seed);
        CHECK(expand(F, fac) == p);
        for (const auto& [g, e] : fac.factors) CHECK(upoly::is_irreducible(F, g));
      }
    }
  }
}

TEST_CASE("irreducibility agrees with root counting for cubics") {
  const FieldSpec F4 = build_field(2);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b)
      for (Elem c = 0; c < 4; ++c) {
        const Coeffs p{c, b, a, 1};
        bool has_root = false;
        for (Elem x = 0; x < 4; ++x) has_root |= upoly::eval(F4, p, x) == 0;
        CHECK(upoly::is_irreducible(F4, p) == !has_root);
      }
}

TEST_CASE("gcd and modular inverse") {
  const FieldSpec F = build_field(5);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Coeffs a(6), b(5), g(3);
    for (auto& c : a) c = rng() & F.mask();
    for (auto& c : b) c = rng() & F.mask();
    for (auto& c : g) c = rng() & F.mask();
    g.back() = 1;
    a.back() |= 1;
    b.back() |= 1;
    const Coeffs ag = upoly::mul(F, a, g), bg = upoly::mul(F, b, g);
    const Coeffs d = upoly::gcd(F, ag, bg);
    CHECK(upoly::rem(F, ag, d).empty());
    CHECK(upoly::rem(F, bg, d).empty());
    CHECK(upoly::rem(F, d, g).empty());
  }
}
