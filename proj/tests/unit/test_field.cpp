#include <random>

#include "apnkit/field.hpp"
#include "doctest.h"

using namespace apnkit;

namespace {

// Schoolbook multiply mod an arbitrary modulus, independent of the library.
std::uint64_t ref_mul(std::uint64_t a, std::uint64_t b, std::uint64_t mod, int m) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> m & 1) a ^= mod;
  }
  return r;
}

// Reducible iff some polynomial of degree <= m/2 divides it.
bool ref_irreducible(std::uint64_t f, int m) {
  auto deg = [](std::uint64_t v) { return 63 - __builtin_clzll(v); };
  for (std::uint64_t g = 2; deg(g) <= m / 2; ++g) {
    std::uint64_t r = f;
    while (r && deg(r) >= deg(g)) r ^= g << (deg(r) - deg(g));
    if (r == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("default moduli are the smallest irreducibles") {
  CHECK(build_field(3).modulus_hex() == "0xb");
  CHECK(build_field(1).degree() == 1);
  CHECK(build_field(1).size() == 2);
  for (int m = 2; m <= 12; ++m) {
    std::uint64_t f = (1ull << m) | 1;
    while (!ref_irreducible(f, m)) f += 2;
    CHECK(build_field(m).modulus_hex() == hex128(f));
  }
  CHECK(build_field(16).modulus_hex() == "0x1002b");
  CHECK(build_field(128).degree() == 128);
}

TEST_CASE("reducible or mismatched moduli are rejected") {
  try {
    build_field(4, 0b10111);
    FAIL("expected NonIrreducibleModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonIrreducibleModulus);
  }
  try {
    build_field(4, 0b1011);
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeMismatch);
  }
  CHECK_THROWS_AS(build_field(0), Error);
  CHECK_THROWS_AS(build_field(129), Error);
  CHECK(build_field_hex(4, "0x19").modulus_hex() == "0x19");
}

TEST_CASE("small examples") {
  const FieldSpec F8 = build_field(3);
  CHECK(F8.inv(0b10) == 0b101);
  const FieldSpec F4 = build_field(2);
  CHECK(F4.mul(2, F4.sqr(2)) == 1);
  CHECK_THROWS_AS(F8.inv(0), Error);
  CHECK(hex128(0x9) == "0x9");
  CHECK(hex128(0) == "0x0");
  CHECK(build_field(4).to_hex(0b1001) == "0x9");
  CHECK_THROWS_AS(F8.parse_element("0x8"), Error);
  FieldElement a(F8, 3), b(F8, 5);
  CHECK((a + a).is_zero());
  CHECK_THROWS_AS(a + FieldElement(F4, 1), Error);
}

TEST_CASE("multiplication agrees with schoolbook reference") {
  for (int m : {1, 2, 3, 5, 8, 13, 16, 17, 31, 40, 63}) {
    const FieldSpec F = build_field(m);
    const std::uint64_t mod = static_cast<std::uint64_t>((Elem{1} << m) | F.modulus_low());
    std::mt19937_64 rng(m);
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t a = rng() & static_cast<std::uint64_t>(F.mask());
      const std::uint64_t b = rng() & static_cast<std::uint64_t>(F.mask());
      CHECK(F.mul(a, b) == ref_mul(a, b, mod, m));
    }
  }
}

TEST_CASE("field axioms, exhaustive for m <= 8") {
  for (int m = 1; m <= 8; ++m) {
    const FieldSpec F = build_field(m);
    const Elem q = F.size();
    for (Elem x = 1; x < q; ++x) {
      CHECK(F.pow(x, q - 1) == 1);
      CHECK(F.mul(x, F.inv(x)) == 1);
    }
    for (Elem a = 0; a < q; a += 7) {
      for (Elem b = 0; b < q; ++b) CHECK(F.sqr(a ^ b) == (F.sqr(a) ^ F.sqr(b)));
    }
  }
}

TEST_CASE("sqrt inverts squaring, exhaustive for m <= 10") {
  for (int m = 1; m <= 10; ++m) {
    const FieldSpec F = build_field(m);
    for (Elem x = 0; x < F.size(); ++x) {
      CHECK(F.sqr(F.sqrt(x)) == x);
      CHECK(F.sqrt(x) == F.frobenius(x, m - 1));
    }
  }
}

TEST_CASE("large fields: inverse, Frobenius order, trace additivity") {
  for (int m : {64, 65, 96, 127, 128}) {
    const FieldSpec F = build_field(m);
    std::mt19937_64 rng(m);
    for (int i = 0; i < 20; ++i) {
      Elem a = ((Elem{rng()} << 64) | rng()) & F.mask();
      Elem b = ((Elem{rng()} << 64) | rng()) & F.mask();
      if (a == 0) a = 1;
      CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.frobenius(a, m) == a);
      CHECK(F.trace(a ^ b) == (F.trace(a) ^ F.trace(b)));
      CHECK(F.mul(a, b ^ 1) == (F.mul(a, b) ^ a));
    }
  }
}

TEST_CASE("embeddings are ring homomorphisms") {
  CHECK(embed_field(build_field(1), build_field(3)).map(1) == 1);
  CHECK_THROWS_AS(embed_field(build_field(2), build_field(3)), Error);
  for (auto [s, t] : {std::pair{1, 4}, {2, 4}, {2, 8}, {3, 6}, {4, 8}, {4, 12}}) {
    const FieldSpec S = build_field(s), T = build_field(t);
    const Embedding e = embed_field(S, T);
    const Elem g = e.generator_image();
    // generator image is a root of the source modulus
    Elem val = T.pow(g, std::uint64_t(s));
    for (int i = 0; i < s; ++i) {
      if ((S.modulus_low() >> i) & 1) val ^= T.pow(g, std::uint64_t(i));
    }
    CHECK(val == 0);
    for (Elem a = 0; a < S.size(); ++a) {
      CHECK(e.preimage(e.map(a)) == a);
      for (Elem b = 0; b < S.size(); ++b) {
        CHECK(e.map(a ^ b) == (e.map(a) ^ e.map(b)));
        CHECK(e.map(S.mul(a, b)) == T.mul(e.map(a), e.map(b)));
      }
    }
  }
  // an element outside F_4 inside F_16 has no preimage
  const Embedding e = embed_field(build_field(2), build_field(4));
  int outside = 0;
  for (Elem b = 0; b < 16; ++b) outside += !e.preimage(b).has_value();
  CHECK(outside == 12);
}
