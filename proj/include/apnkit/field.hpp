#pragma once

// Arithmetic in binary extension fields F_{2^m}, 1 <= m <= 128.
//
// Elements are bit-packed coordinates in the polynomial basis: bit i is the
// coefficient of X^i. A FieldSpec is a cheap handle to shared, immutable
// field data (modulus plus optional log/antilog tables for m <= 16); all
// element operations are const member functions on raw bit patterns.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apnkit/error.hpp"

namespace apnkit {

using Elem = unsigned __int128;

constexpr int kMaxFieldDegree = 128;

std::string hex128(Elem v);
/// Parses "0x..." (or bare hex digits). Fails with SyntaxError on bad input or
/// more than 128 significant bits.
Elem parse_hex128(std::string_view text);

namespace detail {
struct FieldData;
}

class FieldSpec {
 public:
  /// F_2.
  FieldSpec();

  int degree() const noexcept;
  /// Modulus without its leading X^m term.
  Elem modulus_low() const noexcept;
  /// Full modulus as lowercase hex, leading bit included ("0x13" for F_16).
  std::string modulus_hex() const;
  Elem mask() const noexcept;
  bool contains(Elem bits) const noexcept { return (bits & ~mask()) == 0; }
  /// Number of elements, only meaningful for m < 64.
  std::uint64_t size() const noexcept;

  bool operator==(const FieldSpec& o) const noexcept;
  bool operator!=(const FieldSpec& o) const noexcept { return !(*this == o); }

  static constexpr Elem add(Elem a, Elem b) noexcept { return a ^ b; }
  Elem mul(Elem a, Elem b) const noexcept;
  Elem sqr(Elem a) const noexcept;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, Elem e) const noexcept;
  Elem pow(Elem a, std::uint64_t e) const noexcept { return pow(a, Elem{e}); }
  /// a^(2^k).
  Elem frobenius(Elem a, int k) const noexcept;
  Elem sqrt(Elem a) const noexcept;
  /// Absolute trace to F_2.
  int trace(Elem a) const noexcept;

  std::string to_hex(Elem a) const { return hex128(a); }
  /// Parses a hex coefficient; CoefficientOutOfField if it needs more than m bits.
  Elem parse_element(std::string_view text) const;

  const detail::FieldData* data() const noexcept { return data_.get(); }

 private:
  friend FieldSpec make_field_spec(std::shared_ptr<const detail::FieldData>);
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// Field of degree m. Without a modulus the numerically smallest irreducible
/// degree-m polynomial is used, so repeated runs agree bit for bit.
FieldSpec build_field(int m);
/// modulus_full includes the X^m bit (m <= 127).
FieldSpec build_field(int m, Elem modulus_full);
FieldSpec build_field_hex(int m, std::string_view modulus_hex);

/// Degree-e extension of base built with the default modulus.
inline FieldSpec extension_field(const FieldSpec& base, int e) { return build_field(base.degree() * e); }

/// Value type pairing bits with their field. Arithmetic between elements of
/// different fields raises FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldSpec spec, Elem bits);
  static FieldElement zero(FieldSpec spec) { return {std::move(spec), 0}; }
  static FieldElement one(FieldSpec spec) { return {std::move(spec), 1}; }

  Elem bits() const noexcept { return bits_; }
  const FieldSpec& spec() const noexcept { return spec_; }
  bool is_zero() const noexcept { return bits_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const { return *this + o; }
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement square() const;
  FieldElement sqrt() const;

  bool operator==(const FieldElement& o) const noexcept {
    return bits_ == o.bits_ && spec_ == o.spec_;
  }
  std::string to_hex() const { return hex128(bits_); }

 private:
  void check_same(const FieldElement& o) const;
  FieldSpec spec_;
  Elem bits_;
};

/// Field homomorphism F_{2^m} -> F_{2^M}, m | M, determined by the image of
/// the source generator X.
class Embedding {
 public:
  const FieldSpec& source() const noexcept { return source_; }
  const FieldSpec& target() const noexcept { return target_; }
  Elem generator_image() const noexcept { return images_.size() > 1 ? images_[1] : 1; }

  Elem map(Elem a) const noexcept;
  /// Inverse image when `b` lies in the embedded subfield.
  std::optional<Elem> preimage(Elem b) const;

 private:
  friend Embedding embed_field(const FieldSpec&, const FieldSpec&);
  FieldSpec source_;
  FieldSpec target_;
  std::vector<Elem> images_;  // images_[i] = image of X^i
  // Echelon form of images_ for preimage solving: (pivot row, combination).
  std::vector<std::pair<Elem, Elem>> echelon_;
  std::vector<int> pivots_;
};

/// Chooses the root of the source modulus with the smallest bit pattern.
/// NoSubfield when source.degree() does not divide target.degree().
Embedding embed_field(const FieldSpec& small, const FieldSpec& big);

}  // namespace apnkit
