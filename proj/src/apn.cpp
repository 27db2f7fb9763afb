#include "apnkit/apn.hpp"

#include <algorithm>
#include <string>

namespace apnkit {

namespace {

void check_n(int n, int max_n) {
  if (n < 1) throw Error(Errc::ParameterOutOfRange, "extension degree must be positive");
  if (n > max_n || n > 30) {
    throw Error(Errc::ExtensionTooLarge, "n = " + std::to_string(n) + " exceeds the limit " + std::to_string(max_n));
  }
}

}  // namespace

std::vector<std::uint64_t> value_table(const SBoxPoly& f, int n) {
  const FieldSpec L = build_field(n);
  if (n % f.spec.degree() != 0) {
    throw Error(Errc::NoCoefficientEmbedding, "coefficients in F_2^" + std::to_string(f.spec.degree()) +
                                                  " do not embed in F_2^" + std::to_string(n));
  }
  const Embedding emb = embed_field(f.spec, L);
  std::vector<std::pair<std::uint64_t, Elem>> terms;
  for (const auto& [e, c] : f.terms) terms.emplace_back(e, emb.map(c));
  const std::uint64_t q = std::uint64_t{1} << n;
  std::vector<std::uint64_t> table(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    Elem v = 0;
    for (const auto& [e, c] : terms) v ^= L.mul(c, L.pow(Elem{x}, e));
    table[x] = static_cast<std::uint64_t>(v);
  }
  return table;
}

std::uint64_t differential_count(const SBoxPoly& f, int n, Elem a, Elem b) {
  check_n(n, 30);
  if (a == 0) throw Error(Errc::ZeroDirection, "direction a must be nonzero");
  const std::uint64_t q = std::uint64_t{1} << n;
  if (a >= q || b >= q) throw Error(Errc::CoefficientOutOfField, "a or b outside F_2^" + std::to_string(n));
  const auto T = value_table(f, n);
  const auto A = static_cast<std::uint64_t>(a), B = static_cast<std::uint64_t>(b);
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < q; ++x) count += (T[x ^ A] ^ T[x]) == B;
  return count;
}

ApnReport is_apn(const SBoxPoly& f, int n, bool verdict_only, int max_n) {
  check_n(n, max_n);
  const auto T = value_table(f, n);
  const std::uint64_t q = std::uint64_t{1} << n;
  ApnReport rep;
  rep.n = n;
  std::vector<std::uint32_t> counts(q);
  for (std::uint64_t a = 1; a < q; ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t x = 0; x < q; ++x) ++counts[T[x ^ a] ^ T[x]];
    for (std::uint64_t b = 0; b < q; ++b) {
      if (counts[b] > rep.max_solutions) {
        rep.max_solutions = counts[b];
        rep.witness = std::make_pair(Elem{a}, Elem{b});
      }
    }
    if (verdict_only && rep.max_solutions > 2) break;
  }
  rep.is_apn = rep.max_solutions <= 2;
  if (verdict_only) rep.witness.reset();
  return rep;
}

bool rodier_check(const SBoxPoly& f, int n, int max_n) {
  check_n(n, max_n);
  const auto T = value_table(f, n);
  const std::uint64_t q = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < q; ++x) {
    for (std::uint64_t y = x + 1; y < q; ++y) {
      const std::uint64_t sxy = T[x] ^ T[y];
      const std::uint64_t xy = x ^ y;
      for (std::uint64_t z = 0; z < q; ++z) {
        if (z == x || z == y) continue;
        if ((sxy ^ T[z] ^ T[xy ^ z]) == 0) return false;
      }
    }
  }
  return true;
}

ExtensionScan scan_extensions(const SBoxPoly& f, int n_min, int n_max, bool verdict_only, int max_n) {
  if (n_min < 1 || n_min > n_max) throw Error(Errc::ParameterOutOfRange, "empty or invalid extension range");
  check_n(n_max, max_n);
  ExtensionScan scan{f, {}};
  for (int n = n_min; n <= n_max; ++n) scan.results.push_back(is_apn(f, n, verdict_only, max_n));
  return scan;
}

std::uint64_t exponent_catalog(Family kind, int k) {
  const int min_k = kind == Family::Gold ? 1 : 2;
  const int max_k = kind == Family::Kasami ? 31 : 62;
  if (k < min_k || k > max_k) {
    throw Error(Errc::ParameterOutOfRange,
                std::string(family_name(kind)) + " exponent needs " + std::to_string(min_k) + " <= k <= " +
                    std::to_string(max_k));
  }
  const std::uint64_t p = std::uint64_t{1} << k;
  switch (kind) {
    case Family::Gold: return p + 1;
    case Family::Kasami: return p * p - p + 1;
    case Family::Welch: return p + 3;
  }
  return 0;
}

EkpParameters ekp_parameters() {
  EkpParameters P;
  P.field = build_field(10);
  const FieldSpec& F = P.field;
  for (Elem w = 2; w < F.size(); ++w) {
    if (F.pow(w, std::uint64_t{3}) == 1) {
      P.w = w;
      break;
    }
  }
  std::vector<Elem> sub;  // F_32^* inside F_1024
  for (Elem g = 1; g < F.size(); ++g) {
    if (F.frobenius(g, 5) == g) sub.push_back(g);
  }
  const Elem w2 = F.sqr(P.w);
  for (Elem g : sub) {
    P.admissible_u.push_back(F.mul(P.w, g));
    P.admissible_u.push_back(F.mul(w2, g));
  }
  std::sort(P.admissible_u.begin(), P.admissible_u.end());
  P.admissible_u.erase(std::unique(P.admissible_u.begin(), P.admissible_u.end()), P.admissible_u.end());
  return P;
}

SBoxPoly ekp_function(Elem u) {
  SBoxPoly f{build_field(10), {}};
  f.add_term(3, 1);
  f.add_term(36, u);
  return f;
}

}  // namespace apnkit
