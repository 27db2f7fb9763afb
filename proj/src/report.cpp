#include "apnkit/report.hpp"

namespace apnkit {

json to_json(const FieldSpec& F) { return {{"m", F.degree()}, {"modulus", F.modulus_hex()}}; }

json to_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& [g, e] : f.factors) factors.push_back({{"factor", g.to_string()}, {"multiplicity", e}});
  return {{"field", to_json(f.field)}, {"unit", hex128(f.unit)}, {"factors", factors}};
}

json to_json(const Verdict& v) {
  json j = {{"status", status_name(v.status)}, {"conjugate_count", v.conjugate_count}};
  if (v.witness) {
    j["witness_field"] = to_json(v.witness->field);
    json factors = json::array();
    for (const auto& [g, e] : v.witness->factors) {
      for (int i = 0; i < e; ++i) factors.push_back(g.to_string());
    }
    j["factors"] = factors;
  }
  j["certificate"] = v.certificate;
  return j;
}

json to_json(const ApnReport& r, const FieldSpec& field) {
  json j = {{"n", r.n}, {"is_apn", r.is_apn}, {"max_solutions", r.max_solutions}};
  if (r.witness) {
    j["witness"] = {{"a", field.to_hex(r.witness->first)}, {"b", field.to_hex(r.witness->second)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const Section& s) { return {{"multiplicity", s.multiplicity}, {"cofactor", s.cofactor.to_string()}}; }

json to_json(const ExponentClass& c) {
  json classes = json::array();
  for (const auto& [f, k] : c.classes) classes.push_back({{"family", family_name(f)}, {"k", k}});
  return {{"value", c.value}, {"classes", classes}};
}

}  // namespace apnkit
