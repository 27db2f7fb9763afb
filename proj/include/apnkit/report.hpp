#pragma once

// JSON views of library values, shared by the CLI and the Python module.

#include <json.hpp>

#include "apnkit/apn.hpp"
#include "apnkit/factorizer.hpp"
#include "apnkit/surface.hpp"

namespace apnkit {

using json = nlohmann::ordered_json;

json to_json(const FieldSpec& F);
json to_json(const Factorization& f);
json to_json(const Verdict& v);
json to_json(const ApnReport& r, const FieldSpec& field);
json to_json(const Section& s);
json to_json(const ExponentClass& c);

}  // namespace apnkit
