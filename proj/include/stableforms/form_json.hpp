#pragma once

#include <string>

#include <json.hpp>

#include "stableforms/exterior.hpp"

namespace sf {

// {"dim": n, "degree": p, "terms": [{"indices": [i1<...<ip], "value": x}]}
// with 1-based indices. Omitted terms are zero.
Form form_from_json(const nlohmann::json& j);
Form parse_form(const std::string& text);  // InputError carries the byte position
nlohmann::json form_to_json(const Form& f, double tol = 0.0);

}  // namespace sf
