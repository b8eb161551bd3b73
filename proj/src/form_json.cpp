#include "stableforms/form_json.hpp"

#include <cmath>
#include <set>

namespace sf {

using nlohmann::json;

Form form_from_json(const json& j) {
  if (!j.is_object()) throw InputError("form literal must be an object");
  for (const char* key : {"dim", "degree", "terms"})
    if (!j.contains(key)) throw InputError(std::string("form literal is missing \"") + key + "\"");
  if (!j["dim"].is_number_integer() || !j["degree"].is_number_integer())
    throw InputError("\"dim\" and \"degree\" must be integers");
  const int n = j["dim"].get<int>();
  const int p = j["degree"].get<int>();
  if (n < 2 || n > kMaxDim) throw InputError("\"dim\" must be in 2..8");
  if (p < 0 || p > n) throw InputError("\"degree\" must be in 0..dim");
  if (!j["terms"].is_array()) throw InputError("\"terms\" must be an array");

  Form f(n, p);
  std::set<std::uint32_t> seen;
  std::size_t k = 0;
  for (const auto& t : j["terms"]) {
    const std::string where = "terms[" + std::to_string(k++) + "]";
    if (!t.is_object() || !t.contains("indices") || !t.contains("value"))
      throw InputError(where + ": need \"indices\" and \"value\"");
    if (!t["indices"].is_array() || !t["value"].is_number())
      throw InputError(where + ": bad \"indices\" or \"value\"");
    std::vector<int> idx;
    for (const auto& i : t["indices"]) {
      if (!i.is_number_integer()) throw InputError(where + ": indices must be integers");
      const int v = i.get<int>();
      if (v < 1 || v > n) throw InputError(where + ": index " + std::to_string(v) + " out of range");
      if (!idx.empty() && v - 1 <= idx.back())
        throw InputError(where + ": indices must be strictly increasing");
      idx.push_back(v - 1);
    }
    if (static_cast<int>(idx.size()) != p) throw InputError(where + ": wrong number of indices");
    const MultiIndex I = MultiIndex::from_indices(idx);
    if (!seen.insert(I.bits).second) throw InputError(where + ": duplicate index set");
    const double v = t["value"].get<double>();
    if (!std::isfinite(v)) throw InputError(where + ": value is not finite");
    f.at(I) = v;
  }
  return f;
}

Form parse_form(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed form JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return form_from_json(j);
}

json form_to_json(const Form& f, double tol) {
  json terms = json::array();
  const auto& B = basis(f.dim(), f.degree());
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (std::abs(f[k]) <= tol) continue;
    json idx = json::array();
    for (int i : B[k].indices()) idx.push_back(i + 1);
    terms.push_back({{"indices", idx}, {"value", f[k]}});
  }
  return {{"dim", f.dim()}, {"degree", f.degree()}, {"terms", terms}};
}

}  // namespace sf
