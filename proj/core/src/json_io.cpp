#include "nsbox/json_io.hpp"

#include "nsbox/errors.hpp"

namespace nsbox {

namespace {

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw Error(ErrorCode::shape_mismatch, std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

Rational rational_field(const json& v, const char* what) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error(ErrorCode::shape_mismatch, std::string(what) + " must be a rational string");
}

std::vector<int> one_based_list(const json& j, const char* what) {
  if (!j.is_array())
    throw Error(ErrorCode::shape_mismatch, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw Error(ErrorCode::shape_mismatch, std::string(what) + " entries must be integers");
    out.push_back(v.get<int>() - 1);
  }
  return out;
}

json to_one_based(const std::vector<int>& v) {
  json a = json::array();
  for (int e : v) a.push_back(e + 1);
  return a;
}

}  // namespace

json behaviour_to_json(const Behaviour& p) {
  json j;
  j["mA"] = p.setting().m_a;
  j["mB"] = p.setting().m_b;
  j["dA"] = p.setting().d_a;
  j["dB"] = p.setting().d_b;
  json arr = json::array();
  for (const auto& v : p.table()) arr.push_back(to_string(v));
  j["p"] = std::move(arr);
  return j;
}

Behaviour behaviour_from_json(const json& j) {
  const Setting s(int_field(j, "mA"), int_field(j, "mB"), int_field(j, "dA"),
                  int_field(j, "dB"));
  if (!j.contains("p") || !j["p"].is_array())
    throw Error(ErrorCode::shape_mismatch, "missing table field 'p'");
  std::vector<Rational> table;
  table.reserve(j["p"].size());
  for (const auto& v : j["p"]) table.push_back(rational_field(v, "table entry"));
  return Behaviour::validated(s, std::move(table));
}

json functional_to_json(const BellFunctional& f) {
  json j;
  json arr = json::array();
  for (const auto& v : f.s) arr.push_back(to_string(v));
  j["s"] = std::move(arr);
  j["S"] = to_string(f.bound);
  return j;
}

BellFunctional functional_from_json(const json& j) {
  if (!j.contains("s") || !j["s"].is_array() || !j.contains("S"))
    throw Error(ErrorCode::shape_mismatch, "functional needs fields 's' and 'S'");
  BellFunctional f;
  for (const auto& v : j["s"]) f.s.push_back(rational_field(v, "functional entry"));
  f.bound = rational_field(j["S"], "bound");
  return f;
}

json wiring_to_json(const LocalWiring& w) {
  json j;
  j["gA"] = to_one_based(w.alice.input_map);
  json ha = json::array();
  for (const auto& h : w.alice.output_maps) ha.push_back(to_one_based(h));
  j["hA"] = std::move(ha);
  j["gB"] = to_one_based(w.bob.input_map);
  json hb = json::array();
  for (const auto& h : w.bob.output_maps) hb.push_back(to_one_based(h));
  j["hB"] = std::move(hb);
  return j;
}

LocalWiring wiring_from_json(const json& j) {
  for (const char* key : {"gA", "hA", "gB", "hB"})
    if (!j.contains(key))
      throw Error(ErrorCode::shape_mismatch, std::string("wiring needs field '") + key + "'");
  LocalWiring w;
  w.alice.input_map = one_based_list(j["gA"], "gA");
  w.bob.input_map = one_based_list(j["gB"], "gB");
  for (const auto& h : j["hA"]) w.alice.output_maps.push_back(one_based_list(h, "hA"));
  for (const auto& h : j["hB"]) w.bob.output_maps.push_back(one_based_list(h, "hB"));
  if (w.alice.output_maps.empty() || w.bob.output_maps.empty())
    throw Error(ErrorCode::shape_mismatch, "wiring output maps must be nonempty");
  w.setting = Setting(static_cast<int>(w.alice.input_map.size()),
                      static_cast<int>(w.bob.input_map.size()),
                      static_cast<int>(w.alice.output_maps[0].size()),
                      static_cast<int>(w.bob.output_maps[0].size()));
  check_wiring_shape(w);
  return w;
}

json deterministic_point_to_json(const DeterministicPoint& d) {
  json j;
  j["f"] = to_one_based(d.f);
  j["g"] = to_one_based(d.g);
  return j;
}

DeterministicPoint deterministic_point_from_json(const json& j) {
  if (!j.contains("f") || !j.contains("g"))
    throw Error(ErrorCode::shape_mismatch, "deterministic point needs fields 'f' and 'g'");
  return {one_based_list(j["f"], "f"), one_based_list(j["g"], "g")};
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::shape_mismatch, "malformed JSON document");
  return j;
}

}  // namespace nsbox
