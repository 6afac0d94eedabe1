#include "freeconv/measure_io.hpp"

#include <json.hpp>

namespace fc {

namespace {

using nlohmann::json;

double number_at(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    raise(errc::parse_error, where + ": missing numeric field \"" + key + "\"");
  return j.at(key).get<double>();
}

std::vector<RealAtom> parse_atoms(const json& j, const std::string& where) {
  if (!j.is_array())
    raise(errc::parse_error, where + ": \"atoms\" must be an array");
  std::vector<RealAtom> atoms;
  atoms.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ctx = where + ", atom " + std::to_string(i);
    if (!j[i].is_object()) raise(errc::parse_error, ctx + ": expected an object");
    atoms.push_back({number_at(j[i], "x", ctx), number_at(j[i], "w", ctx)});
  }
  return atoms;
}

std::vector<double> parse_reals(const json& j, const char* key,
                                const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array())
    raise(errc::parse_error, where + ": missing array field \"" + key + "\"");
  std::vector<double> out;
  out.reserve(j.at(key).size());
  for (const auto& v : j.at(key)) {
    if (!v.is_number())
      raise(errc::parse_error, where + ": \"" + key + "\" holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

MeasureSpec parse_measure_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(errc::parse_error, e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    raise(errc::parse_error, "measure file must be an object with a \"type\" field");

  const std::string type = j.at("type").get<std::string>();
  MeasureSpec spec;
  if (type == "atomic" || type == "nu") {
    spec.kind = (type == "atomic") ? MeasureSpec::Kind::atomic : MeasureSpec::Kind::nu;
    if (!j.contains("atoms"))
      raise(errc::parse_error, "measure of type \"" + type + "\" needs \"atoms\"");
    spec.atoms = parse_atoms(j.at("atoms"), "type " + type);
  } else if (type == "continuous") {
    spec.kind = MeasureSpec::Kind::continuous;
    if (!j.contains("density") || !j.at("density").is_object())
      raise(errc::parse_error, "continuous measure needs a \"density\" object");
    const json& d = j.at("density");
    spec.density.xs = parse_reals(d, "xs", "density");
    spec.density.pdf = parse_reals(d, "pdf", "density");
    if (spec.density.xs.size() != spec.density.pdf.size())
      raise(errc::parse_error, "density: \"xs\" and \"pdf\" lengths differ");
  } else {
    raise(errc::parse_error, "unknown measure type \"" + type + "\"");
  }
  return spec;
}

std::string serialize_measure(const ValidatedMeasure& vm) {
  json atoms = json::array();
  for (const RealAtom& a : vm.atoms.atoms())
    atoms.push_back({{"x", a.position}, {"w", a.mass}});
  const json j = {
      {"type", vm.route == ValidatedMeasure::Route::nu ? "nu" : "atomic"},
      {"atoms", std::move(atoms)},
  };
  return j.dump();
}

}  // namespace fc
