#include "deltaideal/registry.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "registry_data.hpp"

namespace deltaideal {

double lambda1_closed_form(const SpaceDescriptor& s) {
  if (!s.lambda1) throw UnknownSpectrum(s.name);
  return *s.lambda1;
}

bool verify_pullback(const SpaceDescriptor& cover, const SpaceDescriptor& base,
                     double tol) {
  if (!cover.covers || cover.covers->base != base.name) {
    throw MismatchedPair("no covering relation registered from '" + cover.name +
                         "' onto '" + base.name + "'");
  }
  return lambda1_closed_form(base) >= lambda1_closed_form(cover) - tol;
}

namespace {

SpaceDescriptor descriptor_from_json(const nlohmann::json& j) {
  SpaceDescriptor s;
  s.name = j.at("name").get<std::string>();
  s.dimension = j.at("dimension").get<int>();
  if (s.dimension < 2) {
    throw ParseError("space '" + s.name + "' has dimension < 2");
  }
  const auto& model = j.at("curvature");
  if (model.at("model").get<std::string>() != "constant") {
    throw ParseError("space '" + s.name + "' uses an unsupported curvature model");
  }
  s.model_c0 = model.at("c0").get<double>();
  if (j.contains("lambda1") && !j["lambda1"].is_string()) {
    const double l = j["lambda1"].get<double>();
    if (l <= 0.0) throw ParseError("space '" + s.name + "' has non-positive lambda1");
    s.lambda1 = l;
  }
  s.irreducible = j.value("irreducible", false);
  if (j.contains("covers")) {
    CoveringRelation rel;
    rel.base = j["covers"].at("base").get<std::string>();
    rel.sheets = j["covers"].value("sheets", 2);
    s.covers = rel;
  }
  return s;
}

}  // namespace

SpaceRegistry SpaceRegistry::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("registry JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("registry JSON must be a list of spaces");
  SpaceRegistry reg;
  for (const auto& entry : doc) {
    reg.spaces_.push_back(descriptor_from_json(entry));
  }
  return reg;
}

SpaceRegistry SpaceRegistry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open registry file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

const SpaceRegistry& SpaceRegistry::builtin() {
  static const SpaceRegistry reg = from_json_text(detail::kBuiltinRegistryJson);
  return reg;
}

const SpaceDescriptor* SpaceRegistry::find(const std::string& name) const {
  for (const auto& s : spaces_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const SpaceDescriptor& SpaceRegistry::at(const std::string& name) const {
  if (const SpaceDescriptor* s = find(name)) return *s;
  throw Error("space '" + name + "' is not registered");
}

}  // namespace deltaideal
