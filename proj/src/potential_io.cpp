#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "barrierlab/errors.hpp"
#include "barrierlab/potential.hpp"

namespace barrierlab {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw InvalidParameter("potential json: unknown field \"" + it.key() +
                             "\" in " + where);
}

double number_field(const json& obj, const std::string& key,
                    const std::string& where) {
  if (!obj.contains(key))
    throw InvalidParameter("potential json: missing \"" + key + "\" in " + where);
  if (!obj[key].is_number())
    throw InvalidParameter("potential json: \"" + key + "\" must be a number in " +
                           where);
  return obj[key].get<double>();
}

}  // namespace

CompositePotential parse_potential_json(const std::string& text, ConstantsSet cs) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter(std::string("potential json: parse error: ") + e.what());
  }
  if (!doc.is_object())
    throw InvalidParameter("potential json: top level must be an object");
  reject_unknown(doc, {"unit_system", "segments"}, "document");
  if (!doc.contains("unit_system") || !doc["unit_system"].is_string())
    throw InvalidParameter("potential json: \"unit_system\" string is required");
  if (!doc.contains("segments") || !doc["segments"].is_array())
    throw InvalidParameter("potential json: \"segments\" array is required");

  const UnitSystem units =
      unit_system_by_name(doc["unit_system"].get<std::string>(), cs);

  std::vector<PotentialSegment> barriers;
  bool has_landau = false;
  for (const auto& s : doc["segments"]) {
    if (!s.is_object())
      throw InvalidParameter("potential json: segments must be objects");
    if (!s.contains("shape") || !s["shape"].is_string())
      throw InvalidParameter("potential json: segment needs a \"shape\" string");
    const std::string shape = s["shape"].get<std::string>();
    const std::string where = "segment (shape " + shape + ")";
    if (shape == "parabolic") {
      reject_unknown(s, {"shape", "alpha", "u0", "gamma"}, where);
      barriers.push_back(parabolic_segment({number_field(s, "alpha", where),
                                            number_field(s, "u0", where),
                                            number_field(s, "gamma", where)}));
    } else if (shape == "sech") {
      reject_unknown(s, {"shape", "alpha_inv", "u0", "beta_shift", "gamma"}, where);
      barriers.push_back(sech_segment({number_field(s, "alpha_inv", where),
                                       number_field(s, "u0", where),
                                       number_field(s, "beta_shift", where),
                                       number_field(s, "gamma", where)},
                                      units));
    } else if (shape == "landau") {
      reject_unknown(s, {"shape", "alpha_inv", "u0", "gamma"}, where);
      has_landau = true;
      barriers.push_back({{-kInf, kInf},
                          LandauShape{{number_field(s, "alpha_inv", where),
                                       number_field(s, "u0", where), 0.0,
                                       number_field(s, "gamma", where)}}});
    } else {
      throw InvalidParameter("potential json: unknown shape \"" + shape + "\"");
    }
  }
  if (has_landau) {
    if (barriers.size() != 1)
      throw InvalidParameter(
          "potential json: a landau segment must be the only segment");
    return CompositePotential::from_segments(std::move(barriers), units);
  }
  return CompositePotential::from_barriers(std::move(barriers), units);
}

CompositePotential load_potential_json(const std::filesystem::path& file,
                                       ConstantsSet cs) {
  std::ifstream in(file);
  if (!in)
    throw InvalidParameter("potential json: cannot open " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_potential_json(text, cs);
}

std::string potential_to_json(const CompositePotential& p) {
  json doc;
  // "atomic" is spelled "hartree" in files; other names round-trip as-is
  doc["unit_system"] = p.units().name == "atomic" ? "hartree" : p.units().name;
  doc["segments"] = json::array();
  for (const auto& seg : p.segments()) {
    if (seg.is_free()) continue;
    json s;
    if (std::holds_alternative<ParabolicShape>(seg.shape)) {
      const auto& sh = std::get<ParabolicShape>(seg.shape);
      s = {{"shape", "parabolic"}, {"alpha", sh.alpha}, {"u0", sh.u0},
           {"gamma", sh.gamma}};
    } else if (std::holds_alternative<SechShape>(seg.shape)) {
      const auto& sh = std::get<SechShape>(seg.shape);
      s = {{"shape", "sech"},
           {"alpha_inv", sh.alpha_inv},
           {"u0", sh.u0},
           {"beta_shift", sh.beta_shift},
           {"gamma", sh.gamma}};
    } else {
      const auto& sh = std::get<LandauShape>(seg.shape).s;
      s = {{"shape", "landau"}, {"alpha_inv", sh.alpha_inv}, {"u0", sh.u0},
           {"gamma", sh.gamma}};
    }
    doc["segments"].push_back(std::move(s));
  }
  return doc.dump(2);
}

}  // namespace barrierlab
