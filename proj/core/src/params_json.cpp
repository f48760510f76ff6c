#include "steinkit/dist/params_json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace steinkit::dist {

namespace {

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(std::string("params_from_json: missing numeric field '") +
                                key + "'");
  return j[key].get<double>();
}

}  // namespace

FamilyParams params_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("params_from_json: ") + e.what());
  }
  if (!j.contains("family") || !j["family"].is_string())
    throw std::invalid_argument("params_from_json: missing 'family'");
  const std::string family = j["family"].get<std::string>();
  if (family == "gig")
    return GigParams(require_number(j, "p"), require_number(j, "a"),
                     require_number(j, "b"));
  if (family == "kummer")
    return KummerParams(require_number(j, "a"), require_number(j, "b"),
                        require_number(j, "c"));
  throw std::invalid_argument("params_from_json: unknown family '" + family + "'");
}

std::string params_to_json(const FamilyParams& params) {
  nlohmann::json j;
  if (const auto* gig = std::get_if<GigParams>(&params)) {
    j["family"] = "gig";
    j["p"] = gig->p;
    j["a"] = gig->a;
    j["b"] = gig->b;
  } else {
    const auto& k = std::get<KummerParams>(params);
    j["family"] = "kummer";
    j["a"] = k.a;
    j["b"] = k.b;
    j["c"] = k.c;
  }
  return j.dump();
}

std::string family_label(const FamilyParams& params) {
  std::ostringstream label;
  if (const auto* gig = std::get_if<GigParams>(&params))
    label << "gig(p=" << gig->p << ",a=" << gig->a << ",b=" << gig->b << ")";
  else {
    const auto& k = std::get<KummerParams>(params);
    label << "kummer(a=" << k.a << ",b=" << k.b << ",c=" << k.c << ")";
  }
  return label.str();
}

SteinPair stein_pair_for(const FamilyParams& params) {
  if (const auto* gig = std::get_if<GigParams>(&params)) return gig_stein_pair(*gig);
  return kummer_stein_pair(std::get<KummerParams>(params));
}

SampleBatch sample_for(const FamilyParams& params, std::size_t n, std::uint64_t seed) {
  if (const auto* gig = std::get_if<GigParams>(&params)) return sample(*gig, n, seed);
  return sample(std::get<KummerParams>(params), n, seed);
}

void write_sample_csv(const SampleBatch& batch, const FamilyParams& params,
                      const std::string& csv_path, const std::string& sidecar_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::invalid_argument("write_sample_csv: cannot open " + csv_path);
  csv << "value\n";
  char buf[64];
  for (double v : batch.values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    csv << buf << "\n";
  }
  csv.close();

  nlohmann::json sidecar;
  sidecar["params"] = nlohmann::json::parse(params_to_json(params));
  sidecar["n"] = batch.values.size();
  sidecar["seed"] = batch.seed;
  sidecar["method"] = batch.method;
  sidecar["acceptance_rate"] = batch.acceptance_rate;
  std::ofstream side(sidecar_path);
  if (!side)
    throw std::invalid_argument("write_sample_csv: cannot open " + sidecar_path);
  side << sidecar.dump(2) << "\n";
}

std::vector<double> read_sample_values(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::invalid_argument("read_sample_values: cannot open " + csv_path);
  std::vector<double> values;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("value", 0) == 0) continue;  // header row
    }
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw std::invalid_argument("read_sample_values: bad row '" + line + "'");
    }
  }
  return values;
}

}  // namespace steinkit::dist
