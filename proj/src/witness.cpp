#include "mermin/witness.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mermin {

namespace {

using nlohmann::json;

bool is_axis(const Observable& o, const Eigen::Vector3d& axis) {
  return (o.bloch - axis).norm() <= 1e-12;
}

std::string setting_name(const std::array<Observable, 3>& s) {
  std::string out;
  for (const Observable& o : s) {
    if (is_axis(o, {1, 0, 0})) out += "X";
    else if (is_axis(o, {0, 1, 0})) out += "Y";
    else if (is_axis(o, {0, 0, 1})) out += "Z";
    else out += "?";
  }
  return out;
}

}  // namespace

CorrelationRecord::CorrelationRecord(std::vector<CorrelationEntry> entries,
                                     std::string metadata)
    : entries_(std::move(entries)), metadata_(std::move(metadata)) {
  if (entries_.empty())
    throw std::invalid_argument("CorrelationRecord: no settings");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const CorrelationEntry& e = entries_[i];
    if (!(e.std_error >= 0.0))
      throw std::invalid_argument("CorrelationRecord: entry " + std::to_string(i) +
                                  " has negative std_error");
    const double band = 1.0 + 3.0 * e.std_error;
    if (std::abs(e.value) > band)
      throw std::invalid_argument(
          "CorrelationRecord: entry " + std::to_string(i) + " (" +
          setting_name(e.setting) + ") value " + std::to_string(e.value) +
          " outside sanity band [-" + std::to_string(band) + ", " +
          std::to_string(band) + "]");
  }
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::consistent_with_lhv: return "consistent-with-LHV";
    case Classification::violates_lhv_and_bisep_orthogonal:
      return "violates-LHV-and-biseparable-orthogonal";
    case Classification::violates_bisep_any_observables:
      return "violates-biseparable-any-observables";
  }
  return "?";
}

std::string Verdict::summary() const {
  switch (classification) {
    case Classification::consistent_with_lhv:
      return "consistent with local hidden variable models; no entanglement claim";
    case Classification::violates_lhv_and_bisep_orthogonal:
      return "genuine three-qubit entanglement (orthogonal observables)";
    case Classification::violates_bisep_any_observables:
      return "genuine three-qubit entanglement (any dichotomic observables)";
  }
  return "?";
}

std::pair<double, double> estimate_m3(const CorrelationRecord& record) {
  // the four Mermin settings and their signs in M3
  static const std::array<std::array<Observable, 3>, 4> wanted = {{
      {Observable::x_axis(), Observable::x_axis(), Observable::x_axis()},
      {Observable::y_axis(), Observable::y_axis(), Observable::x_axis()},
      {Observable::x_axis(), Observable::y_axis(), Observable::y_axis()},
      {Observable::y_axis(), Observable::x_axis(), Observable::y_axis()},
  }};
  static const std::array<double, 4> sign = {1.0, -1.0, -1.0, -1.0};
  static const std::array<const char*, 4> names = {"XXX", "YYX", "XYY", "YXY"};

  double value = 0.0;
  double var = 0.0;
  for (int w = 0; w < 4; ++w) {
    const CorrelationEntry* found = nullptr;
    for (const CorrelationEntry& e : record.entries()) {
      bool match = true;
      for (int q = 0; q < 3; ++q)
        match = match && (e.setting[q].bloch - wanted[w][q].bloch).norm() <= 1e-12;
      if (!match) continue;
      if (found)
        throw std::invalid_argument(std::string("estimate_m3: duplicate setting ") +
                                    names[w]);
      found = &e;
    }
    if (!found)
      throw std::invalid_argument(std::string("estimate_m3: missing setting ") +
                                  names[w]);
    value += sign[w] * found->value;
    var += found->std_error * found->std_error;
  }
  return {value, std::sqrt(var)};
}

Verdict classify(double value, double std_error, const BoundSet& bounds, double k) {
  if (std_error < 0.0)
    throw std::invalid_argument("classify: negative std_error");
  if (k <= 0.0) throw std::invalid_argument("classify: confidence multiplier must be > 0");

  const double mag = std::abs(value);
  auto sigma_above = [&](double bound) {
    const double diff = mag - bound;
    if (std_error == 0.0) {
      if (diff > 0.0) return std::numeric_limits<double>::infinity();
      if (diff < 0.0) return -std::numeric_limits<double>::infinity();
      return 0.0;
    }
    return diff / std_error;
  };

  Verdict v;
  v.estimate = value;
  v.std_error = std_error;
  v.confidence_k = k;
  v.sigma_above_2 = sigma_above(bounds.lhv);
  v.sigma_above_2sqrt2 = sigma_above(bounds.biseparable_free);
  if (mag > bounds.biseparable_free + k * std_error)
    v.classification = Classification::violates_bisep_any_observables;
  else if (mag > bounds.lhv + k * std_error)
    v.classification = Classification::violates_lhv_and_bisep_orthogonal;
  else
    v.classification = Classification::consistent_with_lhv;
  return v;
}

namespace {

Observable parse_setting(const json& s, std::size_t entry_index) {
  const std::string where = "entry " + std::to_string(entry_index);
  if (s.is_string()) {
    const std::string name = s.get<std::string>();
    if (name == "X") return Observable::x_axis();
    if (name == "Y") return Observable::y_axis();
    if (name == "Z") return Observable::z_axis();
    throw std::invalid_argument("load_correlations: " + where +
                                ": unknown axis '" + name + "' (use X, Y, Z or bloch)");
  }
  if (s.is_object() && s.contains("bloch")) {
    const json& b = s.at("bloch");
    if (!b.is_array() || b.size() != 3)
      throw std::invalid_argument("load_correlations: " + where +
                                  ": bloch must be an array of 3 numbers");
    return Observable::from_bloch(b[0].get<double>(), b[1].get<double>(),
                                  b[2].get<double>());
  }
  throw std::invalid_argument("load_correlations: " + where +
                              ": setting must be \"X\", \"Y\", \"Z\" or {\"bloch\": [x,y,z]}");
}

json setting_to_json(const Observable& o) {
  if (is_axis(o, {1, 0, 0})) return "X";
  if (is_axis(o, {0, 1, 0})) return "Y";
  if (is_axis(o, {0, 0, 1})) return "Z";
  return json{{"bloch", {o.bloch.x(), o.bloch.y(), o.bloch.z()}}};
}

}  // namespace

CorrelationRecord load_correlations(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("load_correlations: malformed JSON: ") +
                                err.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw std::invalid_argument("load_correlations: top-level object with an "
                                "\"entries\" array required");
  const json& entries = doc["entries"];
  if (entries.empty())
    throw std::invalid_argument("load_correlations: no settings");

  std::vector<CorrelationEntry> parsed;
  parsed.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const std::string where = "entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("setting") || !e.contains("value") ||
        !e.contains("std_error"))
      throw std::invalid_argument("load_correlations: " + where +
                                  " needs setting, value and std_error fields");
    const json& s = e["setting"];
    if (!s.is_array() || s.size() != 3)
      throw std::invalid_argument("load_correlations: " + where +
                                  ": setting must list 3 observables");
    if (!e["value"].is_number() || !e["std_error"].is_number())
      throw std::invalid_argument("load_correlations: " + where +
                                  ": value and std_error must be numbers");
    CorrelationEntry entry;
    for (int q = 0; q < 3; ++q) entry.setting[q] = parse_setting(s[q], i);
    entry.value = e["value"].get<double>();
    entry.std_error = e["std_error"].get<double>();
    parsed.push_back(entry);
  }
  std::string metadata;
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_string())
      throw std::invalid_argument("load_correlations: metadata must be a string");
    metadata = doc["metadata"].get<std::string>();
  }
  return CorrelationRecord(std::move(parsed), std::move(metadata));
}

CorrelationRecord load_correlations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("load_correlations: cannot open " + path.string());
  return load_correlations(in);
}

void save_correlations(const CorrelationRecord& record, std::ostream& out) {
  json entries = json::array();
  for (const CorrelationEntry& e : record.entries()) {
    entries.push_back({{"setting", {setting_to_json(e.setting[0]),
                                    setting_to_json(e.setting[1]),
                                    setting_to_json(e.setting[2])}},
                       {"value", e.value},
                       {"std_error", e.std_error}});
  }
  json doc{{"entries", entries}, {"metadata", record.metadata()}};
  out << doc.dump(2) << "\n";
}

void save_correlations(const CorrelationRecord& record,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::invalid_argument("save_correlations: cannot open " + path.string());
  save_correlations(record, out);
}

}  // namespace mermin
