#include "mkn/records.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "mkn/io.hpp"

namespace mkn {

using nlohmann::json;

bool EvidenceRecord::has_gold(const std::string& disease) const {
  return std::find(diseases.begin(), diseases.end(), disease) != diseases.end();
}

EncodedEvidence encode_evidence(const GroundNetwork& net,
                                const EvidenceRecord& record) {
  EncodedEvidence out;
  out.values.assign(net.graph().node_count(), 0.0);
  for (const SymptomObservation& obs : record.symptoms) {
    auto node = net.graph().find(NodeKind::Symptom, obs.symptom);
    if (!node) {
      ++out.skipped_symptoms;
      continue;
    }
    double x = encode(obs, net.config().encoding);
    if (net.config().binarize) x = x > 0.0 ? 1.0 : 0.0;
    out.values[*node] = x;
  }
  return out;
}

namespace {

EvidenceRecord record_from_json(const json& j, int line_number) {
  auto malformed = [&](const std::string& what) {
    return Error(ErrorKind::MalformedLine,
                 "record line " + std::to_string(line_number) + ": " + what);
  };
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
    throw malformed("expected an object with a string \"id\"");
  }
  EvidenceRecord record;
  record.id = j["id"].get<std::string>();
  for (const json& s : j.value("symptoms", json::array())) {
    if (!s.is_object() || !s.contains("name") || !s["name"].is_string()) {
      throw malformed("symptom entry needs a \"name\"");
    }
    SymptomObservation obs;
    obs.symptom = s["name"].get<std::string>();
    if (s.contains("modifier")) {
      auto modifier = parse_modifier(s["modifier"].get<std::string>());
      if (!modifier) {
        throw malformed("unknown modifier \"" +
                        s["modifier"].get<std::string>() + "\"");
      }
      obs.modifier = *modifier;
    } else if (s.contains("value")) {
      obs.value = s["value"].get<double>();
      if (s.contains("normal")) obs.normal = s["normal"].get<double>();
    } else {
      throw malformed("symptom entry needs a \"modifier\" or a \"value\"");
    }
    record.symptoms.push_back(std::move(obs));
  }
  for (const json& d : j.value("diseases", json::array())) {
    record.diseases.push_back(d.get<std::string>());
  }
  return record;
}

}  // namespace

std::vector<EvidenceRecord> load_records(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<EvidenceRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorKind::MalformedLine,
                  "record line " + std::to_string(line_number) +
                      " is not valid JSON");
    }
    records.push_back(record_from_json(j, line_number));
  }
  return records;
}

std::string format_records(const std::vector<EvidenceRecord>& records) {
  std::ostringstream out;
  for (const EvidenceRecord& record : records) {
    json symptoms = json::array();
    for (const SymptomObservation& obs : record.symptoms) {
      json entry{{"name", obs.symptom}};
      if (obs.modifier) {
        entry["modifier"] = to_string(*obs.modifier);
      } else {
        if (obs.value) entry["value"] = *obs.value;
        if (obs.normal) entry["normal"] = *obs.normal;
      }
      symptoms.push_back(std::move(entry));
    }
    json j{{"id", record.id},
           {"symptoms", std::move(symptoms)},
           {"diseases", record.diseases}};
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace mkn
