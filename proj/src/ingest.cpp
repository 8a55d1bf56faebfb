#include "dtgraph/ingest.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "dtgraph/error.hpp"

namespace dtgraph {
namespace {

const nlohmann::json& records_of(const nlohmann::json& doc, std::string_view expected) {
  if (!doc.is_object()) throw ParseError("source document must be a JSON object");
  auto src = doc.find("source");
  if (src == doc.end() || !src->is_string() || src->get<std::string>() != expected) {
    throw ParseError("expected \"source\": \"" + std::string(expected) + "\"");
  }
  auto recs = doc.find("records");
  if (recs == doc.end() || !recs->is_array()) throw ParseError("missing \"records\" array");
  return *recs;
}

std::string text_field(const nlohmann::json& obj, const char* key, std::size_t record) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(std::string("missing string field \"") + key + "\"", record);
  }
  std::string value = it->get<std::string>();
  if (value.empty()) throw ParseError(std::string("field \"") + key + "\" is empty", record);
  return value;
}

struct NamedElement {
  std::string name;
  std::string type;
};

NamedElement element(const nlohmann::json& rec, const char* key, std::size_t record) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_object()) {
    throw ParseError(std::string("missing object \"") + key + "\"", record);
  }
  return {text_field(*it, "name", record), text_field(*it, "type", record)};
}

// Adds nodes by name, one per distinct name, rejecting contradictory types.
class NodeTable {
 public:
  NodeTable(PropertyGraph& graph, Tier tier, Source source)
      : graph_(graph), tier_(tier), source_(source) {}

  const std::string& get(const NamedElement& e, std::size_t record) {
    auto it = ids_.find(e.name);
    if (it != ids_.end()) {
      const Node& existing = graph_.node(it->second);
      if (existing.type != e.type) {
        throw Error(ErrorKind::Conflict, "record " + std::to_string(record) + ": '" + e.name +
                                             "' typed both '" + existing.type + "' and '" +
                                             e.type + "'");
      }
      return it->second;
    }
    std::string id = graph_.add_node(e.name, e.type, tier_, {}, {source_});
    return ids_.emplace(e.name, std::move(id)).first->second;
  }

 private:
  PropertyGraph& graph_;
  Tier tier_;
  Source source_;
  std::unordered_map<std::string, std::string> ids_;
};

bool plc_relation(std::string_view rel) {
  return rel == "functional_group" || rel == "contains" || rel == "reads" || rel == "writes";
}

}  // namespace

Source document_source(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("source") || !doc["source"].is_string()) {
    throw ParseError("missing \"source\" field");
  }
  try {
    return source_from_string(doc["source"].get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

PropertyGraph parse_plc_relations(const nlohmann::json& doc) {
  const auto& records = records_of(doc, "plc");
  PropertyGraph g;
  NodeTable nodes(g, Tier::DomainInternal, Source::Plc);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!rec.is_object()) throw ParseError("record must be an object", i);
    NamedElement subject = element(rec, "subject", i);
    NamedElement object = element(rec, "object", i);
    std::string rel = text_field(rec, "relation", i);
    if (!plc_relation(rel)) throw ParseError("relation '" + rel + "' is not allowed for plc", i);
    std::string s = nodes.get(subject, i);
    std::string o = nodes.get(object, i);
    if (!g.has_edge(s, o, rel)) g.add_edge(s, o, rel, Tier::DomainInternal, {}, {Source::Plc});
  }
  return g;
}

PositionSet parse_position_records(const nlohmann::json& doc) {
  const auto& records = records_of(doc, "position");
  PositionSet out;
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!rec.is_object()) throw ParseError("record must be an object", i);
    PositionEntry entry;
    entry.name = text_field(rec, "name", i);
    entry.type = text_field(rec, "type", i);
    auto pos = rec.find("pos");
    if (pos == rec.end() || !pos->is_array() || pos->size() != 3) {
      throw ParseError("\"pos\" must be an array of 3 numbers", i);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!(*pos)[k].is_number()) throw ParseError("\"pos\" must be an array of 3 numbers", i);
      entry.pos[k] = (*pos)[k].get<double>();
      if (!std::isfinite(entry.pos[k])) throw ParseError("non-finite coordinate", i);
    }
    if (!names.insert(entry.name).second) {
      throw ParseError("duplicate position name '" + entry.name + "'", i);
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

namespace {

double distance(const PositionEntry& a, const PositionEntry& b) {
  const double dx = a.pos[0] - b.pos[0];
  const double dy = a.pos[1] - b.pos[1];
  const double dz = a.pos[2] - b.pos[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorKind::Validation, "arrangement threshold must be a positive number");
  }
}

PropertyGraph assemble_arrangement(const PositionSet& positions,
                                   const std::vector<std::vector<std::size_t>>& neighbours) {
  PropertyGraph g;
  std::vector<std::string> ids;
  ids.reserve(positions.entries.size());
  for (const auto& e : positions.entries) {
    ids.push_back(g.add_node(e.name, e.type, Tier::DomainInternal, {}, {Source::Position}));
  }
  for (std::size_t i = 0; i < neighbours.size(); ++i) {
    for (std::size_t j : neighbours[i]) {
      g.add_edge(ids[i], ids[j], "arranged_next_to", Tier::DomainInternal, {}, {Source::Position});
    }
  }
  return g;
}

}  // namespace

PropertyGraph derive_arrangement(const PositionSet& positions, double threshold) {
  check_threshold(threshold);
  const auto& pts = positions.entries;
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
  std::vector<std::vector<std::size_t>> neighbours(pts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& row = neighbours[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < pts.size(); ++j) {
      if (distance(pts[static_cast<std::size_t>(i)], pts[j]) <= threshold) row.push_back(j);
    }
  }
  return assemble_arrangement(positions, neighbours);
}

PropertyGraph derive_arrangement_serial(const PositionSet& positions, double threshold) {
  check_threshold(threshold);
  const auto& pts = positions.entries;
  std::vector<std::vector<std::size_t>> neighbours(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (distance(pts[i], pts[j]) <= threshold) neighbours[i].push_back(j);
    }
  }
  return assemble_arrangement(positions, neighbours);
}

PropertyGraph parse_io_relations(const nlohmann::json& doc, double cutoff) {
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) {
    throw Error(ErrorKind::Validation, "io cutoff must lie in [0, 1]");
  }
  const auto& records = records_of(doc, "io");
  PropertyGraph g;
  NodeTable nodes(g, Tier::InterDomain, Source::Io);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!rec.is_object()) throw ParseError("record must be an object", i);
    NamedElement a = element(rec, "a", i);
    NamedElement b = element(rec, "b", i);
    auto w = rec.find("weight");
    if (w == rec.end() || !w->is_number()) throw ParseError("missing numeric \"weight\"", i);
    const double weight = w->get<double>();
    if (!(weight >= 0.0 && weight <= 1.0)) {
      throw Error(ErrorKind::Validation,
                  "record " + std::to_string(i) + ": weight " + std::to_string(weight) +
                      " outside [0, 1]");
    }
    if (a.name == b.name) throw ParseError("signal '" + a.name + "' correlated with itself", i);
    std::string ia = nodes.get(a, i);
    std::string ib = nodes.get(b, i);
    if (weight < cutoff || g.has_edge(ia, ib, "correlates_with")) continue;
    g.add_edge(ia, ib, "correlates_with", Tier::InterDomain, {{"weight", weight}}, {Source::Io});
  }
  return g;
}

}  // namespace dtgraph
