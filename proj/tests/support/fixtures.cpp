#include "fixtures.hpp"

#include <array>
#include <random>
#include <set>
#include <string>

#include "dtgraph/graph_io.hpp"
#include "dtgraph/ingest.hpp"
#include "dtgraph/merge.hpp"

#ifndef DTGRAPH_TEST_DATA
#error "DTGRAPH_TEST_DATA must point at tests/data"
#endif

using namespace dtgraph;
using nlohmann::json;

namespace fixtures {

std::filesystem::path data_dir() { return DTGRAPH_TEST_DATA; }

json load_data(std::string_view relative) { return read_json_file(data_dir() / relative); }

Taxonomy warehouse_taxonomy() { return Taxonomy::from_json(load_data("warehouse/taxonomy.json")); }

std::vector<PropertyGraph> warehouse_parts() {
  std::vector<PropertyGraph> parts;
  parts.push_back(parse_plc_relations(load_data("warehouse/plc.json")));
  parts.push_back(derive_arrangement(parse_position_records(load_data("warehouse/position.json"))));
  parts.push_back(parse_io_relations(load_data("warehouse/io.json")));
  return parts;
}

PropertyGraph warehouse_abox() {
  return merge_graphs(warehouse_parts(), warehouse_taxonomy()).graph;
}

PropertyGraph hierarchical_abox(std::size_t halls, std::size_t rows) {
  PropertyGraph g;
  for (std::size_t h = 0; h < halls; ++h) {
    const std::string hall = "WH" + std::to_string(h);
    g.add_node(Node{hall, hall, "Warehouse", Tier::DomainInternal, {}, {Source::Plc}});
    for (std::size_t r = 0; r < rows; ++r) {
      const std::string row = hall + ".R" + std::to_string(r);
      const std::string drive = hall + ".D" + std::to_string(r);
      g.add_node(Node{row, row, "StorageRow", Tier::DomainInternal, {}, {Source::Plc}});
      g.add_node(Node{drive, drive, "Drive", Tier::DomainInternal, {}, {Source::Plc}});
      g.add_edge(hall, row, "contains", Tier::DomainInternal, {}, {Source::Plc});
      g.add_edge(drive, row, "functional_group", Tier::DomainInternal, {}, {Source::Plc});
      for (std::size_t p = 0; p < 3; ++p) {
        const std::string place = row + ".P" + std::to_string(p);
        g.add_node(Node{place, place, "StoragePlace", Tier::DomainInternal, {{"slot", static_cast<double>(p)}},
                        {Source::Plc, Source::Position}});
        g.add_edge(row, place, "contains", Tier::DomainInternal, {}, {Source::Plc});
        if (p > 0) {
          g.add_edge(row + ".P" + std::to_string(p - 1), place, "arranged_next_to", Tier::DomainInternal, {},
                     {Source::Position});
        }
      }
      g.add_edge(drive, row + ".P0", "correlates_with", Tier::InterDomain, {{"weight", 0.9}}, {Source::Io});
    }
  }
  return g;
}

namespace {

json element(const std::string& name, const std::string& type) { return {{"name", name}, {"type", type}}; }

json plc_record(const std::string& sn, const std::string& st, const std::string& rel, const std::string& on,
                const std::string& ot) {
  return {{"subject", element(sn, st)}, {"relation", rel}, {"object", element(on, ot)}};
}

// Station kinds along the line; no pair of kinds is adjacent more than three
// times, so cross-station patterns stay below a support of four.
constexpr std::array<int, 24> kStationKinds{0, 1, 2, 3, 4, 5, 0, 2, 4, 1, 3, 5,
                                            1, 0, 3, 2, 5, 4, 0, 2, 1, 3, 4, 5};
constexpr std::array<const char*, 6> kKindNames{"AssemblyStation", "TestStation", "StorageStation",
                                                "PressStation",    "WeldStation", "PackStation"};

}  // namespace

FlexCellSources flexcell_sources() {
  json plc = json::array();
  json pos = json::array();
  json io = json::array();
  for (std::size_t k = 0; k < kStationKinds.size(); ++k) {
    const std::string s = "S" + std::string(k < 10 ? "0" : "") + std::to_string(k);
    const std::string kind = kKindNames[static_cast<std::size_t>(kStationKinds[k])];
    auto n = [&](const char* part) { return s + "." + part; };
    const std::string fb = "FB_" + s;  // function blocks are station specific
    plc.push_back(plc_record("FlexCell", "Cell", "contains", s, kind));
    plc.push_back(plc_record(s, kind, "contains", n("Conveyor"), "Conveyor"));
    plc.push_back(plc_record(s, kind, "contains", n("Gripper"), "Gripper"));
    plc.push_back(plc_record(s, kind, "contains", n("Cylinder"), "Cylinder"));
    plc.push_back(plc_record(n("Drive"), "Drive", "functional_group", n("Conveyor"), "Conveyor"));
    plc.push_back(plc_record(n("Motor"), "Motor", "functional_group", n("Drive"), "Drive"));
    plc.push_back(plc_record(n("FB"), fb, "writes", n("Drive"), "Drive"));
    plc.push_back(plc_record(n("FB"), fb, "reads", n("In"), "Sensor"));
    plc.push_back(plc_record(n("FB"), fb, "reads", n("Out"), "Sensor"));
    plc.push_back(plc_record(n("FB"), fb, "writes", n("Valve"), "Valve"));
    plc.push_back(plc_record(n("Valve"), "Valve", "functional_group", n("Cylinder"), "Cylinder"));
    if (k < 19) plc.push_back(plc_record("MainPLC", "Controller", "reads", n("FB"), fb));

    pos.push_back({{"name", s}, {"type", kind}, {"pos", {0.9 * static_cast<double>(k), 0.0, 0.0}}});

    auto corr = [&](const char* a, const char* at, const char* b, const char* bt, double w) {
      io.push_back({{"a", element(n(a), at)}, {"b", element(n(b), bt)}, {"weight", w}});
    };
    corr("In", "Sensor", "Out", "Sensor", 0.95);
    corr("Drive", "Drive", "Out", "Sensor", 0.9);
    corr("Gripper", "Gripper", "Cylinder", "Cylinder", 0.85);
    corr("Motor", "Motor", "Conveyor", "Conveyor", 0.88);
    corr("In", "Sensor", "Gripper", "Gripper", 0.4);  // below the cutoff
  }
  return {{{"source", "plc"}, {"records", plc}},
          {{"source", "position"}, {"records", pos}},
          {{"source", "io"}, {"records", io}}};
}

std::vector<PropertyGraph> flexcell_parts() {
  const FlexCellSources src = flexcell_sources();
  std::vector<PropertyGraph> parts;
  parts.push_back(parse_plc_relations(src.plc));
  parts.push_back(derive_arrangement(parse_position_records(src.position)));
  parts.push_back(parse_io_relations(src.io));
  return parts;
}

PropertyGraph random_graph(std::uint64_t seed, std::size_t max_nodes, std::size_t max_edges,
                           std::size_t labels) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  PropertyGraph g;
  const std::size_t n = pick(2, max_nodes);
  for (std::size_t v = 0; v < n; ++v) {
    const std::string type(1, static_cast<char>('A' + pick(0, labels - 1)));
    g.add_node("x" + std::to_string(v), type, Tier::DomainInternal);
  }
  const std::size_t m = pick(1, max_edges);
  for (std::size_t tries = 0; g.edge_count() < m && tries < 20 * m; ++tries) {
    const std::size_t a = pick(0, n - 1);
    const std::size_t b = pick(0, n - 1);
    if (a == b) continue;
    const std::string rel = pick(0, 3) == 0 ? "s" : "r";
    const std::string& ia = g.nodes()[a].id;
    const std::string& ib = g.nodes()[b].id;
    if (g.has_edge(ia, ib, rel)) continue;
    g.add_edge(ia, ib, rel, Tier::DomainInternal);
  }
  return g;
}

PropertyGraph planted_graph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  // Motif: a random tree on 3..5 nodes plus possibly one chord.
  const std::size_t k = pick(3, 5);
  std::vector<std::string> motif_types;
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> motif_edges;
  for (std::size_t v = 0; v < k; ++v) motif_types.emplace_back(1, static_cast<char>('A' + pick(0, 2)));
  for (std::size_t v = 1; v < k; ++v) motif_edges.emplace_back(pick(0, v - 1), v, pick(0, 2) ? "r" : "s");
  if (k > 3 && pick(0, 1)) motif_edges.emplace_back(0, k - 1, "t");

  PropertyGraph g;
  const std::size_t copies = pick(2, 4);
  std::vector<std::string> anchors;
  for (std::size_t c = 0; c < copies; ++c) {
    std::vector<std::string> ids;
    for (std::size_t v = 0; v < k; ++v) {
      ids.push_back(g.add_node("m" + std::to_string(c) + "." + std::to_string(v), motif_types[v],
                               Tier::DomainInternal, {{"copy", static_cast<double>(c)}}, {Source::Plc}));
    }
    for (const auto& [a, b, rel] : motif_edges) {
      g.add_edge(ids[a], ids[b], rel, Tier::DomainInternal, {{"w", static_cast<double>(a + b)}}, {Source::Plc});
    }
    anchors.push_back(ids[pick(0, k - 1)]);
  }
  // Noise nodes wired to random motif nodes and to each other.
  const std::size_t noise = pick(1, 6);
  for (std::size_t v = 0; v < noise; ++v) {
    const std::string id = g.add_node("z" + std::to_string(v), std::string(1, static_cast<char>('A' + pick(0, 3))),
                                      Tier::DomainInternal);
    const std::string& target = g.nodes()[pick(0, g.node_count() - 2)].id;
    if (!g.has_edge(id, target, "u")) g.add_edge(id, target, "u", Tier::InterDomain, {}, {Source::Io});
  }
  for (std::size_t c = 1; c < anchors.size(); ++c) {
    if (pick(0, 1)) g.add_edge(anchors[c - 1], anchors[c], "u", Tier::InterDomain, {}, {Source::Io});
  }
  return g;
}

std::vector<PropertyGraph> random_parts(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  static const std::array<const char*, 4> kTypes{"StoragePlace", "StorageRow", "Drive", "Conveyor"};
  const std::size_t pool = pick(6, 14);
  std::vector<std::string> base_type(pool);
  for (auto& t : base_type) t = kTypes[pick(0, kTypes.size() - 1)];

  auto spelled_name = [&](std::size_t c) {
    std::string name = "C" + std::to_string(c);
    switch (pick(0, 3)) {
      case 0: return " " + name;
      case 1: return std::string("c") + std::to_string(c);
      default: return name;
    }
  };
  auto spelled_type = [&](std::size_t c) -> std::string {
    const std::string& t = base_type[c];
    switch (pick(0, 5)) {
      case 0: return "Component";
      case 1: return t == "StoragePlace" ? "LagerPlatz" : t;
      case 2: {
        std::string lower = t;
        for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        return lower;
      }
      default: return t;
    }
  };

  const std::array<Source, 3> sources{Source::Plc, Source::Position, Source::Io};
  const std::array<std::array<const char*, 2>, 3> relations{
      {{"contains", "functional_group"}, {"arranged_next_to", "arranged_next_to"}, {"correlates_with", "correlates_with"}}};
  std::vector<PropertyGraph> parts;
  for (std::size_t p = 0; p < 3; ++p) {
    const Tier tier = sources[p] == Source::Io ? Tier::InterDomain : Tier::DomainInternal;
    PropertyGraph g;
    std::vector<std::string> ids;
    for (std::size_t c = 0; c < pool; ++c) {
      if (pick(0, 3) == 0) continue;
      Properties props;
      if (pick(0, 1)) props.emplace("vendor", std::string(pick(0, 1) ? "acme" : "globex"));
      if (pick(0, 2) == 0) props.emplace("rated", static_cast<double>(pick(1, 3)));
      ids.push_back(g.add_node(spelled_name(c), spelled_type(c), tier, std::move(props), {sources[p]}));
    }
    if (ids.size() >= 2) {
      const std::size_t m = pick(1, 2 * ids.size());
      for (std::size_t e = 0; e < m; ++e) {
        const std::size_t a = pick(0, ids.size() - 1);
        const std::size_t b = pick(0, ids.size() - 1);
        const std::string rel = relations[p][pick(0, 1)];
        if (a == b || g.has_edge(ids[a], ids[b], rel)) continue;
        Properties props;
        if (sources[p] == Source::Io) props.emplace("weight", 0.8 + 0.05 * static_cast<double>(pick(0, 4)));
        g.add_edge(ids[a], ids[b], rel, tier, std::move(props), {sources[p]});
      }
    }
    parts.push_back(std::move(g));
  }
  return parts;
}

}  // namespace fixtures
