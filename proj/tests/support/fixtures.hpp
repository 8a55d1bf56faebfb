#pragma once

// Shared test inputs: the warehouse sources on disk, generated plant graphs
// and seeded random graphs.

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dtgraph/graph.hpp"
#include "dtgraph/taxonomy.hpp"

namespace fixtures {

std::filesystem::path data_dir();
nlohmann::json load_data(std::string_view relative);

// Warehouse: one hall, four storage rows. Each row holds three storage
// places 0.8 m apart, one drive grouped with the row and correlated with the
// first place. One position record spells its type through an alias.
inline constexpr std::size_t kRows = 4;
inline constexpr std::size_t kRowNodes = 5;   // row, 3 places, drive
inline constexpr std::size_t kRowEdges = 7;   // 3 contains, 2 arranged, functional_group, correlates
inline constexpr std::size_t kWarehouseNodes = 1 + kRows * kRowNodes;
inline constexpr std::size_t kWarehouseEdges = kRows + kRows * kRowEdges;

dtgraph::Taxonomy warehouse_taxonomy();
/// plc, position, io parts as produced by ingest.
std::vector<dtgraph::PropertyGraph> warehouse_parts();
/// Merged with the warehouse taxonomy.
dtgraph::PropertyGraph warehouse_abox();

/// `halls` warehouses with `rows` identical rows each, built directly.
dtgraph::PropertyGraph hierarchical_abox(std::size_t halls = 2, std::size_t rows = 4);

/// Source documents of a generated flexible manufacturing cell that merge
/// into exactly 242 nodes and 402 edges.
struct FlexCellSources {
  nlohmann::json plc;
  nlohmann::json position;
  nlohmann::json io;
};
FlexCellSources flexcell_sources();
std::vector<dtgraph::PropertyGraph> flexcell_parts();

/// Undirected graph with up to `max_nodes` nodes, `max_edges` edges and
/// `labels` node types ("A", "B", ...); relations "r" and "s". No self-loops,
/// no repeated (pair, relation).
dtgraph::PropertyGraph random_graph(std::uint64_t seed, std::size_t max_nodes = 20,
                                    std::size_t max_edges = 30, std::size_t labels = 4);

/// Graph with a random motif planted several times plus noise, so that
/// mining and templating have something to find.
dtgraph::PropertyGraph planted_graph(std::uint64_t seed);

/// Three overlapping source parts over one pool of named components, with
/// typed aliases, properties from different sources and optional io edges.
std::vector<dtgraph::PropertyGraph> random_parts(std::uint64_t seed);

}  // namespace fixtures
