#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dtgraph/error.hpp"
#include "dtgraph/graph_io.hpp"

namespace dtgraph::cli {
namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw Error(ErrorKind::Validation, "config key '" + key + "' expects true or false");
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Validation, "config key '" + key + "' expects a number, got '" + value + "'");
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw Error(ErrorKind::Validation, "config key '" + key + "' expects a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

void check_format(const std::string& f) {
  if (f != "json" && f != "graphml" && f != "dot") {
    throw Error(ErrorKind::Validation, "unknown export format '" + f + "' (json, graphml, dot)");
  }
}

}  // namespace

PipelineConfig PipelineConfig::parse(const std::string& text, const fs::path& base_dir) {
  PipelineConfig c;
  auto path_of = [&](const std::string& v) {
    fs::path p(v);
    return p.is_absolute() ? p : base_dir / p;
  };
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Validation, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "plc") c.plc = path_of(value);
    else if (key == "position") c.position = path_of(value);
    else if (key == "io") c.io = path_of(value);
    else if (key == "taxonomy") c.taxonomy = path_of(value);
    else if (key == "out_dir") c.out_dir = path_of(value);
    else if (key == "threshold") c.threshold = parse_number(key, value);
    else if (key == "cutoff") c.cutoff = parse_number(key, value);
    else if (key == "priority") c.merge.priority = MergePolicy::parse_priority(value);
    else if (key == "semantic_merge") c.merge.semantic_merge = parse_bool(key, value);
    else if (key == "case_fold") c.merge.case_fold = parse_bool(key, value);
    else if (key == "trim") c.merge.trim = parse_bool(key, value);
    else if (key == "min_support") c.mining.min_support = parse_count(key, value);
    else if (key == "max_edges") c.mining.max_edges = parse_count(key, value);
    else if (key == "mode") c.mining.mode = match_mode_from_string(value);
    else if (key == "closed_only") c.mining.closed_only = parse_bool(key, value);
    else if (key == "tiers") c.mining.tiers = TierSet::parse(value);
    else if (key == "max_patterns") c.mining.max_patterns = parse_count(key, value);
    else if (key == "threads") c.mining.threads = static_cast<int>(parse_count(key, value));
    else if (key == "max_templates") c.max_templates = parse_count(key, value);
    else if (key == "formats") {
      c.formats = split_list(value);
      for (const auto& f : c.formats) check_format(f);
    } else {
      throw Error(ErrorKind::Validation, "config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.parent_path());
}

void PipelineConfig::validate() const {
  if (!plc && !position && !io) throw Error(ErrorKind::Validation, "config names no source file");
  for (const auto* p : {&plc, &position, &io, &taxonomy}) {
    if (*p && !fs::is_regular_file(**p)) {
      throw Error(ErrorKind::Io, "file not found: " + (*p)->string());
    }
  }
  if (!(threshold > 0.0)) throw Error(ErrorKind::Validation, "threshold must be positive");
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) throw Error(ErrorKind::Validation, "cutoff must lie in [0, 1]");
  merge.validate();
  mining.validate();
  if (max_templates < 1) throw Error(ErrorKind::Validation, "max_templates must be at least 1");
  if (mining.mode == MatchMode::Generalized && !taxonomy) {
    throw Error(ErrorKind::Validation, "generalized mode needs a taxonomy");
  }
}

namespace {

struct GraphOrLibrary {
  PropertyGraph graph;
  std::optional<TemplatizedGraph> library;
};

GraphOrLibrary load_graph_or_library(const fs::path& path) {
  const json doc = read_json_file(path);
  GraphOrLibrary out;
  if (doc.is_object() && doc.contains("templates")) {
    out.library = library_from_json(doc);
    out.graph = out.library->residual;
  } else {
    out.graph = graph_from_json(doc);
  }
  return out;
}

PropertyGraph ingest_file(const fs::path& path, double threshold, double cutoff) {
  const json doc = read_json_file(path);
  switch (document_source(doc)) {
    case Source::Plc:
      return parse_plc_relations(doc);
    case Source::Position:
      return derive_arrangement(parse_position_records(doc), threshold);
    case Source::Io:
      return parse_io_relations(doc, cutoff);
  }
  throw Error(ErrorKind::Parse, "unknown source");
}

// Prefixes errors with the file they came from.
template <class F>
auto with_file(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

Taxonomy load_taxonomy(const std::optional<fs::path>& path) {
  return path ? Taxonomy::load(*path) : Taxonomy();
}

void write_export(const fs::path& path, const std::string& format, const GraphOrLibrary& input) {
  if (format == "json") {
    write_json_file(path, input.library ? library_to_json(*input.library) : graph_to_json(input.graph));
  } else if (format == "graphml") {
    write_text_file(path, to_graphml(input.library ? expand(*input.library) : input.graph));
  } else if (format == "dot") {
    write_text_file(path, input.library ? instances_to_dot(*input.library) : to_dot(input.graph));
  } else {
    check_format(format);
  }
}

void run_pipeline(const PipelineConfig& config, std::ostream& out) {
  config.validate();
  fs::create_directories(config.out_dir);

  std::vector<PropertyGraph> parts;
  for (const auto& [name, path] : {std::pair{"plc", config.plc}, std::pair{"position", config.position},
                                   std::pair{"io", config.io}}) {
    if (!path) continue;
    parts.push_back(with_file(*path, [&] { return ingest_file(*path, config.threshold, config.cutoff); }));
    write_graph(config.out_dir / (std::string(name) + ".graph.json"), parts.back());
  }

  const Taxonomy taxonomy = load_taxonomy(config.taxonomy);
  MergeResult merged = merge_graphs(parts, taxonomy, config.merge);
  write_graph(config.out_dir / "merged.json", merged.graph);
  write_json_file(config.out_dir / "merge_report.json", merged.report.to_json());

  const Taxonomy* tax = config.taxonomy ? &taxonomy : nullptr;
  const auto patterns = mine_frequent(merged.graph, config.mining, tax);
  write_json_file(config.out_dir / "patterns.json", patterns_to_json(patterns, config.mining));

  TemplateParams tp{config.max_templates, config.mining.mode, tax};
  const TemplatizedGraph library = templatize(merged.graph, patterns, tp);
  write_json_file(config.out_dir / "library.json", library_to_json(library));
  const CompressionStats stats = compression_stats(merged.graph, library);
  write_json_file(config.out_dir / "stats.json", stats.to_json());

  GraphOrLibrary merged_view{merged.graph, std::nullopt};
  GraphOrLibrary library_view{library.residual, library};
  for (const auto& format : config.formats) {
    if (format == "json") continue;  // merged.json and library.json are always written
    const std::string ext = format == "graphml" ? ".graphml" : ".dot";
    write_export(config.out_dir / ("merged" + ext), format, merged_view);
    if (format == "dot") write_export(config.out_dir / "templates.dot", format, library_view);
  }

  out << json{{"nodes", merged.graph.node_count()},
              {"edges", merged.graph.edge_count()},
              {"components", merged.report.component_count},
              {"patterns", patterns.size()},
              {"templates", library.templates.size()},
              {"reduction_ratio", stats.reduction_ratio}}
             .dump()
      << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Merge, mine and compress plant relation graphs", "dtgraph"};
  app.require_subcommand(1);

  // ingest
  std::vector<fs::path> ingest_files;
  fs::path ingest_dir = ".";
  double threshold = kDefaultArrangementThreshold;
  double cutoff = kDefaultIoCutoff;
  auto* ingest = app.add_subcommand("ingest", "Parse source files into graph JSON");
  ingest->add_option("files", ingest_files, "plc, position or io source files")->required();
  ingest->add_option("--out-dir", ingest_dir, "Directory for <stem>.graph.json outputs");
  ingest->add_option("--threshold", threshold, "Arrangement distance in meters");
  ingest->add_option("--cutoff", cutoff, "Minimum io correlation weight");

  // merge
  std::vector<fs::path> merge_parts;
  std::optional<fs::path> taxonomy_path;
  fs::path merge_out;
  std::optional<fs::path> report_path;
  bool no_semantic = false;
  bool keep_case = false;
  bool no_trim = false;
  std::string priority = "plc,io,position";
  auto* merge = app.add_subcommand("merge", "Merge partial graphs into one ABox");
  merge->add_option("parts", merge_parts, "Graph JSON files")->required();
  merge->add_option("--taxonomy", taxonomy_path, "Taxonomy JSON");
  merge->add_option("--out", merge_out, "Merged graph JSON")->required();
  merge->add_option("--report", report_path, "Merge report JSON (default: stdout)");
  merge->add_flag("--no-semantic", no_semantic, "Skip the taxonomy-based semantic pass");
  merge->add_flag("--keep-case", keep_case, "Compare names case-sensitively");
  merge->add_flag("--no-trim", no_trim, "Keep surrounding whitespace in names");
  merge->add_option("--priority", priority, "Source priority, highest first");

  // mine
  fs::path mine_in;
  fs::path mine_out;
  MiningParams mining;
  std::string mode = "exact";
  std::string tiers = "1,2";
  auto* mine = app.add_subcommand("mine", "Mine frequent patterns");
  mine->add_option("graph", mine_in, "Graph JSON or template library")->required();
  mine->add_option("--out", mine_out, "Pattern report JSON")->required();
  mine->add_option("--min-support", mining.min_support, "Minimum MNI support (>= 2)");
  mine->add_option("--max-edges", mining.max_edges, "Largest pattern size in edges");
  mine->add_option("--mode", mode, "exact or generalized");
  mine->add_flag("--closed", mining.closed_only, "Keep closed patterns only");
  mine->add_option("--tiers", tiers, "Tiers to mine, e.g. 1,2");
  mine->add_option("--taxonomy", taxonomy_path, "Taxonomy JSON (generalized mode)");
  mine->add_option("--threads", mining.threads, "Worker threads (0 = default)");
  mine->add_option("--max-patterns", mining.max_patterns, "Abort above this many patterns");

  // templatize
  fs::path tpl_in;
  fs::path tpl_patterns;
  fs::path tpl_out;
  std::optional<fs::path> tpl_dot;
  std::optional<fs::path> tpl_stats;
  std::size_t max_templates = 16;
  auto* tpl = app.add_subcommand("templatize", "Compress a graph with templates");
  tpl->add_option("graph", tpl_in, "Graph JSON or template library")->required();
  tpl->add_option("patterns", tpl_patterns, "Pattern report JSON")->required();
  tpl->add_option("--out", tpl_out, "Template library JSON")->required();
  tpl->add_option("--max-templates", max_templates, "Stop after this many templates");
  tpl->add_option("--mode", mode, "exact or generalized");
  tpl->add_option("--taxonomy", taxonomy_path, "Taxonomy JSON (generalized mode)");
  tpl->add_option("--dot", tpl_dot, "Also write a DOT view with one color per instance");
  tpl->add_option("--stats", tpl_stats, "Compression statistics JSON (default: stdout)");

  // expand
  fs::path exp_in;
  fs::path exp_out;
  auto* exp = app.add_subcommand("expand", "Expand a template library back into a graph");
  exp->add_option("library", exp_in, "Template library JSON")->required();
  exp->add_option("--out", exp_out, "Graph JSON")->required();

  // export
  fs::path export_in;
  fs::path export_out;
  std::string format = "json";
  auto* exp_cmd = app.add_subcommand("export", "Write a graph or library as json, graphml or dot");
  exp_cmd->add_option("input", export_in, "Graph JSON or template library")->required();
  exp_cmd->add_option("--format", format, "json, graphml or dot");
  exp_cmd->add_option("--out", export_out, "Output file")->required();

  // pipeline
  fs::path config_path;
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage from a config file");
  pipeline->add_option("--config", config_path, "key = value config file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest) {
      fs::create_directories(ingest_dir);
      for (const auto& file : ingest_files) {
        PropertyGraph g = with_file(file, [&] { return ingest_file(file, threshold, cutoff); });
        const fs::path target = ingest_dir / (file.stem().string() + ".graph.json");
        write_graph(target, g);
        out << target.string() << '\n';
      }
    } else if (*merge) {
      MergePolicy policy;
      policy.semantic_merge = !no_semantic;
      policy.case_fold = !keep_case;
      policy.trim = !no_trim;
      policy.priority = MergePolicy::parse_priority(priority);
      const Taxonomy taxonomy = load_taxonomy(taxonomy_path);
      std::vector<PropertyGraph> parts;
      for (const auto& p : merge_parts) parts.push_back(with_file(p, [&] { return read_graph(p); }));
      MergeResult result = merge_graphs(parts, taxonomy, policy);
      write_graph(merge_out, result.graph);
      if (report_path) {
        write_json_file(*report_path, result.report.to_json());
      } else {
        out << result.report.to_json().dump(2) << '\n';
      }
    } else if (*mine) {
      mining.mode = match_mode_from_string(mode);
      mining.tiers = TierSet::parse(tiers);
      mining.validate();
      const Taxonomy taxonomy = load_taxonomy(taxonomy_path);
      const Taxonomy* tax = taxonomy_path ? &taxonomy : nullptr;
      const GraphOrLibrary input = with_file(mine_in, [&] { return load_graph_or_library(mine_in); });
      const auto patterns = mine_frequent(input.graph, mining, tax);
      write_json_file(mine_out, patterns_to_json(patterns, mining));
      out << patterns.size() << " patterns\n";
    } else if (*tpl) {
      const Taxonomy taxonomy = load_taxonomy(taxonomy_path);
      TemplateParams params{max_templates, match_mode_from_string(mode), taxonomy_path ? &taxonomy : nullptr};
      GraphOrLibrary input = with_file(tpl_in, [&] { return load_graph_or_library(tpl_in); });
      const auto patterns = with_file(tpl_patterns, [&] { return patterns_from_json(read_json_file(tpl_patterns)); });
      const PropertyGraph before = input.library ? expand(*input.library) : input.graph;
      TemplatizedGraph result = input.library ? templatize(std::move(*input.library), patterns, params)
                                              : templatize(input.graph, patterns, params);
      write_json_file(tpl_out, library_to_json(result));
      if (tpl_dot) write_text_file(*tpl_dot, instances_to_dot(result));
      const json stats = compression_stats(before, result).to_json();
      if (tpl_stats) {
        write_json_file(*tpl_stats, stats);
      } else {
        out << stats.dump(2) << '\n';
      }
    } else if (*exp) {
      const TemplatizedGraph library = with_file(exp_in, [&] { return library_from_json(read_json_file(exp_in)); });
      write_graph(exp_out, expand(library));
    } else if (*exp_cmd) {
      check_format(format);
      const GraphOrLibrary input = with_file(export_in, [&] { return load_graph_or_library(export_in); });
      write_export(export_out, format, input);
    } else if (*pipeline) {
      run_pipeline(PipelineConfig::load(config_path), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace dtgraph::cli
