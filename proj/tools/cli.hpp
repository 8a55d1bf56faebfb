#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dtgraph/ingest.hpp"
#include "dtgraph/merge.hpp"
#include "dtgraph/miner.hpp"
#include "dtgraph/templates.hpp"

namespace dtgraph::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2 };

struct PipelineConfig {
  std::optional<std::filesystem::path> plc;
  std::optional<std::filesystem::path> position;
  std::optional<std::filesystem::path> io;
  std::optional<std::filesystem::path> taxonomy;
  std::filesystem::path out_dir = "out";
  double threshold = kDefaultArrangementThreshold;
  double cutoff = kDefaultIoCutoff;
  MergePolicy merge;
  MiningParams mining;
  std::size_t max_templates = 16;
  std::vector<std::string> formats{"json"};

  /// Parses `key = value` lines; '#' starts a comment. Relative paths are
  /// taken relative to `base_dir`. Throws Validation on unknown keys or bad
  /// values.
  static PipelineConfig parse(const std::string& text, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);
  /// Referenced files exist, at least one source is given, parameters are valid.
  void validate() const;
};

/// Runs one `dtgraph` invocation. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtgraph::cli
