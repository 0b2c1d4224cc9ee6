#pragma once

// Plumbing shared by the command-line tool: run manifests, image output and
// the pre-training defaults per network kind.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "latent_bridge/perception.hpp"
#include "latent_bridge/toyfaces.hpp"

namespace lb::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to re-run a command: written next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::string config_path;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> artifacts;  // path -> hex digest of the file
  std::map<std::string, std::string> notes;      // flags and metrics worth keeping
  double wall_seconds = 0.0;
  std::string tool_version = kToolVersion;

  void add_artifact(const std::filesystem::path& path);
  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
  void write(const std::filesystem::path& path) const;
};

/// Binary PPM (P6), 8 bits per channel, values rounded from [0, 1].
void write_ppm(const std::filesystem::path& path, const toyfaces::Image& image);
toyfaces::Image read_ppm(const std::filesystem::path& path);

struct PretrainDefaults {
  std::size_t samples;
  int epochs;
  double lr;
};

PretrainDefaults pretrain_defaults(perception::NetKind kind);

/// Seeds of a kind's corpus and initialization, derived from the master seed.
std::uint64_t corpus_seed(std::uint64_t master, perception::NetKind kind);
std::uint64_t init_seed(std::uint64_t master, perception::NetKind kind);

}  // namespace lb::cli
