#pragma once

// Subcommands of the command-line tool. Each reads one INI configuration,
// writes its outputs plus manifest.ini into the output directory, and maps
// failures to exit codes. A manifest is itself a valid configuration that
// reproduces the CSV outputs byte for byte.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace akpz::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kResourceGuard = 4,
};

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;  // overrides <subcommand>.seed
  int threads = 1;
};

/// Typed access to a configuration tree. Every value read, including
/// defaults, is recorded so the resolved tree can be written as a manifest.
class Settings {
 public:
  explicit Settings(boost::property_tree::ptree input);
  /// Parses an INI file; syntax errors carry the line number.
  static Settings load(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  std::uint64_t seed(const std::string& key) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<long> integers(const std::string& key, const std::vector<long>& fallback) const;

  /// Replaces a value in the input (used for --seed).
  void set(const std::string& key, const std::string& value);
  /// Throws InputError naming the first key of the input that was never read
  /// (the manifest section is ignored).
  void check_all_used() const;
  const boost::property_tree::ptree& resolved() const { return resolved_; }

 private:
  std::optional<std::string> raw(const std::string& key) const;
  void record(const std::string& key, const std::string& value) const;

  boost::property_tree::ptree input_;
  mutable boost::property_tree::ptree resolved_;
  mutable std::set<std::string> used_;
};

/// Writes `settings.resolved()` plus a [manifest] section (subcommand,
/// version, outputs) to out/manifest.ini.
void write_manifest(const std::filesystem::path& out, const std::string& subcommand,
                    const Settings& settings, const std::vector<std::string>& outputs);

void cmd_simulate(Settings& s, const RunOptions& opt, std::ostream& log);
void cmd_gibbs(Settings& s, const RunOptions& opt, std::ostream& log);
void cmd_pde(Settings& s, const RunOptions& opt, std::ostream& log);
void cmd_hydro(Settings& s, const RunOptions& opt, std::ostream& log);
void cmd_snapshot(Settings& s, const RunOptions& opt, std::ostream& log);

/// Loads the configuration, applies the seed override, runs the subcommand
/// and returns its exit code; diagnostics go to `err`.
int run_subcommand(const std::string& name, const RunOptions& opt, std::ostream& log,
                   std::ostream& err);

}  // namespace akpz::cli
