#pragma once

// Subcommands of margulis-lab. Each writes its output to `out` and returns
// the process exit code; failures surface as margulis::Error and are mapped
// by exit_code().

#include "margulis/cli/documents.hpp"
#include "margulis/invariant.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace margulis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitResource = 4;

int exit_code(ErrorCode code);

enum class Format { Table, Json };

// ---------------------------------------------------------------------------
// Preset catalog.

struct PresetInfo {
  std::string name;
  std::string usage;
  std::string description;
};

/// The three built-in groups: cyclic, schottky, genus2.
std::vector<PresetInfo> preset_catalog();

/// Builds a preset; genus2 is verified at radius 6 before it is returned.
GroupDocument make_preset(const std::string &name, double mu = 0.5,
                          double s = 1.5);

enum class CocycleKind { Log, Coboundary, Random };

/// Log: u_i = psi(log(+-g_i)); Coboundary: delta v; Random: unit-norm
/// combination of a Z^1 basis (excluding coboundaries when relators exist).
CocycleDocument make_cocycle(const GroupDocument &group, CocycleKind kind,
                             std::uint64_t seed = 1,
                             const Vec21d &v = Vec21d(1, 0, 0));

struct CatalogArgs {
  Format format = Format::Table;
  std::optional<std::string> emit;
  double mu = 0.5;
  double s = 1.5;
  std::optional<CocycleKind> emit_cocycle;
  std::optional<std::string> group;
  std::uint64_t seed = 1;
  Vec21d vector = Vec21d(1, 0, 0);
};

int cmd_catalog(const CatalogArgs &args, std::ostream &out);

// ---------------------------------------------------------------------------
// Experiments.

struct CommonArgs {
  std::string group;
  std::string cocycle;
  Format format = Format::Table;
  std::uint64_t max_words = kDefaultMaxWords;
  int workers = 1;
  int verify_radius = 6;
};

struct AlphaArgs : CommonArgs {
  std::string word;
};

int cmd_alpha(const AlphaArgs &args, std::ostream &out);

struct ScanArgs : CommonArgs {
  int radius = 6;
  double zero_tol = kZeroTol;
};

Json scan_report_json(const SignScanReport &r);
int cmd_scan(const ScanArgs &args, std::ostream &out);

struct MessArgs {
  int samples = 50;
  int radius = 12;
  int rescan_radius = 16;
  std::uint64_t seed = 1;
  Format format = Format::Json;
  std::uint64_t max_words = kDefaultMaxWords;
  int workers = 1;
};

struct MessSample {
  int index = 0;
  std::uint64_t seed = 0;
  bool control = false;
  /// Radius at which both signs had been seen, if they were.
  std::optional<int> first_mixed_radius;
  int scanned_radius = 0;
  bool rescanned = false;
  bool unresolved = false;
  std::string note;
  SignScanReport report;
};

struct MessSummary {
  int samples = 0;
  int mixed = 0;
  int max_first_mixed_radius = 0;
  std::vector<int> single_signed;
  std::vector<MessSample> runs;
  MessSample control;
  int z1_dimension = 0;
  int b1_rank = 0;
  int h1_dimension = 0;
  double preset_length = 0.0;

  bool all_mixed() const { return mixed == samples; }
};

MessSummary mess_demo(const MessArgs &args);
Json mess_json(const MessArgs &args, const MessSummary &summary);
int cmd_mess_demo(const MessArgs &args, std::ostream &out);

struct Lemma1Args : CommonArgs {
  std::string word;
  double h = kDefaultStep;
};

int cmd_lemma1(const Lemma1Args &args, std::ostream &out);

struct SystoleArgs {
  std::string group;
  int radius = 8;
  Format format = Format::Table;
  std::uint64_t max_words = kDefaultMaxWords;
};

struct SystoleResult {
  double min_length = 0.0;
  Word witness;
  std::uint64_t words = 0;
  std::uint64_t trivial = 0;
  std::optional<int> genus;
  std::optional<double> bound;
  bool violation = false;
};

SystoleResult systole(const Representationd &rep, int radius,
                      std::optional<int> genus,
                      std::uint64_t max_words = kDefaultMaxWords);
int cmd_systole(const SystoleArgs &args, std::ostream &out);

} // namespace margulis::cli
