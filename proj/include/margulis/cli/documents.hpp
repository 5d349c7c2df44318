#pragma once

// JSON documents exchanged by margulis-lab.
//
//   group:   {"label": ..., "rank": r, "generators": [[a,b,c,d], ...],
//             "relators": ["abcdABCD"], "genus": 2}
//   cocycle: {"label": ..., "values": [[x1,x2,x3], ...]}
//
// "genus" is optional and only used by the systole command.

#include "margulis/deform.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace margulis::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct GroupDocument {
  std::string label;
  int rank = 0;
  std::vector<std::array<double, 4>> generators;
  std::vector<std::string> relators;
  std::optional<int> genus;
};

struct CocycleDocument {
  std::string label;
  std::vector<std::array<double, 3>> values;
};

Json to_json(const GroupDocument &doc);
Json to_json(const CocycleDocument &doc);
GroupDocument group_from_json(const Json &j);
CocycleDocument cocycle_from_json(const Json &j);

GroupDocument read_group(const std::filesystem::path &path);
CocycleDocument read_cocycle(const std::filesystem::path &path);
void write_json(const std::filesystem::path &path, const Json &j);

/// Structural and numeric checks: determinants, relators at +-I.
Representationd to_representation(const GroupDocument &doc);
GroupDocument to_document(const Representationd &rep, std::string label,
                          std::optional<int> genus = std::nullopt);

/// Checks the value count against the rank and, when relators exist, that
/// every relator constraint vanishes within kRelatorTol.
Cocycled to_cocycle(const CocycleDocument &doc, const Representationd &rep);
CocycleDocument to_document(const Cocycled &c, std::string label);

} // namespace margulis::cli
