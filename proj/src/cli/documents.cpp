#include "margulis/cli/documents.hpp"

#include <fstream>
#include <sstream>

namespace margulis::cli {

namespace {

[[noreturn]] void parse_fail(const std::string &what) {
  throw Error(ErrorCode::ParseError, what);
}

template <std::size_t N>
std::array<double, N> read_array(const Json &j, const std::string &what) {
  if (!j.is_array() || j.size() != N)
    parse_fail(what + " must be an array of " + std::to_string(N) +
               " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_number())
      parse_fail(what + " contains a non-number");
    out[i] = j[i].get<double>();
    if (!std::isfinite(out[i]))
      parse_fail(what + " contains a non-finite entry");
  }
  return out;
}

Json read_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    parse_fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

} // namespace

Json to_json(const GroupDocument &doc) {
  Json j;
  j["label"] = doc.label;
  j["rank"] = doc.rank;
  j["generators"] = Json::array();
  for (const auto &g : doc.generators)
    j["generators"].push_back(g);
  j["relators"] = doc.relators;
  if (doc.genus)
    j["genus"] = *doc.genus;
  return j;
}

Json to_json(const CocycleDocument &doc) {
  Json j;
  j["label"] = doc.label;
  j["values"] = Json::array();
  for (const auto &v : doc.values)
    j["values"].push_back(v);
  return j;
}

GroupDocument group_from_json(const Json &j) {
  if (!j.is_object())
    parse_fail("group document must be a JSON object");
  GroupDocument doc;
  try {
    doc.label = j.value("label", std::string());
    if (!j.contains("generators") || !j["generators"].is_array())
      parse_fail("group document needs a \"generators\" array");
    for (const auto &g : j["generators"])
      doc.generators.push_back(read_array<4>(g, "generator"));
    doc.rank = j.value("rank", static_cast<int>(doc.generators.size()));
    if (j.contains("relators"))
      doc.relators = j["relators"].get<std::vector<std::string>>();
    if (j.contains("genus") && !j["genus"].is_null())
      doc.genus = j["genus"].get<int>();
  } catch (const nlohmann::json::exception &e) {
    parse_fail(std::string("group document: ") + e.what());
  }
  if (doc.rank != static_cast<int>(doc.generators.size()))
    parse_fail("rank " + std::to_string(doc.rank) + " does not match " +
               std::to_string(doc.generators.size()) + " generators");
  if (doc.rank < 1 || doc.rank > 26)
    parse_fail("rank must be between 1 and 26");
  return doc;
}

CocycleDocument cocycle_from_json(const Json &j) {
  if (!j.is_object())
    parse_fail("cocycle document must be a JSON object");
  CocycleDocument doc;
  try {
    doc.label = j.value("label", std::string());
    if (!j.contains("values") || !j["values"].is_array())
      parse_fail("cocycle document needs a \"values\" array");
    for (const auto &v : j["values"])
      doc.values.push_back(read_array<3>(v, "cocycle value"));
  } catch (const nlohmann::json::exception &e) {
    parse_fail(std::string("cocycle document: ") + e.what());
  }
  return doc;
}

GroupDocument read_group(const std::filesystem::path &path) {
  return group_from_json(read_file(path));
}

CocycleDocument read_cocycle(const std::filesystem::path &path) {
  return cocycle_from_json(read_file(path));
}

void write_json(const std::filesystem::path &path, const Json &j) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Representationd to_representation(const GroupDocument &doc) {
  Representationd rep;
  for (const auto &g : doc.generators)
    rep.gens.emplace_back(g[0], g[1], g[2], g[3]);
  for (const auto &r : doc.relators) {
    Word w = parse_word(r);
    if (max_rank(w) > doc.rank)
      parse_fail("relator " + r + " uses a generator beyond rank " +
                 std::to_string(doc.rank));
    rep.relators.push_back(std::move(w));
  }
  for (const Word &r : rep.relators) {
    const double defect =
        sign_identity_defect(evaluate<double>(r.letters(), rep.span()));
    if (defect > kRelatorTol) {
      std::ostringstream os;
      os << "relator " << to_string(r) << " evaluates " << defect
         << " away from +-I";
      throw Error(ErrorCode::NotUnimodular, os.str());
    }
  }
  return rep;
}

GroupDocument to_document(const Representationd &rep, std::string label,
                          std::optional<int> genus) {
  GroupDocument doc;
  doc.label = std::move(label);
  doc.rank = rep.rank();
  for (const auto &g : rep.gens)
    doc.generators.push_back({g.a(), g.b(), g.c(), g.d()});
  for (const auto &r : rep.relators)
    doc.relators.push_back(to_string(r));
  doc.genus = genus;
  return doc;
}

Cocycled to_cocycle(const CocycleDocument &doc, const Representationd &rep) {
  if (static_cast<int>(doc.values.size()) != rep.rank())
    parse_fail("cocycle has " + std::to_string(doc.values.size()) +
               " values but the group has rank " +
               std::to_string(rep.rank()));
  Cocycled c;
  for (const auto &v : doc.values)
    c.values.emplace_back(v[0], v[1], v[2]);
  const AffineDeformationd d(rep, c);
  for (const Word &r : rep.relators) {
    const double defect = cocycle_eval(d, r).lpNorm<Eigen::Infinity>();
    if (defect > kRelatorTol) {
      std::ostringstream os;
      os << "cocycle violates relator " << to_string(r) << " by " << defect;
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }
  return c;
}

CocycleDocument to_document(const Cocycled &c, std::string label) {
  CocycleDocument doc;
  doc.label = std::move(label);
  for (const auto &v : c.values)
    doc.values.push_back({v(0), v(1), v(2)});
  return doc;
}

} // namespace margulis::cli
