// margulis-lab: Margulis invariants of affine deformations of surface and
// free groups.
//
//   margulis-lab catalog [--emit <preset>] [--emit-cocycle <kind> --group f]
//   margulis-lab alpha    --group g.json --cocycle u.json --word aB
//   margulis-lab scan     --group g.json --cocycle u.json --radius 6
//   margulis-lab mess-demo --samples 50 --radius 12 --seed 1
//   margulis-lab lemma1   --group g.json --cocycle u.json --word ab --h 1e-4
//   margulis-lab systole  --group g.json --radius 8
//
// Exit codes: 0 ok, 2 parse failure, 3 numeric-domain failure, 4 resource
// limit.

#include "margulis/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace margulis;
using namespace margulis::cli;

namespace {

const std::map<std::string, Format> kFormats{{"table", Format::Table},
                                             {"json", Format::Json}};
const std::map<std::string, CocycleKind> kKinds{
    {"log", CocycleKind::Log},
    {"coboundary", CocycleKind::Coboundary},
    {"random", CocycleKind::Random}};

void add_format(CLI::App *cmd, Format &format) {
  cmd->add_option("--format", format, "output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->option_text("table|json");
}

void add_common(CLI::App *cmd, CommonArgs &args) {
  cmd->add_option("--group", args.group, "group document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--cocycle", args.cocycle, "cocycle document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  add_format(cmd, args.format);
  cmd->add_option("--max-words", args.max_words, "enumeration cap");
  cmd->add_option("--workers", args.workers, "scan threads");
  cmd->add_option("--verify-radius", args.verify_radius,
                  "radius of the hyperbolicity check run before experiments");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Margulis invariants of affine deformations"};
  app.name("margulis-lab");
  app.require_subcommand(1);

  CatalogArgs catalog;
  std::vector<double> vec;
  auto *cat = app.add_subcommand("catalog", "list or emit preset groups");
  add_format(cat, catalog.format);
  cat->add_option("--emit", catalog.emit,
                  "print the group document of a preset");
  cat->add_option("--mu", catalog.mu, "cyclic preset eigenvalue, 0<mu<1");
  cat->add_option("--s", catalog.s, "schottky preset boost");
  cat->add_option("--emit-cocycle", catalog.emit_cocycle,
                  "print a cocycle document: log, coboundary or random")
      ->transform(CLI::CheckedTransformer(kKinds, CLI::ignore_case));
  cat->add_option("--group", catalog.group, "group document for --emit-cocycle");
  cat->add_option("--seed", catalog.seed, "seed for random cocycles");
  cat->add_option("--vector", vec, "coboundary vector x1 x2 x3")
      ->expected(3);

  AlphaArgs alpha;
  auto *al = app.add_subcommand("alpha", "Margulis invariant of one word");
  add_common(al, alpha);
  al->add_option("--word", alpha.word, "word, e.g. abAB")->required();

  ScanArgs scan;
  auto *sc = app.add_subcommand("scan", "sign scan over conjugacy classes");
  add_common(sc, scan);
  sc->add_option("--radius", scan.radius, "maximum cyclically reduced length");
  sc->add_option("--tol", scan.zero_tol, "zero tolerance per unit length");

  MessArgs mess;
  auto *ms = app.add_subcommand("mess-demo",
                                "sign scans of random genus-2 deformations");
  ms->add_option("--samples", mess.samples, "number of random classes");
  ms->add_option("--radius", mess.radius, "scan radius per sample");
  ms->add_option("--rescan-radius", mess.rescan_radius,
                 "radius for re-scanning single-signed samples");
  ms->add_option("--seed", mess.seed, "master seed");
  add_format(ms, mess.format);
  ms->add_option("--max-words", mess.max_words, "enumeration cap");
  ms->add_option("--workers", mess.workers, "scan threads");

  Lemma1Args lemma;
  auto *lm = app.add_subcommand(
      "lemma1", "finite differences of trace and length along the path");
  lm->set_help_flag("--help", "Print this help message and exit");
  add_common(lm, lemma);
  lm->add_option("--word", lemma.word, "word, e.g. abAB")->required();
  lm->add_option("--h", lemma.h, "finite-difference step");

  SystoleArgs sys;
  auto *sy = app.add_subcommand("systole", "shortest closed geodesic in a ball");
  sy->add_option("--group", sys.group, "group document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sy->add_option("--radius", sys.radius, "maximum cyclically reduced length");
  add_format(sy, sys.format);
  sy->add_option("--max-words", sys.max_words, "enumeration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*cat) {
      if (!vec.empty())
        catalog.vector = Vec21d(vec[0], vec[1], vec[2]);
      return cmd_catalog(catalog, std::cout);
    }
    if (*al)
      return cmd_alpha(alpha, std::cout);
    if (*sc)
      return cmd_scan(scan, std::cout);
    if (*ms)
      return cmd_mess_demo(mess, std::cout);
    if (*lm)
      return cmd_lemma1(lemma, std::cout);
    if (*sy)
      return cmd_systole(sys, std::cout);
  } catch (const Error &e) {
    std::cerr << "margulis-lab: " << to_string(e.code()) << ": " << e.what()
              << '\n';
    return exit_code(e.code());
  } catch (const std::exception &e) {
    std::cerr << "margulis-lab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
