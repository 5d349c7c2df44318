#include "margulis/cli/commands.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace margulis::cli {

int exit_code(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError:
  case ErrorCode::IndexOutOfRange:
  case ErrorCode::InvalidArgument:
    return kExitParse;
  case ErrorCode::NotHyperbolic:
  case ErrorCode::NegativeTrace:
  case ErrorCode::NotUnimodular:
  case ErrorCode::DegenerateRepresentation:
    return kExitDomain;
  case ErrorCode::ResourceLimit:
    return kExitResource;
  }
  return 1;
}

namespace {

constexpr int kPresetVerifyRadius = 6;

std::string fmt12(double x) {
  if (std::isnan(x))
    return "undefined";
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

Json word_json(const Word &w) { return to_string(w); }

// Infinite extremes of an empty scan serialize as null.
Json number_or_null(double x) {
  if (!std::isfinite(x))
    return nullptr;
  return x;
}

struct Loaded {
  GroupDocument group_doc;
  CocycleDocument cocycle_doc;
  AffineDeformationd deformation;
};

Representationd load_group(const GroupDocument &doc, int verify_radius) {
  Representationd rep = to_representation(doc);
  if (verify_radius > 0)
    require_valid(rep, verify_radius);
  return rep;
}

Loaded load(const CommonArgs &args) {
  GroupDocument g = read_group(args.group);
  CocycleDocument c = read_cocycle(args.cocycle);
  Representationd rep = load_group(g, args.verify_radius);
  Cocycled u = to_cocycle(c, rep);
  return {std::move(g), std::move(c), AffineDeformationd(rep, u)};
}

Word parse_word_for(const std::string &text, int rank) {
  Word w = parse_word(text);
  if (max_rank(w) > rank)
    throw Error(ErrorCode::ParseError, "word " + text +
                                           " uses a generator beyond rank " +
                                           std::to_string(rank));
  if (w.empty())
    throw Error(ErrorCode::NotHyperbolic, "the identity is not hyperbolic");
  return w;
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<PresetInfo> preset_catalog() {
  return {
      {"cyclic", "cyclic --mu <0<mu<1>",
       "one generator diag(mu, 1/mu); free of rank 1"},
      {"schottky", "schottky --s <boost>",
       "two generators: diag(e^s, e^-s) and its conjugate by the quarter "
       "turn about i; no relators; not certified discrete (free and "
       "discrete only for s large)"},
      {"genus2", "genus2",
       "Bolza-type octagon group: four translations of length "
       "2 arccosh(1+sqrt 2) along axes at angles k pi/4, relator abcdABCD"},
  };
}

GroupDocument make_preset(const std::string &name, double mu, double s) {
  if (name == "cyclic") {
    std::ostringstream label;
    label << std::setprecision(17) << "cyclic mu=" << mu;
    return to_document(cyclic_preset(mu), label.str());
  }
  if (name == "schottky") {
    std::ostringstream label;
    label << std::setprecision(17)
          << "schottky s=" << s << " (not certified discrete)";
    return to_document(schottky_preset(s), label.str());
  }
  if (name == "genus2") {
    Representationd rep = genus2_preset<double>();
    require_valid(rep, kPresetVerifyRadius);
    return to_document(rep, "genus2 octagon", 2);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

CocycleDocument make_cocycle(const GroupDocument &group, CocycleKind kind,
                             std::uint64_t seed, const Vec21d &v) {
  const Representationd rep = to_representation(group);
  Cocycled u;
  std::string label;
  switch (kind) {
  case CocycleKind::Log:
    for (const auto &g : rep.gens)
      u.values.push_back(psi(log_hyperbolic(g.trace() > 0 ? g : -g)));
    label = "log of generators";
    break;
  case CocycleKind::Coboundary: {
    u = coboundary(rep, v);
    std::ostringstream os;
    os << std::setprecision(17) << "coboundary of (" << v(0) << ", " << v(1)
       << ", " << v(2) << ")";
    label = os.str();
    break;
  }
  case CocycleKind::Random:
    u = random_cocycle<double>(cohomology_complement(rep), seed);
    label = "random class, seed " + std::to_string(seed);
    break;
  }
  return to_document(to_cocycle(to_document(u, ""), rep), label);
}

int cmd_catalog(const CatalogArgs &args, std::ostream &out) {
  if (args.emit_cocycle) {
    if (!args.group)
      throw Error(ErrorCode::InvalidArgument,
                  "--emit-cocycle needs --group <path>");
    const GroupDocument g = read_group(*args.group);
    out << to_json(make_cocycle(g, *args.emit_cocycle, args.seed, args.vector))
               .dump(2)
        << '\n';
    return kExitOk;
  }
  if (args.emit) {
    out << to_json(make_preset(*args.emit, args.mu, args.s)).dump(2) << '\n';
    return kExitOk;
  }
  const auto presets = preset_catalog();
  if (args.format == Format::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["presets"] = Json::array();
    for (const auto &p : presets)
      j["presets"].push_back(
          {{"name", p.name}, {"usage", p.usage}, {"description", p.description}});
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto &p : presets)
    out << std::left << std::setw(26) << p.usage << p.description << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_alpha(const AlphaArgs &args, std::ostream &out) {
  const Loaded in = load(args);
  const Word w = parse_word_for(args.word, in.deformation.rep.rank());
  const SL2d g = evaluate<double>(w.letters(), in.deformation.rep.span());
  require_hyperbolic(g);
  const double alpha = alpha_trace(in.deformation, w);
  const double length = displacement_length(g);
  if (args.format == Format::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "alpha";
    j["group"] = in.group_doc.label;
    j["cocycle"] = in.cocycle_doc.label;
    j["word"] = to_string(w);
    j["alpha"] = alpha;
    j["trace"] = g.trace();
    j["length"] = length;
    out << j.dump(2) << '\n';
  } else {
    out << "word    " << to_string(w) << '\n'
        << "alpha   " << fmt12(alpha) << '\n'
        << "trace   " << fmt12(g.trace()) << '\n'
        << "length  " << fmt12(length) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

Json scan_report_json(const SignScanReport &r) {
  Json j;
  j["radius"] = r.radius;
  j["count"] = r.count;
  j["near_parabolic_excluded"] = r.near_parabolic;
  j["trivial_excluded"] = r.trivial;
  j["min_alpha"] = number_or_null(r.min_alpha);
  j["argmin_word"] = word_json(r.argmin_word);
  j["max_alpha"] = number_or_null(r.max_alpha);
  j["argmax_word"] = word_json(r.argmax_word);
  j["has_positive"] = r.has_positive;
  j["has_negative"] = r.has_negative;
  j["zero_count"] = r.zero_count;
  j["zero_words"] = Json::array();
  for (const auto &w : r.zero_words)
    j["zero_words"].push_back(word_json(w));
  j["max_abs_alpha_per_length"] = r.max_scaled_abs_alpha;
  j["verdict"] = to_string(r.verdict);
  return j;
}

int cmd_scan(const ScanArgs &args, std::ostream &out) {
  if (args.radius < 1)
    throw Error(ErrorCode::InvalidArgument, "--radius must be >= 1");
  const Loaded in = load(args);
  ScanOptions opts;
  opts.max_length = args.radius;
  opts.zero_tol = args.zero_tol;
  opts.max_words = args.max_words;
  opts.workers = args.workers;
  const SignScanReport r = sign_scan(in.deformation, opts);

  if (args.format == Format::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "scan";
    j["parameters"] = {
        {"group", in.group_doc.label},
        {"cocycle", in.cocycle_doc.label},
        {"radius", args.radius},
        {"zero_tol", args.zero_tol},
        {"zero_band", "zero_tol * (1 + word length)"},
        {"near_parabolic_threshold", kNearParabolic},
        {"hyperbolic_tol", kHyperbolicTol},
        {"verify_radius", args.verify_radius},
        {"max_words", args.max_words},
        {"max_zero_words", opts.max_zero_words},
    };
    j["result"] = scan_report_json(r);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "group          " << in.group_doc.label << '\n'
      << "cocycle        " << in.cocycle_doc.label << '\n'
      << "radius         " << r.radius << '\n'
      << "classes        " << r.count << '\n'
      << "near-parabolic " << r.near_parabolic << '\n'
      << "min alpha      " << fmt12(r.min_alpha) << "  ("
      << to_string(r.argmin_word) << ")\n"
      << "max alpha      " << fmt12(r.max_alpha) << "  ("
      << to_string(r.argmax_word) << ")\n"
      << "zero words     " << r.zero_count << '\n'
      << "verdict        " << to_string(r.verdict) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

namespace {

// Scans lengths lo..hi one at a time, stopping once both signs were seen.
void scan_until_mixed(const AffineDeformationd &d, MessSample &sample, int lo,
                      int hi, const MessArgs &args) {
  for (int len = lo; len <= hi; ++len) {
    ScanOptions opts;
    opts.min_length = len;
    opts.max_length = len;
    opts.max_words = args.max_words;
    opts.workers = args.workers;
    const SignScanReport part = sign_scan(d, opts);
    sample.report.merge(part, opts.max_zero_words);
    sample.report.radius = len;
    sample.report.finalize();
    sample.scanned_radius = len;
    if (sample.report.has_positive && sample.report.has_negative) {
      sample.first_mixed_radius = len;
      return;
    }
  }
}

Json sample_json(const MessSample &s) {
  Json j;
  j["index"] = s.index;
  j["seed"] = s.seed;
  j["first_mixed_radius"] =
      s.first_mixed_radius ? Json(*s.first_mixed_radius) : Json(nullptr);
  j["scanned_radius"] = s.scanned_radius;
  j["rescanned"] = s.rescanned;
  j["unresolved"] = s.unresolved;
  if (!s.note.empty())
    j["note"] = s.note;
  j["scan"] = scan_report_json(s.report);
  return j;
}

} // namespace

MessSummary mess_demo(const MessArgs &args) {
  if (args.samples < 1)
    throw Error(ErrorCode::InvalidArgument, "--samples must be >= 1");
  if (args.radius < 1)
    throw Error(ErrorCode::InvalidArgument, "--radius must be >= 1");
  const Representationd rep = genus2_preset<double>();
  require_valid(rep, kPresetVerifyRadius);

  MessSummary summary;
  summary.samples = args.samples;
  summary.z1_dimension = cocycle_space(rep).dimension();
  summary.b1_rank = coboundary_rank(rep);
  const MatXd classes = cohomology_complement(rep);
  summary.h1_dimension = static_cast<int>(classes.cols());
  summary.preset_length = displacement_length(rep.gens.front());

  NormalStream master(args.seed);
  for (int i = 0; i < args.samples; ++i) {
    MessSample s;
    s.index = i;
    s.seed = master.next_u64();
    const AffineDeformationd d(rep, random_cocycle<double>(classes, s.seed));
    scan_until_mixed(d, s, 1, args.radius, args);
    if (!s.first_mixed_radius) {
      s.rescanned = true;
      try {
        scan_until_mixed(d, s, args.radius + 1, args.rescan_radius, args);
      } catch (const Error &e) {
        if (e.code() != ErrorCode::ResourceLimit)
          throw;
        s.note = e.what();
      }
      if (!s.first_mixed_radius)
        s.unresolved = true;
    }
    if (s.first_mixed_radius) {
      ++summary.mixed;
      summary.max_first_mixed_radius =
          std::max(summary.max_first_mixed_radius, *s.first_mixed_radius);
    } else {
      summary.single_signed.push_back(i);
    }
    summary.runs.push_back(std::move(s));
  }

  // Control: a coboundary direction has alpha = 0 on every word.
  MessSample &c = summary.control;
  c.control = true;
  c.index = -1;
  c.seed = master.next_u64();
  NormalStream vrng(c.seed);
  Vec21d v(vrng.normal(), vrng.normal(), vrng.normal());
  v.normalize();
  const AffineDeformationd dc(rep, coboundary(rep, v));
  ScanOptions opts;
  opts.max_length = std::min(args.radius, 4);
  opts.max_words = args.max_words;
  opts.workers = args.workers;
  c.report = sign_scan(dc, opts);
  c.scanned_radius = opts.max_length;
  return summary;
}

Json mess_json(const MessArgs &args, const MessSummary &summary) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "mess-demo";
  j["parameters"] = {
      {"samples", args.samples},
      {"radius", args.radius},
      {"rescan_radius", args.rescan_radius},
      {"seed", args.seed},
      {"rng", kRngName},
      {"zero_tol", kZeroTol},
      {"zero_band", "zero_tol * (1 + word length)"},
      {"near_parabolic_threshold", kNearParabolic},
      {"max_words", args.max_words},
  };
  j["preset"] = {{"name", "genus2"},
                 {"relator", kGenus2Relator},
                 {"generator_length", summary.preset_length},
                 {"verify_radius", kPresetVerifyRadius}};
  j["cohomology"] = {{"z1_dimension", summary.z1_dimension},
                     {"b1_rank", summary.b1_rank},
                     {"h1_dimension", summary.h1_dimension}};
  j["samples"] = Json::array();
  for (const auto &s : summary.runs)
    j["samples"].push_back(sample_json(s));
  Json control = sample_json(summary.control);
  control.erase("first_mixed_radius");
  control.erase("rescanned");
  control.erase("unresolved");
  j["control"] = control;
  j["summary"] = {
      {"samples", summary.samples},
      {"mixed", summary.mixed},
      {"fraction_mixed",
       static_cast<double>(summary.mixed) / summary.samples},
      {"max_first_mixed_radius", summary.max_first_mixed_radius},
      {"single_signed", summary.single_signed},
      {"control_verdict", to_string(summary.control.report.verdict)},
  };
  return j;
}

int cmd_mess_demo(const MessArgs &args, std::ostream &out) {
  const MessSummary summary = mess_demo(args);
  if (args.format == Format::Json) {
    out << mess_json(args, summary).dump(2) << '\n';
    return kExitOk;
  }
  out << "genus-2 preset: Z^1 dim " << summary.z1_dimension << ", B^1 rank "
      << summary.b1_rank << ", H^1 dim " << summary.h1_dimension << '\n';
  for (const auto &s : summary.runs) {
    out << "sample " << std::setw(3) << s.index << "  ";
    if (s.first_mixed_radius)
      out << "mixed at radius " << *s.first_mixed_radius;
    else
      out << "SINGLE-SIGNED through radius " << s.scanned_radius
          << (s.unresolved ? " (unresolved)" : "");
    out << "  min " << fmt12(s.report.min_alpha) << "  max "
        << fmt12(s.report.max_alpha) << '\n';
  }
  out << "control (coboundary): " << to_string(summary.control.report.verdict)
      << '\n'
      << "mixed " << summary.mixed << "/" << summary.samples << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_lemma1(const Lemma1Args &args, std::ostream &out) {
  if (!(args.h > 0))
    throw Error(ErrorCode::InvalidArgument, "--h must be positive");
  const Loaded in = load(args);
  const Word w = parse_word_for(args.word, in.deformation.rep.rank());
  const PathProbe<double> p = lemma1_probe(in.deformation, w, args.h);
  const double ratio = p.alpha != 0 ? p.ratio()
                                    : std::numeric_limits<double>::quiet_NaN();
  const double ratio_r = p.alpha != 0
                             ? p.ratio_richardson()
                             : std::numeric_limits<double>::quiet_NaN();
  const std::string sign = !p.sign_checked ? "n/a (|alpha| <= 10 h^2)"
                           : p.sign_agrees ? "yes"
                                           : "no";
  if (args.format == Format::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "lemma1";
    j["group"] = in.group_doc.label;
    j["cocycle"] = in.cocycle_doc.label;
    j["word"] = to_string(w);
    j["h"] = args.h;
    j["alpha"] = p.alpha;
    j["tau_prime_fd"] = p.tau_prime_fd;
    j["length_prime_fd"] = p.length_prime_fd;
    j["tau_prime_richardson"] = p.tau_prime_richardson;
    j["length_prime_richardson"] = p.length_prime_richardson;
    j["ratio"] = number_or_null(ratio);
    j["ratio_richardson"] = number_or_null(ratio_r);
    j["sign_checked"] = p.sign_checked;
    j["sign_agrees"] = p.sign_agrees;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << std::fixed << std::setprecision(9);
  out << "word                  " << to_string(w) << '\n'
      << "h                     " << args.h << '\n'
      << "alpha                 " << p.alpha << '\n'
      << "tau'_fd               " << p.tau_prime_fd << '\n'
      << "L'_fd                 " << p.length_prime_fd << '\n'
      << "L'_fd / alpha         " << fmt12(ratio) << '\n'
      << "Richardson ratio      " << fmt12(ratio_r) << '\n'
      << "sgn(τ') = sgn(α): " << sign << '\n';
  out.unsetf(std::ios::floatfield);
  return kExitOk;
}

// ---------------------------------------------------------------------------

SystoleResult systole(const Representationd &rep, int radius,
                      std::optional<int> genus, std::uint64_t max_words) {
  if (radius < 1)
    throw Error(ErrorCode::InvalidArgument, "--radius must be >= 1");
  SystoleResult r;
  r.min_length = std::numeric_limits<double>::infinity();
  r.genus = genus;
  EnumerationOptions opts;
  opts.max_length = radius;
  opts.max_words = max_words;
  for_each_conjugacy_rep(rep.rank(), opts, [&](std::span<const Letter> w) {
    const SL2d g = evaluate<double>(w, rep.span());
    if (!rep.relators.empty() && is_trivial_element(g)) {
      ++r.trivial;
      return;
    }
    require_hyperbolic(g);
    ++r.words;
    const double len = displacement_length(g);
    if (len < r.min_length) {
      r.min_length = len;
      r.witness = reduce(w);
    }
  });
  if (genus && *genus >= 2) {
    const double chi = 2.0 - 2.0 * *genus;
    r.bound = 2.0 * std::log(2.0 - 2.0 * chi);
    r.violation = r.min_length > *r.bound;
  }
  return r;
}

int cmd_systole(const SystoleArgs &args, std::ostream &out) {
  const GroupDocument doc = read_group(args.group);
  const Representationd rep = to_representation(doc);
  const SystoleResult r = systole(rep, args.radius, doc.genus, args.max_words);
  if (args.format == Format::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "systole";
    j["group"] = doc.label;
    j["radius"] = args.radius;
    j["classes"] = r.words;
    j["trivial_excluded"] = r.trivial;
    j["min_length"] = r.min_length;
    j["witness"] = to_string(r.witness);
    j["genus"] = r.genus ? Json(*r.genus) : Json(nullptr);
    j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
    j["violation"] = r.violation;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "classes     " << r.words << '\n'
      << "min length  " << fmt12(r.min_length) << "  ("
      << to_string(r.witness) << ")\n";
  if (r.bound)
    out << "bound       " << fmt12(*r.bound) << "  (2 log(2 - 2 chi), genus "
        << *r.genus << ")\n"
        << "violation   " << (r.violation ? "yes" : "no") << '\n';
  else
    out << "bound       none (no genus declared)\n";
  return kExitOk;
}

} // namespace margulis::cli
