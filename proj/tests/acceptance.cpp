// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "margulis/cli/commands.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

using namespace margulis;
using namespace margulis::cli;
using margulis::testing::random_hyperbolic;
using margulis::testing::random_sl2;
using margulis::testing::random_sl2vec;
using margulis::testing::random_vec;
using margulis::testing::random_word;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int hardware_workers() {
  return std::max(2u, std::thread::hardware_concurrency());
}

double vmax(const auto &m) { return m.template lpNorm<Eigen::Infinity>(); }

AffineDeformationd cyclic_log(double mu) {
  const Representationd rep = cyclic_preset(mu);
  return {rep, Cocycled{{psi(log_hyperbolic(rep.gens[0]))}}};
}

// ---------------------------------------------------------------------------

Outcome dual_formula() {
  const std::vector<Representationd> reps{cyclic_preset(0.5), schottky_preset(1.5),
                                          genus2_preset<double>()};
  NormalStream rng(101);
  constexpr int kPerPreset = 3400;
  std::uint64_t pairs = 0, failures = 0;
  double worst = 0;
  for (const auto &rep : reps) {
    const auto basis = cocycle_basis(rep);
    int done = 0;
    while (done < kPerPreset) {
      const AffineDeformationd d(rep, random_cocycle(basis, rng.next_u64()));
      const Word w = random_word(rng, rep.rank(), 8);
      if (!is_hyperbolic(evaluate(w, rep.gens)))
        continue;
      const double e = alpha_eig(d, w), t = alpha_trace(d, w);
      const double rel = std::abs(e - t) / std::max(std::abs(t), 1e-300);
      worst = std::max(worst, rel);
      failures += rel > 1e-9 ? 1 : 0;
      ++done;
      ++pairs;
    }
  }
  return {pairs >= 10000 && failures == 0,
          fmt("%llu pairs over 3 presets, max relative gap %.2e (tol 1e-9)",
              (unsigned long long)pairs, worst)};
}

Outcome analytic_cyclic() {
  const AffineDeformationd d = cyclic_log(0.5);
  const double l2 = std::log(2.0);
  double worst = std::abs(alpha_trace(d, parse_word("a")) - l2);
  worst = std::max(worst, std::abs(alpha_eig(d, parse_word("a")) - l2));
  worst = std::max(worst, std::abs(alpha_trace(d, parse_word("A")) - l2));
  worst = std::max(worst, std::abs(alpha_eig(d, parse_word("A")) - l2));
  for (int n = 2; n <= 10; ++n) {
    const Word an = power(parse_word("a"), n);
    worst = std::max(worst, std::abs(alpha_trace(d, an) - n * l2));
    worst = std::max(worst, std::abs(alpha_eig(d, an) - n * l2));
  }
  return {worst <= 1e-12,
          fmt("alpha(a), alpha(a^n) n<=10, alpha(A): max error %.2e (tol 1e-12)", worst)};
}

Outcome structural() {
  NormalStream rng(103);
  constexpr int kInputs = 2000;
  double iso = 0, equi = 0, hom = 0, frame = 0;
  int orientation_failures = 0, isometry_failures = 0;
  for (int i = 0; i < kInputs; ++i) {
    const Sl2Vecd x = random_sl2vec(rng), y = random_sl2vec(rng);
    iso = std::max(iso, std::abs(bform(psi(x), psi(y)) - bform_sl2(x, y)));

    const SL2d g = random_sl2(rng), h = random_sl2(rng);
    const Vec21d lhs = psi(adjoint(g, x)), rhs = rho(g) * psi(x);
    equi = std::max(equi, vmax(Vec21d(lhs - rhs)) / (1 + vmax(rhs)));
    const Mat3d rgh = rho(g * h);
    hom = std::max(hom, vmax(Mat3d(rgh - rho(g) * rho(h))) / (1 + vmax(rgh)));
    if (!is_lorentz_isometry(rho(g)) || !preserves_future_cone(rho(g)) ||
        rho(g).determinant() <= 0)
      ++isometry_failures;

    const SL2d k = random_hyperbolic(rng);
    const Eigenframe<double> f = eigenframe(k);
    const Mat3d r = rho(k);
    const double s = 1 + vmax(r);
    double e = std::abs(bform(f.xzero, f.xzero) - 1);
    e = std::max(e, std::abs(bform(f.xminus, f.xminus)) / s);
    e = std::max(e, std::abs(bform(f.xplus, f.xplus)) / s);
    e = std::max(e, vmax(Vec21d(r * f.xminus - f.lambda * f.xminus)) / s);
    e = std::max(e, vmax(Vec21d(r * f.xplus - f.xplus / f.lambda)) / (s * s));
    e = std::max(e, vmax(Vec21d(r * f.xzero - f.xzero)) / s);
    e = std::max(e, std::abs(f.lambda - f.mu * f.mu));
    e = std::max(e, std::abs(f.xminus(2) - 1) + std::abs(f.xplus(2) - 1));
    frame = std::max(frame, e);
    if (orientation(f.xminus, f.xplus, f.xzero) != 1 || f.xminus(2) <= 0 ||
        f.xplus(2) <= 0)
      ++orientation_failures;
  }
  const bool ok = iso <= 1e-12 && equi <= 1e-10 && hom <= 1e-10 && frame <= 1e-9 &&
                  orientation_failures == 0 && isometry_failures == 0;
  return {ok, fmt("%d inputs: psi isometry %.1e, rho equivariance %.1e, "
                  "homomorphism %.1e, frame %.1e, orientation failures %d, "
                  "isometry failures %d",
                  kInputs, iso, equi, hom, frame, orientation_failures,
                  isometry_failures)};
}

Outcome coboundary_annihilation() {
  const Representationd rep = genus2_preset<double>();
  NormalStream rng(104);
  int zero_verdicts = 0;
  double worst = 0;
  std::uint64_t words = 0;
  for (int i = 0; i < 100; ++i) {
    const AffineDeformationd d(rep, coboundary(rep, random_vec(rng)));
    ScanOptions opts;
    opts.max_length = 6;
    opts.workers = hardware_workers();
    const SignScanReport r = sign_scan(d, opts);
    zero_verdicts += r.verdict == Verdict::ZeroDetected && r.zero_count == r.count;
    worst = std::max(worst, r.max_scaled_abs_alpha);
    words += r.count;
  }
  return {zero_verdicts == 100 && worst <= 1e-9,
          fmt("100 coboundaries, %llu words at radius 6: %d ZeroDetected, "
              "max |alpha|/(1+len) %.2e (tol 1e-9)",
              (unsigned long long)words, zero_verdicts, worst)};
}

Outcome class_function() {
  const Representationd rep = genus2_preset<double>();
  const MatXd h1 = cohomology_complement(rep);
  NormalStream rng(105);
  std::uint64_t checks = 0, violations = 0;
  double conj = 0, pow = 0, inv = 0;
  for (int i = 0; i < 4; ++i) {
    const AffineDeformationd d(rep, random_cocycle(h1, rng.next_u64()));
    std::vector<Word> extra;
    for (int k = 0; k < 4; ++k)
      extra.push_back(random_word(rng, 4, 5));
    const PropertiesReport r = alpha_properties_check(d, 4, 1e-9, extra);
    checks += r.checks;
    violations += r.violations.size();
    conj = std::max(conj, r.max_conjugation_error);
    pow = std::max(pow, r.max_power_error);
    inv = std::max(inv, r.max_inverse_error);
  }
  return {violations == 0,
          fmt("%llu checks on the genus-2 preset: conjugation %.1e, powers %.1e, "
              "inverse %.1e (tol 1e-9)",
              (unsigned long long)checks, conj, pow, inv)};
}

Outcome lemma1() {
  const double h = kDefaultStep;
  const double reference = lemma1_probe(cyclic_log(0.5), parse_word("a"), h).ratio_richardson();

  const Representationd rep = genus2_preset<double>();
  const MatXd h1 = cohomology_complement(rep);
  NormalStream rng(106);
  int pairs = 0, sign_checked = 0, sign_failures = 0;
  double ratio_lo = std::numeric_limits<double>::infinity();
  double ratio_hi = -ratio_lo;
  while (pairs < 1000) {
    const AffineDeformationd d(rep, random_cocycle(h1, rng.next_u64()));
    const Word w = random_word(rng, 4, 6);
    if (!is_hyperbolic(evaluate(w, rep.gens)))
      continue;
    const PathProbe<double> p = lemma1_probe(d, w, h);
    ++pairs;
    if (!p.sign_checked)
      continue;
    ++sign_checked;
    sign_failures += p.sign_agrees ? 0 : 1;
    ratio_lo = std::min(ratio_lo, p.ratio_richardson());
    ratio_hi = std::max(ratio_hi, p.ratio_richardson());
  }
  const double spread = std::max(std::abs(ratio_hi - reference), std::abs(ratio_lo - reference)) /
                        std::abs(reference);
  return {sign_failures == 0 && spread <= 1e-4 && std::abs(reference - 2) <= 1e-4,
          fmt("%d pairs (%d with |alpha| > 10h^2): sign mismatches %d; L'/alpha in "
              "[%.10f, %.10f], cyclic value %.10f, max relative spread %.1e (tol 1e-4)",
              pairs, sign_checked, sign_failures, ratio_lo, ratio_hi, reference, spread)};
}

Outcome mess() {
  MessArgs args;
  args.samples = 50;
  args.radius = 12;
  args.seed = 1;
  args.workers = hardware_workers();
  const MessSummary s = mess_demo(args);
  return {s.all_mixed() && s.control.report.verdict == Verdict::ZeroDetected,
          fmt("%d/%d samples mixed (first mixed by radius %d), %zu single-signed, "
              "coboundary control %s",
              s.mixed, s.samples, s.max_first_mixed_radius, s.single_signed.size(),
              to_string(s.control.report.verdict))};
}

Outcome dimensions() {
  const Representationd rep = genus2_preset<double>();
  const CocycleSpace<double> z = cocycle_space(rep);
  const int b = coboundary_rank(rep);
  const int h = static_cast<int>(cohomology_complement(rep).cols());
  return {z.dimension() == 9 && b == 3 && h == 6 && z.gap >= 1e3,
          fmt("dim Z^1 = %d, rank B^1 = %d, dim H^1 = %d (6g-6 = 6), constraint "
              "rank %d, singular-value gap %.3g",
              z.dimension(), b, h, z.constraint_rank, z.gap)};
}

Outcome systole_check() {
  const SystoleResult r = systole(genus2_preset<double>(), 8, 2);
  const double bolza = 2 * std::acosh(1 + std::sqrt(2.0));
  const bool ok = r.bound && r.min_length <= *r.bound &&
                  std::abs(r.min_length - bolza) <= 1e-3;
  return {ok, fmt("%llu classes to radius 8: min length %.10f (%s), bound 2 log 6 = "
                  "%.6f, Bolza value %.10f",
                  (unsigned long long)r.words, r.min_length,
                  to_string(r.witness).c_str(), r.bound ? *r.bound : 0.0, bolza)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("margulis-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const GroupDocument g = make_preset("genus2");
  write_json(dir / "g.json", to_json(g));
  write_json(dir / "c.json", to_json(make_cocycle(g, CocycleKind::Random, 42)));

  const int n = hardware_workers();
  std::string scans[2], messes[2];
  for (int i = 0; i < 2; ++i) {
    ScanArgs args;
    args.group = (dir / "g.json").string();
    args.cocycle = (dir / "c.json").string();
    args.format = Format::Json;
    args.radius = 6;
    args.workers = i == 0 ? 1 : n;
    std::ostringstream os;
    cmd_scan(args, os);
    scans[i] = os.str();

    MessArgs m;
    m.samples = 10;
    m.radius = 8;
    m.seed = 7;
    m.workers = i == 0 ? 1 : n;
    std::ostringstream ms;
    cmd_mess_demo(m, ms);
    messes[i] = ms.str();
  }
  fs::remove_all(dir);
  return {scans[0] == scans[1] && messes[0] == messes[1],
          fmt("scan (%zu bytes) and mess-demo (%zu bytes) JSON with 1 vs %d workers: %s",
              scans[0].size(), messes[0].size(), n,
              scans[0] == scans[1] && messes[0] == messes[1] ? "identical" : "differ")};
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
      {"dual-formula oracle", dual_formula},
      {"analytic cyclic case", analytic_cyclic},
      {"structural identities", structural},
      {"coboundary annihilation", coboundary_annihilation},
      {"class function, powers, inverse", class_function},
      {"length-derivative probe", lemma1},
      {"mixed signs on genus 2", mess},
      {"cocycle-space dimensions", dimensions},
      {"systole", systole_check},
      {"determinism across workers", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
