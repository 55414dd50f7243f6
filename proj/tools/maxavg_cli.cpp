// maxavg: build sparse power-growth sequences, verify their exponential-sum
// bounds, and probe the associated maximal operators.
//
// Exit codes: 0 = all checks passed, 1 = a mathematical bound was violated
// (details in the report), 2 = usage or configuration error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "maxavg/cyclic_fourier.hpp"
#include "maxavg/parallel.hpp"
#include "maxavg/reports.hpp"
#include "maxavg/rng.hpp"
#include "maxavg/torus.hpp"

using namespace maxavg;

namespace {

Rat parse_ratio(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(text));
  return Rat(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

// "5..101" -> primes in [5, 101]; "5,11,23" -> exactly those (validated)
std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::uint64_t lo = std::stoull(text.substr(0, dots));
    std::uint64_t hi = std::stoull(text.substr(dots + 2));
    for (std::uint64_t p = lo; p <= hi; ++p)
      if (p % 2 == 1 && is_prime(p)) out.push_back(p);
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto comma = text.find(',', pos);
      if (comma == std::string::npos) comma = text.size();
      std::uint64_t p = std::stoull(text.substr(pos, comma - pos));
      if (!is_prime(p)) throw std::invalid_argument("not prime: " + std::to_string(p));
      out.push_back(p);
      pos = comma + 1;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty prime list: " + text);
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stoi(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

void emit(const std::string& path, const json& config, const json& payload) {
  if (path.empty()) return;
  write_report(path, make_envelope(config, payload));
}

struct GenOptions {
  std::string kind = "power";
  int m = 2;
  int d = 2;
  std::string pattern;
  std::uint64_t p0 = 5;
  std::size_t count = 6;
  std::string ratio = "2";
  std::string output = "sequence.json";
};

int run_gen(const GenOptions& opt) {
  SequenceKind kind;
  int m_or_d = 0;
  std::vector<int> pattern;
  if (opt.kind == "power") {
    kind = SequenceKind::PowerDiagonal;
    m_or_d = opt.m;
  } else if (opt.kind == "paraboloid") {
    kind = SequenceKind::Paraboloid;
    m_or_d = opt.d;
  } else if (opt.kind == "mixed") {
    kind = SequenceKind::Mixed;
    pattern = parse_int_list(opt.pattern);
  } else {
    throw std::invalid_argument("unknown kind: " + opt.kind);
  }
  PrimeSchedule schedule = build_prime_schedule(opt.p0, opt.count, parse_ratio(opt.ratio));
  OffsetSchedule offsets =
      kind == SequenceKind::Mixed
          ? build_offset_schedule(schedule, pattern)
          : build_offset_schedule(schedule,
                                  kind == SequenceKind::Paraboloid ? m_or_d + 1 : m_or_d);
  SparseSequence seq = build_sequence(kind, schedule, offsets, m_or_d, pattern);
  write_sequence_file(opt.output, seq);
  std::cout << "wrote " << opt.output << ": " << seq.merged.size() << " elements in "
            << seq.blocks.size() << " blocks, growth ratio " << seq.growth_ratio << "\n";
  return 0;
}

struct VerifyWeilOptions {
  std::vector<int> ms{2, 3};
  std::string primes = "5..101";
  double tol = 1e-9;
  int workers = 0;
  std::string output;
};

int run_verify_weil(const VerifyWeilOptions& opt) {
  json rows = json::array();
  bool violated = false;
  for (int m : opt.ms) {
    for (std::uint64_t p : parse_primes(opt.primes)) {
      if (p <= static_cast<std::uint64_t>(m)) continue;
      double sup = weil_sup(p, m, opt.workers);
      double bound = (m - 1) / std::sqrt(static_cast<double>(p));
      bool ok = sup <= bound + opt.tol;
      violated = violated || !ok;
      rows.push_back({{"p", p}, {"m", m}, {"sup", sup}, {"bound", bound}, {"ok", ok}});
      std::cout << (ok ? "ok  " : "FAIL") << " weil p=" << p << " m=" << m << " sup=" << sup
                << " bound=" << bound << "\n";
    }
  }
  json config{{"subcommand", "verify weil"}, {"ms", opt.ms}, {"primes", opt.primes}, {"tol", opt.tol}};
  emit(opt.output, config, json{{"rows", rows}, {"violated", violated}});
  return violated ? 1 : 0;
}

struct VerifyGaussOptions {
  std::string primes = "3..199";
  double tol = 1e-9;
  std::string output;
};

int run_verify_gauss(const VerifyGaussOptions& opt) {
  bool violated = false;
  json rows = json::array();
  for (std::uint64_t p : parse_primes(opt.primes)) {
    double worst = 0;
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) {
      for (std::int64_t b = 0; b < static_cast<std::int64_t>(p); ++b) {
        double mag = std::abs(gauss_sum(p, a, b));
        double expect = b != 0 ? std::sqrt(static_cast<double>(p))
                               : (a != 0 ? 0.0 : static_cast<double>(p));
        worst = std::max(worst, std::abs(mag - expect));
      }
    }
    bool ok = worst <= opt.tol;
    violated = violated || !ok;
    rows.push_back({{"p", p}, {"worst_residue", worst}, {"ok", ok}});
    std::cout << (ok ? "ok  " : "FAIL") << " gauss p=" << p << " residue=" << worst << "\n";
  }
  json config{{"subcommand", "verify gauss"}, {"primes", opt.primes}, {"tol", opt.tol}};
  emit(opt.output, config, json{{"rows", rows}, {"violated", violated}});
  return violated ? 1 : 0;
}

struct VerifyFourierOptions {
  std::string cases = "5,2;7,2;13,2;5,3";
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::string output;
};

int run_verify_fourier(const VerifyFourierOptions& opt) {
  bool violated = false;
  json rows = json::array();
  std::size_t pos = 0;
  while (pos < opt.cases.size()) {
    auto semi = opt.cases.find(';', pos);
    if (semi == std::string::npos) semi = opt.cases.size();
    std::vector<int> qm = parse_int_list(opt.cases.substr(pos, semi - pos));
    pos = semi + 1;
    if (qm.size() != 2) throw std::invalid_argument("cases must look like 5,2;7,2");
    const std::int64_t q = qm[0];
    const int m = qm[1];
    double worst_plancherel = 0, worst_inversion = 0, worst_convolution = 0;
    for (int t = 0; t < opt.trials; ++t) {
      CounterRng rng(opt.seed, static_cast<std::uint64_t>(t));
      CyclicSignal f(q, m), g(q, m);
      for (auto& v : f.values) v = cplx(2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1);
      for (auto& v : g.values) v = cplx(2 * rng.next_unit() - 1, 2 * rng.next_unit() - 1);
      CyclicSignal fh = dft(f);
      double scale = std::pow(static_cast<double>(q), m / 2.0);
      worst_plancherel = std::max(
          worst_plancherel, std::abs(fh.norm_l2() - scale * f.norm_l2()) / (scale * f.norm_l2()));
      CyclicSignal back = idft(fh);
      double err = 0, amp = 0;
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        err = std::max(err, std::abs(back.values[i] - f.values[i]));
        amp = std::max(amp, std::abs(f.values[i]));
      }
      worst_inversion = std::max(worst_inversion, err / amp);
      CyclicSignal lhs = dft(convolve(f, g));
      CyclicSignal gh = dft(g);
      double cerr = 0, camp = 0;
      for (std::size_t i = 0; i < lhs.values.size(); ++i) {
        cerr = std::max(cerr, std::abs(lhs.values[i] - fh.values[i] * gh.values[i]));
        camp = std::max(camp, std::abs(fh.values[i] * gh.values[i]));
      }
      worst_convolution = std::max(worst_convolution, cerr / camp);
    }
    bool ok =
        worst_plancherel <= opt.tol && worst_inversion <= opt.tol && worst_convolution <= opt.tol;
    violated = violated || !ok;
    rows.push_back({{"q", q},
                    {"m", m},
                    {"plancherel", worst_plancherel},
                    {"inversion", worst_inversion},
                    {"convolution", worst_convolution},
                    {"ok", ok}});
    std::cout << (ok ? "ok  " : "FAIL") << " fourier q=" << q << " m=" << m
              << " plancherel=" << worst_plancherel << " inversion=" << worst_inversion
              << " convolution=" << worst_convolution << "\n";
  }
  json config{{"subcommand", "verify fourier"}, {"cases", opt.cases}, {"trials", opt.trials},
              {"seed", opt.seed}, {"tol", opt.tol}};
  emit(opt.output, config, json{{"rows", rows}, {"violated", violated}});
  return violated ? 1 : 0;
}

struct VerifyTransferOptions {
  std::uint64_t p = 5;
  int m = 2;
  int thetas = 64;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string output;
};

int run_verify_transfer(const VerifyTransferOptions& opt) {
  CyclicMeasureTriple t = make_sigma_triple(opt.p, MeasureKind::PowerDiagonal, opt.m);
  CutoffProfile phi = make_cutoff(opt.p);
  CyclicSignal rho_ddagger = apply_cutoff(periodize(t.sigma_star), phi);
  IntSignal rho_dagger = pushforward(rho_ddagger, opt.p);
  std::vector<double> thetas{0.0, 0.5};
  CounterRng rng(opt.seed, 0);
  for (int i = 0; i < opt.thetas; ++i) thetas.push_back(rng.next_unit());
  double dev = transference_deviation(rho_ddagger, rho_dagger, opt.p, opt.m, thetas);
  bool ok = dev <= opt.tol;
  std::cout << (ok ? "ok  " : "FAIL") << " transfer p=" << opt.p << " m=" << opt.m
            << " deviation=" << dev << "\n";
  json config{{"subcommand", "verify transfer"}, {"p", opt.p}, {"m", opt.m},
              {"thetas", opt.thetas}, {"seed", opt.seed}, {"tol", opt.tol}};
  emit(opt.output, config, json{{"deviation", dev}, {"ok", ok}});
  return ok ? 0 : 1;
}

struct ScanDecayOptions {
  int m = 2;
  std::string primes = "5,11,23,47,97,197";
  int oversample = 32;
  std::string csv;
  std::string output;
};

int run_scan_decay(const ScanDecayOptions& opt) {
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> points;
  json jrows = json::array();
  for (std::uint64_t p : parse_primes(opt.primes)) {
    CyclicMeasureTriple t = make_sigma_triple(p, MeasureKind::PowerDiagonal, opt.m);
    CutoffProfile phi = make_cutoff(p);
    IntSignal rho_dagger = gamma_transfer(t.sigma_star, phi);
    TorusScan scan = grid_sup(rho_dagger, opt.oversample, true);
    double scaled = scan.sup_value * std::sqrt(static_cast<double>(p));
    rows.push_back({static_cast<double>(p), scan.sup_value, scaled});
    points.emplace_back(static_cast<double>(p), scan.sup_value);
    jrows.push_back({{"p", p}, {"sup", scan.sup_value}, {"sup_times_sqrt_p", scaled},
                     {"argmax_theta", scan.argmax_theta}, {"grid_size", scan.grid_size}});
    std::cout << "p=" << p << " sup=" << scan.sup_value << " sup*sqrt(p)=" << scaled << "\n";
  }
  LineFit fit = decay_fit(points);
  std::cout << "decay slope " << fit.slope << " (square-root cancellation is -0.5)\n";
  if (!opt.csv.empty()) write_csv(opt.csv, {"p", "sup", "sup_times_sqrt_p"}, rows);
  json config{{"subcommand", "scan decay"}, {"m", opt.m}, {"primes", opt.primes},
              {"oversample", opt.oversample}};
  emit(opt.output, config,
       json{{"rows", jrows}, {"slope", fit.slope}, {"intercept", fit.intercept}});
  return 0;
}

struct MaximalOptions {
  std::string seq_path;
  std::string input_path;
  std::size_t n_max = 0;
  int alpha_decades = 4;
  int alpha_per_decade = 64;
  std::string csv;
  std::string output;
};

int run_maximal(const MaximalOptions& opt) {
  SparseSequence seq = load_sequence_file(opt.seq_path);
  IntSignal f = opt.input_path.empty() ? IntSignal::from_atoms({{0, 1.0}})
                                       : load_signal_jsonl(opt.input_path);
  const std::size_t n_max = opt.n_max == 0 ? seq.merged.size() : opt.n_max;
  IntSignal mf = maximal_function(f, seq, n_max);
  double top = mf.sup_abs();
  std::vector<double> alphas =
      log_alpha_grid(top > 0 ? top : 1.0, opt.alpha_decades, opt.alpha_per_decade);
  WeakTypeReport report = weak_type_report(mf, f.norm_l1(), alphas, signal_digest(f, seq.merged));
  std::cout << "n_max=" << n_max << " worst ratio " << report.worst_ratio << "\n";
  if (!opt.csv.empty()) {
    std::vector<std::vector<double>> csv_rows;
    for (std::size_t i = 0; i < report.alphas.size(); ++i)
      csv_rows.push_back(
          {report.alphas[i], static_cast<double>(report.counts[i]), report.ratios[i]});
    write_csv(opt.csv, {"alpha", "count", "ratio"}, csv_rows);
  }
  json config{{"subcommand", "maximal"}, {"seq", opt.seq_path}, {"input", opt.input_path},
              {"n_max", n_max}, {"alpha_decades", opt.alpha_decades},
              {"alpha_per_decade", opt.alpha_per_decade}};
  emit(opt.output, config, weak_type_to_json(report));
  return 0;
}

struct ProbeOptions {
  std::string seq_path;
  std::string family = "deltas";
  int trials = 8;
  std::uint64_t seed = 1;
  int atoms = 8;
  std::int64_t window = 4096;
  double limit = 0;  // 0 = report only
  std::string output;
};

int run_probe(const ProbeOptions& opt) {
  SparseSequence seq = load_sequence_file(opt.seq_path);
  ProbeFamily family;
  if (opt.family == "deltas")
    family = ProbeFamily::Deltas;
  else if (opt.family == "comb")
    family = ProbeFamily::Comb;
  else if (opt.family == "difference-comb")
    family = ProbeFamily::DifferenceComb;
  else if (opt.family == "squares-baseline")
    family = ProbeFamily::SquaresBaseline;
  else
    throw std::invalid_argument("unknown family: " + opt.family);

  ProbeConfig cfg;
  cfg.atoms = opt.atoms;
  cfg.window = opt.window;
  auto reports = adversary_suite(seq, family, opt.trials, opt.seed, cfg);
  double suite_max = 0;
  json jreports = json::array();
  for (const auto& r : reports) {
    suite_max = std::max(suite_max, r.worst_ratio);
    jreports.push_back(weak_type_to_json(r));
  }
  bool ok = opt.limit <= 0 || suite_max <= opt.limit;
  std::cout << (ok ? "ok  " : "FAIL") << " probe family=" << opt.family << " suite max ratio "
            << suite_max << "\n";
  json config{{"subcommand", "probe"}, {"seq", opt.seq_path}, {"family", opt.family},
              {"trials", opt.trials}, {"seed", opt.seed}, {"atoms", opt.atoms},
              {"window", opt.window}, {"limit", opt.limit}};
  emit(opt.output, config, json{{"reports", jreports}, {"suite_max", suite_max}, {"ok", ok}});
  return ok ? 0 : 1;
}

struct InspectOptions {
  std::string seq_path;
  double alpha = 0.25;
  std::uint64_t seed = 1;
  std::string input_path;
  int s_max = 20;
  std::string output;
};

int run_inspect_proof(const InspectOptions& opt) {
  SparseSequence seq = load_sequence_file(opt.seq_path);
  if (seq.kind != SequenceKind::PowerDiagonal)
    throw std::invalid_argument("inspect proof expects a power-diagonal sequence");
  std::vector<IntSignal> lambdas;
  for (std::size_t k = 0; k < seq.schedule.primes.size(); ++k)
    lambdas.push_back(make_block_triple(seq.schedule.primes[k], seq.m, seq.offsets.offsets[k],
                                        MeasureKind::PowerDiagonal)
                          .lambda);
  ScaleAssignment scales = scales_from_schedule(seq.schedule, seq.m, opt.alpha);

  IntSignal f;
  if (!opt.input_path.empty()) {
    f = load_signal_jsonl(opt.input_path);
  } else {
    CounterRng rng(opt.seed, 0);
    std::vector<std::pair<std::int64_t, double>> atoms;
    for (int i = 0; i < 12; ++i)
      atoms.emplace_back(rng.next_range(0, 2047), static_cast<double>(rng.next_range(1, 8)));
    f = IntSignal::from_atoms(atoms);
  }

  ProofInspection pi = inspect_proof(f, seq.blocks, lambdas, scales, opt.s_max);
  bool ok = pi.generous_domination_ok && pi.exceptional_bound_ratio <= 8.0 + 1e-9;
  std::cout << (ok ? "ok  " : "FAIL") << " inspect proof |E|=" << pi.exceptional_total
            << " |E|a/||f||=" << pi.exceptional_bound_ratio << " gs constant "
            << pi.gs_bound_constant << "\n";
  json config{{"subcommand", "inspect proof"}, {"seq", opt.seq_path}, {"alpha", opt.alpha},
              {"seed", opt.seed}, {"input", opt.input_path}, {"s_max", opt.s_max}};
  emit(opt.output, config, inspection_to_json(pi));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse-sequence maximal-average toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* cgen = app.add_subcommand("gen", "generate a sequence file");
  cgen->add_option("--kind", gen.kind, "power | paraboloid | mixed");
  cgen->add_option("--m", gen.m, "power-diagonal exponent");
  cgen->add_option("--d", gen.d, "paraboloid dimension");
  cgen->add_option("--pattern", gen.pattern, "mixed: per-block exponents, e.g. 2,3,2");
  cgen->add_option("--p0", gen.p0, "first prime (odd, >= 5)");
  cgen->add_option("--count", gen.count, "number of blocks");
  cgen->add_option("--ratio", gen.ratio, "prime growth ratio (integer or n/d)");
  cgen->add_option("-o,--output", gen.output, "sequence file path");

  VerifyWeilOptions vw;
  VerifyGaussOptions vg;
  VerifyFourierOptions vf;
  VerifyTransferOptions vt;
  CLI::App* cver = app.add_subcommand("verify", "verify exponential-sum and Fourier bounds");
  cver->require_subcommand(1);
  CLI::App* cweil = cver->add_subcommand("weil", "power-diagonal Fourier decay bound");
  cweil->add_option("--m", vw.ms, "exponents to sweep");
  cweil->add_option("--primes", vw.primes, "range lo..hi or list");
  cweil->add_option("--tol", vw.tol, "tolerance");
  cweil->add_option("--workers", vw.workers, "worker threads (default: env/hardware)");
  cweil->add_option("-o,--output", vw.output, "report path");
  CLI::App* cgauss = cver->add_subcommand("gauss", "quadratic Gauss sum magnitude table");
  cgauss->add_option("--primes", vg.primes, "range lo..hi or list");
  cgauss->add_option("--tol", vg.tol, "tolerance");
  cgauss->add_option("-o,--output", vg.output, "report path");
  CLI::App* cfour = cver->add_subcommand("fourier", "Plancherel / inversion / convolution");
  cfour->add_option("--cases", vf.cases, "semicolon-separated q,m pairs");
  cfour->add_option("--trials", vf.trials, "random signals per case");
  cfour->add_option("--seed", vf.seed, "seed");
  cfour->add_option("--tol", vf.tol, "relative tolerance");
  cfour->add_option("-o,--output", vf.output, "report path");
  CLI::App* ctrans = cver->add_subcommand("transfer", "pushforward transference identity");
  ctrans->add_option("--p", vt.p, "prime");
  ctrans->add_option("--m", vt.m, "exponent");
  ctrans->add_option("--thetas", vt.thetas, "random theta count");
  ctrans->add_option("--seed", vt.seed, "seed");
  ctrans->add_option("--tol", vt.tol, "tolerance");
  ctrans->add_option("-o,--output", vt.output, "report path");

  ScanDecayOptions sd;
  CLI::App* cscan = app.add_subcommand("scan", "parameter scans");
  cscan->require_subcommand(1);
  CLI::App* cdecay = cscan->add_subcommand("decay", "torus sup decay of the transferred measure");
  cdecay->add_option("--m", sd.m, "exponent");
  cdecay->add_option("--primes", sd.primes, "range lo..hi or list");
  cdecay->add_option("--oversample", sd.oversample, "grid oversampling factor");
  cdecay->add_option("--csv", sd.csv, "CSV output path");
  cdecay->add_option("-o,--output", sd.output, "report path");

  MaximalOptions mx;
  CLI::App* cmax = app.add_subcommand("maximal", "evaluate Mf and its weak-type ratios");
  cmax->add_option("--seq", mx.seq_path, "sequence file")->required();
  cmax->add_option("--input", mx.input_path, "input signal (JSON lines); default delta_0");
  cmax->add_option("--n-max", mx.n_max, "truncation (default: whole sequence)");
  cmax->add_option("--alpha-decades", mx.alpha_decades, "alpha grid decades");
  cmax->add_option("--alpha-per-decade", mx.alpha_per_decade, "alpha grid density");
  cmax->add_option("--csv", mx.csv, "CSV output path");
  cmax->add_option("-o,--output", mx.output, "report path");

  ProbeOptions pb;
  CLI::App* cprobe = app.add_subcommand("probe", "adversarial weak-type probes");
  cprobe->add_option("--seq", pb.seq_path, "sequence file")->required();
  cprobe->add_option("--family", pb.family, "deltas | comb | difference-comb | squares-baseline");
  cprobe->add_option("--trials", pb.trials, "trial count");
  cprobe->add_option("--seed", pb.seed, "seed");
  cprobe->add_option("--atoms", pb.atoms, "atoms per probe");
  cprobe->add_option("--window", pb.window, "probe window");
  cprobe->add_option("--limit", pb.limit, "fail if the suite max ratio exceeds this");
  cprobe->add_option("-o,--output", pb.output, "report path");

  InspectOptions in;
  CLI::App* cinspect = app.add_subcommand("inspect", "desk-scale proof machinery");
  cinspect->require_subcommand(1);
  CLI::App* cproof =
      cinspect->add_subcommand("proof", "levels, exceptional sets, square functions");
  cproof->add_option("--seq", in.seq_path, "sequence file")->required();
  cproof->add_option("--alpha", in.alpha, "weak-type level");
  cproof->add_option("--seed", in.seed, "seed for the default random input");
  cproof->add_option("--input", in.input_path, "input signal (JSON lines)");
  cproof->add_option("--s-max", in.s_max, "square-function truncation");
  cproof->add_option("-o,--output", in.output, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cgen) return run_gen(gen);
    if (*cweil) return run_verify_weil(vw);
    if (*cgauss) return run_verify_gauss(vg);
    if (*cfour) return run_verify_fourier(vf);
    if (*ctrans) return run_verify_transfer(vt);
    if (*cdecay) return run_scan_decay(sd);
    if (*cmax) return run_maximal(mx);
    if (*cprobe) return run_probe(pb);
    if (*cproof) return run_inspect_proof(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
