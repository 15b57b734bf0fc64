// Command-line surface for the (0,1)-matrix classification engine.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
// input-format error, 4 integer overflow.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "zeroone/bounds.hpp"
#include "zeroone/canon.hpp"
#include "zeroone/classify.hpp"
#include "zeroone/count.hpp"
#include "zeroone/exact.hpp"
#include "zeroone/extend.hpp"
#include "zeroone/snf.hpp"
#include "zeroone/spectra.hpp"

namespace {

using namespace zeroone;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitOverflow = 4;

std::string compress_ranges(const std::vector<std::int64_t>& vals) {
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < vals.size()) {
    size_t j = i;
    while (j + 1 < vals.size() && vals[j + 1] == vals[j] + 1) ++j;
    if (!first) os << ',';
    first = false;
    if (j == i) {
      os << vals[i];
    } else {
      os << vals[i] << '-' << vals[j];
    }
    i = j + 1;
  }
  return os.str();
}

std::vector<BitMatrix> gather_inputs(const std::string& matrix,
                                     const std::string& input) {
  std::vector<BitMatrix> out;
  if (!matrix.empty()) out.push_back(parse_matrix_line(matrix));
  if (!input.empty()) {
    auto from_file = read_matrix_set_file(input);
    out.insert(out.end(), from_file.begin(), from_file.end());
  }
  if (out.empty()) {
    throw ConfigError("no input: pass --matrix or --input");
  }
  return out;
}

void print_level_table(std::ostream& os, const LevelResult& level) {
  mpz_class matrices = 0, pis = 0, phis = 0;
  os << "Order " << level.order << '\n';
  os << std::left << std::setw(6) << "det" << std::setw(22) << "SNF"
     << std::setw(24) << "matrices" << std::setw(16) << "pi-classes"
     << std::setw(14) << "phi-classes" << "representative" << '\n';
  for (const ClassRecord& r : level.records) {
    std::int64_t adv = 1;
    for (std::int64_t d : r.snf.diag) adv *= d;
    os << std::left << std::setw(6) << adv << std::setw(22)
       << format_snf_short(r.snf) << std::setw(24) << r.matrices.get_str()
       << std::setw(16) << r.pi_classes.get_str() << std::setw(14)
       << r.phi_classes.get_str() << format_matrix_line(r.representative)
       << '\n';
    matrices += r.matrices;
    pis += r.pi_classes;
    phis += r.phi_classes;
  }
  os << "Total: " << matrices.get_str() << " matrices, " << pis.get_str()
     << " pi-classes, " << phis.get_str() << " phi-classes, "
     << level.records.size() << " SNF classes" << '\n';
}

int cmd_classify(int max_order, PipelineOptions opts, bool quiet) {
  auto levels = classify_up_to(max_order, opts);
  bool ok = true;
  for (const LevelResult& level : levels) {
    if (!quiet) print_level_table(std::cout, level);
    VerifyReport rep = verify_level(level);
    if (!rep.ok) {
      ok = false;
      for (const std::string& v : rep.violations) {
        std::cerr << "order " << level.order << ": " << v << '\n';
      }
    }
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_canon(const std::string& matrix, const std::string& input,
              const std::string& output, bool phi, bool with_count,
              bool with_orbit, const CanonOptions& copts) {
  auto inputs = gather_inputs(matrix, input);
  std::ostringstream os;
  for (const BitMatrix& m : inputs) {
    if (phi) {
      os << format_matrix_line(phi_representative(m, copts));
    } else {
      CanonicalCert cert = pi_representative(m, copts);
      os << format_matrix_line(cert.rep);
      if (with_count) os << '\t' << cert.count.get_str();
    }
    if (with_orbit) os << '\t' << pi_class_size(m, copts).get_str();
    os << '\n';
  }
  if (output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(output);
    if (!f) throw IoError("cannot open " + output);
    f << os.str();
  }
  return kExitOk;
}

int cmd_snf(const std::string& matrix, const std::string& input,
            bool shorthand) {
  for (const BitMatrix& m : gather_inputs(matrix, input)) {
    SnfVector v = smith_normal_form(m);
    std::cout << (shorthand ? format_snf_short(v) : format_snf(v)) << '\n';
  }
  return kExitOk;
}

int cmd_spectrum(int order, const std::string& dir, int threads) {
  std::string phi_path = (std::filesystem::path(dir) /
                          ("level_" + std::to_string(order - 1) + "_phi.txt"))
                             .string();
  if (!std::filesystem::exists(phi_path)) {
    throw DependencyError("spectrum needs level " + std::to_string(order - 1) +
                          " phi checkpoint " + phi_path);
  }
  auto below = read_matrix_set_file(phi_path);
  LevelResult level;
  const LevelResult* level_ptr = nullptr;
  std::string tsv_path = (std::filesystem::path(dir) /
                          ("level_" + std::to_string(order) + "_classes.tsv"))
                             .string();
  if (std::filesystem::exists(tsv_path)) {
    level = read_checkpoint(dir, order);
    level_ptr = &level;
  }
  SpectrumReport rep = spectrum(order, below, level_ptr, threads);
  std::cout << "order\t" << rep.order << '\n';
  std::cout << "D\t" << compress_ranges(rep.dets) << '\n';
  std::cout << "size_D\t" << rep.dets.size() << '\n';
  std::cout << "a\t" << rep.first_missing << '\n';
  std::cout << "d\t" << rep.max_det << '\n';
  if (rep.have_counts) {
    std::cout << "c\t" << rep.max_det_count.get_str() << '\n';
    std::cout << "m\t" << rep.regular_count.get_str() << '\n';
    std::ostringstream rc;
    bool first = true;
    for (const auto& [k, v] : rep.rank_census) {
      if (!first) rc << ',';
      first = false;
      rc << k << ':' << v.get_str();
    }
    std::cout << "rank_census\t" << rc.str() << '\n';
  }
  return kExitOk;
}

int cmd_incidence(int order, const std::string& dir, bool ascii, int threads) {
  LevelResult level_n = read_checkpoint(dir, order);
  LevelResult level_above = read_checkpoint(dir, order + 1);
  IncidenceMatrix m = incidence(level_n, level_above, threads);
  std::cout << render_incidence(m, ascii);
  return kExitOk;
}

int cmd_bound(int order, const std::string& seeds_path, int rounds,
              std::size_t cap, bool no_pruning, const std::string& out_dir,
              int threads) {
  auto seeds = read_matrix_set_file(seeds_path);
  if (seeds.empty()) throw ConfigError("seed file is empty");
  if (seeds.front().order() + 1 != order) {
    throw ConfigError("seeds of order " +
                      std::to_string(seeds.front().order()) +
                      " cannot bound order " + std::to_string(order));
  }
  BoundOptions opts;
  opts.pruning = !no_pruning;
  opts.promising_cap = cap;
  opts.threads = threads;

  BoundRun first = heuristic_round(seeds, opts);
  std::cout << "a_" << first.order << " >= " << first.first0 << '\n';
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    auto witnesses = collect_witnesses(seeds, first.first0);
    auto violations = verify_witnesses(witnesses, first.first0);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << v << '\n';
      return kExitVerify;
    }
    std::string wpath = (std::filesystem::path(out_dir) /
                         ("witnesses_" + std::to_string(order) + ".tsv"))
                            .string();
    std::ofstream wf(wpath);
    if (!wf) throw IoError("cannot open " + wpath);
    write_witness_file(wf, witnesses);
    std::vector<BitMatrix> promising = first.promising;
    std::sort(promising.begin(), promising.end(),
              [](const BitMatrix& a, const BitMatrix& b) {
                return lex_less(a, b);
              });
    write_matrix_set_file((std::filesystem::path(out_dir) /
                           ("promising_" + std::to_string(order) + ".txt"))
                              .string(),
                          promising);
  }
  if (rounds > 1) {
    std::vector<BitMatrix> cur = first.promising;
    for (int r = 1; r < rounds && !cur.empty(); ++r) {
      BoundRun run = heuristic_round(cur, opts);
      std::cout << "a_" << run.order << " >= " << run.first0 << '\n';
      cur = std::move(run.promising);
    }
  }
  return kExitOk;
}

int cmd_count(int pi_n, int rank1_n, int rank2_n,
              const std::vector<int>& partitions,
              const std::vector<std::int64_t>& snf_bound) {
  bool any = false;
  if (pi_n > 0) {
    std::cout << pi_class_count(pi_n).get_str() << '\n';
    any = true;
  }
  if (rank1_n > 0) {
    std::cout << rank1_count(rank1_n).get_str() << '\n';
    any = true;
  }
  if (rank2_n > 0) {
    std::cout << rank2_count(rank2_n).get_str() << '\n';
    any = true;
  }
  if (!partitions.empty()) {
    if (partitions.size() != 2) {
      throw ConfigError("--partitions takes N R");
    }
    std::cout << partitions_at_most(partitions[0], partitions[1]).get_str()
              << '\n';
    any = true;
  }
  if (!snf_bound.empty()) {
    if (snf_bound.size() != 2) {
      throw ConfigError("--snf-bound takes N D");
    }
    std::cout << snf_count_upper_bound(static_cast<int>(snf_bound[0]),
                                       snf_bound[1])
                     .get_str()
              << '\n';
    any = true;
  }
  if (!any) throw ConfigError("count: nothing requested");
  return kExitOk;
}

int cmd_verify(const std::string& dir, int max_order, bool deep) {
  bool ok = true;
  for (int n = 1; n <= max_order; ++n) {
    LevelResult level = read_checkpoint(dir, n);
    VerifyReport rep = deep ? verify_level_deep(level) : verify_level(level);
    std::cout << "level " << n << ": "
              << (rep.ok ? "ok" : "FAILED") << '\n';
    for (const std::string& v : rep.violations) {
      std::cout << "  " << v << '\n';
    }
    ok = ok && rep.ok;
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification of square (0,1) matrices by permutation "
               "equivalence and Smith normal form"};
  app.require_subcommand(1);

  // classify
  auto* classify = app.add_subcommand("classify", "run the level pipeline");
  int max_order = 4;
  PipelineOptions popts;
  bool no_heuristic = false, no_warm = false, quiet = false;
  classify->add_option("--max-order", max_order, "largest order to classify")
      ->required();
  classify->add_option("--threads", popts.threads, "worker threads");
  classify->add_option("--memory-budget", popts.memory_budget,
                       "matrices held in memory");
  classify->add_option("--checkpoint-dir", popts.checkpoint_dir,
                       "directory for per-level checkpoints");
  classify->add_flag("--binary", popts.binary_checkpoints,
                     "also write compressed binary phi sets");
  classify->add_flag("--snf-partition", popts.snf_partition,
                     "always partition by SNF before reduction");
  classify->add_flag("--no-symmetry-heuristic", no_heuristic,
                     "disable the symmetric-block shortcut");
  classify->add_flag("--no-warm-start", no_warm,
                     "recanonicalize every border from scratch");
  classify->add_flag("--quiet", quiet, "suppress the level tables");

  // canon
  auto* canon = app.add_subcommand("canon", "canonical representatives");
  std::string canon_matrix, canon_input, canon_output;
  bool canon_phi = false, canon_count = false, canon_orbit = false,
       canon_no_heuristic = false;
  canon->add_option("--matrix", canon_matrix, "one matrix, hex rows");
  canon->add_option("--input", canon_input, "matrix-set file");
  canon->add_option("--output", canon_output, "write results here");
  canon->add_flag("--phi", canon_phi, "phi-representatives instead of pi");
  canon->add_flag("--count", canon_count, "append the minimizing pair count");
  canon->add_flag("--orbit-size", canon_orbit, "append the pi-class size");
  canon->add_flag("--no-symmetry-heuristic", canon_no_heuristic,
                  "disable the symmetric-block shortcut");

  // snf
  auto* snf = app.add_subcommand("snf", "Smith normal form");
  std::string snf_matrix, snf_input;
  bool snf_short = false;
  snf->add_option("matrix", snf_matrix, "matrix as comma-separated hex rows");
  snf->add_option("--input", snf_input, "matrix-set file");
  snf->add_flag("--short", snf_short, "exponential shorthand output");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "determinant spectrum");
  int spec_order = 0, spec_threads = 0;
  std::string spec_dir;
  spectrum->add_option("--order", spec_order, "order n")->required();
  spectrum->add_option("--checkpoint-dir", spec_dir, "classified levels")
      ->required();
  spectrum->add_option("--threads", spec_threads, "worker threads");

  // incidence
  auto* inc = app.add_subcommand("incidence", "SNF incidence table");
  int inc_order = 0, inc_threads = 0;
  std::string inc_dir;
  bool inc_ascii = false;
  inc->add_option("--order", inc_order, "base order n")->required();
  inc->add_option("--checkpoint-dir", inc_dir, "classified levels")
      ->required();
  inc->add_flag("--ascii", inc_ascii, "1/x/o instead of unicode glyphs");
  inc->add_option("--threads", inc_threads, "worker threads");

  // bound
  auto* bound = app.add_subcommand("bound", "lower bounds for the first "
                                            "missing determinant");
  int bound_order = 0, bound_rounds = 1, bound_threads = 0;
  std::size_t bound_cap = 10000;
  std::string bound_seeds, bound_out;
  bool bound_no_pruning = false;
  bound->add_option("--order", bound_order, "order being bounded")->required();
  bound->add_option("--seeds", bound_seeds, "seed matrix-set file")
      ->required();
  bound->add_option("--rounds", bound_rounds, "iterated rounds");
  bound->add_option("--cap", bound_cap, "promising-list cap");
  bound->add_flag("--no-pruning", bound_no_pruning,
                  "sweep every column combination");
  bound->add_option("--out-dir", bound_out,
                    "write witness and promising files here");
  bound->add_option("--threads", bound_threads, "worker threads");

  // count
  auto* count = app.add_subcommand("count", "closed-form exact counts");
  int count_pi = 0, count_r1 = 0, count_r2 = 0;
  std::vector<int> count_partitions;
  std::vector<std::int64_t> count_snf_bound;
  count->add_option("--pi-classes", count_pi, "number of pi-classes");
  count->add_option("--rank1", count_r1, "rank-1 matrix count");
  count->add_option("--rank2", count_r2, "rank-2 matrix count");
  count->add_option("--partitions", count_partitions,
                    "partitions of R into at most N parts (N R)")
      ->expected(2);
  count->add_option("--snf-bound", count_snf_bound,
                    "SNF-count upper bound (N D)")
      ->expected(2);

  // verify
  auto* verify = app.add_subcommand("verify", "replay checkpoint invariants");
  std::string verify_dir;
  int verify_max = 0;
  bool verify_deep = false;
  verify->add_option("--checkpoint-dir", verify_dir, "checkpoint directory")
      ->required();
  verify->add_option("--max-order", verify_max, "levels 1..N")->required();
  verify->add_flag("--deep", verify_deep,
                   "recanonicalize every stored representative");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      popts.canon.symmetry_heuristic = !no_heuristic;
      popts.warm_start = !no_warm;
      return cmd_classify(max_order, popts, quiet);
    }
    if (*canon) {
      CanonOptions copts;
      copts.symmetry_heuristic = !canon_no_heuristic;
      return cmd_canon(canon_matrix, canon_input, canon_output, canon_phi,
                       canon_count, canon_orbit, copts);
    }
    if (*snf) return cmd_snf(snf_matrix, snf_input, snf_short);
    if (*spectrum) return cmd_spectrum(spec_order, spec_dir, spec_threads);
    if (*inc) return cmd_incidence(inc_order, inc_dir, inc_ascii, inc_threads);
    if (*bound) {
      return cmd_bound(bound_order, bound_seeds, bound_rounds, bound_cap,
                       bound_no_pruning, bound_out, bound_threads);
    }
    if (*count) {
      return cmd_count(count_pi, count_r1, count_r2, count_partitions,
                       count_snf_bound);
    }
    if (*verify) return cmd_verify(verify_dir, verify_max, verify_deep);
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kExitOverflow;
  } catch (const ConfigError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
