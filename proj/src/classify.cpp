#include "zeroone/classify.hpp"

#include <omp.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "zeroone/canon.hpp"
#include "zeroone/count.hpp"
#include "zeroone/errors.hpp"

namespace zeroone {

namespace {

int resolve_threads(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

// Fixed-width sort keys whose numeric order is the lexicographic matrix
// order: row 0 occupies the most significant field.
struct Codec8 {
  using Key = std::uint64_t;
  static constexpr int kMaxOrder = 8;
  static Key encode(const std::uint64_t* rows, int n) {
    Key k = 0;
    for (int i = 0; i < n; ++i) k |= rows[i] << (8 * (7 - i));
    return k;
  }
  static BitMatrix decode(Key k, int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) m.set_row(i, (k >> (8 * (7 - i))) & 0xFF);
    return m;
  }
};

struct Codec16 {
  struct Key {
    std::array<std::uint64_t, 4> w{};
    auto operator<=>(const Key&) const = default;
  };
  static constexpr int kMaxOrder = 16;
  static Key encode(const std::uint64_t* rows, int n) {
    Key k{};
    for (int i = 0; i < n; ++i) {
      k.w[static_cast<size_t>(i / 4)] |= rows[i] << (16 * (3 - i % 4));
    }
    return k;
  }
  static BitMatrix decode(const Key& k, int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) {
      m.set_row(i, (k.w[static_cast<size_t>(i / 4)] >> (16 * (3 - i % 4))) &
                       0xFFFF);
    }
    return m;
  }
};

std::string unique_spill_name(const std::string& dir) {
  static std::atomic<int> seq{0};
  std::filesystem::path base =
      dir.empty() ? std::filesystem::temp_directory_path()
                  : std::filesystem::path(dir);
  return (base / ("zeroone_run_" + std::to_string(::getpid()) + "_" +
                  std::to_string(seq.fetch_add(1)) + ".tmp"))
      .string();
}

// Sorted duplicate-free runs merged k-way; runs spill to disk when the
// in-memory total exceeds the budget.
template <class Codec>
class RunStore {
 public:
  using Key = typename Codec::Key;

  RunStore(std::size_t budget, std::string spill_dir)
      : budget_(std::max<std::size_t>(budget, 4096)),
        spill_dir_(std::move(spill_dir)) {}

  ~RunStore() {
    for (const auto& f : files_) std::filesystem::remove(f);
  }

  void add_run(std::vector<Key>&& run) {
    std::sort(run.begin(), run.end());
    run.erase(std::unique(run.begin(), run.end()), run.end());
#pragma omp critical(zeroone_runstore)
    {
      total_ += run.size();
      runs_.push_back(std::move(run));
      if (total_ > budget_) spill_locked();
    }
  }

  std::vector<Key> finish() {
    std::vector<Key> out = merge_memory();
    if (files_.empty()) return out;
    // stream-merge the disk runs with the in-memory remainder
    std::vector<std::ifstream> streams;
    for (const auto& f : files_) {
      streams.emplace_back(f, std::ios::binary);
      if (!streams.back()) throw IoError("cannot reopen spill run " + f);
    }
    using Item = std::pair<Key, int>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    auto pull = [&](int idx) {
      Key k;
      if (streams[static_cast<size_t>(idx)].read(reinterpret_cast<char*>(&k),
                                                 sizeof(Key))) {
        heap.emplace(k, idx);
      }
    };
    for (size_t i = 0; i < streams.size(); ++i) pull(static_cast<int>(i));
    std::vector<Key> merged;
    size_t mem_pos = 0;
    bool have_last = false;
    Key last{};
    auto push_out = [&](const Key& k) {
      if (!have_last || k != last) {
        merged.push_back(k);
        last = k;
        have_last = true;
      }
    };
    while (!heap.empty() || mem_pos < out.size()) {
      if (!heap.empty() &&
          (mem_pos >= out.size() || heap.top().first <= out[mem_pos])) {
        auto [k, idx] = heap.top();
        heap.pop();
        push_out(k);
        pull(idx);
      } else {
        push_out(out[mem_pos++]);
      }
    }
    return merged;
  }

 private:
  std::vector<Key> merge_memory() {
    std::vector<Key> out;
    for (auto& r : runs_) {
      size_t mid = out.size();
      out.insert(out.end(), r.begin(), r.end());
      std::inplace_merge(out.begin(), out.begin() + static_cast<long>(mid),
                         out.end());
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    runs_.clear();
    total_ = 0;
    return out;
  }

  void spill_locked() {
    std::vector<Key> merged = merge_memory();
    std::string name = unique_spill_name(spill_dir_);
    std::ofstream f(name, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open spill run " + name);
    f.write(reinterpret_cast<const char*>(merged.data()),
            static_cast<std::streamsize>(merged.size() * sizeof(Key)));
    if (!f.flush()) throw IoError("spill write failed: " + name);
    files_.push_back(name);
  }

  std::size_t budget_;
  std::string spill_dir_;
  std::vector<std::vector<Key>> runs_;
  std::vector<std::string> files_;
  std::size_t total_ = 0;
};

// Extend every seed by one row/column in all 2^(2m+1) ways, canonicalize,
// and collect the distinct representatives.  For each (seed, y) the block
// prefix of the first rows is computed once and borders resume the search at
// a proven lower bound for their insertion depth.
template <class Codec>
std::vector<typename Codec::Key> extend_impl(
    const std::vector<BitMatrix>& seeds, int new_order,
    const PipelineOptions& opts) {
  using Key = typename Codec::Key;
  int n = new_order;
  int m = n - 1;
  int threads = resolve_threads(opts.threads);
  RunStore<Codec> store(opts.memory_budget, opts.checkpoint_dir);
  std::size_t cap = std::max<std::size_t>(
      4096, opts.memory_budget / (static_cast<std::size_t>(threads) + 1));

  struct Placement {
    std::int8_t depth;
    bool unique;
  };

#pragma omp parallel num_threads(threads)
  {
    detail::PiSearch search(opts.canon);
    detail::PiSearch::BlockPrefix bp;
    std::vector<Key> buf;
    buf.reserve(std::min<std::size_t>(cap, std::size_t{1} << 20));
    std::vector<Placement> placed(std::size_t{1} << n);
    std::array<std::uint64_t, 64> block{};

#pragma omp for schedule(dynamic)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(seeds.size());
         ++si) {
      const BitMatrix& seed = seeds[static_cast<size_t>(si)];
      std::uint64_t ny = std::uint64_t{1} << m;
      std::uint64_t nw = std::uint64_t{1} << n;
      for (std::uint64_t y = 0; y < ny; ++y) {
        for (int i = 0; i < m; ++i) {
          block[static_cast<size_t>(i)] =
              (seed.row(i) << 1) | ((y >> (m - 1 - i)) & 1u);
        }
        search.prepare_block(block.data(), m, n, bp);
        int uniq_limit = 0;
        while (uniq_limit < m &&
               bp.uniq_below[static_cast<size_t>(uniq_limit) + 1]) {
          ++uniq_limit;
        }
        for (std::uint64_t w = 0; w < nw; ++w) {
          int resume = 0;
          if (opts.warm_start && w != 0) {
            resume = m;
            for (std::uint64_t rest = w; rest != 0; rest &= rest - 1) {
              std::uint64_t pred = w ^ (rest & (~rest + 1));
              const Placement& p = placed[pred];
              int bound = p.unique ? p.depth : 0;
              if (bound < resume) resume = bound;
              if (resume == 0) break;
            }
            if (resume > uniq_limit) resume = uniq_limit;
          }
          auto res = search.run_bordered(bp, w, resume);
          placed[w] = Placement{static_cast<std::int8_t>(res.marked_depth),
                                res.marked_prefix_unique};
          buf.push_back(Codec::encode(res.rep.data(), n));
        }
        if (buf.size() >= cap) {
          store.add_run(std::move(buf));
          buf = {};
          buf.reserve(std::min<std::size_t>(cap, std::size_t{1} << 20));
        }
      }
    }
    if (!buf.empty()) store.add_run(std::move(buf));
  }
  return store.finish();
}

// Algorithm-2-style reduction: pop the smallest unseen representative,
// generate the pi-representatives of its phi-class, emit the class, and
// remember the future duplicates.  When the duplicate set reaches the
// budget, subtract it from the remainder in one pass and start over.
template <class Codec>
void reduce_impl(std::vector<typename Codec::Key>& work, int n,
                 const PipelineOptions& opts,
                 const std::function<void(std::vector<BitMatrix>)>& sink) {
  using Key = typename Codec::Key;
  std::size_t room = static_cast<std::size_t>(n + 1) * (n + 1);
  if (opts.memory_budget < room) {
    throw ConfigError("memory budget below (n+1)^2 matrices");
  }
  std::set<Key> pending;
  size_t pos = 0;
  while (pos < work.size()) {
    while (pos < work.size() && pending.size() + room <= opts.memory_budget) {
      Key k = work[pos++];
      auto it = pending.find(k);
      if (it != pending.end()) {
        pending.erase(it);
        continue;
      }
      std::vector<BitMatrix> orbit =
          phi_orbit_pi_reps(Codec::decode(k, n), opts.canon);
      for (const BitMatrix& member : orbit) {
        Key mk = Codec::encode(member.rows().data(), n);
        if (k < mk) pending.insert(mk);
      }
      sink(std::move(orbit));
    }
    if (pos < work.size() && !pending.empty()) {
      size_t w = pos;
      for (size_t r = pos; r < work.size(); ++r) {
        auto it = pending.find(work[r]);
        if (it != pending.end()) {
          pending.erase(it);
        } else {
          work[w++] = work[r];
        }
      }
      work.resize(w);
      pending.clear();
    }
  }
}

struct ClassStats {
  SnfVector snf;
  mpz_class matrices;
  std::size_t pi_classes = 0;
  BitMatrix rep;
};

struct SnfAggregate {
  mpz_class matrices;
  mpz_class pi_classes;
  mpz_class phi_classes;
  BitMatrix representative;
  bool have_rep = false;
};

// Per-class statistics: the SNF is constant on the phi-class, the matrix
// count sums the orbit sizes of the member pi-classes.
void process_batch(std::vector<std::vector<BitMatrix>>& batch,
                   const PipelineOptions& opts,
                   std::map<SnfVector, SnfAggregate>& agg,
                   std::vector<BitMatrix>& phi_reps) {
  int threads = resolve_threads(opts.threads);
  std::vector<ClassStats> stats(batch.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(batch.size()); ++i) {
    const std::vector<BitMatrix>& orbit = batch[static_cast<size_t>(i)];
    ClassStats s;
    s.rep = orbit.front();
    s.snf = smith_normal_form(s.rep);
    s.pi_classes = orbit.size();
    s.matrices = 0;
    for (const BitMatrix& member : orbit) {
      s.matrices += pi_class_size(member, opts.canon);
    }
    stats[static_cast<size_t>(i)] = std::move(s);
  }
  for (ClassStats& s : stats) {
    SnfAggregate& a = agg[s.snf];
    a.matrices += s.matrices;
    a.pi_classes += static_cast<unsigned long>(s.pi_classes);
    a.phi_classes += 1;
    if (!a.have_rep || lex_less(s.rep, a.representative)) {
      a.representative = s.rep;
      a.have_rep = true;
    }
    phi_reps.push_back(std::move(s.rep));
  }
  batch.clear();
}

template <class Codec>
LevelResult level_from_seeds(const std::vector<BitMatrix>& seeds,
                             int new_order, const PipelineOptions& opts) {
  using Key = typename Codec::Key;
  int n = new_order;
  std::vector<Key> pi_keys = extend_impl<Codec>(seeds, n, opts);

  std::map<SnfVector, SnfAggregate> agg;
  std::vector<BitMatrix> phi_reps;
  std::vector<std::vector<BitMatrix>> batch;
  std::size_t batch_members = 0;
  auto sink = [&](std::vector<BitMatrix> orbit) {
    batch_members += orbit.size();
    batch.push_back(std::move(orbit));
    if (batch_members >= opts.memory_budget / 4 || batch.size() >= 65536) {
      process_batch(batch, opts, agg, phi_reps);
      batch_members = 0;
    }
  };

  bool partition = opts.snf_partition || n >= 7;
  if (!partition) {
    reduce_impl<Codec>(pi_keys, n, opts, sink);
  } else {
    // SNF-first partitioning: reduce each SNF bucket independently to bound
    // the duplicate set (phi-classes never straddle buckets).
    int threads = resolve_threads(opts.threads);
    std::vector<SnfVector> snfs(pi_keys.size());
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(pi_keys.size());
         ++i) {
      snfs[static_cast<size_t>(i)] =
          smith_normal_form(Codec::decode(pi_keys[static_cast<size_t>(i)], n));
    }
    std::map<SnfVector, std::vector<Key>> buckets;
    for (size_t i = 0; i < pi_keys.size(); ++i) {
      buckets[snfs[i]].push_back(pi_keys[i]);
    }
    pi_keys.clear();
    pi_keys.shrink_to_fit();
    for (auto& [snf, bucket] : buckets) {
      reduce_impl<Codec>(bucket, n, opts, sink);
      bucket.clear();
    }
  }
  if (!batch.empty()) process_batch(batch, opts, agg, phi_reps);

  LevelResult level;
  level.order = n;
  std::sort(phi_reps.begin(), phi_reps.end(),
            [](const BitMatrix& a, const BitMatrix& b) { return lex_less(a, b); });
  level.phi_reps = std::move(phi_reps);
  for (auto& [snf, a] : agg) {
    ClassRecord rec;
    rec.snf = snf;
    rec.matrices = a.matrices;
    rec.pi_classes = a.pi_classes;
    rec.phi_classes = a.phi_classes;
    rec.representative = a.representative;
    level.records.push_back(std::move(rec));
  }
  return level;
}

template <class F>
auto with_codec(int order, F&& f) {
  if (order <= Codec8::kMaxOrder) return f(Codec8{});
  if (order <= Codec16::kMaxOrder) return f(Codec16{});
  throw ConfigError("classification store supports orders up to 16");
}

}  // namespace

std::vector<BitMatrix> extend_level(const std::vector<BitMatrix>& seeds,
                                    const PipelineOptions& opts) {
  if (seeds.empty()) return {};
  int n = seeds.front().order() + 1;
  for (const BitMatrix& s : seeds) {
    if (s.order() + 1 != n) throw DimensionError("extend_level: mixed orders");
  }
  return with_codec(n, [&](auto codec) {
    using Codec = decltype(codec);
    auto keys = extend_impl<Codec>(seeds, n, opts);
    std::vector<BitMatrix> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(Codec::decode(k, n));
    return out;
  });
}

std::vector<BitMatrix> reduce_to_phi(std::vector<BitMatrix> pi_reps,
                                     const PipelineOptions& opts) {
  if (pi_reps.empty()) return {};
  int n = pi_reps.front().order();
  return with_codec(n, [&](auto codec) {
    using Codec = decltype(codec);
    using Key = typename Codec::Key;
    std::vector<Key> keys;
    keys.reserve(pi_reps.size());
    for (const BitMatrix& m : pi_reps) {
      if (m.order() != n) throw DimensionError("reduce_to_phi: mixed orders");
      keys.push_back(Codec::encode(m.rows().data(), n));
    }
    for (size_t i = 1; i < keys.size(); ++i) {
      if (!(keys[i - 1] < keys[i])) {
        throw ConfigError("reduce_to_phi: input must be sorted without "
                          "duplicates");
      }
    }
    std::vector<BitMatrix> out;
    reduce_impl<Codec>(keys, n, opts,
                       [&](std::vector<BitMatrix> orbit) {
                         out.push_back(std::move(orbit.front()));
                       });
    std::sort(out.begin(), out.end(), [](const BitMatrix& a, const BitMatrix& b) {
      return lex_less(a, b);
    });
    return out;
  });
}

std::vector<LevelResult> classify_up_to(int n_max,
                                        const PipelineOptions& opts) {
  if (n_max < 1) throw ConfigError("classify_up_to: n_max must be >= 1");
  std::vector<LevelResult> out;
  std::vector<BitMatrix> seeds{BitMatrix(0)};
  for (int n = 1; n <= n_max; ++n) {
    LevelResult level = with_codec(n, [&](auto codec) {
      using Codec = decltype(codec);
      return level_from_seeds<Codec>(seeds, n, opts);
    });
    seeds = level.phi_reps;
    if (!opts.checkpoint_dir.empty()) {
      try {
        write_checkpoint(opts.checkpoint_dir, level, opts.binary_checkpoints);
      } catch (const Error& e) {
        throw IoError("checkpoint for level " + std::to_string(n) +
                      " failed: " + e.what());
      }
    }
    out.push_back(std::move(level));
  }
  return out;
}

VerifyReport verify_level(const LevelResult& level) {
  VerifyReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  int n = level.order;
  mpz_class total_matrices = 0, total_pi = 0, total_phi = 0;
  const ClassRecord* prev = nullptr;
  for (const ClassRecord& r : level.records) {
    std::string tag = "class " + format_snf(r.snf);
    if (r.snf.order() != n) fail(tag + ": SNF order mismatch");
    if (!validate_chain(r.snf)) fail(tag + ": invalid divisibility chain");
    if (r.representative.order() != n) fail(tag + ": representative order");
    if (!(r.matrices >= r.pi_classes) || !(r.pi_classes >= r.phi_classes) ||
        !(r.phi_classes >= 1)) {
      fail(tag + ": count ordering matrices >= pi >= phi >= 1 violated");
    }
    if (prev && !(prev->snf < r.snf)) fail(tag + ": records out of order");
    prev = &r;
    total_matrices += r.matrices;
    total_pi += r.pi_classes;
    total_phi += r.phi_classes;
  }
  mpz_class expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 2,
                static_cast<unsigned long>(n) * static_cast<unsigned long>(n));
  if (total_matrices != expected) {
    fail("matrix total " + total_matrices.get_str() + " != 2^(n^2) = " +
         expected.get_str());
  }
  if (n <= 30 && total_pi != pi_class_count(n)) {
    fail("pi-class total " + total_pi.get_str() +
         " != class-count formula value " + pi_class_count(n).get_str());
  }
  if (total_phi != static_cast<unsigned long>(level.phi_reps.size())) {
    fail("phi-class total does not match the representative list size");
  }
  for (size_t i = 1; i < level.phi_reps.size(); ++i) {
    if (!lex_less(level.phi_reps[i - 1], level.phi_reps[i])) {
      fail("phi representatives not sorted/unique at index " +
           std::to_string(i));
      break;
    }
  }
  for (const ClassRecord& r : level.records) {
    if (!std::binary_search(level.phi_reps.begin(), level.phi_reps.end(),
                            r.representative,
                            [](const BitMatrix& a, const BitMatrix& b) {
                              return lex_less(a, b);
                            })) {
      fail("representative of " + format_snf(r.snf) +
           " missing from the phi set");
    }
  }
  return rep;
}

VerifyReport verify_level_deep(const LevelResult& level,
                               const PipelineOptions& opts) {
  VerifyReport rep = verify_level(level);
  for (const BitMatrix& m : level.phi_reps) {
    if (phi_representative(m, opts.canon) != m) {
      rep.ok = false;
      rep.violations.push_back("stored representative " +
                               format_matrix_line(m) + " is not canonical");
    }
  }
  return rep;
}

std::string classes_tsv(const LevelResult& level) {
  std::ostringstream os;
  os << "snf\tmatrices\tpi_classes\tphi_classes\trepresentative\n";
  for (const ClassRecord& r : level.records) {
    os << format_snf(r.snf) << '\t' << r.matrices.get_str() << '\t'
       << r.pi_classes.get_str() << '\t' << r.phi_classes.get_str() << '\t'
       << format_matrix_line(r.representative) << '\n';
  }
  return os.str();
}

void write_checkpoint(const std::string& dir, const LevelResult& level,
                      bool binary) {
  std::filesystem::create_directories(dir);
  std::string stem =
      (std::filesystem::path(dir) / ("level_" + std::to_string(level.order)))
          .string();
  write_matrix_set_file(stem + "_phi.txt", level.phi_reps);
  std::ofstream tsv(stem + "_classes.tsv");
  if (!tsv) throw IoError("cannot open " + stem + "_classes.tsv");
  tsv << classes_tsv(level);
  if (!tsv.flush()) throw IoError("write failed: " + stem + "_classes.tsv");
  if (binary && level.order >= 2 && level.order <= 8) {
    write_matrix_set_binary(stem + "_phi.bin", level.phi_reps, level.order);
  }
}

LevelResult read_checkpoint(const std::string& dir, int order) {
  std::string stem =
      (std::filesystem::path(dir) / ("level_" + std::to_string(order)))
          .string();
  LevelResult level;
  level.order = order;
  level.phi_reps = read_matrix_set_file(stem + "_phi.txt");
  std::ifstream tsv(stem + "_classes.tsv");
  if (!tsv) throw IoError("cannot open " + stem + "_classes.tsv");
  std::string line;
  bool header = true;
  while (std::getline(tsv, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string snf, matrices, pi, phi, rep;
    if (!std::getline(ls, snf, '\t') || !std::getline(ls, matrices, '\t') ||
        !std::getline(ls, pi, '\t') || !std::getline(ls, phi, '\t') ||
        !std::getline(ls, rep, '\t')) {
      throw ParseError("bad class record line: " + line);
    }
    ClassRecord r;
    r.snf = parse_snf(snf);
    r.matrices = mpz_class(matrices);
    r.pi_classes = mpz_class(pi);
    r.phi_classes = mpz_class(phi);
    r.representative = parse_matrix_line(rep);
    level.records.push_back(std::move(r));
  }
  return level;
}

void write_matrix_set_binary(const std::string& path,
                             const std::vector<BitMatrix>& set, int order) {
  if (order < 2 || order > 8) {
    throw ConfigError("binary matrix-set format supports orders 2..8");
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path);
  f.write("BMS1", 4);
  std::uint8_t ord = static_cast<std::uint8_t>(order);
  f.write(reinterpret_cast<const char*>(&ord), 1);
  std::uint64_t count = set.size();
  f.write(reinterpret_cast<const char*>(&count), 8);
  int prefix = order - 2;
  size_t i = 0;
  while (i < set.size()) {
    size_t j = i;
    while (j < set.size() && j - i < 255) {
      bool same = true;
      for (int r = 0; r < prefix && same; ++r) {
        if (set[j].row(r) != set[i].row(r)) same = false;
      }
      if (!same) break;
      ++j;
    }
    for (int r = 0; r < prefix; ++r) {
      std::uint8_t b = static_cast<std::uint8_t>(set[i].row(r));
      f.write(reinterpret_cast<const char*>(&b), 1);
    }
    std::uint8_t g = static_cast<std::uint8_t>(j - i);
    f.write(reinterpret_cast<const char*>(&g), 1);
    for (size_t k = i; k < j; ++k) {
      std::uint8_t r1 = static_cast<std::uint8_t>(set[k].row(order - 2));
      std::uint8_t r2 = static_cast<std::uint8_t>(set[k].row(order - 1));
      f.write(reinterpret_cast<const char*>(&r1), 1);
      f.write(reinterpret_cast<const char*>(&r2), 1);
    }
    i = j;
  }
  if (!f.flush()) throw IoError("write failed: " + path);
}

std::vector<BitMatrix> read_matrix_set_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  char magic[4];
  if (!f.read(magic, 4) || std::string(magic, 4) != "BMS1") {
    throw ParseError("bad binary matrix-set magic");
  }
  std::uint8_t order = 0;
  std::uint64_t count = 0;
  if (!f.read(reinterpret_cast<char*>(&order), 1) ||
      !f.read(reinterpret_cast<char*>(&count), 8)) {
    throw ParseError("truncated binary matrix-set header");
  }
  if (order < 2 || order > 8) throw ParseError("bad order in binary set");
  int prefix = order - 2;
  std::vector<BitMatrix> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<std::uint8_t> pre(static_cast<size_t>(prefix));
    if (prefix > 0 &&
        !f.read(reinterpret_cast<char*>(pre.data()), prefix)) {
      throw ParseError("truncated binary set group prefix");
    }
    std::uint8_t g = 0;
    if (!f.read(reinterpret_cast<char*>(&g), 1) || g == 0) {
      throw ParseError("bad binary set group size");
    }
    for (int k = 0; k < g; ++k) {
      std::uint8_t r1, r2;
      if (!f.read(reinterpret_cast<char*>(&r1), 1) ||
          !f.read(reinterpret_cast<char*>(&r2), 1)) {
        throw ParseError("truncated binary set group");
      }
      BitMatrix m(order);
      for (int r = 0; r < prefix; ++r) m.set_row(r, pre[static_cast<size_t>(r)]);
      m.set_row(order - 2, r1);
      m.set_row(order - 1, r2);
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace zeroone
