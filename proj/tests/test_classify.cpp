#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "zeroone/canon.hpp"
#include "zeroone/classify.hpp"
#include "zeroone/snf.hpp"

using namespace zeroone;

namespace {

PipelineOptions options(int threads = 0) {
  PipelineOptions o;
  o.threads = threads;
  return o;
}

struct ExpectedClass {
  const char* snf;
  const char* matrices;
  long pi;
  long phi;
  const char* rep;
};

// Published order-3/4 class tables.
const ExpectedClass kOrder3[] = {
    {"(0,0,0)", "1", 1, 1, "0,0,0"},    {"(1,0,0)", "49", 9, 4, "0,0,1"},
    {"(1,1,0)", "288", 18, 4, "0,1,2"}, {"(1,1,1)", "168", 7, 2, "1,2,4"},
    {"(1,1,2)", "6", 1, 1, "3,5,6"},
};
const ExpectedClass kOrder4[] = {
    {"(0,0,0,0)", "1", 1, 1, "0,0,0,0"},
    {"(1,0,0,0)", "225", 16, 4, "0,0,0,1"},
    {"(1,1,0,0)", "6750", 84, 12, "0,0,1,2"},
    {"(1,1,1,0)", "35400", 150, 14, "0,1,2,4"},
    {"(1,1,2,0)", "600", 5, 1, "0,3,5,6"},
    {"(1,1,1,1)", "20040", 49, 5, "1,2,4,8"},
    {"(1,1,1,2)", "2400", 10, 1, "1,6,A,C"},
    {"(1,1,1,3)", "120", 2, 1, "3,5,9,E"},
};

void check_level(const LevelResult& level, const ExpectedClass* expect,
                 size_t count) {
  REQUIRE(level.records.size() == count);
  for (size_t i = 0; i < count; ++i) {
    const ClassRecord& r = level.records[i];
    CHECK(format_snf(r.snf) == expect[i].snf);
    CHECK(r.matrices == mpz_class(expect[i].matrices));
    CHECK(r.pi_classes == expect[i].pi);
    CHECK(r.phi_classes == expect[i].phi);
    CHECK(format_matrix_line(r.representative) == expect[i].rep);
  }
}

std::string level_fingerprint(const LevelResult& level) {
  std::string out = classes_tsv(level);
  for (const BitMatrix& m : level.phi_reps) out += format_matrix_line(m) + "\n";
  return out;
}

}  // namespace

TEST_CASE("first levels reproduce the published tables") {
  auto levels = classify_up_to(4, options());
  REQUIRE(levels.size() == 4);

  REQUIRE(levels[0].records.size() == 2);
  CHECK(format_snf(levels[0].records[0].snf) == "(0)");
  CHECK(levels[0].records[0].matrices == 1);
  CHECK(format_snf(levels[0].records[1].snf) == "(1)");
  CHECK(levels[0].records[1].matrices == 1);
  CHECK(levels[0].phi_reps.size() == 2);

  REQUIRE(levels[1].records.size() == 3);
  CHECK(levels[1].records[1].matrices == 9);
  CHECK(levels[1].records[1].pi_classes == 4);
  CHECK(levels[1].records[1].phi_classes == 1);
  CHECK(levels[1].records[2].matrices == 6);
  CHECK(format_matrix_line(levels[1].records[2].representative) == "1,2");
  CHECK(levels[1].phi_reps.size() == 3);

  check_level(levels[2], kOrder3, 5);
  check_level(levels[3], kOrder4, 8);
  CHECK(levels[2].phi_reps.size() == 12);
  CHECK(levels[3].phi_reps.size() == 39);

  for (const LevelResult& level : levels) {
    VerifyReport rep = verify_level(level);
    CHECK(rep.ok);
    CHECK(verify_level_deep(level).ok);
  }
}

TEST_CASE("pipeline partition matches brute force at orders 1-3") {
  auto levels = classify_up_to(3, options());
  for (int n = 1; n <= 3; ++n) {
    // brute force: group every matrix by (snf, pi-rep, phi-rep)
    std::map<std::vector<std::int64_t>,
             std::pair<std::set<std::vector<std::uint64_t>>,
                       std::set<std::vector<std::uint64_t>>>>
        by_snf;  // snf -> (pi reps, phi reps)
    std::map<std::vector<std::int64_t>, unsigned long> matrix_count;
    std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      BitMatrix a(n);
      for (int i = 0; i < n; ++i) {
        a.set_row(i, (bits >> (n * i)) & ((std::uint64_t{1} << n) - 1));
      }
      auto snf = smith_normal_form(a).diag;
      by_snf[snf].first.insert(pi_representative(a).rep.rows());
      by_snf[snf].second.insert(phi_representative(a).rows());
      ++matrix_count[snf];
    }
    const LevelResult& level = levels[static_cast<size_t>(n - 1)];
    REQUIRE(level.records.size() == by_snf.size());
    for (const ClassRecord& r : level.records) {
      auto it = by_snf.find(r.snf.diag);
      REQUIRE(it != by_snf.end());
      CHECK(r.pi_classes == static_cast<unsigned long>(it->second.first.size()));
      CHECK(r.phi_classes ==
            static_cast<unsigned long>(it->second.second.size()));
      CHECK(r.matrices == matrix_count[r.snf.diag]);
      CHECK(it->second.second.count(r.representative.rows()) == 1);
      // representative is the smallest phi-rep of the class
      CHECK(r.representative.rows() == *it->second.second.begin());
    }
  }
}

TEST_CASE("extend_level members are canonical and cover every phi class") {
  auto levels = classify_up_to(2, options());
  auto ext = extend_level(levels[1].phi_reps, options());
  // sorted and duplicate-free pi-representatives
  for (size_t i = 0; i < ext.size(); ++i) {
    CHECK(pi_representative(ext[i]).rep == ext[i]);
    if (i > 0) CHECK(lex_less(ext[i - 1], ext[i]));
  }
  // reduction finds all 12 phi classes of order 3
  auto phi = reduce_to_phi(ext, options());
  CHECK(phi.size() == 12);

  // singleton seed: representatives of the borders of [0], nothing else
  auto single = extend_level({BitMatrix::zero(1)}, options());
  std::set<std::vector<std::uint64_t>> expect;
  for (std::uint64_t x = 0; x < 2; ++x) {
    for (std::uint64_t y = 0; y < 2; ++y) {
      for (int b = 0; b < 2; ++b) {
        BitMatrix m(2);
        m.set_row(0, y);
        m.set_row(1, (x << 1) | static_cast<std::uint64_t>(b));
        expect.insert(pi_representative(m).rep.rows());
      }
    }
  }
  REQUIRE(single.size() == expect.size());
  for (const BitMatrix& m : single) CHECK(expect.count(m.rows()) == 1);
}

TEST_CASE("reduce_to_phi handles known reductions") {
  // all 36 order-3 pi-representatives reduce to 12 phi classes
  std::vector<BitMatrix> pi3;
  for (std::uint64_t bits = 0; bits < 512; ++bits) {
    BitMatrix a(3);
    for (int i = 0; i < 3; ++i) a.set_row(i, (bits >> (3 * i)) & 7);
    if (pi_representative(a).rep == a) pi3.push_back(a);
  }
  REQUIRE(pi3.size() == 36);
  std::sort(pi3.begin(), pi3.end(),
            [](const BitMatrix& a, const BitMatrix& b) {
              return lex_less(a, b);
            });
  CHECK(reduce_to_phi(pi3, options()).size() == 12);

  CHECK(reduce_to_phi({BitMatrix::zero(3)}, options()) ==
        std::vector<BitMatrix>{BitMatrix::zero(3)});

  PipelineOptions tiny;
  tiny.memory_budget = 4;  // below (n+1)^2
  CHECK_THROWS_AS(reduce_to_phi(pi3, tiny), ConfigError);

  std::vector<BitMatrix> unsorted{BitMatrix::ones(3), BitMatrix::zero(3)};
  CHECK_THROWS_AS(reduce_to_phi(unsorted, options()), ConfigError);
}

TEST_CASE("deterministic across thread counts, budgets and toggles") {
  auto base = classify_up_to(4, options(1));
  std::string expect;
  for (const auto& level : base) expect += level_fingerprint(level);

  for (int threads : {2, 4, 8}) {
    auto got = classify_up_to(4, options(threads));
    std::string fp;
    for (const auto& level : got) fp += level_fingerprint(level);
    CHECK(fp == expect);
  }

  PipelineOptions no_warm = options(4);
  no_warm.warm_start = false;
  PipelineOptions no_heur = options(4);
  no_heur.canon.symmetry_heuristic = false;
  PipelineOptions tiny_budget = options(4);
  tiny_budget.memory_budget = 64;  // forces spill runs and small batches
  PipelineOptions partition = options(4);
  partition.snf_partition = true;
  for (const PipelineOptions& o : {no_warm, no_heur, tiny_budget, partition}) {
    auto got = classify_up_to(4, o);
    std::string fp;
    for (const auto& level : got) fp += level_fingerprint(level);
    CHECK(fp == expect);
  }
}

TEST_CASE("singular forms at order n+1 are the order-n forms plus a zero") {
  auto levels = classify_up_to(5, options());
  for (int n = 1; n <= 4; ++n) {
    std::set<std::vector<std::int64_t>> at_n, singular_above;
    for (const ClassRecord& r : levels[static_cast<size_t>(n - 1)].records) {
      auto d = r.snf.diag;
      d.push_back(0);
      at_n.insert(d);
    }
    for (const ClassRecord& r : levels[static_cast<size_t>(n)].records) {
      if (r.snf.rank() < r.snf.order()) singular_above.insert(r.snf.diag);
    }
    CHECK(at_n == singular_above);
  }
}

TEST_CASE("verify_level flags tampered data") {
  auto levels = classify_up_to(3, options());
  LevelResult level = levels[2];
  CHECK(verify_level(level).ok);

  LevelResult bad = level;
  bad.records[1].matrices += 1;
  VerifyReport rep = verify_level(bad);
  CHECK_FALSE(rep.ok);

  bad = level;
  bad.records[2].pi_classes = bad.records[2].phi_classes - 1;
  CHECK_FALSE(verify_level(bad).ok);

  bad = level;
  bad.phi_reps.pop_back();
  CHECK_FALSE(verify_level(bad).ok);

  bad = level;
  bad.phi_reps[0] = BitMatrix::ones(3);  // not canonical, breaks sorting
  CHECK_FALSE(verify_level_deep(bad).ok);
}

TEST_CASE("checkpoints round-trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "zeroone_ckpt_test";
  fs::remove_all(dir);
  PipelineOptions o = options();
  o.checkpoint_dir = dir.string();
  o.binary_checkpoints = true;
  auto levels = classify_up_to(3, o);
  for (const LevelResult& level : levels) {
    LevelResult back = read_checkpoint(dir.string(), level.order);
    CHECK(back.phi_reps == level.phi_reps);
    CHECK(classes_tsv(back) == classes_tsv(level));
  }
  auto bin = read_matrix_set_binary((dir / "level_3_phi.bin").string());
  CHECK(bin == levels[2].phi_reps);
  fs::remove_all(dir);
}

TEST_CASE("binary set format groups shared prefixes") {
  namespace fs = std::filesystem;
  fs::path file = fs::temp_directory_path() / "zeroone_bms_test.bin";
  std::mt19937_64 rng(501);
  for (int n : {2, 5, 8}) {
    std::vector<BitMatrix> set;
    for (int it = 0; it < 300; ++it) set.push_back(oracle::random_matrix(n, rng));
    std::sort(set.begin(), set.end(),
              [](const BitMatrix& a, const BitMatrix& b) {
                return lex_less(a, b);
              });
    set.erase(std::unique(set.begin(), set.end()), set.end());
    write_matrix_set_binary(file.string(), set, n);
    CHECK(read_matrix_set_binary(file.string()) == set);
  }
  fs::remove(file);
  CHECK_THROWS_AS(write_matrix_set_binary(file.string(), {}, 9), ConfigError);
}
