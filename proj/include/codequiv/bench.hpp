#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace codequiv {

// One timed decision on a constructed-equivalent binary pair, k = n/2.
struct BenchRecord {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string field;
  double t_sigma = 0;  // both projectors
  double t_gi = 0;     // isomorphism search including witness check
  std::string verdict;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// Seed of trial t at length n, derived from the run seed.
std::uint64_t bench_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

// Throws DimensionMismatch for odd or zero n.
BenchRecord run_bench_instance(std::size_t n, std::uint64_t seed, unsigned workers = 1);
std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& lengths, std::size_t trials,
                                   std::uint64_t seed, unsigned workers = 1);

// Columns n,k,field,t_sigma_s,t_gi_s,verdict. Times are written with
// round-trip precision.
std::string bench_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> parse_bench_csv(const std::string& text);
std::string bench_table(const std::vector<BenchRecord>& records);

}  // namespace codequiv
