#include "codequiv/bench.hpp"

#include <cstdio>
#include <random>
#include <sstream>

#include "codequiv/error.hpp"
#include "codequiv/solver.hpp"

namespace codequiv {

std::uint64_t bench_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  // splitmix64 over the triple; keeps trials independent of run order.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (n * 1000003ULL + trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BenchRecord run_bench_instance(std::size_t n, std::uint64_t seed, unsigned workers) {
  if (n % 2 != 0 || n == 0) {
    throw Error(ErrorKind::DimensionMismatch, "bench lengths must be even and positive");
  }
  const FieldPtr gf2 = Field::prime(2);
  const std::size_t k = n / 2;
  const LinearCode a =
      random_trivial_hull_code(gf2, n, k, InnerProduct::euclidean(), seed).code;
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  const LinearCode b = permute(a, random_permutation(n, rng));

  SolverConfig cfg;
  cfg.workers = workers;
  const Verdict v = decide_trivial_hull(a, b, InnerProduct::euclidean(), cfg);
  BenchRecord r;
  r.n = n;
  r.k = k;
  r.field = gf2->name();
  r.t_sigma = v.stats.sigma_seconds;
  r.t_gi = v.stats.gi_seconds;
  r.verdict = v.outcome == Outcome::Equivalent ? "Equivalent"
              : v.outcome == Outcome::Inequivalent ? "Inequivalent"
                                                   : "Undecided";
  return r;
}

std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& lengths, std::size_t trials,
                                   std::uint64_t seed, unsigned workers) {
  std::vector<BenchRecord> out;
  for (const std::size_t n : lengths) {
    for (std::size_t t = 0; t < trials; ++t) {
      out.push_back(run_bench_instance(n, bench_seed(seed, n, t), workers));
    }
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "n,k,field,t_sigma_s,t_gi_s,verdict\n";
  char buf[64];
  for (const auto& r : records) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.field + ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.t_sigma);
    out += buf;
    out += ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.t_gi);
    out += buf;
    out += "," + r.verdict + "\n";
  }
  return out;
}

std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BenchRecord> out;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "n,k,field,t_sigma_s,t_gi_s,verdict") {
        throw Error(ErrorKind::Parse, "line 1: unexpected bench CSV header");
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected 6 columns");
    }
    try {
      BenchRecord r;
      r.n = std::stoull(cells[0]);
      r.k = std::stoull(cells[1]);
      r.field = cells[2];
      r.t_sigma = std::stod(cells[3]);
      r.t_gi = std::stod(cells[4]);
      r.verdict = cells[5];
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return out;
}

std::string bench_table(const std::vector<BenchRecord>& records) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%8s %8s %8s %12s %12s  %s\n", "n", "k", "field", "sigma (s)",
                "GI (s)", "verdict");
  out += buf;
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%8zu %8zu %8s %12.4f %12.4f  %s\n", r.n, r.k, r.field.c_str(),
                  r.t_sigma, r.t_gi, r.verdict.c_str());
    out += buf;
  }
  return out;
}

}  // namespace codequiv
