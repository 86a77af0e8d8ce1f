// codequiv: permutation equivalence of linear codes over finite fields.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "codequiv/bench.hpp"
#include "codequiv/code_io.hpp"
#include "codequiv/error.hpp"
#include "codequiv/projector.hpp"
#include "codequiv/solver.hpp"

using namespace codequiv;

namespace {

constexpr int kErrorExit = 3;

InnerProduct parse_ip(const std::string& s) {
  if (s == "euclidean") return InnerProduct::euclidean();
  if (s.rfind("hermitian=", 0) == 0) {
    const int e = std::stoi(s.substr(10));
    if (e < 1) throw Error(ErrorKind::InvalidAutomorphism, "hermitian power must be >= 1");
    return InnerProduct::hermitian(static_cast<unsigned>(e));
  }
  throw Error(ErrorKind::Parse, "unknown inner product '" + s + "'");
}

void apply_strategy(const std::string& s, SolverConfig& cfg) {
  if (s == "auto") {
    cfg.strategy = Strategy::Auto;
  } else if (s == "euclidean") {
    cfg.strategy = Strategy::ForceEuclidean;
  } else if (s.rfind("hermitian=", 0) == 0) {
    cfg.strategy = Strategy::ForceHermitian;
    cfg.hermitian_power = parse_ip(s).automorphism();
  } else if (s == "shorten") {
    cfg.strategy = Strategy::ForceShortening;
  } else if (s == "oracle") {
    cfg.strategy = Strategy::ForceOracle;
  } else {
    throw Error(ErrorKind::Parse, "unknown strategy '" + s + "'");
  }
}

// "q" for the built-in field of that order, or "p m c0 ... cm".
FieldPtr parse_field_arg(const std::string& arg) {
  std::istringstream in(arg);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  if (toks.size() == 1) return Field::standard(std::stoull(toks[0]));
  return parse_field_header("field " + arg);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, path + ": cannot open for writing");
  out << text;
}

void print_verdict(const Verdict& v, std::ostream& os) {
  os << "verdict: " << to_string(v.outcome) << "\n";
  os << "path: " << v.path_label() << "\n";
  if (v.witness) os << "witness: " << v.witness->to_string() << "\n";
  if (!v.reason.empty()) os << "reason: " << v.reason << "\n";
  const auto& s = v.stats;
  os << "stats: gi_calls=" << s.gi_calls << " gi_nodes=" << s.gi_nodes
     << " subsets_tried=" << s.subsets_tried << " filter_passes=" << s.filter_passes
     << " witness_candidates=" << s.witness_candidates << " skipped_subtests=" << s.skipped_subtests
     << " unconfirmed_passes=" << s.unconfirmed_passes
     << " sigma_s=" << s.sigma_seconds << " gi_s=" << s.gi_seconds << " wall_s=" << s.wall_seconds
     << "\n";
  for (const auto& w : v.warnings) os << "warning: " << w << "\n";
}

std::string generated_header(const std::string& what, std::uint64_t seed) {
  return "# codequiv gen " + what + ", seed " + std::to_string(seed) + "\n";
}

struct GenOptions {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string field = "2";
  std::string mode = "equivalent-pair";
  std::string hull = "trivial";
  std::uint64_t seed = 0;
  std::string out = "code";
};

LinearCode sample(const FieldPtr& f, const GenOptions& o, std::uint64_t seed) {
  if (o.hull == "trivial") {
    return random_trivial_hull_code(f, o.n, o.k, InnerProduct::euclidean(), seed).code;
  }
  if (o.hull.rfind("dim=", 0) == 0) {
    const auto h = static_cast<std::size_t>(std::stoull(o.hull.substr(4)));
    return random_code_with_hull(f, o.n, o.k, h, seed).code;
  }
  throw Error(ErrorKind::Parse, "unknown --hull value '" + o.hull + "'");
}

int cmd_gen(const GenOptions& o) {
  if (o.k > o.n) throw Error(ErrorKind::DimensionMismatch, "k must not exceed n");
  const FieldPtr f = parse_field_arg(o.field);
  const LinearCode a = sample(f, o, o.seed);
  const std::string head = generated_header(o.mode, o.seed);

  if (o.mode == "single") {
    write_text(o.out + ".code", head + format_code(a));
    std::cout << "# seed " << o.seed << "\nwrote " << o.out << ".code\n";
    return 0;
  }
  if (o.mode == "equivalent-pair") {
    std::mt19937_64 rng(o.seed ^ 0x2545f4914f6cdd1dULL);
    const Permutation pi = random_permutation(o.n, rng);
    write_text(o.out + "_A.code", head + format_code(a));
    write_text(o.out + "_B.code", head + format_code(permute(a, pi)));
    write_text(o.out + "_key.perm", head + pi.to_string() + "\n");
  } else if (o.mode == "inequivalent-pair") {
    std::optional<LinearCode> b;
    for (std::uint64_t attempt = 1; attempt <= 1000 && !b; ++attempt) {
      LinearCode c = sample(f, o, o.seed + attempt * 0x9e3779b97f4a7c15ULL);
      if (!(c == a) && !precheck(a, c)) b = std::move(c);
    }
    if (!b) {
      throw Error(ErrorKind::SamplingExhausted,
                  "no second code with matching invariants after 1000 draws");
    }
    write_text(o.out + "_A.code", head + format_code(a));
    write_text(o.out + "_B.code", head + format_code(*b));
  } else {
    throw Error(ErrorKind::Parse, "unknown --mode '" + o.mode + "'");
  }
  std::cout << "# seed " << o.seed << "\nwrote " << o.out << "_A.code " << o.out << "_B.code"
            << (o.mode == "equivalent-pair" ? " " + o.out + "_key.perm" : "") << "\n";
  return 0;
}

int cmd_hull(const std::string& path) {
  const LinearCode c = read_code_file(path);
  const auto spectrum = hull_spectrum(c);
  for (unsigned e = 0; e < spectrum.size(); ++e) {
    const InnerProduct ip = e == 0 ? InnerProduct::euclidean() : InnerProduct::hermitian(e);
    std::cout << ip.to_string() << " hull dim " << spectrum[e] << "\n";
  }
  return 0;
}

int cmd_sigma(const std::string& path, const std::string& ip) {
  const LinearCode c = read_code_file(path);
  const Projector p = make_projector(c, parse_ip(ip));
  std::cout << "# " << ip << " projector, " << c.field().name() << ", n = " << c.length() << "\n"
            << format_matrix(p.sigma);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation equivalence of linear codes over finite fields"};
  app.require_subcommand(1);

  std::string file_a, file_b;
  std::string strategy = "auto";
  SolverConfig cfg;
  std::uint64_t seed = 0;

  auto* equiv = app.add_subcommand("equiv", "decide whether B is a coordinate permutation of A");
  equiv->add_option("A", file_a, "first code file")->required();
  equiv->add_option("B", file_b, "second code file")->required();
  equiv->add_option("--strategy", strategy, "auto|euclidean|hermitian=E|shorten|oracle");
  equiv->add_option("--max-subsets", cfg.max_shorten_subsets, "cap on shortening sets tried")
      ->check(CLI::PositiveNumber);
  equiv->add_option("--witness-budget", cfg.witness_budget, "witness search nodes on the shortening path")
      ->check(CLI::PositiveNumber);
  equiv->add_option("--oracle-cap", cfg.oracle_max_length, "longest code handed to the oracle")
      ->check(CLI::PositiveNumber);
  equiv->add_option("--node-limit", cfg.gi_node_limit, "isomorphism search nodes (0 = unlimited)");
  equiv->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  equiv->add_option("--seed", seed, "recorded seed");

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "generate random codes or code pairs");
  gen->add_option("--n", gen_opt.n, "length")->required();
  gen->add_option("--k", gen_opt.k, "dimension")->required();
  gen->add_option("--field", gen_opt.field, "q, or \"p m c0 ... cm\"");
  gen->add_option("--mode", gen_opt.mode, "equivalent-pair|inequivalent-pair|single");
  gen->add_option("--hull", gen_opt.hull, "trivial|dim=h");
  gen->add_option("--seed", gen_opt.seed, "sampling seed");
  gen->add_option("--out", gen_opt.out, "output path prefix");

  std::vector<std::size_t> bench_n{256, 512, 1000};
  std::size_t trials = 1;
  std::string csv_path;
  unsigned bench_workers = 1;
  auto* bench = app.add_subcommand("bench", "time projector construction and isomorphism search");
  bench->add_option("--n", bench_n, "even lengths; k = n/2")->delimiter(',');
  bench->add_option("--trials", trials, "pairs per length")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "run seed");
  bench->add_option("--csv", csv_path, "also write CSV here");
  bench->add_option("--workers", bench_workers, "worker threads")->check(CLI::PositiveNumber);

  auto* hull_cmd = app.add_subcommand("hull", "hull dimensions under every inner product");
  hull_cmd->add_option("FILE", file_a, "code file")->required();

  std::string ip = "euclidean";
  auto* sigma = app.add_subcommand("sigma", "print the projector matrix");
  sigma->add_option("FILE", file_a, "code file")->required();
  sigma->add_option("--ip", ip, "euclidean|hermitian=E");

  std::size_t oracle_cap = 10;
  auto* oracle = app.add_subcommand("oracle", "exhaustive search over all permutations");
  oracle->add_option("A", file_a, "first code file")->required();
  oracle->add_option("B", file_b, "second code file")->required();
  oracle->add_option("--cap", oracle_cap, "largest length accepted")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*equiv) {
      apply_strategy(strategy, cfg);
      cfg.seed = seed;
      const LinearCode a = read_code_file(file_a);
      const LinearCode b = read_code_file(file_b);
      const Verdict v = decide(a, b, cfg);
      std::cout << "# seed " << seed << "\n";
      print_verdict(v, std::cout);
      return exit_code(v);
    }
    if (*gen) return cmd_gen(gen_opt);
    if (*bench) {
      std::cout << "# seed " << seed << ", GF(2), k = n/2, " << trials << " trial(s) per n\n";
      std::vector<BenchRecord> rows;
      for (const std::size_t n : bench_n) {
        for (std::size_t t = 0; t < trials; ++t) {
          rows.push_back(run_bench_instance(n, bench_seed(seed, n, t), bench_workers));
        }
      }
      std::cout << bench_table(rows);
      if (!csv_path.empty()) write_text(csv_path, bench_csv(rows));
      for (const auto& r : rows) {
        if (r.verdict != "Equivalent") return 1;
      }
      return 0;
    }
    if (*hull_cmd) return cmd_hull(file_a);
    if (*sigma) return cmd_sigma(file_a, ip);
    if (*oracle) {
      const Verdict v = brute_force_oracle(read_code_file(file_a), read_code_file(file_b), oracle_cap);
      print_verdict(v, std::cout);
      return exit_code(v);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kErrorExit;
  }
  return kErrorExit;
}
