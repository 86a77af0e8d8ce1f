#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codequiv/code.hpp"
#include "codequiv/giso.hpp"

namespace codequiv {

enum class Outcome {
  Equivalent,             // witness present and verified
  Inequivalent,
  EquivalentUnwitnessed,  // shortening search passed, witness budget ran out
  Undecided,              // a search budget was hit before a decision
};

enum class Path { Precheck, TrivialHull, Hermitian, ShorteningSearch, Oracle };

std::string_view to_string(Outcome o);
std::string_view to_string(Path p);

struct SolverStats {
  std::uint64_t gi_calls = 0;
  std::uint64_t gi_nodes = 0;
  std::uint64_t subsets_tried = 0;       // shortening sets J examined
  std::uint64_t filter_passes = 0;       // (J, l', gamma) passing all three checks
  std::uint64_t witness_candidates = 0;  // permutations checked against B = A^pi
  std::uint64_t skipped_subtests = 0;    // non-trivial-hull sub-tests too long for the oracle
  std::uint64_t unconfirmed_passes = 0;  // filter passes whose exhaustive witness search came up empty
  double sigma_seconds = 0;
  double gi_seconds = 0;
  double wall_seconds = 0;

  void merge(const SolverStats& other);
};

struct Verdict {
  Outcome outcome = Outcome::Undecided;
  Path path = Path::Precheck;
  unsigned hermitian_power = 0;  // e for Path::Hermitian
  std::optional<Permutation> witness;  // B == permute(A, witness)
  std::string reason;
  std::vector<std::string> warnings;
  SolverStats stats;

  bool equivalent() const noexcept {
    return outcome == Outcome::Equivalent || outcome == Outcome::EquivalentUnwitnessed;
  }
  std::string path_label() const;
};

enum class Strategy { Auto, ForceEuclidean, ForceHermitian, ForceShortening, ForceOracle };

struct SolverConfig {
  Strategy strategy = Strategy::Auto;
  unsigned hermitian_power = 1;                   // for ForceHermitian
  std::uint64_t max_shorten_subsets = 10'000'000;
  std::uint64_t witness_budget = 1'000'000;       // witness search nodes on the shortening path
  std::size_t oracle_max_length = 10;
  std::uint64_t gi_node_limit = 0;                // 0 = unlimited
  unsigned workers = 1;
  std::uint64_t seed = 0;
  const IsomorphismEngine* engine = nullptr;      // default_engine() when null

  // Throws Internal on zero caps.
  void validate() const;
};

// Process exit status: 0 equivalent, 1 inequivalent, 2 undecided.
int exit_code(const Verdict& v);

bool verify_witness(const LinearCode& a, const LinearCode& b, const Permutation& pi);

// Reason string when a permutation invariant (length, dimension, Euclidean or
// Hermitian hull dimension) differs; nullopt otherwise. Throws FieldMismatch.
std::optional<std::string> precheck(const LinearCode& a, const LinearCode& b);

// Both codes must have a trivial hull under ip (NonTrivialHull otherwise).
// Builds both projectors and searches for a graph isomorphism whose
// permutation also maps A onto B.
Verdict decide_trivial_hull(const LinearCode& a, const LinearCode& b, InnerProduct ip,
                            const SolverConfig& cfg = {});

// Tries Hermitian products e = 1..m-1; nullopt when none gives both codes a
// trivial hull (always for prime fields).
std::optional<Verdict> hermitian_sweep(const LinearCode& a, const LinearCode& b,
                                       const SolverConfig& cfg = {});

// Shortening search for codes with equal Euclidean hull dimension h.
Verdict decide_with_hull(const LinearCode& a, const LinearCode& b, const SolverConfig& cfg = {});

// precheck, then trivial hull, Hermitian sweep, shortening, oracle for tiny n.
Verdict decide(const LinearCode& a, const LinearCode& b, const SolverConfig& cfg = {});

// Exhaustive search over all permutations in lexicographic order, pruned by
// comparing reduced prefixes. Throws TooLarge when n > max_length.
Verdict brute_force_oracle(const LinearCode& a, const LinearCode& b, std::size_t max_length = 10);

}  // namespace codequiv
