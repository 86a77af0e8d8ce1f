#include <doctest.h>

#include <random>

#include "codequiv/bench.hpp"
#include "codequiv/solver.hpp"
#include "oracles.hpp"

using namespace codequiv;

namespace {

LinearCode code(const FieldPtr& f, std::initializer_list<std::initializer_list<std::uint32_t>> rows) {
  return LinearCode(Matrix::from_rows(f, rows));
}

// Independent re-check of a claimed witness.
void check_witness(const LinearCode& a, const LinearCode& b, const Verdict& v) {
  if (v.outcome != Outcome::Equivalent) return;
  REQUIRE(v.witness.has_value());
  REQUIRE(oracle::maps_onto(a, b, *v.witness));
}

}  // namespace

TEST_CASE("precheck") {
  const auto f2 = Field::prime(2);
  const LinearCode a10 = random_code(f2, 10, 4, 1);
  const LinearCode a12 = random_code(f2, 12, 4, 1);
  const auto r = precheck(a10, a12);
  REQUIRE(r.has_value());
  CHECK(r->find("length mismatch") != std::string::npos);
  CHECK(precheck(code(f2, {{1, 1, 1}}), code(f2, {{1, 1, 0}})).has_value());
  CHECK_FALSE(precheck(a10, a10).has_value());
  CHECK_THROWS_AS(precheck(a10, random_code(Field::prime(3), 10, 4, 1)), Error);

  const auto f4 = Field::standard(4);
  // same Euclidean hull dimension, different Hermitian one
  const LinearCode w = code(f4, {{1, 2, 3}});
  const LinearCode s = code(f4, {{1, 1, 0}});
  REQUIRE(hull_dimension(w) == hull_dimension(s));
  const auto rh = precheck(w, s);
  REQUIRE(rh.has_value());
  CHECK(rh->find("hermitian(1)") != std::string::npos);

  const Verdict v = decide(a10, a12);
  CHECK(v.outcome == Outcome::Inequivalent);
  CHECK(v.path == Path::Precheck);
}

TEST_CASE("trivial hull path") {
  const auto f2 = Field::prime(2);
  const LinearCode ones = code(f2, {{1, 1, 1}});
  const Verdict same = decide_trivial_hull(ones, ones, InnerProduct::euclidean());
  CHECK(same.outcome == Outcome::Equivalent);
  CHECK(verify_witness(ones, ones, *same.witness));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + draw_below(rng, 62);
    const auto a = random_trivial_hull_code(f2, n, n / 2, InnerProduct::euclidean(), rng()).code;
    const auto b = permute(a, random_permutation(n, rng));
    const Verdict v = decide(a, b);
    REQUIRE(v.outcome == Outcome::Equivalent);
    REQUIRE(v.path == Path::TrivialHull);
    REQUIRE(verify_witness(a, b, *v.witness));
  }

  // independent codes of length 16: the invariants-only cross check
  for (int t = 0; t < 10; ++t) {
    const auto a = random_trivial_hull_code(f2, 16, 8, InnerProduct::euclidean(), rng()).code;
    const auto b = random_trivial_hull_code(f2, 16, 8, InnerProduct::euclidean(), rng()).code;
    const Verdict v = decide(a, b);
    if (v.outcome == Outcome::Equivalent) {
      REQUIRE(verify_witness(a, b, *v.witness));
    } else {
      REQUIRE(v.outcome == Outcome::Inequivalent);
    }
  }

  CHECK_THROWS_AS(decide_trivial_hull(code(f2, {{1, 1, 0}}), code(f2, {{1, 1, 0}}),
                                      InnerProduct::euclidean()),
                  Error);
}

TEST_CASE("Hermitian sweep") {
  const auto f4 = Field::standard(4);
  const LinearCode a = code(f4, {{1, 2, 3}});
  const LinearCode b = permute(a, Permutation({1, 0, 2}));
  const auto v = hermitian_sweep(a, b);
  REQUIRE(v.has_value());
  CHECK(v->outcome == Outcome::Equivalent);
  CHECK(v->path == Path::Hermitian);
  CHECK(v->path_label() == "Hermitian(1)");
  check_witness(a, b, *v);

  const Verdict d = decide(a, b);
  CHECK(d.path_label() == "Hermitian(1)");
  CHECK(d.outcome == Outcome::Equivalent);

  CHECK_FALSE(hermitian_sweep(random_code(Field::prime(3), 5, 2, 1), random_code(Field::prime(3), 5, 2, 2))
                  .has_value());

  // theta-hull dimension 0 against 1 decides immediately
  const LinearCode s = code(f4, {{1, 1, 0}});
  const auto mixed = hermitian_sweep(a, s);
  REQUIRE(mixed.has_value());
  CHECK(mixed->outcome == Outcome::Inequivalent);
}

TEST_CASE("shortening path by hand") {
  const auto f2 = Field::prime(2);
  const LinearCode a = code(f2, {{1, 1, 0, 0}, {0, 0, 1, 0}});
  REQUIRE(hull_dimension(a) == 1);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const LinearCode b = permute(a, random_permutation(4, rng));
    const Verdict v = decide(a, b);
    CHECK(v.path == Path::ShorteningSearch);
    CHECK(v.outcome == Outcome::Equivalent);
    check_witness(a, b, v);
    SolverConfig oc;
    oc.strategy = Strategy::ForceOracle;
    CHECK(decide(a, b, oc).outcome == Outcome::Equivalent);
  }

  const LinearCode sd = code(f2, {{1, 1, 0, 0}, {0, 0, 1, 1}});
  const Verdict self = decide_with_hull(sd, sd);
  CHECK(self.outcome == Outcome::Equivalent);
  check_witness(sd, sd, self);

  const Verdict diff = decide(sd, code(f2, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(diff.outcome == Outcome::Inequivalent);
  CHECK(diff.path == Path::Precheck);
}

TEST_CASE("passing every shortening check does not imply equivalence") {
  // Both pairs pass the shortened and punctured checks for some J, yet no
  // permutation maps A onto B; only the witness search can tell.
  SolverConfig cfg;
  cfg.oracle_max_length = 1;  // keep the oracle out of the decision
  const auto f3 = Field::prime(3);
  const LinearCode a3 = code(f3, {{1, 2, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 2, 1}});
  const LinearCode b3 = code(f3, {{1, 0, 1, 2, 1, 1, 2}, {0, 1, 1, 0, 2, 0, 0}});
  const auto f2 = Field::prime(2);
  const LinearCode a2 = code(f2, {{1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1}, {0, 0, 1, 1, 1, 0, 0, 1, 0, 1, 0}});
  const LinearCode b2 = code(f2, {{1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0}, {0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0}});
  for (const auto& [a, b] : {std::pair{a3, b3}, std::pair{a2, b2}}) {
    REQUIRE_FALSE(oracle::equivalent(a, b));
    const Verdict v = decide(a, b, cfg);
    CHECK(v.path == Path::ShorteningSearch);
    CHECK(v.outcome == Outcome::Inequivalent);
    CHECK(v.stats.filter_passes > 0);
    CHECK(v.stats.unconfirmed_passes == v.stats.filter_passes);
  }
}

TEST_CASE("oracle by hand") {
  const auto f3 = Field::prime(3);
  const Verdict v = brute_force_oracle(code(f3, {{1, 1, 0}}), code(f3, {{0, 1, 1}}));
  CHECK(v.outcome == Outcome::Equivalent);
  CHECK(v.witness->to_string() == "3 1 2");  // first in lexicographic order

  const auto f2 = Field::prime(2);
  CHECK(brute_force_oracle(code(f2, {{1, 0, 0}}), code(f2, {{1, 1, 0}})).outcome == Outcome::Inequivalent);
  const LinearCode a = random_code(f2, 6, 3, 3);
  const Verdict id = brute_force_oracle(a, a);
  CHECK(id.witness->is_identity());
  CHECK_THROWS_AS(brute_force_oracle(random_code(f2, 11, 3, 3), random_code(f2, 11, 3, 4)), Error);
  CHECK(brute_force_oracle(random_code(f2, 11, 3, 3), random_code(f2, 11, 3, 3), 11).outcome ==
        Outcome::Equivalent);
}

TEST_CASE("oracle agrees with plain enumeration") {
  std::mt19937_64 rng(13);
  for (const auto& f : {Field::prime(2), Field::prime(3), Field::standard(4)}) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + draw_below(rng, 6);
      const std::size_t k = draw_below(rng, n + 1);
      const LinearCode a = random_code(f, n, k, rng());
      const LinearCode b = t % 2 ? random_code(f, n, k, rng()) : permute(a, random_permutation(n, rng));
      const Verdict v = brute_force_oracle(a, b);
      REQUIRE((v.outcome == Outcome::Equivalent) == oracle::equivalent(a, b));
      check_witness(a, b, v);
    }
  }
}

TEST_CASE("decide agrees with the oracle across hull types") {
  std::mt19937_64 rng(17);
  int by_path[5] = {};
  const std::vector<FieldPtr> fields{Field::prime(2), Field::prime(3), Field::standard(4)};
  for (int t = 0; t < 240; ++t) {
    const auto& f = fields[t % 3];
    const std::size_t n = 2 + draw_below(rng, 6);
    std::size_t h = draw_below(rng, n / 2 + 1);
    if (f->order() == 3 && 2 * h == n && n % 4 == 2) --h;  // no ternary self-dual code of this length
    const std::size_t k = h + draw_below(rng, n - 2 * h + 1);
    if (k == 0) continue;
    const LinearCode a = random_code_with_hull(f, n, k, h, rng()).code;
    LinearCode b = a;
    switch (t % 4) {
      case 0: b = permute(a, random_permutation(n, rng)); break;
      case 1: b = random_code_with_hull(f, n, k, h, rng()).code; break;
      case 2: b = random_code(f, n, k, rng()); break;
      default: {
        // one coordinate changed: often inequivalent, same shape
        Matrix g = a.generator();
        const std::size_t j = draw_below(rng, n);
        g(0, j) = f->add(g(0, j), f->one());
        b = LinearCode(g);
        if (b.dimension() != k) b = a;
      }
    }
    const Verdict v = decide(a, b);
    CAPTURE(v.path_label());
    REQUIRE(v.outcome != Outcome::Undecided);
    REQUIRE(v.equivalent() == oracle::equivalent(a, b));
    check_witness(a, b, v);
    by_path[static_cast<int>(v.path)]++;

    // dual pairs decide the same way
    const Verdict dv = decide(dual(a), dual(b));
    REQUIRE(dv.equivalent() == v.equivalent());
  }
  MESSAGE("paths: precheck " << by_path[0] << ", trivial " << by_path[1] << ", hermitian "
                             << by_path[2] << ", shortening " << by_path[3] << ", oracle "
                             << by_path[4]);
  CHECK(by_path[1] > 0);
  CHECK(by_path[3] > 0);
}

TEST_CASE("forced strategies") {
  const auto f2 = Field::prime(2);
  std::mt19937_64 rng(19);
  const auto a = random_trivial_hull_code(f2, 9, 4, InnerProduct::euclidean(), 3).code;
  const auto b = permute(a, random_permutation(9, rng));
  for (const Strategy s : {Strategy::ForceEuclidean, Strategy::ForceShortening, Strategy::ForceOracle}) {
    SolverConfig cfg;
    cfg.strategy = s;
    const Verdict v = decide(a, b, cfg);
    CHECK(v.outcome == Outcome::Equivalent);
    check_witness(a, b, v);
  }
  SolverConfig herm;
  herm.strategy = Strategy::ForceHermitian;
  CHECK_THROWS_AS(decide(a, b, herm), Error);

  SolverConfig zero;
  zero.max_shorten_subsets = 0;
  CHECK_THROWS_AS(decide(a, b, zero), Error);
}

TEST_CASE("budgets surface as undecided") {
  const auto f2 = Field::prime(2);
  const auto a = random_code_with_hull(f2, 14, 6, 2, 21).code;
  // a code not equivalent to a but with matching invariants
  std::optional<LinearCode> b;
  for (std::uint64_t s = 100; !b; ++s) {
    LinearCode c = random_code_with_hull(f2, 14, 6, 2, s).code;
    if (!precheck(a, c)) b = c;
  }
  SolverConfig cfg;
  cfg.max_shorten_subsets = 1;
  cfg.oracle_max_length = 8;
  const Verdict v = decide(a, *b, cfg);
  CHECK(v.outcome == Outcome::Undecided);
  CHECK(exit_code(v) == 2);
  CHECK(v.stats.subsets_tried == 1);

  const auto t = random_trivial_hull_code(f2, 12, 6, InnerProduct::euclidean(), 4).code;
  SolverConfig tiny;
  tiny.gi_node_limit = 1;
  tiny.oracle_max_length = 1;
  Verdict u = decide(t, permute(t, Permutation::identity(12)), tiny);
  CHECK((u.outcome == Outcome::Undecided || u.outcome == Outcome::Equivalent));
}

TEST_CASE("self-equivalence at moderate length") {
  std::mt19937_64 rng(23);
  const std::vector<FieldPtr> fields{Field::prime(2), Field::prime(3), Field::standard(4)};
  for (int t = 0; t < 100; ++t) {
    const auto& f = fields[t % 3];
    const std::size_t n = 1 + draw_below(rng, 64);
    const auto a = random_trivial_hull_code(f, n, draw_below(rng, n + 1), InnerProduct::euclidean(), rng()).code;
    const auto b = permute(a, random_permutation(n, rng));
    const Verdict v = decide(a, b);
    REQUIRE(v.outcome == Outcome::Equivalent);
    REQUIRE(verify_witness(a, b, *v.witness));
  }
}

TEST_CASE("parallel workers agree") {
  std::mt19937_64 rng(29);
  const auto f2 = Field::prime(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 6 + draw_below(rng, 6);
    const auto a = random_code_with_hull(f2, n, n / 2, 1, rng()).code;
    const auto b = t % 2 ? permute(a, random_permutation(n, rng))
                         : random_code_with_hull(f2, n, n / 2, 1, rng()).code;
    SolverConfig one, four;
    four.workers = 4;
    const Verdict v1 = decide(a, b, one);
    const Verdict v4 = decide(a, b, four);
    REQUIRE(v1.equivalent() == v4.equivalent());
    check_witness(a, b, v4);
  }
}

TEST_CASE("exit codes and labels") {
  Verdict v;
  v.outcome = Outcome::Equivalent;
  CHECK(exit_code(v) == 0);
  v.outcome = Outcome::EquivalentUnwitnessed;
  CHECK(exit_code(v) == 0);
  v.outcome = Outcome::Inequivalent;
  CHECK(exit_code(v) == 1);
  v.outcome = Outcome::Undecided;
  CHECK(exit_code(v) == 2);
  CHECK(to_string(Outcome::Equivalent) == "equivalent");
  CHECK(to_string(Path::ShorteningSearch) == "ShorteningSearch");
}

TEST_CASE("bench rows and CSV") {
  const auto rows = run_bench({16, 32}, 3, 1);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.verdict == "Equivalent");
    CHECK(r.k == r.n / 2);
    CHECK(r.field == "GF(2)");
    CHECK(r.t_sigma >= 0);
    CHECK(r.t_gi >= 0);
  }
  CHECK(parse_bench_csv(bench_csv(rows)) == rows);
  CHECK(bench_csv(rows).rfind("n,k,field,t_sigma_s,t_gi_s,verdict\n", 0) == 0);
  CHECK(bench_table(rows).find("GF(2)") != std::string::npos);
  CHECK_THROWS_AS(run_bench_instance(15, 1), Error);
  CHECK_THROWS_AS(parse_bench_csv("n,k\n"), Error);
  CHECK(bench_seed(1, 16, 0) != bench_seed(1, 16, 1));
}
