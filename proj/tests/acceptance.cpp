// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "codequiv/bench.hpp"
#include "codequiv/projector.hpp"
#include "codequiv/solver.hpp"
#include "oracles.hpp"

using namespace codequiv;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (pass) note << "first failure: " << why << "; ";
    pass = false;
  }
};

bool report(const std::string& id, const std::string& title,
            const std::function<void(Check&)>& body) {
  Check r;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  std::cout << id << " " << (r.pass ? "PASS" : "FAIL") << "  " << title << "  [" << r.note.str()
            << std::fixed << std::setprecision(2) << since(t0) << " s]" << std::endl;
  return r.pass;
}

InnerProduct ip_of(unsigned e) { return e ? InnerProduct::hermitian(e) : InnerProduct::euclidean(); }

// Matching invariants but drawn independently.
template <class Draw>
LinearCode independent_partner(const LinearCode& a, Draw draw, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    LinearCode c = draw(rng());
    if (!precheck(a, c)) return c;
  }
  return draw(rng());
}

void projector_laws(Check& r) {
  std::mt19937_64 rng(0xac1);
  const std::vector<FieldPtr> fields{Field::prime(2), Field::prime(3), Field::standard(16)};
  int codes = 0, bases = 0;
  for (int t = 0; t < 200; ++t) {
    const auto& f = fields[t % 3];
    const std::size_t n = 1 + draw_below(rng, 64);
    const std::size_t k = draw_below(rng, n + 1);
    const LinearCode u = random_trivial_hull_code(f, n, k, InnerProduct::euclidean(), rng()).code;
    const Matrix s = make_projector(u).sigma;
    const Matrix sd = make_projector(dual(u)).sigma;
    const std::string tag = f->name() + " n=" + std::to_string(n) + " k=" + std::to_string(k);
    if (!(matmul(s, s) == s)) r.fail(tag + " Sigma^2 != Sigma");
    if (!(transpose(s) == s)) r.fail(tag + " Sigma not symmetric");
    if (!(add(s, sd) == Matrix::identity(f, n))) r.fail(tag + " Sigma_U + Sigma_dual != I");
    if (!matmul(s, sd).is_zero()) r.fail(tag + " Sigma_U Sigma_dual != 0");
    if (rank(s) != k) r.fail(tag + " rank Sigma != k");
    for (int i = 0; i < 10; ++i) {
      const Matrix g = matmul(oracle::random_invertible(f, k, rng), u.generator());
      if (!(make_projector(LinearCode(g)).sigma == s)) r.fail(tag + " basis dependence");
      ++bases;
    }
    ++codes;
  }
  r.note << codes << " codes over GF(2)/GF(3)/GF(16), n<=64, " << bases << " basis changes; ";
}

void equivariance(Check& r) {
  std::mt19937_64 rng(0xac2);
  const std::vector<std::pair<FieldPtr, unsigned>> cases{
      {Field::prime(2), 0}, {Field::prime(3), 0}, {Field::standard(16), 0},
      {Field::standard(4), 1}, {Field::standard(9), 1}, {Field::standard(16), 2}};
  int euclid = 0, herm = 0;
  for (int t = 0; t < 200; ++t) {
    const auto& [f, e] = cases[t % cases.size()];
    const std::size_t n = 1 + draw_below(rng, 48);
    const LinearCode u = random_trivial_hull_code(f, n, draw_below(rng, n + 1), ip_of(e), rng()).code;
    const Permutation pi = random_permutation(n, rng);
    const Matrix x = permutation_matrix(f, pi);
    const Matrix lhs = make_projector(permute(u, pi), ip_of(e)).sigma;
    const Matrix rhs = matmul(transpose(x), matmul(make_projector(u, ip_of(e)).sigma, x));
    if (!(lhs == rhs)) r.fail(f->name() + " " + ip_of(e).to_string() + " n=" + std::to_string(n));
    (e ? herm : euclid)++;
  }
  r.note << euclid << " euclidean + " << herm << " hermitian pairs; ";
}

void oracle_agreement(Check& r) {
  std::mt19937_64 rng(0xac3);
  const auto f2 = Field::prime(2), f3 = Field::prime(3), f4 = Field::standard(4),
             f9 = Field::standard(9);
  int pairs = 0, eq = 0, witnesses = 0;
  int kinds[3] = {};
  std::map<std::string, int> paths;

  auto run = [&](const LinearCode& a, const LinearCode& b) {
    const Verdict v = decide(a, b);
    const Verdict o = brute_force_oracle(a, b);
    ++pairs;
    ++paths[v.path_label().substr(0, v.path_label().find('('))];
    if (v.outcome == Outcome::Undecided) r.fail("undecided at n=" + std::to_string(a.length()));
    if (v.equivalent() != (o.outcome == Outcome::Equivalent)) {
      r.fail("bit differs from oracle on " + a.field().name() + " n=" + std::to_string(a.length()) +
             " via " + v.path_label());
    }
    if (v.outcome == Outcome::Equivalent) {
      if (!v.witness || !oracle::maps_onto(a, b, *v.witness)) r.fail("witness does not verify");
      ++witnesses;
    }
    if (v.outcome == Outcome::EquivalentUnwitnessed) r.fail("equivalent without witness");
    eq += o.outcome == Outcome::Equivalent;
  };

  // 1) trivial Euclidean hull
  for (int t = 0; t < 80; ++t) {
    const auto& f = t % 2 ? f3 : f2;
    const std::size_t n = 2 + draw_below(rng, 7);
    const std::size_t k = 1 + draw_below(rng, n - 1);
    auto draw = [&](std::uint64_t s) {
      return random_trivial_hull_code(f, n, k, InnerProduct::euclidean(), s).code;
    };
    const LinearCode a = draw(rng());
    const LinearCode b = t % 2 == 0 ? permute(a, random_permutation(n, rng)) : independent_partner(a, draw, rng);
    run(a, b);
    ++kinds[0];
  }
  // 2) only a Hermitian hull is trivial
  for (int t = 0; t < 60; ++t) {
    const auto& f = t % 2 ? f9 : f4;
    const std::size_t n = 2 + draw_below(rng, 7);
    const std::size_t k = 1 + draw_below(rng, n - 1);
    auto draw = [&](std::uint64_t s) {
      for (std::uint64_t i = 0;; ++i) {
        LinearCode c = random_trivial_hull_code(f, n, k, InnerProduct::hermitian(1), s + 7919 * i).code;
        if (!has_trivial_hull(c) || i > 200) return c;
      }
    };
    const LinearCode a = draw(rng());
    const LinearCode b = t % 2 == 0 ? permute(a, random_permutation(n, rng)) : independent_partner(a, draw, rng);
    run(a, b);
    ++kinds[1];
  }
  // 3) Euclidean hull of dimension 1 or 2 and no usable Hermitian product
  for (int t = 0; t < 100; ++t) {
    const auto& f = t % 2 ? f3 : f2;
    const std::size_t h = 1 + t % 2;
    const std::size_t n = 2 * h + draw_below(rng, 9 - 2 * h);
    const std::size_t k = h + draw_below(rng, n - 2 * h + 1);
    auto draw = [&](std::uint64_t s) { return random_code_with_hull(f, n, k, h, s).code; };
    const LinearCode a = draw(rng());
    const LinearCode b = t % 3 == 0 ? permute(a, random_permutation(n, rng)) : independent_partner(a, draw, rng);
    run(a, b);
    ++kinds[2];
  }
  if (pairs < 200) r.fail("fewer than 200 pairs");
  r.note << pairs << " pairs (" << kinds[0] << " trivial, " << kinds[1] << " hermitian-only, "
         << kinds[2] << " hull 1-2), " << eq << " equivalent, " << witnesses << " witnesses verified; paths:";
  for (const auto& [p, c] : paths) r.note << " " << p << "=" << c;
  r.note << "; ";
}

void shortened_hulls(Check& r) {
  std::mt19937_64 rng(0xac4);
  int codes = 0;
  for (int t = 0; t < 200; ++t) {
    const auto f = t % 2 ? Field::prime(3) : Field::prime(2);
    // no ternary word of length 2 is self-orthogonal
    const std::size_t n = (t % 2 ? 3 : 2) + draw_below(rng, t % 2 ? 62 : 63);
    std::size_t h = 1 + draw_below(rng, n / 2);
    if (f->order() == 3 && 2 * h == n && n % 4 == 2) --h;  // no ternary self-dual code of this length
    const std::size_t k = h + draw_below(rng, n - 2 * h + 1);
    const LinearCode u = random_code_with_hull(f, n, k, h, rng()).code;
    const LinearCode hl = hull(u);
    if (hl.dimension() != h) r.fail("sampled hull dimension wrong");
    const LinearCode s = shorten(u, information_set_of(hl));
    if (!has_trivial_hull(s)) r.fail(f->name() + " n=" + std::to_string(n) + " h=" + std::to_string(h));
    if (s.dimension() != k - h) r.fail("shortened dimension != k - h");
    if (rank(vstack(s.generator(), hl.generator())) != k) r.fail("shortened code meets the hull");
    ++codes;
  }
  r.note << codes << " codes over GF(2)/GF(3), hull dim >= 1; ";
}

void gf4_example(Check& r) {
  const auto f4 = Field::standard(4);
  const LinearCode a(Matrix::from_rows(f4, {{1, 2, 3}}));
  if (hull_dimension(a) != 1) r.fail("euclidean hull dim != 1");
  if (hull_dimension(a, InnerProduct::hermitian(1)) != 0) r.fail("hermitian hull dim != 0");
  const Matrix expect = Matrix::from_rows(f4, {{1, 2, 3}, {3, 1, 2}, {2, 3, 1}});
  if (!(make_projector(a, InnerProduct::hermitian(1)).sigma == expect)) r.fail("hermitian Sigma");
  const LinearCode b = permute(a, Permutation({1, 0, 2}));
  const Verdict v = decide(a, b);
  if (v.outcome != Outcome::Equivalent) r.fail("not decided equivalent");
  if (v.path_label() != "Hermitian(1)") r.fail("path " + v.path_label());
  if (!v.witness || !oracle::maps_onto(a, b, *v.witness)) r.fail("witness");
  r.note << "hull dims 1/0, path " << v.path_label() << ", witness "
         << (v.witness ? v.witness->to_string() : "-") << "; ";
}

void bench_scale(Check& r) {
  for (const std::size_t n : {256u, 512u, 1000u}) {
    const auto t0 = Clock::now();
    const BenchRecord rec = run_bench_instance(n, bench_seed(0xac6, n, 0));
    const double wall = since(t0);
    if (rec.verdict != "Equivalent") r.fail("n=" + std::to_string(n) + " verdict " + rec.verdict);
    if (wall > 60) r.fail("n=" + std::to_string(n) + " took " + std::to_string(wall) + " s");
    r.note << "n=" << n << " sigma " << std::setprecision(3) << rec.t_sigma << " s gi " << rec.t_gi
           << " s wall " << wall << " s; ";
  }
  // stretch size: reported, not gating
  const auto t0 = Clock::now();
  const BenchRecord rec = run_bench_instance(5000, bench_seed(0xac6, 5000, 0));
  r.note << "stretch n=5000 " << rec.verdict << " in " << since(t0) << " s; ";
}

void negatives(Check& r) {
  std::mt19937_64 rng(0xac7);
  const auto f2 = Field::prime(2);
  int inequivalent = 0;
  for (int t = 0; t < 20; ++t) {
    auto draw = [&](std::uint64_t s) {
      return random_trivial_hull_code(f2, 256, 128, InnerProduct::euclidean(), s).code;
    };
    const LinearCode a = draw(rng());
    const LinearCode b = independent_partner(a, draw, rng);
    if (precheck(a, b)) r.fail("prechecks differ");
    const Verdict v = decide(a, b);
    if (v.outcome == Outcome::Inequivalent) {
      ++inequivalent;
    } else if (v.outcome != Outcome::Equivalent || !verify_witness(a, b, *v.witness)) {
      r.fail(std::string("verdict ") + std::string(to_string(v.outcome)));
    }
  }
  r.note << inequivalent << "/20 inequivalent; ";
}

void shortening_scale(Check& r) {
  std::mt19937_64 rng(0xac8);
  const auto f2 = Field::prime(2);
  int agree = 0, eq = 0;
  std::uint64_t skipped = 0, subsets = 0;
  double solver_s = 0, oracle_s = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 8 + draw_below(rng, 5);
    const std::size_t k = 2 + draw_below(rng, n - 3);
    auto draw = [&](std::uint64_t s) { return random_code_with_hull(f2, n, k, 1, s).code; };
    const LinearCode a = draw(rng());
    const LinearCode b = t < 30 ? permute(a, random_permutation(n, rng)) : independent_partner(a, draw, rng);
    const Verdict v = decide(a, b);
    solver_s += v.stats.wall_seconds;
    const Verdict o = brute_force_oracle(a, b, 12);
    oracle_s += o.stats.wall_seconds;
    const std::string tag = "pair " + std::to_string(t) + " n=" + std::to_string(n);
    if (v.path != Path::ShorteningSearch) r.fail(tag + " path " + v.path_label());
    if (v.equivalent() != (o.outcome == Outcome::Equivalent)) {
      r.fail(tag + " " + std::string(to_string(v.outcome)) + " vs oracle " + std::string(to_string(o.outcome)));
    } else {
      ++agree;
    }
    if (v.outcome == Outcome::Equivalent && !oracle::maps_onto(a, b, *v.witness)) r.fail(tag + " witness");
    eq += o.outcome == Outcome::Equivalent;
    skipped += v.stats.skipped_subtests;
    subsets += v.stats.subsets_tried;
  }
  r.note << agree << "/60 agree (" << eq << " equivalent by oracle), " << subsets
         << " shortening sets, " << skipped << " sub-tests past the oracle cap, solver " << solver_s
         << " s, oracle " << oracle_s << " s; ";
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  bool ok = true;
  ok &= report("AC1", "projector laws", projector_laws);
  ok &= report("AC2", "equivariance Sigma(U^pi) = X^T Sigma(U) X", equivariance);
  ok &= report("AC3", "decide vs brute-force oracle, n <= 8", oracle_agreement);
  ok &= report("AC4", "shortening on a hull information set gives a trivial hull", shortened_hulls);
  ok &= report("AC5", "GF(4) code decided through the Hermitian product", gf4_example);
  ok &= report("AC6", "bench GF(2), n in {256, 512, 1000}, <= 60 s per pair", bench_scale);
  ok &= report("AC7", "20 independent pairs at n = 256 decided inequivalent", negatives);
  const auto t8 = Clock::now();
  ok &= report("AC8", "shortening search vs oracle, hull dim 1, n <= 12", [&](Check& r) {
    shortening_scale(r);
    if (since(t8) > 300) r.fail("over 5 minutes");
  });
  std::cout << (ok ? "ALL PASS" : "SOME FAILED") << " in " << std::fixed << std::setprecision(1)
            << since(t0) << " s" << std::endl;
  return ok ? 0 : 1;
}
