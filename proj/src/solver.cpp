#include "codequiv/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

#include "codequiv/error.hpp"
#include "codequiv/projector.hpp"

namespace codequiv {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const IsomorphismEngine& engine_of(const SolverConfig& cfg) {
  return cfg.engine ? *cfg.engine : default_engine();
}

WeightedGraph graph_of(const LinearCode& c, InnerProduct ip, SolverStats& st) {
  const auto t0 = Clock::now();
  Projector p = make_projector(c, ip);
  st.sigma_seconds += since(t0);
  return code_graph(p);
}

struct Match {
  IsoStatus status = IsoStatus::NotIsomorphic;
  std::optional<Permutation> pi;  // y == permute(x, pi)
};

// Graph isomorphisms gy -> gx are exactly the permutations carrying x onto y,
// so the first one should verify. Exhaustion after isomorphisms were seen
// would contradict that and is reported as an internal error.
Match match_codes(const LinearCode& x, const LinearCode& y, const WeightedGraph& gx,
                  const WeightedGraph& gy, const SolverConfig& cfg, unsigned workers,
                  SolverStats& st) {
  const auto t0 = Clock::now();
  std::optional<Permutation> found;
  std::uint64_t tried = 0;
  const IsoVisitor visit = [&](const Permutation& pi) {
    ++tried;
    if (!verify_witness(x, y, pi)) return false;
    found = pi;
    return true;
  };
  const IsoResult r = engine_of(cfg).search(gy, gx, visit, IsoOptions{cfg.gi_node_limit, workers});
  ++st.gi_calls;
  st.gi_nodes += r.nodes;
  st.gi_seconds += since(t0);
  st.witness_candidates += tried;
  if (found) return {IsoStatus::Isomorphic, std::move(found)};
  if (r.status == IsoStatus::BudgetExceeded) return {IsoStatus::BudgetExceeded, {}};
  if (r.leaves_verified > 0) {
    throw Error(ErrorKind::Internal,
                "projector graphs are isomorphic but no isomorphism maps the codes");
  }
  return {};
}

std::string mismatch(const std::string& what, std::size_t x, std::size_t y) {
  return what + " mismatch (" + std::to_string(x) + " vs " + std::to_string(y) + ")";
}

// Advances a strictly increasing h-subset of [0, n) in colexicographic order.
bool next_colex(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t h = s.size();
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t limit = i + 1 < h ? s[i + 1] : n;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (std::size_t j = 0; j < i; ++j) s[j] = j;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> with_replaced(std::vector<std::size_t> set, std::size_t drop,
                                       std::size_t add) {
  std::erase(set, drop);
  set.push_back(add);
  std::sort(set.begin(), set.end());
  return set;
}

// Shortening search state shared by the workers of one decision.
class HullSearch {
 public:
  HullSearch(const LinearCode& a, const LinearCode& b, const SolverConfig& cfg, std::size_t h)
      : a_(a), b_(b), cfg_(cfg), h_(h), n_(a.length()) {
    if (h_ > 0) fixed_ = information_set_of(hull(a_));
    ell_ = 0;
    while (std::binary_search(fixed_.begin(), fixed_.end(), ell_)) ++ell_;
    sa_.emplace(shorten(a_, fixed_));
    if (!has_trivial_hull(*sa_)) {
      throw Error(ErrorKind::Internal,
                  "shortening on an information set of the hull left a non-trivial hull");
    }
    ga_.emplace(graph_of(*sa_, InnerProduct::euclidean(), setup_stats_));
    sa_punct_.emplace(puncture(*sa_, ell_));
    for (std::size_t t = 0; t < h_; ++t) {
      sa_drop_.push_back(shorten(a_, with_replaced(fixed_, fixed_[t], ell_)));
    }
  }

  Verdict run() {
    std::vector<std::size_t> first(h_);
    std::iota(first.begin(), first.end(), std::size_t{0});
    next_ = std::move(first);

    const unsigned workers = std::max(1u, cfg_.workers);
    std::vector<Worker> ws(workers);
    if (workers == 1) {
      work(ws[0], cfg_.workers);
    } else {
      std::vector<std::thread> pool;
      for (auto& w : ws) pool.emplace_back([this, &w] { work(w, 1); });
      for (auto& t : pool) t.join();
    }

    Verdict v;
    v.path = Path::ShorteningSearch;
    v.stats = setup_stats_;
    bool skipped_warned = false;
    for (const auto& w : ws) {
      v.stats.merge(w.stats);
      if (w.stats.skipped_subtests && !skipped_warned) {
        v.warnings.push_back(
            "some sub-tests on codes with non-trivial hulls exceeded the oracle cap and were "
            "skipped (counted as passing)");
        skipped_warned = true;
      }
    }
    v.stats.subsets_tried = tried_;

    if (witness_) {
      v.outcome = Outcome::Equivalent;
      v.witness = witness_;
      v.reason = "shortening set and witness found";
    } else if (unwitnessed_) {
      v.outcome = Outcome::EquivalentUnwitnessed;
      v.reason = "all checks passed but the witness budget ran out before a permutation verified";
    } else if (cap_hit_ || gi_budget_hit_) {
      v.outcome = Outcome::Undecided;
      v.reason = cap_hit_ ? "shortening subset cap reached" : "graph isomorphism node limit reached";
    } else {
      v.outcome = Outcome::Inequivalent;
      v.reason = v.stats.filter_passes
                     ? "candidates passed the checks but no permutation maps A onto B"
                     : "no shortening set of B matches";
    }
    return v;
  }

 private:
  struct Worker {
    SolverStats stats;
  };

  enum class Step { Rejected, Witness, Unwitnessed, Unconfirmed, Budget };

  bool stopped() const { return stop_.load(std::memory_order_relaxed); }

  bool take(std::vector<std::size_t>& j) {
    std::lock_guard lock(mu_);
    if (stop_ || exhausted_) return false;
    if (tried_ >= cfg_.max_shorten_subsets) {
      cap_hit_ = true;
      return false;
    }
    ++tried_;
    j = next_;
    exhausted_ = !next_colex(next_, n_);
    return true;
  }

  void work(Worker& w, unsigned gi_workers) {
    std::vector<std::size_t> j;
    while (!stopped() && take(j)) {
      std::optional<Permutation> pi;
      const Step s = examine(j, gi_workers, w.stats, pi);
      std::lock_guard lock(mu_);
      switch (s) {
        case Step::Witness:
          if (!witness_) witness_ = std::move(pi);
          stop_ = true;
          break;
        case Step::Unwitnessed: unwitnessed_ = true; break;
        case Step::Budget: gi_budget_hit_ = true; break;
        case Step::Unconfirmed: ++w.stats.unconfirmed_passes; break;
        case Step::Rejected: break;
      }
    }
  }

  // Sub-test between shortened or punctured pieces. Exact whenever both
  // hulls are trivial for some inner product or the oracle applies;
  // otherwise counted as skipped and passed.
  bool sub_equivalent(const LinearCode& x, const LinearCode& y, SolverStats& st) {
    if (x.length() != y.length() || x.dimension() != y.dimension()) return false;
    const auto sx = hull_spectrum(x);
    const auto sy = hull_spectrum(y);
    if (sx != sy) return false;
    for (unsigned e = 0; e < sx.size(); ++e) {
      if (sx[e] != 0) continue;
      const InnerProduct ip = e == 0 ? InnerProduct::euclidean() : InnerProduct::hermitian(e);
      const WeightedGraph gx = graph_of(x, ip, st);
      const WeightedGraph gy = graph_of(y, ip, st);
      const Match m = match_codes(x, y, gx, gy, cfg_, 1, st);
      if (m.status == IsoStatus::BudgetExceeded) {
        ++st.skipped_subtests;
        return true;
      }
      return m.status == IsoStatus::Isomorphic;
    }
    if (x.length() <= cfg_.oracle_max_length) {
      return brute_force_oracle(x, y, cfg_.oracle_max_length).outcome == Outcome::Equivalent;
    }
    ++st.skipped_subtests;
    return true;
  }

  Step examine(const std::vector<std::size_t>& j, unsigned gi_workers, SolverStats& st,
               std::optional<Permutation>& out) {
    const LinearCode sb = shorten(b_, j);
    if (sb.dimension() != sa_->dimension() || !has_trivial_hull(sb)) return Step::Rejected;
    const WeightedGraph gb = graph_of(sb, InnerProduct::euclidean(), st);
    const Match first = match_codes(*sa_, sb, *ga_, gb, cfg_, gi_workers, st);
    if (first.status == IsoStatus::BudgetExceeded) return Step::Budget;
    if (first.status != IsoStatus::Isomorphic) return Step::Rejected;

    for (std::size_t ell2 = 0; ell2 < n_ && !stopped(); ++ell2) {
      if (std::binary_search(j.begin(), j.end(), ell2)) continue;
      if (!sub_equivalent(*sa_punct_, puncture(sb, ell2), st)) continue;

      // ok[t][u]: fixed_[t] may correspond to j[u]. Memoized because every
      // bijection gamma reuses the same pairs.
      std::vector<std::vector<int>> ok(h_, std::vector<int>(h_, -1));
      auto pair_ok = [&](std::size_t t, std::size_t u) {
        if (ok[t][u] < 0) {
          ok[t][u] = sub_equivalent(sa_drop_[t], shorten(b_, with_replaced(j, j[u], ell2)), st);
        }
        return ok[t][u] == 1;
      };
      std::vector<std::size_t> gamma(h_);
      std::iota(gamma.begin(), gamma.end(), std::size_t{0});
      bool passed = false;
      do {
        passed = true;
        for (std::size_t t = 0; t < h_ && passed; ++t) passed = pair_ok(t, gamma[t]);
      } while (!passed && std::next_permutation(gamma.begin(), gamma.end()));
      if (!passed) continue;

      ++st.filter_passes;
      return assemble(j, gb, st, out);
    }
    return Step::Rejected;
  }

  // Exhaustive search for pi with B = A^pi and pi(J) = I. Any such pi restricts
  // to an isomorphism of the shortened projector graphs, so coordinates off J
  // may only go to A-coordinates of the same stable colour. Columns of B are
  // assigned one at a time (J first, then by colour class size) and a partial
  // assignment survives only if its columns of A row-reduce to the matching
  // prefix of B's reduced generator.
  Step assemble(const std::vector<std::size_t>& j, const WeightedGraph& gb, SolverStats& st,
                std::optional<Permutation>& out) {
    const auto t0 = Clock::now();
    constexpr std::uint32_t pinned = UINT32_MAX;
    const auto colours = [&](const WeightedGraph& g, const std::vector<std::size_t>& drop) {
      std::vector<std::uint32_t> c = refine(g).color;
      for (const std::size_t x : drop) c[x] = pinned;
      return c;
    };
    const auto col_a = colours(*ga_, fixed_);
    const auto col_b = colours(gb, j);

    std::vector<std::size_t> class_size(n_ + 1, 0);
    for (const auto c : col_b) class_size[c == pinned ? n_ : c]++;
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const bool px = col_b[x] == pinned, py = col_b[y] == pinned;
      if (px != py) return px;
      return !px && class_size[col_b[x]] < class_size[col_b[y]];
    });
    const Matrix target = rref(select_columns(b_.generator(), order)).reduced;
    const Matrix& ga = a_.generator();

    std::vector<std::size_t> chosen;
    std::vector<bool> used(n_, false);
    bool budget_out = false;
    const auto dfs = [&](const auto& self) -> void {
      const std::size_t t = chosen.size();
      if (t == n_) {
        std::vector<std::uint32_t> img(n_);
        for (std::size_t i = 0; i < n_; ++i) img[order[i]] = static_cast<std::uint32_t>(chosen[i]);
        Permutation pi(std::move(img));
        if (verify_witness(a_, b_, pi)) out = std::move(pi);
        return;
      }
      const std::uint32_t want = col_b[order[t]];
      std::vector<std::size_t> prefix(t + 1);
      std::iota(prefix.begin(), prefix.end(), std::size_t{0});
      const Matrix goal = select_columns(target, prefix);
      for (std::size_t c = 0; c < n_ && !out && !budget_out; ++c) {
        if (used[c] || col_a[c] != want) continue;
        if (stopped() || budget_used_.fetch_add(1) >= cfg_.witness_budget) {
          budget_out = true;
          return;
        }
        ++st.witness_candidates;
        chosen.push_back(c);
        if (rref(select_columns(ga, chosen)).reduced == goal) {
          used[c] = true;
          self(self);
          used[c] = false;
        }
        chosen.pop_back();
      }
    };
    dfs(dfs);
    st.gi_seconds += since(t0);
    if (out) return Step::Witness;
    if (budget_out) return Step::Unwitnessed;
    return Step::Unconfirmed;
  }

  const LinearCode& a_;
  const LinearCode& b_;
  const SolverConfig& cfg_;
  std::size_t h_;
  std::size_t n_;
  std::vector<std::size_t> fixed_;  // I
  std::size_t ell_ = 0;
  std::optional<LinearCode> sa_, sa_punct_;
  std::optional<WeightedGraph> ga_;
  std::vector<LinearCode> sa_drop_;  // shorten(A, {ell} u I \ {I[t]})
  SolverStats setup_stats_;

  std::mutex mu_;
  std::vector<std::size_t> next_;
  std::uint64_t tried_ = 0;
  bool exhausted_ = false;
  bool cap_hit_ = false;
  bool gi_budget_hit_ = false;
  bool unwitnessed_ = false;
  std::optional<Permutation> witness_;
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> budget_used_{0};
};

Verdict inequivalent_at_precheck(std::string reason) {
  Verdict v;
  v.outcome = Outcome::Inequivalent;
  v.path = Path::Precheck;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Equivalent: return "equivalent";
    case Outcome::Inequivalent: return "inequivalent";
    case Outcome::EquivalentUnwitnessed: return "equivalent (unwitnessed)";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

std::string_view to_string(Path p) {
  switch (p) {
    case Path::Precheck: return "Precheck";
    case Path::TrivialHull: return "TrivialHull";
    case Path::Hermitian: return "Hermitian";
    case Path::ShorteningSearch: return "ShorteningSearch";
    case Path::Oracle: return "Oracle";
  }
  return "?";
}

std::string Verdict::path_label() const {
  std::string s(to_string(path));
  if (path == Path::Hermitian) s += "(" + std::to_string(hermitian_power) + ")";
  return s;
}

void SolverStats::merge(const SolverStats& o) {
  gi_calls += o.gi_calls;
  gi_nodes += o.gi_nodes;
  subsets_tried += o.subsets_tried;
  filter_passes += o.filter_passes;
  witness_candidates += o.witness_candidates;
  skipped_subtests += o.skipped_subtests;
  unconfirmed_passes += o.unconfirmed_passes;
  sigma_seconds += o.sigma_seconds;
  gi_seconds += o.gi_seconds;
}

void SolverConfig::validate() const {
  if (max_shorten_subsets == 0 || witness_budget == 0 || oracle_max_length == 0 || workers == 0) {
    throw Error(ErrorKind::Internal, "solver caps and worker count must be positive");
  }
}

int exit_code(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::Equivalent:
    case Outcome::EquivalentUnwitnessed: return 0;
    case Outcome::Inequivalent: return 1;
    case Outcome::Undecided: return 2;
  }
  return 3;
}

bool verify_witness(const LinearCode& a, const LinearCode& b, const Permutation& pi) {
  return pi.size() == a.length() && a.length() == b.length() && permute(a, pi) == b;
}

std::optional<std::string> precheck(const LinearCode& a, const LinearCode& b) {
  require_same_field(a.field(), b.field());
  if (a.length() != b.length()) return mismatch("length", a.length(), b.length());
  if (a.dimension() != b.dimension()) return mismatch("dimension", a.dimension(), b.dimension());
  const auto sa = hull_spectrum(a);
  const auto sb = hull_spectrum(b);
  for (unsigned e = 0; e < sa.size(); ++e) {
    if (sa[e] != sb[e]) {
      const InnerProduct ip = e == 0 ? InnerProduct::euclidean() : InnerProduct::hermitian(e);
      return mismatch(ip.to_string() + " hull dimension", sa[e], sb[e]);
    }
  }
  return std::nullopt;
}

Verdict decide_trivial_hull(const LinearCode& a, const LinearCode& b, InnerProduct ip,
                            const SolverConfig& cfg) {
  cfg.validate();
  require_same_field(a.field(), b.field());
  ip.validate(a.field());
  if (!has_trivial_hull(a, ip) || !has_trivial_hull(b, ip)) {
    throw Error(ErrorKind::NonTrivialHull, "both codes need a trivial " + ip.to_string() + " hull");
  }
  const auto t0 = Clock::now();
  Verdict v;
  v.path = ip.is_euclidean() ? Path::TrivialHull : Path::Hermitian;
  v.hermitian_power = ip.automorphism();
  if (a.length() != b.length() || a.dimension() != b.dimension()) {
    v.outcome = Outcome::Inequivalent;
    v.reason = a.length() != b.length() ? mismatch("length", a.length(), b.length())
                                        : mismatch("dimension", a.dimension(), b.dimension());
    return v;
  }
  const WeightedGraph ga = graph_of(a, ip, v.stats);
  const WeightedGraph gb = graph_of(b, ip, v.stats);
  const Match m = match_codes(a, b, ga, gb, cfg, cfg.workers, v.stats);
  switch (m.status) {
    case IsoStatus::Isomorphic:
      v.outcome = Outcome::Equivalent;
      v.witness = m.pi;
      v.reason = "projector graphs isomorphic";
      break;
    case IsoStatus::NotIsomorphic:
      v.outcome = Outcome::Inequivalent;
      v.reason = "projector graphs not isomorphic";
      break;
    case IsoStatus::BudgetExceeded:
      v.outcome = Outcome::Undecided;
      v.reason = "graph isomorphism node limit reached";
      break;
  }
  v.stats.wall_seconds = since(t0);
  return v;
}

std::optional<Verdict> hermitian_sweep(const LinearCode& a, const LinearCode& b,
                                       const SolverConfig& cfg) {
  require_same_field(a.field(), b.field());
  for (unsigned e = 1; e < a.field().degree(); ++e) {
    const InnerProduct ip = InnerProduct::hermitian(e);
    const bool ta = has_trivial_hull(a, ip);
    const bool tb = has_trivial_hull(b, ip);
    if (ta && tb) return decide_trivial_hull(a, b, ip, cfg);
    if (ta != tb) {
      Verdict v;
      v.outcome = Outcome::Inequivalent;
      v.path = Path::Hermitian;
      v.hermitian_power = e;
      v.reason = "exactly one " + ip.to_string() + " hull is trivial";
      return v;
    }
  }
  return std::nullopt;
}

Verdict decide_with_hull(const LinearCode& a, const LinearCode& b, const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  if (auto reason = precheck(a, b)) {
    Verdict v = inequivalent_at_precheck(std::move(*reason));
    v.path = Path::ShorteningSearch;
    return v;
  }
  if (a.length() == 0) {
    Verdict v;
    v.outcome = Outcome::Equivalent;
    v.path = Path::ShorteningSearch;
    v.witness = Permutation{};
    return v;
  }
  HullSearch search(a, b, cfg, hull_dimension(a));
  Verdict v = search.run();
  v.stats.wall_seconds = since(t0);
  return v;
}

Verdict brute_force_oracle(const LinearCode& a, const LinearCode& b, std::size_t max_length) {
  require_same_field(a.field(), b.field());
  const std::size_t n = a.length();
  if (n > max_length || b.length() > max_length) {
    throw Error(ErrorKind::TooLarge, "oracle is capped at length " + std::to_string(max_length) +
                                         ", got " + std::to_string(std::max(n, b.length())));
  }
  const auto t0 = Clock::now();
  Verdict v;
  v.path = Path::Oracle;
  if (n != b.length() || a.dimension() != b.dimension()) {
    v.outcome = Outcome::Inequivalent;
    v.reason = n != b.length() ? mismatch("length", n, b.length())
                               : mismatch("dimension", a.dimension(), b.dimension());
    return v;
  }

  // Row reduction acts column by column, so the reduced form of a column
  // prefix is the prefix of the reduced form: a partial assignment survives
  // only if its columns of A reduce to the same prefix of B's canonical
  // generator.
  const Matrix& ga = a.generator();
  const Matrix& gb = b.generator();
  std::vector<Matrix> target;
  for (std::size_t t = 1; t <= n; ++t) {
    std::vector<std::size_t> cols(t);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    target.push_back(select_columns(gb, cols));
  }
  std::vector<std::size_t> chosen;
  std::vector<bool> used(n, false);
  std::uint64_t nodes = 0;
  std::optional<Permutation> found;

  const auto dfs = [&](const auto& self) -> void {
    const std::size_t t = chosen.size();
    if (t == n) {
      found = Permutation(std::vector<std::uint32_t>(chosen.begin(), chosen.end()));
      return;
    }
    for (std::size_t c = 0; c < n && !found; ++c) {
      if (used[c]) continue;
      ++nodes;
      chosen.push_back(c);
      if (rref(select_columns(ga, chosen)).reduced == target[t]) {
        used[c] = true;
        self(self);
        used[c] = false;
      }
      chosen.pop_back();
    }
  };
  if (n == 0) {
    found = Permutation{};
  } else {
    dfs(dfs);
  }

  v.stats.witness_candidates = nodes;
  if (found) {
    v.outcome = Outcome::Equivalent;
    v.witness = found;
    v.reason = "first permutation in lexicographic order";
  } else {
    v.outcome = Outcome::Inequivalent;
    v.reason = "no permutation maps A onto B";
  }
  v.stats.wall_seconds = since(t0);
  return v;
}

Verdict decide(const LinearCode& a, const LinearCode& b, const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  Verdict v;
  if (cfg.strategy == Strategy::ForceOracle) {
    v = brute_force_oracle(a, b, cfg.oracle_max_length);
  } else if (auto reason = precheck(a, b)) {
    v = inequivalent_at_precheck(std::move(*reason));
  } else {
    switch (cfg.strategy) {
      case Strategy::ForceEuclidean:
        v = decide_trivial_hull(a, b, InnerProduct::euclidean(), cfg);
        break;
      case Strategy::ForceHermitian:
        v = decide_trivial_hull(a, b, InnerProduct::hermitian(cfg.hermitian_power), cfg);
        break;
      case Strategy::ForceShortening:
        v = decide_with_hull(a, b, cfg);
        break;
      default: {
        if (has_trivial_hull(a)) {
          v = decide_trivial_hull(a, b, InnerProduct::euclidean(), cfg);
        } else if (auto h = hermitian_sweep(a, b, cfg)) {
          v = std::move(*h);
        } else {
          v = decide_with_hull(a, b, cfg);
        }
        const bool open =
            v.outcome == Outcome::Undecided || v.outcome == Outcome::EquivalentUnwitnessed;
        if (open && a.length() <= cfg.oracle_max_length) {
          Verdict o = brute_force_oracle(a, b, cfg.oracle_max_length);
          o.warnings = std::move(v.warnings);
          o.warnings.push_back("fell back to the oracle: " + v.reason);
          o.stats.merge(v.stats);
          v = std::move(o);
        }
        break;
      }
    }
  }
  if (v.outcome == Outcome::Equivalent && (!v.witness || !verify_witness(a, b, *v.witness))) {
    throw Error(ErrorKind::Internal, "equivalent verdict without a verifying witness");
  }
  v.stats.wall_seconds = since(t0);
  return v;
}

}  // namespace codequiv
