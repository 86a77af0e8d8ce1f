#include "codequiv/giso.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace codequiv {

WeightedGraph::WeightedGraph(Matrix weights) : w_(std::move(weights)) {
  if (!w_.is_square()) throw Error(ErrorKind::DimensionMismatch, "weight matrix must be square");
  const std::size_t n = w_.rows();
  directed_ = !w_.is_symmetric();

  out_start_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = w_.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && row[j].repr) {
        out_.push_back({static_cast<std::uint32_t>(j), row[j].repr});
      }
    }
    out_start_[i + 1] = out_.size();
  }
  if (directed_) {
    in_start_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto a : out_arcs(i)) ++in_start_[a.to + 1];
    }
    for (std::size_t j = 0; j < n; ++j) in_start_[j + 1] += in_start_[j];
    in_.resize(out_.size());
    std::vector<std::size_t> fill(in_start_.begin(), in_start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto a : out_arcs(i)) in_[fill[a.to]++] = {static_cast<std::uint32_t>(i), a.weight};
    }
  }
}

std::string WeightedGraph::dump() const {
  std::ostringstream os;
  os << order() << '\n';
  for (std::size_t i = 0; i < order(); ++i) {
    for (std::size_t j = 0; j < order(); ++j) {
      if (weight(i, j)) os << i + 1 << ' ' << j + 1 << ' ' << weight(i, j) << '\n';
    }
  }
  return os.str();
}

WeightedGraph relabel(const WeightedGraph& g, const Permutation& pi) {
  if (pi.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "permutation size differs from graph order");
  Matrix w(g.weights().field_ptr(), g.order(), g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) w(pi[i], pi[j]) = g.weights()(i, j);
  }
  return WeightedGraph(std::move(w));
}

std::size_t Coloring::num_classes() const {
  if (color.empty()) return 0;
  std::vector<std::uint32_t> c = color;
  std::sort(c.begin(), c.end());
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

std::vector<std::size_t> Coloring::class_sizes() const {
  std::vector<std::size_t> sizes;
  for (auto c : color) {
    if (c >= sizes.size()) sizes.resize(c + 1, 0);
    ++sizes[c];
  }
  return sizes;
}

Coloring uniform_coloring(std::size_t n) { return Coloring{std::vector<std::uint32_t>(n, 0), false}; }

namespace {

constexpr std::uint64_t kSeparator = ~std::uint64_t{0};

struct Side {
  const WeightedGraph* graph;
  std::vector<std::uint32_t> color;
};

// Lockstep refinement of one or more graphs whose colourings are aligned
// (same ids, same class sizes). Fails as soon as the graphs disagree.
class Refiner {
 public:
  explicit Refiner(bool directed) : directed_(directed) {}

  bool run(std::span<Side*> sides, std::uint32_t& num_classes) {
    const std::size_t n = sides[0]->color.size();
    if (n == 0) return true;
    for (;;) {
      const std::uint32_t classes = num_classes;
      // Bucket vertices by class, per side.
      start_.assign(classes + 1, 0);
      for (auto c : sides[0]->color) ++start_[c + 1];
      for (std::uint32_t c = 0; c < classes; ++c) start_[c + 1] += start_[c];
      members_.resize(sides.size());
      for (std::size_t s = 0; s < sides.size(); ++s) {
        auto& mem = members_[s];
        mem.assign(n, 0);
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::uint32_t v = 0; v < n; ++v) {
          const auto c = sides[s]->color[v];
          if (c >= classes || fill[c] >= start_[c + 1]) return false;
          mem[fill[c]++] = v;
        }
      }

      next_.resize(sides.size());
      for (auto& nc : next_) nc.assign(n, 0);
      pools_.resize(sides.size());
      entries_.resize(sides.size());

      std::uint32_t next_id = 0;
      for (std::uint32_t c = 0; c < classes; ++c) {
        const std::size_t lo = start_[c], hi = start_[c + 1];
        if (hi - lo == 1) {
          for (std::size_t s = 0; s < sides.size(); ++s) next_[s][members_[s][lo]] = next_id;
          ++next_id;
          continue;
        }
        for (std::size_t s = 0; s < sides.size(); ++s) {
          auto& pool = pools_[s];
          auto& entries = entries_[s];
          pool.clear();
          entries.clear();
          for (std::size_t i = lo; i < hi; ++i) {
            const std::uint32_t v = members_[s][i];
            const std::size_t off = pool.size();
            signature(*sides[s], v, pool);
            entries.push_back({off, pool.size() - off, v});
          }
          std::sort(entries.begin(), entries.end(), [&pool](const Entry& a, const Entry& b) {
            return std::lexicographical_compare(pool.begin() + a.off, pool.begin() + a.off + a.len,
                                                pool.begin() + b.off, pool.begin() + b.off + b.len);
          });
        }
        for (std::size_t s = 1; s < sides.size(); ++s) {
          for (std::size_t i = 0; i < entries_[0].size(); ++i) {
            if (!same_sig(0, i, s, i)) return false;
          }
        }
        std::uint32_t id = next_id;
        for (std::size_t i = 0; i < entries_[0].size(); ++i) {
          if (i > 0 && !same_sig(0, i, 0, i - 1)) ++id;
          for (std::size_t s = 0; s < sides.size(); ++s) next_[s][entries_[s][i].vertex] = id;
        }
        next_id = id + 1;
      }
      if (next_id == classes) return true;
      for (std::size_t s = 0; s < sides.size(); ++s) sides[s]->color.swap(next_[s]);
      num_classes = next_id;
    }
  }

 private:
  struct Entry {
    std::size_t off;
    std::size_t len;
    std::uint32_t vertex;
  };

  bool same_sig(std::size_t s1, std::size_t i1, std::size_t s2, std::size_t i2) const {
    const auto& a = entries_[s1][i1];
    const auto& b = entries_[s2][i2];
    if (a.len != b.len) return false;
    return std::equal(pools_[s1].begin() + a.off, pools_[s1].begin() + a.off + a.len,
                      pools_[s2].begin() + b.off);
  }

  void append_profile(std::span<const WeightedGraph::Arc> arcs, const std::vector<std::uint32_t>& color,
                      std::vector<std::uint64_t>& out) {
    keys_.clear();
    for (const auto& a : arcs) keys_.push_back(std::uint64_t{color[a.to]} << 32 | a.weight);
    std::sort(keys_.begin(), keys_.end());
    for (std::size_t i = 0; i < keys_.size();) {
      std::size_t j = i;
      while (j < keys_.size() && keys_[j] == keys_[i]) ++j;
      out.push_back(keys_[i]);
      out.push_back(j - i);
      i = j;
    }
  }

  void signature(const Side& side, std::uint32_t v, std::vector<std::uint64_t>& out) {
    out.push_back(side.graph->loop(v));
    append_profile(side.graph->out_arcs(v), side.color, out);
    if (directed_) {
      out.push_back(kSeparator);
      append_profile(side.graph->in_arcs(v), side.color, out);
    }
  }

  bool directed_;
  std::vector<std::size_t> start_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::vector<std::uint32_t>> next_;
  std::vector<std::vector<std::uint64_t>> pools_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::uint64_t> keys_;
};

std::uint32_t canonical_labels(std::vector<std::uint32_t>& color) {
  std::vector<std::uint32_t> sorted = color;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto& c : color) {
    c = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
  }
  return static_cast<std::uint32_t>(sorted.size());
}

// v gets id `target`, the rest of its class `target + 1`, later ids shift up.
void individualize(std::vector<std::uint32_t>& color, std::uint32_t v, std::uint32_t target) {
  for (std::uint32_t x = 0; x < color.size(); ++x) {
    if (color[x] > target || (color[x] == target && x != v)) ++color[x];
  }
}

class Search {
 public:
  Search(const WeightedGraph& g1, const WeightedGraph& g2, const IsoVisitor& visit, const IsoOptions& opt)
      : g1_(g1), g2_(g2), visit_(visit), opt_(opt), directed_(g1.is_directed() || g2.is_directed()) {}

  IsoResult run() {
    IsoResult result;
    const std::size_t n = g1_.order();
    if (n != g2_.order() || g1_.is_directed() != g2_.is_directed()) return result;
    if (n == 0) {
      const Permutation empty;
      ++leaves_;
      if (visit_(empty)) {
        result.status = IsoStatus::Isomorphic;
        result.mapping = empty;
      }
      result.leaves_verified = leaves_;
      return result;
    }

    Side s1{&g1_, std::vector<std::uint32_t>(n, 0)};
    Side s2{&g2_, std::vector<std::uint32_t>(n, 0)};
    std::uint32_t classes = 1;
    Refiner refiner(directed_);
    Side* sides[] = {&s1, &s2};
    if (refiner.run(sides, classes)) {
      if (opt_.workers > 1 && classes < n) {
        run_parallel(s1.color, s2.color, classes);
      } else {
        descend(s1.color, s2.color, classes, refiner);
      }
    }

    result.nodes = nodes_;
    result.leaves_verified = leaves_;
    if (accepted_) {
      result.status = IsoStatus::Isomorphic;
      result.mapping = std::move(accepted_);
    } else if (budget_hit_) {
      result.status = IsoStatus::BudgetExceeded;
    }
    return result;
  }

 private:
  std::uint32_t target_cell(const std::vector<std::uint32_t>& color, std::uint32_t classes) const {
    std::vector<std::size_t> sizes(classes, 0);
    for (auto c : color) ++sizes[c];
    std::uint32_t best = classes;
    for (std::uint32_t c = 0; c < classes; ++c) {
      if (sizes[c] > 1 && (best == classes || sizes[c] < sizes[best])) best = c;
    }
    return best;
  }

  void descend(const std::vector<std::uint32_t>& c1, const std::vector<std::uint32_t>& c2,
               std::uint32_t classes, Refiner& refiner) {
    if (stop_) return;
    if (opt_.node_limit && ++nodes_ > opt_.node_limit) {
      budget_hit_ = true;
      stop_ = true;
      return;
    }
    if (!opt_.node_limit) ++nodes_;
    if (classes == c1.size()) {
      leaf(c1, c2);
      return;
    }
    const std::uint32_t target = target_cell(c1, classes);
    const auto v = static_cast<std::uint32_t>(std::find(c1.begin(), c1.end(), target) - c1.begin());
    for (std::uint32_t u = 0; u < c2.size() && !stop_; ++u) {
      if (c2[u] == target) branch(c1, c2, classes, target, v, u, refiner);
    }
  }

  void branch(const std::vector<std::uint32_t>& c1, const std::vector<std::uint32_t>& c2,
              std::uint32_t classes, std::uint32_t target, std::uint32_t v, std::uint32_t u,
              Refiner& refiner) {
    Side s1{&g1_, c1};
    Side s2{&g2_, c2};
    individualize(s1.color, v, target);
    individualize(s2.color, u, target);
    std::uint32_t next = classes + 1;
    Side* sides[] = {&s1, &s2};
    if (refiner.run(sides, next)) descend(s1.color, s2.color, next, refiner);
  }

  void run_parallel(const std::vector<std::uint32_t>& c1, const std::vector<std::uint32_t>& c2,
                    std::uint32_t classes) {
    ++nodes_;
    const std::uint32_t target = target_cell(c1, classes);
    const auto v = static_cast<std::uint32_t>(std::find(c1.begin(), c1.end(), target) - c1.begin());
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t u = 0; u < c2.size(); ++u) {
      if (c2[u] == target) candidates.push_back(u);
    }
    const unsigned workers = std::min<std::size_t>(opt_.workers, candidates.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Refiner refiner(directed_);
        for (std::size_t i = w; i < candidates.size() && !stop_; i += workers) {
          branch(c1, c2, classes, target, v, candidates[i], refiner);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  void leaf(const std::vector<std::uint32_t>& c1, const std::vector<std::uint32_t>& c2) {
    const std::size_t n = c1.size();
    std::vector<std::uint32_t> by_color(n);
    for (std::uint32_t u = 0; u < n; ++u) by_color[c2[u]] = u;
    std::vector<std::uint32_t> image(n);
    for (std::uint32_t v = 0; v < n; ++v) image[v] = by_color[c1[v]];
    Permutation pi(std::move(image));
    if (!is_isomorphism(g1_, g2_, pi)) return;
    std::lock_guard lock(mu_);
    if (stop_) return;
    ++leaves_;
    if (visit_(pi)) {
      accepted_ = std::move(pi);
      stop_ = true;
    }
  }

  const WeightedGraph& g1_;
  const WeightedGraph& g2_;
  const IsoVisitor& visit_;
  IsoOptions opt_;
  bool directed_;

  std::atomic<bool> stop_{false};
  std::atomic<bool> budget_hit_{false};
  std::atomic<std::uint64_t> nodes_{0};
  std::uint64_t leaves_ = 0;  // guarded by mu_
  std::mutex mu_;
  std::optional<Permutation> accepted_;
};

}  // namespace

Coloring refine(const WeightedGraph& g, const Coloring& initial) {
  if (initial.color.size() != g.order()) {
    throw Error(ErrorKind::DimensionMismatch, "initial colouring size differs from graph order");
  }
  Side side{&g, initial.color};
  std::uint32_t classes = canonical_labels(side.color);
  Refiner refiner(g.is_directed());
  Side* sides[] = {&side};
  refiner.run(sides, classes);
  return Coloring{std::move(side.color), true};
}

Coloring refine(const WeightedGraph& g) { return refine(g, uniform_coloring(g.order())); }

bool is_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2, const Permutation& pi) {
  const std::size_t n = g1.order();
  if (g2.order() != n || pi.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pi_i = pi[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (g2.weight(pi_i, pi[j]) != g1.weight(i, j)) return false;
    }
  }
  return true;
}

IsoResult RefinementEngine::search(const WeightedGraph& g1, const WeightedGraph& g2,
                                   const IsoVisitor& visit, const IsoOptions& options) const {
  Search s(g1, g2, visit, options);
  return s.run();
}

const IsomorphismEngine& default_engine() {
  static const RefinementEngine engine;
  return engine;
}

IsoResult find_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2, const IsoOptions& options) {
  return default_engine().search(g1, g2, [](const Permutation&) { return true; }, options);
}

}  // namespace codequiv
