#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codequiv/matrix.hpp"

namespace codequiv {

// Square weight matrix read as a graph: w(i, j) != 0 is an arc i -> j with
// that weight, the diagonal holds loop weights. Weights are opaque labels
// (their integer encoding); no field arithmetic happens here.
class WeightedGraph {
 public:
  struct Arc {
    std::uint32_t to;
    std::uint32_t weight;
  };

  explicit WeightedGraph(Matrix weights);

  std::size_t order() const noexcept { return w_.rows(); }
  const Matrix& weights() const noexcept { return w_; }
  std::uint32_t weight(std::size_t i, std::size_t j) const { return w_(i, j).repr; }
  std::uint32_t loop(std::size_t v) const { return w_(v, v).repr; }
  bool is_directed() const noexcept { return directed_; }

  // Off-diagonal nonzero arcs.
  std::span<const Arc> out_arcs(std::size_t v) const {
    return {out_.data() + out_start_[v], out_start_[v + 1] - out_start_[v]};
  }
  std::span<const Arc> in_arcs(std::size_t v) const {
    if (!directed_) return out_arcs(v);
    return {in_.data() + in_start_[v], in_start_[v + 1] - in_start_[v]};
  }

  // "n" then one "i j weight" line per nonzero entry, 1-based vertices.
  std::string dump() const;

 private:
  Matrix w_;
  bool directed_ = false;
  std::vector<std::size_t> out_start_, in_start_;
  std::vector<Arc> out_, in_;
};

WeightedGraph relabel(const WeightedGraph& g, const Permutation& pi);

// Vertex partition; color ids are 0..num_classes-1.
struct Coloring {
  std::vector<std::uint32_t> color;
  bool stable = false;

  std::size_t num_classes() const;
  std::vector<std::size_t> class_sizes() const;
};

Coloring uniform_coloring(std::size_t n);

// Weighted colour refinement to the coarsest stable partition finer than
// `initial`: equal colours imply equal loop weight and, for every class c and
// weight w, equal numbers of out-arcs (and in-arcs) of weight w into c.
// Classes are numbered by sorted signature, so isomorphic inputs get colourings
// that correspond under the isomorphism.
Coloring refine(const WeightedGraph& g, const Coloring& initial);
Coloring refine(const WeightedGraph& g);

enum class IsoStatus { Isomorphic, NotIsomorphic, BudgetExceeded };

struct IsoOptions {
  std::uint64_t node_limit = 0;  // search-tree nodes; 0 = unlimited
  unsigned workers = 1;          // parallel split of the top-level target cell
};

struct IsoResult {
  IsoStatus status = IsoStatus::NotIsomorphic;
  std::optional<Permutation> mapping;  // g2(pi(i), pi(j)) == g1(i, j)
  std::uint64_t nodes = 0;
  std::uint64_t leaves_verified = 0;   // isomorphisms handed to the visitor
};

// Gets each verified isomorphism; return true to accept and stop the search.
// With workers > 1 calls are serialized but may come from any worker thread.
using IsoVisitor = std::function<bool(const Permutation&)>;

// Swap point for other isomorphism back ends.
class IsomorphismEngine {
 public:
  virtual ~IsomorphismEngine() = default;
  virtual IsoResult search(const WeightedGraph& g1, const WeightedGraph& g2,
                           const IsoVisitor& visit, const IsoOptions& options) const = 0;
};

// Individualization-refinement backtracking. Target cell: smallest id among
// the smallest non-singleton classes; candidates tried in ascending vertex
// order. No automorphism pruning, so every isomorphism is reachable.
class RefinementEngine final : public IsomorphismEngine {
 public:
  IsoResult search(const WeightedGraph& g1, const WeightedGraph& g2,
                   const IsoVisitor& visit, const IsoOptions& options) const override;
};

const IsomorphismEngine& default_engine();

// First isomorphism, if any: status Isomorphic with mapping set, or
// NotIsomorphic, or BudgetExceeded when node_limit is hit.
IsoResult find_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2,
                           const IsoOptions& options = {});

// g2(pi(i), pi(j)) == g1(i, j) for all i, j.
bool is_isomorphism(const WeightedGraph& g1, const WeightedGraph& g2, const Permutation& pi);

}  // namespace codequiv
