#pragma once

#include <span>
#include <vector>

#include "codequiv/code.hpp"

namespace codequiv {

class WeightedGraph;

// The n x n matrix of the projection of F^n onto a trivial-hull code U along
// its complement:
//
//   euclidean:  Sigma = G^T (G G^T)^-1 G
//   hermitian:  Sigma = theta(G^T) (G theta(G^T))^-1 G
//
// Sigma does not depend on which generator matrix of U is used, and
// permuting the code conjugates it: Sigma(U^pi) = X^T Sigma(U) X.
struct Projector {
  Matrix sigma;
  LinearCode code;
  InnerProduct ip;

  // I - Sigma, the projector onto the complement.
  Matrix complement() const;
};

// Throws NonTrivialHull when G theta(G^T) is singular.
Projector make_projector(const LinearCode& u, InnerProduct ip = InnerProduct::euclidean());

// v * Sigma: the component of v in U.
std::vector<Elem> projection_of(std::span<const Elem> v, const Projector& p);

WeightedGraph code_graph(const Projector& p);

}  // namespace codequiv
