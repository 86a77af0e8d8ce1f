#include "codequiv/projector.hpp"

#include "codequiv/giso.hpp"

namespace codequiv {

Projector make_projector(const LinearCode& u, InnerProduct ip) {
  ip.validate(u.field());
  const Matrix& g = u.generator();
  const Matrix left = transpose(map_entries(g, ip.automorphism()));  // theta(G^T)
  const auto gram_inv = inverse(matmul(g, left));
  if (!gram_inv) {
    throw Error(ErrorKind::NonTrivialHull,
                "code has a non-trivial " + ip.to_string() + " hull; projector undefined");
  }
  // theta(G^T) * ((G theta(G^T))^-1 * G): keeps the middle product k x n.
  Matrix sigma = matmul(left, matmul(*gram_inv, g));
  return Projector{std::move(sigma), u, ip};
}

Matrix Projector::complement() const {
  return sub(Matrix::identity(sigma.field_ptr(), sigma.rows()), sigma);
}

std::vector<Elem> projection_of(std::span<const Elem> v, const Projector& p) {
  if (v.size() != p.sigma.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length differs from code length");
  }
  const Matrix out = matmul(Matrix::row_vector(p.sigma.field_ptr(), v), p.sigma);
  return {out.row(0).begin(), out.row(0).end()};
}

WeightedGraph code_graph(const Projector& p) { return WeightedGraph(p.sigma); }

}  // namespace codequiv
