// Real-space determinant-overlap Loschmidt amplitude for small ladders.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "creutz/error.h"
#include "creutz/quench.h"

namespace creutz {

namespace {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

constexpr int kMaxOracleRungs = 12;

int site(int rung, int leg, int n) { return 2 * (rung % n) + leg; }

// Single-particle matrix h of H = sum_ij c_i^dag h_ij c_j on 2N sites,
// legs q = 0, p = 1, shifted by -j_v.
Matrix hopping_matrix(const LadderParams& lp) {
  const int n = lp.n_rungs;
  Matrix h = Matrix::Zero(2 * n, 2 * n);
  const cplx phase = std::polar(1.0, lp.theta);
  auto hop = [&h](int to, int from, cplx amp) {
    h(to, from) += amp;
    h(from, to) += std::conj(amp);
  };
  for (int r = 0; r < n; ++r) {
    const int p0 = site(r, 1, n), p1 = site(r + 1, 1, n);
    const int q0 = site(r, 0, n), q1 = site(r + 1, 0, n);
    hop(p1, p0, -lp.j_h * phase);
    hop(q1, q0, -lp.j_h * std::conj(phase));
    hop(p1, q0, -lp.j_d);
    hop(q1, p0, -lp.j_d);
    hop(q0, p0, -lp.j_v);
  }
  h -= lp.j_v * Matrix::Identity(2 * n, 2 * n);
  return h;
}

}  // namespace

OracleResult exact_le_oracle(const QuenchSpec& spec, double t, Filling filling) {
  const int n = spec.params.n_rungs;
  if (n > kMaxOracleRungs) {
    throw std::invalid_argument("exact oracle limited to n_rungs <= 12 (got " + std::to_string(n) +
                                ")");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("oracle time must be finite and non-negative");
  }
  validate(spec.params);

  const Eigen::SelfAdjointEigenSolver<Matrix> pre(hopping_matrix(spec.pre()));
  const Eigen::SelfAdjointEigenSolver<Matrix> post(hopping_matrix(spec.post()));
  const Eigen::VectorXd& e1 = pre.eigenvalues();
  if (std::abs(e1(n) - e1(n - 1)) < 1e-9) {
    throw DomainError(
        "pre-quench Slater determinant is not unique "
        "(degenerate orbitals at half filling)");
  }

  const int first = filling == Filling::lower ? 0 : n;
  const Matrix occupied = pre.eigenvectors().middleCols(first, n);

  const Eigen::VectorXd& e2 = post.eigenvalues();
  Eigen::VectorXcd evolve(2 * n);
  for (int i = 0; i < 2 * n; ++i) evolve(i) = std::polar(1.0, -e2(i) * t);
  const Matrix& v2 = post.eigenvectors();
  const Matrix projected = v2.adjoint() * occupied;
  const Matrix overlap = projected.adjoint() * evolve.asDiagonal() * projected;

  OracleResult result;
  result.la = overlap.determinant();
  result.le = std::norm(result.la);
  return result;
}

}  // namespace creutz
