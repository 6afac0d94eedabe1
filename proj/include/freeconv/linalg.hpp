#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fc {

// Deterministic random source: explicit uniform and normal generators on top
// of mt19937_64, so streams are identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1), 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method.
  double normal();

private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Dense square matrix, row-major.
class SquareMatrix {
public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int n() const noexcept { return n_; }
  double& at(int i, int j) noexcept { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double* row(int i) noexcept { return a_.data() + static_cast<std::size_t>(i) * n_; }
  const double* row(int i) const noexcept { return a_.data() + static_cast<std::size_t>(i) * n_; }

private:
  int n_ = 0;
  std::vector<double> a_;
};

// Haar-distributed orthogonal matrix: QR of a Ginibre matrix with the R
// diagonal signs fixed positive.
SquareMatrix haar_orthogonal(int n, Rng& rng);

// a += q * diag(d) * q^T, exploiting symmetry of the result.
void add_conjugated_diagonal(SquareMatrix& a, const SquareMatrix& q,
                             const std::vector<double>& d);

// Eigenvalues only of a real symmetric matrix: Householder tridiagonalization
// followed by the implicit-shift QL iteration. Ascending order. Destroys a.
std::vector<double> symmetric_eigenvalues(SquareMatrix a);

// QL with implicit shifts on a tridiagonal matrix given by diagonal d and
// subdiagonal e (e[0] unused); overwrites d with the eigenvalues (unsorted).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e);

}  // namespace fc
