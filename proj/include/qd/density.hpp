#pragma once

#include <vector>

#include "qd/matrix.hpp"
#include "qd/rng.hpp"

namespace qd {

/// Validated quantum state: Hermitian, unit trace, positive semidefinite
/// (each within `tol`), with the subsystem dimensions carried alongside the
/// matrix. Immutable after construction.
class DensityMatrix {
 public:
  DensityMatrix(CMatrix matrix, std::vector<int> dims, double tol = 1e-10);

  const CMatrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return dims_; }
  double tol() const { return tol_; }

  int side() const { return static_cast<int>(matrix_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }

 private:
  CMatrix matrix_;
  std::vector<int> dims_;
  double tol_;
};

/// Ascending eigenvalues with matching orthonormal eigenvector columns.
struct EigenDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

/// Eigendecomposition of a Hermitian matrix. The input must be Hermitian
/// within 1e-10; the result is verified (reconstruction and orthonormality)
/// before being returned, so a silently wrong decomposition cannot escape.
EigenDecomposition eig_hermitian(const CMatrix& m);

/// Eigenvalues only, ascending. Same preconditions, cheaper.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Reduced state on the named subsystems, kept in their original order.
/// `keep` must be nonempty, sorted would be nice but is not required;
/// duplicates and out-of-range indices are rejected.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Kronecker product of states; subsystem dimension lists concatenate.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reorder subsystems of a state: new subsystem k is old subsystem perm[k].
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm);

/// Ginibre-ensemble random state of the given rank: G a d x rank matrix of
/// i.i.d. standard complex Gaussians (row-major fill order), G G^dagger
/// normalized to unit trace.
DensityMatrix random_density(int d, int rank, SeededRng& rng);

/// Haar-random unitary: QR of a complex Gaussian matrix with the R-diagonal
/// phases absorbed into Q.
CMatrix random_unitary(int d, SeededRng& rng);

}  // namespace qd
