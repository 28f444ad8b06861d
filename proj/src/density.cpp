#include "qd/density.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qd/errors.hpp"

namespace qd {

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix matrix, std::vector<int> dims, double tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), tol_(tol) {
  if (tol_ < 0.0) throw ValidationError("density matrix: tol must be nonnegative");
  if (matrix_.rows() != matrix_.cols())
    throw ValidationError("density matrix: matrix must be square");
  if (dims_.empty()) throw ValidationError("density matrix: dims must be nonempty");
  for (int d : dims_)
    if (d < 1) throw ValidationError("density matrix: each subsystem dimension must be >= 1");
  if (product_of_dims(dims_) != matrix_.rows())
    throw ValidationError("density matrix: product of dims must equal the matrix side");
  if (!all_finite(matrix_))
    throw ValidationError("density matrix: entries must be finite");

  const double herm = hermiticity_defect(matrix_);
  if (herm > tol_)
    throw ValidationError("density matrix: hermiticity violation, max |M - M^dagger| = " +
                          fmt_double(herm) + " exceeds tol " + fmt_double(tol_));
  const double trace_dev = std::abs(matrix_.trace() - std::complex<double>(1.0, 0.0));
  if (trace_dev > tol_)
    throw ValidationError("density matrix: unit-trace violation, |tr - 1| = " +
                          fmt_double(trace_dev) + " exceeds tol " + fmt_double(tol_));

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw InternalError("density matrix: eigenvalue computation did not converge");
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol_)
    throw ValidationError("density matrix: positivity violation, smallest eigenvalue = " +
                          fmt_double(min_eig) + " below -tol = " + fmt_double(-tol_));
}

EigenDecomposition eig_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eig_hermitian: matrix must be square");
  const double herm = hermiticity_defect(m);
  if (herm > 1e-10)
    throw ValidationError("eig_hermitian: input not Hermitian, defect = " + fmt_double(herm));

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw InternalError("eig_hermitian: eigensolver did not converge");

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};

  const auto n = m.rows();
  const CMatrix recon =
      out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.adjoint();
  if (max_abs(recon - m) > 1e-10 * static_cast<double>(n))
    throw InternalError("eig_hermitian: reconstruction residual exceeds bound");
  if (unitarity_defect(out.eigenvectors) > 1e-10)
    throw InternalError("eig_hermitian: eigenvectors not orthonormal");
  return out;
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw ValidationError("hermitian_eigenvalues: matrix must be square");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw InternalError("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int n = rho.num_subsystems();
  if (keep.empty()) throw ValidationError("partial_trace: keep set must be nonempty");
  std::set<int> seen;
  for (int k : keep) {
    if (k < 0 || k >= n) throw ValidationError("partial_trace: subsystem index out of range");
    if (!seen.insert(k).second) throw ValidationError("partial_trace: duplicate subsystem index");
  }
  std::vector<int> keep_sorted(keep);
  std::sort(keep_sorted.begin(), keep_sorted.end());

  std::vector<int> kept_dims;
  for (int k : keep_sorted) kept_dims.push_back(rho.dim(k));
  const int side_out = product_of_dims(kept_dims);
  const int side_in = rho.side();

  // Mixed-radix strides of the full index, most significant subsystem first.
  std::vector<int> stride(static_cast<std::size_t>(n));
  {
    int s = 1;
    for (int k = n - 1; k >= 0; --k) {
      stride[static_cast<std::size_t>(k)] = s;
      s *= rho.dim(k);
    }
  }
  std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
  for (int k : keep_sorted) is_kept[static_cast<std::size_t>(k)] = true;

  // Map a full index to (kept part, traced part), both mixed-radix packed.
  const auto split = [&](int idx, int& kept, int& traced) {
    kept = 0;
    traced = 0;
    for (int k = 0; k < n; ++k) {
      const int digit = (idx / stride[static_cast<std::size_t>(k)]) % rho.dim(k);
      if (is_kept[static_cast<std::size_t>(k)])
        kept = kept * rho.dim(k) + digit;
      else
        traced = traced * rho.dim(k) + digit;
    }
  };

  CMatrix out = CMatrix::Zero(side_out, side_out);
  for (int i = 0; i < side_in; ++i) {
    int ki, ti;
    split(i, ki, ti);
    for (int j = 0; j < side_in; ++j) {
      int kj, tj;
      split(j, kj, tj);
      if (ti == tj) out(ki, kj) += rho.matrix()(i, j);
    }
  }
  return DensityMatrix(std::move(out), kept_dims, rho.tol());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(tensor(a.matrix(), b.matrix()), std::move(dims),
                       std::max(a.tol(), b.tol()));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& perm) {
  const int n = rho.num_subsystems();
  if (static_cast<int>(perm.size()) != n)
    throw ValidationError("permute_subsystems: permutation arity mismatch");
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || hit[static_cast<std::size_t>(p)])
      throw ValidationError("permute_subsystems: not a permutation");
    hit[static_cast<std::size_t>(p)] = true;
  }

  std::vector<int> new_dims;
  for (int p : perm) new_dims.push_back(rho.dim(p));

  std::vector<int> old_stride(static_cast<std::size_t>(n));
  {
    int s = 1;
    for (int k = n - 1; k >= 0; --k) {
      old_stride[static_cast<std::size_t>(k)] = s;
      s *= rho.dim(k);
    }
  }
  const int side = rho.side();
  // new index digits are old digits at perm[k]
  const auto remap = [&](int old_idx) {
    int out = 0;
    for (int k = 0; k < n; ++k) {
      const int src = perm[static_cast<std::size_t>(k)];
      const int digit = (old_idx / old_stride[static_cast<std::size_t>(src)]) % rho.dim(src);
      out = out * rho.dim(src) + digit;
    }
    return out;
  };

  CMatrix out(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) out(remap(i), remap(j)) = rho.matrix()(i, j);
  return DensityMatrix(std::move(out), std::move(new_dims), rho.tol());
}

DensityMatrix random_density(int d, int rank, SeededRng& rng) {
  if (d < 1) throw ValidationError("random_density: dimension must be >= 1");
  if (rank < 1 || rank > d)
    throw ValidationError("random_density: rank must satisfy 1 <= rank <= d");
  CMatrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(std::move(m), {d}, 1e-10);
}

CMatrix random_unitary(int d, SeededRng& rng) {
  if (d < 1) throw ValidationError("random_unitary: dimension must be >= 1");
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar, not QR-convention dependent.
  for (int k = 0; k < d; ++k) {
    const std::complex<double> rkk = r(k, k);
    const double a = std::abs(rkk);
    q.col(k) *= (a > 0.0) ? (rkk / a) : std::complex<double>(1.0, 0.0);
  }
  return q;
}

}  // namespace qd
