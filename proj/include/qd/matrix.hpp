#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qd {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest entry magnitude, 0 for empty matrices.
double max_abs(const CMatrix& m);

/// max |M - M^dagger| entry.
double hermiticity_defect(const CMatrix& m);

/// max |U^dagger U - I| entry.
double unitarity_defect(const CMatrix& u);

bool all_finite(const CMatrix& m);

/// Kronecker product, row-major convention: (a ⊗ b)((i*rb+k),(j*cb+l)) = a(i,j) b(k,l).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Computational basis column |k> in dimension d.
CVector basis_vector(int d, int k);

int product_of_dims(const std::vector<int>& dims);

}  // namespace qd
