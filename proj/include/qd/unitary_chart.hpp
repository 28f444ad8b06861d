#pragma once

#include <vector>

#include "qd/matrix.hpp"

namespace qd {

/// Surjective chart for measurement bases: a unitary modulo right-diagonal
/// phases is the product of complex Givens rotations
///   U(x) = G_{01} G_{02} ... G_{0,n-1} G_{12} ... G_{n-2,n-1}
/// over index pairs in lexicographic order, where G_{ij}(theta, phi) rotates
/// the (i, j) plane by
///   [ cos(theta)              -e^{-i phi} sin(theta) ]
///   [ e^{i phi} sin(theta)     cos(theta)            ]
/// The parameter vector packs (theta, phi) per pair in the same order, so it
/// has n(n-1) entries. Right-diagonal phases are dropped: projectors onto
/// columns do not see them.
class UnitaryChart {
 public:
  explicit UnitaryChart(int n);

  int dim() const { return n_; }
  int parameter_count() const { return n_ * (n_ - 1); }

  /// Chart map: parameters to a unitary (angles wrap, any real vector works).
  CMatrix build(const std::vector<double>& params) const;

  /// Inverse up to right-diagonal phases: build(extract(u)) has the same
  /// columns as u up to a phase per column.
  std::vector<double> extract(const CMatrix& u) const;

 private:
  int n_;
};

}  // namespace qd
