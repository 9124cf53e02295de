#pragma once

#include <vector>

namespace mkdv {

// Square matrix that is banded up to periodic wrap-around: entry (r,c) may be
// nonzero only when (c-r) mod M corresponds to an offset in [-h, h]. Storage
// is by (row, offset); M >= 2h+1 keeps the offset-to-column map injective.
class CyclicBandedMatrix {
 public:
  CyclicBandedMatrix(int M, int half_bandwidth);

  int size() const { return m_; }
  int half_bandwidth() const { return h_; }

  double& at_offset(int row, int offset);
  double at_offset(int row, int offset) const;

  // Dense accessor; returns 0 outside the band.
  double at(int r, int c) const;

  // Maximum absolute row sum.
  double inf_norm() const;

 private:
  int m_ = 0;
  int h_ = 0;
  std::vector<double> band_;  // band_[row * (2h+1) + h + offset]
};

// Direct solve by Gaussian elimination with partial pivoting across every
// remaining row (band and wrap rows alike; the leading principal block alone
// can be exactly singular, so pivots must not be confined to it). Exact up
// to roundoff; no iterative correction.
// Throws SingularMatrixError when a pivot falls below 1e-14 * |A|_inf.
std::vector<double> solve_cyclic_banded(const CyclicBandedMatrix& A,
                                        const std::vector<double>& rhs);

}  // namespace mkdv
