#include "mkdv/banded.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "mkdv/errors.hpp"

namespace mkdv {

CyclicBandedMatrix::CyclicBandedMatrix(int M, int half_bandwidth)
    : m_(M), h_(half_bandwidth) {
  if (half_bandwidth < 0) throw ConfigError("negative bandwidth");
  // M >= 2h+1 keeps (c-r) mod M -> offset injective, so every entry has one
  // storage slot. The widest Jacobian (h = 4) therefore needs M >= 9.
  if (M < 2 * half_bandwidth + 1)
    throw ConfigError("cyclic banded matrix of size " + std::to_string(M) +
                      " cannot hold half-bandwidth " +
                      std::to_string(half_bandwidth) +
                      " (need size >= 2*h + 1)");
  band_.assign(static_cast<std::size_t>(m_) * (2 * h_ + 1), 0.0);
}

double& CyclicBandedMatrix::at_offset(int row, int offset) {
  assert(row >= 0 && row < m_ && offset >= -h_ && offset <= h_);
  return band_[static_cast<std::size_t>(row) * (2 * h_ + 1) + h_ + offset];
}

double CyclicBandedMatrix::at_offset(int row, int offset) const {
  assert(row >= 0 && row < m_ && offset >= -h_ && offset <= h_);
  return band_[static_cast<std::size_t>(row) * (2 * h_ + 1) + h_ + offset];
}

double CyclicBandedMatrix::at(int r, int c) const {
  assert(r >= 0 && r < m_ && c >= 0 && c < m_);
  int d = (c - r) % m_;
  if (d < 0) d += m_;
  // Unambiguous because M >= 2h+1: the two arcs [0,h] and [M-h,M-1] are
  // disjoint.
  if (d <= h_) return at_offset(r, d);
  if (d >= m_ - h_) return at_offset(r, d - m_);
  return 0.0;
}

double CyclicBandedMatrix::inf_norm() const {
  double best = 0.0;
  for (int r = 0; r < m_; ++r) {
    double s = 0.0;
    for (int o = -h_; o <= h_; ++o) s += std::abs(at_offset(r, o));
    best = std::max(best, s);
  }
  return best;
}

// Gaussian elimination with partial pivoting over every remaining row, not
// just the band below the diagonal. The wrap rows must stay eligible as
// pivots: the leading principal block of a cyclic band matrix can be exactly
// singular even when the matrix itself is well conditioned, so any method
// that factors that block on its own can break down.
//
// Rows are held in a dense column-major array, but elimination stays cheap
// because supports remain narrow: a row that is live at column j is zero
// left of j, reaches at most 2h columns to its right, and otherwise touches
// only the last 2h wrap columns. (Initially every row satisfies this, and a
// pivot row can only donate its own support.) Each update is therefore O(h),
// giving O(M^2) for the pivot scans plus O(M h^2) arithmetic per solve.
std::vector<double> solve_cyclic_banded(const CyclicBandedMatrix& A,
                                        const std::vector<double>& rhs) {
  const int M = A.size();
  const int h = A.half_bandwidth();
  if (static_cast<int>(rhs.size()) != M)
    throw ConfigError("rhs length does not match matrix size");
  const double tol = 1e-14 * A.inf_norm();

  std::vector<double> mat(static_cast<std::size_t>(M) * M, 0.0);
  const auto a = [&](int r, int c) -> double& {
    return mat[static_cast<std::size_t>(c) * M + r];
  };
  for (int r = 0; r < M; ++r)
    for (int s = -h; s <= h; ++s) {
      int c = (r + s) % M;
      if (c < 0) c += M;
      a(r, c) = A.at_offset(r, s);
    }

  std::vector<double> b = rhs;  // indexed by matrix row throughout
  std::vector<int> pr(M);       // pr[i]: matrix row pivoting position i
  for (int i = 0; i < M; ++i) pr[i] = i;

  const int wu = 2 * h;  // widest live span right of a pivot
  for (int j = 0; j < M; ++j) {
    int imax = j;
    double amax = std::abs(a(pr[j], j));
    for (int i = j + 1; i < M; ++i) {
      const double v = std::abs(a(pr[i], j));
      if (v > amax) {
        amax = v;
        imax = i;
      }
    }
    // !(>) rather than (<=) so a NaN contaminated column also throws.
    if (!(amax > tol))
      throw SingularMatrixError("cyclic banded solve: pivot " +
                                std::to_string(amax) + " at column " +
                                std::to_string(j) + " below threshold");
    std::swap(pr[j], pr[imax]);
    const int P = pr[j];
    const double pv = a(P, j);
    const int lead_end = std::min(j + wu, M - 1);
    const int tail_begin = std::max(M - wu, lead_end + 1);
    for (int i = j + 1; i < M; ++i) {
      const int R = pr[i];
      const double v = a(R, j);
      if (v == 0.0) continue;
      const double m = v / pv;
      a(R, j) = 0.0;
      for (int c = j + 1; c <= lead_end; ++c) a(R, c) -= m * a(P, c);
      for (int c = tail_begin; c < M; ++c) a(R, c) -= m * a(P, c);
      b[R] -= m * b[P];
    }
  }

  std::vector<double> x(M, 0.0);
  for (int j = M - 1; j >= 0; --j) {
    const int P = pr[j];
    double s = b[P];
    const int lead_end = std::min(j + wu, M - 1);
    const int tail_begin = std::max(M - wu, lead_end + 1);
    for (int c = j + 1; c <= lead_end; ++c) s -= a(P, c) * x[c];
    for (int c = tail_begin; c < M; ++c) s -= a(P, c) * x[c];
    x[j] = s / a(P, j);
  }
  return x;
}

}  // namespace mkdv
