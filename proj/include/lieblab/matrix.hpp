#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "lieblab/errors.hpp"
#include "lieblab/rng.hpp"
#include "lieblab/scalar_fn.hpp"

namespace lieblab {

using cxd = std::complex<double>;

// Dense complex matrix, row-major. Everything in this library runs at small
// dimensions (<= 64, in practice 2..4), so the arithmetic is kept simple.
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static CMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  cxd& operator()(int i, int j) {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  const cxd& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  CMat adjoint() const;
  cxd trace() const;
  double fro_norm() const;
  double max_abs() const;
  bool same_shape(const CMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  CMat& operator+=(const CMat& o);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cxd> a_;
};

CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(double s, const CMat& a);

double max_abs_diff(const CMat& a, const CMat& b);
double herm_deviation(const CMat& a);  // max |a_ij - conj(a_ji)|
CMat hermitize(const CMat& a);         // (a + a^*)/2

struct SpectralDecomp {
  std::vector<double> eigenvalues;  // ascending
  CMat unitary;                     // columns are the eigenvectors
};

// Square matrix that is Hermitian within 1e-12 max deviation (checked).
class HermMatrix {
 public:
  explicit HermMatrix(CMat m, double tol = 1e-12);
  int dim() const { return m_.rows(); }
  const CMat& mat() const { return m_; }

 private:
  CMat m_;
};

inline constexpr double kPdFloor = 1e-10;

// Positive definite matrix carrying its spectral decomposition. Eigenvalues
// are strictly above kPdFloor; U diag(lambda) U^* reproduces the base within
// 1e-10 and U is unitary within 1e-10 (checked at construction).
class PosDefMatrix {
 public:
  explicit PosDefMatrix(const HermMatrix& base);
  int dim() const { return base_.dim(); }
  const HermMatrix& base() const { return base_; }
  const CMat& mat() const { return base_.mat(); }
  const SpectralDecomp& eig() const { return eig_; }
  double min_eig() const { return eig_.eigenvalues.front(); }
  double max_eig() const { return eig_.eigenvalues.back(); }

  // Build from an eigensystem that is exact by construction (power rebuilds,
  // clipped samples). Sorts, rebuilds the base from (U, lambda), validates.
  static PosDefMatrix from_eig(SpectralDecomp e);

 private:
  PosDefMatrix(HermMatrix base, SpectralDecomp eig)
      : base_(std::move(base)), eig_(std::move(eig)) {}
  HermMatrix base_;
  SpectralDecomp eig_;
};

// Cyclic Jacobi for Hermitian matrices: sweeps over all (p,q) pairs with
// complex plane rotations until the off-diagonal Frobenius mass falls below
// 1e-13 relative to the input scale; at most 100 sweeps. Accurate and simple
// at the dimensions this library targets.
SpectralDecomp eig_herm(const HermMatrix& h);

// U diag(newvals) U^*, hermitized.
CMat rebuild_from_eig(const SpectralDecomp& e, const std::vector<double>& newvals);

// Spectral functional calculus f(A). Throws DomainError if f is undefined at
// an eigenvalue.
HermMatrix apply_fn(const PosDefMatrix& a, const ScalarFn& f);

// Same calculus for a general Hermitian argument (used for exp/log limits).
HermMatrix herm_apply(const HermMatrix& h, const std::function<double(double)>& f);

PosDefMatrix mat_power(const PosDefMatrix& a, double p);
PosDefMatrix pd_inverse(const PosDefMatrix& a);
PosDefMatrix pd_midpoint(const PosDefMatrix& a, const PosDefMatrix& b);

// Wishart-style sample G G^* with eigenvalues clipped into the band
// [cond_cap^{-1/2}, cond_cap^{1/2}], so cond(A) <= cond_cap. Bit-identical
// for a fixed seed / rng state.
PosDefMatrix random_posdef(int dim, RandomSource& rng, double cond_cap);
PosDefMatrix random_posdef(int dim, std::uint64_t seed, double cond_cap);

CMat random_gaussian(int rows, int cols, RandomSource& rng);
HermMatrix random_herm(int dim, RandomSource& rng);
CMat random_unitary(int dim, RandomSource& rng);

}  // namespace lieblab
