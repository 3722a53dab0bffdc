#include "lieblab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lieblab {

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cxd CMat::trace() const {
  cxd t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMat::fro_norm() const {
  double acc = 0.0;
  for (const cxd& v : a_) acc += std::norm(v);
  return std::sqrt(acc);
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cxd& v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMat& CMat::operator+=(const CMat& o) {
  if (!same_shape(o)) throw InvalidInput("matrix addition: shape mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMat operator+(const CMat& a, const CMat& b) {
  CMat out = a;
  out += b;
  return out;
}

CMat operator-(const CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw InvalidInput("matrix subtraction: shape mismatch");
  CMat out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product: shape mismatch");
  CMat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMat operator*(double s, const CMat& a) {
  CMat out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw InvalidInput("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double herm_deviation(const CMat& a) {
  if (a.rows() != a.cols()) throw InvalidInput("herm_deviation: not square");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

CMat hermitize(const CMat& a) {
  if (a.rows() != a.cols()) throw InvalidInput("hermitize: not square");
  CMat out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return out;
}

HermMatrix::HermMatrix(CMat m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidInput("HermMatrix: not square");
  if (m_.rows() < 1) throw InvalidInput("HermMatrix: empty");
  if (herm_deviation(m_) > tol)
    throw InvalidInput("HermMatrix: input is not Hermitian within tolerance");
}

namespace {

double offdiag_fro(const CMat& a) {
  double acc = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace

SpectralDecomp eig_herm(const HermMatrix& h) {
  const int n = h.dim();
  CMat A = hermitize(h.mat());
  CMat V = CMat::identity(n);
  if (n == 1) {
    SpectralDecomp out;
    out.eigenvalues = {A(0, 0).real()};
    out.unitary = V;
    return out;
  }

  const double scale = std::max(1.0, A.fro_norm());
  const double thresh = 1e-13 * scale;
  bool converged = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_fro(A) <= thresh) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cxd beta = A(p, q);
        const double ab = std::abs(beta);
        if (ab < 1e-300) continue;
        const cxd phase = beta / ab;  // e^{i phi}
        const double alpha = A(p, p).real();
        const double delta = A(q, q).real();
        const double tau = (delta - alpha) / (2.0 * ab);
        const double sgn = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cxd phase_c = std::conj(phase);
        // A <- A J, V <- V J  with  J_pp=c, J_pq=s, J_qp=-s e^{-i phi},
        // J_qq=c e^{-i phi}
        for (int k = 0; k < n; ++k) {
          const cxd akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * phase_c * akq;
          A(k, q) = s * akp + c * phase_c * akq;
          const cxd vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * phase_c * vkq;
          V(k, q) = s * vkp + c * phase_c * vkq;
        }
        // A <- J^* A
        for (int k = 0; k < n; ++k) {
          const cxd apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * phase * aqk;
          A(q, k) = s * apk + c * phase * aqk;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
      }
    }
  }
  if (!converged && offdiag_fro(A) > thresh)
    throw std::runtime_error("eig_herm: Jacobi did not converge in 100 sweeps");

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return A(i, i).real() < A(j, j).real();
  });
  SpectralDecomp out;
  out.eigenvalues.resize(static_cast<size_t>(n));
  out.unitary = CMat(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[static_cast<size_t>(j)] = A(order[size_t(j)], order[size_t(j)]).real();
    for (int i = 0; i < n; ++i) out.unitary(i, j) = V(i, order[size_t(j)]);
  }
  return out;
}

CMat rebuild_from_eig(const SpectralDecomp& e, const std::vector<double>& newvals) {
  const int n = e.unitary.rows();
  if (newvals.size() != static_cast<size_t>(n))
    throw InvalidInput("rebuild_from_eig: eigenvalue count mismatch");
  CMat scaled(n, n);  // U diag(newvals)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      scaled(i, j) = e.unitary(i, j) * newvals[static_cast<size_t>(j)];
  return hermitize(scaled * e.unitary.adjoint());
}

namespace {

void validate_decomp(const HermMatrix& base, const SpectralDecomp& e) {
  const int n = base.dim();
  const CMat& U = e.unitary;
  if (U.rows() != n || U.cols() != n ||
      e.eigenvalues.size() != static_cast<size_t>(n))
    throw InvalidInput("PosDefMatrix: malformed decomposition");
  for (size_t i = 0; i < e.eigenvalues.size(); ++i) {
    if (!(e.eigenvalues[i] > kPdFloor))
      throw InvalidInput("PosDefMatrix: eigenvalue at or below the PD floor");
    if (i > 0 && e.eigenvalues[i] < e.eigenvalues[i - 1])
      throw InvalidInput("PosDefMatrix: eigenvalues not ascending");
  }
  const double scale = std::max(1.0, base.mat().max_abs());
  if (max_abs_diff(U * U.adjoint(), CMat::identity(n)) > 1e-10)
    throw InvalidInput("PosDefMatrix: eigenvector matrix is not unitary");
  if (max_abs_diff(rebuild_from_eig(e, e.eigenvalues), base.mat()) >
      1e-10 * scale)
    throw InvalidInput("PosDefMatrix: decomposition does not reconstruct base");
}

}  // namespace

PosDefMatrix::PosDefMatrix(const HermMatrix& base) : base_(base), eig_(eig_herm(base)) {
  validate_decomp(base_, eig_);
}

PosDefMatrix PosDefMatrix::from_eig(SpectralDecomp e) {
  const int n = e.unitary.rows();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return e.eigenvalues[size_t(i)] < e.eigenvalues[size_t(j)];
  });
  SpectralDecomp sorted;
  sorted.eigenvalues.resize(static_cast<size_t>(n));
  sorted.unitary = CMat(n, n);
  for (int j = 0; j < n; ++j) {
    sorted.eigenvalues[size_t(j)] = e.eigenvalues[size_t(order[size_t(j)])];
    for (int i = 0; i < n; ++i)
      sorted.unitary(i, j) = e.unitary(i, order[size_t(j)]);
  }
  HermMatrix base(rebuild_from_eig(sorted, sorted.eigenvalues));
  validate_decomp(base, sorted);
  return PosDefMatrix(std::move(base), std::move(sorted));
}

HermMatrix apply_fn(const PosDefMatrix& a, const ScalarFn& f) {
  std::vector<double> vals(a.eig().eigenvalues.size());
  for (size_t i = 0; i < vals.size(); ++i)
    vals[i] = f.eval(a.eig().eigenvalues[i]);
  return HermMatrix(rebuild_from_eig(a.eig(), vals));
}

HermMatrix herm_apply(const HermMatrix& h, const std::function<double(double)>& f) {
  const SpectralDecomp e = eig_herm(h);
  std::vector<double> vals(e.eigenvalues.size());
  for (size_t i = 0; i < vals.size(); ++i) vals[i] = f(e.eigenvalues[i]);
  return HermMatrix(rebuild_from_eig(e, vals));
}

PosDefMatrix mat_power(const PosDefMatrix& a, double p) {
  SpectralDecomp e = a.eig();
  for (double& v : e.eigenvalues) v = std::pow(v, p);
  return PosDefMatrix::from_eig(std::move(e));
}

PosDefMatrix pd_inverse(const PosDefMatrix& a) { return mat_power(a, -1.0); }

PosDefMatrix pd_midpoint(const PosDefMatrix& a, const PosDefMatrix& b) {
  return PosDefMatrix(HermMatrix(0.5 * (a.mat() + b.mat())));
}

CMat random_gaussian(int rows, int cols, RandomSource& rng) {
  CMat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

PosDefMatrix random_posdef(int dim, RandomSource& rng, double cond_cap) {
  if (dim < 1) throw InvalidInput("random_posdef: dim must be >= 1");
  if (!(cond_cap >= 1.0)) throw InvalidInput("random_posdef: cond_cap must be >= 1");
  const CMat g = random_gaussian(dim, dim, rng);
  const HermMatrix wishart(hermitize(g * g.adjoint()));
  SpectralDecomp e = eig_herm(wishart);
  const double hi = std::sqrt(cond_cap);
  const double lo = 1.0 / hi;
  for (double& v : e.eigenvalues) v = std::clamp(v, lo, hi);
  return PosDefMatrix::from_eig(std::move(e));
}

PosDefMatrix random_posdef(int dim, std::uint64_t seed, double cond_cap) {
  RandomSource rng(seed);
  return random_posdef(dim, rng, cond_cap);
}

HermMatrix random_herm(int dim, RandomSource& rng) {
  const CMat g = random_gaussian(dim, dim, rng);
  return HermMatrix(hermitize(g));
}

CMat random_unitary(int dim, RandomSource& rng) {
  return eig_herm(random_herm(dim, rng)).unitary;
}

}  // namespace lieblab
