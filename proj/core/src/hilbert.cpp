#include "oqsim/hilbert.hpp"

#include <cmath>

namespace oqsim {

namespace {

int required_cutoff_for(double abs2) {
  // mean occupation |alpha|^2 plus ~10 standard deviations of headroom
  return static_cast<int>(std::ceil(abs2 + 10.0 * std::sqrt(abs2 + 1.0)));
}

// <m| exp(beta a^dag) |n> = beta^(m-n) sqrt(m!/n!)/(m-n)!  for m >= n.
// Built by the stable recurrence T[m][n] = T[m-1][n] * beta * sqrt(m)/(m-n).
Mat exp_raising(int dim, cxd beta) {
  Mat t = Mat::Identity(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = n + 1; m < dim; ++m) {
      t(m, n) = t(m - 1, n) * beta * std::sqrt(double(m)) / double(m - n);
    }
  }
  return t;
}

}  // namespace

std::pair<OscillatorOperator, OscillatorOperator> ladder(FockSpace space) {
  const int n = space.cutoff;
  Mat a = Mat::Zero(n, n);
  for (int m = 0; m + 1 < n; ++m) a(m, m + 1) = std::sqrt(double(m + 1));
  OscillatorOperator lower{space, a, false};
  OscillatorOperator raise{space, a.adjoint(), false};
  return {lower, raise};
}

std::pair<OscillatorOperator, OscillatorOperator> quadratures(FockSpace space) {
  auto [a, ad] = ladder(space);
  const double s = 1.0 / std::sqrt(2.0);
  Mat x = s * (a.mat + ad.mat);
  Mat p = cxd(0, -1) * s * (a.mat - ad.mat);
  return {OscillatorOperator{space, x, true}, OscillatorOperator{space, p, true}};
}

OscillatorOperator number_operator(FockSpace space) {
  Mat n = Mat::Zero(space.cutoff, space.cutoff);
  for (int m = 0; m < space.cutoff; ++m) n(m, m) = double(m);
  return {space, n, true};
}

OscillatorOperator displacement(FockSpace space, cxd alpha) {
  const double abs2 = std::norm(alpha);
  const int required = required_cutoff_for(abs2);
  if (space.cutoff < required)
    throw TruncationOverflow(
        "displacement: |alpha|^2 = " + std::to_string(abs2) +
            " too large for cutoff " + std::to_string(space.cutoff) +
            ", need >= " + std::to_string(required),
        required);
  // normal-ordered form D = e^{-|a|^2/2} e^{alpha a^dag} e^{-alpha^* a};
  // annihilators act first, so the truncated product reproduces the exact
  // matrix elements of the untruncated operator.
  const int n = space.cutoff;
  Mat up = exp_raising(n, alpha);
  Mat down = exp_raising(n, -std::conj(alpha)).transpose();
  Mat d = std::exp(-0.5 * abs2) * (up * down);
  return {space, d, false};
}

Vec coherent_state(FockSpace space, cxd gamma) {
  Vec v = Vec::Zero(space.cutoff);
  v(0) = 1.0;
  Vec out = displacement(space, gamma).mat * v;
  // tail check on the produced state
  double tail = 0.0;
  for (int m = std::max(0, space.cutoff - 10); m < space.cutoff; ++m)
    tail += std::norm(out(m));
  if (tail >= 1e-8)
    throw TruncationOverflow("coherent_state: tail mass " + std::to_string(tail),
                             required_cutoff_for(std::norm(gamma)));
  return out;
}

Mat hermitian_exponential(const Mat& h, double t) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_exponential: matrix not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * scale)
    throw std::invalid_argument(
        "hermitian_exponential: matrix not Hermitian (defect " +
        std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  const auto& w = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  Vec phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    phases(i) = std::exp(cxd(0, -w(i) * t));
  return v * phases.asDiagonal() * v.adjoint();
}

OscillatorOperator hermitian_exponential(const OscillatorOperator& h, double t) {
  return {h.space, hermitian_exponential(h.mat, t), false};
}

Mat2 sigma_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 sigma_y() {
  Mat2 m;
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

Mat2 sigma_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 rotation(QubitAxis axis) {
  Mat2 gen = std::sin(axis.phi) * sigma_y() + std::cos(axis.phi) * sigma_z();
  double c = std::cos(axis.theta / 2), s = std::sin(axis.theta / 2);
  return c * Mat2::Identity() - cxd(0, s) * gen;
}

Mat2 rot_x(double angle) {
  double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return c * Mat2::Identity() - cxd(0, s) * sigma_x();
}

Mat2 rot_y(double angle) {
  double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return c * Mat2::Identity() - cxd(0, s) * sigma_y();
}

Mat2 rot_z(double angle) {
  double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return c * Mat2::Identity() - cxd(0, s) * sigma_z();
}

Mat embed(const Mat2& qubit_op, FockSpace space) {
  const int n = space.cutoff;
  Mat out = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block(i * n, j * n, n, n) =
          qubit_op(i, j) * Mat::Identity(n, n);
  return out;
}

Mat embed(const OscillatorOperator& osc_op) {
  const int n = osc_op.space.cutoff;
  Mat out = Mat::Zero(2 * n, 2 * n);
  out.block(0, 0, n, n) = osc_op.mat;
  out.block(n, n, n, n) = osc_op.mat;
  return out;
}

HybridState HybridState::pure(FockSpace space, Vec psi) {
  if (psi.size() != space.hybrid_dim())
    throw std::invalid_argument("HybridState::pure: dimension mismatch");
  HybridState s{space, Kind::Pure, std::move(psi), Mat()};
  s.validate();
  return s;
}

HybridState HybridState::density(FockSpace space, Mat rho) {
  if (rho.rows() != space.hybrid_dim() || rho.cols() != space.hybrid_dim())
    throw std::invalid_argument("HybridState::density: dimension mismatch");
  HybridState s{space, Kind::Density, Vec(), std::move(rho)};
  s.validate();
  return s;
}

HybridState HybridState::ground(FockSpace space) {
  Vec psi = Vec::Zero(space.hybrid_dim());
  psi(0) = 1.0;
  return pure(space, std::move(psi));
}

HybridState HybridState::down_with(FockSpace space, const Vec& osc) {
  if (osc.size() != space.cutoff)
    throw std::invalid_argument("HybridState::down_with: dimension mismatch");
  Vec psi = Vec::Zero(space.hybrid_dim());
  psi.head(space.cutoff) = osc;
  return pure(space, std::move(psi));
}

HybridState HybridState::down_with_density(FockSpace space, const Mat& osc_rho) {
  if (osc_rho.rows() != space.cutoff || osc_rho.cols() != space.cutoff)
    throw std::invalid_argument("HybridState::down_with_density: dimension mismatch");
  Mat rho = Mat::Zero(space.hybrid_dim(), space.hybrid_dim());
  rho.block(0, 0, space.cutoff, space.cutoff) = osc_rho;
  return density(space, std::move(rho));
}

Mat HybridState::density_matrix() const {
  if (kind == Kind::Pure) return psi * psi.adjoint();
  return rho;
}

Mat HybridState::oscillator_density() const {
  const int n = space.cutoff;
  if (kind == Kind::Pure) {
    Mat out = Mat::Zero(n, n);
    out += psi.head(n) * psi.head(n).adjoint();
    out += psi.tail(n) * psi.tail(n).adjoint();
    return out;
  }
  return rho.block(0, 0, n, n) + rho.block(n, n, n, n);
}

Eigen::Matrix2cd HybridState::qubit_density() const {
  const int n = space.cutoff;
  Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
  if (kind == Kind::Pure) {
    q(0, 0) = psi.head(n).squaredNorm();
    q(1, 1) = psi.tail(n).squaredNorm();
    q(0, 1) = (psi.tail(n).adjoint() * psi.head(n)).value();
    q(1, 0) = std::conj(q(0, 1));
  } else {
    q(0, 0) = rho.block(0, 0, n, n).trace();
    q(1, 1) = rho.block(n, n, n, n).trace();
    q(0, 1) = rho.block(0, n, n, n).trace();
    q(1, 0) = rho.block(n, 0, n, n).trace();
  }
  return q;
}

double HybridState::tail_mass(int levels) const {
  const int n = space.cutoff;
  const int lo = std::max(0, n - levels);
  double tail = 0.0;
  if (kind == Kind::Pure) {
    for (int q = 0; q < 2; ++q)
      for (int m = lo; m < n; ++m) tail += std::norm(psi(q * n + m));
  } else {
    for (int q = 0; q < 2; ++q)
      for (int m = lo; m < n; ++m) tail += rho(q * n + m, q * n + m).real();
  }
  return tail;
}

void HybridState::check_tail(const char* context) const {
  const double tail = tail_mass();
  if (tail >= 1e-8) {
    const double nbar = mean_occupation(*this);
    throw TruncationOverflow(
        std::string(context) + ": population " + std::to_string(tail) +
            " in the top 10 Fock levels at cutoff " + std::to_string(space.cutoff),
        static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar + 1.0))) + 10);
  }
}

void HybridState::validate(double tol) const {
  if (kind == Kind::Pure) {
    const double n = psi.norm();
    if (std::abs(n - 1.0) > tol)
      throw std::invalid_argument("HybridState: pure state norm " +
                                  std::to_string(n));
    return;
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol)
    throw std::invalid_argument("HybridState: density not Hermitian, defect " +
                                std::to_string(herm));
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol)
    throw std::invalid_argument("HybridState: density trace " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  const double wmin = es.eigenvalues().minCoeff();
  if (wmin < -tol)
    throw std::invalid_argument("HybridState: density not PSD, min eigenvalue " +
                                std::to_string(wmin));
}

cxd expectation(const Mat& hybrid_op, const HybridState& state) {
  if (hybrid_op.rows() != state.space.hybrid_dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  if (state.is_pure()) return (state.psi.adjoint() * hybrid_op * state.psi).value();
  return (hybrid_op * state.rho).trace();
}

cxd expectation(const OscillatorOperator& osc_op, const HybridState& state) {
  if (osc_op.space.cutoff != state.space.cutoff)
    throw std::invalid_argument("expectation: space mismatch");
  return (osc_op.mat * state.oscillator_density()).trace();
}

double mean_occupation(const HybridState& state) {
  Mat ro = state.oscillator_density();
  double nbar = 0.0;
  for (int m = 0; m < state.space.cutoff; ++m) nbar += m * ro(m, m).real();
  return nbar;
}

}  // namespace oqsim
