#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

// Truncated Fock-space linear algebra for a hybrid qubit-oscillator system.
//
// Conventions used throughout the library:
//   * The oscillator lives on the lowest `cutoff` Fock levels.
//   * Hybrid objects are Kronecker products with the qubit as the slow
//     index, basis order (|down>, |up>).
//   * sigma_z|down> = +|down>.  All Pauli matrices are written in this
//     basis and form a right-handed triple (sx*sy = i*sz).
//   * x = (a + a^dag)/sqrt(2), p = -i(a - a^dag)/sqrt(2), dimensionless.

namespace oqsim {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

// Thrown when a state or operator would need more Fock levels than the
// space retains.  `required_cutoff` names a cutoff that would suffice.
struct TruncationOverflow : std::runtime_error {
  int required_cutoff;
  TruncationOverflow(const std::string& what, int required)
      : std::runtime_error(what), required_cutoff(required) {}
};

struct FockSpace {
  int cutoff;
  explicit FockSpace(int cutoff_) : cutoff(cutoff_) {
    if (cutoff < 2)
      throw std::invalid_argument("FockSpace: cutoff must be >= 2, got " +
                                  std::to_string(cutoff_));
  }
  int dim() const { return cutoff; }
  int hybrid_dim() const { return 2 * cutoff; }
  bool operator==(const FockSpace& o) const { return cutoff == o.cutoff; }
};

struct OscillatorOperator {
  FockSpace space;
  Mat mat;
  bool hermitian = false;
};

// Rotation axis n(phi) = (0, sin phi, cos phi) in the y-z plane, rotation
// angle theta:  R = exp(-i theta/2 n.sigma).
struct QubitAxis {
  double theta = 0.0;
  double phi = 0.0;
};

// --- oscillator operators ---------------------------------------------

std::pair<OscillatorOperator, OscillatorOperator> ladder(FockSpace space);
std::pair<OscillatorOperator, OscillatorOperator> quadratures(FockSpace space);
OscillatorOperator number_operator(FockSpace space);

// Displacement operator exp(alpha a^dag - alpha^* a), built from its exact
// matrix elements on the retained levels (normal-ordered product), so the
// entries match the untruncated operator; unitarity holds up to the
// truncation defect.  Throws TruncationOverflow when |alpha|^2 sits too
// close to the cutoff.
OscillatorOperator displacement(FockSpace space, cxd alpha);

// Coherent state D(gamma)|0>, with a tail-mass check.
Vec coherent_state(FockSpace space, cxd gamma);

// exp(-i H t) for Hermitian H via eigendecomposition.  Throws
// std::invalid_argument when H is not Hermitian within tolerance.
Mat hermitian_exponential(const Mat& h, double t);
OscillatorOperator hermitian_exponential(const OscillatorOperator& h, double t);

// --- qubit -------------------------------------------------------------

Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();
Mat2 rotation(QubitAxis axis);       // exp(-i theta/2 (sin(phi) sy + cos(phi) sz))
Mat2 rot_x(double angle);            // exp(-i angle/2 sx)
Mat2 rot_y(double angle);
Mat2 rot_z(double angle);

// --- hybrid embedding ----------------------------------------------------

Mat embed(const Mat2& qubit_op, FockSpace space);
Mat embed(const OscillatorOperator& osc_op);

// --- states --------------------------------------------------------------

struct HybridState {
  enum class Kind { Pure, Density };

  FockSpace space;
  Kind kind;
  Vec psi;   // dimension 2*cutoff when pure
  Mat rho;   // (2*cutoff)^2 when density

  static HybridState pure(FockSpace space, Vec psi);
  static HybridState density(FockSpace space, Mat rho);
  // |down> tensor |0>
  static HybridState ground(FockSpace space);
  // |down> tensor (oscillator pure state)
  static HybridState down_with(FockSpace space, const Vec& osc);
  // |down><down| tensor (oscillator density)
  static HybridState down_with_density(FockSpace space, const Mat& osc_rho);

  bool is_pure() const { return kind == Kind::Pure; }
  Mat density_matrix() const;           // psi psi^dag when pure
  Mat oscillator_density() const;       // qubit traced out
  Eigen::Matrix2cd qubit_density() const;

  // Population of the top `levels` Fock levels (both qubit branches).
  double tail_mass(int levels = 10) const;
  // Throws TruncationOverflow when tail mass >= 1e-8.
  void check_tail(const char* context = "state") const;

  // Norm / hermiticity / trace / positivity checks; throws on violation.
  void validate(double tol = 1e-10) const;
};

cxd expectation(const Mat& hybrid_op, const HybridState& state);
cxd expectation(const OscillatorOperator& osc_op, const HybridState& state);
double mean_occupation(const HybridState& state);

}  // namespace oqsim
