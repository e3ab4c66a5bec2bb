#pragma once

#include <functional>
#include <vector>

#include "oqsim/hilbert.hpp"

// Harmonic + Fourier potentials:
//   V(x) = (delta/2) x^2 + sum_n B_n cos(2 pi n x / Lambda + Phi_n)
// with delta and the B_n in rad/s and x dimensionless.  The constant
// (n = 0) Fourier component is always dropped; it only contributes a
// global phase to the evolution.

namespace oqsim {

struct FourierTerm {
  int n;        // harmonic index, >= 1
  double b;     // amplitude, rad/s, kept >= 0 (signs folded into phi)
  double phi;   // phase, rad, in (-pi, pi]
};

struct FourierPotential {
  double delta;                    // harmonic coefficient, rad/s
  double lambda;                   // period, dimensionless, > 0
  std::vector<FourierTerm> terms;  // may be empty (pure harmonic)

  FourierPotential(double delta_, double lambda_, std::vector<FourierTerm> terms_);

  // alpha0 = pi/(sqrt(2) Lambda); the n = 1 gate displacement magnitude.
  double alpha0() const;
  static double lambda_from_alpha0(double alpha0);

  double evaluate(double x) const;
  double derivative(double x) const;

  // Deterministic hash of the canonical parameter serialization.
  std::uint64_t hash() const;
};

// Canonical parameters of the symmetric double well used throughout:
// delta = 2 pi x 500 rad/s, alpha0 = pi/6 (Lambda = 3 sqrt(2)),
// B = 0.8 / 200 us, phase phi.
FourierPotential canonical_double_well(double phi = 0.0);

struct WellGeometry {
  double x_min_1;        // left minimum
  double x_min_2;        // right minimum
  double x_max;          // barrier top between them
  double barrier_left;   // V(x_max) - V(x_min_1), rad/s
  double barrier_right;  // V(x_max) - V(x_min_2), rad/s
  double xi;             // 1 - barrier_left/barrier_right
};

struct NotADoubleWell : std::runtime_error {
  std::vector<double> found_extrema;
  NotADoubleWell(const std::string& what, std::vector<double> extrema)
      : std::runtime_error(what), found_extrema(std::move(extrema)) {}
};

// Locates the two minima and the barrier top in [-Lambda, Lambda] by
// bracketed root-finding on V', and evaluates the asymmetry
// Xi = 1 - (V(x_max)-V(x_min_1))/(V(x_max)-V(x_min_2)).
WellGeometry analyze_double_well(const FourierPotential& pot);

struct FourierFit {
  std::vector<FourierTerm> terms;
  double residual;  // max |V - fit - mean| on a 1001-point grid
};

// Order-N Fourier approximant of V on [-Lambda/2, Lambda/2], constant
// offset discarded.  Coefficients by periodic-rectangle quadrature, which
// is exact for trigonometric polynomials below the quadrature order.
FourierFit fourier_fit(const std::function<double(double)>& v, double lambda,
                       int order);

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // ascending, rad/s
  Mat eigenvectors;             // columns, Fock basis
};

// Eigendecomposition of H = (delta/2)(x^2 + p^2) + V_fourier(x) on the
// truncated space.  Verifies that the lowest 10 levels are converged
// against cutoff + 20 and throws otherwise.
Spectrum spectrum(const FourierPotential& pot, FockSpace space);

// The Hamiltonian matrix itself (oscillator only).  cos(k x + phi) is
// assembled from exact displacement matrix elements.
Mat hamiltonian_matrix(const FourierPotential& pot, FockSpace space);

inline double hz_to_rad(double hz) { return 2.0 * M_PI * hz; }

}  // namespace oqsim
