#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oqsim/potential.hpp"

// Lowering of a Fourier potential to a BQSP gate program and further to a
// hardware-timed pulse schedule.
//
// One trigonometric gate realizes exp(-i dt B cos(2 pi n x_zeta / Lambda + Phi))
// on the kept |down> block, where x_zeta is the position quadrature rotated
// by zeta = k delta dt at step k.  It is compiled as two BQSP blocks
//   Q(alpha, theta, phi) = D(-sigma_x alpha') R_phi(theta) D(sigma_x alpha'),
// alpha' = -i alpha, executed as Q(-alpha, theta, -phi) then
// Q(alpha, theta, phi).  The -i in the displacement amplitude makes the
// block couple the quadrature at phase arg(alpha): displacing along a
// quadrature conjugates sigma_z by the orthogonal one.  With
// sigma_z|down> = +|down>, the phase-accumulation sign of the inner SQR_Z
// is +theta; the composed block is
//   exp(-i theta/2 (sigma_z cos(2 sqrt(2) alpha0 x_zeta + phi)
//                   + sigma_y sin(2 sqrt(2) alpha0 x_zeta + phi))).

namespace oqsim {

enum class QubitBasisState { Down, Up };

struct Primitive {
  enum class Kind { Sdd, SqrX, SqrZ, Prep, Measure };

  Kind kind;
  cxd alpha = 0.0;        // Sdd: sigma_x-conditioned displacement amplitude
  double detuning = 0.0;  // Sdd: laser detuning delta_L applied during the pulse, rad/s
  double angle = 0.0;     // SqrX / SqrZ: rotation angle, rad
  QubitBasisState keep = QubitBasisState::Down;  // Prep / Measure

  static Primitive sdd(cxd alpha, double detuning = 0.0);
  static Primitive sqr_x(double angle);
  static Primitive sqr_z(double angle);
  static Primitive prep(QubitBasisState basis);
  static Primitive measure(QubitBasisState keep);
};

struct GateProgram {
  std::vector<Primitive> primitives;  // execution order
  int steps = 0;                      // K
  double dt = 0.0;                    // seconds
  std::uint64_t potential_hash = 0;

  // indices into `primitives` of the last primitive of each Trotter step
  std::vector<std::size_t> step_ends;

  std::size_t sdd_count() const;
};

struct HardwareProfile {
  double omega;      // sideband Rabi frequency, rad/s
  double omega0;     // carrier Rabi frequency, rad/s
  double gamma_phi;  // motional dephasing rate, 1/s

  HardwareProfile(double omega_, double omega0_, double gamma_phi_);
  // Omega = pi/150 us, Omega0 = pi/35 us, gamma_phi = 18 / s
  static HardwareProfile canonical();
};

struct TrigGateParams {
  cxd alpha;     // alpha0 e^{i zeta}, zeta = k delta dt mod 2 pi
  double theta;  // B_n dt
  double phi;    // Phi_n
  bool step_phase_warning = false;  // delta*dt above 0.5 rad
};

TrigGateParams trig_gate_params(const FourierTerm& term, int k, double dt,
                                double lambda, double delta);

// Five primitives (two SDD, three SQR) in execution order; the SQR_X pair
// is elided when phi == 0.  `detuning` is recorded on the SDD entries.
std::vector<Primitive> build_q(cxd alpha, double theta, double phi,
                               double detuning = 0.0);

// Q(alpha,theta,phi) after Q(-alpha,theta,-phi); one Trotter step of a
// single Fourier term, defect O(theta^2).
std::vector<Primitive> build_trig_gate(cxd alpha, double theta, double phi,
                                       double detuning = 0.0);

struct InitialStatePlan {
  double x0 = 0.0;  // target wavepacket position
};

// R_y(pi/2), D(sigma_x x0/sqrt(2)), R_y(-pi/2); exact on |down> tensor |0>.
// R_y is lowered to SQR_Z-conjugated SQR_X.
std::vector<Primitive> initialization_sequence(double x0);

// Full program: prep, initialization, mid-circuit measure, K Trotter steps
// (terms in ascending n within each step), final mid-circuit measure.
GateProgram compile_evolution(const FourierPotential& pot, double dt, int steps,
                              const InitialStatePlan& init);

struct PulseEntry {
  Primitive primitive;
  double start = 0.0;     // seconds
  double duration = 0.0;  // seconds
  double phi_s = 0.0;     // qubit phase of the drive
  double phi_m = 0.0;     // oscillator phase of the drive
};

struct PulseSchedule {
  std::vector<PulseEntry> entries;
  double total_time = 0.0;
};

// Durations: SDD tau = 2|alpha|/Omega, SQR_X tau = |angle|/Omega0, SQR_Z and
// measurements are instantaneous (frame update / classical readout).
// SQR_Z shifts the qubit frame of every subsequent pulse.
PulseSchedule lower_to_schedule(const GateProgram& program,
                                const HardwareProfile& hw, double delta);

// --- serialization -------------------------------------------------------
// Line-oriented text, 17 significant digits, bit-exact round trip:
//   #K <steps> / #dt_s <dt> / #hash <hex>
//   SDD <re(alpha)> <im(alpha)> <delta_L>
//   SQRX <angle> | SQRZ <angle> | PREP <down|up> | MEAS <down|up>

std::string program_to_text(const GateProgram& program);
GateProgram program_from_text(const std::string& text);
std::string schedule_to_text(const PulseSchedule& schedule);

// 17-significant-digit decimal, parses back to the identical double.
std::string format_double(double v);

}  // namespace oqsim
