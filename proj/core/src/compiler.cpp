#include "oqsim/compiler.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace oqsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

const char* basis_name(QubitBasisState b) {
  return b == QubitBasisState::Down ? "down" : "up";
}

QubitBasisState basis_from_name(const std::string& s) {
  if (s == "down") return QubitBasisState::Down;
  if (s == "up") return QubitBasisState::Up;
  throw std::invalid_argument("unknown qubit basis state '" + s + "'");
}

}  // namespace

Primitive Primitive::sdd(cxd alpha, double detuning) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw std::invalid_argument("Primitive::sdd: non-finite alpha");
  Primitive p;
  p.kind = Kind::Sdd;
  p.alpha = alpha;
  p.detuning = detuning;
  return p;
}

Primitive Primitive::sqr_x(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("Primitive::sqr_x: non-finite angle");
  Primitive p;
  p.kind = Kind::SqrX;
  p.angle = angle;
  return p;
}

Primitive Primitive::sqr_z(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("Primitive::sqr_z: non-finite angle");
  Primitive p;
  p.kind = Kind::SqrZ;
  p.angle = angle;
  return p;
}

Primitive Primitive::prep(QubitBasisState basis) {
  Primitive p;
  p.kind = Kind::Prep;
  p.keep = basis;
  return p;
}

Primitive Primitive::measure(QubitBasisState keep) {
  Primitive p;
  p.kind = Kind::Measure;
  p.keep = keep;
  return p;
}

std::size_t GateProgram::sdd_count() const {
  std::size_t n = 0;
  for (const auto& p : primitives)
    if (p.kind == Primitive::Kind::Sdd) ++n;
  return n;
}

HardwareProfile::HardwareProfile(double omega_, double omega0_, double gamma_phi_)
    : omega(omega_), omega0(omega0_), gamma_phi(gamma_phi_) {
  if (!(omega > 0) || !(omega0 > 0) || !(gamma_phi >= 0))
    throw std::invalid_argument("HardwareProfile: rates must be positive");
}

HardwareProfile HardwareProfile::canonical() {
  return HardwareProfile(M_PI / 150e-6, M_PI / 35e-6, 18.0);
}

TrigGateParams trig_gate_params(const FourierTerm& term, int k, double dt,
                                double lambda, double delta) {
  if (!(dt > 0)) throw std::invalid_argument("trig_gate_params: dt must be positive");
  const double alpha0 = M_PI * term.n / (std::sqrt(2.0) * lambda);
  const double zeta = std::remainder(k * delta * dt, kTwoPi);
  TrigGateParams out;
  out.alpha = std::polar(alpha0, zeta);
  out.theta = term.b * dt;
  out.phi = term.phi;
  out.step_phase_warning = std::abs(delta * dt) > 0.5;
  return out;
}

std::vector<Primitive> build_q(cxd alpha, double theta, double phi,
                               double detuning) {
  const cxd ap = cxd(0, -1) * alpha;  // displace orthogonally to the coupled quadrature
  std::vector<Primitive> out;
  out.push_back(Primitive::sdd(ap, detuning));
  if (phi != 0.0) out.push_back(Primitive::sqr_x(phi));
  out.push_back(Primitive::sqr_z(theta));
  if (phi != 0.0) out.push_back(Primitive::sqr_x(-phi));
  out.push_back(Primitive::sdd(-ap, detuning));
  return out;
}

std::vector<Primitive> build_trig_gate(cxd alpha, double theta, double phi,
                                       double detuning) {
  std::vector<Primitive> out = build_q(-alpha, theta, -phi, detuning);
  auto second = build_q(alpha, theta, phi, detuning);
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

std::vector<Primitive> initialization_sequence(double x0) {
  // R_y(t) = R_z(pi/2) R_x(t) R_z(-pi/2), rightmost first
  std::vector<Primitive> out;
  auto push_ry = [&out](double t) {
    out.push_back(Primitive::sqr_z(-M_PI / 2));
    out.push_back(Primitive::sqr_x(t));
    out.push_back(Primitive::sqr_z(M_PI / 2));
  };
  push_ry(M_PI / 2);
  out.push_back(Primitive::sdd(x0 / std::sqrt(2.0), 0.0));
  push_ry(-M_PI / 2);
  return out;
}

GateProgram compile_evolution(const FourierPotential& pot, double dt, int steps,
                              const InitialStatePlan& init) {
  if (steps < 0) throw std::invalid_argument("compile_evolution: steps must be >= 0");
  if (!(dt > 0)) throw std::invalid_argument("compile_evolution: dt must be positive");

  GateProgram prog;
  prog.steps = steps;
  prog.dt = dt;
  prog.potential_hash = pot.hash();

  prog.primitives.push_back(Primitive::prep(QubitBasisState::Down));
  auto init_seq = initialization_sequence(init.x0);
  prog.primitives.insert(prog.primitives.end(), init_seq.begin(), init_seq.end());
  prog.primitives.push_back(Primitive::measure(QubitBasisState::Down));

  for (int k = 0; k < steps; ++k) {
    for (const auto& term : pot.terms) {
      auto params = trig_gate_params(term, k, dt, pot.lambda, pot.delta);
      auto gate = build_trig_gate(params.alpha, params.theta, params.phi,
                                  -pot.delta);
      prog.primitives.insert(prog.primitives.end(), gate.begin(), gate.end());
    }
    prog.step_ends.push_back(prog.primitives.size() - 1);
  }
  prog.primitives.push_back(Primitive::measure(QubitBasisState::Down));
  return prog;
}

PulseSchedule lower_to_schedule(const GateProgram& program,
                                const HardwareProfile& hw, double delta) {
  PulseSchedule sched;
  double t = 0.0;
  double frame_z = 0.0;  // accumulated qubit-frame rotation from SQR_Z updates
  for (const auto& p : program.primitives) {
    PulseEntry e;
    e.primitive = p;
    e.start = t;
    switch (p.kind) {
      case Primitive::Kind::Sdd: {
        e.duration = 2.0 * std::abs(p.alpha) / hw.omega;
        // alpha(t0) = (Omega tau / 2) e^{i(pi/2 - phi_m - delta_L t0)}
        e.phi_m = std::remainder(M_PI / 2 - std::arg(p.alpha) - p.detuning * t, kTwoPi);
        e.phi_s = std::remainder(frame_z, kTwoPi);
        break;
      }
      case Primitive::Kind::SqrX:
        e.duration = std::abs(p.angle) / hw.omega0;
        e.phi_s = std::remainder(frame_z + (p.angle < 0 ? M_PI : 0.0), kTwoPi);
        break;
      case Primitive::Kind::SqrZ:
        e.duration = 0.0;
        frame_z += p.angle;
        break;
      case Primitive::Kind::Prep:
      case Primitive::Kind::Measure:
        e.duration = 0.0;
        break;
    }
    sched.entries.push_back(e);
    t += e.duration;
  }
  sched.total_time = t;
  (void)delta;  // the per-pulse detuning is carried on the SDD primitives
  return sched;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string program_to_text(const GateProgram& program) {
  std::string out;
  char buf[32];
  out += "#K " + std::to_string(program.steps) + "\n";
  out += "#dt_s " + format_double(program.dt) + "\n";
  std::snprintf(buf, sizeof buf, "#hash %016llx\n",
                static_cast<unsigned long long>(program.potential_hash));
  out += buf;
  for (const auto& p : program.primitives) {
    switch (p.kind) {
      case Primitive::Kind::Sdd:
        out += "SDD " + format_double(p.alpha.real()) + " " +
               format_double(p.alpha.imag()) + " " + format_double(p.detuning) + "\n";
        break;
      case Primitive::Kind::SqrX:
        out += "SQRX " + format_double(p.angle) + "\n";
        break;
      case Primitive::Kind::SqrZ:
        out += "SQRZ " + format_double(p.angle) + "\n";
        break;
      case Primitive::Kind::Prep:
        out += std::string("PREP ") + basis_name(p.keep) + "\n";
        break;
      case Primitive::Kind::Measure:
        out += std::string("MEAS ") + basis_name(p.keep) + "\n";
        break;
    }
  }
  return out;
}

GateProgram program_from_text(const std::string& text) {
  GateProgram prog;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  // step boundaries are reconstructed below from the measure markers
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    auto want = [&](bool ok) {
      if (!ok)
        throw std::invalid_argument("program_from_text: parse error on line " +
                                    std::to_string(lineno) + ": '" + line + "'");
    };
    if (tok == "#K") {
      want(bool(ls >> prog.steps));
    } else if (tok == "#dt_s") {
      want(bool(ls >> prog.dt));
    } else if (tok == "#hash") {
      std::string h;
      want(bool(ls >> h));
      prog.potential_hash = std::stoull(h, nullptr, 16);
    } else if (tok == "SDD") {
      double re, im, dl;
      want(bool(ls >> re >> im >> dl));
      prog.primitives.push_back(Primitive::sdd(cxd(re, im), dl));
    } else if (tok == "SQRX") {
      double a;
      want(bool(ls >> a));
      prog.primitives.push_back(Primitive::sqr_x(a));
    } else if (tok == "SQRZ") {
      double a;
      want(bool(ls >> a));
      prog.primitives.push_back(Primitive::sqr_z(a));
    } else if (tok == "PREP") {
      std::string b;
      want(bool(ls >> b));
      prog.primitives.push_back(Primitive::prep(basis_from_name(b)));
    } else if (tok == "MEAS") {
      std::string b;
      want(bool(ls >> b));
      prog.primitives.push_back(Primitive::measure(basis_from_name(b)));
    } else {
      want(false);
    }
  }
  // Rebuild step boundaries: evolution primitives sit between the two
  // measure markers; each step is one trigonometric gate per term.
  std::vector<std::size_t> meas;
  for (std::size_t i = 0; i < prog.primitives.size(); ++i)
    if (prog.primitives[i].kind == Primitive::Kind::Measure) meas.push_back(i);
  if (meas.size() == 2 && prog.steps > 0) {
    const std::size_t begin = meas[0] + 1, end = meas[1];
    const std::size_t span = end - begin;
    if (span % prog.steps == 0) {
      const std::size_t per = span / prog.steps;
      for (int k = 1; k <= prog.steps; ++k)
        prog.step_ends.push_back(begin + per * k - 1);
    }
  }
  return prog;
}

std::string schedule_to_text(const PulseSchedule& schedule) {
  std::string out = "#total_time_s " + format_double(schedule.total_time) + "\n";
  for (const auto& e : schedule.entries) {
    out += format_double(e.start) + " " + format_double(e.duration) + " ";
    const auto& p = e.primitive;
    switch (p.kind) {
      case Primitive::Kind::Sdd:
        out += "SDD " + format_double(p.alpha.real()) + " " +
               format_double(p.alpha.imag()) + " " + format_double(p.detuning) +
               " " + format_double(e.phi_s) + " " + format_double(e.phi_m);
        break;
      case Primitive::Kind::SqrX:
        out += "SQRX " + format_double(p.angle) + " " + format_double(e.phi_s);
        break;
      case Primitive::Kind::SqrZ:
        out += "SQRZ " + format_double(p.angle);
        break;
      case Primitive::Kind::Prep:
        out += std::string("PREP ") + basis_name(p.keep);
        break;
      case Primitive::Kind::Measure:
        out += std::string("MEAS ") + basis_name(p.keep);
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace oqsim
