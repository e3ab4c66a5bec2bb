#include "oqsim/potential.hpp"

#include <algorithm>
#include <cmath>

namespace oqsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// FNV-1a over the bytes of a string.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0 || (hi - lo) < 1e-16 * std::max(1.0, std::abs(mid))) return mid;
    if ((flo < 0) == (fmid < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FourierPotential::FourierPotential(double delta_, double lambda_,
                                   std::vector<FourierTerm> terms_)
    : delta(delta_), lambda(lambda_), terms(std::move(terms_)) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("FourierPotential: lambda must be positive");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].n < 1)
      throw std::invalid_argument("FourierPotential: term index must be >= 1");
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].n == terms[j].n)
        throw std::invalid_argument("FourierPotential: duplicate term index " +
                                    std::to_string(terms[i].n));
    // fold negative amplitudes into the phase
    if (terms[i].b < 0.0) {
      terms[i].b = -terms[i].b;
      terms[i].phi += M_PI;
    }
    terms[i].phi = std::remainder(terms[i].phi, kTwoPi);
  }
}

double FourierPotential::alpha0() const { return M_PI / (std::sqrt(2.0) * lambda); }

double FourierPotential::lambda_from_alpha0(double a0) {
  return M_PI / (std::sqrt(2.0) * a0);
}

double FourierPotential::evaluate(double x) const {
  if (!std::isfinite(x))
    throw std::invalid_argument("FourierPotential::evaluate: non-finite x");
  double v = 0.5 * delta * x * x;
  for (const auto& t : terms) v += t.b * std::cos(kTwoPi * t.n * x / lambda + t.phi);
  return v;
}

double FourierPotential::derivative(double x) const {
  double v = delta * x;
  for (const auto& t : terms) {
    const double k = kTwoPi * t.n / lambda;
    v -= t.b * k * std::sin(k * x + t.phi);
  }
  return v;
}

std::uint64_t FourierPotential::hash() const {
  char buf[64];
  std::string s;
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    s += buf;
  };
  put(delta);
  put(lambda);
  for (const auto& t : terms) {
    s += std::to_string(t.n) + ":";
    put(t.b);
    put(t.phi);
  }
  return fnv1a(s);
}

FourierPotential canonical_double_well(double phi) {
  const double delta = hz_to_rad(500.0);
  const double lambda = FourierPotential::lambda_from_alpha0(M_PI / 6.0);
  const double b = 0.8 / 200e-6;
  return FourierPotential(delta, lambda, {{1, b, phi}});
}

WellGeometry analyze_double_well(const FourierPotential& pot) {
  const double lo = -pot.lambda, hi = pot.lambda;
  const int n_scan = 20001;
  auto deriv = [&](double x) { return pot.derivative(x); };

  std::vector<double> roots;
  double xprev = lo, fprev = deriv(lo);
  for (int i = 1; i < n_scan; ++i) {
    const double x = lo + (hi - lo) * i / (n_scan - 1);
    const double f = deriv(x);
    if (fprev == 0.0) roots.push_back(xprev);
    else if ((fprev < 0) != (f < 0)) roots.push_back(bisect_root(deriv, xprev, x));
    xprev = x;
    fprev = f;
  }

  if (roots.size() != 3) {
    std::string what = "analyze_double_well: expected 2 minima and 1 maximum, found " +
                       std::to_string(roots.size()) + " extrema at";
    for (double r : roots) what += " " + std::to_string(r);
    throw NotADoubleWell(what, roots);
  }
  const double x1 = roots[0], xm = roots[1], x2 = roots[2];
  const double vm = pot.evaluate(xm);
  const double d1 = vm - pot.evaluate(x1);
  const double d2 = vm - pot.evaluate(x2);
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw NotADoubleWell("analyze_double_well: middle extremum is not a barrier top",
                         roots);
  return WellGeometry{x1, x2, xm, d1, d2, 1.0 - d1 / d2};
}

FourierFit fourier_fit(const std::function<double(double)>& v, double lambda,
                       int order) {
  if (order < 1) throw std::invalid_argument("fourier_fit: order must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("fourier_fit: lambda must be positive");

  // periodic rectangle rule on [-L/2, L/2); exact for trig polynomials
  // of harmonic order < nq/2
  const int nq = 4096;
  std::vector<double> samples(nq);
  double mean = 0.0;
  for (int i = 0; i < nq; ++i) {
    const double x = -0.5 * lambda + lambda * i / nq;
    samples[i] = v(x);
    if (!std::isfinite(samples[i]))
      throw std::invalid_argument("fourier_fit: non-finite sample at x = " +
                                  std::to_string(x));
    mean += samples[i];
  }
  mean /= nq;

  FourierFit fit;
  for (int n = 1; n <= order; ++n) {
    double ac = 0.0, as = 0.0;
    for (int i = 0; i < nq; ++i) {
      const double x = -0.5 * lambda + lambda * i / nq;
      const double arg = kTwoPi * n * x / lambda;
      ac += samples[i] * std::cos(arg);
      as += samples[i] * std::sin(arg);
    }
    ac *= 2.0 / nq;
    as *= 2.0 / nq;
    //  a cos(t) + b sin(t) = B cos(t + phi),  B >= 0
    const double b = std::hypot(ac, as);
    const double phi = (b > 0.0) ? std::atan2(-as, ac) : 0.0;
    fit.terms.push_back({n, b, phi});
  }

  double res = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -0.5 * lambda + lambda * i / 1000.0;
    double approx = mean;
    for (const auto& t : fit.terms)
      approx += t.b * std::cos(kTwoPi * t.n * x / lambda + t.phi);
    res = std::max(res, std::abs(v(x) - approx));
  }
  fit.residual = res;
  return fit;
}

Mat hamiltonian_matrix(const FourierPotential& pot, FockSpace space) {
  auto [x, p] = quadratures(space);
  Mat h = 0.5 * pot.delta * (x.mat * x.mat + p.mat * p.mat);
  for (const auto& t : pot.terms) {
    const double k = kTwoPi * t.n / pot.lambda;
    // e^{i k x} = D(i k / sqrt(2))
    Mat e = displacement(space, cxd(0, k / std::sqrt(2.0))).mat;
    h += 0.5 * t.b * (std::polar(1.0, t.phi) * e +
                      std::polar(1.0, -t.phi) * e.adjoint());
  }
  return 0.5 * (h + Mat(h.adjoint()));
}

namespace {

Spectrum diagonalize(const FourierPotential& pot, FockSpace space) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian_matrix(pot, space));
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

Spectrum spectrum(const FourierPotential& pot, FockSpace space) {
  Spectrum s = diagonalize(pot, space);
  Spectrum ref = diagonalize(pot, FockSpace(space.cutoff + 20));
  const int nlow = std::min(10, space.cutoff);
  double shift = 0.0;
  for (int i = 0; i < nlow; ++i)
    shift = std::max(shift, std::abs(s.eigenvalues(i) - ref.eigenvalues(i)));
  // tolerance scaled by the spectral range; raw 1e-8 rad/s is below the
  // eigensolver noise floor at these matrix norms
  const double tol = std::max(1e-8, 1e-12 * std::abs(ref.eigenvalues(ref.eigenvalues.size() - 1)));
  if (shift > tol)
    throw TruncationOverflow(
        "spectrum: lowest levels shift by " + std::to_string(shift) +
            " rad/s under cutoff+20; increase the cutoff",
        space.cutoff + 40);
  return s;
}

}  // namespace oqsim
