#include "unitarize/fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/QR>

namespace unitarize {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("UNITARIZE_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  return (end != nullptr && *end == '\0') ? static_cast<std::uint64_t>(v) : fallback;
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::complex_normal() { return {normal() / std::sqrt(2.0), normal() / std::sqrt(2.0)}; }

namespace {

CMatrix ginibre(Index n, Rng& rng) {
  CMatrix z(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  }
  return z;
}

}  // namespace

CMatrix random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_conditioned(Index n, double cond, Rng& rng) {
  if (!(cond >= 1.0)) throw Error(ErrorKind::kInvalidInput, "condition number must be >= 1");
  Eigen::VectorXd sigma(n);
  const double log_c = std::log(cond);
  for (Index i = 0; i < n; ++i) sigma(i) = std::exp(rng.uniform(0.0, log_c));
  sigma(0) = 1.0;
  if (n > 1) sigma(n - 1) = cond;
  return random_unitary(n, rng) * sigma.cast<Complex>().asDiagonal() * random_unitary(n, rng);
}

CMatrix random_hermitian(Index n, Rng& rng) {
  const CMatrix z = ginibre(n, rng);
  return hermitian_part(z);
}

CVector random_unimodular_spectrum(Index n, double min_gap, Rng& rng) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double free = two_pi - static_cast<double>(n) * min_gap;
  if (n < 1 || !(free > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "spectral gap does not fit on the circle");
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = rng.uniform(0.0, free);
  std::sort(x.begin(), x.end());
  const double rotation = rng.uniform(0.0, two_pi);
  CVector out(n);
  for (Index i = 0; i < n; ++i) {
    const double theta = x[static_cast<std::size_t>(i)] + static_cast<double>(i) * min_gap;
    out(i) = std::polar(1.0, std::fmod(theta + rotation, two_pi));
  }
  return out;
}

CVector random_state(Index n, Rng& rng) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

ConjugatedFixture conjugate_spectrum(const CVector& spectrum, double cond, Rng& rng) {
  const Index n = spectrum.size();
  ConjugatedFixture f;
  f.spectrum = spectrum;
  f.eigvecs_u = random_unitary(n, rng);
  f.u = f.eigvecs_u * spectrum.asDiagonal() * f.eigvecs_u.adjoint();
  f.s = random_conditioned(n, cond, rng);
  f.t = f.s.partialPivLu().solve(f.u * f.s);
  return f;
}

ConjugatedFixture random_conjugated_unimodular(Index n, double cond, double min_gap,
                                               bool degenerate, Rng& rng) {
  CVector spectrum = random_unimodular_spectrum(n, min_gap, rng);
  if (degenerate && n > 1) {
    const int copies = rng.uniform_int(1, static_cast<int>(n) - 1);
    for (int c = 0; c < copies; ++c) spectrum(n - 1 - c) = spectrum(0);
  }
  return conjugate_spectrum(spectrum, cond, rng);
}

CMatrix random_not_bounded(Index n, double cond, DefectKind kind, Rng& rng) {
  if (n < 2 && kind == DefectKind::kJordanBlock) {
    throw Error(ErrorKind::kInvalidInput, "a Jordan block needs n >= 2");
  }
  const CVector spectrum = random_unimodular_spectrum(n, 0.0, rng);
  CMatrix core = CMatrix(spectrum.asDiagonal());
  if (kind == DefectKind::kOffCircle) {
    const double modulus = rng.uniform(0.0, 1.0) < 0.5 ? 0.95 : 1.05;
    core(0, 0) *= modulus;
  } else {
    core(1, 1) = core(0, 0);
    core(0, 1) = 1.0;
  }
  const CMatrix s = random_conditioned(n, cond, rng);
  return s.partialPivLu().solve(core * s);
}

CMatrix random_normal(const CVector& spectrum, Rng& rng) {
  const CMatrix v = random_unitary(spectrum.size(), rng);
  return v * spectrum.asDiagonal() * v.adjoint();
}

std::pair<CMatrix, CMatrix> degenerate_commuting_pair(double cond, Rng& rng) {
  const CMatrix s = random_conditioned(3, cond, rng);
  CMatrix d1 = CMatrix::Zero(3, 3);
  d1(0, 0) = 1.0;
  d1(1, 1) = 1.0;
  d1(2, 2) = -1.0;
  CMatrix d2 = CMatrix::Zero(3, 3);
  const double c = std::cos(0.7);
  const double sn = std::sin(0.7);
  d2(0, 0) = c;
  d2(0, 1) = -sn;
  d2(1, 0) = sn;
  d2(1, 1) = c;
  d2(2, 2) = Complex(0.0, 1.0);
  Eigen::PartialPivLU<CMatrix> lu(s);
  return {lu.solve(d1 * s), lu.solve(d2 * s)};
}

}  // namespace unitarize
