#pragma once

// The incidence varieties P2 = {D(L,M) = 0} and P3 = {D12 = D13 = D23 = 0}
// in products of the dual plane, their conic-bundle structure over the first
// factor, and sampling / probing utilities.

#include <cstdint>
#include <random>
#include <vector>

#include "kvsp/decomposer.hpp"

namespace kvsp {

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

// Q(L) with M^T Q(L) M = D(L, M).
template <class T>
Mat3<T> fiber_conic(const Triple<T>& l) {
  const auto& [a, b, c] = l;
  return {{{a * b, half(a * a), half(c * c)},
           {half(a * a), b * c, half(b * b)},
           {half(c * c), half(b * b), a * c}}};
}

template <class T>
T det3(const Mat3<T>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Conic to_conic(const Mat3<Complex>& m);

bool membership_p2(const DualPoint& l, const DualPoint& m, double tol = 1e-9);
bool membership_p3(const DualPoint& l, const DualPoint& m, const DualPoint& n, double tol = 1e-9);

// det Q(L) as an exact sextic in (a, b, c) = (x0, x1, x2).
RForm discriminant_sextic();
// a b^5 + a^5 c - 5 a^2 b^2 c^2 + b c^5, the classical discriminant sextic.
RForm reference_sextic();
// det Q(L) at a numeric point (L normalized first).
Complex discriminant_value(const DualPoint& l);

// Fixed line used to pick the base point of every fiber parametrization.
inline const Line kFiberBaseLine{Complex(0.1234, 0.0), Complex(-0.3571, 0.0), Complex(1.0, 0.0)};

// Rational parametrization of the smooth fiber conic over L: lines through a
// base point p0, swept by t.
DualPoint parametrize_fiber(const DualPoint& l, Complex t, double tol = 1e-9);

// Seeded stream. split(i) derives an independent child stream for item i.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed, std::uint64_t stream = 0);
  SeedStream split(std::uint64_t index) const;

  double uniform(double lo, double hi);
  long uniform_int(long lo, long hi);
  Complex uniform_complex(double radius);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

inline constexpr int kSampleRetries = 32;

struct P2Sample {
  DualPoint l;
  DualPoint m;
};

struct P3Sample {
  DualPoint l;
  DualPoint m;
  DualPoint n;
};

P2Sample sample_p2(std::uint64_t seed);
P2Sample sample_p2(SeedStream& rng);
P3Sample sample_p3(std::uint64_t seed);

// Gradient of D(L, M) with respect to (a_L, b_L, c_L, a_M, b_M, c_M).
std::array<Complex, 6> klein_pair_gradient(const DualPoint& l, const DualPoint& m);

struct FiberProbeReport {
  DualPoint base;
  int requested = 0;
  int samples = 0;
  int failures = 0;
  int min_rank = 0;
  int max_rank = 0;
  double max_equation_residual = 0.0;
  // Smallest sigma_3 / sigma_1 of the row-normalized 3 x 4 Jacobian.
  double min_condition_ratio = 0.0;
  std::vector<P2Sample> fiber_points;  // (M, N) pairs
};

FiberProbeReport g3_fiber_probe(const DualPoint& l0, int count, std::uint64_t seed = 0, double tol = 1e-9);

}  // namespace kvsp
