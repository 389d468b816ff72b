#include "kvsp/varieties.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace kvsp {

namespace {

Eigen::Vector3cd as_vec(const DualPoint& p) { return {p[0], p[1], p[2]}; }

int chart_index(const DualPoint& p) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[k])) k = i;
  return k;
}

bool generic_enough(const DualPoint& p) {
  const DualPoint n = normalized(p);
  return std::abs(discriminant_value(n)) > 1e-6 && std::abs(klein_value(n)) > 1e-6;
}

}  // namespace

Conic to_conic(const Mat3<Complex>& m) {
  Conic c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = m[i][j];
  return c;
}

bool membership_p2(const DualPoint& l, const DualPoint& m, double tol) {
  return std::abs(klein_pair(normalized(l), normalized(m))) < tol;
}

bool membership_p3(const DualPoint& l, const DualPoint& m, const DualPoint& n, double tol) {
  return membership_p2(l, m, tol) && membership_p2(l, n, tol) && membership_p2(m, n, tol);
}

RForm discriminant_sextic() {
  const Triple<RForm> l{RForm::variable(3, 0), RForm::variable(3, 1), RForm::variable(3, 2)};
  return det3(fiber_conic(l));
}

RForm reference_sextic() {
  return parse_form("x0*x1^5 + x0^5*x2 - 5*x0^2*x1^2*x2^2 + x1*x2^5", 3);
}

Complex discriminant_value(const DualPoint& l) {
  return det3(fiber_conic(normalized(l)));
}

DualPoint parametrize_fiber(const DualPoint& l, Complex t, double tol) {
  const DualPoint ln = normalized(l);
  if (std::abs(discriminant_value(ln)) <= tol)
    throw Error(ErrorKind::DegenerateFiber, "fiber conic is singular");
  const Conic q = to_conic(fiber_conic(ln));
  const DualPoint p0 = normalized(intersect_line_conic(kFiberBaseLine, q, tol).first);
  const int k = chart_index(p0);
  // Directions r0 + t r1 span a line missing p0.
  const int i = (k + 1) % 3, j = (k + 2) % 3;
  Eigen::Vector3cd d = Eigen::Vector3cd::Zero();
  d(i) = 1.0;
  d(j) = t;
  const Eigen::Vector3cd p = as_vec(p0);
  const Complex dqd = d.transpose() * q * d;
  const Complex pqd = p.transpose() * q * d;
  const Eigen::Vector3cd m = dqd * p - 2.0 * pqd * d;
  if (m.norm() == 0.0) throw Error(ErrorKind::DegenerateFiber, "parameter hits the base point tangent");
  return normalized({m(0), m(1), m(2)});
}

SeedStream::SeedStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

SeedStream SeedStream::split(std::uint64_t index) const {
  return SeedStream(seed_ ^ index, stream_ + 0x9E3779B97F4A7C15ull * (index + 1));
}

double SeedStream::uniform(double lo, double hi) {
  // 53 random bits mapped to [lo, hi); avoids implementation-defined distributions.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

long SeedStream::uniform_int(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(engine_() % span);
}

Complex SeedStream::uniform_complex(double radius) {
  const double re = uniform(-radius, radius);
  const double im = uniform(-radius, radius);
  return {re, im};
}

P2Sample sample_p2(SeedStream& rng) {
  for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
    const DualPoint l{Complex(static_cast<double>(rng.uniform_int(-9, 9)), 0.0),
                      Complex(static_cast<double>(rng.uniform_int(-9, 9)), 0.0),
                      Complex(static_cast<double>(rng.uniform_int(-9, 9)), 0.0)};
    const Complex t = rng.uniform_complex(1.0);
    if (l[0] == 0.0 && l[1] == 0.0 && l[2] == 0.0) continue;
    if (!generic_enough(l)) continue;
    DualPoint m;
    try {
      m = parametrize_fiber(l, t);
    } catch (const Error&) {
      continue;
    }
    if (!generic_enough(m)) continue;
    return {normalized(l), m};
  }
  throw Error(ErrorKind::RetriesExhausted, "sample_p2 failed after 32 draws");
}

P2Sample sample_p2(std::uint64_t seed) {
  SeedStream rng(seed);
  return sample_p2(rng);
}

P3Sample sample_p3(std::uint64_t seed) {
  SeedStream rng(seed, 1);
  for (int attempt = 0; attempt < kSampleRetries; ++attempt) {
    P2Sample s;
    try {
      s = sample_p2(rng);
      const Decomposition d = reconstruct(s.l, s.m);
      return {d.entries[0].point, d.entries[1].point, normalized(d.entries[2].point)};
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::RetriesExhausted) break;
    }
  }
  throw Error(ErrorKind::RetriesExhausted, "sample_p3 failed after 32 draws");
}

std::array<Complex, 6> klein_pair_gradient(const DualPoint& l, const DualPoint& m) {
  // D is symmetric, so dD/dL = 2 Q(M) L and dD/dM = 2 Q(L) M.
  const Eigen::Vector3cd gl = 2.0 * (to_conic(fiber_conic(m)) * as_vec(l));
  const Eigen::Vector3cd gm = 2.0 * (to_conic(fiber_conic(l)) * as_vec(m));
  return {gl(0), gl(1), gl(2), gm(0), gm(1), gm(2)};
}

FiberProbeReport g3_fiber_probe(const DualPoint& l0_in, int count, std::uint64_t seed, double tol) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  const DualPoint l0 = normalized(l0_in);
  if (std::abs(discriminant_value(l0)) <= tol)
    throw Error(ErrorKind::DegenerateFiber, "base point lies on the discriminant");
  FiberProbeReport rep;
  rep.base = l0;
  rep.requested = count;
  rep.min_rank = 3;
  rep.max_rank = 0;
  rep.min_condition_ratio = 1.0;
  const Conic q0 = to_conic(fiber_conic(l0));

  SeedStream rng(seed, 3);
  const int max_attempts = 4 * count + kSampleRetries;
  for (int attempt = 0; attempt < max_attempts && rep.samples < count; ++attempt) {
    SeedStream item = rng.split(static_cast<std::uint64_t>(attempt));
    std::vector<DualPoint> ns;
    DualPoint m;
    try {
      m = parametrize_fiber(l0, item.uniform_complex(1.0), tol);
      ns = intersect_conics(q0, to_conic(fiber_conic(m)), tol);
    } catch (const Error&) {
      ++rep.failures;
      continue;
    }
    for (const DualPoint& n : ns) {
      if (rep.samples >= count) break;
      const double res = std::max({std::abs(klein_pair(l0, m)), std::abs(klein_pair(l0, n)),
                                   std::abs(klein_pair(m, n))});
      rep.max_equation_residual = std::max(rep.max_equation_residual, res);

      const int km = chart_index(m), kn = chart_index(n);
      const Eigen::Vector3cd gm0 = 2.0 * (q0 * as_vec(m));
      const Eigen::Vector3cd gn0 = 2.0 * (q0 * as_vec(n));
      const Eigen::Vector3cd gm1 = 2.0 * (to_conic(fiber_conic(n)) * as_vec(m));
      const Eigen::Vector3cd gn1 = 2.0 * (to_conic(fiber_conic(m)) * as_vec(n));
      Eigen::Matrix<Complex, 3, 4> jac = Eigen::Matrix<Complex, 3, 4>::Zero();
      int col = 0;
      for (int i = 0; i < 3; ++i) {
        if (i == km) continue;
        jac(0, col) = gm0(i);
        jac(2, col) = gm1(i);
        ++col;
      }
      for (int i = 0; i < 3; ++i) {
        if (i == kn) continue;
        jac(1, col) = gn0(i);
        jac(2, col) = gn1(i);
        ++col;
      }
      for (int r = 0; r < 3; ++r) {
        const double nr = jac.row(r).norm();
        if (nr > 0.0) jac.row(r) /= nr;
      }
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(jac)};
      const Eigen::VectorXd sv = svd.singularValues();
      int rank = 0;
      while (rank < 3 && sv(rank) > 1e-8 * sv(0)) ++rank;
      rep.min_rank = std::min(rep.min_rank, rank);
      rep.max_rank = std::max(rep.max_rank, rank);
      rep.min_condition_ratio = std::min(rep.min_condition_ratio, sv(2) / sv(0));
      rep.fiber_points.push_back({m, n});
      ++rep.samples;
    }
  }
  if (rep.samples == 0) rep.min_rank = 0;
  return rep;
}

}  // namespace kvsp
