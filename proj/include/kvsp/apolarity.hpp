#pragma once

// Middle catalecticant of ternary quartics and three independent
// realizations of the apolarity pairing:
//   omega_matrix     = power_vec(L)^T Cat2(F) power_vec(M)
//   contraction_pair = L(d)^2 M(d)^2 F
//   klein_pair       = the explicit bidegree (2,2) polynomial D(L, M)
// For the Klein quartic, omega_matrix = 3 D and contraction_pair = 12 D.
//
// The pairing functions are templates over the coordinate ring so that the
// same code evaluates numerically (Rational, Complex) or symbolically
// (Form<Rational> coordinates, giving polynomial identities).

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "kvsp/poly.hpp"

namespace kvsp {

template <class T>
using Triple = std::array<T, 3>;

using DualPoint = Triple<Complex>;

template <class T>
using Vec6 = std::array<T, 6>;

template <class T>
using Mat6 = std::array<std::array<T, 6>, 6>;

// Row order of the catalecticant: second derivatives d_i d_j, i <= j, lex.
inline constexpr std::array<std::array<int, 2>, 6> kSecondPartials{
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

template <class S>
Mat6<S> catalecticant4(const Form<S>& f) {
  if (f.n_vars() != 3) throw Error(ErrorKind::InvalidArgument, "catalecticant4 needs 3 variables");
  Mat6<S> c;
  for (auto& row : c) row.fill(ScalarOps<S>::from_int(0));
  if (f.is_zero()) return c;
  if (f.degree() != 4) throw Error(ErrorKind::InvalidArgument, "catalecticant4 needs a quartic");
  for (std::size_t r = 0; r < kSecondPartials.size(); ++r) {
    const auto [i, j] = kSecondPartials[r];
    const Form<S> d2 = partial(partial(f, i), j);
    if (d2.is_zero()) continue;
    const auto coeffs = coefficient_vector(d2);
    for (std::size_t k = 0; k < 6; ++k) c[r][k] = coeffs[k];
  }
  return c;
}

// (a^2, ab, ac, b^2, bc, c^2): L^2 in the multinomial basis.
template <class T>
Vec6<T> power_vec(const Triple<T>& l) {
  if (is_zero_value(l[0]) && is_zero_value(l[1]) && is_zero_value(l[2]))
    throw Error(ErrorKind::InvalidArgument, "power_vec of the zero point");
  const auto& [a, b, c] = l;
  return {a * a, a * b, a * c, b * b, b * c, c * c};
}

// u^T C v, with u, v in any ring T that can be scaled by S.
template <class S, class T>
T bilinear(const Mat6<S>& c, const Vec6<T>& u, const Vec6<T>& v) {
  T acc = u[0] * v[0];
  bool started = false;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (is_zero_value(c[i][j])) continue;
      T term = u[i] * v[j] * c[i][j];
      if (started) {
        acc = acc + term;
      } else {
        acc = term;
        started = true;
      }
    }
  }
  if (!started) return acc * ScalarOps<S>::from_int(0);
  return acc;
}

template <class S, class T>
T omega_matrix(const Form<S>& f, const Triple<T>& l, const Triple<T>& m) {
  return bilinear(catalecticant4(f), power_vec(l), power_vec(m));
}

// D(L, M) = a_M b_M a_L^2 + a_M^2 a_L b_L + c_M^2 a_L c_L
//         + b_M c_M b_L^2 + b_M^2 b_L c_L + a_M c_M c_L^2.
template <class T>
T klein_pair(const Triple<T>& l, const Triple<T>& m) {
  const auto& [ai, bi, ci] = l;
  const auto& [aj, bj, cj] = m;
  return aj * bj * ai * ai + aj * aj * ai * bi + cj * cj * ai * ci + bj * cj * bi * bi +
         bj * bj * bi * ci + aj * cj * ci * ci;
}

// L(d)^2 M(d)^2 F, summed over all fourth partial derivatives of F.
template <class S, class T>
T contraction_pair(const Form<S>& f, const Triple<T>& l, const Triple<T>& m) {
  if (f.n_vars() != 3 || (!f.is_zero() && f.degree() != 4))
    throw Error(ErrorKind::InvalidArgument, "contraction_pair needs a ternary quartic");
  T acc = l[0] * l[0] * m[0] * m[0];
  bool started = false;
  for (int i = 0; i < 3; ++i) {
    const Form<S> di = partial(f, i);
    for (int j = 0; j < 3; ++j) {
      const Form<S> dij = partial(di, j);
      for (int k = 0; k < 3; ++k) {
        const Form<S> dijk = partial(dij, k);
        for (int q = 0; q < 3; ++q) {
          const S c = partial(dijk, q).coeff({0, 0, 0});
          if (is_zero_value(c)) continue;
          T term = l[i] * l[j] * m[k] * m[q] * c;
          if (started) {
            acc = acc + term;
          } else {
            acc = term;
            started = true;
          }
        }
      }
    }
  }
  if (!started) return acc * ScalarOps<S>::from_int(0);
  return acc;
}

Eigen::Matrix<Complex, 6, 6> to_eigen(const Mat6<Complex>& m);
Eigen::Matrix<Complex, 6, 6> to_eigen(const Mat6<Rational>& m);

// Orthonormal basis of the numerical kernel: right singular vectors whose
// singular value is <= tol * sigma_max. A zero matrix returns the full space.
std::vector<Eigen::VectorXcd> nullspace(const Eigen::MatrixXcd& m, double tol = 1e-9);

// Number of singular values above tol * sigma_max.
int numerical_rank(const Eigen::MatrixXcd& m, double tol = 1e-9);

}  // namespace kvsp
