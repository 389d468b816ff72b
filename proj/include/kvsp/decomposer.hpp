#pragma once

// Reconstruction of 6-term power-sum decompositions of the Klein quartic
// from two apolar linear forms.
//
// Given (L, M) with D(L, M) = 0, the coefficients (alpha, beta) are the
// unique scalars for which Cat2(F - alpha L^4 - beta M^4) drops to rank 4.
// The kernel of that catalecticant is a pencil of conics through the four
// remaining dual points; intersecting two members recovers them, and a
// least-squares solve recovers their coefficients.

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "kvsp/apolarity.hpp"

namespace kvsp {

using Conic = Eigen::Matrix3cd;
using Line = Eigen::Vector3cd;

struct Entry {
  DualPoint point;
  Complex lambda;
};

struct Decomposition {
  CForm target{3, 4};
  std::vector<Entry> entries;
  double residual = 0.0;
};

// Distance threshold below which two normalized dual points are the same.
inline constexpr double kDistinctTol = 1e-6;

// Divide by the coordinate of largest modulus (first one on ties).
DualPoint normalized(const DualPoint& p);
// sqrt(1 - |<p,q>|^2 / (|p|^2 |q|^2)); zero iff p, q are proportional.
double chordal_distance(const DualPoint& p, const DualPoint& q);
bool same_point(const DualPoint& p, const DualPoint& q, double tol = kDistinctTol);
// Multiset equality of point sets under chordal distance.
bool same_point_set(const std::vector<DualPoint>& a, const std::vector<DualPoint>& b,
                    double tol = kDistinctTol);
std::vector<DualPoint> points_of(const Decomposition& d);

Complex klein_value(const DualPoint& p);

// Generic capacitance route: alpha = 1 / (12 u^T C^{-1} u), same for beta.
// Throws NotApolarPair when the cross term u^T C^{-1} v is not negligible.
std::pair<Complex, Complex> pair_coefficients(const CForm& f, const DualPoint& l, const DualPoint& m,
                                              double tol = 1e-9);
// Klein target: alpha = 1 / (8 F4(L)), beta = 1 / (8 F4(M)).
std::pair<Complex, Complex> pair_coefficients(const DualPoint& l, const DualPoint& m, double tol = 1e-9);

// 6-vector (q1..q6) in the multinomial basis -> symmetric conic matrix.
Conic conic_from_vector(const Eigen::Vector<Complex, 6>& q);
Complex conic_value(const Conic& q, const DualPoint& p);

std::pair<Conic, Conic> remainder_pencil(const CForm& g, double tol = 1e-9);

std::pair<Line, Line> split_conic(const Conic& q, double tol = 1e-9);

// Points of the line l = 0 on the conic q (two, possibly equal).
std::pair<DualPoint, DualPoint> intersect_line_conic(const Line& l, const Conic& q, double tol = 1e-9);

std::vector<DualPoint> intersect_conics(const Conic& q1, const Conic& q2, double tol = 1e-9);

Decomposition reconstruct(const DualPoint& l, const DualPoint& m, double tol = 1e-9);

double verify(const Decomposition& d);

// Nullity of the 15 x 18 Jacobian of (points, lambdas) -> sum lambda_i L_i^4,
// with each point in the affine chart of its largest coordinate.
int tangent_nullity(const Decomposition& d);
std::vector<double> tangent_singular_values(const Decomposition& d);

}  // namespace kvsp
