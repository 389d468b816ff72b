#include "kvsp/decomposer.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace kvsp {

namespace {

Eigen::Vector3cd as_vec(const DualPoint& p) { return {p[0], p[1], p[2]}; }
DualPoint as_point(const Eigen::Vector3cd& v) { return {v(0), v(1), v(2)}; }

Eigen::VectorXcd monomial_vector(const CForm& f) {
  const auto c = monomial_coefficients(f);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) v(static_cast<Eigen::Index>(k)) = c[k];
  return v;
}

Eigen::Vector<Complex, 6> power_vector(const DualPoint& p) {
  const auto w = power_vec(p);
  Eigen::Vector<Complex, 6> v;
  for (int k = 0; k < 6; ++k) v(k) = w[k];
  return v;
}

// Normalize a matrix to unit Frobenius norm.
Conic unit(const Conic& q) {
  const double n = q.norm();
  return n > 0.0 ? Conic(q / n) : q;
}

// Coefficients c0..c3 of det(A + tB).
std::array<Complex, 4> pencil_det(const Conic& a, const Conic& b) {
  auto adjugate = [](const Conic& m) {
    Conic r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        r(j, i) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
      }
    }
    return r;
  };
  const Conic aa = adjugate(a);
  const Conic ab = adjugate(b);
  return {a.determinant(), (aa * b).trace(), (a * ab).trace(), b.determinant()};
}

// Roots of a polynomial given low-to-high, via companion-matrix eigenvalues.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_low_to_high) {
  const int deg = static_cast<int>(coeffs_low_to_high.size()) - 1;
  if (deg < 1) return {};
  const Complex lead = coeffs_low_to_high.back();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs_low_to_high[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> out;
  for (int i = 0; i < deg; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

// Refine a point lying on both conics with a few Newton steps in its affine chart.
DualPoint refine_on_conics(const DualPoint& p0, const Conic& q1, const Conic& q2) {
  DualPoint p = normalized(p0);
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[k])) k = i;
  const int u = (k + 1) % 3, v = (k + 2) % 3;
  for (int it = 0; it < 4; ++it) {
    const Eigen::Vector3cd x = as_vec(p);
    const Eigen::Vector3cd g1 = 2.0 * (q1 * x);
    const Eigen::Vector3cd g2 = 2.0 * (q2 * x);
    Eigen::Matrix2cd jac;
    jac << g1(u), g1(v), g2(u), g2(v);
    const Eigen::Vector2cd f(x.transpose() * q1 * x, x.transpose() * q2 * x);
    const Complex det = jac.determinant();
    if (std::abs(det) < 1e-12) break;
    const Eigen::Vector2cd step = jac.inverse() * f;
    if (!step.allFinite()) break;
    p[u] -= step(0);
    p[v] -= step(1);
    if (step.norm() < 1e-16) break;
  }
  return normalized(p);
}

}  // namespace

DualPoint normalized(const DualPoint& p) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[k])) k = i;
  if (std::abs(p[k]) == 0.0) throw Error(ErrorKind::InvalidArgument, "zero dual point");
  const Complex s = p[k];
  DualPoint out{p[0] / s, p[1] / s, p[2] / s};
  out[k] = 1.0;
  return out;
}

double chordal_distance(const DualPoint& p, const DualPoint& q) {
  const Eigen::Vector3cd a = as_vec(p), b = as_vec(q);
  const double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) throw Error(ErrorKind::InvalidArgument, "zero dual point");
  const double c = std::norm(a.dot(b)) / (na * nb);
  return std::sqrt(std::max(0.0, 1.0 - c));
}

bool same_point(const DualPoint& p, const DualPoint& q, double tol) {
  return chordal_distance(p, q) < tol;
}

bool same_point_set(const std::vector<DualPoint>& a, const std::vector<DualPoint>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    std::size_t best = b.size();
    double best_d = tol;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = chordal_distance(p, b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == b.size()) return false;
    used[best] = true;
  }
  return true;
}

std::vector<DualPoint> points_of(const Decomposition& d) {
  std::vector<DualPoint> out;
  for (const auto& e : d.entries) out.push_back(e.point);
  return out;
}

Complex klein_value(const DualPoint& p) {
  static const CForm f4 = klein_quartic<Complex>();
  return evaluate(f4, p);
}

std::pair<Complex, Complex> pair_coefficients(const CForm& f, const DualPoint& l, const DualPoint& m,
                                              double tol) {
  const DualPoint ln = normalized(l), mn = normalized(m);
  const Eigen::Matrix<Complex, 6, 6> c = to_eigen(catalecticant4(f));
  Eigen::FullPivLU<Eigen::Matrix<Complex, 6, 6>> lu(c);
  if (!lu.isInvertible()) throw Error(ErrorKind::RankUnexpected, "catalecticant of target is singular");
  const auto u = power_vector(ln), v = power_vector(mn);
  const Eigen::Vector<Complex, 6> cu = lu.solve(u), cv = lu.solve(v);
  const Complex uu = u.transpose() * cu;
  const Complex vv = v.transpose() * cv;
  const Complex uv = u.transpose() * cv;
  const double scale = std::max({std::abs(uu), std::abs(vv), 1.0});
  if (std::abs(uv) > tol * scale) throw Error(ErrorKind::NotApolarPair, "cross term does not vanish");
  if (std::abs(uu) <= tol * scale || std::abs(vv) <= tol * scale)
    throw Error(ErrorKind::DegeneratePoint, "capacitance denominator vanishes");
  // Coefficients refer to the caller's (unnormalized) L, M: L^4 = s^4 Ln^4.
  auto scale4 = [](const DualPoint& p, const DualPoint& pn) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(pn[i]) > std::abs(pn[k])) k = i;
    const Complex s = p[k] / pn[k];
    return s * s * s * s;
  };
  const Complex alpha = 1.0 / (12.0 * uu) / scale4(l, ln);
  const Complex beta = 1.0 / (12.0 * vv) / scale4(m, mn);
  return {alpha, beta};
}

std::pair<Complex, Complex> pair_coefficients(const DualPoint& l, const DualPoint& m, double tol) {
  const DualPoint ln = normalized(l), mn = normalized(m);
  if (std::abs(klein_value(ln)) <= tol) throw Error(ErrorKind::DegeneratePoint, "F4(L) = 0");
  if (std::abs(klein_value(mn)) <= tol) throw Error(ErrorKind::DegeneratePoint, "F4(M) = 0");
  if (std::abs(klein_pair(ln, mn)) > tol) throw Error(ErrorKind::NotApolarPair, "D(L, M) does not vanish");
  const Complex fl = klein_value(l), fm = klein_value(m);
  return {1.0 / (8.0 * fl), 1.0 / (8.0 * fm)};
}

Conic conic_from_vector(const Eigen::Vector<Complex, 6>& q) {
  Conic c;
  c << q(0), q(1) / 2.0, q(2) / 2.0,
       q(1) / 2.0, q(3), q(4) / 2.0,
       q(2) / 2.0, q(4) / 2.0, q(5);
  return c;
}

Complex conic_value(const Conic& q, const DualPoint& p) {
  const Eigen::Vector3cd x = as_vec(p);
  return x.transpose() * q * x;
}

std::pair<Conic, Conic> remainder_pencil(const CForm& g, double tol) {
  const Eigen::MatrixXcd c = to_eigen(catalecticant4(g));
  const auto ker = nullspace(c, tol);
  if (ker.size() != 2)
    throw Error(ErrorKind::RankUnexpected, "catalecticant kernel has dimension " + std::to_string(ker.size()));
  return {conic_from_vector(ker[0]), conic_from_vector(ker[1])};
}

std::pair<Line, Line> split_conic(const Conic& q_in, double tol) {
  const Conic q = unit(q_in);
  if (q.norm() == 0.0) throw Error(ErrorKind::InvalidArgument, "zero conic");
  Eigen::JacobiSVD<Conic> svd(q);
  const auto& sv = svd.singularValues();
  if (sv(2) > tol * sv(0)) throw Error(ErrorKind::NotDegenerate, "conic has rank 3");

  Conic rank_one = q;
  if (sv(1) > tol * sv(0)) {
    // Rank 2: add the cross-product matrix of the singular point p (scaled so
    // that q + [p]_x has rank 1), then read the two lines off that matrix.
    Conic adj;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        adj(j, i) = q(i1, j1) * q(i2, j2) - q(i1, j2) * q(i2, j1);
      }
    }
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(adj(i, i)) > std::abs(adj(k, k))) k = i;
    const Complex beta = std::sqrt(-adj(k, k));
    const Eigen::Vector3cd p = adj.col(k) / beta;
    Conic px;
    px << 0.0, p(2), -p(1),
          -p(2), 0.0, p(0),
          p(1), -p(0), 0.0;
    rank_one = q + px;
  }
  Eigen::Index bi = 0, bj = 0;
  rank_one.cwiseAbs().maxCoeff(&bi, &bj);
  Line l = rank_one.row(bi).transpose();
  Line m = rank_one.col(bj);
  l /= l.norm();
  m /= m.norm();
  return {l, m};
}

std::pair<DualPoint, DualPoint> intersect_line_conic(const Line& l, const Conic& q, double tol) {
  // Two points spanning the line l . x = 0.
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 1, 3>> svd(l.transpose(), Eigen::ComputeFullV);
  const Eigen::Vector3cd p = svd.matrixV().col(1);
  const Eigen::Vector3cd r = svd.matrixV().col(2);
  const Complex a = p.transpose() * q * p;
  const Complex b = p.transpose() * q * r;
  const Complex c = r.transpose() * q * r;
  const double scale = q.norm();
  if (std::abs(a) <= tol * scale && std::abs(b) <= tol * scale && std::abs(c) <= tol * scale)
    throw Error(ErrorKind::NonTransverse, "line lies on the conic");
  // a s^2 + 2 b s u + c u^2 = 0 in [s:u].
  const Complex disc = std::sqrt(b * b - a * c);
  Complex s1, u1, s2, u2;
  const Complex w = std::abs(-b + disc) >= std::abs(-b - disc) ? -b + disc : -b - disc;
  if (std::abs(a) >= std::abs(c)) {
    // s/u roots: w/a and c/w.
    s1 = w; u1 = a;
    if (std::abs(w) > 0.0) { s2 = c; u2 = w; } else { s2 = w; u2 = a; }
  } else {
    // u/s roots: w/c and a/w.
    u1 = w; s1 = c;
    if (std::abs(w) > 0.0) { u2 = a; s2 = w; } else { u2 = w; s2 = c; }
  }
  return {as_point(s1 * p + u1 * r), as_point(s2 * p + u2 * r)};
}

std::vector<DualPoint> intersect_conics(const Conic& q1_in, const Conic& q2_in, double tol) {
  const Conic q1 = unit(q1_in), q2 = unit(q2_in);
  {
    Eigen::Matrix<Complex, 9, 2> pair;
    pair.col(0) = q1.reshaped();
    pair.col(1) = q2.reshaped();
    if (numerical_rank(pair, tol) < 2) throw Error(ErrorKind::NonTransverse, "conics are proportional");
  }
  struct Candidate {
    Conic degenerate;
    Conic other;
    double score;
  };
  std::vector<Candidate> candidates;
  auto add_candidate = [&](const Conic& d, const Conic& other) {
    Eigen::JacobiSVD<Conic> svd(d);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return;
    candidates.push_back({d, other, sv(1) / sv(0)});
  };

  const auto c = pencil_det(q1, q2);
  const double cmax = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  if (cmax <= tol) {
    // Every member is singular; use q1 itself.
    add_candidate(q1, q2);
  } else {
    int deg = 3;
    while (deg > 0 && std::abs(c[deg]) <= tol * cmax) --deg;
    std::vector<Complex> coeffs(c.begin(), c.begin() + deg + 1);
    for (const Complex& t : polynomial_roots(coeffs)) add_candidate(Conic(q1 + t * q2), q2);
    if (deg < 3) add_candidate(q2, q1);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

  for (const auto& cand : candidates) {
    std::pair<Line, Line> lines;
    try {
      lines = split_conic(cand.degenerate, 1e-6);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotDegenerate) continue;
      throw;
    }
    const auto [p1, p2] = intersect_line_conic(lines.first, cand.other, tol);
    const auto [p3, p4] = intersect_line_conic(lines.second, cand.other, tol);
    std::vector<DualPoint> pts;
    for (const auto& p : {p1, p2, p3, p4}) pts.push_back(refine_on_conics(p, q1, q2));
    std::vector<DualPoint> distinct;
    for (const auto& p : pts) {
      bool dup = false;
      for (const auto& q : distinct)
        if (same_point(p, q, kDistinctTol)) dup = true;
      if (!dup) distinct.push_back(p);
    }
    if (distinct.size() < 4)
      throw Error(ErrorKind::DegenerateIntersection,
                  "only " + std::to_string(distinct.size()) + " distinct intersection points");
    return distinct;
  }
  throw Error(ErrorKind::DegenerateIntersection, "no degenerate member of the pencil could be split");
}

Decomposition reconstruct(const DualPoint& l, const DualPoint& m, double tol) {
  const CForm f4 = klein_quartic<Complex>();
  const auto [alpha, beta] = pair_coefficients(l, m, tol);
  {
    // Cross-check with the generic capacitance route.
    const auto [a2, b2] = pair_coefficients(f4, l, m, std::max(tol, 1e-8));
    if (std::abs(a2 - alpha) > 1e-6 * std::abs(alpha) || std::abs(b2 - beta) > 1e-6 * std::abs(beta))
      throw Error(ErrorKind::RankUnexpected, "closed-form and capacitance coefficients disagree");
  }
  const CForm g = f4 - pow_linear(l, 4).scaled(alpha) - pow_linear(m, 4).scaled(beta);
  const auto [c1, c2] = remainder_pencil(g, tol);
  const auto pts = intersect_conics(c1, c2, tol);

  Eigen::MatrixXcd a(15, 4);
  for (int k = 0; k < 4; ++k) a.col(k) = monomial_vector(pow_linear(pts[k], 4));
  const Eigen::VectorXcd gv = monomial_vector(g);
  const Eigen::VectorXcd lam = a.colPivHouseholderQr().solve(gv);
  const double rel = (a * lam - gv).norm() / gv.norm();
  if (!(rel < tol * 10.0) && !(rel < 1e-8))
    throw Error(ErrorKind::ResidualTooLarge, "remainder solve residual " + std::to_string(rel));

  Decomposition d;
  d.target = f4;
  d.entries.push_back({l, alpha});
  d.entries.push_back({m, beta});
  for (int k = 0; k < 4; ++k) d.entries.push_back({pts[k], lam(k)});
  d.residual = verify(d);
  if (!(d.residual < 1e-8)) throw Error(ErrorKind::ResidualTooLarge, "decomposition residual " + std::to_string(d.residual));
  return d;
}

double verify(const Decomposition& d) {
  if (d.entries.size() != 6)
    throw Error(ErrorKind::EntryCount, "expected 6 entries, got " + std::to_string(d.entries.size()));
  CForm sum(3, 4);
  for (const auto& e : d.entries) sum += pow_linear(e.point, 4).scaled(e.lambda);
  const Eigen::VectorXcd t = monomial_vector(d.target);
  const Eigen::VectorXcd diff = t - monomial_vector(sum);
  const double tn = t.norm();
  return tn > 0.0 ? diff.norm() / tn : diff.norm();
}

std::vector<double> tangent_singular_values(const Decomposition& d) {
  if (d.entries.size() != 6)
    throw Error(ErrorKind::EntryCount, "expected 6 entries, got " + std::to_string(d.entries.size()));
  Eigen::MatrixXcd jac(15, 18);
  int col = 0;
  for (const auto& e : d.entries) {
    // Rescale so the chart coordinate equals 1; lambda absorbs s^4.
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(e.point[i]) > std::abs(e.point[k])) k = i;
    const DualPoint p = normalized(e.point);
    const Complex s = e.point[k];
    const Complex lam = e.lambda * s * s * s * s;
    const CForm cube = pow_linear(p, 3);
    for (int i = 0; i < 3; ++i) {
      if (i == k) continue;
      const CForm dp = (CForm::variable(3, i) * cube).scaled(4.0 * lam);
      jac.col(col++) = monomial_vector(dp);
    }
    jac.col(col++) = monomial_vector(pow_linear(p, 4));
  }
  for (Eigen::Index c = 0; c < jac.cols(); ++c) {
    const double n = jac.col(c).norm();
    if (n > 0.0) jac.col(c) /= n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) out.push_back(svd.singularValues()(i));
  return out;
}

int tangent_nullity(const Decomposition& d) {
  const auto sv = tangent_singular_values(d);
  const double smax = sv.front();
  // Rank cut at the largest ratio between consecutive singular values,
  // treating the 3 missing columns of the 15 x 18 matrix as exact zeros.
  const double cut = 1e-8 * smax;
  int rank = 0;
  while (rank < static_cast<int>(sv.size()) && sv[rank] > cut) ++rank;
  if (rank > 0 && rank < static_cast<int>(sv.size())) {
    const double below = sv[rank];
    if (below > 0.0 && sv[rank - 1] / below < 1e3)
      throw Error(ErrorKind::IllConditioned, "no clear rank gap in tangent Jacobian");
  }
  if (rank > 0 && rank == static_cast<int>(sv.size()) && sv[rank - 1] < 1e-5 * smax)
    throw Error(ErrorKind::IllConditioned, "smallest tangent singular value too close to zero");
  return 18 - rank;
}

}  // namespace kvsp
