#include "oracles.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace oracle {

namespace {

RVec5 make(double a, double b, double c, double d, double e) {
  RVec5 v;
  v[0] = a;
  v[1] = b;
  v[2] = c;
  v[3] = d;
  v[4] = e;
  return v;
}

Eigen::Matrix<double, 5, 5> to_eigen(const RMat5& m) {
  Eigen::Matrix<double, 5, 5> e;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) e(r, c) = m(r, c);
  return e;
}

RMat5 from_eigen(const Eigen::Matrix<double, 5, 5>& e) {
  RMat5 m;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = e(r, c);
  return m;
}

Eigen::Matrix<double, 5, 1> ev(const RVec5& v) {
  Eigen::Matrix<double, 5, 1> e;
  for (int i = 0; i < 5; ++i) e(i) = v[i];
  return e;
}

// Weights of the sixth-order first and second central differences.
constexpr double kD1[] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
constexpr double kD2[] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};

}  // namespace

Surface sphere() {
  return [](double x, double y) {
    const double r2 = x * x + y * y, d = 1.0 + r2;
    return make(2 * x / d, 2 * y / d, (1 - r2) / d, 0, 0);
  };
}

Surface clifford() {
  const double s = 1.0 / std::sqrt(2.0);
  return [s](double x, double y) { return make(s * std::cos(x), s * std::sin(x), s * std::cos(y), s * std::sin(y), 0); };
}

Surface pmc(double a, double b) {
  return [a, b](double x, double y) {
    return make(a * std::cos(x / a), a * std::sin(x / a), b * std::cos(y / b), b * std::sin(y / b), 0);
  };
}

Surface moebius(Surface s, const RVec5& c) {
  return [s, c](double x, double y) {
    const RVec5 p = s(x, y);
    double pc = 0, cc = 0;
    for (int i = 0; i < 5; ++i) {
      pc += p[i] * c[i];
      cc += c[i] * c[i];
    }
    RVec5 q;
    for (int i = 0; i < 5; ++i) q[i] = ((1 - cc) * p[i] + 2 * (1 + pc) * c[i]) / (1 + 2 * pc + cc);
    return q;
  };
}

Derivs derivs(const Surface& s, double x, double y, double h) {
  Derivs d;
  d.f = s(x, y);
  for (int i = 0; i < 5; ++i) d.fx[i] = d.fy[i] = d.fxx[i] = d.fyy[i] = d.fxy[i] = 0.0;
  for (int k = -3; k <= 3; ++k) {
    const RVec5 px = s(x + k * h, y), py = s(x, y + k * h);
    for (int i = 0; i < 5; ++i) {
      d.fx[i] += kD1[k + 3] * px[i] / h;
      d.fy[i] += kD1[k + 3] * py[i] / h;
      d.fxx[i] += kD2[k + 3] * px[i] / (h * h);
      d.fyy[i] += kD2[k + 3] * py[i] / (h * h);
    }
  }
  for (int k = -3; k <= 3; ++k)
    for (int l = -3; l <= 3; ++l) {
      const double w = kD1[k + 3] * kD1[l + 3];
      if (w == 0.0) continue;
      const RVec5 p = s(x + k * h, y + l * h);
      for (int i = 0; i < 5; ++i) d.fxy[i] += w * p[i] / (h * h);
    }
  return d;
}

Invariants invariants(const Surface& s, double x, double y) {
  const Derivs d = derivs(s, x, y);
  Eigen::Matrix<double, 3, 5> span;
  span.row(0) = ev(d.f).transpose();
  span.row(1) = ev(d.fx).transpose();
  span.row(2) = ev(d.fy).transpose();
  // Right singular vectors beyond rank 3 span the normal plane.
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 5>> svd(span, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 5, 1> n1 = svd.matrixV().col(3), n2 = svd.matrixV().col(4);
  Invariants r;
  const double e2u = (ev(d.fx).squaredNorm() + ev(d.fy).squaredNorm()) / 4.0;
  r.u = 0.5 * std::log(e2u);
  const Eigen::Matrix<double, 5, 1> lap = (ev(d.fxx) + ev(d.fyy)) / 4.0;
  const double h1 = n1.dot(lap) / e2u, h2 = n2.dot(lap) / e2u;
  r.H2 = h1 * h1 + h2 * h2;
  const cplx xi1 = cplx(n1.dot(ev(d.fxx) - ev(d.fyy)), -2.0 * n1.dot(ev(d.fxy))) / 4.0;
  const cplx xi2 = cplx(n2.dot(ev(d.fxx) - ev(d.fyy)), -2.0 * n2.dot(ev(d.fxy))) / 4.0;
  r.xi_sq = std::norm(xi1) + std::norm(xi2);
  r.xi_iso = xi1 * xi1 + xi2 * xi2;
  return r;
}

double gauss_curvature(const Surface& s, double x, double y, double h) {
  auto u = [&](double a, double b) { return invariants(s, a, b).u; };
  const double u0 = u(x, y);
  const double lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4.0 * u0) / (h * h);
  return -lap / (2.0 * std::exp(2.0 * u0));
}

RMat5 polar(const RMat5& m) {
  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 5>> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  return from_eigen(svd.matrixU() * svd.matrixV().transpose());
}

double determinant(const RMat5& m) { return to_eigen(m).determinant(); }

RMat5 inverse(const RMat5& m) { return from_eigen(to_eigen(m).inverse()); }

}  // namespace oracle
