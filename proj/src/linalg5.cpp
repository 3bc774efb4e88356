#include "s4gauss/linalg5.hpp"

#include <algorithm>
#include <utility>

#include "s4gauss/error.hpp"

namespace s4g {

double dot(const RVec5& a, const RVec5& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += a[i] * b[i];
  return s;
}

double norm(const RVec5& a) { return std::sqrt(dot(a, a)); }

CVec5 complexify(const RVec5& re, const RVec5& im) {
  CVec5 z;
  for (std::size_t i = 0; i < 5; ++i) z[i] = cplx(re[i], im[i]);
  return z;
}

CVec5 conj(const CVec5& z) {
  CVec5 r;
  for (std::size_t i = 0; i < 5; ++i) r[i] = std::conj(z[i]);
  return r;
}

RVec5 real(const CVec5& z) {
  RVec5 r;
  for (std::size_t i = 0; i < 5; ++i) r[i] = z[i].real();
  return r;
}

RVec5 imag(const CVec5& z) {
  RVec5 r;
  for (std::size_t i = 0; i < 5; ++i) r[i] = z[i].imag();
  return r;
}

double norm(const CVec5& z) { return std::sqrt(hermitian(z, z).real()); }

cplx bilinear_c(const CVec5& z, const CVec5& w) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += z[i] * w[i];
  return s;
}

cplx hermitian(const CVec5& z, const CVec5& w) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += z[i] * std::conj(w[i]);
  return s;
}

CMat5 complexify(const RMat5& re, const RMat5& im) {
  CMat5 m;
  for (std::size_t i = 0; i < 25; ++i) m.a[i] = cplx(re.a[i], im.a[i]);
  return m;
}

CMat5 conj(const CMat5& m) {
  CMat5 r;
  for (std::size_t i = 0; i < 25; ++i) r.a[i] = std::conj(m.a[i]);
  return r;
}

RMat5 real(const CMat5& m) {
  RMat5 r;
  for (std::size_t i = 0; i < 25; ++i) r.a[i] = m.a[i].real();
  return r;
}

RMat5 imag(const CMat5& m) {
  RMat5 r;
  for (std::size_t i = 0; i < 25; ++i) r.a[i] = m.a[i].imag();
  return r;
}

double frobenius(const RMat5& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

double frobenius(const CMat5& m) {
  double s = 0.0;
  for (const cplx& x : m.a) s += std::norm(x);
  return std::sqrt(s);
}

cplx trace(const CMat5& m) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += m(i, i);
  return s;
}

namespace {

// LU with partial pivoting in place; returns the permutation sign, 0 if singular.
int lu_decompose(RMat5& m, std::array<std::size_t, 5>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < 5; ++i) perm[i] = i;
  const double scale = std::max(frobenius(m), 1e-300);
  for (std::size_t k = 0; k < 5; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < 5; ++r)
      if (std::abs(m(r, k)) > std::abs(m(p, k))) p = r;
    if (std::abs(m(p, k)) <= 1e-14 * scale) return 0;
    if (p != k) {
      for (std::size_t c = 0; c < 5; ++c) std::swap(m(p, c), m(k, c));
      std::swap(perm[p], perm[k]);
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < 5; ++r) {
      m(r, k) /= m(k, k);
      for (std::size_t c = k + 1; c < 5; ++c) m(r, c) -= m(r, k) * m(k, c);
    }
  }
  return sign;
}

}  // namespace

double determinant(const RMat5& m) {
  RMat5 lu = m;
  std::array<std::size_t, 5> perm{};
  const int sign = lu_decompose(lu, perm);
  if (sign == 0) return 0.0;
  double d = sign;
  for (std::size_t i = 0; i < 5; ++i) d *= lu(i, i);
  return d;
}

RMat5 inverse(const RMat5& m) {
  RMat5 lu = m;
  std::array<std::size_t, 5> perm{};
  if (lu_decompose(lu, perm) == 0) throw Error(ErrorKind::DegenerateFrame, "singular 5x5 matrix");
  RMat5 inv;
  for (std::size_t col = 0; col < 5; ++col) {
    std::array<double, 5> x{};
    for (std::size_t i = 0; i < 5; ++i) {
      double s = perm[i] == col ? 1.0 : 0.0;
      for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t ii = 5; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t j = ii + 1; j < 5; ++j) s -= lu(ii, j) * x[j];
      x[ii] = s / lu(ii, ii);
    }
    for (std::size_t i = 0; i < 5; ++i) inv(i, col) = x[i];
  }
  return inv;
}

CMat5 bracket(const CMat5& x, const CMat5& y) { return x * y - y * x; }

So5::So5(const RMat5& x) {
  const RMat5 sym = x + transpose(x);
  if (frobenius(sym) > 1e-9 * (1.0 + frobenius(x)))
    throw Error(ErrorKind::NonSkewInput, "matrix is not skew-symmetric");
  m_ = 0.5 * (x - transpose(x));
}

bool is_k_entry(std::size_t r, std::size_t c) {
  return (r == 1 && c == 2) || (r == 2 && c == 1) || (r == 3 && c == 4) || (r == 4 && c == 3);
}

bool is_p_entry(std::size_t r, std::size_t c) { return r != c && !is_k_entry(r, c); }

KPSplit split_kp(const CMat5& x) {
  const CMat5 sym = x + transpose(x);
  if (frobenius(sym) > 1e-9 * (1.0 + frobenius(x)))
    throw Error(ErrorKind::NonSkewInput, "split_kp requires a skew-symmetric matrix");
  KPSplit s;
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) {
      if (is_k_entry(r, c))
        s.k_part(r, c) = x(r, c);
      else if (is_p_entry(r, c))
        s.p_part(r, c) = x(r, c);
    }
  return s;
}

double normal_inner(const So5& a, const So5& b) {
  const RMat5 ab = a.matrix() * b.matrix();
  double t = 0.0;
  for (std::size_t i = 0; i < 5; ++i) t += ab(i, i);
  return -0.5 * t;
}

cplx normal_inner_c(const CMat5& a, const CMat5& b) { return -0.5 * trace(a * b); }

double orthogonality_defect(const RMat5& m) {
  return frobenius(transpose(m) * m - RMat5::identity());
}

RMat5 retract_so5(const RMat5& m) {
  if (!(determinant(m) > 0.0) || !(orthogonality_defect(m) < 0.5))
    throw Error(ErrorKind::DegenerateFrame, "retraction precondition violated");
  RMat5 q = m;
  for (int it = 0; it < 60; ++it) {
    const RMat5 next = 0.5 * (q + transpose(inverse(q)));
    const double step = frobenius(next - q);
    q = next;
    if (step < 1e-14) break;
  }
  return q;
}

}  // namespace s4g
