#pragma once

// Fixed-size 5-vectors and 5x5 matrices over R and C, plus the so(5) = k + p
// split used by the frame and tension code. Indices 0..4 follow the frame
// column order (f, F1, F2, N1, N2).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace s4g {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

template <class T>
struct Vec5 {
  std::array<T, 5> c{};

  constexpr T& operator[](std::size_t i) { return c[i]; }
  constexpr const T& operator[](std::size_t i) const { return c[i]; }

  static constexpr Vec5 unit(std::size_t i) {
    Vec5 v;
    v.c[i] = T(1);
    return v;
  }

  Vec5& operator+=(const Vec5& o) {
    for (std::size_t i = 0; i < 5; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec5& operator-=(const Vec5& o) {
    for (std::size_t i = 0; i < 5; ++i) c[i] -= o.c[i];
    return *this;
  }
  template <class S>
  Vec5& operator*=(S s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend bool operator==(const Vec5&, const Vec5&) = default;
};

using RVec5 = Vec5<double>;
using CVec5 = Vec5<cplx>;

template <class T>
Vec5<T> operator+(Vec5<T> a, const Vec5<T>& b) { return a += b; }
template <class T>
Vec5<T> operator-(Vec5<T> a, const Vec5<T>& b) { return a -= b; }
template <class T>
Vec5<T> operator-(Vec5<T> a) {
  for (auto& x : a.c) x = -x;
  return a;
}
template <class T>
Vec5<T> operator*(double s, Vec5<T> a) { return a *= s; }
template <class T>
Vec5<T> operator*(Vec5<T> a, double s) { return a *= s; }
template <class T>
Vec5<T> operator/(Vec5<T> a, double s) { return a *= (1.0 / s); }
inline CVec5 operator*(cplx s, const CVec5& a) {
  CVec5 r = a;
  return r *= s;
}

double dot(const RVec5& a, const RVec5& b);
double norm(const RVec5& a);

CVec5 complexify(const RVec5& re, const RVec5& im = RVec5{});
CVec5 conj(const CVec5& z);
RVec5 real(const CVec5& z);
RVec5 imag(const CVec5& z);
double norm(const CVec5& z);

/// Sum z_i w_i, no conjugation.
cplx bilinear_c(const CVec5& z, const CVec5& w);
/// Sum z_i conj(w_i).
cplx hermitian(const CVec5& z, const CVec5& w);

template <class T>
struct Mat5 {
  std::array<T, 25> a{};

  constexpr T& operator()(std::size_t r, std::size_t c) { return a[r * 5 + c]; }
  constexpr const T& operator()(std::size_t r, std::size_t c) const { return a[r * 5 + c]; }

  static constexpr Mat5 identity() {
    Mat5 m;
    for (std::size_t i = 0; i < 5; ++i) m(i, i) = T(1);
    return m;
  }
  /// E_rc - E_cr.
  static constexpr Mat5 generator(std::size_t r, std::size_t c) {
    Mat5 m;
    m(r, c) = T(1);
    m(c, r) = T(-1);
    return m;
  }

  Vec5<T> col(std::size_t j) const {
    Vec5<T> v;
    for (std::size_t i = 0; i < 5; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const Vec5<T>& v) {
    for (std::size_t i = 0; i < 5; ++i) (*this)(i, j) = v[i];
  }

  Mat5& operator+=(const Mat5& o) {
    for (std::size_t i = 0; i < 25; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat5& operator-=(const Mat5& o) {
    for (std::size_t i = 0; i < 25; ++i) a[i] -= o.a[i];
    return *this;
  }
  template <class S>
  Mat5& operator*=(S s) {
    for (auto& x : a) x *= s;
    return *this;
  }
  friend bool operator==(const Mat5&, const Mat5&) = default;
};

using RMat5 = Mat5<double>;
using CMat5 = Mat5<cplx>;

template <class T>
Mat5<T> operator+(Mat5<T> a, const Mat5<T>& b) { return a += b; }
template <class T>
Mat5<T> operator-(Mat5<T> a, const Mat5<T>& b) { return a -= b; }
template <class T>
Mat5<T> operator-(Mat5<T> a) {
  for (auto& x : a.a) x = -x;
  return a;
}
template <class T>
Mat5<T> operator*(double s, Mat5<T> a) { return a *= s; }
template <class T>
Mat5<T> operator*(Mat5<T> a, double s) { return a *= s; }
template <class T>
Mat5<T> operator/(Mat5<T> a, double s) { return a *= (1.0 / s); }
inline CMat5 operator*(cplx s, CMat5 a) { return a *= s; }

template <class T>
Mat5<T> operator*(const Mat5<T>& x, const Mat5<T>& y) {
  Mat5<T> r;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 5; ++k) {
      const T xik = x(i, k);
      for (std::size_t j = 0; j < 5; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}
template <class T>
Vec5<T> operator*(const Mat5<T>& m, const Vec5<T>& v) {
  Vec5<T> r;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) r[i] += m(i, j) * v[j];
  return r;
}

template <class T>
Mat5<T> transpose(const Mat5<T>& m) {
  Mat5<T> r;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) r(j, i) = m(i, j);
  return r;
}

CMat5 complexify(const RMat5& re, const RMat5& im = RMat5{});
CMat5 conj(const CMat5& m);
RMat5 real(const CMat5& m);
RMat5 imag(const CMat5& m);
double frobenius(const RMat5& m);
double frobenius(const CMat5& m);
cplx trace(const CMat5& m);
double determinant(const RMat5& m);
/// Throws DegenerateFrame when the matrix is numerically singular.
RMat5 inverse(const RMat5& m);

/// XY - YX.
CMat5 bracket(const CMat5& x, const CMat5& y);

/// Real skew-symmetric 5x5 matrix. Construction enforces X + X^T = 0.
class So5 {
 public:
  So5() = default;
  /// Throws NonSkewInput when |X + X^T| > 1e-9 (1 + |X|); the stored value is
  /// the exact skew part.
  explicit So5(const RMat5& x);
  static So5 generator(std::size_t r, std::size_t c) { return So5(RMat5::generator(r, c)); }
  const RMat5& matrix() const { return m_; }

 private:
  RMat5 m_;
};

struct KPSplit {
  CMat5 k_part;
  CMat5 p_part;
};

/// True for the entries (1,2),(2,1),(3,4),(4,3).
bool is_k_entry(std::size_t r, std::size_t c);
/// True for the off-diagonal entries outside the k blocks.
bool is_p_entry(std::size_t r, std::size_t c);

/// Entrywise mask projection; throws NonSkewInput when X^T != -X beyond
/// 1e-9 (1 + |X|).
KPSplit split_kp(const CMat5& x);

/// -1/2 tr(AB).
double normal_inner(const So5& a, const So5& b);
/// Complex-bilinear extension of the normal inner product.
cplx normal_inner_c(const CMat5& a, const CMat5& b);

/// Polar factor of m by Newton averaging Q <- (Q + Q^-T)/2. Requires
/// det(m) > 0 and |m^T m - I| < 0.5, otherwise DegenerateFrame.
RMat5 retract_so5(const RMat5& m);

/// |m^T m - I| in the Frobenius norm.
double orthogonality_defect(const RMat5& m);

}  // namespace s4g
