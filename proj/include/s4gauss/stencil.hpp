#pragma once

// Grid finite differences for scalar, vector and matrix fields.
//
// Fourth order: 5-point central stencils where both neighbours at distance 2
// exist (always on periodic axes). One node in from an open edge the 3-point
// central stencil is used, and on the edge itself a one-sided second-order
// stencil. Second order: 3-point central everywhere inside, one-sided on
// the edge.

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "s4gauss/grid.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

enum class FdOrder { Second, Fourth };
enum class Axis { X, Y };

inline cplx to_complex(double v) { return {v, 0.0}; }
inline cplx to_complex(const cplx& v) { return v; }
inline CVec5 to_complex(const RVec5& v) { return complexify(v); }
inline CVec5 to_complex(const CVec5& v) { return v; }
inline CMat5 to_complex(const RMat5& v) { return complexify(v); }
inline CMat5 to_complex(const CMat5& v) { return v; }

template <class T>
using complex_of = decltype(to_complex(std::declval<T>()));

namespace detail {

struct Line {
  int n;
  bool periodic;
  double h;
};

inline Line line_of(const Grid& g, Axis a) {
  return a == Axis::X ? Line{g.nx(), g.domain().periodic_x, g.hx()}
                      : Line{g.ny(), g.domain().periodic_y, g.hy()};
}

inline int wrap(int k, int n) { return ((k % n) + n) % n; }

template <class T, class Get>
T first_at(const Line& L, int k, FdOrder order, const Get& at) {
  const int n = L.n;
  auto v = [&](int m) { return at(L.periodic ? wrap(m, n) : m); };
  const bool wide = L.periodic || (k >= 2 && k <= n - 3);
  if (order == FdOrder::Fourth && wide)
    return (v(k - 2) - 8.0 * v(k - 1) + 8.0 * v(k + 1) - v(k + 2)) * (1.0 / (12.0 * L.h));
  if (L.periodic || (k >= 1 && k <= n - 2)) return (v(k + 1) - v(k - 1)) * (1.0 / (2.0 * L.h));
  if (k == 0) return (-3.0 * v(0) + 4.0 * v(1) - v(2)) * (1.0 / (2.0 * L.h));
  return (3.0 * v(n - 1) - 4.0 * v(n - 2) + v(n - 3)) * (1.0 / (2.0 * L.h));
}

template <class T, class Get>
T second_at(const Line& L, int k, FdOrder order, const Get& at) {
  const int n = L.n;
  auto v = [&](int m) { return at(L.periodic ? wrap(m, n) : m); };
  const double h2 = L.h * L.h;
  const bool wide = L.periodic || (k >= 2 && k <= n - 3);
  if (order == FdOrder::Fourth && wide)
    return (-1.0 * v(k - 2) + 16.0 * v(k - 1) - 30.0 * v(k) + 16.0 * v(k + 1) - v(k + 2)) *
           (1.0 / (12.0 * h2));
  if (L.periodic || (k >= 1 && k <= n - 2))
    return (v(k - 1) - 2.0 * v(k) + v(k + 1)) * (1.0 / h2);
  if (k == 0) return (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) * (1.0 / h2);
  return (2.0 * v(n - 1) - 5.0 * v(n - 2) + 4.0 * v(n - 3) - v(n - 4)) * (1.0 / h2);
}

}  // namespace detail

/// Partial derivative along one axis.
template <class T>
std::vector<T> diff(const Grid& g, std::span<const T> f, Axis axis, FdOrder order = FdOrder::Fourth) {
  const detail::Line L = detail::line_of(g, axis);
  std::vector<T> out(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (axis == Axis::X)
        out[g.index(i, j)] = detail::first_at<T>(L, i, order, [&](int m) { return f[g.index(m, j)]; });
      else
        out[g.index(i, j)] = detail::first_at<T>(L, j, order, [&](int m) { return f[g.index(i, m)]; });
    }
  return out;
}

/// Second partial derivative along one axis.
template <class T>
std::vector<T> diff2(const Grid& g, std::span<const T> f, Axis axis, FdOrder order = FdOrder::Fourth) {
  const detail::Line L = detail::line_of(g, axis);
  std::vector<T> out(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (axis == Axis::X)
        out[g.index(i, j)] = detail::second_at<T>(L, i, order, [&](int m) { return f[g.index(m, j)]; });
      else
        out[g.index(i, j)] = detail::second_at<T>(L, j, order, [&](int m) { return f[g.index(i, m)]; });
    }
  return out;
}

/// d/dz = (d/dx - i d/dy)/2, or d/dzbar with conj_direction.
template <class T>
std::vector<complex_of<T>> diff_z(const Grid& g, std::span<const T> f, bool conj_direction = false,
                                  FdOrder order = FdOrder::Fourth) {
  const auto dx = diff<T>(g, f, Axis::X, order);
  const auto dy = diff<T>(g, f, Axis::Y, order);
  const cplx s = conj_direction ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
  std::vector<complex_of<T>> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = 0.5 * to_complex(dx[k]) + s * to_complex(dy[k]);
  return out;
}

template <class T>
std::vector<complex_of<T>> diff_zbar(const Grid& g, std::span<const T> f, FdOrder order = FdOrder::Fourth) {
  return diff_z<T>(g, f, true, order);
}

/// d^2/dz dzbar = (d_xx + d_yy)/4 for a real scalar field.
std::vector<double> diff_zzbar(const Grid& g, std::span<const double> f, FdOrder order = FdOrder::Fourth);

}  // namespace s4g
