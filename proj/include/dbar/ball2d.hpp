#pragma once

#include <array>
#include <complex>
#include <vector>

namespace dbar::ball {

using Complex = std::complex<double>;
using Point = std::array<Complex, 2>;

/// ln c_{n1,n2}^2 for the weight (1 - |z1|^2 - |z2|^2)^alpha on the unit ball
/// of C^2: ln(pi^2 n1! n2! / ((alpha+n1+n2+2) ... (alpha+1))).
double ball_moment_log(double alpha, int n1, int n2);

/// Same quantity from nested 1-D adaptive quadratures of
/// pi^2 int_0^1 (1-s2)^{n2} int_0^{s2} (s2-s1)^{n1} s1^alpha ds1 ds2.
double ball_moment_quadrature(double alpha, int n1, int n2, double rel_tol = 1e-11);

/// ||S(u_{n1,n2} d conj(z_direction))||^2 in closed form:
/// (alpha+n2+2)/((alpha+n1+n2+3)(alpha+n1+n2+2)) for direction 1, n1 <-> n2 for 2.
double form_energy(double alpha, int n1, int n2, int direction);

/// The same energy as a difference of consecutive moment ratios along
/// `direction`, evaluated from the log-moment formula in extended precision.
double form_energy_from_moments(double alpha, int n1, int n2, int direction);

/// Sum_{n1,n2=1}^{N} of both form energies, row-major; 0 for N = 0.
double ball_hs_partial_sum(double alpha, int N);

/// sum over multi-indices of z^nu conj(w)^nu / c_nu^2, grouped by total degree
/// and truncated by a ratio-test tail bound.
Complex ball_kernel_series(double alpha, const Point& z, const Point& w, double rel_tol = 1e-13);

/// (alpha+1)(alpha+2)/pi^2 * (1 - <z, w>)^{-(alpha+3)}.
///
/// The prefactor is 1 / c_{0,0}^2, the value of the series at z = w = 0.
Complex ball_kernel_closed(double alpha, const Point& z, const Point& w);

/// Prefactor of the closed-form kernel recovered numerically as
/// ball_kernel_series(alpha, 0, 0).
double ball_kernel_constant(double alpha);

/// Row-major table of ln c_{n1,n2}^2 for 0 <= n1, n2 <= n_max.
struct BallMomentGrid {
  double alpha = 0.0;
  int n_max = 0;
  std::vector<double> log_moments;

  double at(int n1, int n2) const {
    return log_moments[static_cast<std::size_t>(n1) * (n_max + 1) + n2];
  }
};

BallMomentGrid make_ball_grid(double alpha, int n_max);

}  // namespace dbar::ball
