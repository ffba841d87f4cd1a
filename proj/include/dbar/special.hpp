#pragma once

namespace dbar {

/// ln Gamma(x) for x > 0. Throws ParameterError for x <= 0.
double log_gamma(double x);

/// ln(Gamma(x + h) / Gamma(x)) for x > 0, h > 0.
///
/// Evaluated without forming either log-gamma value, so the result keeps full
/// relative precision even when ln Gamma(x) is of order 1e5 and the ratio is
/// of order ln x.
double log_gamma_ratio(double x, double h);

/// ln Gamma(x + h) - 2 ln Gamma(x) + ln Gamma(x - h) for 0 < h < x.
///
/// Second difference of ln Gamma with step h; the quantity that decides the
/// sign and size of differences of consecutive gamma ratios.
double log_gamma_second_difference(double x, double h);

}  // namespace dbar
