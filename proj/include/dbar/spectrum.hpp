#pragma once

#include <string>
#include <vector>

#include "dbar/weights.hpp"

namespace dbar {

// S*S is diagonal in the basis u_n = z^n / c_n with eigenvalues
//   lambda_0 = c_1^2 / c_0^2,
//   lambda_n = r_n - r_{n-1},  r_n = c_{n+1}^2 / c_n^2   (n >= 1),
// so the Hilbert-Schmidt partial sums telescope to r_N.

enum class Verdict { HilbertSchmidt, CompactNotHilbertSchmidt, NonCompact };

std::string to_string(Verdict v);

struct ClassifyOptions {
  int tail_start = 1000;
  int tail_len = 1000;
  double eps_zero = 1e-3;
  double big = 1e6;
};

struct Evidence {
  int tail_begin = 0;
  int tail_end = 0;
  double lambda_tail_max = 0.0;
  double lambda_tail_min = 0.0;
  double ratio_tail = 0.0;        // r at the end of the window
  double ratio_drift = 0.0;       // |r_end - r_begin| / max(1, r_end)
  double decay_exponent = 0.0;    // p in lambda_n ~ C n^{-p}, least squares over the window
  double extrapolated_ratio = 0.0;  // r_end plus a power-law tail estimate (inf if p <= 1)
  std::string note;
};

struct Classification {
  Verdict verdict = Verdict::NonCompact;
  Evidence evidence;
};

struct SpectralDiagnostics {
  WeightSpec weight;
  std::vector<double> lambdas;
  std::vector<double> ratios;
  std::vector<double> partial_sums;
  Classification classification;
};

/// lambda_n, evaluated as r_{n-1} * expm1(ln r_n - ln r_{n-1}) for n >= 1.
double eigenvalue(const MomentSequence& moments, int n);

/// Sum_{n=0}^{N} lambda_n, compensated, ascending n.
double hs_partial_sum(const MomentSequence& moments, int N);

/// Classifies the restricted solution operator from the tail window
/// [tail_start, tail_start + tail_len].
///
/// Hilbert-Schmidt: r_n bounded by `big` and either its relative drift over the
/// window is below eps_zero or the eigenvalues decay faster than 1/n with a
/// finite extrapolated limit of r_n.
/// Compact: the window eigenvalues are below eps_zero or decay as a power law
/// with exponent above eps_zero.
Classification classify(const MomentSequence& moments, const ClassifyOptions& opts = {});

/// Eigenvalues, ratios and partial sums for n = 0..n_max plus the classification.
SpectralDiagnostics diagnose(const MomentSequence& moments, int n_max,
                             const ClassifyOptions& opts = {});

/// ((2k+2)/m)^{2/m} - (2k/m)^{2/m}, the large-k surrogate of the Fock eigenvalues.
double stirling_surrogate(double m, int k);

/// Gamma((2k+4)/m)/Gamma((2k+2)/m) - Gamma((2k+2)/m)/Gamma(2k/m).
double gamma_ratio_difference(double m, int k);

}  // namespace dbar
