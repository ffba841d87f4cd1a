#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dbar/solver.hpp"
#include "dbar/weights.hpp"

namespace dbar::reproduce {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  std::string id;
  std::string title;
  Table table;
  std::vector<Check> checks;
  bool passed = false;
  double time_limit_seconds = 0.0;  // 0 when the criterion has no runtime bound
};

struct Options {
  std::uint64_t seed = 20240611;
};

/// Criterion ids in execution order.
const std::vector<std::string>& criterion_ids();

/// Runs one criterion. Throws ParameterError for an unknown id.
CriterionResult run_criterion(const std::string& id, const Options& opts = {});

std::vector<CriterionResult> run_all(const Options& opts = {});

/// Seeded random Taylor coefficients, real and imaginary parts uniform in [-1, 1].
HolomorphicCoeffs random_polynomial(std::mt19937_64& rng, int degree);

/// ||g - P g||^2 for g(z) = conj(z) f(rho z) with P the orthogonal projection
/// onto polynomials of degree <= deg f + 2, every inner product taken by 2-D
/// quadrature (adaptive in r, trapezoid in angle) against the weight density.
double defect_norm_quadrature(const HolomorphicCoeffs& f, double rho, const WeightSpec& weight,
                              double rel_tol = 1e-12);

}  // namespace dbar::reproduce
