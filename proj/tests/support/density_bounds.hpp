#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "repcut/lifted_cut.hpp"
#include "repcut/rng.hpp"

namespace repcut::testing {

// Closed-form cut-density bounds for the threshold schemes, evaluated at a
// point u of the lifted simplex (last coordinate = extra label) for an edge
// moving mass between coordinates i and j. "Other" coordinates range over
// the thresholded labels only, i.e. every index except i, j and the last.
// Each function returns the tightest bound among the cases that apply, or
// nothing when no case applies.

enum class DensityScheme { Independent, Single, Descending };

/// Bitmask of applicable cases (bit r-1 for case r).
unsigned independent_cases(const Eigen::VectorXd& u, int i, int j, double b);
unsigned single_cases(const Eigen::VectorXd& u, int i, int j);
unsigned descending_cases(const Eigen::VectorXd& u, int i, int j);

std::optional<double> independent_bound(const Eigen::VectorXd& u, int i, int j, double b);
std::optional<double> single_bound(const Eigen::VectorXd& u, int i, int j,
                                   const ThresholdDensity& phi);
/// Descending thresholds with psi uniform on [0, b].
std::optional<double> descending_bound(const Eigen::VectorXd& u, int i, int j, double b);

struct DensityPoint {
  Eigen::VectorXd u;
  int i = 0;
  int j = 1;
  double b = 0.7;
  double bound = 0.0;
};

int case_count(DensityScheme scheme);

/// Rejection-samples `count` points where case `which` (1-based) applies.
/// Coordinates stay at least `margin` away from b and from each other, and
/// u_j leaves room for the perturbation. With on_face the extra coordinate
/// is zero. b is drawn from bs per point.
std::vector<DensityPoint> sample_case(DensityScheme scheme, int which, int count,
                                      const std::vector<double>& bs, bool on_face,
                                      const ThresholdDensity& phi, CounterRng& rng,
                                      double margin = 0.02);

RoundingScheme rounding_scheme(DensityScheme scheme);

}  // namespace repcut::testing
