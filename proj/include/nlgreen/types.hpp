#ifndef NLGREEN_TYPES_HPP
#define NLGREEN_TYPES_HPP

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

namespace nlg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Coordinates of a point; only the first `dim` components are meaningful.
using Point = std::array<double, 3>;

inline Point point1d(double x) { return {x, 0.0, 0.0}; }

// Configuration or precondition violation (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: solver breakdown, failed search, eigen failure (CLI exit code 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nlg

#endif
