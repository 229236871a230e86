#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tubealg/scalar.hpp"

namespace tubealg {

using RMatrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan over the rationals; empty when singular
std::optional<RMatrix> invert(const RMatrix& a);
int exact_rank(RMatrix a);

int numeric_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-8);
double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m);
double min_symmetric_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace tubealg
