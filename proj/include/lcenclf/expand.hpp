#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace lcenclf {

/**
 * Feature-expanded design matrix. Column j is the monomial described by
 * `names[j]` (e.g. "x2", "x0*x3", "x1^2"); `parent_map[j]` lists the raw
 * feature indices it derives from.
 */
struct ExpandedDesign {
    Eigen::MatrixXd Z;                       // N x P
    std::vector<std::string> names;          // length P
    std::vector<std::vector<int>> parent_map;
    int degree = 1;
    int lag = 0;
};

/**
 * All monomials of the raw features with total degree in [1, degree], in
 * graded lexicographic order. No constant column: the logistic solver owns
 * the intercept. P = C(D+degree, degree) - 1.
 *
 * degree must be 1, 2, or 3; lag must be 0 (lagged expansion is for
 * time-series tasks and is not supported here).
 */
ExpandedDesign expand_features(const Eigen::MatrixXd& X, int degree, int lag = 0);

/// Column names only, without evaluating the matrix (for reporting).
std::vector<std::string> expansion_names(int n_raw_features, int degree);

/// Parse a derivation string ("x0^2*x3") back to its sorted parent indices.
std::vector<int> parse_derivation(const std::string& name);

}  // namespace lcenclf
