#pragma once

#include <Eigen/Dense>
#include <vector>

namespace lcenclf {

/// Truth-by-prediction count matrix (rows = truth, cols = prediction).
struct ConfusionMatrix {
    Eigen::MatrixXd counts;  // K x K, nonnegative integers stored as doubles
    int K = 0;

    static ConfusionMatrix from_labels(const std::vector<int>& y_true,
                                       const std::vector<int>& y_pred, int k);
    double total() const { return counts.sum(); }
};

/// Macro-averaged F1 in percent. A class with no true and no predicted
/// samples contributes F1 = 0.
double macro_f1(const ConfusionMatrix& cm);

/**
 * Matthews correlation coefficient in percent. K=2 uses the classical binary
 * formula; K>2 the multiclass correlation generalization. A zero denominator
 * (e.g. all predictions in one class) yields 0 by convention.
 */
double mcc(const ConfusionMatrix& cm);

/**
 * Two-sided paired t-test p-value on differences a-b, t distribution with
 * n-1 degrees of freedom. Zero-variance differences: p = 1 when the mean
 * difference is 0, else p = 0 (degenerate).
 */
double paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct TukeyResult {
    Eigen::MatrixXd p;       // symmetric pairwise p-values, unit diagonal
    bool degenerate = false; // zero pooled within-group variance
};

/**
 * Tukey's HSD: pairwise p-values from the studentized range distribution with
 * the within-group mean square pooled across all groups (Tukey-Kramer form
 * for unequal group sizes). Each group needs >= 2 observations.
 */
TukeyResult tukey_hsd(const std::vector<std::vector<double>>& groups);

/// Student's t CDF (regularized incomplete beta).
double student_t_cdf(double t, double df);

/// CDF of the studentized range with k groups and df degrees of freedom,
/// evaluated by nested Gauss-Legendre quadrature (absolute accuracy ~1e-4,
/// in practice better; see tests).
double studentized_range_cdf(double q, int k, double df);

}  // namespace lcenclf
