#include "lcenclf/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace lcenclf {

ConfusionMatrix ConfusionMatrix::from_labels(const std::vector<int>& y_true,
                                             const std::vector<int>& y_pred, int k) {
    if (y_true.size() != y_pred.size()) {
        throw std::runtime_error("confusion matrix: label vectors differ in length");
    }
    ConfusionMatrix cm;
    cm.K = k;
    cm.counts = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if (t < 0 || t >= k || p < 0 || p >= k) {
            throw std::runtime_error("confusion matrix: label outside [0, K)");
        }
        cm.counts(t, p) += 1.0;
    }
    return cm;
}

double macro_f1(const ConfusionMatrix& cm) {
    if (cm.K < 2 || cm.total() == 0.0) {
        throw std::runtime_error("macro_f1: empty confusion matrix");
    }
    double sum = 0.0;
    for (int c = 0; c < cm.K; ++c) {
        const double tp = cm.counts(c, c);
        const double actual = cm.counts.row(c).sum();
        const double predicted = cm.counts.col(c).sum();
        const double precision = predicted > 0.0 ? tp / predicted : 0.0;
        const double recall = actual > 0.0 ? tp / actual : 0.0;
        const double f1 = (precision + recall) > 0.0
                              ? 2.0 * precision * recall / (precision + recall)
                              : 0.0;
        sum += f1;
    }
    return 100.0 * sum / static_cast<double>(cm.K);
}

double mcc(const ConfusionMatrix& cm) {
    if (cm.K < 2 || cm.total() == 0.0) {
        throw std::runtime_error("mcc: empty confusion matrix");
    }
    if (cm.K == 2) {
        const double tn = cm.counts(0, 0), fp = cm.counts(0, 1);
        const double fn = cm.counts(1, 0), tp = cm.counts(1, 1);
        const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
        if (denom <= 0.0) return 0.0;
        return 100.0 * (tp * tn - fp * fn) / std::sqrt(denom);
    }
    const double s = cm.total();
    const double c = cm.counts.trace();
    const Eigen::VectorXd t = cm.counts.rowwise().sum();
    const Eigen::VectorXd p = cm.counts.colwise().sum();
    const double num = c * s - t.dot(p);
    const double d1 = s * s - p.squaredNorm();
    const double d2 = s * s - t.squaredNorm();
    if (d1 <= 0.0 || d2 <= 0.0) return 0.0;
    return 100.0 * num / std::sqrt(d1 * d2);
}

namespace {

/// Regularized incomplete beta I_x(a,b), Lentz continued fraction.
double betainc(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);

    auto continued_fraction = [](double a_, double b_, double x_) {
        const double tiny = 1e-300;
        double c = 1.0;
        double d = 1.0 - (a_ + b_) * x_ / (a_ + 1.0);
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 300; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (b_ - m) * x_ / ((a_ + m2 - 1.0) * (a_ + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(a_ + m) * (a_ + b_ + m) * x_ / ((a_ + m2) * (a_ + m2 + 1.0));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < 1e-15) break;
        }
        return h;
    };

    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(ln_front) * continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     continued_fraction(b, a, 1.0 - x) / b;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

// 10-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {
    0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
    0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGlWeights = {
    0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

template <typename F>
double gauss_legendre(F&& f, double lo, double hi, int segments) {
    double total = 0.0;
    const double width = (hi - lo) / segments;
    for (int s = 0; s < segments; ++s) {
        const double mid = lo + (s + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            total += kGlWeights[i] * (f(mid - half * kGlNodes[i]) + f(mid + half * kGlNodes[i]));
        }
        // weights sum to 2 over [-1,1]; scale by half-width
    }
    return total * 0.5 * width;
}

/// CDF of the range of k iid standard normals.
double normal_range_cdf(double w, int k) {
    if (w <= 0.0) return 0.0;
    auto integrand = [&](double z) {
        return normal_pdf(z) * std::pow(normal_cdf(z) - normal_cdf(z - w), k - 1);
    };
    return k * gauss_legendre(integrand, -9.0, 9.0, 36);
}

}  // namespace

double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw std::runtime_error("student_t_cdf: df must be positive");
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * betainc(0.5 * df, 0.5, x);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

double studentized_range_cdf(double q, int k, double df) {
    if (k < 2 || df < 1.0) {
        throw std::runtime_error("studentized_range_cdf: need k >= 2, df >= 1");
    }
    if (q <= 0.0) return 0.0;

    // Integrate the range CDF against the density of s = chi_df / sqrt(df).
    const double ln_norm = 0.5 * df * std::log(0.5 * df) - std::lgamma(0.5 * df) +
                           std::log(2.0);
    auto outer = [&](double s) {
        const double ln_dens = ln_norm + (df - 1.0) * std::log(s) - 0.5 * df * s * s;
        return std::exp(ln_dens) * normal_range_cdf(q * s, k);
    };
    // The density mass concentrates near s = 1 with spread ~df^-1/2; [0, 5]
    // covers df >= 1 to well below the documented 1e-4 accuracy.
    const double p = gauss_legendre(outer, 1e-12, 5.0, 50);
    return std::min(1.0, std::max(0.0, p));
}

double paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::runtime_error("paired_t_test: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw std::runtime_error("paired_t_test: need at least 2 pairs");

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i] - mean;
        ss += d * d;
    }
    if (ss == 0.0) {
        return mean == 0.0 ? 1.0 : 0.0;  // degenerate: identical differences
    }
    const double se = std::sqrt(ss / static_cast<double>(n - 1)) /
                      std::sqrt(static_cast<double>(n));
    const double t = mean / se;
    return 2.0 * (1.0 - student_t_cdf(std::abs(t), static_cast<double>(n - 1)));
}

TukeyResult tukey_hsd(const std::vector<std::vector<double>>& groups) {
    const int g = static_cast<int>(groups.size());
    if (g < 2) throw std::runtime_error("tukey_hsd: need at least 2 groups");

    long total_n = 0;
    std::vector<double> means(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        if (groups[static_cast<std::size_t>(i)].size() < 2) {
            throw std::runtime_error("tukey_hsd: every group needs >= 2 observations");
        }
        total_n += static_cast<long>(groups[static_cast<std::size_t>(i)].size());
        double m = 0.0;
        for (const double v : groups[static_cast<std::size_t>(i)]) m += v;
        means[static_cast<std::size_t>(i)] = m / groups[static_cast<std::size_t>(i)].size();
    }
    const double df = static_cast<double>(total_n - g);
    double ssw = 0.0;
    for (int i = 0; i < g; ++i) {
        for (const double v : groups[static_cast<std::size_t>(i)]) {
            const double d = v - means[static_cast<std::size_t>(i)];
            ssw += d * d;
        }
    }
    const double msw = ssw / df;

    TukeyResult result;
    result.p = Eigen::MatrixXd::Ones(g, g);
    if (msw == 0.0) {
        result.degenerate = true;
        for (int i = 0; i < g; ++i) {
            for (int j = i + 1; j < g; ++j) {
                const double p = (means[static_cast<std::size_t>(i)] ==
                                  means[static_cast<std::size_t>(j)]) ? 1.0 : 0.0;
                result.p(i, j) = result.p(j, i) = p;
            }
        }
        return result;
    }
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) {
            const double ni = static_cast<double>(groups[static_cast<std::size_t>(i)].size());
            const double nj = static_cast<double>(groups[static_cast<std::size_t>(j)].size());
            const double se = std::sqrt(0.5 * msw * (1.0 / ni + 1.0 / nj));
            const double q = std::abs(means[static_cast<std::size_t>(i)] -
                                      means[static_cast<std::size_t>(j)]) / se;
            const double p = 1.0 - studentized_range_cdf(q, g, df);
            result.p(i, j) = result.p(j, i) = std::max(0.0, p);
        }
    }
    return result;
}

}  // namespace lcenclf
