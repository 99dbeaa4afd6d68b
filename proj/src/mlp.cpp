#include "lcenclf/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lcenclf/metrics.hpp"
#include "lcenclf/rng.hpp"

namespace lcenclf {

namespace {

inline double activate(double x, Activation act) {
    return act == Activation::relu ? (x > 0.0 ? x : 0.0) : x - std::tanh(x);
}

inline double activate_grad(double pre, Activation act) {
    if (act == Activation::relu) return pre > 0.0 ? 1.0 : 0.0;
    const double t = std::tanh(pre);
    return t * t;  // d/dx (x - tanh x)
}

Eigen::MatrixXd row_softmax(const Eigen::MatrixXd& logits) {
    Eigen::MatrixXd probs(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double m = logits.row(i).maxCoeff();
        const Eigen::ArrayXd e = (logits.row(i).array() - m).exp();
        probs.row(i) = (e / e.sum()).matrix();
    }
    return probs;
}

Eigen::VectorXd effective_weights(const Eigen::VectorXd& class_weights, int k) {
    if (class_weights.size() == 0) return Eigen::VectorXd::Ones(k);
    if (class_weights.size() != k) {
        throw std::runtime_error("class_weights length must equal the class count");
    }
    return class_weights;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> mlp_forward(const TrainedMlp& net,
                                                        const Eigen::MatrixXd& batch) {
    if (batch.cols() != net.input_size) {
        throw std::runtime_error("mlp_forward: input size mismatch");
    }
    Eigen::MatrixXd a = batch;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        Eigen::MatrixXd z = a * net.weights[l];
        z.rowwise() += net.biases[l].transpose();
        if (l + 1 < net.weights.size()) {
            for (Eigen::Index i = 0; i < z.rows(); ++i) {
                for (Eigen::Index j = 0; j < z.cols(); ++j) {
                    z(i, j) = activate(z(i, j), net.spec.activation);
                }
            }
        }
        a = std::move(z);
    }
    return {a, row_softmax(a)};
}

LossValue weighted_ce_loss(const Eigen::MatrixXd& probs, const std::vector<int>& labels,
                           const Eigen::VectorXd& class_weights) {
    const Eigen::Index n = probs.rows();
    const int k = static_cast<int>(probs.cols());
    if (static_cast<std::size_t>(n) != labels.size()) {
        throw std::runtime_error("weighted_ce_loss: size mismatch");
    }
    const Eigen::VectorXd w = effective_weights(class_weights, k);

    LossValue out;
    out.grad_logits.resize(n, k);
    double weight_total = 0.0;
    for (const int y : labels) weight_total += w(y);

    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int y = labels[static_cast<std::size_t>(i)];
        double p = probs(i, y);
        if (p < 1e-12) {
            p = 1e-12;
            out.flagged = true;
        }
        const double coeff = w(y) / weight_total;
        loss += coeff * (-std::log(p));
        for (int c = 0; c < k; ++c) {
            out.grad_logits(i, c) = coeff * (probs(i, c) - (c == y ? 1.0 : 0.0));
        }
    }
    out.value = loss;
    return out;
}

LossValue diffmcc_loss(const Eigen::MatrixXd& probs, const std::vector<int>& labels,
                       const Eigen::VectorXd& class_weights, double gamma) {
    const Eigen::Index n = probs.rows();
    const int k = static_cast<int>(probs.cols());
    if (static_cast<std::size_t>(n) != labels.size()) {
        throw std::runtime_error("diffmcc_loss: size mismatch");
    }
    if (gamma < 0.0) throw std::runtime_error("diffmcc_loss: gamma must be >= 0");
    const std::set<int> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) {
        throw std::runtime_error(
            "diffmcc_loss: single-class batch; use a stratified batch sampler");
    }
    const Eigen::VectorXd w = effective_weights(class_weights, k);

    LossValue out;
    out.grad_logits = Eigen::MatrixXd::Zero(n, k);

    // Soft confusion matrix; focal factor (1-p_true)^gamma per sample.
    Eigen::VectorXd focal(n);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int y = labels[static_cast<std::size_t>(i)];
        focal(i) = std::pow(std::max(0.0, 1.0 - probs(i, y)), gamma);
        C.row(y) += w(y) * focal(i) * probs.row(i);
    }
    const double total = C.sum();
    if (total <= 0.0) {
        // Every sample is exactly one-hot correct: the perfect-prediction limit.
        out.value = 0.0;
        return out;
    }

    // MCC is scale invariant; normalize for numerical headroom.
    const Eigen::MatrixXd Cn = C / total;
    const double trace = Cn.trace();
    const Eigen::VectorXd t = Cn.rowwise().sum();
    const Eigen::VectorXd p = Cn.colwise().sum();
    const double num = trace - t.dot(p);
    const double d1 = 1.0 - p.squaredNorm();
    const double d2 = 1.0 - t.squaredNorm();
    if (d1 <= 1e-12 || d2 <= 1e-12) {
        out.value = 1.0;
        out.flagged = true;  // degenerate denominator: zero gradient
        return out;
    }
    const double denom = std::sqrt(d1 * d2);
    const double mcc_soft = num / denom;
    out.value = 1.0 - mcc_soft;

    // d MCC / d Cn, then back through the normalization (MCC is homogeneous
    // of degree 0 in C, so dMCC/dC = (dMCC/dCn) / total).
    Eigen::MatrixXd dmcc(k, k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            const double dnum = (r == c ? 1.0 : 0.0) + trace - p(r) - t(c);
            const double dd1 = 2.0 - 2.0 * p(c);
            const double dd2 = 2.0 - 2.0 * t(r);
            dmcc(r, c) = dnum / denom -
                         num * (dd1 * d2 + d1 * dd2) / (2.0 * denom * d1 * d2);
        }
    }
    const Eigen::MatrixXd dloss_dC = -dmcc / total;

    // Chain rule through the per-sample contributions and the softmax.
    Eigen::VectorXd dloss_dp(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int y = labels[static_cast<std::size_t>(i)];
        const double resid = std::max(0.0, 1.0 - probs(i, y));
        double focal_grad = 0.0;
        if (gamma > 0.0 && resid > 0.0) {
            focal_grad = gamma * std::pow(resid, gamma - 1.0);
        }
        const double row_dot = dloss_dC.row(y).dot(probs.row(i));
        for (int m = 0; m < k; ++m) {
            dloss_dp(m) = w(y) * focal(i) * dloss_dC(y, m);
            if (m == y) dloss_dp(m) -= w(y) * focal_grad * row_dot;
        }
        const double inner = dloss_dp.dot(probs.row(i).transpose());
        for (int c = 0; c < k; ++c) {
            out.grad_logits(i, c) = probs(i, c) * (dloss_dp(c) - inner);
        }
    }
    return out;
}

double lr_at_epoch(const MlpSpec& spec, int epoch) {
    if (epoch < spec.warmup_epochs) {
        return spec.lr * static_cast<double>(epoch + 1) /
               static_cast<double>(spec.warmup_epochs);
    }
    const double floor = spec.lr * spec.lr_floor_ratio;
    const int span = spec.epochs - 1 - spec.warmup_epochs;
    const double progress =
        span > 0 ? static_cast<double>(epoch - spec.warmup_epochs) / span : 1.0;
    return floor + 0.5 * (spec.lr - floor) * (1.0 + std::cos(M_PI * progress));
}

long mlp_param_count(int input_size, const std::vector<int>& hidden_sizes, int n_classes) {
    long count = 0;
    int fan_in = input_size;
    for (const int h : hidden_sizes) {
        count += static_cast<long>(fan_in) * h + h;
        fan_in = h;
    }
    count += static_cast<long>(fan_in) * n_classes + n_classes;
    return count;
}

namespace {

/// Class-stratified batch assignment: per-class shuffled indices are dealt
/// round-robin across ceil(n / batch_size) buckets, so every batch carries the
/// class mix. Single-class buckets (possible with rare classes and many small
/// batches) are repaired by a swap with a donor bucket, or merged away.
std::vector<std::vector<int>> stratified_batches(const std::vector<int>& y, int n_classes,
                                                 int batch_size, Rng& rng) {
    const int n = static_cast<int>(y.size());
    const int n_batches = std::max(1, (n + batch_size - 1) / batch_size);
    std::vector<std::vector<int>> per_class(static_cast<std::size_t>(n_classes));
    for (int i = 0; i < n; ++i) per_class[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])].push_back(i);
    for (auto& members : per_class) rng.shuffle(members);

    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(n_batches));
    int counter = 0;
    for (const auto& members : per_class) {
        for (const int idx : members) {
            buckets[static_cast<std::size_t>(counter % n_batches)].push_back(idx);
            ++counter;
        }
    }

    auto distinct_classes = [&](const std::vector<int>& bucket) {
        std::set<int> classes;
        for (const int idx : bucket) classes.insert(y[static_cast<std::size_t>(idx)]);
        return classes.size();
    };
    auto count_not = [&](const std::vector<int>& bucket, int cls) {
        std::size_t count = 0;
        for (const int idx : bucket) count += (y[static_cast<std::size_t>(idx)] != cls) ? 1 : 0;
        return count;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t b = 0; b < buckets.size(); ++b) {
            if (buckets.size() < 2) break;
            if (buckets[b].size() >= 2 && distinct_classes(buckets[b]) >= 2) continue;
            const int own = y[static_cast<std::size_t>(buckets[b].front())];
            bool swapped = false;
            for (std::size_t d = 0; d < buckets.size() && !swapped; ++d) {
                if (d == b || count_not(buckets[d], own) < 2) continue;
                for (std::size_t pos = 0; pos < buckets[d].size(); ++pos) {
                    if (y[static_cast<std::size_t>(buckets[d][pos])] != own &&
                        buckets[b].size() >= 2) {
                        std::swap(buckets[d][pos], buckets[b].back());
                        swapped = true;
                        break;
                    }
                }
            }
            if (!swapped) {
                // no safe donor: fold this bucket into its neighbour
                const std::size_t dst = (b == 0) ? 1 : b - 1;
                buckets[dst].insert(buckets[dst].end(), buckets[b].begin(), buckets[b].end());
                buckets.erase(buckets.begin() + static_cast<long>(b));
            }
            changed = true;
            break;
        }
    }
    return buckets;
}

struct AdamState {
    std::vector<Eigen::MatrixXd> mw, vw;
    std::vector<Eigen::VectorXd> mb, vb;
    long step = 0;
};

void adamw_update(TrainedMlp& net, AdamState& state,
                  const std::vector<Eigen::MatrixXd>& grad_w,
                  const std::vector<Eigen::VectorXd>& grad_b, double lr,
                  double weight_decay) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    ++state.step;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        state.mw[l] = beta1 * state.mw[l] + (1.0 - beta1) * grad_w[l];
        state.vw[l] = beta2 * state.vw[l].array().matrix() +
                      (1.0 - beta2) * grad_w[l].array().square().matrix();
        const Eigen::ArrayXXd mhat = state.mw[l].array() / bc1;
        const Eigen::ArrayXXd vhat = state.vw[l].array() / bc2;
        net.weights[l].array() -=
            lr * (mhat / (vhat.sqrt() + eps) + weight_decay * net.weights[l].array());

        state.mb[l] = beta1 * state.mb[l] + (1.0 - beta1) * grad_b[l];
        state.vb[l] = beta2 * state.vb[l].array().matrix() +
                      (1.0 - beta2) * grad_b[l].array().square().matrix();
        const Eigen::ArrayXd mbh = state.mb[l].array() / bc1;
        const Eigen::ArrayXd vbh = state.vb[l].array() / bc2;
        net.biases[l].array() -= lr * (mbh / (vbh.sqrt() + eps));
    }
}

}  // namespace

TrainedMlp train_mlp(const MlpSpec& spec, const Dataset& train, const Dataset& val) {
    if (spec.hidden_sizes.empty() || spec.hidden_sizes.size() > 3) {
        throw std::runtime_error("train_mlp: 1-3 hidden layers required");
    }
    if (spec.loss == MlpLoss::diffmcc && spec.gamma != 1.0 && spec.gamma != 1.5 &&
        spec.gamma != 2.0) {
        throw std::runtime_error("train_mlp: diffmcc gamma must be one of 1.0, 1.5, 2.0");
    }
    const int k = train.n_classes();
    const int input = static_cast<int>(train.n_features());
    const Eigen::VectorXd class_w = effective_weights(
        Eigen::Map<const Eigen::VectorXd>(spec.class_weights.data(),
                                          static_cast<Eigen::Index>(spec.class_weights.size())),
        k);

    TrainedMlp net;
    net.spec = spec;
    net.input_size = input;
    net.n_classes = k;
    net.param_count = mlp_param_count(input, spec.hidden_sizes, k);

    Rng rng(spec.seed);
    std::vector<int> sizes;
    sizes.push_back(input);
    sizes.insert(sizes.end(), spec.hidden_sizes.begin(), spec.hidden_sizes.end());
    sizes.push_back(k);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int fan_in = sizes[l];
        const int fan_out = sizes[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        Eigen::MatrixXd w(fan_in, fan_out);
        for (int r = 0; r < fan_in; ++r) {
            for (int c = 0; c < fan_out; ++c) w(r, c) = rng.next_uniform(-bound, bound);
        }
        Eigen::VectorXd b(fan_out);
        for (int c = 0; c < fan_out; ++c) b(c) = rng.next_uniform(-bound, bound);
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
    }

    AdamState adam;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        adam.mw.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
        adam.vw.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
        adam.mb.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
        adam.vb.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
    }

    const std::size_t n_layers = net.weights.size();
    std::vector<Eigen::MatrixXd> best_w = net.weights;
    std::vector<Eigen::VectorXd> best_b = net.biases;
    double best_f1 = -1.0;
    int best_epoch = -1;

    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        const double lr = lr_at_epoch(spec, epoch);
        const auto batches = stratified_batches(train.y, k, spec.batch_size, rng);
        double epoch_loss = 0.0;

        for (const auto& batch_idx : batches) {
            if (batch_idx.empty()) continue;
            const Eigen::Index nb = static_cast<Eigen::Index>(batch_idx.size());
            Eigen::MatrixXd x(nb, input);
            std::vector<int> yb(batch_idx.size());
            for (Eigen::Index i = 0; i < nb; ++i) {
                x.row(i) = train.X.row(batch_idx[static_cast<std::size_t>(i)]);
                yb[static_cast<std::size_t>(i)] = train.y[static_cast<std::size_t>(batch_idx[static_cast<std::size_t>(i)])];
            }

            // forward with cached pre-activations
            std::vector<Eigen::MatrixXd> activations;  // a0 = x, a1..aL
            std::vector<Eigen::MatrixXd> pre;          // z1..zL
            activations.push_back(x);
            for (std::size_t l = 0; l < n_layers; ++l) {
                Eigen::MatrixXd z = activations.back() * net.weights[l];
                z.rowwise() += net.biases[l].transpose();
                pre.push_back(z);
                if (l + 1 < n_layers) {
                    Eigen::MatrixXd a = z;
                    for (Eigen::Index i = 0; i < a.rows(); ++i) {
                        for (Eigen::Index j = 0; j < a.cols(); ++j) {
                            a(i, j) = activate(a(i, j), spec.activation);
                        }
                    }
                    activations.push_back(std::move(a));
                } else {
                    activations.push_back(z);
                }
            }
            const Eigen::MatrixXd probs = row_softmax(activations.back());

            const LossValue loss =
                spec.loss == MlpLoss::weighted_ce
                    ? weighted_ce_loss(probs, yb, class_w)
                    : diffmcc_loss(probs, yb, class_w, spec.gamma);
            if (!std::isfinite(loss.value)) {
                throw std::runtime_error("train_mlp: non-finite loss at epoch " +
                                         std::to_string(epoch));
            }
            epoch_loss += loss.value * static_cast<double>(nb) /
                          static_cast<double>(train.n_samples());

            // backward
            std::vector<Eigen::MatrixXd> grad_w(n_layers);
            std::vector<Eigen::VectorXd> grad_b(n_layers);
            Eigen::MatrixXd delta = loss.grad_logits;
            for (std::size_t l = n_layers; l-- > 0;) {
                grad_w[l] = activations[l].transpose() * delta;
                grad_b[l] = delta.colwise().sum();
                if (l > 0) {
                    Eigen::MatrixXd prev = delta * net.weights[l].transpose();
                    for (Eigen::Index i = 0; i < prev.rows(); ++i) {
                        for (Eigen::Index j = 0; j < prev.cols(); ++j) {
                            prev(i, j) *= activate_grad(pre[l - 1](i, j), spec.activation);
                        }
                    }
                    delta = std::move(prev);
                }
            }
            adamw_update(net, adam, grad_w, grad_b, lr, spec.weight_decay);
        }
        net.train_loss_curve.push_back(epoch_loss);

        const auto [logits, val_probs] = mlp_forward(net, val.X);
        std::vector<int> pred(static_cast<std::size_t>(val_probs.rows()));
        for (Eigen::Index i = 0; i < val_probs.rows(); ++i) {
            Eigen::Index arg = 0;
            val_probs.row(i).maxCoeff(&arg);
            pred[static_cast<std::size_t>(i)] = static_cast<int>(arg);
        }
        const double f1 = macro_f1(ConfusionMatrix::from_labels(val.y, pred, k));
        if (f1 >= best_f1) {  // ties keep the most-trained weights
            best_f1 = f1;
            best_epoch = epoch;
            best_w = net.weights;
            best_b = net.biases;
        }
    }

    net.weights = std::move(best_w);
    net.biases = std::move(best_b);
    net.best_val_f1 = best_f1;
    net.best_epoch = best_epoch;
    return net;
}

std::string save_checkpoint(const TrainedMlp& net) {
    std::ostringstream out;
    out << "mlpckpt v1\n";
    out << net.input_size << " " << net.n_classes << " " << net.weights.size() << " "
        << (net.spec.activation == Activation::relu ? "relu" : "tanhshrink") << "\n";
    char buf[48];
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const auto& w = net.weights[l];
        out << w.rows() << " " << w.cols() << "\n";
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%a", w(r, c));
                out << buf << (c + 1 == w.cols() ? "" : " ");
            }
            out << "\n";
        }
        for (Eigen::Index c = 0; c < net.biases[l].size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%a", net.biases[l](c));
            out << buf << (c + 1 == net.biases[l].size() ? "" : " ");
        }
        out << "\n";
    }
    return out.str();
}

TrainedMlp load_checkpoint(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "mlpckpt" || version != "v1") {
        throw std::runtime_error("load_checkpoint: unrecognized header");
    }
    TrainedMlp net;
    std::size_t n_layers = 0;
    std::string activation;
    in >> net.input_size >> net.n_classes >> n_layers >> activation;
    net.spec.activation = activation == "relu" ? Activation::relu : Activation::tanhshrink;
    for (std::size_t l = 0; l < n_layers; ++l) {
        Eigen::Index rows = 0, cols = 0;
        in >> rows >> cols;
        Eigen::MatrixXd w(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) {
                std::string tok;
                in >> tok;
                w(r, c) = std::strtod(tok.c_str(), nullptr);
            }
        }
        Eigen::VectorXd b(cols);
        for (Eigen::Index c = 0; c < cols; ++c) {
            std::string tok;
            in >> tok;
            b(c) = std::strtod(tok.c_str(), nullptr);
        }
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
        if (l + 1 < n_layers) {
            net.spec.hidden_sizes.push_back(static_cast<int>(cols));
        }
    }
    if (!in) throw std::runtime_error("load_checkpoint: truncated payload");
    net.param_count = mlp_param_count(net.input_size, net.spec.hidden_sizes, net.n_classes);
    return net;
}

}  // namespace lcenclf
