#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include <gmeta/error.hpp>
#include <gmeta/graph.hpp>
#include <gmeta/random.hpp>

namespace gmeta::classifier {

struct Split {
    std::vector<NodeId> train, val, test;
};

/// Seeded shuffle partitioned by the given ratios (default 3:1:1).
inline Split make_split(std::size_t n, std::uint64_t seed, std::array<double, 3> ratios = {0.6, 0.2, 0.2}) {
    const double total = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(total - 1.0) > 1e-9 || *std::min_element(ratios.begin(), ratios.end()) < 0)
        throw DomainError("split ratios must be non-negative and sum to 1");
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    Rng rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(ratios[0] * static_cast<double>(n)));
    const auto n_val = std::min(n - n_train, static_cast<std::size_t>(std::llround(ratios[1] * static_cast<double>(n))));
    Split s;
    s.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.val.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    s.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), ids.end());
    return s;
}

struct Config {
    int epochs = 500;
    double step = 0.1;
    double l2 = 1e-4;
    bool standardize = true; ///< z-score features with training statistics
};

struct Accuracy {
    double train = 0;
    double val = 0;
    double test = 0;
};

/**
 * Multinomial logistic regression trained by full-batch gradient descent
 * from zero weights. Deterministic: no randomness beyond the split.
 */
inline Accuracy train_proxy_classifier(const RowMatrix& x, const LabelVector& y, const Split& split,
                                       const Config& cfg = {}) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) throw DomainError("feature rows differ from label count");
    if (split.train.empty() || split.test.empty()) throw DomainError("degenerate split: empty train or test set");
    const int C = y.num_classes;
    {
        std::vector<char> seen(static_cast<std::size_t>(C), 0);
        for (NodeId i : split.train) seen[static_cast<std::size_t>(y[i])] = 1;
        if (std::count(seen.begin(), seen.end(), 1) < 2) throw DomainError("degenerate split: fewer than two classes in train");
    }
    const auto d = x.cols();
    Eigen::RowVectorXd center = Eigen::RowVectorXd::Zero(d), scale = Eigen::RowVectorXd::Ones(d);
    auto gather = [&](const std::vector<NodeId>& ids) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(ids.size()), d);
        for (std::size_t k = 0; k < ids.size(); ++k) m.row(static_cast<Eigen::Index>(k)) = x.row(ids[k]);
        return m;
    };
    Eigen::MatrixXd xtr = gather(split.train);
    if (cfg.standardize) {
        center = xtr.colwise().mean();
        for (Eigen::Index j = 0; j < d; ++j) {
            const double sd = std::sqrt((xtr.col(j).array() - center[j]).square().mean());
            scale[j] = sd > 0 ? sd : 1.0;
        }
    }
    auto prep = [&](Eigen::MatrixXd m) {
        m.rowwise() -= center;
        m.array().rowwise() /= scale.array();
        return m;
    };
    xtr = prep(std::move(xtr));
    const auto nt = xtr.rows();
    Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(nt, C);
    for (Eigen::Index k = 0; k < nt; ++k) onehot(k, y[split.train[static_cast<std::size_t>(k)]]) = 1.0;

    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(d, C);
    Eigen::RowVectorXd b = Eigen::RowVectorXd::Zero(C);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Eigen::MatrixXd logits = xtr * W;
        logits.rowwise() += b;
        Eigen::VectorXd mx = logits.rowwise().maxCoeff();
        Eigen::MatrixXd prob = (logits.colwise() - mx).array().exp().matrix();
        Eigen::VectorXd z = prob.rowwise().sum();
        prob.array().colwise() /= z.array();
        const Eigen::MatrixXd err = (prob - onehot) / static_cast<double>(nt);
        W -= cfg.step * (xtr.transpose() * err + cfg.l2 * W);
        b -= cfg.step * err.colwise().sum();
    }
    auto accuracy = [&](const std::vector<NodeId>& ids) {
        if (ids.empty()) return 0.0;
        Eigen::MatrixXd logits = prep(gather(ids)) * W;
        logits.rowwise() += b;
        std::size_t hit = 0;
        for (Eigen::Index k = 0; k < logits.rows(); ++k) {
            Eigen::Index arg;
            logits.row(k).maxCoeff(&arg);
            if (static_cast<int>(arg) == y[ids[static_cast<std::size_t>(k)]]) ++hit;
        }
        return static_cast<double>(hit) / static_cast<double>(ids.size());
    };
    return {accuracy(split.train), accuracy(split.val), accuracy(split.test)};
}

} // namespace gmeta::classifier
