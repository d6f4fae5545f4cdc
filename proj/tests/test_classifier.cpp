#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include <gmeta/classifier.hpp>

using namespace gmeta;
using namespace gmeta::classifier;

namespace {

struct Blobs {
    RowMatrix x;
    LabelVector y;
};

Blobs blobs(std::size_t n, double gap, std::uint64_t seed, int classes = 2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    RowMatrix x(static_cast<Eigen::Index>(n), 3);
    std::vector<int> lab(n);
    for (std::size_t i = 0; i < n; ++i) {
        lab[i] = static_cast<int>(i % static_cast<std::size_t>(classes));
        const auto r = static_cast<Eigen::Index>(i);
        for (int k = 0; k < 3; ++k) x(r, k) = nd(rng);
        x(r, lab[i] % 3) += gap;
    }
    return {x, LabelVector(lab, classes)};
}

} // namespace

TEST(Split, SizesAndPartition) {
    const auto s = make_split(100, 7);
    EXPECT_EQ(s.train.size(), 60u);
    EXPECT_EQ(s.val.size(), 20u);
    EXPECT_EQ(s.test.size(), 20u);
    std::set<NodeId> all(s.train.begin(), s.train.end());
    all.insert(s.val.begin(), s.val.end());
    all.insert(s.test.begin(), s.test.end());
    EXPECT_EQ(all.size(), 100u);
    EXPECT_EQ(*all.rbegin(), 99u);
}

TEST(Split, DeterministicPerSeed) {
    EXPECT_EQ(make_split(50, 3).train, make_split(50, 3).train);
    EXPECT_NE(make_split(50, 3).train, make_split(50, 4).train);
}

TEST(Split, InvalidRatiosThrow) {
    EXPECT_THROW(make_split(10, 1, {0.5, 0.5, 0.5}), DomainError);
    EXPECT_THROW(make_split(10, 1, {1.2, -0.1, -0.1}), DomainError);
}

TEST(SplitProperty, PartitionForRandomSizes) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = rng() % 500;
        const auto s = make_split(n, rng());
        std::vector<NodeId> all = s.train;
        all.insert(all.end(), s.val.begin(), s.val.end());
        all.insert(all.end(), s.test.begin(), s.test.end());
        std::sort(all.begin(), all.end());
        ASSERT_EQ(all.size(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(all[i], i);
    }
}

TEST(Classifier, SeparatedBlobsReachHighAccuracy) {
    const auto b = blobs(600, 6.0, 1);
    const auto a = train_proxy_classifier(b.x, b.y, make_split(600, 2));
    EXPECT_GT(a.train, 0.99);
    EXPECT_GT(a.test, 0.98);
}

TEST(Classifier, ThreeClasses) {
    const auto b = blobs(900, 6.0, 2, 3);
    EXPECT_GT(train_proxy_classifier(b.x, b.y, make_split(900, 3)).test, 0.97);
}

TEST(Classifier, PureNoiseNearChance) {
    double sum = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto b = blobs(500, 0.0, 100 + s);
        sum += train_proxy_classifier(b.x, b.y, make_split(500, s)).test;
    }
    EXPECT_NEAR(sum / 20, 0.5, 0.05);
}

TEST(Classifier, DeterministicAndScaleInvariantWhenStandardized) {
    const auto b = blobs(300, 1.5, 4);
    const auto split = make_split(300, 5);
    const auto a1 = train_proxy_classifier(b.x, b.y, split);
    const auto a2 = train_proxy_classifier(b.x, b.y, split);
    EXPECT_EQ(a1.test, a2.test);
    EXPECT_EQ(a1.val, a2.val);
    RowMatrix shifted = (b.x.array() * 1000.0 + 7.0).matrix();
    const auto a3 = train_proxy_classifier(shifted, b.y, split);
    EXPECT_NEAR(a3.test, a1.test, 1e-12);
}

TEST(Classifier, DegenerateInputsThrow) {
    const auto b = blobs(20, 1.0, 6);
    Split s = make_split(20, 1);
    Split no_test = s;
    no_test.test.clear();
    EXPECT_THROW(train_proxy_classifier(b.x, b.y, no_test), DomainError);
    Split one_class;
    one_class.train = {0, 2, 4};
    one_class.test = {1};
    EXPECT_THROW(train_proxy_classifier(b.x, b.y, one_class), DomainError);
    EXPECT_THROW(train_proxy_classifier(b.x.topRows(10), b.y, s), DomainError);
}

TEST(Classifier, ConstantFeatureColumnIsHarmless) {
    auto b = blobs(400, 5.0, 7);
    b.x.col(2).setConstant(3.0);
    EXPECT_GT(train_proxy_classifier(b.x, b.y, make_split(400, 8)).test, 0.95);
}
