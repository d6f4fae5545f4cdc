#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <gmeta/msglasso.hpp>

using namespace gmeta;
using namespace gmeta::msglasso;

namespace {

MatrixXd gaussian(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = nd(rng);
    return m;
}

std::vector<std::string> names(const char* prefix, Eigen::Index k) {
    std::vector<std::string> v;
    for (Eigen::Index i = 0; i < k; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

MetadataTable table(MatrixXd X, MatrixXd Y) {
    MetadataTable t;
    t.x_names = names("x", X.cols());
    t.y_names = names("y", Y.cols());
    t.row_names = names("d", X.rows());
    t.X = std::move(X);
    t.Y = std::move(Y);
    return t;
}

/// Standardized random instance; the default shape mirrors a small metadata study.
MetadataTable random_instance(std::mt19937_64& rng, Eigen::Index n = 20, Eigen::Index p = 15, Eigen::Index q = 7) {
    return standardize(table(gaussian(n, p, rng), gaussian(n, q, rng))).first;
}

MatrixXd ols(const MetadataTable& t) { return (t.X.transpose() * t.X).ldlt().solve(t.X.transpose() * t.Y); }

double soft(double v, double t) { return std::copysign(std::max(std::abs(v) - t, 0.0), v); }

} // namespace

TEST(Standardize, SymmetricColumn) {
    MatrixXd X(3, 1), Y(3, 1);
    X << 1, 2, 3;
    Y << 0, 5, 1;
    auto [t, s] = standardize(table(X, Y));
    EXPECT_NEAR(t.X(0, 0), -t.X(2, 0), 1e-15);
    EXPECT_NEAR(t.X(1, 0), 0.0, 1e-15);
    EXPECT_NEAR(t.X(2, 0), 1.0, 1e-15); // sample sd of [1,2,3] is 1
    EXPECT_DOUBLE_EQ(s.x_center[0], 2.0);
    EXPECT_DOUBLE_EQ(s.x_scale[0], 1.0);
}

TEST(Standardize, MeanZeroUnitSdAndIdempotent) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        MatrixXd X = gaussian(12, 5, rng) * 37.0;
        X.array() += 1e3;
        auto [t, s] = standardize(table(X, gaussian(12, 3, rng)));
        for (const MatrixXd* M : {&t.X, &t.Y})
            for (Eigen::Index j = 0; j < M->cols(); ++j) {
                const double mean = M->col(j).mean();
                const double sd = std::sqrt((M->col(j).array() - mean).square().sum() / (M->rows() - 1.0));
                EXPECT_LT(std::abs(mean), 1e-12);
                EXPECT_LT(std::abs(sd - 1.0), 1e-9);
            }
        auto again = standardize(t).first;
        EXPECT_LT((again.X - t.X).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((again.Y - t.Y).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Standardize, ZeroVariancePolicies) {
    MatrixXd X(4, 2), Y(4, 1);
    X << 1, 7, 2, 7, 3, 7, 5, 7;
    Y << 1, 0, 1, 0;
    auto [t, s] = standardize(table(X, Y));
    EXPECT_EQ(t.p(), 1);
    EXPECT_EQ(s.dropped, std::vector<std::string>{"x1"});
    EXPECT_THROW(standardize(table(X, Y), ZeroVariancePolicy::error), DomainError);
}

TEST(Objective, Examples) {
    std::mt19937_64 rng(2);
    const auto t = random_instance(rng);
    EXPECT_NEAR(objective(t, MatrixXd::Zero(t.p(), t.q()), 0.3, 0.2), t.Y.squaredNorm() / (2.0 * t.n()), 1e-14);

    MetadataTable one;
    one.X = MatrixXd::Constant(1, 1, 1.0);
    one.Y = MatrixXd::Constant(1, 1, 2.0);
    EXPECT_DOUBLE_EQ(objective(one, MatrixXd::Constant(1, 1, 1.0), 1.0, 0.0), 1.5);

    // Exact fit on an invertible square system leaves no residual.
    const auto sq = table(gaussian(4, 4, rng), gaussian(4, 2, rng));
    const MatrixXd B = sq.X.lu().solve(sq.Y);
    EXPECT_NEAR(objective(sq, B, 0, 0), 0.0, 1e-20);
}

TEST(Prox, Examples) {
    EXPECT_EQ(prox_sparse_group(VectorXd::Zero(3), 0.5, 0.5), VectorXd::Zero(3));
    EXPECT_DOUBLE_EQ(prox_sparse_group(VectorXd::Constant(1, 3.0), 1, 1)[0], 1.0);
    VectorXd v(3);
    v << 0.5, -0.7, 0.2;
    const VectorXd s = v.unaryExpr([](double x) { return soft(x, 0.1); });
    EXPECT_EQ(prox_sparse_group(v, 0.1, s.norm()), VectorXd::Zero(3));
    EXPECT_EQ(prox_sparse_group(v, 0.1, s.norm() * 1.5), VectorXd::Zero(3));
}

TEST(Prox, ClosedFormsAndNonExpansive) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(0, 2);
    for (int trial = 0; trial < 500; ++trial) {
        const VectorXd a = gaussian(5, 1, rng), b = gaussian(5, 1, rng);
        const double t1 = ud(rng), tg = ud(rng);
        const VectorXd p1 = prox_sparse_group(a, t1, 0);
        for (Eigen::Index k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(p1[k], soft(a[k], t1));
        const VectorXd pg = prox_sparse_group(a, 0, tg);
        const VectorXd expect = a.norm() > tg ? VectorXd(a * (1 - tg / a.norm())) : VectorXd::Zero(5);
        EXPECT_LT((pg - expect).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LE((prox_sparse_group(a, t1, tg) - prox_sparse_group(b, t1, tg)).norm(), (a - b).norm() + 1e-15);
    }
}

TEST(Solve, LargeLambdaGivesZero) {
    std::mt19937_64 rng(4);
    const auto t = random_instance(rng);
    const double l1 = (t.X.transpose() * t.Y / static_cast<double>(t.n())).cwiseAbs().maxCoeff();
    const auto cm = solve(t, l1, 0);
    EXPECT_TRUE(cm.converged);
    EXPECT_EQ(cm.B, MatrixXd::Zero(t.p(), t.q()));
}

TEST(Solve, NoPenaltyMatchesOls) {
    std::mt19937_64 rng(5);
    const auto t = random_instance(rng, 60, 6, 3);
    const auto cm = solve(t, 0, 0);
    EXPECT_TRUE(cm.converged);
    EXPECT_LT((cm.B - ols(t)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Solve, OneByOneHandSolution) {
    // min (1/2)(2 - b)^2 + |b| -> b = 1
    MetadataTable one;
    one.X = MatrixXd::Constant(2, 1, 1.0);
    one.Y = MatrixXd::Constant(2, 1, 2.0);
    const auto cm = solve(one, 1.0, 0.0);
    EXPECT_NEAR(cm.B(0, 0), 1.0, 1e-9);
}

TEST(Solve, NegativeLambdaRejected) {
    std::mt19937_64 rng(6);
    EXPECT_THROW(solve(random_instance(rng), -1, 0), DomainError);
}

TEST(Solve, NonConvergenceReturnsBestIterate) {
    std::mt19937_64 rng(7);
    const auto t = random_instance(rng);
    SolveOptions opt;
    opt.max_iter = 3;
    const auto cm = solve(t, 0.01, 0.01, opt);
    EXPECT_FALSE(cm.converged);
    EXPECT_EQ(cm.iterations, 3);
    EXPECT_EQ(cm.objective_trace.size(), 4u);
    EXPECT_LE(cm.objective, cm.objective_trace.front());
}

TEST(SolveProperty, TraceMonotoneAndKktSmall) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ud(0.005, 0.3);
    for (int trial = 0; trial < 25; ++trial) {
        const auto t = random_instance(rng);
        const double l1 = ud(rng), lg = ud(rng);
        const auto cm = solve(t, l1, lg);
        ASSERT_TRUE(cm.converged) << trial;
        for (std::size_t k = 1; k < cm.objective_trace.size(); ++k)
            ASSERT_LE(cm.objective_trace[k], cm.objective_trace[k - 1]);
        EXPECT_LT(cm.kkt_residual, 1e-6);
        EXPECT_NEAR(cm.kkt_residual, kkt_residual(t, cm.B, l1, lg), 1e-12);
        EXPECT_GE(cm.kkt_residual, 0.0);
    }
}

TEST(SolveProperty, RowPermutationInvariance) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = random_instance(rng);
        std::vector<int> perm(static_cast<std::size_t>(t.n()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        MetadataTable u = t;
        for (Eigen::Index r = 0; r < t.n(); ++r) {
            u.X.row(r) = t.X.row(perm[static_cast<std::size_t>(r)]);
            u.Y.row(r) = t.Y.row(perm[static_cast<std::size_t>(r)]);
        }
        const auto a = solve(t, 0.05, 0.05), b = solve(u, 0.05, 0.05);
        EXPECT_LT((a.B - b.B).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Path, EndpointsAndWarmStarts) {
    std::mt19937_64 rng(10);
    const auto t = random_instance(rng, 80, 6, 3);
    const auto path = regularization_path(t, 1.0, 12, 1e-6);
    ASSERT_EQ(path.size(), 12u);
    EXPECT_EQ(path.front().B, MatrixXd::Zero(6, 3));
    EXPECT_LT((path.back().B - ols(t)).cwiseAbs().maxCoeff(), 1e-3);
    for (std::size_t i = 1; i < path.size(); ++i) EXPECT_LT(path[i].lambda1, path[i - 1].lambda1);
    for (const auto& cm : path) {
        EXPECT_TRUE(cm.converged);
        EXPECT_DOUBLE_EQ(cm.lambda_g, cm.lambda1);
    }
    // lambda_max is tight: slightly below it, B becomes nonzero.
    const double lmax = lambda_max(t, 1.0);
    EXPECT_FALSE(solve(t, lmax * 0.99, lmax * 0.99).support().empty());
    EXPECT_LT(kkt_residual(t, MatrixXd::Zero(6, 3), lmax, lmax), 1e-12);

    const auto single = regularization_path(t, 0.5, 1);
    const auto direct = solve(t, lambda_max(t, 0.5), 0.5 * lambda_max(t, 0.5));
    EXPECT_EQ(single.front().B, direct.B);
}

TEST(Path, PlantedSupportRecovered) {
    std::mt19937_64 rng(11);
    const Eigen::Index n = 40, p = 15, q = 7;
    std::normal_distribution<double> nd;
    bool recovered = false;
    for (int trial = 0; trial < 5; ++trial) {
        const MatrixXd X = gaussian(n, p, rng);
        MatrixXd Bstar = MatrixXd::Zero(p, q);
        for (Eigen::Index r : {2, 7, 11}) Bstar.row(r) = gaussian(1, q, rng).array().sign().matrix() * 1.0;
        MatrixXd Y = X * Bstar + 0.01 * gaussian(n, q, rng);
        const auto t = standardize(table(X, Y)).first;
        const std::vector<Eigen::Index> planted{2, 7, 11};
        bool hit = false;
        for (const auto& cm : regularization_path(t, 1.0, 30)) hit |= cm.support() == planted;
        EXPECT_TRUE(hit) << "trial " << trial;
        recovered |= hit;
    }
    EXPECT_TRUE(recovered);
}

TEST(CrossValidate, PicksAnInteriorLambda) {
    std::mt19937_64 rng(12);
    const MatrixXd X = gaussian(25, 5, rng);
    MatrixXd B = MatrixXd::Zero(5, 2);
    B(0, 0) = 1;
    B(1, 1) = -1;
    const auto t = standardize(table(X, X * B + 0.3 * gaussian(25, 2, rng))).first;
    const auto cv = cross_validate(t, 1.0, 10);
    ASSERT_EQ(cv.mse.size(), 10u);
    EXPECT_GT(cv.best, 0u);
    EXPECT_LT(cv.mse[cv.best], cv.mse.front());
    MetadataTable two = table(gaussian(2, 2, rng), gaussian(2, 1, rng));
    EXPECT_THROW(cross_validate(two, 1.0, 3), DomainError);
}

TEST(Salient, ThresholdRule) {
    MatrixXd B(3, 4);
    B << 1, -2, 3, 4,   //
        0, 1, 1, 1,     //
        0, 0, 1, 0;
    const auto rows = salient_report(B, {"a", "b", "c"});
    EXPECT_EQ(rows[0].influence, Influence::wide);
    EXPECT_EQ(rows[0].signs, "+-++");
    EXPECT_EQ(rows[1].influence, Influence::narrow);
    EXPECT_EQ(rows[2].influence, Influence::weak);
    EXPECT_STREQ(to_string(rows[0].influence), "widely");
}

TEST(Salient, ReferenceCoefficientFixture) {
    const auto tab = csv::read(std::string(GMETA_TEST_DATA) + "/salient_coefficients.csv");
    std::vector<std::string> models;
    auto [B, props] = coefficients_from_csv(tab, &models);
    ASSERT_EQ(B.rows(), 15);
    ASSERT_EQ(B.cols(), 7);
    EXPECT_EQ(models.front(), "GCN");
    const auto rows = salient_report(B, props);
    auto find = [&](const std::string& name) {
        return *std::find_if(rows.begin(), rows.end(), [&](const SalientRow& r) { return r.name == name; });
    };
    const auto gini = find("Gini-Degree");
    EXPECT_EQ(gini.influence, Influence::wide);
    EXPECT_EQ(gini.signs, "-------");
    EXPECT_DOUBLE_EQ(B(std::find(props.begin(), props.end(), "Gini-Degree") - props.begin(), 0), -0.4403);
    EXPECT_EQ(find("Edge Homogeneity").influence, Influence::wide);
    EXPECT_EQ(find("In-Feature Similarity").influence, Influence::wide);
    EXPECT_EQ(find("Average Degree").influence, Influence::narrow);
    EXPECT_EQ(find("Pseudo Diameter").influence, Influence::narrow);
    EXPECT_EQ(find("Feature Angular SNR").influence, Influence::narrow);
    EXPECT_EQ(find("Out-Feature Similarity").influence, Influence::none);
}

TEST(JoinTables, PoliciesAndErrors) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "gmeta_join_test";
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return csv::read((dir / name).string());
    };
    const auto props = write("p.csv", "dataset,a,b,c\nd1,1,2,\nd2,2,,\nd3,3,5,\n");
    const auto perf = write("f.csv", "dataset,m1\nd3,0.3\nd1,0.1\nd2,0.2\n");
    LoadReport rep;
    const auto dropped = join_tables(props, perf, MissingPolicy::drop_rows, &rep);
    EXPECT_EQ(rep.dropped_columns, std::vector<std::string>{"c"});
    EXPECT_EQ(rep.dropped_rows, std::vector<std::string>{"d2"});
    EXPECT_EQ(dropped.n(), 2);
    EXPECT_DOUBLE_EQ(dropped.Y(1, 0), 0.3);
    LoadReport rep2;
    const auto imputed = join_tables(props, perf, MissingPolicy::mean_impute, &rep2);
    EXPECT_EQ(imputed.n(), 3);
    EXPECT_EQ(rep2.imputed_cells, 1u);
    EXPECT_DOUBLE_EQ(imputed.X(1, 1), 3.5);
    const auto other = write("g.csv", "dataset,m1\nd1,0.1\nd9,0.2\n");
    try {
        join_tables(props, other, MissingPolicy::drop_rows);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("d9"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(Coefficients, CsvRoundTrip) {
    std::mt19937_64 rng(13);
    const MatrixXd B = gaussian(4, 3, rng);
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "gmeta_coef.csv").string();
    csv::write_file(path, coefficients_to_csv(B, names("x", 4), names("y", 3)));
    auto [C, rows] = coefficients_from_csv(csv::read(path));
    EXPECT_EQ(C, B);
    EXPECT_EQ(rows, names("x", 4));
    std::filesystem::remove(path);
}
