#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <gmeta/csv.hpp>
#include <gmeta/error.hpp>

namespace gmeta::msglasso {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Covariates X (datasets x properties) and responses Y (datasets x models).
struct MetadataTable {
    MatrixXd X;
    MatrixXd Y;
    std::vector<std::string> row_names;
    std::vector<std::string> x_names;
    std::vector<std::string> y_names;

    Eigen::Index n() const noexcept { return X.rows(); }
    Eigen::Index p() const noexcept { return X.cols(); }
    Eigen::Index q() const noexcept { return Y.cols(); }

    void validate() const {
        if (X.rows() != Y.rows()) throw DomainError("X and Y row counts differ");
        if (X.rows() < 2) throw DomainError("metadata table needs at least two rows");
        if (!X.allFinite() || !Y.allFinite()) throw DomainError("metadata table contains non-finite values");
        for (const auto* names : {&x_names, &y_names}) {
            std::set<std::string> seen(names->begin(), names->end());
            if (seen.size() != names->size()) throw DomainError("duplicate column names in metadata table");
        }
    }
};

enum class ZeroVariancePolicy { drop, error };
enum class MissingPolicy { drop_rows, mean_impute };

struct Standardization {
    VectorXd x_center, x_scale, y_center, y_scale;
    std::vector<std::string> dropped;
};

namespace detail {

inline void standardize_block(MatrixXd& M, std::vector<std::string>& names, VectorXd& center, VectorXd& scale,
                              ZeroVariancePolicy policy, std::vector<std::string>& dropped) {
    const double n = static_cast<double>(M.rows());
    std::vector<Eigen::Index> keep;
    std::vector<double> c, s;
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
        const double mean = M.col(j).mean();
        const double sd = std::sqrt((M.col(j).array() - mean).square().sum() / (n - 1.0));
        if (!(sd > 0) || sd < 1e-12 * std::max(1.0, std::abs(mean))) {
            if (policy == ZeroVariancePolicy::error) throw DomainError("zero-variance column '" + names[j] + "'");
            dropped.push_back(names[j]);
            continue;
        }
        keep.push_back(j);
        c.push_back(mean);
        s.push_back(sd);
    }
    MatrixXd out(M.rows(), static_cast<Eigen::Index>(keep.size()));
    std::vector<std::string> out_names;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        auto col = (M.col(keep[k]).array() - c[k]) / s[k];
        // Second centering pass removes the rounding residue of the first.
        out.col(static_cast<Eigen::Index>(k)) = (col - col.mean()).matrix();
        out_names.push_back(names[keep[k]]);
    }
    M = std::move(out);
    names = std::move(out_names);
    center = Eigen::Map<VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
    scale = Eigen::Map<VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
}

} // namespace detail

/// Centers every column and scales it to unit sample standard deviation.
inline std::pair<MetadataTable, Standardization> standardize(MetadataTable t,
                                                              ZeroVariancePolicy policy = ZeroVariancePolicy::drop) {
    t.validate();
    Standardization s;
    detail::standardize_block(t.X, t.x_names, s.x_center, s.x_scale, policy, s.dropped);
    detail::standardize_block(t.Y, t.y_names, s.y_center, s.y_scale, policy, s.dropped);
    if (t.p() == 0 || t.q() == 0) throw DomainError("no covariate or response columns left after standardization");
    return {std::move(t), std::move(s)};
}

/// (1/2n)||Y - XB||_F^2 + lambda1 sum |B_ij| + lambda_g sum_i ||B_i.||_2.
inline double objective(const MetadataTable& t, const MatrixXd& B, double lambda1, double lambda_g) {
    const double n = static_cast<double>(t.n());
    const double fit = (t.Y - t.X * B).squaredNorm() / (2.0 * n);
    return fit + lambda1 * B.cwiseAbs().sum() + lambda_g * B.rowwise().norm().sum();
}

/// Proximal map of t1 ||.||_1 + tg ||.||_2 on one row group.
inline VectorXd prox_sparse_group(const VectorXd& row, double t1, double tg) {
    VectorXd s = row.unaryExpr([t1](double v) { return std::copysign(std::max(std::abs(v) - t1, 0.0), v); });
    const double norm = s.norm();
    if (!(norm > tg)) return VectorXd::Zero(row.size());
    return s * (1.0 - tg / norm);
}

struct SolveOptions {
    double tol = 1e-10;      ///< relative objective change
    double kkt_tol = 1e-12;  ///< also required before declaring convergence
    long max_iter = 200000;
    bool record_trace = true;
};

struct CoefficientMatrix {
    MatrixXd B;
    double lambda1 = 0;
    double lambda_g = 0;
    std::vector<double> objective_trace;
    double objective = 0;
    double kkt_residual = 0;
    long iterations = 0;
    bool converged = false;

    /// Rows of B with at least one nonzero entry.
    std::vector<Eigen::Index> support() const {
        std::vector<Eigen::Index> s;
        for (Eigen::Index i = 0; i < B.rows(); ++i)
            if ((B.row(i).array() != 0.0).any()) s.push_back(i);
        return s;
    }
};

/**
 * Largest violation of the optimality conditions at B, given the smooth
 * gradient G = X^T(XB - Y)/n. Nonzero rows use the entrywise minimal
 * subgradient; zero rows use max(0, ||soft(G_i, lambda1)||_2 - lambda_g).
 */
inline double kkt_residual_from_gradient(const MatrixXd& B, const MatrixXd& G, double lambda1, double lambda_g) {
    double worst = 0;
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        const double bn = B.row(i).norm();
        if (bn == 0) {
            double s2 = 0;
            for (Eigen::Index j = 0; j < B.cols(); ++j) {
                const double s = std::max(std::abs(G(i, j)) - lambda1, 0.0);
                s2 += s * s;
            }
            worst = std::max(worst, std::sqrt(s2) - lambda_g);
            continue;
        }
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            const double b = B(i, j);
            const double r = b != 0 ? std::abs(G(i, j) + lambda1 * (b > 0 ? 1.0 : -1.0) + lambda_g * b / bn)
                                    : std::max(std::abs(G(i, j)) - lambda1, 0.0);
            worst = std::max(worst, r);
        }
    }
    return std::max(worst, 0.0);
}

inline double kkt_residual(const MetadataTable& t, const MatrixXd& B, double lambda1, double lambda_g) {
    const MatrixXd G = t.X.transpose() * (t.X * B - t.Y) / static_cast<double>(t.n());
    return kkt_residual_from_gradient(B, G, lambda1, lambda_g);
}

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
inline double power_iteration(const MatrixXd& A, int iters = 1000) {
    if (A.rows() == 0) return 0;
    VectorXd v = VectorXd::Constant(A.rows(), 1.0 / std::sqrt(static_cast<double>(A.rows())));
    double lambda = 0;
    for (int k = 0; k < iters; ++k) {
        VectorXd w = A * v;
        const double nw = w.norm();
        if (nw == 0) return 0;
        const double next = v.dot(w);
        v = w / nw;
        if (std::abs(next - lambda) <= 1e-14 * std::abs(next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    // Rayleigh quotients approach from below; the Gershgorin bound caps the guard.
    return std::min(lambda * (1 + 1e-6), A.cwiseAbs().rowwise().sum().maxCoeff());
}

/**
 * F(B + D) - F(B) evaluated from the difference D, so its rounding error
 * scales with the step rather than with F. `resid` is XB - Y.
 */
inline double objective_change(const MetadataTable& t, const MatrixXd& B, const MatrixXd& next, const MatrixXd& resid,
                               double lambda1, double lambda_g) {
    const MatrixXd D = next - B;
    const MatrixXd XD = t.X * D;
    double delta = (XD.array() * (2.0 * resid + XD).array()).sum() / (2.0 * static_cast<double>(t.n()));
    double l1 = 0, grp = 0;
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        for (Eigen::Index j = 0; j < B.cols(); ++j) l1 += std::abs(next(i, j)) - std::abs(B(i, j));
        const double nb = B.row(i).norm(), nn = next.row(i).norm();
        if (nb + nn > 0) grp += D.row(i).dot(next.row(i) + B.row(i)) / (nb + nn);
    }
    return delta + lambda1 * l1 + lambda_g * grp;
}

/**
 * Accelerated proximal gradient (FISTA) with monotone restart: whenever the
 * extrapolated step does not decrease the objective, momentum is reset and a
 * plain proximal step from the current iterate is tried instead. Steps are
 * accepted on the sign of objective_change, and the trace accumulates those
 * changes, so it is non-increasing. When neither step decreases the
 * objective the iterate is at the numerical floor and the loop stops.
 */
inline CoefficientMatrix solve(const MetadataTable& t, double lambda1, double lambda_g, const SolveOptions& opt = {},
                               const MatrixXd* warm_start = nullptr) {
    t.validate();
    if (lambda1 < 0 || lambda_g < 0) throw DomainError("penalty parameters must be non-negative");
    const double n = static_cast<double>(t.n());
    const MatrixXd gram = t.X.transpose() * t.X / n;
    const MatrixXd xty = t.X.transpose() * t.Y / n;
    const double L = power_iteration(gram);

    CoefficientMatrix cm;
    cm.lambda1 = lambda1;
    cm.lambda_g = lambda_g;
    cm.B = warm_start ? *warm_start : MatrixXd::Zero(t.p(), t.q());
    if (cm.B.rows() != t.p() || cm.B.cols() != t.q()) throw DomainError("warm start has the wrong shape");
    double F = objective(t, cm.B, lambda1, lambda_g);
    if (opt.record_trace) cm.objective_trace.push_back(F);
    if (L == 0) {
        // X = 0: the optimum is B = 0.
        cm.B.setZero();
        cm.objective = objective(t, cm.B, lambda1, lambda_g);
        cm.kkt_residual = 0;
        cm.converged = true;
        return cm;
    }

    auto prox_step = [&](const MatrixXd& from) {
        MatrixXd step = from - (gram * from - xty) / L;
        for (Eigen::Index i = 0; i < step.rows(); ++i)
            step.row(i) = prox_sparse_group(step.row(i).transpose(), lambda1 / L, lambda_g / L).transpose();
        return step;
    };

    MatrixXd Z = cm.B;
    MatrixXd resid = t.X * cm.B - t.Y;
    double tk = 1;
    for (long it = 1; it <= opt.max_iter; ++it) {
        MatrixXd next = prox_step(Z);
        double dF = objective_change(t, cm.B, next, resid, lambda1, lambda_g);
        if (!std::isfinite(dF)) throw NumericalError("non-finite objective", it);
        bool floor = false;
        if (dF > 0) {
            tk = 1;
            next = prox_step(cm.B);
            dF = objective_change(t, cm.B, next, resid, lambda1, lambda_g);
            if (!std::isfinite(dF)) throw NumericalError("non-finite objective", it);
            if (dF > 0) {
                next = cm.B;
                dF = 0;
                floor = true;
            }
        }
        const double tn = (1 + std::sqrt(1 + 4 * tk * tk)) / 2;
        Z = next + ((tk - 1) / tn) * (next - cm.B);
        const double rel = std::abs(dF) / std::max(std::abs(F), std::numeric_limits<double>::min());
        cm.B = std::move(next);
        resid = t.X * cm.B - t.Y;
        F += dF;
        tk = tn;
        cm.iterations = it;
        if (opt.record_trace) cm.objective_trace.push_back(F);
        if (rel < opt.tol || floor) {
            cm.kkt_residual = kkt_residual_from_gradient(cm.B, gram * cm.B - xty, lambda1, lambda_g);
            if (cm.kkt_residual < opt.kkt_tol) {
                cm.converged = true;
                break;
            }
            if (floor) break;
        }
    }
    cm.objective = objective(t, cm.B, lambda1, lambda_g);
    cm.kkt_residual = kkt_residual_from_gradient(cm.B, gram * cm.B - xty, lambda1, lambda_g);
    return cm;
}

/**
 * Smallest lambda1 for which B = 0 is optimal when lambda_g = ratio * lambda1:
 * the largest, over rows i of X^T Y / n, root of ||soft(c_i, l)||_2 = ratio * l.
 */
inline double lambda_max(const MetadataTable& t, double ratio) {
    if (ratio < 0) throw DomainError("group ratio must be non-negative");
    const MatrixXd c = t.X.transpose() * t.Y / static_cast<double>(t.n());
    double best = 0;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        double hi = c.row(i).cwiseAbs().maxCoeff(), lo = 0;
        if (hi <= best) continue;
        auto excess = [&](double l) {
            double s2 = 0;
            for (Eigen::Index j = 0; j < c.cols(); ++j) {
                const double s = std::max(std::abs(c(i, j)) - l, 0.0);
                s2 += s * s;
            }
            return std::sqrt(s2) - ratio * l;
        };
        for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
            const double mid = (lo + hi) / 2;
            (excess(mid) > 0 ? lo : hi) = mid;
        }
        best = std::max(best, hi);
    }
    return best;
}

/// Geometric lambda1 grid from lambda_max down to min_ratio * lambda_max.
inline std::vector<double> lambda_grid(double lmax, int k, double min_ratio) {
    if (k < 1) throw DomainError("path needs at least one point");
    if (!(min_ratio > 0 && min_ratio <= 1)) throw DomainError("min_ratio must lie in (0, 1]");
    std::vector<double> grid;
    for (int i = 0; i < k; ++i)
        grid.push_back(k == 1 ? lmax : lmax * std::pow(min_ratio, static_cast<double>(i) / (k - 1)));
    return grid;
}

/// Warm-started solves along the lambda grid, lambda_g = ratio * lambda1.
inline std::vector<CoefficientMatrix> regularization_path(const MetadataTable& t, double ratio, int k,
                                                          double min_ratio = 1e-3, const SolveOptions& opt = {}) {
    std::vector<CoefficientMatrix> path;
    const MatrixXd* warm = nullptr;
    for (double l1 : lambda_grid(lambda_max(t, ratio), k, min_ratio)) {
        path.push_back(solve(t, l1, ratio * l1, opt, warm));
        warm = &path.back().B;
    }
    return path;
}

struct CrossValidation {
    std::vector<double> lambda1;
    std::vector<double> mse;
    std::size_t best = 0;
};

/// Leave-one-dataset-out prediction error along the lambda grid of the full table.
inline CrossValidation cross_validate(const MetadataTable& t, double ratio, int k, double min_ratio = 1e-3,
                                      SolveOptions opt = {}) {
    opt.record_trace = false;
    CrossValidation cv;
    cv.lambda1 = lambda_grid(lambda_max(t, ratio), k, min_ratio);
    cv.mse.assign(cv.lambda1.size(), 0.0);
    const auto n = t.n();
    if (n < 3) throw DomainError("leave-one-out cross-validation needs at least three rows");
    for (Eigen::Index held = 0; held < n; ++held) {
        MetadataTable train;
        train.X.resize(n - 1, t.p());
        train.Y.resize(n - 1, t.q());
        train.x_names = t.x_names;
        train.y_names = t.y_names;
        for (Eigen::Index r = 0, k2 = 0; r < n; ++r)
            if (r != held) {
                train.X.row(k2) = t.X.row(r);
                train.Y.row(k2++) = t.Y.row(r);
            }
        MatrixXd warm = MatrixXd::Zero(t.p(), t.q());
        for (std::size_t i = 0; i < cv.lambda1.size(); ++i) {
            auto cm = solve(train, cv.lambda1[i], ratio * cv.lambda1[i], opt, &warm);
            warm = cm.B;
            cv.mse[i] += (t.Y.row(held) - t.X.row(held) * cm.B).squaredNorm() / static_cast<double>(n * t.q());
        }
    }
    cv.best = static_cast<std::size_t>(std::min_element(cv.mse.begin(), cv.mse.end()) - cv.mse.begin());
    return cv;
}

enum class Influence { none, weak, narrow, wide };

inline const char* to_string(Influence i) {
    switch (i) {
    case Influence::wide: return "widely";
    case Influence::narrow: return "narrowly";
    case Influence::weak: return "weakly";
    default: return "none";
    }
}

struct SalientRow {
    std::string name;
    Influence influence = Influence::none;
    int nonzero = 0;
    std::string signs; ///< one of '+', '-', '0' per response column
};

/// Wide: nonzero for all q responses. Narrow: nonzero for more than q/2.
inline std::vector<SalientRow> salient_report(const MatrixXd& B, const std::vector<std::string>& names,
                                              double zero_tol = 0.0) {
    if (static_cast<Eigen::Index>(names.size()) != B.rows()) throw DomainError("name count differs from row count");
    std::vector<SalientRow> out;
    const auto q = B.cols();
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        SalientRow r;
        r.name = names[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < q; ++j) {
            const double b = B(i, j);
            if (std::abs(b) > zero_tol) {
                ++r.nonzero;
                r.signs += b > 0 ? '+' : '-';
            } else {
                r.signs += '0';
            }
        }
        if (r.nonzero == q && q > 0)
            r.influence = Influence::wide;
        else if (2 * r.nonzero > q)
            r.influence = Influence::narrow;
        else if (r.nonzero > 0)
            r.influence = Influence::weak;
        out.push_back(std::move(r));
    }
    return out;
}

struct LoadReport {
    std::vector<std::string> dropped_columns;
    std::vector<std::string> dropped_rows;
    std::size_t imputed_cells = 0;
};

/**
 * Joins a properties CSV and a performance CSV on their first (dataset id)
 * column. Empty or "nan" cells are missing: columns with no observed value
 * are dropped, then the row policy applies.
 */
inline MetadataTable join_tables(const csv::Table& props, const csv::Table& perf, MissingPolicy policy,
                                 LoadReport* report = nullptr) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    auto index = [](const csv::Table& t) {
        std::map<std::string, std::size_t> m;
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            if (!m.emplace(std::string(csv::trim(t.rows[r][0])), r).second)
                throw ParseError("duplicate dataset id '" + t.rows[r][0] + "'", t.line_numbers[r]);
        return m;
    };
    const auto pi = index(props), fi = index(perf);
    std::vector<std::string> offenders;
    for (auto& [k, v] : pi)
        if (!fi.count(k)) offenders.push_back(k + " (properties only)");
    for (auto& [k, v] : fi)
        if (!pi.count(k)) offenders.push_back(k + " (performance only)");
    if (!offenders.empty()) {
        std::string msg = "dataset ids differ between tables:";
        for (auto& o : offenders) msg += " " + o;
        throw DomainError(msg);
    }
    std::vector<std::string> ids;
    for (std::size_t r = 0; r < props.rows.size(); ++r) ids.emplace_back(csv::trim(props.rows[r][0]));

    auto extract = [&](const csv::Table& t, const std::map<std::string, std::size_t>& idx,
                       std::vector<std::string>& names) {
        std::vector<std::vector<double>> cols;
        for (std::size_t c = 1; c < t.header.size(); ++c) {
            std::vector<double> col;
            bool any = false;
            for (auto& id : ids) {
                const auto r = idx.at(id);
                auto v = csv::parse_double(t.rows[r][c], t.line_numbers[r]);
                col.push_back(v ? *v : std::numeric_limits<double>::quiet_NaN());
                any |= v && std::isfinite(*v);
            }
            if (!any) {
                rep.dropped_columns.push_back(t.header[c]);
                continue;
            }
            names.push_back(t.header[c]);
            cols.push_back(std::move(col));
        }
        return cols;
    };
    MetadataTable mt;
    auto xc = extract(props, pi, mt.x_names);
    auto yc = extract(perf, fi, mt.y_names);

    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < ids.size(); ++r) {
        bool complete = true;
        for (auto* cols : {&xc, &yc})
            for (auto& c : *cols) complete &= std::isfinite(c[r]);
        if (complete || policy == MissingPolicy::mean_impute)
            keep.push_back(r);
        else
            rep.dropped_rows.push_back(ids[r]);
    }
    auto fill = [&](std::vector<std::vector<double>>& cols, MatrixXd& M) {
        M.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            double sum = 0;
            int cnt = 0;
            for (double v : cols[c])
                if (std::isfinite(v)) {
                    sum += v;
                    ++cnt;
                }
            for (std::size_t k = 0; k < keep.size(); ++k) {
                double v = cols[c][keep[k]];
                if (!std::isfinite(v)) {
                    v = sum / cnt;
                    ++rep.imputed_cells;
                }
                M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = v;
            }
        }
    };
    fill(xc, mt.X);
    fill(yc, mt.Y);
    for (auto k : keep) mt.row_names.push_back(ids[k]);
    mt.validate();
    return mt;
}

/// Coefficient CSV: one row per covariate, one column per response.
inline std::string coefficients_to_csv(const MatrixXd& B, const std::vector<std::string>& x_names,
                                       const std::vector<std::string>& y_names) {
    std::string s = "property";
    for (auto& y : y_names) s += "," + csv::escape(y);
    s += "\n";
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        s += csv::escape(x_names[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < B.cols(); ++j) s += "," + csv::format(B(i, j));
        s += "\n";
    }
    return s;
}

/// Reads a coefficient CSV written by coefficients_to_csv (or shaped like it).
inline std::pair<MatrixXd, std::vector<std::string>> coefficients_from_csv(const csv::Table& t,
                                                                            std::vector<std::string>* y_names = nullptr) {
    MatrixXd B(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.header.size() - 1));
    std::vector<std::string> names;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        names.push_back(t.rows[r][0]);
        for (std::size_t c = 1; c < t.header.size(); ++c) {
            auto v = csv::parse_double(t.rows[r][c], t.line_numbers[r]);
            if (!v) throw ParseError("empty coefficient cell", t.line_numbers[r]);
            B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) = *v;
        }
    }
    if (y_names) y_names->assign(t.header.begin() + 1, t.header.end());
    return {std::move(B), std::move(names)};
}

} // namespace gmeta::msglasso
