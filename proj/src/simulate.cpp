#include "edgetest/simulate.hpp"

#include "edgetest/errors.hpp"
#include "edgetest/fisher.hpp"
#include "edgetest/parallel.hpp"
#include "edgetest/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace edgetest {

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * (stream.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto s : stream) push(s);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

std::string_view to_string(Distribution d) noexcept {
    return d == Distribution::Gaussian ? "gaussian" : "laplace";
}

Distribution parse_distribution(std::string_view name) {
    if (name == "gaussian") return Distribution::Gaussian;
    if (name == "laplace") return Distribution::Laplace;
    throw ConfigError("unknown distribution '" + std::string(name) + "'");
}

Eigen::MatrixXd random_correlation(Index p, Rng& rng, Index latent_dim) {
    if (p < 2) throw ConfigError("random correlation needs p >= 2");
    const auto m = static_cast<Eigen::Index>(latent_dim == 0 ? p : latent_dim);
    const auto ep = static_cast<Eigen::Index>(p);
    std::normal_distribution<double> normal;
    for (int attempt = 0; attempt < kCorrelationMaxAttempts; ++attempt) {
        Eigen::MatrixXd v(m, ep);
        for (Eigen::Index c = 0; c < ep; ++c)
            for (Eigen::Index r = 0; r < m; ++r) v(r, c) = normal(rng);
        Eigen::MatrixXd gram = v.transpose() * v;
        const Eigen::VectorXd inv_norm = gram.diagonal().cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd corr = inv_norm.asDiagonal() * gram * inv_norm.asDiagonal();
        corr = 0.5 * (corr + corr.transpose()).eval();
        corr.diagonal().setOnes();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() >= kCorrelationConditioningFloor) return corr;
    }
    throw GenerationFailure("no random correlation matrix with smallest eigenvalue >= " +
                            std::to_string(kCorrelationConditioningFloor) + " in " +
                            std::to_string(kCorrelationMaxAttempts) + " attempts");
}

BlockCorrelation block_random_correlation(Index p, Index blocks, Rng& rng, Index latent_per_variate) {
    if (blocks == 0 || blocks > p) throw ConfigError("block count must lie in [1, p]");
    BlockCorrelation out;
    out.sigma = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    out.block_of.resize(p);
    Index start = 0;
    for (Index b = 0; b < blocks; ++b) {
        const Index size = p / blocks + (b < p % blocks ? 1 : 0);
        const auto es = static_cast<Eigen::Index>(start);
        const auto ez = static_cast<Eigen::Index>(size);
        if (size == 1) {
            out.sigma(es, es) = 1.0;
        } else {
            const Index latent = latent_per_variate == 0 ? size : size * latent_per_variate;
            out.sigma.block(es, es, ez, ez) = random_correlation(size, rng, latent);
        }
        for (Index i = start; i < start + size; ++i) out.block_of[i] = b;
        start += size;
    }
    return out;
}

namespace {

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
        throw NotSpdError("covariance must be a non-empty square matrix");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) throw NotSpdError("covariance is not positive definite");
    return llt.matrixL();
}

}  // namespace

SampleMatrix sample_gaussian(const Eigen::MatrixXd& sigma, Index n, Rng& rng) {
    const Eigen::MatrixXd lower = cholesky_factor(sigma);
    const auto p = lower.rows();
    std::normal_distribution<double> normal;
    RowMatrix z(static_cast<Eigen::Index>(n), p);
    for (Eigen::Index k = 0; k < z.size(); ++k) z.data()[k] = normal(rng);
    return SampleMatrix(RowMatrix(z * lower.transpose()));
}

SampleMatrix sample_laplace(const Eigen::MatrixXd& sigma, Index n, Rng& rng) {
    const Eigen::MatrixXd lower = cholesky_factor(sigma);
    const auto p = lower.rows();
    const double pd = static_cast<double>(p);
    std::normal_distribution<double> normal;
    std::gamma_distribution<double> radius(pd, 2.0);
    const double scale = 1.0 / std::sqrt(4.0 * (pd + 1.0));
    RowMatrix y(static_cast<Eigen::Index>(n), p);
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
        double norm2 = 0.0;
        for (Eigen::Index c = 0; c < p; ++c) {
            const double z = normal(rng);
            y(r, c) = z;
            norm2 += z * z;
        }
        const double factor = radius(rng) * scale / std::sqrt(norm2);
        y.row(r) *= factor;
    }
    return SampleMatrix(RowMatrix(y * lower.transpose()));
}

SampleMatrix sample(Distribution d, const Eigen::MatrixXd& sigma, Index n, Rng& rng) {
    return d == Distribution::Gaussian ? sample_gaussian(sigma, n, rng) : sample_laplace(sigma, n, rng);
}

void ExperimentSpec::validate() const {
    if (p < 2) throw ConfigError("experiment needs p >= 2");
    if (repetitions == 0) throw ConfigError("experiment needs at least one repetition");
    if (n_grid.empty()) throw ConfigError("n grid is empty");
    for (std::size_t k = 1; k < n_grid.size(); ++k) {
        if (n_grid[k] <= n_grid[k - 1]) throw ConfigError("n grid must be strictly increasing");
    }
    if (n_grid.front() < 3) throw ConfigError("every n in the grid must be at least 3");
    if (delta_grid.empty()) throw ConfigError("delta grid is empty");
    for (double d : delta_grid) {
        if (!(d >= 0.0 && d < 1.0)) throw ConfigError("delta values must lie in [0, 1)");
    }
    if (!(mu > 0.0)) throw ConfigError("mu must be positive");
}

Index ExperimentSpec::latent_dim(Index variates) const {
    return latent_per_variate == 0 ? variates : variates * latent_per_variate;
}

WeylInterval weyl_interval(double alpha_hat, double eps) {
    const double upper = alpha_hat > eps ? 1.0 / (alpha_hat - eps)
                                         : std::numeric_limits<double>::infinity();
    return {1.0 / (alpha_hat + eps), upper};
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope needs >= 2 matching points");
    double mx = 0, my = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += std::log(x[k]);
        my += std::log(y[k]);
    }
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = std::log(x[k]) - mx;
        sxy += dx * (std::log(y[k]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

std::vector<Index> linear_grid(Index lo, Index hi, Index count) {
    if (count == 0 || hi < lo) throw ConfigError("invalid grid bounds");
    if (count == 1) return {lo};
    std::vector<Index> out;
    for (Index k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back(lo + static_cast<Index>(std::llround(t * static_cast<double>(hi - lo))));
    }
    return out;
}

namespace {

// Stream tags keep each experiment's random numbers independent.
constexpr std::uint64_t kTagThreshold = 1;
constexpr std::uint64_t kTagFpr = 2;
constexpr std::uint64_t kTagPower = 3;
constexpr std::uint64_t kTagWeyl = 4;
constexpr std::uint64_t kSigmaStream = 0xffffffffull;

struct Summary {
    double mean;
    double se;
};

// Mean and standard error of the mean; an infinite sample makes the mean
// infinite and the error undefined.
Summary summarize(std::span<const double> v) {
    const double m = static_cast<double>(v.size());
    if (std::any_of(v.begin(), v.end(), [](double x) { return !std::isfinite(x); })) {
        return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN()};
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / m;
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (m - 1.0) / m)};
}

Summary proportion(double hits, double trials) {
    if (trials <= 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double f = hits / trials;
    return {f, std::sqrt(f * (1.0 - f) / trials)};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

Eigen::MatrixXd exact_inverse(const Eigen::MatrixXd& sigma) {
    Eigen::MatrixXd inv = sigma.llt().solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
    return 0.5 * (inv + inv.transpose());
}

ReportRow row(std::string kind, std::string param, Index n, Index p, double delta, std::string metric,
              Summary s) {
    return {std::move(kind), std::move(param), n, p, delta, std::move(metric), s.mean, s.se};
}

}  // namespace

ExperimentReport run_threshold_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Index reps = spec.repetitions;
    const Index grid = spec.n_grid.size();
    const double delta = spec.delta_grid.front();
    auto sigma_rng = make_rng(spec.seed, {kTagThreshold, kSigmaStream, spec.p});
    const Eigen::MatrixXd sigma = random_correlation(spec.p, sigma_rng, spec.latent_dim(spec.p));

    struct Trial {
        double eps_eig, eps_trace, t_eig, t_trace;
    };
    std::vector<Trial> trials(grid * reps);
    parallel_for(trials.size(), [&](std::size_t slot) {
        const Index g = slot / reps;
        const Index r = slot % reps;
        auto rng = make_rng(spec.seed, {kTagThreshold, spec.p, g, r});
        const auto x = sample(spec.distribution, sigma, spec.n_grid[g], rng);
        const auto a = analyze(x, AnalysisScope::Full);
        Trial t{};
        t.eps_eig = epsilon_from_spread(*a.lambda_max, delta);
        t.eps_trace = epsilon_from_spread(a.trace, delta);
        t.t_eig = conservative_threshold(t.eps_eig, a.covariance.eigenvalues, spec.mu);
        t.t_trace = conservative_threshold(t.eps_trace, a.covariance.eigenvalues, spec.mu);
        trials[slot] = t;
    });

    ExperimentReport report;
    const std::string param(to_string(spec.distribution));
    for (Index g = 0; g < grid; ++g) {
        std::vector<double> ee, et, te, tt;
        for (Index r = 0; r < reps; ++r) {
            const auto& t = trials[g * reps + r];
            ee.push_back(t.eps_eig);
            et.push_back(t.eps_trace);
            te.push_back(t.t_eig);
            tt.push_back(t.t_trace);
        }
        const Index n = spec.n_grid[g];
        report.add(row("threshold", param, n, spec.p, delta, "t_eig", summarize(te)));
        report.add(row("threshold", param, n, spec.p, delta, "t_trace", summarize(tt)));
        report.add(row("threshold", param, n, spec.p, delta, "eps_eig", summarize(ee)));
        report.add(row("threshold", param, n, spec.p, delta, "eps_trace", summarize(et)));
        const auto inf_count = static_cast<double>(
            std::count_if(tt.begin(), tt.end(), [](double v) { return std::isinf(v); }));
        report.add(row("threshold", param, n, spec.p, delta, "t_trace_infinite",
                       proportion(inf_count, static_cast<double>(reps))));
    }
    return report;
}

ExperimentReport run_fpr_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Index reps = spec.repetitions;
    const Index grid = spec.n_grid.size();
    const Index nd = spec.delta_grid.size();
    const Index p = spec.p;

    // Per (n, rep, delta): null-edge rejections for eig / trace / fisher and
    // entrywise bound violations for eig / trace.
    struct Counts {
        double null_edges = 0, entries = 0;
        double eig = 0, trace = 0, fisher = 0, viol_eig = 0, viol_trace = 0;
    };
    std::vector<Counts> counts(grid * reps * nd);
    parallel_for(grid * reps, [&](std::size_t slot) {
        const Index g = slot / reps;
        const Index r = slot % reps;
        auto sigma_rng = make_rng(spec.seed, {kTagFpr, kSigmaStream, r});
        const auto block = block_random_correlation(p, spec.null_blocks, sigma_rng, spec.latent_per_variate);
        const Eigen::MatrixXd theta = exact_inverse(block.sigma);
        auto rng = make_rng(spec.seed, {kTagFpr, g, r});
        const Index n = spec.n_grid[g];
        const auto x = sample(spec.distribution, block.sigma, n, rng);
        const auto a = analyze(x, AnalysisScope::Full);
        const Eigen::MatrixXd& theta_hat = a.precision.theta;
        for (Index d = 0; d < nd; ++d) {
            const double delta = spec.delta_grid[d];
            Counts c;
            const bool active = delta > 0.0;
            const double t_eig = active ? conservative_threshold(epsilon_from_spread(*a.lambda_max, delta),
                                                                 a.covariance.eigenvalues, spec.mu)
                                        : std::numeric_limits<double>::infinity();
            const double t_trace = active ? conservative_threshold(epsilon_from_spread(a.trace, delta),
                                                                   a.covariance.eigenvalues, spec.mu)
                                          : std::numeric_limits<double>::infinity();
            for (Index i = 0; i < p; ++i) {
                for (Index j = i; j < p; ++j) {
                    const auto ei = static_cast<Eigen::Index>(i);
                    const auto ej = static_cast<Eigen::Index>(j);
                    const double err = std::abs(theta_hat(ei, ej) - theta(ei, ej));
                    c.entries += 1;
                    c.viol_eig += err > t_eig ? 1 : 0;
                    c.viol_trace += err > t_trace ? 1 : 0;
                    if (i == j || !block.is_null_edge(i, j)) continue;
                    c.null_edges += 1;
                    const double mag = std::abs(theta_hat(ei, ej));
                    c.eig += mag >= t_eig ? 1 : 0;
                    c.trace += mag >= t_trace ? 1 : 0;
                    if (active) c.fisher += fisher_test(a.precision, n, i, j, delta).reject ? 1 : 0;
                }
            }
            counts[(g * reps + r) * nd + d] = c;
        }
    });

    ExperimentReport report;
    const std::string param(to_string(spec.distribution));
    for (Index g = 0; g < grid; ++g) {
        for (Index d = 0; d < nd; ++d) {
            Counts total;
            for (Index r = 0; r < reps; ++r) {
                const auto& c = counts[(g * reps + r) * nd + d];
                total.null_edges += c.null_edges;
                total.entries += c.entries;
                total.eig += c.eig;
                total.trace += c.trace;
                total.fisher += c.fisher;
                total.viol_eig += c.viol_eig;
                total.viol_trace += c.viol_trace;
            }
            const Index n = spec.n_grid[g];
            const double delta = spec.delta_grid[d];
            report.add(row("fpr", param, n, p, delta, "fpr_eig", proportion(total.eig, total.null_edges)));
            report.add(row("fpr", param, n, p, delta, "fpr_trace", proportion(total.trace, total.null_edges)));
            report.add(row("fpr", param, n, p, delta, "fpr_fisher", proportion(total.fisher, total.null_edges)));
            report.add(row("fpr", param, n, p, delta, "violation_eig", proportion(total.viol_eig, total.entries)));
            report.add(row("fpr", param, n, p, delta, "violation_trace", proportion(total.viol_trace, total.entries)));
            report.add(row("fpr", param, n, p, delta, "null_edges", {total.null_edges, 0.0}));
        }
    }
    return report;
}

ExperimentReport run_power_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Index reps = spec.repetitions;
    const Index grid = spec.n_grid.size();
    const Index nd = spec.delta_grid.size();
    const Index p = spec.p;

    struct Counts {
        double edges = 0, strong = 0;
        double eig = 0, trace = 0, fisher = 0;
        double eig_strong = 0, trace_strong = 0, fisher_strong = 0;
    };
    std::vector<Counts> counts(grid * reps * nd);
    std::vector<Eigen::MatrixXd> thetas(reps);
    for (Index r = 0; r < reps; ++r) {
        auto sigma_rng = make_rng(spec.seed, {kTagPower, kSigmaStream, r});
        thetas[r] = exact_inverse(random_correlation(p, sigma_rng, spec.latent_dim(p)));
    }

    parallel_for(grid * reps, [&](std::size_t slot) {
        const Index g = slot / reps;
        const Index r = slot % reps;
        const Eigen::MatrixXd& theta = thetas[r];
        const Eigen::MatrixXd sigma = exact_inverse(theta);
        auto rng = make_rng(spec.seed, {kTagPower, g, r});
        const Index n = spec.n_grid[g];
        const auto x = sample(spec.distribution, sigma, n, rng);
        const auto a = analyze(x, AnalysisScope::Full);
        for (Index d = 0; d < nd; ++d) {
            const double delta = spec.delta_grid[d];
            if (!(delta > 0.0)) continue;
            const double t_eig = conservative_threshold(epsilon_from_spread(*a.lambda_max, delta),
                                                        a.covariance.eigenvalues, spec.mu);
            const double t_trace = conservative_threshold(epsilon_from_spread(a.trace, delta),
                                                          a.covariance.eigenvalues, spec.mu);
            Counts c;
            for (Index i = 0; i < p; ++i) {
                for (Index j = i + 1; j < p; ++j) {
                    const auto ei = static_cast<Eigen::Index>(i);
                    const auto ej = static_cast<Eigen::Index>(j);
                    const double truth = std::abs(theta(ei, ej));
                    if (truth == 0.0) continue;
                    const double mag = std::abs(a.precision.theta(ei, ej));
                    const bool strong = truth > spec.effect_threshold;
                    const bool e = mag >= t_eig;
                    const bool t = mag >= t_trace;
                    const bool f = fisher_test(a.precision, n, i, j, delta).reject;
                    c.edges += 1;
                    c.eig += e;
                    c.trace += t;
                    c.fisher += f;
                    if (strong) {
                        c.strong += 1;
                        c.eig_strong += e;
                        c.trace_strong += t;
                        c.fisher_strong += f;
                    }
                }
            }
            counts[(g * reps + r) * nd + d] = c;
        }
    });

    ExperimentReport report;
    const std::string param(to_string(spec.distribution));
    for (Index g = 0; g < grid; ++g) {
        for (Index d = 0; d < nd; ++d) {
            Counts s;
            for (Index r = 0; r < reps; ++r) {
                const auto& c = counts[(g * reps + r) * nd + d];
                s.edges += c.edges;
                s.strong += c.strong;
                s.eig += c.eig;
                s.trace += c.trace;
                s.fisher += c.fisher;
                s.eig_strong += c.eig_strong;
                s.trace_strong += c.trace_strong;
                s.fisher_strong += c.fisher_strong;
            }
            const Index n = spec.n_grid[g];
            const double delta = spec.delta_grid[d];
            if (!(delta > 0.0)) {
                for (const char* m : {"power_eig", "power_trace", "power_fisher"}) {
                    report.add(row("power", param, n, p, delta, m, {0.0, 0.0}));
                }
                continue;
            }
            report.add(row("power", param, n, p, delta, "power_eig", proportion(s.eig, s.edges)));
            report.add(row("power", param, n, p, delta, "power_trace", proportion(s.trace, s.edges)));
            report.add(row("power", param, n, p, delta, "power_fisher", proportion(s.fisher, s.edges)));
            report.add(row("power", param, n, p, delta, "power_eig_effect", proportion(s.eig_strong, s.strong)));
            report.add(row("power", param, n, p, delta, "power_trace_effect", proportion(s.trace_strong, s.strong)));
            report.add(row("power", param, n, p, delta, "power_fisher_effect", proportion(s.fisher_strong, s.strong)));
            report.add(row("power", param, n, p, delta, "effect_edges", {s.strong, 0.0}));
        }
    }

    // Histogram of true |theta_ij| over the off-diagonal of every drawn graph.
    constexpr double kBinsPerUnit = 10.0;
    constexpr int kBins = 20;
    std::vector<double> hist(kBins + 1, 0.0);
    for (const auto& theta : thetas) {
        for (Eigen::Index i = 0; i < theta.rows(); ++i) {
            for (Eigen::Index j = i + 1; j < theta.cols(); ++j) {
                const int bin = std::min(kBins, static_cast<int>(std::abs(theta(i, j)) * kBinsPerUnit));
                hist[static_cast<std::size_t>(bin)] += 1;
            }
        }
    }
    for (int b = 0; b <= kBins; ++b) {
        const std::string lo = format_double(b / kBinsPerUnit);
        const std::string hi = b == kBins ? "inf" : format_double((b + 1) / kBinsPerUnit);
        const double count = hist[static_cast<std::size_t>(b)];
        report.add({"power_hist", param + ";bin=" + lo + ":" + hi, 0, p, 0.0, "abs_theta_count", count,
                    std::sqrt(count)});
    }
    return report;
}

ExperimentReport run_weyl_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const Index reps = spec.repetitions;
    const Index grid = spec.n_grid.size();
    const Index p = spec.p;
    const double delta = spec.delta_grid.front();
    if (!(delta > 0.0)) throw ConfigError("weyl experiment needs delta > 0");

    auto sigma_rng = make_rng(spec.seed, {kTagWeyl, kSigmaStream, p});
    const Eigen::MatrixXd sigma = random_correlation(p, sigma_rng, spec.latent_dim(p));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd alpha = solver.eigenvalues().reverse();

    struct Trial {
        Eigen::VectorXd alpha_hat;
        double eps_eig;
        double eps_trace;
    };
    std::vector<Trial> trials(grid * reps);
    parallel_for(trials.size(), [&](std::size_t slot) {
        const Index g = slot / reps;
        const Index r = slot % reps;
        auto rng = make_rng(spec.seed, {kTagWeyl, p, g, r});
        const auto x = sample(spec.distribution, sigma, spec.n_grid[g], rng);
        const auto a = analyze(x, AnalysisScope::Full);
        trials[slot] = {a.covariance.eigenvalues, epsilon_from_spread(*a.lambda_max, delta),
                        epsilon_from_spread(a.trace, delta)};
    });

    ExperimentReport report;
    const std::string dist(to_string(spec.distribution));
    for (Index g = 0; g < grid; ++g) {
        const Index n = spec.n_grid[g];
        for (Index k = 0; k < p; ++k) {
            const auto ek = static_cast<Eigen::Index>(k);
            const double truth = 1.0 / alpha(ek);
            const std::string param = dist + ";k=" + std::to_string(k + 1);
            std::vector<double> inv_hat;
            for (Index r = 0; r < reps; ++r) inv_hat.push_back(1.0 / trials[g * reps + r].alpha_hat(ek));
            report.add(row("weyl", param, n, p, delta, "inv_alpha_true", {truth, 0.0}));
            report.add(row("weyl", param, n, p, delta, "inv_alpha_hat", summarize(inv_hat)));
            for (BoundKind bound : {BoundKind::Eig, BoundKind::Trace}) {
                const std::string suffix(to_string(bound));
                std::vector<double> lower, upper, width;
                double contained = 0;
                for (Index r = 0; r < reps; ++r) {
                    const auto& t = trials[g * reps + r];
                    const double eps = bound == BoundKind::Eig ? t.eps_eig : t.eps_trace;
                    const auto iv = weyl_interval(t.alpha_hat(ek), eps);
                    lower.push_back(iv.lower);
                    upper.push_back(iv.upper);
                    width.push_back(iv.width());
                    contained += iv.contains(truth) ? 1 : 0;
                }
                const double med = median(width);
                const Summary ws = summarize(width);
                // Asymptotic standard error of a sample median under normality.
                const double med_se = std::isfinite(ws.se) ? 1.2533 * ws.se : ws.se;
                report.add(row("weyl", param, n, p, delta, "lower_" + suffix, summarize(lower)));
                report.add(row("weyl", param, n, p, delta, "upper_" + suffix, summarize(upper)));
                report.add(row("weyl", param, n, p, delta, "median_width_" + suffix, {med, med_se}));
                report.add(row("weyl", param, n, p, delta, "containment_" + suffix,
                               proportion(contained, static_cast<double>(reps))));
            }
        }
    }
    return report;
}

}  // namespace edgetest
