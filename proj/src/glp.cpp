#include "liouville/glp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/errors.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/stats.hpp"

namespace liouville {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double sum_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

MeasurableSet shift_set(const MeasurableSet& b, double dz) {
    MeasurableSet out = b;
    for (auto& [lo, hi] : out.intervals) {
        lo += dz;
        hi += dz;
    }
    for (auto& p : out.points) p += dz;
    return out;
}

void check_dim(const GlpSpec& spec, std::span<const double> x) {
    if (x.size() != spec.dim())
        throw DomainError("state vector dimension does not match the spec");
}

// Evaluations of Theta and transition laws stop horizon_eps short of the pin.
void check_open_time(const GlpSpec& spec, double t) {
    if (!(t >= 0.0 && t <= 1.0 - spec.horizon_eps))
        throw HorizonError("evaluation time capped at 1 - horizon_eps");
}

}  // namespace

ActivityVector::ActivityVector(std::vector<double> m) : m_(std::move(m)) {
    if (m_.empty()) throw DomainError("activity vector must be nonempty");
    partial_.reserve(m_.size() + 1);
    partial_.push_back(0.0);
    for (double v : m_) {
        if (!(v > 0.0)) throw DomainError("activity parameters must be positive");
        partial_.push_back(partial_.back() + v);
    }
}

GlpSpec::GlpSpec(DensityFamily family_, GeneratingLaw nu_, ActivityVector activity_,
                 double horizon_eps_)
    : family(family_), nu(std::move(nu_)), activity(std::move(activity_)),
      horizon_eps(horizon_eps_) {
    if (!(horizon_eps > 0.0 && horizon_eps < 0.5))
        throw DomainError("horizon_eps must lie in (0, 0.5)");
    nu.validate_against(family, total_activity());
}

PathGrid::PathGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw DomainError("path grid must be nonempty");
    if (times_.front() != 0.0) throw DomainError("path grid must start at 0");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1]))
            throw DomainError("path grid must be strictly increasing");
    if (times_.back() > 1.0) throw DomainError("path grid must end at or before 1");
}

PathGrid PathGrid::uniform(std::size_t steps, double t_last) {
    if (steps == 0) throw DomainError("grid needs at least one step");
    std::vector<double> times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k)
        times[k] = t_last * static_cast<double>(k) / static_cast<double>(steps);
    times.front() = 0.0;
    times.back() = t_last;
    return PathGrid(std::move(times));
}

std::size_t PathGrid::index_of(double t) const {
    const auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end() || *it != t)
        throw DomainError("time is not a grid point of this path");
    return static_cast<std::size_t>(it - times_.begin());
}

GlpPath sample_glp_master(const GlpSpec& spec, const PathGrid& grid, RngStream& rng) {
    const std::size_t n = spec.dim();
    const std::size_t K = grid.size();
    // All master times needed: block starts plus every in-block time.
    std::vector<double> master_times;
    master_times.reserve(n * (K + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const double base = spec.activity.block_start(i);
        master_times.push_back(base);
        for (std::size_t k = 0; k < K; ++k)
            master_times.push_back(base + grid[k] * spec.activity[i]);
    }
    std::sort(master_times.begin(), master_times.end());
    master_times.erase(std::unique(master_times.begin(), master_times.end()),
                       master_times.end());
    if (master_times.front() == 0.0) master_times.erase(master_times.begin());

    const double z = spec.nu.sample(rng);
    const auto master =
        sample_bridge_path(spec.family, {spec.total_activity(), z}, master_times, rng);
    auto value_at = [&](double tau) -> double {
        if (tau == 0.0) return 0.0;
        const auto it = std::lower_bound(master_times.begin(), master_times.end(), tau);
        return master[static_cast<std::size_t>(it - master_times.begin())];
    };

    GlpPath path{grid, {}, {}};
    path.values.assign(K, std::vector<double>(n, 0.0));
    path.sums.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double base = spec.activity.block_start(i);
            const double v = value_at(base + grid[k] * spec.activity[i]) - value_at(base);
            path.values[k][i] = v;
            r += v;
        }
        path.sums[k] = r;
    }
    return path;
}

GlpPath sample_glp_markov(const GlpSpec& spec, const PathGrid& grid, RngStream& rng) {
    const std::size_t n = spec.dim();
    const std::size_t K = grid.size();
    const double M = spec.total_activity();
    for (std::size_t k = 0; k < K; ++k)
        if (grid[k] < 1.0 && grid[k] > 1.0 - spec.horizon_eps)
            throw HorizonError("grid times below 1 must not exceed 1 - horizon_eps");

    GlpPath path{grid, {}, {}};
    path.values.assign(K, std::vector<double>(n, 0.0));
    path.sums.assign(K, 0.0);
    std::vector<double> state(n, 0.0);
    double s = 0.0, r_s = 0.0;
    std::vector<double> weights(n);
    for (std::size_t k = 1; k < K; ++k) {
        const double t = grid[k];
        const auto posterior =
            posterior_terminal_law(spec.nu, spec.family, M, s, r_s);
        const double z = posterior.sample(rng);
        double increment;
        if (t == 1.0) {
            increment = z - r_s;
        } else {
            const double r_t = sample_bridge_step(spec.family, s * M, r_s, t * M,
                                                  {M, z}, rng);
            increment = r_t - r_s;
        }
        for (std::size_t i = 0; i < n; ++i) weights[i] = (t - s) * spec.activity[i];
        const auto split =
            allocate_pinned_increment(spec.family, weights, increment, rng);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            state[i] += split[i];
            path.values[k][i] = state[i];
            r += state[i];
        }
        path.sums[k] = r;
        s = t;
        r_s = r;
    }
    return path;
}

double glp_transition_density(const GlpSpec& spec, double s, std::span<const double> x,
                              double t, std::span<const double> y) {
    check_dim(spec, x);
    check_dim(spec, y);
    if (!(0.0 <= s && s < t && t < 1.0))
        throw HorizonError("transition requires 0 <= s < t < 1");
    check_open_time(spec, t);
    const double M = spec.total_activity();
    const double log_den = log_big_theta(spec.nu, spec.family, M, s, sum_of(x));
    if (!std::isfinite(log_den))
        throw UnreachableStateError("transition from an unreachable state");
    double l = log_big_theta(spec.nu, spec.family, M, t, sum_of(y)) - log_den;
    for (std::size_t i = 0; i < spec.dim(); ++i)
        l += spec.family.log_density((t - s) * spec.activity[i], y[i] - x[i]);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

TerminalTransitionLaw::TerminalTransitionLaw(const GlpSpec& spec, double s,
                                             std::vector<double> x)
    : spec_(spec), s_(s), x_(std::move(x)), sum_x_(0.0),
      tau_(1.0 - spec.activity[spec.dim() - 1] * (1.0 - s) / spec.total_activity()),
      log_norm_(0.0),
      posterior_(posterior_terminal_law(spec.nu, spec.family, spec.total_activity(),
                                        s, sum_of(x_))) {
    check_dim(spec_, x_);
    if (!(s >= 0.0 && s < 1.0))
        throw HorizonError("terminal transition law requires s in [0, 1)");
    check_open_time(spec_, s);
    sum_x_ = sum_of(x_);
    log_norm_ = log_big_theta(spec_.nu, spec_.family, spec_.total_activity(), s, sum_x_);
    if (!std::isfinite(log_norm_))
        throw UnreachableStateError("terminal law from an unreachable state");
}

double TerminalTransitionLaw::partial_density(std::span<const double> z_head,
                                              const MeasurableSet& b) const {
    const std::size_t n = spec_.dim();
    if (z_head.size() + 1 != n)
        throw DomainError("expected the first n-1 terminal coordinates");
    double head_sum = 0.0;
    double l = -log_norm_;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        l += spec_.family.log_density((1.0 - s_) * spec_.activity[i], z_head[i] - x_[i]);
        head_sum += z_head[i];
    }
    if (!std::isfinite(l)) return 0.0;
    const double th = theta(spec_.nu, spec_.family, spec_.total_activity(), tau_,
                            x_[n - 1] + head_sum, shift_set(b, head_sum));
    return th * std::exp(l);
}

double TerminalTransitionLaw::density(std::span<const double> z) const {
    const std::size_t n = spec_.dim();
    if (z.size() != n) throw DomainError("terminal vector dimension mismatch");
    for (const auto& a : spec_.nu.atoms())
        if (a.mass > 0.0)
            throw UnsupportedLawError(
                "joint terminal density requires a generating law with a density");
    const double zsum = sum_of(z);
    const double p = spec_.nu.continuous_density(zsum);
    if (p <= 0.0) return 0.0;
    double l = std::log(p) -
               spec_.family.log_density(spec_.total_activity(), zsum) - log_norm_;
    for (std::size_t i = 0; i < n; ++i)
        l += spec_.family.log_density((1.0 - s_) * spec_.activity[i], z[i] - x_[i]);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

std::vector<double> TerminalTransitionLaw::mean() const {
    const double shift = posterior_.mean() - sum_x_;
    const double M = spec_.total_activity();
    std::vector<double> out(spec_.dim());
    for (std::size_t i = 0; i < spec_.dim(); ++i)
        out[i] = x_[i] + spec_.activity[i] / M * shift;
    return out;
}

std::vector<double> TerminalTransitionLaw::sample(RngStream& rng) const {
    const double z = posterior_.sample(rng);
    std::vector<double> weights(spec_.dim());
    for (std::size_t i = 0; i < spec_.dim(); ++i)
        weights[i] = (1.0 - s_) * spec_.activity[i];
    const auto split =
        allocate_pinned_increment(spec_.family, weights, z - sum_x_, rng);
    std::vector<double> out(spec_.dim());
    for (std::size_t i = 0; i < spec_.dim(); ++i) out[i] = x_[i] + split[i];
    return out;
}

TerminalTransitionLaw terminal_transition_law(const GlpSpec& spec, double s,
                                              std::span<const double> x) {
    return TerminalTransitionLaw(spec, s, std::vector<double>(x.begin(), x.end()));
}

double marginal_transition_density(const GlpSpec& spec, std::size_t i, double s,
                                   double x_i, double t, double y_i) {
    if (i >= spec.dim()) throw DomainError("coordinate index out of range");
    if (!(0.0 <= s && s < t && t < 1.0))
        throw HorizonError("transition requires 0 <= s < t < 1");
    check_open_time(spec, t);
    const double M = spec.total_activity();
    const double mi = spec.activity[i];
    // Psi^i_t(y) = Theta_{t m_i / M}(y): the same unnormalised measure run at
    // the coordinate's own activity speed.
    const double log_den = log_big_theta(spec.nu, spec.family, M, s * mi / M, x_i);
    if (!std::isfinite(log_den))
        throw UnreachableStateError("marginal transition from an unreachable state");
    const double l = log_big_theta(spec.nu, spec.family, M, t * mi / M, y_i) - log_den +
                     spec.family.log_density((t - s) * mi, y_i - x_i);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

double fully_conditioned_marginal_density(const GlpSpec& spec, std::size_t i, double s,
                                          std::span<const double> x, double t,
                                          double y_i) {
    check_dim(spec, x);
    if (i >= spec.dim()) throw DomainError("coordinate index out of range");
    if (!(0.0 <= s && s < t && t < 1.0))
        throw HorizonError("transition requires 0 <= s < t < 1");
    check_open_time(spec, t);
    const double M = spec.total_activity();
    const double mi = spec.activity[i];
    const double sx = sum_of(x);
    const double log_den = log_big_theta(spec.nu, spec.family, M, s, sx);
    if (!std::isfinite(log_den))
        throw UnreachableStateError("transition from an unreachable state");
    // Theta^i_t(x, y) = Theta_{s + (t-s) m_i / M}(sum x + (y - x_i)).
    const double t2 = s + (t - s) * mi / M;
    const double l =
        log_big_theta(spec.nu, spec.family, M, t2, sx + (y_i - x[i])) - log_den +
        spec.family.log_density((t - s) * mi, y_i - x[i]);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

RProcessLaws r_process_laws(const GlpSpec& spec, double s, std::span<const double> x) {
    check_dim(spec, x);
    check_open_time(spec, s);
    const double M = spec.total_activity();
    const double sx = sum_of(x);
    const double log_den = log_big_theta(spec.nu, spec.family, M, s, sx);
    if (!std::isfinite(log_den))
        throw UnreachableStateError("conditioning on an unreachable state");
    RProcessLaws out{posterior_terminal_law(spec.nu, spec.family, M, s, sx), {}};
    const GeneratingLaw nu = spec.nu;
    const DensityFamily family = spec.family;
    const double eps = spec.horizon_eps;
    out.transition = [nu, family, M, s, sx, log_den, eps](double t, double r) {
        if (!(t > s && t <= 1.0 - eps))
            throw HorizonError("sum transition requires s < t <= 1 - horizon_eps");
        const double l = log_big_theta(nu, family, M, t, r) - log_den +
                         family.log_density((t - s) * M, r - sx);
        return std::isfinite(l) ? std::exp(l) : 0.0;
    };
    return out;
}

double conditional_mean_r(const GlpSpec& spec, double s, std::span<const double> x,
                          double t) {
    check_dim(spec, x);
    if (!spec.family.has_mean())
        throw IntegrabilityError("conditional mean undefined for this family");
    if (!(0.0 <= s && s < t && t <= 1.0))
        throw HorizonError("conditional mean requires 0 <= s < t <= 1");
    check_open_time(spec, s);
    const double sx = sum_of(x);
    const double terminal_mean =
        posterior_terminal_mean(spec.nu, spec.family, spec.total_activity(), s, sx);
    return (1.0 - t) / (1.0 - s) * sx + (t - s) / (1.0 - s) * terminal_mean;
}

ResidualPath martingale_residual(const GlpSpec& spec, const GlpPath& path) {
    if (!spec.family.has_mean())
        throw IntegrabilityError("martingale residual undefined for this family");
    const std::size_t K = path.grid.size();
    const std::size_t n = spec.dim();
    const double M = spec.total_activity();
    if (path.grid[K - 1] > 1.0 - spec.horizon_eps)
        throw HorizonError("residual grid must stay within [0, 1 - horizon_eps]");
    ResidualPath out;
    out.sum.assign(K, 0.0);
    out.coords.assign(K, std::vector<double>(n, 0.0));
    double acc = 0.0;
    std::vector<double> acc_coord(n, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        out.sum[k] = path.sums[k] - acc;
        for (std::size_t i = 0; i < n; ++i)
            out.coords[k][i] = path.values[k][i] - acc_coord[i];
        if (k + 1 < K) {
            const double s = path.grid[k];
            const double dt = path.grid[k + 1] - s;
            const double terminal_mean = posterior_terminal_mean(
                spec.nu, spec.family, M, s, path.sums[k]);
            const double drift = (terminal_mean - path.sums[k]) / (1.0 - s);
            acc += drift * dt;
            for (std::size_t i = 0; i < n; ++i)
                acc_coord[i] += spec.activity[i] / M * drift * dt;
        }
    }
    return out;
}

double rn_density(const GlpSpec& spec, const GlpPath& path, double t) {
    check_open_time(spec, t);
    const std::size_t k = path.grid.index_of(t);
    const double l = log_big_theta(spec.nu, spec.family, spec.total_activity(), t,
                                   path.sums[k]);
    if (!std::isfinite(l))
        throw UnreachableStateError("density change at an unreachable state");
    return std::exp(-l);
}

HarnessReport harness_statistic(const GlpSpec& spec, std::span<const GlpPath> paths,
                                double a, double b, double c, double d,
                                std::size_t bins_per_axis, std::size_t min_bin_count) {
    if (!spec.family.has_mean())
        throw IntegrabilityError("harness statistic undefined for this family");
    if (!(0.0 <= a && a < b && b < c && c < d && d <= 1.0))
        throw DomainError("harness times must satisfy 0 <= a < b < c < d <= 1");
    if (paths.empty()) throw InsufficientDataError("harness statistic needs paths");
    const std::size_t n = paths.size();
    const auto& grid = paths.front().grid;
    const std::size_t ka = grid.index_of(a), kb = grid.index_of(b);
    const std::size_t kc = grid.index_of(c), kd = grid.index_of(d);

    std::vector<double> ra(n), rd(n), stat(n);
    for (std::size_t p = 0; p < n; ++p) {
        ra[p] = paths[p].sums[ka];
        rd[p] = paths[p].sums[kd];
        const double slope = (paths[p].sums[kc] - paths[p].sums[kb]) / (c - b);
        const double chord = (rd[p] - ra[p]) / (d - a);
        stat[p] = slope - chord;
    }
    const auto bin_a = equal_count_bins(ra, bins_per_axis);
    // Equal-count split on R_d nested inside each R_a bin.
    std::vector<std::size_t> bin(n);
    for (std::size_t ba = 0; ba < bins_per_axis; ++ba) {
        std::vector<std::size_t> members;
        std::vector<double> vals;
        for (std::size_t p = 0; p < n; ++p)
            if (bin_a[p] == ba) {
                members.push_back(p);
                vals.push_back(rd[p]);
            }
        if (members.empty()) continue;
        const auto sub = equal_count_bins(vals, bins_per_axis);
        for (std::size_t j = 0; j < members.size(); ++j)
            bin[members[j]] = ba * bins_per_axis + sub[j];
    }

    const std::size_t total_bins = bins_per_axis * bins_per_axis;
    HarnessReport report{};
    report.bins = total_bins;
    report.n = n;
    double pooled_num = 0.0;
    double pooled_var = 0.0;
    for (std::size_t bi = 0; bi < total_bins; ++bi) {
        std::vector<double> xs;
        for (std::size_t p = 0; p < n; ++p)
            if (bin[p] == bi) xs.push_back(stat[p]);
        if (xs.size() < min_bin_count)
            throw InsufficientDataError("harness bin below the minimum count");
        const auto ms = mean_se(xs);
        const double zscore = std::abs(ms.mean) / ms.se;
        if (zscore > report.max_abs_z) {
            report.max_abs_z = zscore;
            report.worst_estimate = ms.mean;
            report.worst_se = ms.se;
        }
        const double w = static_cast<double>(xs.size()) / static_cast<double>(n);
        pooled_num += w * ms.mean;
        pooled_var += w * w * ms.se * ms.se;
    }
    report.pooled_estimate = pooled_num;
    report.pooled_se = std::sqrt(pooled_var);
    return report;
}

std::vector<double> z_martingale(const GlpSpec& spec, const GlpPath& path,
                                 const std::function<double(double)>& phi) {
    if (!spec.family.has_mean())
        throw IntegrabilityError("Z martingale undefined for this family");
    const std::size_t K = path.grid.size();
    if (path.grid[K - 1] > 1.0 - spec.horizon_eps)
        throw HorizonError("Z martingale grid must stay within [0, 1 - horizon_eps]");
    std::vector<double> z(K, 0.0);
    double stieltjes = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double t = path.grid[k];
        const double tail = integrate(phi, t, 1.0, 1e-10);
        const double terminal_mean = posterior_terminal_mean(
            spec.nu, spec.family, spec.total_activity(), t, path.sums[k]);
        z[k] = (terminal_mean - path.sums[k]) / (1.0 - t) * tail + stieltjes;
        if (k + 1 < K)
            stieltjes += phi(t) * (path.sums[k + 1] - path.sums[k]);
    }
    return z;
}

namespace {

// CDF of the marginal (weak-Markov) coordinate transition, used for the
// probability-integral transform in the consistency experiment.
double marginal_transition_cdf(const GlpSpec& spec, std::size_t i, double s, double x,
                               double t, double y, RngStream* randomize) {
    const double mi = spec.activity[i];
    if (spec.family.is_lattice()) {
        double acc = 0.0;
        const int yi = static_cast<int>(std::floor(y + 0.5));
        const int xi = static_cast<int>(std::floor(x + 0.5));
        double zmax = 0.0;
        for (const auto& a : spec.nu.atoms())
            if (a.mass > 0.0) zmax = std::max(zmax, a.location);
        for (int v = xi; v < yi && v <= static_cast<int>(zmax); ++v)
            acc += marginal_transition_density(spec, i, s, x, t, v);
        double at = 0.0;
        if (yi <= static_cast<int>(zmax))
            at = marginal_transition_density(spec, i, s, x, t, yi);
        // Randomised PIT makes the transform exactly uniform on a lattice.
        return acc + (randomize ? randomize->uniform() : 1.0) * at;
    }
    double zlo = std::numeric_limits<double>::infinity();
    double zhi = -zlo;
    for (const auto& a : spec.nu.atoms()) {
        if (a.mass <= 0.0) continue;
        zlo = std::min(zlo, a.location);
        zhi = std::max(zhi, a.location);
    }
    if (spec.nu.has_continuous()) {
        zlo = std::min(zlo, spec.nu.continuous_lower());
        zhi = std::max(zhi, spec.nu.continuous_upper());
    }
    const auto win = kernel_window(spec.family, (t - s) * mi, x);
    double lo = win.first, hi = win.second;
    if (spec.family.support() == Support::RealLine) {
        const double pad = spec.family.sigma() * std::sqrt(spec.total_activity()) * 12.0;
        lo = std::min(lo, zlo - pad);
        hi = std::max(hi, zhi + pad);
    } else {
        lo = x;
        hi = std::min(hi, zhi);  // the coordinate cannot pass the carrier of nu
    }
    if (y <= lo) return 0.0;
    if (y >= hi) return 1.0;
    auto dens = [&](double v) {
        return marginal_transition_density(spec, i, s, x, t, v);
    };
    const auto seeds = kernel_seed_points(spec.family, (t - s) * mi, x);
    const double num = integrate(dens, lo, y, 1e-9, 4000, seeds);
    const double den = num + integrate(dens, y, hi, 1e-9, 4000, seeds);
    return den > 0.0 ? std::min(1.0, num / den) : 0.0;
}

}  // namespace

ConsistencyReport consistency_experiment(const GlpSpec& spec, double s, double t,
                                         std::size_t n_paths, RngStream& rng) {
    if (spec.dim() < 2)
        throw DomainError("consistency experiment needs at least two coordinates");
    if (!(0.0 < s && s < t && t <= 1.0 - spec.horizon_eps))
        throw HorizonError("consistency experiment requires 0 < s < t <= 1 - eps");
    if (n_paths < 1000)
        throw InsufficientDataError("consistency experiment needs >= 1000 paths");
    const std::size_t n = spec.dim();
    const PathGrid grid({0.0, s, t});

    std::vector<std::vector<double>> xs(n), ys(n);
    std::vector<double> rs(n_paths), weights(n_paths);
    for (auto& v : xs) v.reserve(n_paths);
    for (auto& v : ys) v.reserve(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) {
        RngStream path_rng(rng.next_u64(), p);
        const auto path = sample_glp_master(spec, grid, path_rng);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i].push_back(path.values[1][i]);
            ys[i].push_back(path.values[2][i]);
        }
        rs[p] = path.sums[1];
        weights[p] = rn_density(spec, path, t);
    }

    ConsistencyReport report;
    report.n_paths = n_paths;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> pit(n_paths);
        for (std::size_t p = 0; p < n_paths; ++p)
            pit[p] = marginal_transition_cdf(spec, i, s, xs[i][p], t, ys[i][p],
                                             spec.family.is_lattice() ? &rng : nullptr);
        const double d = ks_statistic(pit, [](double u) { return u; });
        report.weak_ks_p.push_back(ks_p_value(d, static_cast<double>(n_paths)));

        std::vector<double> incr(n_paths);
        for (std::size_t p = 0; p < n_paths; ++p) incr[p] = ys[i][p] - xs[i][p];
        const auto fit = ols(incr, {xs[i], rs});
        report.strong_coef.push_back(fit.coef[2]);
        report.strong_se.push_back(fit.se[2]);
        const auto control = ols(incr, {xs[i], rs}, weights);
        report.control_coef.push_back(control.coef[2]);
        report.control_se.push_back(control.se[2]);
    }
    return report;
}

}  // namespace liouville
