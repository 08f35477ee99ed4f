#include "liouville/blp.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

void require_brownian(const GlpSpec& spec) {
    if (spec.family.kind() != FamilyKind::Brownian)
        throw DomainError("operation requires a Brownian family");
}

}  // namespace

std::vector<double> sample_z_vector(const GlpSpec& spec, RngStream& rng) {
    require_brownian(spec);
    const std::size_t n = spec.dim();
    const double M = spec.total_activity();
    std::vector<double> g(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = rng.normal(0.0, std::sqrt(spec.activity[i]));
        total += g[i];
    }
    for (std::size_t i = 0; i < n; ++i) g[i] -= spec.activity[i] / M * total;
    return g;
}

BlpDraw sample_blp_anticipative(const GlpSpec& spec, const PathGrid& grid,
                                RngStream& rng) {
    require_brownian(spec);
    const std::size_t n = spec.dim();
    const std::size_t K = grid.size();
    const double M = spec.total_activity();
    const double sigma = spec.family.sigma();

    BlpDraw draw;
    draw.r1 = spec.nu.sample(rng);
    draw.z = sample_z_vector(spec, rng);
    draw.bridges.assign(K, std::vector<double>(n, 0.0));
    // Sequential Gaussian conditioning of each standard bridge on [0,1].
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0, b = 0.0;
        for (std::size_t k = 1; k < K; ++k) {
            const double t = grid[k];
            if (t >= 1.0) {
                b = 0.0;
            } else {
                const double mean = b * (1.0 - t) / (1.0 - s);
                const double var = (t - s) * (1.0 - t) / (1.0 - s);
                b = rng.normal(mean, std::sqrt(var));
            }
            draw.bridges[k][i] = b;
            s = t;
        }
    }
    draw.path.grid = grid;
    draw.path.values.assign(K, std::vector<double>(n, 0.0));
    draw.path.sums.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = grid[k] * (spec.activity[i] / M * draw.r1 + sigma * draw.z[i]) +
                             sigma * std::sqrt(spec.activity[i]) * draw.bridges[k][i];
            draw.path.values[k][i] = v;
            r += v;
        }
        draw.path.sums[k] = r;
    }
    return draw;
}

PosteriorState blp_posterior(const GlpSpec& spec, double t, std::span<const double> xi) {
    require_brownian(spec);
    if (!spec.nu.is_atomic())
        throw UnsupportedLawError("posterior filter requires a purely atomic law");
    if (xi.size() != spec.dim()) throw DomainError("state dimension mismatch");
    if (!(t >= 0.0 && t <= 1.0 - spec.horizon_eps))
        throw HorizonError("posterior filter requires t <= 1 - horizon_eps");

    const double M = spec.total_activity();
    const double sigma = spec.family.sigma();
    PosteriorState st;
    st.t = t;
    st.state.assign(xi.begin(), xi.end());
    st.sum_state = 0.0;
    for (double v : xi) st.sum_state += v;

    std::vector<double> logw;
    for (const auto& a : spec.nu.atoms()) {
        if (a.mass <= 0.0) continue;
        st.atoms.push_back(a.location);
        double l = std::log(a.mass);
        if (t > 0.0)
            l += (a.location * st.sum_state - t * a.location * a.location / 2.0) /
                 (sigma * sigma * M * (1.0 - t));
        logw.push_back(l);
    }
    const double shift = *std::max_element(logw.begin(), logw.end());
    double total = 0.0;
    st.weights.resize(logw.size());
    for (std::size_t j = 0; j < logw.size(); ++j) {
        st.weights[j] = std::exp(logw[j] - shift);
        total += st.weights[j];
    }
    st.sum_mean = 0.0;
    for (std::size_t j = 0; j < logw.size(); ++j) {
        st.weights[j] /= total;
        st.sum_mean += st.weights[j] * st.atoms[j];
    }
    st.cond_mean.resize(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i)
        st.cond_mean[i] = st.state[i] + spec.activity[i] / M * (st.sum_mean - st.sum_state);
    return st;
}

std::vector<double> sigma_weights(const PosteriorState& state, const GlpSpec& spec,
                                  double atom) {
    require_brownian(spec);
    const double M = spec.total_activity();
    const double sigma = spec.family.sigma();
    const double one_minus_t = 1.0 - state.t;
    std::vector<double> out(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i) {
        const double mi = spec.activity[i];
        const double xi_atom = state.state[i] + mi / M * (atom - state.sum_state);
        out[i] = (xi_atom - state.cond_mean[i]) / (sigma * sigma * mi * one_minus_t);
    }
    return out;
}

}  // namespace liouville
