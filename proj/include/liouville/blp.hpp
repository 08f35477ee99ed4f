#ifndef LIOUVILLE_BLP_HPP
#define LIOUVILLE_BLP_HPP

#include <span>
#include <vector>

#include "liouville/glp.hpp"

namespace liouville {

// Anticipative decomposition of a Brownian Liouville path:
//   xi_t = t (m/M r1 + sigma Z) + sigma sqrt(m) o beta_t,
// with sum(Z) = 0 and independent standard bridges beta (var t(1-t)).
struct BlpDraw {
    double r1;
    std::vector<double> z;
    std::vector<std::vector<double>> bridges;  // bridges[k][i] at grid time k
    GlpPath path;
};

// Draw of the zero-sum Gaussian Z with cov(Z_i,Z_j) = delta_ij m_i - m_i m_j / M.
std::vector<double> sample_z_vector(const GlpSpec& spec, RngStream& rng);

// Requires a Brownian family. Exact in law, and exact at t = 1.
BlpDraw sample_blp_anticipative(const GlpSpec& spec, const PathGrid& grid,
                                RngStream& rng);

// Exact conditional law of the terminal sum given the state at t, for a
// purely atomic generating law:
//   w_j propto nu_j exp{ (z_j R_t - t z_j^2 / 2) / (sigma^2 M (1 - t)) },
// computed in log space with max subtraction. The n-vector conditional means
// E(xi_1^i | xi_t) complete the filter state.
struct PosteriorState {
    double t;
    std::vector<double> atoms;      // support of nu
    std::vector<double> weights;    // nonnegative, sum to 1
    std::vector<double> state;      // xi_t
    double sum_state;               // R_t
    double sum_mean;                // E(R_1 | xi_t)
    std::vector<double> cond_mean;  // E(xi_1^i | xi_t)
};
PosteriorState blp_posterior(const GlpSpec& spec, double t, std::span<const double> xi);

// Volatility weights of the measure-valued filter for one atom of nu:
//   sigma_t^i = (x^i - E(xi_1^i | xi_t)) / (sigma^2 m_i (1-t)),
// where x^i is the atom's conditional coordinate split
//   x^i = xi_t^i + m_i / M (z - R_t).
std::vector<double> sigma_weights(const PosteriorState& state, const GlpSpec& spec,
                                  double atom);

}  // namespace liouville

#endif
