#ifndef LIOUVILLE_PLP_HPP
#define LIOUVILLE_PLP_HPP

#include <span>
#include <vector>

#include "liouville/glp.hpp"

namespace liouville {

// Poisson Liouville process: counting coordinates with multinomial split
// probabilities p_i = m_i / M.
struct PlpSpec {
    PlpSpec(GeneratingLaw nu, ActivityVector activity, double horizon_eps = 1e-6);
    GlpSpec glp;
    std::vector<double> p;  // m_i / M

    std::size_t dim() const { return glp.dim(); }
    double mass(std::uint64_t k) const;  // A(k) = nu({k})
    double max_count() const;            // largest atom of nu
};

// Terminal pmf P(xi_1 = x) = A(sum x) (sum x)! prod_i p_i^{x_i} / x_i!.
double plp_terminal_pmf(const PlpSpec& spec, std::span<const double> x);

// Intensity of the sum process: (E(R_1 | xi_t) - R_t) / (1 - t).
double intensity_r(const PlpSpec& spec, double t, double r_t);

// Coordinate intensity m_i / M * lambda^R; the coordinate intensities sum to
// the sum-process intensity exactly.
double intensity_coordinate(const PlpSpec& spec, std::size_t i, double t, double r_t);

// Survival laws of the first-jump times T^i (T^i = infinity when coordinate
// i never jumps):
//   P(T^i > s)            = G_nu(1 - s p_i)
//   P(T^i = infinity)     = G_nu(1 - p_i)
//   P(T^i > s_i for all)  = G_nu(1 - sum_i p_i s_i)
//   P(all T^i = infinity) = A(0)
double survival_single(const PlpSpec& spec, std::size_t i, double s);
double survival_never(const PlpSpec& spec, std::size_t i);
double survival_joint(const PlpSpec& spec, std::span<const double> s);
double survival_all_never(const PlpSpec& spec);

// Generator psi(x) = G_nu(1 - x) of the joint first-jump survival structure,
// its inverse by monotone bisection, and the joint evaluation
//   psi(sum_i psi^{-1}(u_i)).
// Each u_i must lie in [psi(p_i), 1], the range where psi^{-1}(u_i)/p_i is a
// time inside [0, 1].
double psi(const PlpSpec& spec, double x);
double psi_inverse(const PlpSpec& spec, double u);
double psi_structure(const PlpSpec& spec, std::span<const double> u);

// Exact event times: terminal counts split multinomially, then jump times
// are order statistics of uniforms on (0, 1).
struct JumpRecord {
    std::vector<double> terminal;                  // xi_1 per coordinate
    std::vector<std::vector<double>> times;        // sorted jump times per coordinate
    std::vector<double> first;                     // T^i; +infinity when no jump
    double count_at(std::size_t i, double t) const;  // xi^i_t
};
JumpRecord sample_jump_times(const PlpSpec& spec, RngStream& rng);

}  // namespace liouville

#endif
