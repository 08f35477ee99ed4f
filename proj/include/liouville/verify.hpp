#ifndef LIOUVILLE_VERIFY_HPP
#define LIOUVILLE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "liouville/glp.hpp"
#include "liouville/stats.hpp"

namespace liouville {

// One statistical check: either a moment test (|estimate - null| <= k se),
// a KS test (p >= alpha) or a deterministic identity (|estimate| <= tol,
// se and p unused).
struct VerificationReport {
    std::string name;
    std::string null_hypothesis;
    double estimate = 0.0;
    double null_value = 0.0;
    double se = std::numeric_limits<double>::quiet_NaN();
    double p_value = std::numeric_limits<double>::quiet_NaN();
    double threshold = 3.0;
    bool pass = false;
    std::size_t sample_size = 0;
    std::uint64_t seed = 0;
};

VerificationReport moment_report(std::string name, std::string null_hypothesis,
                                 double estimate, double null_value, double se,
                                 double k, std::size_t n, std::uint64_t seed);

VerificationReport deterministic_report(std::string name, std::string null_hypothesis,
                                        double deviation, double tol,
                                        std::uint64_t seed);

// One-sample Kolmogorov-Smirnov against a CDF callable; needs >= 100 samples.
VerificationReport ks_one_sample(std::vector<double> samples,
                                 const std::function<double(double)>& cdf,
                                 std::string name, std::uint64_t seed,
                                 double alpha = 0.01);

VerificationReport ks_two_sample(std::vector<double> a, std::vector<double> b,
                                 std::string name, std::uint64_t seed,
                                 double alpha = 0.01);

// Martingale check over a bundle of paths sampled on a common time grid:
// per step, the mean increment and the slope of increments on the current
// value must vanish; the report carries the worst |z|. Needs >= 10^4 paths.
VerificationReport martingale_test(const std::vector<std::vector<double>>& paths,
                                   std::span<const double> times, std::string name,
                                   std::uint64_t seed, double k = 3.0);

// Named verification suites for a spec: "kernels-core", "lrb-core",
// "glp-core", "blp-core" (Brownian), "plp-core" (Poisson).  Deterministic
// given (seed, budget); budget is the path count of the largest test.
std::vector<VerificationReport> run_suite(const GlpSpec& spec, const std::string& suite,
                                          std::size_t budget, std::uint64_t seed);

std::vector<std::string> suite_names();

std::string to_jsonl(std::span<const VerificationReport> reports);
std::string to_table(std::span<const VerificationReport> reports);

}  // namespace liouville

#endif
