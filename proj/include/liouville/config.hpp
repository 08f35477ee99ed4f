#ifndef LIOUVILLE_CONFIG_HPP
#define LIOUVILLE_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liouville/glp.hpp"

namespace liouville {

// Versioned key/value run configuration with [spec], [grid] and [run]
// sections. Parse errors carry the offending line number.
struct RunConfig {
    int version = 1;

    // [spec]
    std::string family = "brownian";  // brownian | gamma | poisson | stable-half
    double sigma = 1.0;               // brownian scale
    double stable_scale = 1.0;        // 1/2-stable scale
    std::vector<double> m;
    std::vector<Atom> nu_atoms;
    std::optional<NamedDensity> nu_density;
    double nu_density_weight = 0.0;
    double horizon_eps = 1e-6;

    // [grid]
    std::string grid_kind = "uniform";  // uniform | explicit
    std::size_t grid_points = 11;       // number of grid times, including 0
    double grid_t_last = 1.0;
    std::vector<double> grid_times;

    // [run]
    std::string sampler = "master";  // master | markov | anticipative
    std::uint64_t seed = 0;
    std::size_t paths = 100;
    std::string out;
    std::string suite;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text,
                                  const std::string& origin = "<string>");
    std::string to_string() const;

    GlpSpec build_spec() const;
    PathGrid build_grid() const;
    void validate() const;  // cross-field checks (sampler vs family, ...)

    bool operator==(const RunConfig&) const;
};

// Shortest round-trip decimal formatting (exact parse-back).
std::string format_double(double v);

// Paths CSV: header path_id,time,coord_1..coord_n,R; exact per-value
// round-trip through format_double.
void write_paths_csv(std::ostream& os, std::span<const GlpPath> paths);
std::vector<GlpPath> read_paths_csv(std::istream& is);

// Jump-time CSV: path_id,coordinate,jump_time.
struct JumpRow {
    std::size_t path_id;
    std::size_t coordinate;
    double time;
};
void write_jump_csv(std::ostream& os, std::span<const JumpRow> rows);

// Posterior trajectory CSV: path_id,time,atom,weight.
struct PosteriorRow {
    std::size_t path_id;
    double time;
    double atom;
    double weight;
};
void write_posterior_csv(std::ostream& os, std::span<const PosteriorRow> rows);

}  // namespace liouville

#endif
