#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liouville/blp.hpp"
#include "liouville/config.hpp"
#include "liouville/errors.hpp"
#include "liouville/plp.hpp"
#include "liouville/verify.hpp"

namespace {

using namespace liouville;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::string> out;
    std::optional<std::string> suite;
    std::optional<std::string> sampler;
};

RunConfig load(const Overrides& o) {
    RunConfig cfg = RunConfig::parse_file(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.paths) cfg.paths = *o.paths;
    if (o.out) cfg.out = *o.out;
    if (o.suite) cfg.suite = *o.suite;
    if (o.sampler) cfg.sampler = *o.sampler;
    cfg.validate();
    return cfg;
}

int cmd_sample(const Overrides& o, const std::string& jump_out,
               const std::string& posterior_out) {
    const RunConfig cfg = load(o);
    if (cfg.out.empty()) throw ConfigError("sample needs an output path (out = ...)");
    const GlpSpec spec = cfg.build_spec();
    const PathGrid grid = cfg.build_grid();

    std::vector<GlpPath> paths;
    paths.reserve(cfg.paths);
    for (std::size_t p = 0; p < cfg.paths; ++p) {
        RngStream rng(cfg.seed, p);
        if (cfg.sampler == "markov")
            paths.push_back(sample_glp_markov(spec, grid, rng));
        else if (cfg.sampler == "anticipative")
            paths.push_back(sample_blp_anticipative(spec, grid, rng).path);
        else
            paths.push_back(sample_glp_master(spec, grid, rng));
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + cfg.out);
    write_paths_csv(os, paths);

    if (!jump_out.empty()) {
        if (spec.family.kind() != FamilyKind::Poisson)
            throw ConfigError("--jump-times requires the poisson family");
        const PlpSpec plp(spec.nu, spec.activity, spec.horizon_eps);
        std::vector<JumpRow> rows;
        for (std::size_t p = 0; p < cfg.paths; ++p) {
            RngStream rng(cfg.seed, p, 1);
            const auto rec = sample_jump_times(plp, rng);
            for (std::size_t i = 0; i < plp.dim(); ++i)
                for (double t : rec.times[i]) rows.push_back({p, i, t});
        }
        std::ofstream jos(jump_out, std::ios::binary);
        if (!jos) throw ConfigError("cannot open output file: " + jump_out);
        write_jump_csv(jos, rows);
    }
    if (!posterior_out.empty()) {
        if (spec.family.kind() != FamilyKind::Brownian || !spec.nu.is_atomic())
            throw ConfigError("--posterior requires a Brownian spec with atomic law");
        std::vector<PosteriorRow> rows;
        for (std::size_t p = 0; p < paths.size(); ++p) {
            for (std::size_t k = 0; k < grid.size(); ++k) {
                if (grid[k] > 1.0 - spec.horizon_eps) continue;
                const auto post = blp_posterior(spec, grid[k], paths[p].values[k]);
                for (std::size_t j = 0; j < post.atoms.size(); ++j)
                    rows.push_back({p, grid[k], post.atoms[j], post.weights[j]});
            }
        }
        std::ofstream pos(posterior_out, std::ios::binary);
        if (!pos) throw ConfigError("cannot open output file: " + posterior_out);
        write_posterior_csv(pos, rows);
    }
    std::cout << "wrote " << paths.size() << " paths to " << cfg.out << "\n";
    return 0;
}

int cmd_density(const Overrides& o, const std::string& kind, double s, double t,
                const std::vector<double>& x, const std::vector<double>& y,
                std::size_t coord, double r) {
    const RunConfig cfg = load(o);
    const GlpSpec spec = cfg.build_spec();
    double value = 0.0;
    if (kind == "transition") {
        value = glp_transition_density(spec, s, x, t, y);
    } else if (kind == "marginal") {
        if (x.size() != 1 || y.size() != 1)
            throw ConfigError("marginal density takes scalar --x and --y");
        value = marginal_transition_density(spec, coord, s, x[0], t, y[0]);
    } else if (kind == "fully-conditioned") {
        if (y.size() != 1)
            throw ConfigError("fully-conditioned density takes a scalar --y");
        value = fully_conditioned_marginal_density(spec, coord, s, x, t, y[0]);
    } else if (kind == "r-transition") {
        value = r_process_laws(spec, s, x).transition(t, r);
    } else if (kind == "terminal-mean") {
        const auto law = terminal_transition_law(spec, s, x);
        const auto mean = law.mean();
        for (std::size_t i = 0; i < mean.size(); ++i)
            std::printf("%s%.12g", i ? "," : "", mean[i]);
        std::printf("\n");
        return 0;
    } else {
        throw ConfigError("unknown density kind '" + kind + "'");
    }
    std::printf("%.12g\n", value);
    return 0;
}

int cmd_verify(const Overrides& o) {
    const RunConfig cfg = load(o);
    if (cfg.suite.empty()) throw ConfigError("verify needs a suite name");
    const GlpSpec spec = cfg.build_spec();
    const auto reports = run_suite(spec, cfg.suite, cfg.paths, cfg.seed);
    const std::string report_path = cfg.out.empty() ? "report.jsonl" : cfg.out;
    std::ofstream os(report_path, std::ios::binary);
    if (!os) throw ConfigError("cannot open report file: " + report_path);
    os << to_jsonl(reports);
    std::cout << to_table(reports);
    bool all = true;
    for (const auto& rep : reports) all = all && rep.pass;
    std::cout << (all ? "suite passed" : "suite FAILED") << " (" << reports.size()
              << " checks, report: " << report_path << ")\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and verification engine for generalised Liouville processes"};
    app.require_subcommand(1);

    Overrides o;
    std::uint64_t seed_flag = 0;
    std::size_t paths_flag = 0;
    std::string out_flag, suite_flag, sampler_flag;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "run configuration file")->required();
        sub->add_option("--seed", seed_flag, "override the master seed")
            ->each([&](const std::string&) { o.seed = seed_flag; });
        sub->add_option("--paths", paths_flag, "override the path count")
            ->each([&](const std::string&) { o.paths = paths_flag; });
        sub->add_option("--out", out_flag, "override the output path")
            ->each([&](const std::string&) { o.out = out_flag; });
        sub->add_option("--suite", suite_flag, "override the suite name")
            ->each([&](const std::string&) { o.suite = suite_flag; });
        sub->add_option("--sampler", sampler_flag, "master | markov | anticipative")
            ->each([&](const std::string&) { o.sampler = sampler_flag; });
    };

    auto* sample = app.add_subcommand("sample", "sample paths to CSV");
    std::string jump_out, posterior_out;
    add_common(sample);
    sample->add_option("--jump-times", jump_out, "also write exact jump times (poisson)");
    sample->add_option("--posterior", posterior_out,
                       "also write posterior trajectories (brownian, atomic law)");

    auto* density = app.add_subcommand("density", "evaluate transition laws");
    std::string kind = "transition";
    double s = 0.0, t = 0.5, r = 0.0;
    std::vector<double> x, y;
    std::size_t coord = 0;
    add_common(density);
    density->add_option("--kind", kind,
                        "transition | marginal | fully-conditioned | r-transition | "
                        "terminal-mean");
    density->add_option("--s", s, "conditioning time");
    density->add_option("--t", t, "target time");
    density->add_option("--x", x, "conditioning state (one value per coordinate)");
    density->add_option("--y", y, "target state");
    density->add_option("--i", coord, "coordinate index (1-based)")
        ->check(CLI::PositiveNumber);
    density->add_option("--r", r, "target sum value for r-transition");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify);

    try {
        app.parse(argc, argv);
        if (sample->parsed()) return cmd_sample(o, jump_out, posterior_out);
        if (density->parsed())
            return cmd_density(o, kind, s, t, x, y, coord > 0 ? coord - 1 : 0, r);
        if (verify->parsed()) return cmd_verify(o);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
