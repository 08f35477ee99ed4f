#include "liouville/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_num(const std::string& tok, const std::string& origin, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail(origin, line, "malformed number '" + tok + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(origin, line, "malformed number '" + tok + "'");
    }
}

std::string named_density_to_string(const NamedDensity& nd, double weight) {
    std::string kind;
    switch (nd.kind) {
        case NamedDensity::Kind::Uniform: kind = "uniform"; break;
        case NamedDensity::Kind::Normal: kind = "normal"; break;
        case NamedDensity::Kind::Exponential: kind = "exponential"; break;
    }
    std::string out = kind + " " + format_double(nd.p1);
    if (nd.kind != NamedDensity::Kind::Exponential)
        out += " " + format_double(nd.p2);
    return out + " " + format_double(weight);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

RunConfig RunConfig::parse_string(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    cfg.m.clear();
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    bool saw_version = false;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, line_no, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "spec" && section != "grid" && section != "run")
                fail(origin, line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail(origin, line_no, "missing value for '" + key + "'");

        if (section.empty()) {
            if (key == "version") {
                cfg.version = static_cast<int>(parse_num(value, origin, line_no));
                if (cfg.version != 1) fail(origin, line_no, "unsupported config version");
                saw_version = true;
            } else {
                fail(origin, line_no, "key '" + key + "' outside any section");
            }
            continue;
        }
        if (section == "spec") {
            if (key == "family") {
                cfg.family = value;
            } else if (key == "sigma") {
                cfg.sigma = parse_num(value, origin, line_no);
            } else if (key == "scale") {
                cfg.stable_scale = parse_num(value, origin, line_no);
            } else if (key == "m") {
                cfg.m.clear();
                for (const auto& tok : split_ws(value))
                    cfg.m.push_back(parse_num(tok, origin, line_no));
            } else if (key == "nu_atom") {
                const auto toks = split_ws(value);
                if (toks.size() != 2)
                    fail(origin, line_no, "nu_atom needs 'location mass'");
                cfg.nu_atoms.push_back({parse_num(toks[0], origin, line_no),
                                        parse_num(toks[1], origin, line_no)});
            } else if (key == "nu_density") {
                const auto toks = split_ws(value);
                NamedDensity nd{};
                std::size_t expected = 0;
                if (toks.empty()) fail(origin, line_no, "empty nu_density");
                if (toks[0] == "uniform") {
                    nd.kind = NamedDensity::Kind::Uniform;
                    expected = 4;
                } else if (toks[0] == "normal") {
                    nd.kind = NamedDensity::Kind::Normal;
                    expected = 4;
                } else if (toks[0] == "exponential") {
                    nd.kind = NamedDensity::Kind::Exponential;
                    expected = 3;
                } else {
                    fail(origin, line_no, "unknown density '" + toks[0] + "'");
                }
                if (toks.size() != expected)
                    fail(origin, line_no, "nu_density needs kind, parameters, weight");
                nd.p1 = parse_num(toks[1], origin, line_no);
                if (expected == 4) nd.p2 = parse_num(toks[2], origin, line_no);
                cfg.nu_density = nd;
                cfg.nu_density_weight = parse_num(toks[expected - 1], origin, line_no);
            } else if (key == "horizon_eps") {
                cfg.horizon_eps = parse_num(value, origin, line_no);
            } else {
                fail(origin, line_no, "unknown [spec] key '" + key + "'");
            }
        } else if (section == "grid") {
            if (key == "kind") {
                cfg.grid_kind = value;
            } else if (key == "points") {
                cfg.grid_points = static_cast<std::size_t>(parse_num(value, origin, line_no));
            } else if (key == "t_last") {
                cfg.grid_t_last = parse_num(value, origin, line_no);
            } else if (key == "times") {
                cfg.grid_times.clear();
                for (const auto& tok : split_ws(value))
                    cfg.grid_times.push_back(parse_num(tok, origin, line_no));
            } else {
                fail(origin, line_no, "unknown [grid] key '" + key + "'");
            }
        } else {  // run
            if (key == "sampler") {
                cfg.sampler = value;
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_num(value, origin, line_no));
            } else if (key == "paths") {
                cfg.paths = static_cast<std::size_t>(parse_num(value, origin, line_no));
            } else if (key == "out") {
                cfg.out = value;
            } else if (key == "suite") {
                cfg.suite = value;
            } else {
                fail(origin, line_no, "unknown [run] key '" + key + "'");
            }
        }
    }
    if (!saw_version) fail(origin, 1, "missing 'version = 1' preamble");
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

void RunConfig::validate() const {
    if (family != "brownian" && family != "gamma" && family != "poisson" &&
        family != "stable-half")
        throw ConfigError("unknown family '" + family + "'");
    if (m.empty()) throw ConfigError("activity vector m must be set");
    if (nu_atoms.empty() && !nu_density)
        throw ConfigError("the generating law needs atoms or a density");
    if (sampler != "master" && sampler != "markov" && sampler != "anticipative")
        throw ConfigError("unknown sampler '" + sampler + "'");
    if (sampler == "anticipative" && family != "brownian")
        throw ConfigError("sampler 'anticipative' requires the brownian family");
    if (grid_kind != "uniform" && grid_kind != "explicit")
        throw ConfigError("unknown grid kind '" + grid_kind + "'");
    if (grid_kind == "uniform" && grid_points < 2)
        throw ConfigError("uniform grid needs at least two points");
    if (grid_kind == "explicit" && grid_times.empty())
        throw ConfigError("explicit grid needs times");
    build_spec();  // family/law/activity coherence
    build_grid();
}

GlpSpec RunConfig::build_spec() const {
    DensityFamily fam = DensityFamily::brownian(1.0);
    if (family == "brownian")
        fam = DensityFamily::brownian(sigma);
    else if (family == "gamma")
        fam = DensityFamily::gamma_unit();
    else if (family == "poisson")
        fam = DensityFamily::poisson();
    else if (family == "stable-half")
        fam = DensityFamily::stable_half(stable_scale);
    else
        throw ConfigError("unknown family '" + family + "'");
    GeneratingLaw nu = nu_density
                           ? GeneratingLaw::named(*nu_density, nu_density_weight, nu_atoms)
                           : GeneratingLaw::from_atoms(nu_atoms);
    return GlpSpec(fam, std::move(nu), ActivityVector(m), horizon_eps);
}

PathGrid RunConfig::build_grid() const {
    if (grid_kind == "explicit") return PathGrid(grid_times);
    return PathGrid::uniform(grid_points - 1, grid_t_last);
}

std::string RunConfig::to_string() const {
    std::ostringstream os;
    os << "version = " << version << "\n\n[spec]\n";
    os << "family = " << family << "\n";
    if (family == "brownian") os << "sigma = " << format_double(sigma) << "\n";
    if (family == "stable-half")
        os << "scale = " << format_double(stable_scale) << "\n";
    os << "m =";
    for (double v : m) os << ' ' << format_double(v);
    os << "\n";
    for (const auto& a : nu_atoms)
        os << "nu_atom = " << format_double(a.location) << ' ' << format_double(a.mass)
           << "\n";
    if (nu_density)
        os << "nu_density = " << named_density_to_string(*nu_density, nu_density_weight)
           << "\n";
    os << "horizon_eps = " << format_double(horizon_eps) << "\n";
    os << "\n[grid]\nkind = " << grid_kind << "\n";
    if (grid_kind == "uniform") {
        os << "points = " << grid_points << "\n";
        os << "t_last = " << format_double(grid_t_last) << "\n";
    } else {
        os << "times =";
        for (double t : grid_times) os << ' ' << format_double(t);
        os << "\n";
    }
    os << "\n[run]\nsampler = " << sampler << "\n";
    os << "seed = " << seed << "\n";
    os << "paths = " << paths << "\n";
    if (!out.empty()) os << "out = " << out << "\n";
    if (!suite.empty()) os << "suite = " << suite << "\n";
    return os.str();
}

bool RunConfig::operator==(const RunConfig& o) const {
    auto atoms_eq = [](const std::vector<Atom>& a, const std::vector<Atom>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].location != b[i].location || a[i].mass != b[i].mass) return false;
        return true;
    };
    const bool nd_eq =
        nu_density.has_value() == o.nu_density.has_value() &&
        (!nu_density ||
         (nu_density->kind == o.nu_density->kind && nu_density->p1 == o.nu_density->p1 &&
          nu_density->p2 == o.nu_density->p2));
    return version == o.version && family == o.family && sigma == o.sigma &&
           stable_scale == o.stable_scale && m == o.m &&
           atoms_eq(nu_atoms, o.nu_atoms) && nd_eq &&
           nu_density_weight == o.nu_density_weight && horizon_eps == o.horizon_eps &&
           grid_kind == o.grid_kind && grid_points == o.grid_points &&
           grid_t_last == o.grid_t_last && grid_times == o.grid_times &&
           sampler == o.sampler && seed == o.seed && paths == o.paths && out == o.out &&
           suite == o.suite;
}

void write_paths_csv(std::ostream& os, std::span<const GlpPath> paths) {
    if (paths.empty()) {
        os << "path_id,time,R\n";
        return;
    }
    const std::size_t n = paths.front().values.front().size();
    os << "path_id,time";
    for (std::size_t i = 0; i < n; ++i) os << ",coord_" << (i + 1);
    os << ",R\n";
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto& path = paths[p];
        for (std::size_t k = 0; k < path.grid.size(); ++k) {
            os << p << ',' << format_double(path.grid[k]);
            for (std::size_t i = 0; i < n; ++i)
                os << ',' << format_double(path.values[k][i]);
            os << ',' << format_double(path.sums[k]) << '\n';
        }
    }
}

std::vector<GlpPath> read_paths_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("empty paths CSV");
    std::size_t columns = 1;
    for (char c : line) columns += c == ',' ? 1 : 0;
    if (columns < 3) throw ConfigError("paths CSV needs path_id,time,...,R");
    const std::size_t n = columns - 3;

    std::vector<GlpPath> out;
    std::vector<double> times;
    std::vector<std::vector<double>> values;
    std::vector<double> sums;
    long current = -1;
    auto flush = [&]() {
        if (current < 0) return;
        GlpPath path{PathGrid(times), values, sums};
        out.push_back(std::move(path));
        times.clear();
        values.clear();
        sums.clear();
    };
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != columns) throw ConfigError("ragged paths CSV row");
        const long id = std::stol(cells[0]);
        if (id != current) {
            flush();
            current = id;
        }
        times.push_back(std::stod(cells[1]));
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = std::stod(cells[2 + i]);
        values.push_back(std::move(v));
        sums.push_back(std::stod(cells[columns - 1]));
    }
    flush();
    return out;
}

void write_jump_csv(std::ostream& os, std::span<const JumpRow> rows) {
    os << "path_id,coordinate,jump_time\n";
    for (const auto& r : rows)
        os << r.path_id << ',' << (r.coordinate + 1) << ',' << format_double(r.time)
           << '\n';
}

void write_posterior_csv(std::ostream& os, std::span<const PosteriorRow> rows) {
    os << "path_id,time,atom,weight\n";
    for (const auto& r : rows)
        os << r.path_id << ',' << format_double(r.time) << ',' << format_double(r.atom)
           << ',' << format_double(r.weight) << '\n';
}

}  // namespace liouville
