/// @file config.cpp
#include "porolub/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace porolub {

namespace {

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

double to_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        // fractions like 1/8 are convenient for eps lists
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            const double num = std::stod(s.substr(0, slash));
            const double den = std::stod(s.substr(slash + 1));
            return num / den;
        }
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCategory::config, where + ": cannot parse number '" + s + "'");
    }
}

int to_int(const std::string& s, const std::string& where) {
    const double v = to_double(s, where);
    const int i = static_cast<int>(std::lround(v));
    if (std::fabs(v - i) > 1e-12)
        throw Error(ErrorCategory::config, where + ": expected an integer, got '" + s + "'");
    return i;
}

ObstacleShape parse_obstacle(const std::vector<std::string>& t, const std::string& where) {
    ObstacleShape o;
    if (t.empty()) throw Error(ErrorCategory::config, where + ": empty obstacle spec");
    if (t[0] == "disk") {
        if (t.size() != 4)
            throw Error(ErrorCategory::config, where + ": disk needs 'disk cx cy radius'");
        o.kind = ObstacleKind::disk;
        o.cx = to_double(t[1], where);
        o.cy = to_double(t[2], where);
        o.radius = to_double(t[3], where);
    } else if (t[0] == "rect") {
        if (t.size() != 5)
            throw Error(ErrorCategory::config, where + ": rect needs 'rect cx cy hx hy'");
        o.kind = ObstacleKind::rectangle;
        o.cx = to_double(t[1], where);
        o.cy = to_double(t[2], where);
        o.hx = to_double(t[3], where);
        o.hy = to_double(t[4], where);
    } else if (t[0] == "polygon") {
        if (t.size() < 7 || (t.size() - 1) % 2 != 0)
            throw Error(ErrorCategory::config,
                        where + ": polygon needs at least 3 'x y' vertex pairs");
        o.kind = ObstacleKind::polygon;
        for (std::size_t k = 1; k + 1 < t.size(); k += 2)
            o.vertices.emplace_back(to_double(t[k], where), to_double(t[k + 1], where));
    } else {
        throw Error(ErrorCategory::config, where + ": unknown obstacle kind '" + t[0] + "'");
    }
    return o;
}

FilmProfile parse_film(const std::vector<std::string>& t, const std::string& where) {
    if (t.empty()) throw Error(ErrorCategory::config, where + ": empty film spec");
    if (t[0] == "constant" && t.size() == 2) return FilmProfile::constant(to_double(t[1], where));
    if (t[0] == "cosine" && (t.size() == 3 || t.size() == 4))
        return FilmProfile::cosine(to_double(t[1], where), to_double(t[2], where),
                                   t.size() == 4 ? to_int(t[3], where) : 1);
    if (t[0] == "linear" && t.size() == 3)
        return FilmProfile::linear(to_double(t[1], where), to_double(t[2], where));
    throw Error(ErrorCategory::config,
                where + ": film profile must be 'constant v' | 'cosine mean amp [k]' | "
                        "'linear gl gr'");
}

}  // namespace

std::function<double(double)> parse_force_spec(const std::string& spec) {
    const auto t = tokens(spec);
    if (t.empty()) throw Error(ErrorCategory::config, "empty f1 spec");
    if (t[0] == "constant" && t.size() == 2) {
        const double c = to_double(t[1], "f1");
        return [c](double) { return c; };
    }
    if (t[0] == "cospi" && t.size() == 1)
        return [](double z) { return std::cos(M_PI * z); };
    if (t[0] == "sin2pi" && t.size() == 1)
        return [](double z) { return std::sin(2.0 * M_PI * z); };
    if (t[0] == "linear" && t.size() == 3) {
        const double a = to_double(t[1], "f1"), b = to_double(t[2], "f1");
        return [a, b](double z) { return a + (b - a) * (z + 0.5); };
    }
    if (t[0] == "poly" && t.size() >= 2) {
        std::vector<double> c;
        for (std::size_t k = 1; k < t.size(); ++k) c.push_back(to_double(t[k], "f1"));
        return [c](double z) {
            double acc = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
            return acc;
        };
    }
    throw Error(ErrorCategory::config,
                "f1 spec must be 'constant c' | 'cospi' | 'sin2pi' | 'linear a b' | "
                "'poly c0 c1 ...', got '" + spec + "'");
}

std::function<double(double)> RunConfig::make_f1() const { return parse_force_spec(f1_spec); }

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool saw_flux_value = false;

    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto t = tokens(line);
        if (t.empty()) continue;

        const std::string where = origin + ":" + std::to_string(lineno);
        // re-join as "key = value..." with flexible spacing around '='
        std::string joined;
        for (const auto& x : t) joined += x + " ";
        const auto eq = joined.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::config, where + ": expected 'section.key = value'");
        std::string key = joined.substr(0, eq);
        std::string value = joined.substr(eq + 1);
        const auto strip = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        strip(key);
        strip(value);
        if (key.empty() || value.empty())
            throw Error(ErrorCategory::config, where + ": expected 'section.key = value'");
        const auto vt = tokens(value);

        if (key == "fluid.r") {
            cfg.r = to_double(value, where);
            if (!(cfg.r > 1.0)) throw Error(ErrorCategory::config, where + ": flow_index must exceed 1");
        } else if (key == "fluid.nu") {
            cfg.nu = to_double(value, where);
            if (!(cfg.nu > 0.0))
                throw Error(ErrorCategory::config, where + ": consistency nu must be positive");
        } else if (key == "fluid.delta") {
            cfg.delta = to_double(value, where);
            if (cfg.delta < 0.0)
                throw Error(ErrorCategory::config, where + ": delta must be >= 0");
        } else if (key == "cell.obstacle") {
            cfg.obstacle = parse_obstacle(vt, where);
        } else if (key == "cell.resolution") {
            cfg.cell_resolution = to_int(value, where);
        } else if (key == "film.g") {
            cfg.g = parse_film(vt, where);
        } else if (key == "film.a") {
            cfg.film_a = to_double(value, where);
        } else if (key == "film.b") {
            cfg.film_b = to_double(value, where);
        } else if (key == "reynolds.f1") {
            parse_force_spec(value);  // validate eagerly for a line-anchored error
            cfg.f1_spec = value;
        } else if (key == "reynolds.flux_mode") {
            if (vt[0] == "paper_zero_flux" && vt.size() == 1) {
                cfg.flux_mode = FluxMode::paper_zero_flux;
            } else if (vt[0] == "prescribed_flux" && vt.size() == 2) {
                cfg.flux_mode = FluxMode::prescribed_flux;
                cfg.flux_q0 = to_double(vt[1], where);
                saw_flux_value = true;
            } else if (vt[0] == "pressure_drop" && vt.size() == 2) {
                cfg.flux_mode = FluxMode::prescribed_pressure_drop;
                cfg.delta_p = to_double(vt[1], where);
                saw_flux_value = true;
            } else {
                throw Error(ErrorCategory::config,
                            where + ": flux_mode must be 'paper_zero_flux' | "
                                    "'prescribed_flux q0' | 'pressure_drop dp'");
            }
        } else if (key == "reynolds.m") {
            cfg.quadrature_m = to_int(value, where);
        } else if (key == "regime.lambda") {
            cfg.lambda = to_double(value, where);
            if (!(cfg.lambda > 0.0))
                throw Error(ErrorCategory::config, where + ": lambda must be positive");
        } else if (key == "regime.epsilon") {
            cfg.eps_list.clear();
            for (const auto& x : vt) cfg.eps_list.push_back(to_double(x, where));
            if (cfg.eps_list.empty())
                throw Error(ErrorCategory::config, where + ": epsilon list is empty");
        } else if (key == "regime.eta_exponent") {
            cfg.eta_exponent = to_double(value, where);
        } else if (key == "dns.enabled") {
            if (value == "true") cfg.dns_enabled = true;
            else if (value == "false") cfg.dns_enabled = false;
            else throw Error(ErrorCategory::config, where + ": dns.enabled must be true|false");
        } else if (key == "dns.resolution") {
            cfg.dns_resolution = to_int(value, where);
        } else if (key == "dns.cell_cap") {
            cfg.dns_cell_cap = static_cast<std::size_t>(to_double(value, where));
        } else if (key == "output.directory") {
            cfg.out_dir = value;
        } else if (key == "output.formats") {
            cfg.formats.clear();
            for (const auto& x : vt) {
                if (x != "csv" && x != "json" && x != "svg")
                    throw Error(ErrorCategory::config, where + ": unknown format '" + x + "'");
                cfg.formats.push_back(x);
            }
        } else {
            throw Error(ErrorCategory::config, where + ": unknown key '" + key + "'");
        }
    }
    (void)saw_flux_value;

    // cross-field validation
    cfg.make_fluid();
    cfg.obstacle.validate();
    if (cfg.film_a > 0.0 && cfg.g.lower_bound() < cfg.film_a - 1e-12)
        throw Error(ErrorCategory::config, origin + ": film profile dips below the declared a");
    if (cfg.film_b > 0.0 && cfg.g.upper_bound() > cfg.film_b + 1e-12)
        throw Error(ErrorCategory::config, origin + ": film profile exceeds the declared b");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCategory::io, "cannot open config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str(), path);
}

} // namespace porolub
