#include "dqdsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "dqdsim/errors.hpp"

namespace dqd {
namespace {

const std::vector<std::string> kRequired = {"epsilon", "delta",   "omega0", "Omega0",
                                            "P",       "omega_c", "d_cs",   "kT"};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an integer");
    }
}

RunConfig build(const std::map<std::string, std::string>& kv) {
    RunConfig cfg;
    std::vector<std::string> missing;
    for (const auto& k : kRequired)
        if (!kv.count(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::string msg = "missing required key(s):";
        for (const auto& k : missing) msg += " " + k;
        throw ConfigError(msg);
    }

    for (const auto& [key, val] : kv) {
        if (key == "epsilon") cfg.epsilon = to_double(key, val);
        else if (key == "delta") cfg.delta = to_double(key, val);
        else if (key == "omega0") cfg.omega0 = to_double(key, val);
        else if (key == "Omega0") cfg.Omega0 = to_double(key, val);
        else if (key == "P") cfg.P = to_double(key, val);
        else if (key == "omega_c") cfg.omega_c = to_double(key, val);
        else if (key == "d_cs") cfg.d_cs = to_double(key, val);
        else if (key == "kT") cfg.kT = to_double(key, val);
        else if (key == "method") cfg.method = val;
        else if (key == "eps_min") cfg.eps_min = to_double(key, val);
        else if (key == "eps_max") cfg.eps_max = to_double(key, val);
        else if (key == "eps_steps") cfg.eps_steps = to_int(key, val);
        else if (key == "rtol") cfg.rtol = to_double(key, val);
        else if (key == "atol") cfg.atol = to_double(key, val);
        else if (key == "quad_tol") cfg.quad_tol = to_double(key, val);
        else if (key == "fit_tol_kernel") cfg.fit_tol_kernel = to_double(key, val);
        else if (key == "fit_tol_spectral") cfg.fit_tol_spectral = to_double(key, val);
        else if (key == "steady_tol") cfg.steady_tol = to_double(key, val);
        else if (key == "max_periods") cfg.max_periods = to_int(key, val);
        else if (key == "workers") cfg.workers = to_int(key, val);
        else if (key == "n_terms_max") cfg.n_terms_max = to_int(key, val);
        else if (key == "output_path") cfg.output_path = val;
        else if (key == "cache_dir") cfg.cache_dir = val;
        else throw ConfigError("unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

} // namespace

void RunConfig::validate() const {
    if (method != "weak" && method != "polaron" && method != "both")
        throw ConfigError("key 'method' must be weak, polaron or both");
    if (!(eps_min < eps_max)) throw ConfigError("eps_min must be < eps_max");
    if (eps_steps < 1) throw ConfigError("eps_steps must be >= 1");
    for (auto [name, v] : {std::pair<const char*, double>{"rtol", rtol},
                           {"atol", atol},
                           {"quad_tol", quad_tol},
                           {"fit_tol_kernel", fit_tol_kernel},
                           {"fit_tol_spectral", fit_tol_spectral},
                           {"steady_tol", steady_tol}})
        if (!(v > 0.0)) throw ConfigError(std::string("tolerance '") + name + "' must be > 0");
    if (max_periods < 1) throw ConfigError("max_periods must be >= 1");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (n_terms_max < 1) throw ConfigError("n_terms_max must be >= 1");
    model().validate();
}

ModelParams RunConfig::model() const {
    if (!(omega0 > 0.0)) throw ConfigError("model parameter omega0 must be > 0");
    ModelParams p;
    p.epsilon = epsilon / omega0;
    p.delta = delta / omega0;
    p.omega0 = 1.0;
    p.drive = Omega0 / omega0;
    p.P = P;
    p.omega_c = omega_c / omega0;
    p.d_cs = d_cs * omega0;
    p.kT = kT / omega0;
    return p;
}

std::set<Method> RunConfig::methods() const {
    if (method == "weak") return {Method::weak};
    if (method == "polaron") return {Method::polaron};
    return {Method::weak, Method::polaron};
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file '" + path + "'");
    static const std::set<std::string> known = {
        "epsilon", "delta",   "omega0",   "Omega0",        "P",
        "omega_c", "d_cs",    "kT",       "method",        "eps_min",
        "eps_max", "eps_steps", "rtol",   "atol",          "quad_tol",
        "fit_tol_kernel", "fit_tol_spectral", "steady_tol", "max_periods",
        "workers", "n_terms_max", "output_path", "cache_dir"};
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "' at line " + std::to_string(lineno));
        if (kv.count(key))
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(lineno));
        kv[key] = val;
    }
    return kv;
}

RunConfig parse_config(const std::string& path,
                       const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> kv = read_config_file(path);
    for (const auto& [k, v] : overrides) kv[k] = v; // flags win
    return build(kv);
}

RunConfig parse_config_values(const std::map<std::string, std::string>& values) {
    return build(values);
}

} // namespace dqd
