#include "outbreak/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "outbreak/error.hpp"

namespace outbreak {

namespace {

double number(const nlohmann::json& j, const char* key, double fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number()) {
        throw InvalidParameter(std::string("parameter '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

double required(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) {
        throw InvalidParameter(std::string("missing parameter '") + key + "'");
    }
    return number(j, key, 0.0);
}

}  // namespace

NondimParams params_from_json(const nlohmann::json& j, EpsPolicy policy)
{
    if (!j.is_object()) {
        throw InvalidParameter("parameter file must hold a JSON object");
    }
    NondimParams p;
    if (j.contains("beta")) {
        p.beta = required(j, "beta");
        p.d = required(j, "d");
        p.h = required(j, "h");
        p.eps = required(j, "eps");
        p.sigma1 = number(j, "sigma1", 0.0);
        p.sigma2 = number(j, "sigma2", 0.0);
    } else if (j.contains("r")) {
        DimensionalParams d;
        d.r = required(j, "r");
        d.K = required(j, "K");
        d.p = required(j, "p");
        d.H = required(j, "H");
        d.b = required(j, "b");
        d.e = required(j, "e");
        d.m = required(j, "m");
        d.zeta1 = number(j, "zeta1", 0.0);
        d.zeta2 = number(j, "zeta2", 0.0);
        p = nondimensionalize(d);
    } else {
        throw InvalidParameter("parameter file needs either 'beta' or 'r'");
    }
    validate(p, policy);
    return p;
}

NondimParams load_params(const std::filesystem::path& path, EpsPolicy policy)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("cannot open parameter file " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameter("malformed parameter file " + path.string() + ": " + e.what());
    }
    return params_from_json(j, policy);
}

nlohmann::json to_json(const NondimParams& p)
{
    return {{"beta", p.beta}, {"d", p.d},           {"h", p.h},
            {"eps", p.eps},   {"sigma1", p.sigma1}, {"sigma2", p.sigma2}};
}

nlohmann::json to_json(const DimensionalParams& d)
{
    return {{"r", d.r}, {"K", d.K}, {"p", d.p}, {"H", d.H},         {"b", d.b},
            {"e", d.e}, {"m", d.m}, {"zeta1", d.zeta1}, {"zeta2", d.zeta2}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, bool with_seed, bool header)
{
    const bool lz = traj.coords == Coordinates::lz;
    if (header) {
        os << (with_seed ? "seed," : "") << (lz ? "t,l,z\n" : "t,x,y\n");
    }
    const auto old = os.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (with_seed) {
            os << traj.seed << ',';
        }
        os << traj.times[i] << ',' << traj.states[i][0] << ',' << traj.states[i][1] << '\n';
    }
    os.precision(old);
}

std::vector<Trajectory> read_trajectory_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) {
        throw InsufficientData("empty trajectory file");
    }
    bool with_seed = false;
    Coordinates coords = Coordinates::xy;
    if (line == "t,x,y" || line == "seed,t,x,y") {
        with_seed = line.starts_with("seed");
    } else if (line == "t,l,z" || line == "seed,t,l,z") {
        with_seed = line.starts_with("seed");
        coords = Coordinates::lz;
    } else {
        throw InvalidParameter("unrecognized trajectory header '" + line + "'");
    }

    std::vector<Trajectory> out;
    std::map<std::uint64_t, std::size_t> slot;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cols;
        while (std::getline(ss, cell, ',')) {
            cols.push_back(cell);
        }
        if (cols.size() != (with_seed ? 4u : 3u)) {
            throw InvalidParameter("wrong column count on line " + std::to_string(lineno));
        }
        std::uint64_t seed = 0;
        std::size_t off = 0;
        try {
            if (with_seed) {
                seed = std::stoull(cols[0]);
                off = 1;
            }
            auto [it, fresh] = slot.try_emplace(seed, out.size());
            if (fresh) {
                Trajectory t;
                t.seed = seed;
                t.coords = coords;
                out.push_back(std::move(t));
            }
            Trajectory& t = out[it->second];
            t.times.push_back(std::stod(cols[off]));
            t.states.push_back({std::stod(cols[off + 1]), std::stod(cols[off + 2])});
        } catch (const std::logic_error&) {
            throw InvalidParameter("malformed number on line " + std::to_string(lineno));
        }
    }
    return out;
}

void write_sweep_csv(std::ostream& os, const SweepResult& res)
{
    os << "axis1,axis2,h,mu,sigma1,sigma2,Sigma_mean,Sigma_std,phi_neg_kappa\n";
    const auto old = os.precision(12);
    for (const auto& c : res.cells) {
        os << c.axis1 << ',' << c.axis2 << ',' << c.params.h << ',' << c.mu << ','
           << c.params.sigma1 << ',' << c.params.sigma2 << ',' << c.sigma_mean << ','
           << c.sigma_std << ',' << c.phi_neg_kappa << '\n';
    }
    os.precision(old);
}

void write_sweep_matrix(std::ostream& os, const SweepResult& res)
{
    for (std::size_t i = 0; i < res.n1; ++i) {
        for (std::size_t j = 0; j < res.n2; ++j) {
            os << (j ? " " : "") << res.at(i, j).sigma_mean;
        }
        os << '\n';
    }
}

}  // namespace outbreak
