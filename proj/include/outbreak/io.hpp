#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "outbreak/integrator.hpp"
#include "outbreak/model.hpp"
#include "outbreak/stats.hpp"
#include "outbreak/sweep.hpp"

#include <json.hpp>

namespace outbreak {

/// Reads a flat JSON object with either the dimensionless keys
/// (beta, d, h, eps, sigma1, sigma2) or the dimensional ones
/// (r, K, p, H, b, e, m, zeta1, zeta2).
NondimParams params_from_json(const nlohmann::json& j, EpsPolicy policy = EpsPolicy::enforce);
NondimParams load_params(const std::filesystem::path& path,
                         EpsPolicy policy = EpsPolicy::enforce);

nlohmann::json to_json(const NondimParams& p);
nlohmann::json to_json(const DimensionalParams& d);

/// Header "t,x,y" or "t,l,z"; with `with_seed` the first column is "seed".
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, bool with_seed = false,
                          bool header = true);

/// Parses a trajectory CSV written by write_trajectory_csv (one seed per file, or
/// several distinguished by the seed column).
std::vector<Trajectory> read_trajectory_csv(std::istream& is);

void write_sweep_csv(std::ostream& os, const SweepResult& res);

/// Sigma_mean as a whitespace-separated matrix (rows = axis1), for contouring.
void write_sweep_matrix(std::ostream& os, const SweepResult& res);

}  // namespace outbreak
