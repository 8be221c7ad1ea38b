#include "strip/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace strip {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"grid", {"nx", "ny", "lx"}},
      {"run", {"dt", "t_end", "eps", "eps_list", "divergence_tol", "output_dir", "seed", "norm_every"}},
      {"initial", {"delta", "k0", "a"}},
      {"tracker", {"lambda", "mu"}},
  };
  return keys;
}

template <typename T>
T convert(const std::string& section, const std::string& key, const std::string& raw) {
  std::istringstream in(raw);
  T value{};
  in >> value;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw ValidationError("config [" + section + "] " + key + ": cannot parse '" + raw + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& raw) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) out.push_back(convert<double>("run", "eps_list", item));
  return out;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ValidationError("config: dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw ValidationError("config: t_end must be nonnegative");
  if (cfg.eps_list.empty()) throw ValidationError("config: eps_list is empty");
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
    const double e = cfg.eps_list[i];
    if (!(e > 0.0) || e > 1.0) throw ValidationError("config: eps values must lie in (0, 1]");
    if (i > 0 && !(e < cfg.eps_list[i - 1])) {
      throw ValidationError("config: eps_list must be strictly decreasing");
    }
  }
  if (!(cfg.divergence_tol > 0.0)) throw ValidationError("config: divergence_tol must be positive");
  if (cfg.norm_every < 1) throw ValidationError("config: norm_every must be >= 1");
  if (!(cfg.a > 0.0)) throw ValidationError("config: a must be positive");
  if (cfg.k0 < 0 || cfg.k0 > cfg.grid.dealias_cutoff()) {
    throw ValidationError("config: k0 must lie in [0, " + std::to_string(cfg.grid.dealias_cutoff()) + "]");
  }
  if (!(cfg.lambda > 0.0)) throw ValidationError("config: lambda must be positive");
  if (!(cfg.mu >= cfg.lambda)) throw ValidationError("config: mu must be >= lambda");
}

RunConfig parse_config_string(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }

  RunConfig cfg;
  int nx = cfg.grid.nx;
  int ny = cfg.grid.ny;
  double lx = cfg.grid.lx;
  bool saw_eps = false;
  bool saw_list = false;
  for (const auto& [raw_section, body] : tree) {
    const std::string section = raw_section == "ans" ? "run" : raw_section;
    if (!body.data().empty() && body.empty()) {
      throw ValidationError("config: key '" + raw_section + "' outside any section");
    }
    auto known = allowed_keys().find(section);
    if (known == allowed_keys().end()) throw ValidationError("config: unknown section [" + raw_section + "]");
    for (const auto& [key, node] : body) {
      if (!known->second.count(key)) {
        throw ValidationError("config: unknown key '" + key + "' in [" + raw_section + "]");
      }
      const std::string& v = node.data();
      if (section == "grid") {
        if (key == "nx") nx = convert<int>(section, key, v);
        if (key == "ny") ny = convert<int>(section, key, v);
        if (key == "lx") lx = convert<double>(section, key, v);
      } else if (section == "run") {
        if (key == "dt") cfg.dt = convert<double>(section, key, v);
        if (key == "t_end") cfg.t_end = convert<double>(section, key, v);
        if (key == "eps") {
          cfg.eps_list = {convert<double>(section, key, v)};
          saw_eps = true;
        }
        if (key == "eps_list") {
          cfg.eps_list = parse_list(v);
          saw_list = true;
        }
        if (key == "divergence_tol") cfg.divergence_tol = convert<double>(section, key, v);
        if (key == "output_dir") cfg.output_dir = v;
        if (key == "seed") cfg.seed = convert<std::uint64_t>(section, key, v);
        if (key == "norm_every") cfg.norm_every = convert<int>(section, key, v);
      } else if (section == "initial") {
        if (key == "delta") cfg.delta = convert<double>(section, key, v);
        if (key == "k0") cfg.k0 = convert<int>(section, key, v);
        if (key == "a") cfg.a = convert<double>(section, key, v);
      } else if (section == "tracker") {
        if (key == "lambda") cfg.lambda = convert<double>(section, key, v);
        if (key == "mu") cfg.mu = convert<double>(section, key, v);
      }
    }
  }
  if (saw_eps && saw_list) throw ValidationError("config: give either eps or eps_list, not both");
  cfg.grid = Grid(nx, ny, lx);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_string(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

SpectralField initial_data(const RunConfig& cfg) {
  const Grid& g = cfg.grid;
  SpectralField u(g);
  const double amp = cfg.k0 == 0 ? cfg.delta : 0.5 * cfg.delta;
  for (int j = 0; j < g.ny; ++j) {
    const double profile = amp * std::sin(2.0 * std::numbers::pi * g.y(j));
    u(g.row_of(cfg.k0), j) = profile;
    u(g.row_of(-cfg.k0), j) = profile;
  }
  u.zero_walls();
  return u;
}

}  // namespace strip
