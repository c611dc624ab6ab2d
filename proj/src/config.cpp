#include "landcore/config.hpp"

#include "landcore/csv.hpp"
#include "landcore/document.hpp"
#include "landcore/error.hpp"

#include <cmath>
#include <initializer_list>

namespace landcore {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) throw ValidationError("config: " + std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (std::string_view k : keys) known = known || key == k;
    if (!known) throw ValidationError("config: unknown key '" + std::string(where) + "." + key + "'");
  }
}

double read_number(const json& j, const char* key, double fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ValidationError("config: " + std::string(where) + "." + key + " must be a number");
  return j[key].get<double>();
}

double read_nonnegative(const json& j, const char* key, double fallback, std::string_view where) {
  const double v = read_number(j, key, fallback, where);
  if (!(v >= 0.0)) throw ValidationError("config: " + std::string(where) + "." + key + " must be >= 0");
  return v;
}

std::uint64_t read_count(const json& j, const char* key, std::uint64_t fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned())
    throw ValidationError("config: " + std::string(where) + "." + key + " must be a nonnegative integer");
  return j[key].get<std::uint64_t>();
}

} // namespace

RunConfig parse_config(std::string_view text) {
  const json root = parse_json(text);
  only_keys(root, "config", {"seed", "year", "strata", "ccm", "demand"});

  RunConfig cfg;
  if (root.contains("seed")) cfg.seed = read_count(root, "seed", 0, "config");
  if (root.contains("year")) {
    if (!root["year"].is_number_integer()) throw ValidationError("config: year must be an integer");
    cfg.year = root["year"].get<int>();
  }

  if (root.contains("strata")) {
    const json& s = root["strata"];
    only_keys(s, "strata", {"block_size", "high_frac", "medium_frac", "priors", "samples"});
    StrataConfig& sc = cfg.strata;
    sc.block_size = read_number(s, "block_size", sc.block_size, "strata");
    if (!(sc.block_size > 0.0)) throw ValidationError("config: strata.block_size must be > 0");
    sc.thresholds.high_frac = read_number(s, "high_frac", sc.thresholds.high_frac, "strata");
    sc.thresholds.medium_frac = read_number(s, "medium_frac", sc.thresholds.medium_frac, "strata");
    if (!(0.0 < sc.thresholds.medium_frac && sc.thresholds.medium_frac < sc.thresholds.high_frac &&
          sc.thresholds.high_frac <= 1.0))
      throw ValidationError("config: strata thresholds must satisfy 0 < medium_frac < high_frac <= 1");
    sc.samples = read_count(s, "samples", sc.samples, "strata");
    if (s.contains("priors")) {
      const json& p = s["priors"];
      only_keys(p, "strata.priors", {"high", "medium", "low"});
      sc.priors.high = read_number(p, "high", sc.priors.high, "strata.priors");
      sc.priors.medium = read_number(p, "medium", sc.priors.medium, "strata.priors");
      sc.priors.low = read_number(p, "low", sc.priors.low, "strata.priors");
      for (double v : {sc.priors.high, sc.priors.medium, sc.priors.low})
        if (!(v > 0.0 && v <= 1.0)) throw ValidationError("config: strata.priors must lie in (0, 1]");
    }
  }

  if (root.contains("ccm")) {
    const json& c = root["ccm"];
    only_keys(c, "ccm", {"connectivity", "cell_size", "steiner", "default_weight"});
    CcmConfig& cc = cfg.ccm;
    if (c.contains("connectivity")) {
      if (!c["connectivity"].is_number_integer())
        throw ValidationError("config: ccm.connectivity must be 4, 8 or 16");
      cc.connectivity = connectivity_from_int(c["connectivity"].get<int>());
    }
    if (c.contains("cell_size")) {
      cc.cell_size = read_number(c, "cell_size", 0.0, "ccm");
      if (!(*cc.cell_size > 0.0)) throw ValidationError("config: ccm.cell_size must be > 0");
    }
    cc.steiner = read_count(c, "steiner", cc.steiner, "ccm");
    if (cc.steiner < 1) throw ValidationError("config: ccm.steiner must be >= 1");
    cc.default_weight = read_number(c, "default_weight", cc.default_weight, "ccm");
    if (!(cc.default_weight > 0.0)) throw ValidationError("config: ccm.default_weight must be > 0");
  }

  if (root.contains("demand")) {
    const json& d = root["demand"];
    only_keys(d, "demand", {"population", "per_capita_demand", "yield"});
    cfg.demand.population = read_nonnegative(d, "population", 0.0, "demand");
    cfg.demand.per_capita_demand = read_nonnegative(d, "per_capita_demand", 0.0, "demand");
    cfg.demand.yield = read_nonnegative(d, "yield", 0.0, "demand");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

} // namespace landcore
