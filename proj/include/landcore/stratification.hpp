#pragma once

// Stratified sampling of digitized fields: a block grid over the extent is
// classified by field density, sample points are allocated in proportion
// to area × prior crop probability, and crop/no-crop outcomes at those
// points give an expansion estimate of cultivable area.

#include "landcore/geometry.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace landcore {

struct Field {
  Polygon2 geometry;
  bool has_pivot_irrigation = false;
  bool small_scale = false;
};

class FieldMap {
public:
  // Throws ValidationError for an empty extent or block_size <= 0.
  FieldMap(std::vector<Field> fields, Box2 extent, double block_size);

  std::span<const Field> fields() const noexcept { return fields_; }
  const Box2& extent() const noexcept { return extent_; }
  double block_size() const noexcept { return block_size_; }

  // Grid blocks in row-major order from the south-west corner; blocks on
  // the north and east edges are clipped to the extent.
  std::vector<Box2> blocks() const;

private:
  std::vector<Field> fields_;
  Box2 extent_;
  double block_size_;
};

enum class StratumLevel { high, medium, low };

std::string to_string(StratumLevel level);

struct Thresholds {
  double high_frac = 0.6;
  double medium_frac = 0.3;
};

struct Priors {
  double high = 0.9;
  double medium = 0.5;
  double low = 0.1;

  double of(StratumLevel level) const;
};

struct Stratum {
  StratumLevel level = StratumLevel::low;
  std::vector<Box2> blocks;
  double area = 0.0;
  double prior_crop_probability = 0.1;
};

// Fraction of each block covered by fields, capped at 1.
std::vector<double> block_densities(const FieldMap& fm);

// Always returns HIGH, MEDIUM and LOW in that order, some possibly empty.
// A block is HIGH when its density reaches high_frac or a pivot-irrigated
// field covers part of it.
std::vector<Stratum> stratify(const FieldMap& fm, Thresholds thresholds = {},
                              Priors priors = {});

struct SamplePoint {
  std::int64_t id = 0;
  std::size_t stratum = 0;
  Point2 location;
};

struct SamplePlan {
  std::vector<std::size_t> counts; // parallel to the strata
  std::vector<SamplePoint> points; // grouped by stratum, ids from 1
  std::uint64_t seed = 0;
};

// Largest-remainder split of total over weights; ties go to the lower
// index. Throws ValidationError when all weights are zero.
std::vector<std::size_t> largest_remainder(std::span<const double> weights, std::size_t total);

// Counts from area × prior with largest-remainder rounding. Every nonempty
// stratum gets at least one point, taken from the largest allocation.
SamplePlan allocate_samples(std::span<const Stratum> strata, std::size_t total_n,
                            std::uint64_t seed);

struct AreaEstimate {
  double area = 0.0;
  double stderr_ = 0.0;
};

// observations maps point id to crop present. Throws DataError when a
// sampled point has no outcome or a stratum with area has no points.
AreaEstimate estimate_cultivable_area(std::span<const Stratum> strata, const SamplePlan& plan,
                                      const std::map<std::int64_t, bool>& observations);

struct YearArea {
  int year = 0;
  double area = 0.0;
};

struct LossRate {
  double latest_change = 0.0;          // area/year, last year vs the one before
  double latest_change_fraction = 0.0; // relative to the first year's area
  double slope = 0.0;                  // least-squares area/year
  double slope_fraction = 0.0;
};

// Throws ValidationError for fewer than two years or a repeated year.
LossRate yearly_loss(std::span<const YearArea> series);

// max(0, population · demand − area · yield). Throws ValidationError for
// negative inputs.
double import_requirement(double population, double per_capita_demand, double cultivable_area,
                          double yield);

struct LandStats {
  int year = 0;
  double cultivable_area = 0.0;
  double stderr_ = 0.0;
  double loss_rate = 0.0; // fraction of first-year area lost per year
  double import_requirement = 0.0;
};

} // namespace landcore
