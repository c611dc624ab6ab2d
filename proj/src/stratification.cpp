#include "landcore/stratification.hpp"

#include "landcore/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace landcore {

FieldMap::FieldMap(std::vector<Field> fields, Box2 extent, double block_size)
    : fields_(std::move(fields)), extent_(extent), block_size_(block_size) {
  if (!(extent_.width() > 0.0 && extent_.height() > 0.0))
    throw ValidationError("field map extent is empty");
  if (!(block_size_ > 0.0) || !std::isfinite(block_size_))
    throw ValidationError("block size must be > 0");
}

std::vector<Box2> FieldMap::blocks() const {
  const auto count = [&](double span) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / block_size_ - 1e-9)));
  };
  const std::size_t ncols = count(extent_.width());
  const std::size_t nrows = count(extent_.height());
  std::vector<Box2> out;
  out.reserve(ncols * nrows);
  for (std::size_t r = 0; r < nrows; ++r) {
    const double y0 = extent_.min.y + static_cast<double>(r) * block_size_;
    const double y1 = r + 1 == nrows ? extent_.max.y : y0 + block_size_;
    for (std::size_t c = 0; c < ncols; ++c) {
      const double x0 = extent_.min.x + static_cast<double>(c) * block_size_;
      const double x1 = c + 1 == ncols ? extent_.max.x : x0 + block_size_;
      out.emplace_back(Point2{x0, y0}, Point2{x1, y1});
    }
  }
  return out;
}

std::string to_string(StratumLevel level) {
  switch (level) {
  case StratumLevel::high: return "HIGH";
  case StratumLevel::medium: return "MEDIUM";
  case StratumLevel::low: return "LOW";
  }
  return "?";
}

double Priors::of(StratumLevel level) const {
  switch (level) {
  case StratumLevel::high: return high;
  case StratumLevel::medium: return medium;
  case StratumLevel::low: return low;
  }
  return low;
}

std::vector<double> block_densities(const FieldMap& fm) {
  const std::vector<Box2> blocks = fm.blocks();
  std::vector<double> density(blocks.size(), 0.0);
  for (const Field& f : fm.fields()) {
    const Box2 fb = bbox(f.geometry);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (boxes_overlap(fb, blocks[i])) density[i] += clipped_area(f.geometry, blocks[i]);
  }
  for (std::size_t i = 0; i < blocks.size(); ++i)
    density[i] = std::min(1.0, density[i] / blocks[i].area());
  return density;
}

std::vector<Stratum> stratify(const FieldMap& fm, Thresholds thresholds, Priors priors) {
  if (!(0.0 < thresholds.medium_frac && thresholds.medium_frac < thresholds.high_frac &&
        thresholds.high_frac <= 1.0))
    throw ValidationError("thresholds must satisfy 0 < medium < high <= 1");
  for (double p : {priors.high, priors.medium, priors.low})
    if (!(p > 0.0 && p <= 1.0)) throw ValidationError("prior probabilities must lie in (0, 1]");

  const std::vector<Box2> blocks = fm.blocks();
  const std::vector<double> density = block_densities(fm);
  std::vector<unsigned char> pivot(blocks.size(), 0);
  for (const Field& f : fm.fields()) {
    if (!f.has_pivot_irrigation) continue;
    const Box2 fb = bbox(f.geometry);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (!pivot[i] && boxes_overlap(fb, blocks[i]) && clipped_area(f.geometry, blocks[i]) > 0.0)
        pivot[i] = 1;
  }

  std::vector<Stratum> strata(3);
  const StratumLevel order[3] = {StratumLevel::high, StratumLevel::medium, StratumLevel::low};
  for (int k = 0; k < 3; ++k) {
    strata[k].level = order[k];
    strata[k].prior_crop_probability = priors.of(order[k]);
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::size_t k = 2;
    if (density[i] >= thresholds.high_frac || pivot[i]) k = 0;
    else if (density[i] >= thresholds.medium_frac) k = 1;
    strata[k].blocks.push_back(blocks[i]);
    strata[k].area += blocks[i].area();
  }
  return strata;
}

std::vector<std::size_t> largest_remainder(std::span<const double> weights, std::size_t total) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("allocation weights must be finite and >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) throw ValidationError("allocation weights are all zero");

  std::vector<std::size_t> counts(weights.size());
  std::vector<double> remainder(weights.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    // Remainders share the denominator sum, so compare numerators; fmod is
    // exact, which keeps integer-weight ties exact.
    const double scaled = static_cast<double>(total) * weights[i];
    remainder[i] = std::fmod(scaled, sum);
    counts[i] = static_cast<std::size_t>(std::llround((scaled - remainder[i]) / sum));
    assigned += counts[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++counts[order[k % order.size()]];
  return counts;
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

} // namespace

SamplePlan allocate_samples(std::span<const Stratum> strata, std::size_t total_n,
                            std::uint64_t seed) {
  std::vector<double> weights;
  std::size_t nonempty = 0;
  for (const Stratum& s : strata) {
    weights.push_back(s.area * s.prior_crop_probability);
    if (s.area > 0.0) ++nonempty;
  }
  if (nonempty == 0) throw ValidationError("all strata are empty");
  if (total_n < nonempty)
    throw ValidationError("need at least " + std::to_string(nonempty) + " sample points, got " +
                          std::to_string(total_n));

  SamplePlan plan;
  plan.seed = seed;
  plan.counts = largest_remainder(weights, total_n);
  for (std::size_t i = 0; i < strata.size(); ++i) {
    if (strata[i].area <= 0.0 || plan.counts[i] > 0) continue;
    const auto donor = std::max_element(plan.counts.begin(), plan.counts.end());
    --*donor;
    ++plan.counts[i];
  }

  std::mt19937_64 rng(seed);
  std::int64_t next_id = 1;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const Stratum& s = strata[i];
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const Box2& b : s.blocks) cumulative.push_back(acc += b.area());
    for (std::size_t k = 0; k < plan.counts[i]; ++k) {
      const double pick = uniform01(rng) * acc;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
      if (it == cumulative.end()) --it;
      const Box2& b = s.blocks[static_cast<std::size_t>(it - cumulative.begin())];
      const double u = uniform01(rng);
      const double v = uniform01(rng);
      plan.points.push_back({next_id++, i, {b.min.x + u * b.width(), b.min.y + v * b.height()}});
    }
  }
  return plan;
}

AreaEstimate estimate_cultivable_area(std::span<const Stratum> strata, const SamplePlan& plan,
                                      const std::map<std::int64_t, bool>& observations) {
  if (plan.counts.size() != strata.size())
    throw ValidationError("sample plan does not match the strata");
  std::vector<std::size_t> n(strata.size(), 0), hits(strata.size(), 0);
  for (const SamplePoint& p : plan.points) {
    const auto it = observations.find(p.id);
    if (it == observations.end())
      throw DataError("no outcome recorded for sample point " + std::to_string(p.id));
    ++n[p.stratum];
    if (it->second) ++hits[p.stratum];
  }
  AreaEstimate est;
  double variance = 0.0;
  for (std::size_t h = 0; h < strata.size(); ++h) {
    const double a = strata[h].area;
    if (a <= 0.0) continue;
    if (n[h] == 0)
      throw DataError(to_string(strata[h].level) + " stratum has area but no sample outcomes");
    const double nh = static_cast<double>(n[h]);
    const double p = static_cast<double>(hits[h]) / nh;
    est.area += a * static_cast<double>(hits[h]) / nh;
    variance += a * a * p * (1.0 - p) / std::max(nh - 1.0, 1.0);
  }
  est.stderr_ = std::sqrt(variance);
  return est;
}

LossRate yearly_loss(std::span<const YearArea> series) {
  if (series.size() < 2) throw ValidationError("loss rate needs at least two years");
  std::vector<YearArea> s(series.begin(), series.end());
  std::sort(s.begin(), s.end(), [](const YearArea& a, const YearArea& b) { return a.year < b.year; });
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].year == s[i - 1].year)
      throw ValidationError("year " + std::to_string(s[i].year) + " appears twice");

  LossRate out;
  const YearArea& last = s.back();
  const YearArea& before = s[s.size() - 2];
  out.latest_change = (last.area - before.area) / static_cast<double>(last.year - before.year);

  const double count = static_cast<double>(s.size());
  double mx = 0.0, my = 0.0;
  for (const YearArea& ya : s) {
    mx += ya.year;
    my += ya.area;
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (const YearArea& ya : s) {
    sxy += (ya.year - mx) * (ya.area - my);
    sxx += (ya.year - mx) * (ya.year - mx);
  }
  out.slope = sxy / sxx;

  const double base = s.front().area;
  if (base != 0.0) {
    out.latest_change_fraction = out.latest_change / base;
    out.slope_fraction = out.slope / base;
  }
  return out;
}

double import_requirement(double population, double per_capita_demand, double cultivable_area,
                          double yield) {
  for (double v : {population, per_capita_demand, cultivable_area, yield})
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError("import requirement inputs must be finite and >= 0");
  return std::max(0.0, population * per_capita_demand - cultivable_area * yield);
}

} // namespace landcore
