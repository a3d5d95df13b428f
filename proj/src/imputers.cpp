#include "bomi/imputers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bomi::imputers {

namespace {

// Rebuilds the dataset with fills produced on the normalized scale.
// fill(i, j) is consulted only for unobserved cells.
template <typename Fill>
Dataset rebuild(const Dataset& ds, Fill fill) {
  Dataset out(ds.domain());
  const int d = ds.dims();
  for (int i = 0; i < ds.size(); ++i) {
    const Row& r = ds.row(i);
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j)
      x[j] = r.x.observed(j) ? r.x.value(j)
                             : denormalize_coord(ds.domain(), j, fill(i, j));
    out.add(PartialPoint(x), r.y, r.origin);
  }
  return out;
}

void require_column_observed(const MatrixView& mv, int j) {
  if (!mv.m.observed.col(j).any())
    throw std::invalid_argument("impute: column " + std::to_string(j) +
                                " has no observed cell");
}

}  // namespace

Kind parse_kind(std::string_view name) {
  if (name == "mean") return Kind::mean;
  if (name == "mode") return Kind::mode;
  if (name == "knn") return Kind::knn;
  if (name == "bpmf") return Kind::bpmf_point;
  throw std::invalid_argument("unknown imputer '" + std::string(name) +
                              "' (expected mean, mode, knn or bpmf)");
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::mean: return "mean";
    case Kind::mode: return "mode";
    case Kind::knn: return "knn";
    case Kind::bpmf_point: return "bpmf";
  }
  throw std::logic_error("kind_name: bad enum");
}

Dataset impute_mean(const Dataset& ds) {
  if (ds.complete()) return ds;
  MatrixView mv = as_matrix(ds);
  const int d = ds.dims();
  Eigen::VectorXd col_mean(d);
  for (int j = 0; j < d; ++j) {
    if (mv.m.observed.col(j).all()) continue;
    require_column_observed(mv, j);
    double sum = 0.0;
    long count = 0;
    for (int i = 0; i < ds.size(); ++i) {
      if (!mv.m.observed(i, j)) continue;
      sum += mv.m.values(i, j);
      ++count;
    }
    col_mean[j] = sum / count;
  }
  return rebuild(ds, [&](int, int j) { return col_mean[j]; });
}

Dataset impute_mode(const Dataset& ds) {
  if (ds.complete()) return ds;
  MatrixView mv = as_matrix(ds);
  const int d = ds.dims();
  Eigen::VectorXd col_mode(d);
  for (int j = 0; j < d; ++j) {
    if (mv.m.observed.col(j).all()) continue;
    require_column_observed(mv, j);
    std::map<long, int> bins;  // key = value rounded to 3 decimals, x1000
    for (int i = 0; i < ds.size(); ++i) {
      if (!mv.m.observed(i, j)) continue;
      bins[std::llround(mv.m.values(i, j) * 1000.0)]++;
    }
    long best_key = 0;
    int best_count = 0;
    for (auto [key, count] : bins) {  // ascending keys: ties keep the smallest
      if (count > best_count) {
        best_count = count;
        best_key = key;
      }
    }
    col_mode[j] = static_cast<double>(best_key) / 1000.0;
  }
  return rebuild(ds, [&](int, int j) { return col_mode[j]; });
}

Dataset impute_knn(const Dataset& ds, int k) {
  if (k < 1) throw std::invalid_argument("impute_knn: k must be >= 1");
  if (ds.complete()) return ds;
  MatrixView mv = as_matrix(ds);
  const int n = ds.size();
  const int d = ds.dims();

  auto distance = [&](int a, int b) {
    double sum = 0.0;
    int shared = 0;
    for (int j = 0; j < d; ++j) {
      if (!mv.m.observed(a, j) || !mv.m.observed(b, j)) continue;
      double diff = mv.m.values(a, j) - mv.m.values(b, j);
      sum += diff * diff;
      ++shared;
    }
    if (shared == 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(sum * d / shared);
  };

  auto fill = [&](int i, int j) {
    require_column_observed(mv, j);
    std::vector<std::pair<double, int>> donors;  // (distance, row)
    for (int r = 0; r < n; ++r) {
      if (r == i || !mv.m.observed(r, j)) continue;
      donors.emplace_back(distance(i, r), r);
    }
    if (donors.empty())
      throw std::invalid_argument("impute_knn: no donor row observes column " +
                                  std::to_string(j));
    std::sort(donors.begin(), donors.end());
    std::size_t take = std::min<std::size_t>(k, donors.size());
    double sum = 0.0;
    for (std::size_t t = 0; t < take; ++t) sum += mv.m.values(donors[t].second, j);
    return sum / static_cast<double>(take);
  };

  return rebuild(ds, fill);
}

Dataset impute_bpmf_point(const Dataset& ds, const bpmf::Config& cfg, RngStream& rng) {
  bpmf::Config one = cfg;
  one.completions = 1;
  return bpmf::sample_completions(ds, one, rng).front();
}

Dataset impute(const Dataset& ds, Kind kind, int knn_k, const bpmf::Config& cfg,
               RngStream& rng) {
  switch (kind) {
    case Kind::mean: return impute_mean(ds);
    case Kind::mode: return impute_mode(ds);
    case Kind::knn: return impute_knn(ds, knn_k);
    case Kind::bpmf_point: return impute_bpmf_point(ds, cfg, rng);
  }
  throw std::logic_error("impute: bad enum");
}

}  // namespace bomi::imputers
