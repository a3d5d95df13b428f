#pragma once

#include <string>
#include <string_view>

#include "bomi/bpmf.hpp"
#include "bomi/core.hpp"
#include "bomi/rng.hpp"

namespace bomi::imputers {

enum class Kind { mean, mode, knn, bpmf_point };

Kind parse_kind(std::string_view name);  // "mean" | "mode" | "knn" | "bpmf"
std::string kind_name(Kind kind);

// All imputers return a complete dataset: observed cells preserved exactly,
// every missing cell filled. A dataset with no missing cells comes back
// unchanged. A column that is missing in some row but observed nowhere is an
// error.

// Fill = arithmetic mean of the column's observed cells.
Dataset impute_mean(const Dataset& ds);

// Fill = most frequent observed value after rounding the column to 3 decimals
// on the normalized scale; frequency ties go to the smallest value.
Dataset impute_mode(const Dataset& ds);

// Fill = mean of the target column over the k nearest rows that observe it.
// Distance between two rows is the Euclidean distance over input dims
// observed in both, scaled by sqrt(d / #shared); no shared dims = infinitely
// far. Fewer than k eligible donors means all of them are used.
Dataset impute_knn(const Dataset& ds, int k);

// The single completion of sample_completions with completions forced to 1.
Dataset impute_bpmf_point(const Dataset& ds, const bpmf::Config& cfg, RngStream& rng);

Dataset impute(const Dataset& ds, Kind kind, int knn_k, const bpmf::Config& cfg,
               RngStream& rng);

}  // namespace bomi::imputers
