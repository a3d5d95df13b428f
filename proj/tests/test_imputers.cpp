#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bomi/imputers.hpp"

using namespace bomi;

namespace {

PartialPoint masked2(double a, double b, bool oa, bool ob) {
  Eigen::VectorXd v(2);
  v << a, b;
  BoolArray m(2);
  m << oa, ob;
  return PartialPoint(v, m);
}

// Dataset equality on points, targets and origins (bitwise).
bool same_dataset(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size() || a.dims() != b.dims()) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.row(i).y != b.row(i).y || a.row(i).origin != b.row(i).origin) return false;
    for (int j = 0; j < a.dims(); ++j) {
      if (a.row(i).x.observed(j) != b.row(i).x.observed(j)) return false;
      if (a.row(i).x.observed(j) && a.row(i).x.value(j) != b.row(i).x.value(j))
        return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("kind parsing round-trips, rejects unknown names") {
  using imputers::Kind;
  CHECK(imputers::parse_kind("mean") == Kind::mean);
  CHECK(imputers::parse_kind("mode") == Kind::mode);
  CHECK(imputers::parse_kind("knn") == Kind::knn);
  CHECK(imputers::parse_kind("bpmf") == Kind::bpmf_point);
  for (Kind k : {Kind::mean, Kind::mode, Kind::knn, Kind::bpmf_point})
    CHECK(imputers::parse_kind(imputers::kind_name(k)) == k);
  CHECK_THROWS_AS(imputers::parse_kind("median"), std::invalid_argument);
}

TEST_CASE("mean: column average fills, observed cells untouched") {
  Dataset ds(Domain::unit(2));
  ds.add(masked2(1.0, 0.4, true, true), 1.0);
  ds.add(masked2(0.0, 0.6, false, true), 2.0);  // dim 0 missing
  ds.add(masked2(3.0 / 7.0, 0.0, true, false), 3.0);

  Dataset out = imputers::impute_mean(ds);
  CHECK(out.complete());
  // Column 0 observed values {1, 3/7}: fill their mean.
  CHECK(out.row(1).x.value(0) ==
        doctest::Approx((1.0 + 3.0 / 7.0) / 2.0).epsilon(1e-12));
  // Column 1 observed values {0.4, 0.6}: fill 0.5.
  CHECK(out.row(2).x.value(1) == doctest::Approx(0.5).epsilon(1e-12));
  // Observed coordinates, targets, origins all preserved exactly.
  CHECK(out.row(0).x.value(0) == 1.0);
  CHECK(out.row(1).x.value(1) == 0.6);
  CHECK(out.row(2).y == 3.0);

  // [1, ?, 3] on a wide domain fills the raw mean 2.
  Eigen::VectorXd lo(1), hi(1);
  lo << 0.0;
  hi << 10.0;
  Dataset col(Domain(lo, hi));
  Eigen::VectorXd one(1), three(1);
  one << 1.0;
  three << 3.0;
  col.add(PartialPoint(one), 0.0);
  col.add(PartialPoint(Eigen::VectorXd::Zero(1), BoolArray::Constant(1, false)), 1.0);
  col.add(PartialPoint(three), 2.0);
  CHECK(imputers::impute_mean(col).row(1).x.value(0) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // [2, 2, ?, ?] fills 2 in both rows.
  Dataset twos(Domain(lo, hi));
  Eigen::VectorXd two(1);
  two << 2.0;
  twos.add(PartialPoint(two), 0.0);
  twos.add(PartialPoint(two), 1.0);
  twos.add(PartialPoint(Eigen::VectorXd::Zero(1), BoolArray::Constant(1, false)), 2.0);
  twos.add(PartialPoint(Eigen::VectorXd::Zero(1), BoolArray::Constant(1, false)), 3.0);
  Dataset tout = imputers::impute_mean(twos);
  CHECK(tout.row(2).x.value(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(tout.row(3).x.value(0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mean: complete input returned unchanged, idempotent") {
  Dataset ds(Domain::unit(2));
  ds.add(masked2(0.3, 0.4, true, true), 1.0);
  ds.add(masked2(0.9, 0.6, false, true), 2.0);
  Dataset once = imputers::impute_mean(ds);
  CHECK(same_dataset(once, imputers::impute_mean(once)));

  Dataset complete(Domain::unit(2));
  complete.add(masked2(0.3, 0.4, true, true), 1.0);
  CHECK(same_dataset(complete, imputers::impute_mean(complete)));
}

TEST_CASE("mode: most frequent after rounding, ties to the smallest") {
  Eigen::VectorXd lo(1), hi(1);
  lo << 0.0;
  hi << 10.0;
  auto single = [&](double v) {
    Eigen::VectorXd x(1);
    x << v;
    return PartialPoint(x);
  };
  auto hole = [&] {
    return PartialPoint(Eigen::VectorXd::Zero(1), BoolArray::Constant(1, false));
  };

  // [1, 1, 2, ?] -> 1
  Dataset a(Domain(lo, hi));
  a.add(single(1.0), 0.0);
  a.add(single(1.0), 1.0);
  a.add(single(2.0), 2.0);
  a.add(hole(), 3.0);
  CHECK(imputers::impute_mode(a).row(3).x.value(0) == doctest::Approx(1.0));

  // all-distinct [0.1, 0.2, 0.3, ?] -> smallest value 0.1
  Dataset b(Domain(lo, hi));
  b.add(single(0.1), 0.0);
  b.add(single(0.2), 1.0);
  b.add(single(0.3), 2.0);
  b.add(hole(), 3.0);
  CHECK(imputers::impute_mode(b).row(3).x.value(0) == doctest::Approx(0.1));

  // [5, 5, 5, ?] -> 5
  Dataset c(Domain(lo, hi));
  c.add(single(5.0), 0.0);
  c.add(single(5.0), 1.0);
  c.add(single(5.0), 2.0);
  c.add(hole(), 3.0);
  CHECK(imputers::impute_mode(c).row(3).x.value(0) == doctest::Approx(5.0));

  // Values closer than the 3-decimal grid merge into one bin.
  Dataset d(Domain::unit(1));
  Eigen::VectorXd v1(1), v2(1), v3(1);
  v1 << 0.5001;
  v2 << 0.5003;
  v3 << 0.9;
  Dataset e(Domain::unit(1));
  e.add(PartialPoint(v1), 0.0);
  e.add(PartialPoint(v2), 1.0);
  e.add(PartialPoint(v3), 2.0);
  e.add(hole(), 3.0);
  // 0.5001 and 0.5003 both round to 0.500: that bin wins with count 2.
  CHECK(imputers::impute_mode(e).row(3).x.value(0) == doctest::Approx(0.5));

  Dataset once = imputers::impute_mode(a);
  CHECK(same_dataset(once, imputers::impute_mode(once)));
}

TEST_CASE("knn: nearest donor by partially observed distance") {
  // Two complete anchors and one query observing only dim 0.
  Dataset ds(Domain::unit(2));
  ds.add(masked2(0.0, 0.0, true, true), 0.0);
  ds.add(masked2(1.0, 1.0, true, true), 1.0);
  ds.add(masked2(0.1, 0.0, true, false), 2.0);

  Dataset k1 = imputers::impute_knn(ds, 1);
  CHECK(k1.row(2).x.value(1) == doctest::Approx(0.0));  // nearest anchor's dim 1

  // k exhausts the donor pool: equals the mean over all eligible donors.
  Dataset k9 = imputers::impute_knn(ds, 9);
  CHECK(k9.row(2).x.value(1) == doctest::Approx(0.5));

  // Donors missing the target column cannot donate.
  Dataset pool(Domain::unit(2));
  pool.add(masked2(0.05, 0.0, true, false), 0.0);  // close but ineligible
  pool.add(masked2(0.9, 0.7, true, true), 1.0);
  pool.add(masked2(0.1, 0.0, true, false), 2.0);
  Dataset filled = imputers::impute_knn(pool, 1);
  CHECK(filled.row(0).x.value(1) == doctest::Approx(0.7));
  CHECK(filled.row(2).x.value(1) == doctest::Approx(0.7));

  // Identical observed coordinates: fill equals the donors' column mean.
  Dataset same(Domain::unit(2));
  same.add(masked2(0.4, 0.2, true, true), 0.0);
  same.add(masked2(0.4, 0.8, true, true), 1.0);
  same.add(masked2(0.4, 0.0, true, false), 2.0);
  CHECK(imputers::impute_knn(same, 2).row(2).x.value(1) == doctest::Approx(0.5));

  Dataset once = imputers::impute_knn(ds, 1);
  CHECK(same_dataset(once, imputers::impute_knn(once, 1)));
  CHECK_THROWS_AS(imputers::impute_knn(ds, 0), std::invalid_argument);
}

TEST_CASE("knn: scaled partial distances can reorder donors") {
  // Donor A matches on one dim at distance 0.3 -> scaled 0.3 * sqrt(3).
  // Donor B matches on all three dims at plain distance 0.4.
  // sqrt(3)*0.3 = 0.5196 > 0.4: the fully shared donor wins.
  Eigen::VectorXd qa(3), da(3), db(3);
  BoolArray q_mask(3), a_mask(3);
  qa << 0.5, 0.5, 0.0;
  q_mask << true, true, false;
  da << 0.8, 0.5, 0.9;  // |diff| = 0.3 on dim 0 only (dim 1 hidden)
  a_mask << true, false, true;
  db << 0.5 + 0.4 / std::sqrt(2.0), 0.5 - 0.4 / std::sqrt(2.0), 0.1;

  Dataset ds(Domain::unit(3));
  ds.add(PartialPoint(da, a_mask), 0.0);
  ds.add(PartialPoint(db), 1.0);
  ds.add(PartialPoint(qa, q_mask), 2.0);

  Dataset out = imputers::impute_knn(ds, 1);
  CHECK(out.row(2).x.value(2) == doctest::Approx(0.1));
}

TEST_CASE("imputers: fully missing column is an error") {
  Dataset ds(Domain::unit(2));
  ds.add(masked2(0.1, 0.0, true, false), 0.0);
  ds.add(masked2(0.2, 0.0, true, false), 1.0);
  CHECK_THROWS_WITH_AS(imputers::impute_mean(ds), doctest::Contains("column 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(imputers::impute_mode(ds), std::invalid_argument);
  CHECK_THROWS_AS(imputers::impute_knn(ds, 3), std::invalid_argument);
}

TEST_CASE("bpmf point imputer: the single completion of the sampler") {
  Dataset ds(Domain::unit(2));
  RngStream mk(91);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd x(2);
    x << mk.uniform01(), mk.uniform01();
    if (i % 4 == 0) {
      BoolArray m(2);
      m << false, true;
      ds.add(PartialPoint(x, m), x.sum());
    } else {
      ds.add(PartialPoint(x), x.sum());
    }
  }

  bpmf::Config cfg;
  cfg.burn_in = 8;
  cfg.completions = 7;  // forced to 1 inside the imputer
  RngStream a(92), b(92);
  Dataset got = imputers::impute_bpmf_point(ds, cfg, a);
  bpmf::Config one = cfg;
  one.completions = 1;
  Dataset expect = bpmf::sample_completions(ds, one, b).front();
  CHECK(same_dataset(got, expect));
  CHECK(got.complete());

  // Deterministic under an equal stream.
  RngStream c(92);
  CHECK(same_dataset(got, imputers::impute_bpmf_point(ds, cfg, c)));

  // Dispatcher reaches every kind.
  RngStream d(93);
  CHECK(imputers::impute(ds, imputers::Kind::mean, 5, cfg, d).complete());
  CHECK(imputers::impute(ds, imputers::Kind::mode, 5, cfg, d).complete());
  CHECK(imputers::impute(ds, imputers::Kind::knn, 5, cfg, d).complete());
  CHECK(imputers::impute(ds, imputers::Kind::bpmf_point, 5, cfg, d).complete());
}
