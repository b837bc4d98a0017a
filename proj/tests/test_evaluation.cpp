#include <algorithm>
#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "wsncal/errors.hpp"
#include "wsncal/evaluation.hpp"

using namespace wsncal;
namespace fs = std::filesystem;

namespace {

PredictionSet truth_predictions(const Dataset& ds, const ExperimentSplit& split) {
  const auto norm = normalize(ds, split);
  const auto& part = split.test.front();
  const auto& r = norm.realization(part.realization);
  PredictionSet out;
  out.scaler_hash = norm.scaler.hash();
  for (std::size_t t = part.range.begin; t < part.range.end; ++t) {
    for (std::size_t k = 0; k < ds.sensor_count(); ++k) {
      const std::size_t i = t - ds.first_timestep();
      out.rows.push_back({t, k, r.truth[k].pm25[i], r.truth[k].pm10[i]});
    }
  }
  return out;
}

class Evaluate : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    GenerationConfig c;
    c.master_seed = 9;
    c.scene.n_sources = 8;
    c.scene.n_static = 6;
    c.scene.n_mobile = 2;
    ds_ = new Dataset(generate(c));
  }
  static void TearDownTestSuite() {
    delete ds_;
    ds_ = nullptr;
  }

  static Dataset* ds_;
  const ExperimentSplit split = make_split(*ds_, Experiment::kStandard);
};

Dataset* Evaluate::ds_ = nullptr;

}  // namespace

TEST(Mse, Examples) {
  EXPECT_DOUBLE_EQ(mse(std::vector<double>{1.0, 2.0}, std::vector<double>{0.0, 0.0}), 2.5);
  EXPECT_EQ(mse(std::vector<double>{3.0}, std::vector<double>{3.0}), 0.0);
  EXPECT_THROW(mse(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), ContractError);
  EXPECT_THROW(mse(std::vector<double>{}, std::vector<double>{}), ContractError);
}

TEST(FitLinear, ExactRecovery) {
  std::vector<double> y, x;
  for (int i = 0; i < 50; ++i) {
    y.push_back(0.3 * i + std::sin(i));
    x.push_back(1.07 * y.back() + 2.5);
  }
  const auto m = fit_linear(y, x);
  EXPECT_FALSE(m.degenerate);
  EXPECT_NEAR(m.slope, 1.07, 1e-12);
  EXPECT_NEAR(m.intercept, 2.5, 1e-12);
  EXPECT_NEAR(m.calibrate(x[7]), y[7], 1e-12);
}

TEST(FitLinear, ConstantTruthFallsBackToMean) {
  const std::vector<double> y(10, 4.0);
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto m = fit_linear(y, x);
  EXPECT_TRUE(m.degenerate);
  EXPECT_EQ(m.slope, 0.0);
  EXPECT_DOUBLE_EQ(m.intercept, 5.5);
  EXPECT_DOUBLE_EQ(m.calibrate(123.0), 4.0);
}

TEST(FitLinear, ResidualSpreadMatchesNoise) {
  RandomStream rng(31);
  std::vector<double> y(20'000), x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = rng.uniform(0.0, 60.0);
    x[i] = 0.98 * y[i] + 1.2 + rng.normal(0.0, 0.05);
  }
  const auto m = fit_linear(y, x);
  double sq = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = x[i] - (m.slope * y[i] + m.intercept);
    sq += r * r;
  }
  EXPECT_NEAR(std::sqrt(sq / y.size()), 0.05, 0.002);
}

TEST_F(Evaluate, TruthScoresZero) {
  const auto r = evaluate(truth_predictions(*ds_, split), *ds_, split);
  EXPECT_EQ(r.samples, split.test[0].range.size() * ds_->sensor_count());
  EXPECT_EQ(r.mse_all, 0.0);
  EXPECT_NEAR(r.raw_mse_all, 0.0, 1e-20);
  EXPECT_EQ(r.per_sensor_mse.size(), ds_->sensor_count());
}

TEST_F(Evaluate, IdentityScoresMeanSquaredNormalizedDrift) {
  const auto norm = normalize(*ds_, split);
  const auto& r = norm.realization(1);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t t = split.test[0].range.begin; t < split.test[0].range.end; ++t) {
    const std::size_t i = t - ds_->first_timestep();
    for (std::size_t k = 0; k < ds_->sensor_count(); ++k) {
      const double d25 = r.drifted[k].pm25[i] - r.truth[k].pm25[i];
      const double d10 = r.drifted[k].pm10[i] - r.truth[k].pm10[i];
      sum += d25 * d25 + d10 * d10;
      n += 2;
    }
  }
  const auto result = evaluate(identity_predictions(*ds_, split), *ds_, split);
  EXPECT_NEAR(result.mse_all, sum / n, 1e-12);
  EXPECT_NEAR(result.drift_mse_all, result.mse_all, 1e-12);
}

TEST_F(Evaluate, RowOrderDoesNotMatter) {
  auto preds = identity_predictions(*ds_, split);
  const auto a = evaluate(preds, *ds_, split);
  std::reverse(preds.rows.begin(), preds.rows.end());
  const auto b = evaluate(preds, *ds_, split);
  EXPECT_NEAR(a.mse_all, b.mse_all, 1e-15);
  EXPECT_NEAR(a.pm10.raw_mse, b.pm10.raw_mse, 1e-12);
}

TEST_F(Evaluate, RowsOutsideTestAreIgnored) {
  auto preds = identity_predictions(*ds_, split);
  const auto base = evaluate(preds, *ds_, split);
  preds.rows.push_back({100, 0, 1e6, 1e6});
  EXPECT_EQ(evaluate(preds, *ds_, split).mse_all, base.mse_all);
}

TEST_F(Evaluate, MalformedPredictionsAreErrors) {
  const auto good = identity_predictions(*ds_, split);

  auto missing = good;
  missing.rows.pop_back();
  EXPECT_THROW(evaluate(missing, *ds_, split), DataError);

  auto dup = good;
  dup.rows.push_back(dup.rows.front());
  EXPECT_THROW(evaluate(dup, *ds_, split), DataError);

  auto unknown = good;
  unknown.rows.push_back({6000, ds_->sensor_count(), 0.0, 0.0});
  EXPECT_THROW(evaluate(unknown, *ds_, split), DataError);

  auto wrong_hash = good;
  wrong_hash.scaler_hash = "0000000000000000";
  EXPECT_THROW(evaluate(wrong_hash, *ds_, split), DataError);
}

TEST_F(Evaluate, PredictionFileRoundTrip) {
  const auto preds = identity_predictions(*ds_, split);
  const auto path = fs::temp_directory_path() / "wsncal-test-preds.csv";
  write_predictions(path, preds);
  const auto back = read_predictions(path);
  ASSERT_EQ(back.rows.size(), preds.rows.size());
  EXPECT_EQ(back.scaler_hash, preds.scaler_hash);
  EXPECT_EQ(back.rows[17].pm10, preds.rows[17].pm10);
  EXPECT_EQ(evaluate(back, *ds_, split).mse_all, evaluate(preds, *ds_, split).mse_all);
  fs::remove(path);
}

TEST_F(Evaluate, OracleBeatsIdentity) {
  const auto model = fit_oracle(*ds_, split);
  const auto oracle = evaluate(oracle_predictions(*ds_, split, model), *ds_, split);
  const auto identity = evaluate(identity_predictions(*ds_, split), *ds_, split);
  EXPECT_LT(oracle.mse_all, identity.mse_all);
}

TEST_F(Evaluate, ScatterIsCappedAndDeterministic) {
  EvaluateOptions opts;
  opts.max_scatter_points = 500;
  const auto preds = identity_predictions(*ds_, split);
  const auto a = evaluate(preds, *ds_, split, opts);
  const auto b = evaluate(preds, *ds_, split, opts);
  ASSERT_EQ(a.scatter_pm25.size(), 500u);
  for (std::size_t i = 0; i < a.scatter_pm25.size(); ++i) {
    EXPECT_EQ(a.scatter_pm25[i].true_drift, b.scatter_pm25[i].true_drift);
    // Identity removes nothing, so its predicted drift is zero.
    EXPECT_EQ(a.scatter_pm25[i].predicted_drift, 0.0);
  }
}
