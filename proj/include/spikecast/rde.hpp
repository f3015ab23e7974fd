#pragma once

#include <cstdint>
#include <vector>

#include "spikecast/series.hpp"

namespace spikecast {

struct DelayEmbedding {
    int E = 0;
    int delay = 0;
    int first_index = 0;  // time index of vectors.front()
    std::vector<std::vector<double>> vectors;
};

// Vector at t = (x(t), x(t-delay), ..., x(t-(E-1)*delay)) for every t with a
// full history window.
DelayEmbedding delay_embed(const TimeSeries& series, int E, int delay);

struct RdeConfig {
    int s = 2;            // channels per random embedding (defaults to embed)
    int ensemble = 100;   // number of weak predictors (M)
    int embed = 2;        // target delay-embedding dimension (E)
    int delay = 2;        // lag spacing for delay embeddings
    int k_nn = 4;
    int horizon = 1;
    double trim = 0.1;    // fraction of votes dropped at each end
    double weight_eps = 1e-6;

    void validate() const;
};

struct WeakPredictor {
    std::vector<int> channels;               // s distinct observation channels
    std::vector<std::vector<double>> train_x;  // s-dimensional inputs
    std::vector<std::vector<double>> train_y;  // horizon-dimensional targets
    double fit_error = 0.0;                  // leave-one-out RMSE
};

struct RdeModel {
    RdeConfig cfg;
    std::vector<WeakPredictor> predictors;
};

struct Forecast {
    std::vector<double> point;   // one value per step up to horizon
    std::vector<double> spread;  // inter-decile range of the votes per step
};

// Draws `ensemble` random s-subsets of the observation channels and trains one
// k-nearest-neighbor regressor per subset on pairs
// (observations at t -> target at t+1..t+horizon).
RdeModel fit(const MultiSeries& observations, const TimeSeries& target, const RdeConfig& cfg,
             std::uint64_t seed);

// Each weak predictor votes on the full observation vector at the current
// step; votes are aggregated by a trimmed inverse-error-weighted mean.
Forecast predict(const RdeModel& model, const std::vector<double>& observation);

// False-nearest-neighbors choice of embedding dimension: smallest E with a
// false-neighbor fraction below 5%, else max_E.
int choose_embedding_dim(const TimeSeries& series, int max_E, int delay = 1);

}  // namespace spikecast
