#pragma once

#include <vector>

#include "spikecast/series.hpp"

namespace spikecast {

// Persistence forecast: next value = last observed value.
double naive_predict(const std::vector<double>& tail);

/// Autoregressor of order p trained by one SGD step per observation
/// (least-mean-squares). Weights include a trailing bias term.
class OnlineAr {
public:
    explicit OnlineAr(int p = 8, double learning_rate = 0.01);

    // Feeds one observation: updates weights against the previous prediction's
    // error, then predicts the next value. Returns the prediction (0 until p
    // lags are available).
    double step(double observation);

    int order() const { return p_; }
    const std::vector<double>& weights() const { return w_; }
    bool diverged() const { return diverged_; }  // sticky: set on any reset
    double learning_rate() const { return lr_; }

private:
    double predict_from_lags() const;

    int p_;
    double lr_;
    std::vector<double> w_;     // p lag weights + bias
    std::vector<double> lags_;  // most recent first
    int seen_ = 0;
    double last_prediction_ = 0.0;
    bool has_prediction_ = false;
    bool diverged_ = false;
};

}  // namespace spikecast
