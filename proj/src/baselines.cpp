#include "spikecast/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace spikecast {

double naive_predict(const std::vector<double>& tail) {
    if (tail.empty()) throw std::invalid_argument("naive_predict: no observations");
    return tail.back();
}

OnlineAr::OnlineAr(int p, double learning_rate) : p_(p), lr_(learning_rate) {
    if (p_ < 1) throw std::invalid_argument("online ar: order must be at least 1");
    if (!(lr_ >= 0.0)) throw std::invalid_argument("online ar: learning rate must be non-negative");
    w_.assign(p_ + 1, 0.0);
    lags_.reserve(p_);
}

double OnlineAr::predict_from_lags() const {
    double y = w_[p_];  // bias
    for (int i = 0; i < p_; ++i) y += w_[i] * lags_[i];
    return y;
}

double OnlineAr::step(double observation) {
    if (has_prediction_) {
        // Gradient step on the squared error of the last prediction, which was
        // made from the lag vector still held in lags_.
        const double err = last_prediction_ - observation;
        for (int i = 0; i < p_; ++i) w_[i] -= lr_ * err * lags_[i];
        w_[p_] -= lr_ * err;

        double norm2 = 0.0;
        for (double w : w_) norm2 += w * w;
        if (!(norm2 <= 1e12) || !std::isfinite(norm2)) {
            w_.assign(p_ + 1, 0.0);
            diverged_ = true;
        }
    }

    lags_.insert(lags_.begin(), observation);
    if (static_cast<int>(lags_.size()) > p_) lags_.pop_back();
    ++seen_;

    if (seen_ < p_) {
        has_prediction_ = false;
        last_prediction_ = 0.0;
        return 0.0;
    }
    last_prediction_ = predict_from_lags();
    has_prediction_ = true;
    return last_prediction_;
}

}  // namespace spikecast
