#pragma once

#include <limits>
#include <vector>

#include "spikecast/series.hpp"

namespace spikecast {

struct PointCloud {
    std::vector<std::vector<double>> points;  // all the same dimension

    std::size_t size() const { return points.size(); }
    void validate() const;
};

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct DiagramPoint {
    double birth;
    double death;  // kInfiniteDeath for essential classes

    bool essential() const { return death == kInfiniteDeath; }
    double persistence() const { return death - birth; }
};

/// Birth/death pairs for homology dimensions 0 and 1.
struct PersistenceDiagram {
    std::vector<DiagramPoint> h0;
    std::vector<DiagramPoint> h1;

    const std::vector<DiagramPoint>& dim(int d) const { return d == 0 ? h0 : h1; }
};

struct TdaConfig {
    int embed_dim = 3;
    int delay = 2;
    double max_scale = 0.0;  // <= 0: use the enclosing radius of the cloud
    double q = 1.0;
    bool include_essentials = false;
};

// Delay-coordinate points over the trailing `window` samples of the series:
// (x(t), x(t-delay), ..., x(t-(d-1)*delay)).
PointCloud sliding_window_cloud(const TimeSeries& series, int window, int embed_dim, int delay);

// H0/H1 of the Vietoris-Rips filtration truncated at max_scale, computed by
// boundary-matrix reduction over Z2. Zero-persistence pairs are dropped;
// classes alive at max_scale are recorded with infinite death.
PersistenceDiagram rips_persistence(const PointCloud& cloud, double max_scale = 0.0);

// q-Wasserstein distance between two diagrams of one homology dimension:
// optimal partial matching with L-inf ground metric and diagonal projections,
// solved exactly on the augmented square cost matrix.
double wasserstein(const std::vector<DiagramPoint>& X, const std::vector<DiagramPoint>& Y,
                   double q = 1.0, bool include_essentials = false);

double wasserstein(const PersistenceDiagram& X, const PersistenceDiagram& Y, double q, int dim,
                   bool include_essentials = false);

// Trailing-window diagrams of both series compared at q=1. Uses H1; falls
// back to H0 when both windows have empty H1.
double rolling_wasserstein(const TimeSeries& observed, const TimeSeries& predicted, int window,
                           const TdaConfig& cfg = {});

// Exact minimum-cost perfect assignment on a square cost matrix (Hungarian
// method with potentials). Exposed for reuse; cost[i][j] >= 0.
double solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace spikecast
