#include "spikecast/tda.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace spikecast {

void PointCloud::validate() const {
    if (points.empty()) return;
    const std::size_t d = points[0].size();
    for (const auto& p : points) {
        if (p.size() != d)
            throw std::invalid_argument("PointCloud: mixed dimensions");
        for (double c : p)
            if (!std::isfinite(c))
                throw std::invalid_argument("PointCloud: non-finite coordinate");
    }
}

PointCloud sliding_window_cloud(const TimeSeries& series, int window, int embed_dim, int delay) {
    series.validate();
    if (embed_dim < 1 || delay < 1)
        throw std::invalid_argument("sliding_window_cloud: embed_dim and delay must be >= 1");
    if (window < embed_dim * delay)
        throw std::invalid_argument("sliding_window_cloud: window < embed_dim * delay");
    if (series.size() < static_cast<std::size_t>(window))
        throw std::invalid_argument("sliding_window_cloud: series shorter than window");

    const std::size_t n = series.size();
    const std::size_t start = n - static_cast<std::size_t>(window);
    PointCloud cloud;
    for (std::size_t t = start + static_cast<std::size_t>((embed_dim - 1) * delay); t < n; ++t) {
        std::vector<double> p(embed_dim);
        for (int j = 0; j < embed_dim; ++j)
            p[j] = series.values[t - static_cast<std::size_t>(j * delay)];
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

struct Simplex {
    double value;
    int dim;
    int a, b, c;  // vertex ids; unused slots -1
};

// Z2 column addition: symmetric difference of sorted row-index lists.
std::vector<int> xor_columns(const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out;
    out.reserve(x.size() + y.size());
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(),
                                  std::back_inserter(out));
    return out;
}

}  // namespace

PersistenceDiagram rips_persistence(const PointCloud& cloud, double max_scale) {
    cloud.validate();
    const int n = static_cast<int>(cloud.size());
    if (n < 1)
        throw std::invalid_argument("rips_persistence: empty cloud");

    PersistenceDiagram diagram;
    if (n == 1) {
        diagram.h0.push_back({0.0, kInfiniteDeath});
        return diagram;
    }

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = euclidean(cloud.points[i], cloud.points[j]);

    if (max_scale <= 0.0) {
        // enclosing radius: every class is coned off beyond this scale
        max_scale = kInfiniteDeath;
        for (int i = 0; i < n; ++i) {
            double far = 0.0;
            for (int j = 0; j < n; ++j) far = std::max(far, dist[i][j]);
            max_scale = std::min(max_scale, far);
        }
    }

    std::vector<Simplex> simplices;
    for (int i = 0; i < n; ++i) simplices.push_back({0.0, 0, i, -1, -1});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist[i][j] <= max_scale) simplices.push_back({dist[i][j], 1, i, j, -1});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (dist[i][j] > max_scale) continue;
            for (int k = j + 1; k < n; ++k) {
                const double val = std::max({dist[i][j], dist[i][k], dist[j][k]});
                if (val <= max_scale) simplices.push_back({val, 2, i, j, k});
            }
        }

    std::sort(simplices.begin(), simplices.end(), [](const Simplex& x, const Simplex& y) {
        if (x.value != y.value) return x.value < y.value;
        if (x.dim != y.dim) return x.dim < y.dim;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });

    const int m = static_cast<int>(simplices.size());
    std::vector<int> vertex_pos(n);
    std::unordered_map<long long, int> edge_pos;
    for (int s = 0; s < m; ++s) {
        if (simplices[s].dim == 0)
            vertex_pos[simplices[s].a] = s;
        else if (simplices[s].dim == 1)
            edge_pos[static_cast<long long>(simplices[s].a) * n + simplices[s].b] = s;
    }

    // boundary columns with ascending row indices
    std::vector<std::vector<int>> cols(m);
    for (int s = 0; s < m; ++s) {
        const Simplex& sx = simplices[s];
        if (sx.dim == 1) {
            cols[s] = {vertex_pos[sx.a], vertex_pos[sx.b]};
        } else if (sx.dim == 2) {
            cols[s] = {edge_pos[static_cast<long long>(sx.a) * n + sx.b],
                       edge_pos[static_cast<long long>(sx.a) * n + sx.c],
                       edge_pos[static_cast<long long>(sx.b) * n + sx.c]};
        }
        std::sort(cols[s].begin(), cols[s].end());
    }

    // standard left-to-right reduction
    std::vector<int> pivot_owner(m, -1);
    std::vector<char> paired(m, 0);
    for (int j = 0; j < m; ++j) {
        while (!cols[j].empty()) {
            const int low = cols[j].back();
            const int owner = pivot_owner[low];
            if (owner < 0) break;
            cols[j] = xor_columns(cols[j], cols[owner]);
        }
        if (!cols[j].empty()) {
            const int low = cols[j].back();
            pivot_owner[low] = j;
            paired[low] = 1;
            paired[j] = 1;

            const Simplex& birth = simplices[low];
            const Simplex& death = simplices[j];
            if (death.value > birth.value) {
                if (birth.dim == 0)
                    diagram.h0.push_back({birth.value, death.value});
                else if (birth.dim == 1)
                    diagram.h1.push_back({birth.value, death.value});
            }
        }
    }

    // creators that were never killed are alive at max_scale
    for (int s = 0; s < m; ++s) {
        if (paired[s]) continue;
        if (simplices[s].dim == 0)
            diagram.h0.push_back({0.0, kInfiniteDeath});
        else if (simplices[s].dim == 1 && cols[s].empty())
            diagram.h1.push_back({simplices[s].value, kInfiniteDeath});
    }
    return diagram;
}

double solve_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0.0;
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Hungarian method with row/column potentials, O(n^3)
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += cost[match[j] - 1][j - 1];
    return total;
}

namespace {

double linf(const DiagramPoint& x, const DiagramPoint& y) {
    return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
}

double diagonal_cost(const DiagramPoint& x) { return (x.death - x.birth) / 2.0; }

}  // namespace

double wasserstein(const std::vector<DiagramPoint>& X, const std::vector<DiagramPoint>& Y,
                   double q, bool include_essentials) {
    if (q < 1.0)
        throw std::invalid_argument("wasserstein: q must be >= 1");

    std::vector<DiagramPoint> xf, yf;
    std::vector<double> xb, yb;  // essential births
    for (const auto& p : X) (p.essential() ? (void)xb.push_back(p.birth) : xf.push_back(p));
    for (const auto& p : Y) (p.essential() ? (void)yb.push_back(p.birth) : yf.push_back(p));

    double essential_sum = 0.0;
    if (include_essentials) {
        if (xb.size() != yb.size()) return kInfiniteDeath;
        std::sort(xb.begin(), xb.end());
        std::sort(yb.begin(), yb.end());
        for (std::size_t i = 0; i < xb.size(); ++i)
            essential_sum += std::pow(std::abs(xb[i] - yb[i]), q);
    }

    const int nx = static_cast<int>(xf.size());
    const int ny = static_cast<int>(yf.size());
    if (nx + ny == 0) return std::pow(essential_sum, 1.0 / q);

    const int size = nx + ny;
    std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) cost[i][j] = std::pow(linf(xf[i], yf[j]), q);
        const double dc = std::pow(diagonal_cost(xf[i]), q);
        for (int j = ny; j < size; ++j) cost[i][j] = dc;
    }
    for (int i = nx; i < size; ++i) {
        const double dc = std::pow(diagonal_cost(yf[i - nx]), q);
        for (int j = 0; j < ny; ++j) cost[i][j] = dc;
        // diagonal-to-diagonal entries stay 0
    }

    return std::pow(solve_assignment(cost) + essential_sum, 1.0 / q);
}

double wasserstein(const PersistenceDiagram& X, const PersistenceDiagram& Y, double q, int dim,
                   bool include_essentials) {
    return wasserstein(X.dim(dim), Y.dim(dim), q, include_essentials);
}

double rolling_wasserstein(const TimeSeries& observed, const TimeSeries& predicted, int window,
                           const TdaConfig& cfg) {
    if (observed.size() < static_cast<std::size_t>(window) ||
        predicted.size() < static_cast<std::size_t>(window))
        throw std::invalid_argument("rolling_wasserstein: series shorter than window");

    const PointCloud a = sliding_window_cloud(observed, window, cfg.embed_dim, cfg.delay);
    const PointCloud b = sliding_window_cloud(predicted, window, cfg.embed_dim, cfg.delay);
    const PersistenceDiagram da = rips_persistence(a, cfg.max_scale);
    const PersistenceDiagram db = rips_persistence(b, cfg.max_scale);

    if (da.h1.empty() && db.h1.empty())
        return wasserstein(da.h0, db.h0, cfg.q, cfg.include_essentials);
    return wasserstein(da.h1, db.h1, cfg.q, cfg.include_essentials);
}

}  // namespace spikecast
