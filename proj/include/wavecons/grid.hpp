#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavecons {

/// Uniform periodic grid: nodes x_j = x_min + j*dx, j = 0..n_points-1,
/// dx = length / n_points. n_points must be a power of two >= 16.
struct PeriodicGrid {
    int n_points = 0;
    double length = 0.0;
    double x_min = 0.0;

    double dx() const { return length / n_points; }
    double node(int j) const { return x_min + j * dx(); }
    bool operator==(const PeriodicGrid&) const = default;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline PeriodicGrid make_grid(int n_points, double length, double x_min) {
    if (n_points < 16 || !is_power_of_two(n_points))
        throw std::invalid_argument("make_grid: n_points must be a power of two >= 16, got " +
                                    std::to_string(n_points));
    if (!(length > 0.0) || !std::isfinite(length) || !std::isfinite(x_min))
        throw std::invalid_argument("make_grid: length must be positive and finite");
    return PeriodicGrid{n_points, length, x_min};
}

/// Real samples on a periodic grid. Value type: the grid travels with the data.
class RealField {
  public:
    RealField() = default;
    RealField(const PeriodicGrid& grid, std::vector<double> samples)
        : grid_(grid), samples_(std::move(samples)) {
        if (static_cast<int>(samples_.size()) != grid_.n_points)
            throw std::invalid_argument("RealField: sample count does not match grid");
    }
    explicit RealField(const PeriodicGrid& grid, double fill = 0.0)
        : grid_(grid), samples_(static_cast<size_t>(grid.n_points), fill) {}

    const PeriodicGrid& grid() const { return grid_; }
    int size() const { return grid_.n_points; }
    double& operator[](int j) { return samples_[static_cast<size_t>(j)]; }
    double operator[](int j) const { return samples_[static_cast<size_t>(j)]; }
    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }

    bool all_finite() const {
        for (double v : samples_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : samples_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    PeriodicGrid grid_;
    std::vector<double> samples_;
};

inline void require_same_grid(const RealField& a, const RealField& b, const char* what) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

inline RealField operator+(const RealField& a, const RealField& b) {
    require_same_grid(a, b, "operator+");
    RealField r = a;
    for (int j = 0; j < r.size(); ++j) r[j] += b[j];
    return r;
}

inline RealField operator-(const RealField& a, const RealField& b) {
    require_same_grid(a, b, "operator-");
    RealField r = a;
    for (int j = 0; j < r.size(); ++j) r[j] -= b[j];
    return r;
}

inline RealField operator*(double s, const RealField& a) {
    RealField r = a;
    for (int j = 0; j < r.size(); ++j) r[j] *= s;
    return r;
}

/// Pointwise product. Spectral code that needs dealiasing applies it explicitly.
inline RealField operator*(const RealField& a, const RealField& b) {
    require_same_grid(a, b, "operator*");
    RealField r = a;
    for (int j = 0; j < r.size(); ++j) r[j] *= b[j];
    return r;
}

template <typename F>
RealField map_field(const RealField& a, F&& f) {
    RealField r = a;
    for (int j = 0; j < r.size(); ++j) r[j] = f(a[j]);
    return r;
}

/// Samples of the node coordinates themselves. x-weighted densities use this;
/// callers must keep solution support away from the periodic seam.
inline RealField x_field(const PeriodicGrid& grid) {
    RealField r(grid);
    for (int j = 0; j < grid.n_points; ++j) r[j] = grid.node(j);
    return r;
}

inline double mean(const RealField& f) {
    // Kahan summation; quadratures feed conservation metrics.
    double sum = 0.0, c = 0.0;
    for (double v : f.samples()) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum / f.size();
}

/// Trapezoid rule on the periodic grid == mean(f) * L. Spectrally exact for
/// smooth periodic integrands.
inline double integrate(const RealField& f) { return mean(f) * f.grid().length; }

}  // namespace wavecons
