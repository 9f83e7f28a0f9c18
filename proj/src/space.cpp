#include "crr/space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "crr/errors.hpp"

namespace crr {

namespace {

void check_count(long long n) {
    if (n < 1) throw std::invalid_argument("a space needs at least one point");
    if (n > MetricSpace::node_cap())
        throw resource_limit_error("space has " + std::to_string(n) + " nodes, cap is " +
                                   std::to_string(MetricSpace::node_cap()) +
                                   "; use a coarser grid");
}

double wrap_dist(double a, double b, double c) {
    double d = std::fmod(std::fabs(a - b), c);
    return std::min(d, c - d);
}

}  // namespace

int MetricSpace::node_cap() { return 1 << 20; }

MetricSpace MetricSpace::interval(double lo, double hi, int n) {
    check_count(n);
    if (!(lo <= hi)) throw std::invalid_argument("interval bounds out of order");
    MetricSpace s;
    s.kind_ = SpaceKind::Interval;
    s.n_ = n;
    s.dim_ = 1;
    s.h_ = n > 1 ? (hi - lo) / (n - 1) : 0.0;
    s.coords_.resize(n);
    for (int i = 0; i < n; ++i) s.coords_[i] = lo + i * s.h_;
    return s;
}

MetricSpace MetricSpace::circle(double circumference, int n) {
    check_count(n);
    if (!(circumference > 0)) throw std::invalid_argument("circumference must be positive");
    MetricSpace s;
    s.kind_ = SpaceKind::Circle;
    s.n_ = n;
    s.dim_ = 1;
    s.h_ = circumference / n;
    s.circumference_ = {circumference};
    s.coords_.resize(n);
    for (int i = 0; i < n; ++i) s.coords_[i] = circumference * i / n;
    return s;
}

MetricSpace MetricSpace::torus(std::vector<double> circumferences, int n_per_axis) {
    if (circumferences.empty()) throw std::invalid_argument("torus needs at least one axis");
    for (double c : circumferences)
        if (!(c > 0)) throw std::invalid_argument("circumference must be positive");
    if (n_per_axis < 1) throw std::invalid_argument("a space needs at least one point");
    long long total = 1;
    for (std::size_t a = 0; a < circumferences.size(); ++a) {
        total *= n_per_axis;
        if (total > node_cap()) check_count(total);
    }
    check_count(total);
    MetricSpace s;
    s.kind_ = SpaceKind::Torus;
    s.n_ = static_cast<int>(total);
    s.dim_ = static_cast<int>(circumferences.size());
    s.circumference_ = std::move(circumferences);
    s.h_ = s.circumference_[0] / n_per_axis;
    s.coords_.resize(static_cast<std::size_t>(s.n_) * s.dim_);
    // Lexicographic in coordinates, ties broken by axis order.
    std::vector<int> idx(s.dim_, 0);
    for (int i = 0; i < s.n_; ++i) {
        for (int a = 0; a < s.dim_; ++a)
            s.coords_[static_cast<std::size_t>(i) * s.dim_ + a] =
                s.circumference_[a] * idx[a] / n_per_axis;
        for (int a = s.dim_ - 1; a >= 0; --a) {
            if (++idx[a] < n_per_axis) break;
            idx[a] = 0;
        }
    }
    return s;
}

MetricSpace MetricSpace::cloud(std::vector<std::vector<double>> points) {
    check_count(static_cast<long long>(points.size()));
    MetricSpace s;
    s.kind_ = SpaceKind::Cloud;
    s.n_ = static_cast<int>(points.size());
    s.dim_ = static_cast<int>(points[0].size());
    if (s.dim_ < 1) throw std::invalid_argument("cloud points need at least one coordinate");
    s.coords_.reserve(static_cast<std::size_t>(s.n_) * s.dim_);
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != s.dim_)
            throw std::invalid_argument("cloud points have mixed dimensions");
        for (double v : p) {
            if (!std::isfinite(v)) throw std::invalid_argument("cloud coordinates must be finite");
            s.coords_.push_back(v);
        }
    }
    return s;
}

MetricSpace MetricSpace::distance_matrix(std::vector<std::vector<double>> d) {
    check_count(static_cast<long long>(d.size()));
    const int n = static_cast<int>(d.size());
    MetricSpace s;
    s.kind_ = SpaceKind::Matrix;
    s.n_ = n;
    s.dim_ = 0;
    s.matrix_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(d[i].size()) != n)
            throw std::invalid_argument("distance matrix must be square");
        for (int j = 0; j < n; ++j) {
            double v = d[i][j];
            if (!std::isfinite(v) || v < 0)
                throw std::invalid_argument("distance matrix entries must be finite and >= 0");
            s.matrix_[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (s.matrix_[static_cast<std::size_t>(i) * n + i] != 0)
            throw std::invalid_argument("distance matrix diagonal must be zero");
        for (int j = 0; j < i; ++j)
            if (s.matrix_[static_cast<std::size_t>(i) * n + j] !=
                s.matrix_[static_cast<std::size_t>(j) * n + i])
                throw std::invalid_argument("distance matrix must be symmetric");
    }
    return s;
}

std::span<const double> MetricSpace::point(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("point index out of range");
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
}

double MetricSpace::distance(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("point index out of range");
    if (kind_ == SpaceKind::Matrix) return matrix_[static_cast<std::size_t>(i) * n_ + j];
    return distance_to_ambient(point(i), j);
}

double MetricSpace::distance_to_ambient(std::span<const double> y, int j) const {
    if (kind_ == SpaceKind::Matrix)
        throw std::invalid_argument("matrix spaces carry no ambient metric");
    if (j < 0 || j >= n_) throw std::out_of_range("point index out of range");
    if (static_cast<int>(y.size()) != dim_)
        throw std::invalid_argument("ambient coordinate dimension mismatch");
    const double* q = coords_.data() + static_cast<std::size_t>(j) * dim_;
    if (circumference_.empty()) {
        double acc = 0;
        for (int a = 0; a < dim_; ++a) {
            double d = y[a] - q[a];
            acc += d * d;
        }
        return dim_ == 1 ? std::fabs(y[0] - q[0]) : std::sqrt(acc);
    }
    if (dim_ == 1) return wrap_dist(y[0], q[0], circumference_[0]);
    double acc = 0;
    for (int a = 0; a < dim_; ++a) {
        double d = wrap_dist(y[a], q[a], circumference_[a]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace crr
