#pragma once

#include <span>
#include <vector>

namespace crr {

enum class SpaceKind { Interval, Circle, Torus, Cloud, Matrix };

// A finite metric model: a point list plus a metric.  Grid kinds carry an
// ambient metric (line / circle / torus), so distances can also be taken
// from off-node coordinates; matrix kinds only know node-to-node distances.
class MetricSpace {
  public:
    MetricSpace() = default;  // empty placeholder; use the named builders

    static MetricSpace interval(double lo, double hi, int n);
    static MetricSpace circle(double circumference, int n);
    // Regular grid with n points per axis, lexicographic point order.
    static MetricSpace torus(std::vector<double> circumferences, int n_per_axis);
    static MetricSpace cloud(std::vector<std::vector<double>> points);
    static MetricSpace distance_matrix(std::vector<std::vector<double>> d);

    SpaceKind kind() const { return kind_; }
    int size() const { return n_; }
    int dim() const { return dim_; }
    double grid_step() const { return h_; }  // 0 for non-grid kinds
    bool has_ambient() const { return kind_ != SpaceKind::Matrix; }
    const std::vector<double>& circumferences() const { return circumference_; }

    std::span<const double> point(int i) const;

    double distance(int i, int j) const;
    // d(y, x_j) for an arbitrary ambient coordinate tuple y, with the same
    // wraparound rules as distance().  Interval grids use the unbounded line
    // metric, so y may lie outside the grid hull.
    double distance_to_ambient(std::span<const double> y, int j) const;

    // Node count guard shared by the builders.
    static int node_cap();

    // Flat views used by the cost-matrix hot loops.
    std::span<const double> raw_coords() const { return coords_; }
    std::span<const double> raw_matrix() const { return matrix_; }

  private:
    SpaceKind kind_ = SpaceKind::Cloud;
    int n_ = 0;
    int dim_ = 0;
    double h_ = 0.0;
    std::vector<double> coords_;         // n * dim, row-major
    std::vector<double> circumference_;  // per axis; empty = no wraparound
    std::vector<double> matrix_;         // n * n for Matrix kind
};

}  // namespace crr
