#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crr/space.hpp"

namespace crr {

using MapFn = std::function<std::vector<double>(std::span<const double>)>;
using FieldFn = std::function<std::vector<double>(std::span<const double>)>;

enum class SystemKind { Map, Permutation, Flow, Nonautonomous };

// A finite metric space together with, per node, a non-empty set of
// admissible one-step images in ambient coordinates: the single image f(x)
// for maps, {phi_{kT}(x) : k=1..m} for flows, {f^k(x) : k=N..m} for the
// iterate-range map variant, and layer-advancing steps for nonautonomous
// systems.  Nonautonomous top-layer nodes are absorbing (no images).
class System {
  public:
    const MetricSpace& space() const { return space_; }
    SystemKind kind() const { return kind_; }
    int size() const { return n_; }

    // Number of admissible images of node i.
    int image_count(int i) const;
    std::span<const double> image(int i, int k) const;
    // Node index the image coincides with, or -1 if off-node.
    int image_node(int i, int k) const;
    bool absorbing(int i) const { return image_count(i) == 0; }

    // min over admissible images y of d(y, x_j); +inf when no admissible
    // evolution connects the layers (nonautonomous) or i is absorbing.
    double one_step_cost(int i, int j) const;

    // True when every image coincides with a node.
    bool node_exact() const { return node_exact_; }
    // First image's node index (node-exact systems); -1 otherwise.
    int forward_node(int i) const { return image_node(i, 0); }

    bool has_predecessor_oracle() const { return !predecessor_.empty(); }
    int predecessor(int i) const;

    // Snapping gap: max over non-absorbing nodes of min_j one_step_cost(i,j).
    double eta_grid() const;
    // Median of the same per-node gaps; a robust scale for tolerance defaults.
    double eta_grid_median() const;

    // Nonautonomous layout: nodes are (layer, space node) pairs indexed
    // layer * space_size + node.  Empty layer vector otherwise.
    const std::vector<int>& layers() const { return layer_of_; }
    int layer_count() const { return layer_count_; }
    int space_size() const { return space_.size(); }
    const std::vector<double>& time_grid() const { return time_grid_; }

    // Coordinates used in exports: the space point, with the layer time
    // prepended for nonautonomous systems.
    std::vector<double> export_coords(int i) const;

    // Flow metadata (zero-initialised for non-flow kinds).
    double base_time() const { return T_; }
    int multiplicity() const { return m_; }
    double integrator_step() const { return integrator_step_; }

    // Flat views used by the cost-matrix hot loops.
    std::span<const int> raw_offsets() const { return offset_; }
    std::span<const double> raw_image_coords() const { return image_coords_; }
    std::span<const int> raw_image_nodes() const { return image_node_; }
    std::span<const int> raw_image_layers() const { return image_layer_; }

    friend class SystemBuilder;

  private:
    MetricSpace space_;
    SystemKind kind_ = SystemKind::Map;
    int n_ = 0;

    // Images stored flat: image k of node i occupies
    // coords [offset_[i] + k*dim, ...), with dim = space dim.
    std::vector<double> image_coords_;
    std::vector<int> offset_;      // n+1 entries, counts images
    std::vector<int> image_node_;  // parallel to images; -1 if off-node
    std::vector<int> image_layer_; // nonautonomous target layers; else empty
    bool node_exact_ = false;

    std::vector<int> predecessor_;

    std::vector<int> layer_of_;
    int layer_count_ = 0;
    std::vector<double> time_grid_;

    double T_ = 0.0;
    int m_ = 0;
    double integrator_step_ = 0.0;

    mutable double eta_grid_cache_ = -1.0;
    mutable double eta_median_cache_ = -1.0;
    void compute_gaps() const;
};

// ---- registries -----------------------------------------------------------

struct RegistryEntry {
    std::string name;
    std::string params;  // one-line parameter documentation
    std::string doc;
};

const std::vector<RegistryEntry>& map_registry();
const std::vector<RegistryEntry>& field_registry();
const std::vector<RegistryEntry>& nonautonomous_registry();

using Params = std::map<std::string, double>;

// Closed-form map / vector field lookup by registered name.
MapFn make_named_map(const std::string& name, const Params& params);
FieldFn make_named_field(const std::string& name, const Params& params);

// ---- builders --------------------------------------------------------------

// Registered closed-form map.  iterate_min/iterate_max give the admissible
// iterate counts {N..m} of the iterate-range variant; the default (1,1) is a
// plain map.
System build_map_system(const MetricSpace& space, const std::string& name,
                        const Params& params = {}, int iterate_min = 1, int iterate_max = 1);
// Same, with a user-supplied closed form.
System build_map_system(const MetricSpace& space, const MapFn& f, int iterate_min = 1,
                        int iterate_max = 1);

System build_permutation_system(const MetricSpace& space, const std::vector<int>& forward,
                                const std::vector<int>& inverse);

System build_flow_system(const MetricSpace& space, const std::string& field_name,
                         const Params& params, double T, int m, double integrator_step);
System build_flow_system(const MetricSpace& space, const FieldFn& field, double T, int m,
                         double integrator_step);

// F^t(s, x): step family for nonautonomous systems.
using NonautonomousStep = std::function<std::vector<double>(double s, double t,
                                                            std::span<const double> x)>;
System build_nonautonomous_system(const MetricSpace& space, const std::vector<double>& time_grid,
                                  const NonautonomousStep& step, int max_layer_skip);
System build_nonautonomous_system(const MetricSpace& space, const std::vector<double>& time_grid,
                                  const std::string& family, const Params& params,
                                  int max_layer_skip);

// Planar fixture behind the singular-limit threshold experiments: two fixed
// columns {-1,1} x {2*eps*n : |n| <= N} plus the finite arc (a_n, 2*eps*n)
// stepped exactly, a_N fixed.
System build_counterexample_A(double eps, int N);

// Truncation of the non-increasing Morse graph example: alpha/omega fixed,
// x_n -> x_{n+1} and y_n -> y_{n+1} with tails snapped (x_N -> omega,
// y_N fixed), plus a predecessor oracle (x_{-N} <- alpha, y_{-N} <- y_{-N}).
System build_example_non_increasing(int N);

// Classical fixed-step RK4, final partial step shortened to land exactly on
// total_time.  Throws on non-finite states.
std::vector<double> rk4_advance(const FieldFn& field, std::span<const double> x0,
                                double total_time, double step);

// Time-t map of a vector field, integrated with rk4_advance.
MapFn time_map(const FieldFn& field, double total_time, double step);

}  // namespace crr
