#include "crr/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "crr/errors.hpp"

namespace crr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pi() { return 3.14159265358979323846; }

int nearest_node(const MetricSpace& s, std::span<const double> y) {
    const int n = s.size();
    switch (s.kind()) {
        case SpaceKind::Interval: {
            if (n == 1) return 0;
            double lo = s.point(0)[0];
            double h = s.grid_step();
            long long i = std::llround((y[0] - lo) / h);
            return static_cast<int>(std::clamp<long long>(i, 0, n - 1));
        }
        case SpaceKind::Circle: {
            double c = s.circumferences()[0];
            double u = std::fmod(y[0], c);
            if (u < 0) u += c;
            long long i = std::llround(u / s.grid_step());
            return static_cast<int>(i % n);
        }
        default: {
            int best = 0;
            double bd = s.distance_to_ambient(y, 0);
            for (int j = 1; j < n; ++j) {
                double d = s.distance_to_ambient(y, j);
                if (d < bd) { bd = d; best = j; }
            }
            return best;
        }
    }
}

double snap_tolerance(std::span<const double> y) {
    double m = 1.0;
    for (double v : y) m = std::max(m, std::fabs(v));
    return 1e-12 * m;
}

}  // namespace

// Internal assembly used by every builder.
class SystemBuilder {
  public:
    explicit SystemBuilder(MetricSpace space, SystemKind kind) {
        sys_.space_ = std::move(space);
        sys_.kind_ = kind;
        sys_.offset_.push_back(0);
    }

    // Append the next node's admissible images (possibly empty).  For matrix
    // spaces pass image node indices via add_node_exact instead.
    void add_node(const std::vector<std::vector<double>>& images,
                  const std::vector<int>& target_layers = {}) {
        const int dim = sys_.space_.dim();
        int k = 0;
        for (const auto& img : images) {
            if (static_cast<int>(img.size()) != dim)
                throw std::invalid_argument("image dimension mismatch");
            for (double v : img) {
                if (!std::isfinite(v))
                    throw std::runtime_error("non-finite image at node " +
                                             std::to_string(sys_.n_));
                sys_.image_coords_.push_back(v);
            }
            int nn = nearest_node(sys_.space_, img);
            double d = sys_.space_.distance_to_ambient(img, nn);
            sys_.image_node_.push_back(d <= snap_tolerance(img) ? nn : -1);
            if (!target_layers.empty()) sys_.image_layer_.push_back(target_layers[k]);
            ++k;
        }
        ++sys_.n_;
        sys_.offset_.push_back(static_cast<int>(sys_.image_node_.size()));
    }

    void add_node_exact(const std::vector<int>& image_nodes) {
        for (int j : image_nodes) {
            if (j < 0 || j >= sys_.space_.size())
                throw std::invalid_argument("image node index out of range");
            sys_.image_node_.push_back(j);
            if (sys_.space_.has_ambient()) {
                auto p = sys_.space_.point(j);
                sys_.image_coords_.insert(sys_.image_coords_.end(), p.begin(), p.end());
            }
        }
        ++sys_.n_;
        sys_.offset_.push_back(static_cast<int>(sys_.image_node_.size()));
    }

    void set_predecessors(std::vector<int> pred) { sys_.predecessor_ = std::move(pred); }
    void set_layers(std::vector<int> layer_of, int count, std::vector<double> grid) {
        sys_.layer_of_ = std::move(layer_of);
        sys_.layer_count_ = count;
        sys_.time_grid_ = std::move(grid);
    }
    void set_flow_meta(double T, int m, double step) {
        sys_.T_ = T;
        sys_.m_ = m;
        sys_.integrator_step_ = step;
    }

    System finish() {
        if (sys_.n_ != sys_.space_.size() * std::max(1, sys_.layer_count_))
            throw std::logic_error("system node count mismatch");
        bool exact = true;
        for (int i = 0; i < sys_.n_ && exact; ++i) {
            if (sys_.offset_[i] == sys_.offset_[i + 1]) continue;  // absorbing
            for (int k = sys_.offset_[i]; k < sys_.offset_[i + 1]; ++k)
                if (sys_.image_node_[k] < 0) { exact = false; break; }
        }
        sys_.node_exact_ = exact;
        for (int i = 0; i < sys_.n_; ++i)
            if (sys_.offset_[i] == sys_.offset_[i + 1] && sys_.kind_ != SystemKind::Nonautonomous)
                throw std::invalid_argument("node " + std::to_string(i) + " has no image");
        return std::move(sys_);
    }

  private:
    System sys_;
};

// ---- System queries ---------------------------------------------------------

int System::image_count(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("node index out of range");
    return offset_[i + 1] - offset_[i];
}

std::span<const double> System::image(int i, int k) const {
    const int dim = space_.dim();
    if (k < 0 || k >= image_count(i)) throw std::out_of_range("image index out of range");
    return {image_coords_.data() + static_cast<std::size_t>(offset_[i] + k) * dim,
            static_cast<std::size_t>(dim)};
}

int System::image_node(int i, int k) const {
    if (k < 0 || k >= image_count(i)) throw std::out_of_range("image index out of range");
    return image_node_[offset_[i] + k];
}

int System::predecessor(int i) const {
    if (predecessor_.empty()) throw std::logic_error("system has no predecessor oracle");
    if (i < 0 || i >= n_) throw std::out_of_range("node index out of range");
    return predecessor_[i];
}

double System::one_step_cost(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("node index out of range");
    const int b = offset_[i], e = offset_[i + 1];
    if (b == e) return kInf;
    double best = kInf;
    if (!layer_of_.empty()) {
        const int jl = layer_of_[j];
        const int js = j % space_.size();
        for (int k = b; k < e; ++k) {
            if (image_layer_[k] != jl) continue;
            const int dim = space_.dim();
            std::span<const double> img{image_coords_.data() + static_cast<std::size_t>(k) * dim,
                                        static_cast<std::size_t>(dim)};
            best = std::min(best, space_.distance_to_ambient(img, js));
        }
        return best;
    }
    if (!space_.has_ambient()) {
        for (int k = b; k < e; ++k) best = std::min(best, space_.distance(image_node_[k], j));
        return best;
    }
    const int dim = space_.dim();
    for (int k = b; k < e; ++k) {
        std::span<const double> img{image_coords_.data() + static_cast<std::size_t>(k) * dim,
                                    static_cast<std::size_t>(dim)};
        best = std::min(best, space_.distance_to_ambient(img, j));
    }
    return best;
}

void System::compute_gaps() const {
    std::vector<double> gaps;
    gaps.reserve(n_);
    for (int i = 0; i < n_; ++i) {
        if (absorbing(i)) continue;
        double g = kInf;
        for (int j = 0; j < n_; ++j) g = std::min(g, one_step_cost(i, j));
        gaps.push_back(g);
    }
    if (gaps.empty()) {
        eta_grid_cache_ = 0;
        eta_median_cache_ = 0;
        return;
    }
    eta_grid_cache_ = *std::max_element(gaps.begin(), gaps.end());
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    eta_median_cache_ = gaps[gaps.size() / 2];
}

double System::eta_grid() const {
    if (eta_grid_cache_ < 0) compute_gaps();
    return eta_grid_cache_;
}

double System::eta_grid_median() const {
    if (eta_median_cache_ < 0) compute_gaps();
    return eta_median_cache_;
}

std::vector<double> System::export_coords(int i) const {
    std::vector<double> out;
    if (!layer_of_.empty()) {
        out.push_back(time_grid_[layer_of_[i]]);
        auto p = space_.point(i % space_.size());
        out.insert(out.end(), p.begin(), p.end());
        return out;
    }
    if (space_.has_ambient()) {
        auto p = space_.point(i);
        out.assign(p.begin(), p.end());
    }
    return out;
}

// ---- integrator -------------------------------------------------------------

std::vector<double> rk4_advance(const FieldFn& field, std::span<const double> x0,
                                double total_time, double step) {
    if (!(total_time >= 0)) throw std::invalid_argument("integration time must be >= 0");
    if (!(step > 0)) throw std::invalid_argument("integrator step must be positive");
    std::vector<double> x(x0.begin(), x0.end());
    const std::size_t d = x.size();
    std::vector<double> k1, k2, k3, k4, tmp(d);
    double t = 0;
    while (t < total_time) {
        double s = std::min(step, total_time - t);
        k1 = field(x);
        for (std::size_t a = 0; a < d; ++a) tmp[a] = x[a] + 0.5 * s * k1[a];
        k2 = field(tmp);
        for (std::size_t a = 0; a < d; ++a) tmp[a] = x[a] + 0.5 * s * k2[a];
        k3 = field(tmp);
        for (std::size_t a = 0; a < d; ++a) tmp[a] = x[a] + s * k3[a];
        k4 = field(tmp);
        for (std::size_t a = 0; a < d; ++a) {
            x[a] += s / 6.0 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a]);
            if (!std::isfinite(x[a])) throw std::runtime_error("integrator diverged");
        }
        t += s;
    }
    return x;
}

MapFn time_map(const FieldFn& field, double total_time, double step) {
    return [field, total_time, step](std::span<const double> x) {
        return rk4_advance(field, x, total_time, step);
    };
}

// ---- registries -------------------------------------------------------------

const std::vector<RegistryEntry>& map_registry() {
    static const std::vector<RegistryEntry> entries = {
        {"identity", "-", "x -> x on any space"},
        {"g_half", "-", "contraction x -> x/2 on the line"},
        {"f_R", "-", "circle R/2Z: x -> x^2 on [0,1], fixed on [1,2]"},
        {"f_rep", "-", "line: x (x<=0), 2x (x>0)"},
        {"f_att", "-", "line: x (x<=0), x/2 (x>0)"},
        {"translation", "R", "line: x -> x + R"},
        {"cos_gradient_time_one", "step=0.02",
         "time-one map of the descent field of H(x)=cos x (xdot = sin x)"},
        {"time_one_of", "field=..., time=1, step=time/100",
         "time-`time` map of a registered field (config: system.field names the field; params "
         "time/step drive the integrator, the rest pass through)"},
    };
    return entries;
}

const std::vector<RegistryEntry>& field_registry() {
    static const std::vector<RegistryEntry> entries = {
        {"line_attract", "-", "xdot = -x"},
        {"line_repel", "-", "xdot = x"},
        {"v_rep", "-", "xdot = 0 (x<=0), x (x>0)"},
        {"v_att", "-", "xdot = 0 (x<=0), -x (x>0)"},
        {"circle_stagnation", "mu>1, k>=1",
         "circle R/2piZ: xdot = mu*k*cos(k x) - 1 (k sinks, k sources)"},
        {"wildcos", "-", "xdot = 2x cos(1/x) + sin(1/x), 0 at x=0"},
        {"torus_psi2", "-", "torus (R/Z)^2: (1, psi2(y)), psi2 zero on [0,1/4] u [1/2,3/4]"},
        {"circle_psi_delta", "delta in (0,1)",
         "circle R/Z: xdot = 0 on [0,delta], sin^2(pi (x-delta)/(1-delta)) elsewhere"},
        {"translation", "speed=1", "constant drift along axis 0"},
    };
    return entries;
}

const std::vector<RegistryEntry>& nonautonomous_registry() {
    static const std::vector<RegistryEntry> entries = {
        {"decay", "-", "F^t(s,x) = x * exp(-t), closed form"},
        {"identity", "-", "F^t(s,x) = x"},
        {"autonomous_map", "map=..., integer time grid",
         "F^t(s,x) = f^t(x) for a registered map (config: system.map names the map; params "
         "pass through)"},
        {"autonomous_flow", "field=..., step",
         "F^t(s,x): integrate a registered field for time t (config: system.field)"},
    };
    return entries;
}

namespace {

double param(const Params& p, const std::string& key, double fallback,
             bool required = false) {
    auto it = p.find(key);
    if (it != p.end()) return it->second;
    if (required) throw std::invalid_argument("missing parameter '" + key + "'");
    return fallback;
}

double psi_delta(double x, double delta) {
    double u = std::fmod(x, 1.0);
    if (u < 0) u += 1.0;
    if (u <= delta) return 0.0;
    double s = std::sin(pi() * (u - delta) / (1.0 - delta));
    return s * s;
}

double psi2(double y) {
    double u = std::fmod(y, 1.0);
    if (u < 0) u += 1.0;
    if (u >= 0.25 && u <= 0.5) {
        double s = std::sin(4 * pi() * (u - 0.25));
        return s * s;
    }
    if (u >= 0.75) {
        double s = std::sin(4 * pi() * (u - 0.75));
        return s * s;
    }
    return 0.0;
}

}  // namespace

MapFn make_named_map(const std::string& name, const Params& params) {
    if (name == "identity")
        return [](std::span<const double> x) { return std::vector<double>(x.begin(), x.end()); };
    if (name == "g_half")
        return [](std::span<const double> x) { return std::vector<double>{x[0] * 0.5}; };
    if (name == "f_R")
        return [](std::span<const double> x) {
            double u = std::fmod(x[0], 2.0);
            if (u < 0) u += 2.0;
            return std::vector<double>{u <= 1.0 ? u * u : u};
        };
    if (name == "f_rep")
        return [](std::span<const double> x) {
            return std::vector<double>{x[0] <= 0 ? x[0] : 2.0 * x[0]};
        };
    if (name == "f_att")
        return [](std::span<const double> x) {
            return std::vector<double>{x[0] <= 0 ? x[0] : 0.5 * x[0]};
        };
    if (name == "translation") {
        double R = param(params, "R", 0.0, true);
        return [R](std::span<const double> x) { return std::vector<double>{x[0] + R}; };
    }
    if (name == "cos_gradient_time_one") {
        double step = param(params, "step", 0.02);
        FieldFn f = [](std::span<const double> x) { return std::vector<double>{std::sin(x[0])}; };
        return time_map(f, 1.0, step);
    }
    throw std::invalid_argument("unknown map '" + name + "'");
}

FieldFn make_named_field(const std::string& name, const Params& params) {
    if (name == "line_attract")
        return [](std::span<const double> x) { return std::vector<double>{-x[0]}; };
    if (name == "line_repel")
        return [](std::span<const double> x) { return std::vector<double>{x[0]}; };
    if (name == "v_rep")
        return [](std::span<const double> x) {
            return std::vector<double>{x[0] <= 0 ? 0.0 : x[0]};
        };
    if (name == "v_att")
        return [](std::span<const double> x) {
            return std::vector<double>{x[0] <= 0 ? 0.0 : -x[0]};
        };
    if (name == "circle_stagnation") {
        double mu = param(params, "mu", 0.0, true);
        double k = param(params, "k", 1.0);
        if (!(mu * k > 1)) throw std::invalid_argument("circle_stagnation needs mu*k > 1");
        return [mu, k](std::span<const double> x) {
            return std::vector<double>{mu * k * std::cos(k * x[0]) - 1.0};
        };
    }
    if (name == "wildcos")
        return [](std::span<const double> x) {
            if (x[0] == 0) return std::vector<double>{0.0};
            return std::vector<double>{2 * x[0] * std::cos(1.0 / x[0]) + std::sin(1.0 / x[0])};
        };
    if (name == "torus_psi2")
        return [](std::span<const double> x) { return std::vector<double>{1.0, psi2(x[1])}; };
    if (name == "circle_psi_delta") {
        double delta = param(params, "delta", 0.0, true);
        if (!(delta > 0 && delta < 1))
            throw std::invalid_argument("circle_psi_delta needs delta in (0,1)");
        return [delta](std::span<const double> x) {
            return std::vector<double>{psi_delta(x[0], delta)};
        };
    }
    if (name == "translation") {
        double speed = param(params, "speed", 1.0);
        return [speed](std::span<const double> x) {
            std::vector<double> v(x.size(), 0.0);
            v[0] = speed;
            return v;
        };
    }
    throw std::invalid_argument("unknown field '" + name + "'");
}

// ---- builders ---------------------------------------------------------------

System build_map_system(const MetricSpace& space, const MapFn& f, int iterate_min,
                        int iterate_max) {
    if (!space.has_ambient())
        throw std::invalid_argument("closed-form maps need a space with an ambient metric");
    if (iterate_min < 1 || iterate_max < iterate_min)
        throw std::invalid_argument("iterate range must satisfy 1 <= N <= m");
    SystemBuilder b(space, SystemKind::Map);
    for (int i = 0; i < space.size(); ++i) {
        std::vector<std::vector<double>> images;
        auto p = space.point(i);
        std::vector<double> x(p.begin(), p.end());
        for (int k = 1; k <= iterate_max; ++k) {
            x = f(x);
            if (k >= iterate_min) images.push_back(x);
        }
        b.add_node(images);
    }
    return b.finish();
}

System build_map_system(const MetricSpace& space, const std::string& name, const Params& params,
                        int iterate_min, int iterate_max) {
    return build_map_system(space, make_named_map(name, params), iterate_min, iterate_max);
}

System build_permutation_system(const MetricSpace& space, const std::vector<int>& forward,
                                const std::vector<int>& inverse) {
    const int n = space.size();
    if (static_cast<int>(forward.size()) != n || static_cast<int>(inverse.size()) != n)
        throw std::invalid_argument("permutation arrays must have one entry per node");
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        int j = forward[i];
        if (j < 0 || j >= n || seen[j]) throw std::invalid_argument("forward is not a bijection");
        seen[j] = true;
    }
    for (int i = 0; i < n; ++i)
        if (inverse[forward[i]] != i || forward[inverse[i]] != i)
            throw std::invalid_argument("inverse does not invert forward");
    SystemBuilder b(space, SystemKind::Permutation);
    for (int i = 0; i < n; ++i) b.add_node_exact({forward[i]});
    b.set_predecessors(inverse);
    return b.finish();
}

System build_flow_system(const MetricSpace& space, const FieldFn& field, double T, int m,
                         double integrator_step) {
    if (!space.has_ambient())
        throw std::invalid_argument("flows need a space with an ambient metric");
    if (!(T > 0)) throw std::invalid_argument("flow base time T must be positive");
    if (m < 1) throw std::invalid_argument("flow multiplicity m must be >= 1");
    if (!(integrator_step > 0) || integrator_step > T)
        throw std::invalid_argument("integrator step must lie in (0, T]");
    SystemBuilder b(space, SystemKind::Flow);
    for (int i = 0; i < space.size(); ++i) {
        std::vector<std::vector<double>> images;
        auto p = space.point(i);
        std::vector<double> x(p.begin(), p.end());
        for (int k = 1; k <= m; ++k) {
            try {
                x = rk4_advance(field, x, T, integrator_step);
            } catch (const std::runtime_error&) {
                throw std::runtime_error("integrator diverged at node " + std::to_string(i));
            }
            images.push_back(x);
        }
        b.add_node(images);
    }
    b.set_flow_meta(T, m, integrator_step);
    return b.finish();
}

System build_flow_system(const MetricSpace& space, const std::string& field_name,
                         const Params& params, double T, int m, double integrator_step) {
    return build_flow_system(space, make_named_field(field_name, params), T, m, integrator_step);
}

System build_nonautonomous_system(const MetricSpace& space, const std::vector<double>& time_grid,
                                  const NonautonomousStep& step, int max_layer_skip) {
    if (!space.has_ambient())
        throw std::invalid_argument("nonautonomous systems need a space with an ambient metric");
    const int L = static_cast<int>(time_grid.size());
    if (L < 2) throw std::invalid_argument("time grid needs at least two layers");
    for (int j = 1; j < L; ++j)
        if (!(time_grid[j] > time_grid[j - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
    if (max_layer_skip < 1) throw std::invalid_argument("max_layer_skip must be >= 1");
    if (static_cast<long long>(L) * space.size() > MetricSpace::node_cap())
        throw resource_limit_error("layered system exceeds the node cap");

    SystemBuilder b(space, SystemKind::Nonautonomous);
    std::vector<int> layer_of(static_cast<std::size_t>(L) * space.size());
    for (int l = 0; l < L; ++l) {
        for (int i = 0; i < space.size(); ++i) {
            layer_of[static_cast<std::size_t>(l) * space.size() + i] = l;
            std::vector<std::vector<double>> images;
            std::vector<int> targets;
            auto p = space.point(i);
            for (int k = 1; k <= max_layer_skip && l + k < L; ++k) {
                images.push_back(step(time_grid[l], time_grid[l + k] - time_grid[l], p));
                targets.push_back(l + k);
            }
            b.add_node(images, targets);  // top layer stays absorbing
        }
    }
    b.set_layers(std::move(layer_of), L, time_grid);
    return b.finish();
}

System build_nonautonomous_system(const MetricSpace& space, const std::vector<double>& time_grid,
                                  const std::string& family, const Params& params,
                                  int max_layer_skip) {
    NonautonomousStep step;
    if (family == "decay") {
        step = [](double, double t, std::span<const double> x) {
            std::vector<double> out(x.begin(), x.end());
            for (double& v : out) v *= std::exp(-t);
            return out;
        };
    } else if (family == "identity") {
        step = [](double, double, std::span<const double> x) {
            return std::vector<double>(x.begin(), x.end());
        };
    } else {
        throw std::invalid_argument("unknown nonautonomous family '" + family +
                                    "' (closed-form families: decay, identity)");
    }
    (void)params;
    return build_nonautonomous_system(space, time_grid, step, max_layer_skip);
}

System build_counterexample_A(double eps, int N) {
    if (!(eps > 0)) throw std::invalid_argument("counterexample_A needs eps > 0");
    if (N < 2) throw std::invalid_argument("counterexample_A needs N >= 2");
    std::vector<std::vector<double>> pts;
    auto arc_x = [](int n) -> double {
        if (n < 0) return -1.0 + 1.0 / n;
        if (n == 0) return 0.0;
        return 1.0 - 1.0 / n;
    };
    // Left column, right column, arc; each in increasing n.
    for (int n = -N; n <= N; ++n) pts.push_back({-1.0, 2 * eps * n});
    for (int n = -N; n <= N; ++n) pts.push_back({1.0, 2 * eps * n});
    const int arc0 = static_cast<int>(pts.size());
    for (int n = -N; n <= N; ++n) pts.push_back({arc_x(n), 2 * eps * n});

    MetricSpace space = MetricSpace::cloud(pts);
    SystemBuilder b(space, SystemKind::Map);
    const int total = static_cast<int>(pts.size());
    for (int i = 0; i < total; ++i) {
        if (i < arc0 || i == total - 1) {
            b.add_node({pts[i]});  // fixed
        } else {
            b.add_node({pts[i + 1]});  // a_n -> a_{n+1}
        }
    }
    return b.finish();
}

System build_example_non_increasing(int N) {
    if (N < 2) throw std::invalid_argument("example_non_increasing needs N >= 2");
    // Point order: alpha, omega, x_{-N}..x_N, y_{-N}..y_N.
    std::vector<std::vector<double>> pts;
    pts.push_back({0.0, 0.0});  // alpha
    pts.push_back({3.0, 0.0});  // omega
    const int x0 = 2;
    for (int n = -N; n <= N; ++n) {
        if (n < 0) pts.push_back({-1.0 / n, 0.0});
        else if (n == 0) pts.push_back({2.0, 0.0});
        else pts.push_back({3.0 - 1.0 / (1 + n), 0.0});
    }
    const int y0 = x0 + 2 * N + 1;
    for (int n = -N; n <= N; ++n) {
        if (n < 0) pts.push_back({2.0, -n + 0.5});
        else if (n == 0) pts.push_back({2.0, 0.5});
        else pts.push_back({1.0, n - 0.5});
    }
    const int total = static_cast<int>(pts.size());

    auto xi = [&](int n) { return x0 + (n + N); };
    auto yi = [&](int n) { return y0 + (n + N); };

    std::vector<int> forward(total), pred(total);
    forward[0] = 0;
    forward[1] = 1;
    pred[0] = 0;
    pred[1] = 1;
    for (int n = -N; n <= N; ++n) {
        forward[xi(n)] = n < N ? xi(n + 1) : 1;          // x_N -> omega
        forward[yi(n)] = n < N ? yi(n + 1) : yi(N);      // y_N fixed
        pred[xi(n)] = n > -N ? xi(n - 1) : 0;            // x_{-N} <- alpha
        pred[yi(n)] = n > -N ? yi(n - 1) : yi(-N);       // y_{-N} <- itself
    }

    MetricSpace space = MetricSpace::cloud(pts);
    SystemBuilder b(space, SystemKind::Map);
    for (int i = 0; i < total; ++i) b.add_node_exact({forward[i]});
    b.set_predecessors(pred);
    return b.finish();
}

}  // namespace crr
