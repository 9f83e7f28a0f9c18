#include "crr/chaincost.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "crr/errors.hpp"

namespace crr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Weight transform shared by the sweep and the brute-force oracle so the two
// agree bitwise.
inline double transform(double w, double p) {
    if (p == 1.0) return w;
    if (p == 2.0) return w * w;
    return std::pow(w, p);
}

inline double finish(double acc, double p) {
    if (acc == kInf) return kInf;
    if (p == 1.0) return acc;
    if (p == 2.0) return std::sqrt(acc);
    return std::pow(acc, 1.0 / p);
}

inline double wrap1(double a, double b, double c) {
    double d = std::fmod(std::fabs(a - b), c);
    return std::min(d, c - d);
}

// Flattened edge-weight evaluator over the implicit complete graph.
struct EdgeEval {
    enum Kind { Line1, Circle1, Euclid, TorusD, Matrix };

    int n = 0, dim = 1, space_n = 0;
    Kind kind = Euclid;
    const int* off = nullptr;
    const double* img = nullptr;
    const int* img_node = nullptr;
    const int* img_layer = nullptr;
    const int* layer_of = nullptr;
    const double* pts = nullptr;
    const double* mat = nullptr;
    const double* circ = nullptr;
    double c1 = 0;  // 1-D circumference
    bool single = false;

    static EdgeEval from(const System& sys) {
        EdgeEval e;
        const MetricSpace& sp = sys.space();
        e.n = sys.size();
        e.dim = std::max(1, sp.dim());
        e.space_n = sp.size();
        e.off = sys.raw_offsets().data();
        e.img = sys.raw_image_coords().data();
        e.img_node = sys.raw_image_nodes().data();
        e.img_layer = sys.raw_image_layers().empty() ? nullptr : sys.raw_image_layers().data();
        e.layer_of = sys.layers().empty() ? nullptr : sys.layers().data();
        e.pts = sp.raw_coords().empty() ? nullptr : sp.raw_coords().data();
        e.mat = sp.raw_matrix().empty() ? nullptr : sp.raw_matrix().data();
        switch (sp.kind()) {
            case SpaceKind::Interval: e.kind = Line1; break;
            case SpaceKind::Circle:
                e.kind = Circle1;
                e.c1 = sp.circumferences()[0];
                break;
            case SpaceKind::Torus:
                e.kind = TorusD;
                e.circ = sp.circumferences().data();
                break;
            case SpaceKind::Cloud: e.kind = sp.dim() == 1 ? Line1 : Euclid; break;
            case SpaceKind::Matrix: e.kind = Matrix; break;
        }
        e.single = !e.layer_of;
        if (e.single)
            for (int i = 0; i < e.n; ++i)
                if (e.off[i + 1] - e.off[i] != 1) { e.single = false; break; }
        return e;
    }

    inline double dist_img_to_node(const double* y, int j) const {
        switch (kind) {
            case Line1: return std::fabs(y[0] - pts[j]);
            case Circle1: return wrap1(y[0], pts[j], c1);
            case Euclid: {
                double acc = 0;
                const double* q = pts + static_cast<std::size_t>(j) * dim;
                for (int a = 0; a < dim; ++a) {
                    double d = y[a] - q[a];
                    acc += d * d;
                }
                return std::sqrt(acc);
            }
            case TorusD: {
                double acc = 0;
                const double* q = pts + static_cast<std::size_t>(j) * dim;
                for (int a = 0; a < dim; ++a) {
                    double d = wrap1(y[a], q[a], circ[a]);
                    acc += d * d;
                }
                return std::sqrt(acc);
            }
            case Matrix: return 0;  // handled separately
        }
        return 0;
    }

    inline double operator()(int u, int j) const {
        const int b = off[u], e_ = off[u + 1];
        if (b == e_) return kInf;
        double best = kInf;
        if (layer_of) {
            const int jl = layer_of[j];
            const int js = j % space_n;
            for (int k = b; k < e_; ++k) {
                if (img_layer[k] != jl) continue;
                double d = dist_img_to_node(img + static_cast<std::size_t>(k) * dim, js);
                if (d < best) best = d;
            }
            return best;
        }
        if (kind == Matrix) {
            for (int k = b; k < e_; ++k) {
                double d = mat[static_cast<std::size_t>(img_node[k]) * space_n + j];
                if (d < best) best = d;
            }
            return best;
        }
        for (int k = b; k < e_; ++k) {
            double d = dist_img_to_node(img + static_cast<std::size_t>(k) * dim, j);
            if (d < best) best = d;
        }
        return best;
    }
};

// One Dijkstra-style sweep from `s`.  Finite p runs on powered weights with
// additive composition; p = inf composes with max.  `row` receives finished
// (rooted) costs.  Scratch vectors are caller-owned so a full matrix reuses
// them across sources.
template <bool Minimax, class Edge>
void sweep_from(const Edge& edge, int n, double p, int s, double cap, double* dist, char* done,
                double* row) {
    std::fill(dist, dist + n, kInf);
    std::memset(done, 0, static_cast<std::size_t>(n));
    dist[s] = 0.0;
    for (int iter = 0; iter < n; ++iter) {
        int u = -1;
        double du = kInf;
        for (int v = 0; v < n; ++v)
            if (!done[v] && dist[v] < du) { du = dist[v]; u = v; }
        if (u < 0) break;
        done[u] = 1;
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            double w = edge(u, v);
            if (w > cap) continue;
            double cand;
            if constexpr (Minimax) cand = std::max(du, w);
            else cand = du + transform(w, p);
            if (cand < dist[v]) dist[v] = cand;
        }
    }
    // Return cost: close the walk back into s over one more edge.
    double back = kInf;
    for (int u = 0; u < n; ++u) {
        if (dist[u] == kInf) continue;
        double w = edge(u, s);
        if (w > cap) continue;
        double cand;
        if constexpr (Minimax) cand = std::max(dist[u], w);
        else cand = dist[u] + transform(w, p);
        if (cand < back) back = cand;
    }
    for (int v = 0; v < n; ++v) row[v] = Minimax ? dist[v] : finish(dist[v], p);
    row[s] = Minimax ? back : finish(back, p);
}

template <class Edge>
void run_all_sources(const Edge& edge, int n, const PNorm& p, double cap, double cap_out,
                     std::vector<double>& rho, int source_lo, int source_hi) {
    std::vector<double> dist(n);
    std::vector<char> done(n);
    for (int s = source_lo; s < source_hi; ++s) {
        double* row = rho.data() + static_cast<std::size_t>(s - source_lo) * n;
        if (p.is_inf())
            sweep_from<true>(edge, n, p.p, s, cap, dist.data(), done.data(), row);
        else
            sweep_from<false>(edge, n, p.p, s, cap, dist.data(), done.data(), row);
        if (cap_out != kInf)
            for (int v = 0; v < n; ++v)
                if (row[v] > cap_out) row[v] = kInf;
    }
}

}  // namespace

PNorm PNorm::inf() { return PNorm{kInf}; }

PNorm PNorm::of(double p) {
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("p must satisfy 1 <= p <= 64 or inf");
    if (p > 64.0 && !std::isinf(p))
        throw std::invalid_argument("p > 64 overflows powered weights; use the inf selector");
    return PNorm{p};
}

PNorm PNorm::parse(const std::string& token) {
    if (token == "inf" || token == "Inf" || token == "INF") return inf();
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad p selector '" + token + "'");
    }
    if (pos != token.size()) throw std::invalid_argument("bad p selector '" + token + "'");
    return of(v);
}

bool PNorm::is_inf() const { return std::isinf(p); }

std::string PNorm::str() const {
    if (is_inf()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", p);
    return buf;
}

bool operator==(const PNorm& a, const PNorm& b) {
    return (a.is_inf() && b.is_inf()) || a.p == b.p;
}

CostMatrix compute_cost_matrix(const System& sys, PNorm p, std::optional<double> cap,
                               int dense_node_cap) {
    const int n = sys.size();
    if (n > dense_node_cap)
        throw resource_limit_error(
            "cost matrix over " + std::to_string(n) + " nodes exceeds the dense cap of " +
            std::to_string(dense_node_cap) +
            "; use a coarser grid or single_source_costs per source");
    if (cap && !(*cap > 0)) throw std::invalid_argument("cap must be positive");

    CostMatrix cm;
    cm.n = n;
    cm.p = p;
    cm.cap = cap;
    cm.rho.resize(static_cast<std::size_t>(n) * n);
    cm.layer = sys.layers();
    cm.space_nodes = sys.space_size();

    const double cap_v = cap ? *cap : kInf;
    EdgeEval edge = EdgeEval::from(sys);
    if (edge.single && edge.dim == 1 && edge.kind == EdgeEval::Line1) {
        // Hot path: one image per node on a line-metric 1-D space.
        struct Fast {
            const double* img;
            const double* pts;
            const int* off;
            inline double operator()(int u, int j) const {
                return std::fabs(img[off[u]] - pts[j]);
            }
        } fast{edge.img, edge.pts, edge.off};
        run_all_sources(fast, n, p, cap_v, cap_v, cm.rho, 0, n);
    } else if (edge.single && edge.dim == 1 && edge.kind == EdgeEval::Circle1) {
        struct Fast {
            const double* img;
            const double* pts;
            const int* off;
            double c;
            inline double operator()(int u, int j) const {
                return wrap1(img[off[u]], pts[j], c);
            }
        } fast{edge.img, edge.pts, edge.off, edge.c1};
        run_all_sources(fast, n, p, cap_v, cap_v, cm.rho, 0, n);
    } else {
        run_all_sources(edge, n, p, cap_v, cap_v, cm.rho, 0, n);
    }
    return cm;
}

std::vector<double> single_source_costs(const System& sys, PNorm p, int source,
                                        std::optional<double> cap) {
    const int n = sys.size();
    if (source < 0 || source >= n) throw std::out_of_range("source index out of range");
    std::vector<double> row(n);
    std::vector<double> dist(n);
    std::vector<char> done(n);
    const double cap_v = cap ? *cap : kInf;
    EdgeEval edge = EdgeEval::from(sys);
    if (p.is_inf())
        sweep_from<true>(edge, n, p.p, source, cap_v, dist.data(), done.data(), row.data());
    else
        sweep_from<false>(edge, n, p.p, source, cap_v, dist.data(), done.data(), row.data());
    if (cap)
        for (double& v : row)
            if (v > *cap) v = kInf;
    return row;
}

namespace {

void brute_rec(const EdgeEval& edge, double p, bool minimax, int u, int target, double acc,
               int steps_left, double& best) {
    for (int v = 0; v < edge.n; ++v) {
        double w = edge(u, v);
        if (w == kInf) continue;
        double acc2 = minimax ? std::max(acc, w) : acc + transform(w, p);
        if (acc2 >= best) {
            // Monotone accumulation: no extension can improve on `best`,
            // except that v == target with acc2 == best is already covered.
            continue;
        }
        if (v == target) best = acc2;
        if (steps_left > 1) brute_rec(edge, p, minimax, v, target, acc2, steps_left - 1, best);
    }
}

}  // namespace

double brute_force_cost(const System& sys, PNorm p, int i, int j, int max_len) {
    if (sys.size() > 8) throw resource_limit_error("brute force is limited to n <= 8");
    if (max_len < 1 || max_len > 8)
        throw resource_limit_error("brute force is limited to 1 <= max_len <= 8");
    if (i < 0 || i >= sys.size() || j < 0 || j >= sys.size())
        throw std::out_of_range("node index out of range");
    EdgeEval edge = EdgeEval::from(sys);
    double best = kInf;
    brute_rec(edge, p.p, p.is_inf(), i, j, 0.0, max_len, best);
    return p.is_inf() ? best : finish(best, p.p);
}

void save_cost_matrix(const CostMatrix& cm, const std::string& bin_path,
                      const std::string& json_path) {
    static_assert(std::endian::native == std::endian::little,
                  "dump format is little-endian doubles");
    std::ofstream bin(bin_path, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot write " + bin_path);
    bin.write(reinterpret_cast<const char*>(cm.rho.data()),
              static_cast<std::streamsize>(cm.rho.size() * sizeof(double)));
    if (!bin) throw std::runtime_error("short write to " + bin_path);

    nlohmann::json hdr;
    hdr["n"] = cm.n;
    hdr["p"] = cm.p.str();
    if (cm.cap) hdr["cap"] = *cm.cap;
    else hdr["cap"] = nullptr;
    hdr["eta"] = cm.eta;
    std::ofstream js(json_path);
    if (!js) throw std::runtime_error("cannot write " + json_path);
    js << hdr.dump(2) << "\n";
}

CostMatrix load_cost_matrix(const std::string& bin_path, const std::string& json_path) {
    std::ifstream js(json_path);
    if (!js) throw std::runtime_error("cannot read " + json_path);
    nlohmann::json hdr = nlohmann::json::parse(js);
    CostMatrix cm;
    cm.n = hdr.at("n").get<int>();
    cm.p = PNorm::parse(hdr.at("p").get<std::string>());
    if (!hdr.at("cap").is_null()) cm.cap = hdr.at("cap").get<double>();
    cm.eta = hdr.at("eta").get<double>();
    cm.rho.resize(static_cast<std::size_t>(cm.n) * cm.n);
    std::ifstream bin(bin_path, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot read " + bin_path);
    bin.read(reinterpret_cast<char*>(cm.rho.data()),
             static_cast<std::streamsize>(cm.rho.size() * sizeof(double)));
    if (bin.gcount() != static_cast<std::streamsize>(cm.rho.size() * sizeof(double)))
        throw std::runtime_error("short read from " + bin_path);
    return cm;
}

}  // namespace crr
