#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "tbvp/geometry.hpp"

namespace tbvp {

/// Mesh on [-r,1] whose node set contains the marker points -r, 0, a, b, eta, 1
/// (the kinks of the kernel, gamma and psi). Uniform between markers.
class Mesh {
public:
    /// n panels on [0,1] (>= 8, even), n_hist panels on [-r,0] (>= 1).
    /// Panel counts are distributed over the marker segments of [0,1]
    /// proportionally to length, rounded to even counts per segment.
    static std::shared_ptr<const Mesh> make(double r, const ProblemGeometry& geom,
                                            int n, int n_hist);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double r() const { return r_; }
    std::size_t zero_index() const { return zero_index_; }

    /// Index i with nodes[i] <= t <= nodes[i+1]; clamps t to [-r,1] within 1e-12.
    std::size_t segment_of(double t) const;

    /// Index of the node equal to t (within 1e-12), or throws.
    std::size_t node_index(double t) const;

    bool same_as(const Mesh& other) const { return nodes_ == other.nodes_; }

    Mesh(std::vector<double> nodes, std::size_t zero_index, double r);

private:
    std::vector<double> nodes_;
    std::size_t zero_index_;
    double r_;
};

enum class InterpRule { Linear, Cubic };

/// Continuous function on [-r,1]: nodal values plus an interpolation rule.
/// The Cubic rule is piecewise cubic Hermite on [0,1] with slopes from local
/// four-point stencils (exact on cubics) and piecewise linear on [-r,0],
/// where the data may be merely continuous. Immutable after construction.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const Mesh> mesh, std::vector<double> values,
                 InterpRule rule = InterpRule::Cubic);

    static GridFunction sample(std::shared_ptr<const Mesh> mesh,
                               const std::function<double(double)>& fn,
                               InterpRule rule = InterpRule::Cubic);
    static GridFunction zero(std::shared_ptr<const Mesh> mesh,
                             InterpRule rule = InterpRule::Cubic);

    const Mesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
    const std::vector<double>& values() const { return values_; }
    InterpRule rule() const { return rule_; }

    /// interp_eval: exact at nodes, rule-based between them.
    double operator()(double t) const;

    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;
    GridFunction scaled(double factor) const;

    /// interior extrema of segment i (cubic rule), clipped to (lo,hi)
    void collect_extrema(std::size_t i, double lo, double hi,
                         std::vector<double>& out) const;

private:
    std::shared_ptr<const Mesh> mesh_;
    std::vector<double> values_;
    InterpRule rule_;
    std::vector<double> slopes_; // Hermite slopes on the [0,1] part (Cubic rule)

    void build_slopes();
    double eval_segment(std::size_t i, double t) const;
};

/// max |u| over [lo,hi]; nodal values refined by interpolation extrema.
double sup_norm(const GridFunction& u, double lo, double hi);

/// min u over [lo,hi] (no absolute value).
double min_on(const GridFunction& u, double lo, double hi);

struct QuadratureRule {
    enum class Kind { Simpson, GaussLegendre };
    Kind kind = Kind::Simpson;
    int subpanels = 32; // per panel; even for Simpson
};

/// Quadrature of f over [panels.front(), panels.back()], with each panel
/// [panels[i], panels[i+1]] handled by the rule. Panel boundaries must be
/// strictly increasing and include all kinks of the integrand.
double integrate(const std::function<double(double)>& f,
                 const std::vector<double>& panels, const QuadratureRule& rule);

/// Sorted unique breakpoints {lo, kinks within (lo,hi), hi}.
std::vector<double> split_panels(double lo, double hi,
                                 const std::vector<double>& kinks);

} // namespace tbvp
