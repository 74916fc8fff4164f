#include "tbvp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbvp {

namespace {
constexpr double kNodeTol = 1e-12;
}

Mesh::Mesh(std::vector<double> nodes, std::size_t zero_index, double r)
    : nodes_(std::move(nodes)), zero_index_(zero_index), r_(r) {
    if (nodes_.size() < 3) throw std::invalid_argument("Mesh: too few nodes");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i] > nodes_[i - 1]))
            throw std::invalid_argument("Mesh: nodes not strictly increasing");
    if (std::abs(nodes_[zero_index_]) > kNodeTol)
        throw std::invalid_argument("Mesh: zero_index does not point at t=0");
}

std::shared_ptr<const Mesh> Mesh::make(double r, const ProblemGeometry& geom,
                                       int n, int n_hist) {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("Mesh::make: n must be even and >= 8");
    if (n_hist < 1)
        throw std::invalid_argument("Mesh::make: n_hist must be >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("Mesh::make: r must be positive");

    std::vector<double> nodes;
    nodes.reserve(static_cast<std::size_t>(n + n_hist + 8));
    for (int i = 0; i < n_hist; ++i)
        nodes.push_back(-r + r * static_cast<double>(i) / n_hist);
    const std::size_t zero_index = nodes.size();
    nodes.push_back(0.0);

    // Marker segments of [0,1]; a, b, eta are kink locations of k and gamma.
    std::vector<double> markers{0.0, geom.a, geom.b, geom.eta, 1.0};
    std::sort(markers.begin(), markers.end());
    markers.erase(std::unique(markers.begin(), markers.end(),
                              [](double x, double y) { return std::abs(x - y) < kNodeTol; }),
                  markers.end());

    for (std::size_t j = 0; j + 1 < markers.size(); ++j) {
        const double lo = markers[j], hi = markers[j + 1];
        const double len = hi - lo;
        int m = 2 * std::max<long>(1, std::lround(n * len / 2.0));
        for (int i = 1; i <= m; ++i)
            nodes.push_back(lo + len * static_cast<double>(i) / m);
        nodes.back() = hi; // no rounding drift at markers
    }
    return std::make_shared<Mesh>(std::move(nodes), zero_index, r);
}

std::size_t Mesh::segment_of(double t) const {
    if (t < nodes_.front() - kNodeTol || t > nodes_.back() + kNodeTol)
        throw std::domain_error("Mesh: argument outside [-r,1]");
    t = std::clamp(t, nodes_.front(), nodes_.back());
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
    if (i > 0) --i;
    if (i + 1 >= nodes_.size()) i = nodes_.size() - 2;
    return i;
}

std::size_t Mesh::node_index(double t) const {
    std::size_t i = segment_of(t);
    if (std::abs(nodes_[i] - t) <= kNodeTol) return i;
    if (std::abs(nodes_[i + 1] - t) <= kNodeTol) return i + 1;
    throw std::invalid_argument("Mesh: not a node");
}

GridFunction::GridFunction(std::shared_ptr<const Mesh> mesh,
                           std::vector<double> values, InterpRule rule)
    : mesh_(std::move(mesh)), values_(std::move(values)), rule_(rule) {
    if (values_.size() != mesh_->size())
        throw std::invalid_argument("GridFunction: values/mesh size mismatch");
    if (rule_ == InterpRule::Cubic) build_slopes();
}

GridFunction GridFunction::sample(std::shared_ptr<const Mesh> mesh,
                                  const std::function<double(double)>& fn,
                                  InterpRule rule) {
    std::vector<double> vals(mesh->size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = fn(mesh->nodes()[i]);
    return GridFunction(std::move(mesh), std::move(vals), rule);
}

GridFunction GridFunction::zero(std::shared_ptr<const Mesh> mesh, InterpRule rule) {
    std::vector<double> vals(mesh->size(), 0.0);
    return GridFunction(std::move(mesh), std::move(vals), rule);
}

// Slope at node i of the Lagrange cubic through four consecutive nodes of the
// [0,1] part. Exact on cubic data; the stencil never crosses t=0, where u may
// have a kink.
void GridFunction::build_slopes() {
    const auto& x = mesh_->nodes();
    const std::size_t z = mesh_->zero_index();
    const std::size_t nn = x.size();
    slopes_.assign(nn, 0.0);
    if (nn - z < 4) { // degenerate unit part: fall back to secants
        for (std::size_t i = z; i + 1 < nn; ++i)
            slopes_[i] = (values_[i + 1] - values_[i]) / (x[i + 1] - x[i]);
        slopes_[nn - 1] = slopes_[nn - 2];
        return;
    }
    for (std::size_t i = z; i < nn; ++i) {
        std::size_t j0 = (i > z) ? i - 1 : z;
        if (j0 + 3 >= nn) j0 = nn - 4;
        if (j0 < z) j0 = z;
        // derivative of the Lagrange cubic through x[j0..j0+3] at x[i]
        double m = 0.0;
        for (std::size_t k = j0; k < j0 + 4; ++k) {
            double dk = 0.0;
            for (std::size_t p = j0; p < j0 + 4; ++p) {
                if (p == k) continue;
                double term = 1.0;
                for (std::size_t q = j0; q < j0 + 4; ++q) {
                    if (q == k || q == p) continue;
                    term *= (x[i] - x[q]) / (x[k] - x[q]);
                }
                dk += term / (x[k] - x[p]);
            }
            m += values_[k] * dk;
        }
        slopes_[i] = m;
    }
}

double GridFunction::eval_segment(std::size_t i, double t) const {
    const auto& x = mesh_->nodes();
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const bool cubic = rule_ == InterpRule::Cubic && i >= mesh_->zero_index();
    if (!cubic) return values_[i] + s * (values_[i + 1] - values_[i]);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * values_[i] + h * h10 * slopes_[i] + h01 * values_[i + 1] +
           h * h11 * slopes_[i + 1];
}

double GridFunction::operator()(double t) const {
    const std::size_t i = mesh_->segment_of(t);
    const auto& x = mesh_->nodes();
    if (std::abs(t - x[i]) <= kNodeTol) return values_[i];
    if (std::abs(t - x[i + 1]) <= kNodeTol) return values_[i + 1];
    return eval_segment(i, t);
}

static GridFunction combine(const GridFunction& a, const GridFunction& b, double sb) {
    if (!a.mesh().same_as(b.mesh()))
        throw std::invalid_argument("GridFunction: mesh mismatch");
    std::vector<double> vals(a.values().size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = a.values()[i] + sb * b.values()[i];
    return GridFunction(a.mesh_ptr(), std::move(vals), a.rule());
}

GridFunction GridFunction::operator+(const GridFunction& o) const { return combine(*this, o, 1.0); }
GridFunction GridFunction::operator-(const GridFunction& o) const { return combine(*this, o, -1.0); }

GridFunction GridFunction::scaled(double factor) const {
    std::vector<double> vals(values_.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = factor * values_[i];
    return GridFunction(mesh_, std::move(vals), rule_);
}

// Interior extrema of the Hermite cubic on segment i (roots of the quadratic
// derivative), clipped to [lo,hi].
void GridFunction::collect_extrema(std::size_t i, double lo, double hi,
                                   std::vector<double>& out) const {
    if (rule_ != InterpRule::Cubic || i < mesh_->zero_index()) return;
    const auto& x = mesh_->nodes();
    const double h = x[i + 1] - x[i];
    const double d = (values_[i + 1] - values_[i]) / h;
    // p'(s)/h in Hermite form: a2*s^2 + a1*s + a0 with
    const double a0 = slopes_[i];
    const double a1 = 6 * d - 4 * slopes_[i] - 2 * slopes_[i + 1];
    const double a2 = 3 * (slopes_[i] + slopes_[i + 1] - 2 * d);
    auto push = [&](double s) {
        if (s > 0.0 && s < 1.0) {
            const double t = x[i] + s * h;
            if (t > lo && t < hi) out.push_back(t);
        }
    };
    if (std::abs(a2) < 1e-300) {
        if (std::abs(a1) > 1e-300) push(-a0 / a1);
        return;
    }
    const double disc = a1 * a1 - 4 * a2 * a0;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    push((-a1 + sq) / (2 * a2));
    push((-a1 - sq) / (2 * a2));
}

static void candidates(const GridFunction& u, double lo, double hi,
                       std::vector<double>& pts) {
    const Mesh& mesh = u.mesh();
    if (!(lo < hi))
        throw std::invalid_argument("sup_norm/min_on: degenerate interval");
    if (lo < mesh.nodes().front() - kNodeTol || hi > mesh.nodes().back() + kNodeTol)
        throw std::domain_error("sup_norm/min_on: interval outside [-r,1]");
    lo = std::clamp(lo, mesh.nodes().front(), mesh.nodes().back());
    hi = std::clamp(hi, mesh.nodes().front(), mesh.nodes().back());
    pts.push_back(lo);
    pts.push_back(hi);
    const auto& x = mesh.nodes();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > lo && x[i] < hi) pts.push_back(x[i]);
    const std::size_t i0 = mesh.segment_of(lo);
    const std::size_t i1 = mesh.segment_of(hi);
    for (std::size_t i = i0; i <= i1 && i + 1 < x.size(); ++i)
        u.collect_extrema(i, lo, hi, pts);
}

double sup_norm(const GridFunction& u, double lo, double hi) {
    std::vector<double> pts;
    candidates(u, lo, hi, pts);
    double m = 0.0;
    for (double t : pts) m = std::max(m, std::abs(u(t)));
    return m;
}

double min_on(const GridFunction& u, double lo, double hi) {
    std::vector<double> pts;
    candidates(u, lo, hi, pts);
    double m = u(pts.front());
    for (double t : pts) m = std::min(m, u(t));
    return m;
}

namespace {

// 5-point Gauss-Legendre on [-1,1].
constexpr double kGlX[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kGlW[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

double simpson_panel(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < m; i += 2) odd += f(a + i * h);
    for (int i = 2; i < m; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double gauss_panel(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / m;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        const double mid = a + (i + 0.5) * h;
        for (int j = 0; j < 5; ++j) sum += kGlW[j] * f(mid + 0.5 * h * kGlX[j]);
    }
    return 0.5 * h * sum;
}

} // namespace

double integrate(const std::function<double(double)>& f,
                 const std::vector<double>& panels, const QuadratureRule& rule) {
    if (panels.size() < 2)
        throw std::invalid_argument("integrate: need at least one panel");
    for (std::size_t i = 1; i < panels.size(); ++i)
        if (!(panels[i] > panels[i - 1]))
            throw std::invalid_argument("integrate: panel boundaries not increasing");
    int m = rule.subpanels;
    if (m < 1) throw std::invalid_argument("integrate: subpanels must be >= 1");
    if (rule.kind == QuadratureRule::Kind::Simpson && m % 2 != 0)
        throw std::invalid_argument("integrate: Simpson needs an even subpanel count");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
        sum += rule.kind == QuadratureRule::Kind::Simpson
                   ? simpson_panel(f, panels[i], panels[i + 1], m)
                   : gauss_panel(f, panels[i], panels[i + 1], m);
    }
    return sum;
}

std::vector<double> split_panels(double lo, double hi,
                                 const std::vector<double>& kinks) {
    std::vector<double> p{lo};
    std::vector<double> ks = kinks;
    std::sort(ks.begin(), ks.end());
    for (double k : ks)
        if (k > lo + kNodeTol && k < hi - kNodeTol &&
            std::abs(k - p.back()) > kNodeTol)
            p.push_back(k);
    p.push_back(hi);
    return p;
}

} // namespace tbvp
