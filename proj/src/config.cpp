#include "tbvp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tbvp/expr.hpp"

namespace tbvp {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != std::floor(x)) throw ConfigError("'" + key + "' must be an integer");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("bad boolean value for '" + key + "': " + v);
}

Evaluable compile1(const std::string& source, const std::string& what) {
    try {
        auto ast = parse(source, {"t"});
        return [ast](double t) { return eval_expr(*ast, {{"t", t}}); };
    } catch (const ParseError& e) {
        throw ConfigError("bad expression for " + what + ": " + e.what());
    }
}

Nonlinearity compile3(const std::string& source, const std::string& what) {
    try {
        auto ast = parse(source, {"t", "u", "v"});
        return [ast](double t, double u, double v) {
            return eval_expr(*ast, {{"t", t}, {"u", u}, {"v", v}});
        };
    } catch (const ParseError& e) {
        throw ConfigError("bad expression for " + what + ": " + e.what());
    }
}

} // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "geometry.beta") cfg.geometry.beta = to_double(qual, value);
        else if (qual == "geometry.eta") cfg.geometry.eta = to_double(qual, value);
        else if (qual == "geometry.r") cfg.geometry.r = to_double(qual, value);
        else if (qual == "geometry.a") cfg.geometry.a = to_double(qual, value);
        else if (qual == "geometry.b") cfg.geometry.b = to_double(qual, value);
        else if (qual == "problem.builtin") cfg.builtin = value;
        else if (qual == "problem.f") cfg.f_expr = value;
        else if (qual == "problem.sigma") cfg.sigma_expr = value;
        else if (qual == "problem.g") cfg.g_expr = value;
        else if (qual == "problem.omega") cfg.omega_expr = value;
        else if (qual == "problem.B_kind") cfg.b_kind = value;
        else if (qual == "problem.B_weight") cfg.b_weight_expr = value;
        else if (qual == "numerics.mesh_n") cfg.solver.mesh_n = to_int(qual, value);
        else if (qual == "numerics.mesh_n_hist") cfg.solver.mesh_n_hist = to_int(qual, value);
        else if (qual == "numerics.quadrature") {
            if (value == "simpson") cfg.solver.quad.kind = QuadratureRule::Kind::Simpson;
            else if (value == "gauss") cfg.solver.quad.kind = QuadratureRule::Kind::GaussLegendre;
            else throw ConfigError("numerics.quadrature must be 'simpson' or 'gauss'");
        }
        else if (qual == "numerics.quad_subpanels") cfg.solver.quad.subpanels = to_int(qual, value);
        else if (qual == "numerics.solver_tol") cfg.solver.tol = to_double(qual, value);
        else if (qual == "numerics.max_iterations") cfg.solver.max_iterations = to_int(qual, value);
        else if (qual == "numerics.damping") cfg.solver.damping = to_double(qual, value);
        else if (qual == "run.rho") {
            cfg.rho_values.clear();
            std::istringstream vs(value);
            std::string item;
            while (std::getline(vs, item, ',')) {
                item = trim(item);
                if (!item.empty()) cfg.rho_values.push_back(to_double(qual, item));
            }
        }
        else if (qual == "output.directory") cfg.output_dir = value;
        else if (qual == "output.plot") cfg.plot = to_bool(qual, value);
        else if (qual == "output.kernel_grid") cfg.kernel_grid = to_int(qual, value);
        else throw ConfigError("unknown key '" + qual + "'");
    }
    try {
        cfg.geometry.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

ProblemSpec builtin_problem(const std::string& name, const ProblemGeometry& geom) {
    ProblemSpec spec;
    spec.geom = geom;
    spec.g = [](double) { return 1.0; };
    if (name == "paper_example" || name == "lightbulb_reflection") {
        spec.f = [](double t, double u, double v) { return t * std::exp(u + 2.0 * v); };
        spec.sigma = [](double s) { return -s; };
        spec.omega = [](double t) { return std::sqrt(std::max(0.0, 1.0 + t)); };
        spec.B = name == "paper_example"
                     ? BFunctional::weighted_square([](double t) { return t * t; })
                     : BFunctional::zero();
    } else if (name == "delay") {
        const double tau = std::min(0.5, geom.r);
        spec.f = [](double t, double u, double v) { return t * std::exp(u + 2.0 * v); };
        spec.sigma = [tau](double s) { return s - tau; };
        spec.omega = [](double t) { return std::sqrt(std::max(0.0, 1.0 + t)); };
        spec.B = BFunctional::zero();
    } else if (name == "linear_oracle") {
        spec.f = [](double, double, double) { return 1.0; };
        spec.sigma = [](double s) { return s; };
        spec.omega = [](double) { return 0.0; };
        spec.B = BFunctional::zero();
    } else {
        throw ConfigError("unknown builtin problem '" + name + "'");
    }
    return spec;
}

ProblemSpec RunConfig::make_problem() const {
    if (!builtin.empty()) return builtin_problem(builtin, geometry);
    if (f_expr.empty() || sigma_expr.empty() || omega_expr.empty())
        throw ConfigError("custom problems need problem.f, problem.sigma and problem.omega");
    ProblemSpec spec;
    spec.geom = geometry;
    spec.f = compile3(f_expr, "problem.f");
    spec.sigma = compile1(sigma_expr, "problem.sigma");
    spec.g = g_expr.empty() ? Evaluable([](double) { return 1.0; })
                            : compile1(g_expr, "problem.g");
    spec.omega = compile1(omega_expr, "problem.omega");
    if (b_kind == "zero") {
        spec.B = BFunctional::zero();
    } else if (b_kind == "weighted_linear" || b_kind == "weighted_square") {
        if (b_weight_expr.empty())
            throw ConfigError("problem.B_weight required for B_kind = " + b_kind);
        auto w = compile1(b_weight_expr, "problem.B_weight");
        spec.B = b_kind == "weighted_linear" ? BFunctional::weighted_linear(w)
                                             : BFunctional::weighted_square(w);
    } else {
        throw ConfigError("problem.B_kind must be zero, weighted_linear or weighted_square");
    }
    return spec;
}

} // namespace tbvp
