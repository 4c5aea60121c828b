#include "shadowlab/catalog.hpp"

#include <cmath>
#include <sstream>

namespace shadowlab {

SmoothSystem make_linear_system(const Eigen::MatrixXd& A) {
    SmoothSystem sys;
    sys.name = "linear";
    sys.kind = "linear";
    sys.dimension = static_cast<int>(A.rows());
    sys.chart = Chart::euclidean(sys.dimension);
    sys.field = [A](const Eigen::VectorXd& x) { return (A * x).eval(); };
    sys.jacobian = [A](const Eigen::VectorXd&) { return A; };
    return sys;
}

SmoothSystem make_pendulum() {
    SmoothSystem sys;
    sys.name = "pendulum";
    sys.kind = "pendulum";
    sys.dimension = 2;
    sys.chart = Chart::cylinder(2, {2.0 * M_PI});
    sys.field = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(2);
        f << x[1], -std::sin(x[0]);
        return f;
    };
    sys.jacobian = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j(2, 2);
        j << 0.0, 1.0, -std::cos(x[0]), 0.0;
        return j;
    };
    return sys;
}

double pendulum_energy(const Eigen::VectorXd& xy) {
    return 0.5 * xy[1] * xy[1] - std::cos(xy[0]);
}

SmoothSystem make_gradient_morse_smale(double scale) {
    SmoothSystem sys;
    sys.name = "gradient_morse_smale";
    sys.kind = "gradient_morse_smale";
    sys.dimension = 2;
    sys.chart = Chart::torus({1.0, 1.0});
    const double s = scale;
    sys.field = [s](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(2);
        f << s * std::sin(2.0 * M_PI * x[0]), s * std::sin(2.0 * M_PI * x[1]);
        return f;
    };
    sys.jacobian = [s](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
        j(0, 0) = s * 2.0 * M_PI * std::cos(2.0 * M_PI * x[0]);
        j(1, 1) = s * 2.0 * M_PI * std::cos(2.0 * M_PI * x[1]);
        return j;
    };
    return sys;
}

std::vector<Eigen::Vector2d> gradient_morse_smale_critical_points() {
    return {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(0.5, 0.0),
            Eigen::Vector2d(0.0, 0.5), Eigen::Vector2d(0.5, 0.5)};
}

SmoothSystem make_lorenz(double sigma, double rho, double beta) {
    SmoothSystem sys;
    sys.name = "lorenz";
    sys.kind = "lorenz";
    sys.dimension = 3;
    sys.chart = Chart::euclidean(3);
    sys.field = [sigma, rho, beta](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(3);
        f << sigma * (x[1] - x[0]), x[0] * (rho - x[2]) - x[1], x[0] * x[1] - beta * x[2];
        return f;
    };
    sys.jacobian = [sigma, rho, beta](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j(3, 3);
        j << -sigma, sigma, 0.0,
             rho - x[2], -1.0, -x[0],
             x[1], x[0], -beta;
        return j;
    };
    return sys;
}

double suspended_cat_roof() { return std::log((3.0 + std::sqrt(5.0)) / 2.0); }

SmoothSystem make_suspended_cat() {
    SmoothSystem sys;
    sys.name = "suspended_toral_automorphism";
    sys.kind = "suspended_toral_automorphism";
    sys.dimension = 3;
    Eigen::Matrix2i A;
    A << 2, 1, 1, 1;
    sys.chart = Chart::mapping_torus(A, suspended_cat_roof());
    sys.field = [](const Eigen::VectorXd&) {
        Eigen::VectorXd f(3);
        f << 0.0, 0.0, 1.0;
        return f;
    };
    sys.jacobian = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(3, 3).eval(); };
    return sys;
}

SmoothSystem make_polynomial_system(int dimension,
                                    const std::vector<std::vector<PolyTerm>>& components,
                                    const std::string& name) {
    if (static_cast<int>(components.size()) != dimension)
        throw Error(ErrorKind::config, "polynomial system: one term list per component required");
    for (const auto& comp : components)
        for (const auto& t : comp) {
            if (static_cast<int>(t.exponents.size()) != dimension)
                throw Error(ErrorKind::config, "polynomial term: exponent list length mismatch");
            if (!std::isfinite(t.coeff))
                throw Error(ErrorKind::config, "polynomial term: coefficient not finite");
        }
    SmoothSystem sys;
    sys.name = name;
    sys.kind = "custom_polynomial";
    sys.dimension = dimension;
    sys.chart = Chart::euclidean(dimension);
    auto comps = components;
    sys.field = [comps, dimension](const Eigen::VectorXd& x) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(dimension);
        for (int i = 0; i < dimension; ++i)
            for (const auto& t : comps[static_cast<size_t>(i)]) {
                double v = t.coeff;
                for (int k = 0; k < dimension; ++k)
                    v *= std::pow(x[k], t.exponents[static_cast<size_t>(k)]);
                f[i] += v;
            }
        return f;
    };
    sys.jacobian = [comps, dimension](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dimension, dimension);
        for (int i = 0; i < dimension; ++i)
            for (const auto& t : comps[static_cast<size_t>(i)])
                for (int d = 0; d < dimension; ++d) {
                    int e = t.exponents[static_cast<size_t>(d)];
                    if (e == 0) continue;
                    double v = t.coeff * e * std::pow(x[d], e - 1);
                    for (int k = 0; k < dimension; ++k) {
                        if (k == d) continue;
                        v *= std::pow(x[k], t.exponents[static_cast<size_t>(k)]);
                    }
                    j(i, d) += v;
                }
        return j;
    };
    return sys;
}

namespace {

double param_or(const SystemSpec& spec, const std::string& key, double fallback) {
    auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

void reject_unknown_params(const SystemSpec& spec, const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : spec.params) {
        (void)v;
        bool ok = false;
        for (const auto& a : allowed)
            if (k == a) { ok = true; break; }
        if (!ok)
            throw Error(ErrorKind::config,
                        "system '" + spec.kind + "': unknown parameter '" + k + "'");
    }
}

}  // namespace

SmoothSystem build_system(const SystemSpec& spec) {
    SmoothSystem sys;
    if (spec.kind == "linear") {
        int n = static_cast<int>(param_or(spec, "n", 2));
        if (n < 2) throw Error(ErrorKind::config, "linear system: n must be >= 2");
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
        std::vector<std::string> allowed = {"n"};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::ostringstream key;
                key << "a" << i << j;
                allowed.push_back(key.str());
                A(i, j) = param_or(spec, key.str(), 0.0);
            }
        reject_unknown_params(spec, allowed);
        sys = make_linear_system(A);
    } else if (spec.kind == "pendulum") {
        reject_unknown_params(spec, {});
        sys = make_pendulum();
    } else if (spec.kind == "gradient_morse_smale") {
        reject_unknown_params(spec, {"scale"});
        sys = make_gradient_morse_smale(param_or(spec, "scale", 1.0 / (2.0 * M_PI)));
    } else if (spec.kind == "lorenz") {
        reject_unknown_params(spec, {"sigma", "rho", "beta"});
        sys = make_lorenz(param_or(spec, "sigma", 10.0), param_or(spec, "rho", 28.0),
                          param_or(spec, "beta", 8.0 / 3.0));
    } else if (spec.kind == "suspended_toral_automorphism") {
        reject_unknown_params(spec, {});
        sys = make_suspended_cat();
    } else if (spec.kind == "custom_polynomial") {
        int n = static_cast<int>(param_or(spec, "n", 2));
        reject_unknown_params(spec, {"n"});
        sys = make_polynomial_system(n, spec.poly, spec.name.empty() ? "polynomial" : spec.name);
    } else {
        throw Error(ErrorKind::config, "unknown system kind '" + spec.kind + "'");
    }
    if (!spec.name.empty()) sys.name = spec.name;

    // Build-time consistency gate: field and Jacobian must agree.
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(sys.dimension, -2.0);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(sys.dimension, 2.0);
    double err = jacobian_consistency_error(sys, lo, hi, 32, 0xC0FFEE);
    if (err > 1e-5) {
        std::ostringstream os;
        os << "system '" << sys.name << "': Jacobian inconsistent with field (worst " << err << ")";
        throw Error(ErrorKind::domain_error, os.str());
    }
    return sys;
}

std::vector<std::pair<std::string, std::string>> catalog_entries() {
    return {
        {"linear", "constant-coefficient linear field on R^n"},
        {"pendulum", "x'=y, y'=-sin x on the phase cylinder"},
        {"gradient_morse_smale", "gradient of a height potential on T^2 (1 sink, 1 source, 2 saddles)"},
        {"lorenz", "Lorenz system, defaults sigma=10 rho=28 beta=8/3"},
        {"suspended_toral_automorphism", "suspension of the cat map [[2,1],[1,1]], roof log((3+sqrt5)/2)"},
        {"custom_polynomial", "polynomial field from explicit terms"},
    };
}

}  // namespace shadowlab
