#ifndef SHADOWLAB_CATALOG_HPP
#define SHADOWLAB_CATALOG_HPP

#include <map>
#include <string>
#include <vector>

#include "shadowlab/system.hpp"

namespace shadowlab {

/// Constant linear field x' = A x on a euclidean chart.
SmoothSystem make_linear_system(const Eigen::MatrixXd& A);

/// Pendulum x' = y, y' = -sin x on the cylinder (x periodic with period 2*pi).
SmoothSystem make_pendulum();

/// Energy of the pendulum, H = y^2/2 - cos x.
double pendulum_energy(const Eigen::VectorXd& xy);

/// Gradient field of a height-like potential on T^2 with one source at (0,0),
/// one sink at (1/2,1/2) and saddles at (1/2,0), (0,1/2). `scale` multiplies
/// the field; the default puts the critical eigenvalues at +-1.
SmoothSystem make_gradient_morse_smale(double scale = 1.0 / (2.0 * M_PI));

/// The four critical points of the gradient catalog system (source, two
/// saddles, sink), in chart coordinates.
std::vector<Eigen::Vector2d> gradient_morse_smale_critical_points();

SmoothSystem make_lorenz(double sigma = 10.0, double rho = 28.0, double beta = 8.0 / 3.0);

/// Suspension of the toral automorphism [[2,1],[1,1]] with roof height
/// log((3+sqrt(5))/2), so contraction/expansion rates are exactly 1. The
/// chart is the mapping torus; the field is the unit vertical field.
SmoothSystem make_suspended_cat();

/// Roof height of the suspended cat system, log((3+sqrt(5))/2).
double suspended_cat_roof();

struct PolyTerm {
    double coeff = 0.0;
    std::vector<int> exponents;  // one exponent per coordinate
};

/// Polynomial field on a euclidean chart; component i is the sum of its terms.
SmoothSystem make_polynomial_system(int dimension,
                                    const std::vector<std::vector<PolyTerm>>& components,
                                    const std::string& name = "polynomial");

/// Config-level description of a catalog system.
struct SystemSpec {
    std::string name;
    std::string kind;  // linear | pendulum | gradient_morse_smale | lorenz |
                       // suspended_toral_automorphism | custom_polynomial
    std::map<std::string, double> params;
    std::vector<std::vector<PolyTerm>> poly;  // custom_polynomial only
};

/// Build and validate a system from its spec. Re-checks field/Jacobian
/// consistency by finite differences; throws ErrorKind::config on schema
/// violations and ErrorKind::domain_error when the Jacobian is inconsistent.
SmoothSystem build_system(const SystemSpec& spec);

/// Names and one-line descriptions of the built-in catalog.
std::vector<std::pair<std::string, std::string>> catalog_entries();

}  // namespace shadowlab

#endif
