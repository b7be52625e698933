#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncd/symbol.hpp"

namespace ncd {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kProductPerturbation = 0.1;

struct ScalarMembership {
    double value = 0.0; // sum a_alpha |z_alpha|^2
    bool inside = false;
};

ScalarMembership scalar_membership(const FreePolynomial &f, std::span<const std::complex<double>> z);

// The point rho * d at which the membership value equals 1.
std::vector<std::complex<double>> boundary_point_on_ray(const FreePolynomial &f,
                                                        std::span<const std::complex<double>> direction);

struct SphericalityResult {
    bool spherical = false;
    // mu_i > 0 solves sum_k c_{k e_i} mu^k = 1 (the squared axis intercept).
    std::vector<double> mu;
    // Present when every mu_i is rational; the test is then exact.
    std::optional<std::vector<Rational>> mu_exact;
    // p(mu_1 t_1, ..., mu_n t_n) - 1 with t_n = 1 - t_1 - ... - t_{n-1}.
    CommutativePolynomial<double> restricted;
    std::optional<CommutativePolynomial<Rational>> restricted_exact;
    double residual = 0.0; // max |coefficient| of the restricted polynomial
    std::optional<Rational> residual_exact;
    double tol = 0.0;
};

// Unique positive root of the strictly increasing axis polynomial
// sum_k c_k x^k = 1 (c indexed by degree, c_0 ignored).
double axis_root(std::span<const double> coeffs_by_degree);

SphericalityResult decide_spherical(const FreePolynomial &f, double tol = kDefaultTolerance);

struct ProductRefutation {
    std::vector<int> block_a; // 1-based
    std::vector<int> block_b;
    std::vector<Rational> lambda;                 // degree-one normalization applied first
    std::vector<std::complex<double>> point;      // boundary point of the A-block, perturbed on B
    std::vector<std::complex<double>> z;          // A-block boundary point (zeros on B)
    std::vector<std::complex<double>> w;          // perturbation on B (zeros on A)
    double restricted_value = 0.0;                // membership value of z, equals 1
    double value = 0.0;                           // membership value of the combined point, > 1
    double epsilon = kProductPerturbation;
};

ProductRefutation refute_product(const FreePolynomial &f, std::span<const int> block_a);

// R(u) = p_s(1 - u^q, u) q u^(q-1) - p_u(1 - u^q, u) with p the collapsed
// polynomial of a two-variable symbol in (s, u) = (|z_1|^2, |z_2|^2).
double thullen_colinearity_residual(const FreePolynomial &f, double q, double u);

struct ThullenSample {
    double u = 0.0;
    double residual = 0.0;
};

struct ThullenEvidence {
    double q = 0.0;
    ThullenSample strongest;          // sample with the largest |R|
    std::vector<ThullenSample> samples;
    bool nonzero = false;             // |strongest.residual| > tol
    // q < 1: R -> +inf as u -> 0, with p_s(1,0) q u^(q-1) as leading term.
    // q > 1: R -> -p_u(1,0), which is at most -c_{0,1} < 0.
    bool diverges_at_zero = false;
    double limit_at_zero = 0.0;
};

struct ThullenOrientation {
    int exponent_variable = 2;        // the variable carrying |.|^{2q}
    double c01 = 0.0;                 // degree-one coefficient of that variable after rescaling
    double limit_coefficient = 0.0;   // p_s(1,0) (q < 1 divergence) for reference
    std::vector<ThullenEvidence> evidence;
};

struct ThullenRefutation {
    std::vector<double> mu;           // unit-intercept rescaling of the collapsed polynomial
    std::vector<ThullenOrientation> orientations;
    double tol = 0.0;
    bool refuted = false;
};

std::vector<double> thullen_q_grid();
std::vector<double> thullen_u_grid();

ThullenRefutation refute_thullen(const FreePolynomial &f, double tol = kDefaultTolerance);

nlohmann::json to_json(const SphericalityResult &r);
nlohmann::json to_json(const ProductRefutation &r);
nlohmann::json to_json(const ThullenRefutation &r);

} // namespace ncd
