#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ncd/symbol.hpp"

namespace ncd {

/// Witness that g(lambda_1 X_sigma(1), ..., lambda_n X_sigma(n)) = f.
/// sigma holds 1-based images; lambda is indexed by the variables of g.
struct EquivalenceCertificate {
    std::vector<int> sigma;
    std::vector<Rational> lambda;

    static EquivalenceCertificate identity(int n);

    int n() const noexcept { return static_cast<int>(sigma.size()); }

    // Applying *this and then `next` equals applying the result.
    EquivalenceCertificate then(const EquivalenceCertificate &next) const;
    EquivalenceCertificate inverse() const;

    friend bool operator==(const EquivalenceCertificate &, const EquivalenceCertificate &) = default;
};

FreePolynomial apply_certificate(const FreePolynomial &g, const EquivalenceCertificate &cert);

struct CanonicalForm {
    FreePolynomial table;                // all degree-one coefficients equal 1
    EquivalenceCertificate to_canonical; // apply_certificate(f, to_canonical) == table
    std::vector<int> witness() const { return to_canonical.sigma; }
};

// Lexicographic comparison of coefficient vectors read in length-lex word
// order, absent words counting as zero. Negative when a < b.
int compare_coefficient_tables(const FreePolynomial &a, const FreePolynomial &b);

CanonicalForm canonical_form(const FreePolynomial &f);

// A certificate with apply_certificate(g, cert) == f, verified exactly, or
// nothing when the symbols are not permutation-rescaling equivalent.
std::optional<EquivalenceCertificate> decide_equivalence(const FreePolynomial &f, const FreePolynomial &g);

// Every certificate mapping f to itself; the identity comes first.
std::vector<EquivalenceCertificate> symmetry_group(const FreePolynomial &f);

struct SupportPartition {
    std::vector<std::vector<int>> sigma_blocks; // 1-based row indices, sorted
    std::vector<std::vector<int>> psi_blocks;   // psi_blocks[i] = s(sigma_blocks[i])
    double eps = 0.0;
    double unitarity_defect = 0.0;              // max |(U*U - I)_ij|
    bool unitary_certified = false;
};

inline constexpr double kSupportEps = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-8;

// Rows i and columns j are linked when |u_ij| > eps. Blocks are the fixed
// points of A -> s_inv(s(A)) started from each singleton.
SupportPartition support_partition(const Eigen::MatrixXcd &u, double eps = kSupportEps);

// Substitution matrix: M(i, sigma(i)) = lambda_i.
Eigen::MatrixXcd certificate_matrix(const EquivalenceCertificate &cert);

// Linear map taking points of D_g^k onto points of D_f^k for a certificate
// of (f, g): T_{sigma(i)} = S_i / sqrt(lambda_i). Use with dual_map_apply.
Eigen::MatrixXcd transport_matrix(const EquivalenceCertificate &cert);

nlohmann::json to_json(const EquivalenceCertificate &cert);
EquivalenceCertificate certificate_from_json(const nlohmann::json &j);

} // namespace ncd
