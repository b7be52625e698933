#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include "ncd/symbol.hpp"

namespace ncd {

inline constexpr int kDefaultMaxLength = 5;
inline constexpr std::size_t kMaxFockDimension = 100000;

/// Truncated full Fock space: basis delta_alpha for |alpha| <= L, in
/// length-lex order.
class TruncatedFock {
public:
    TruncatedFock(int n, int max_len);

    int n() const noexcept { return n_; }
    int max_len() const noexcept { return max_len_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Word> &basis() const noexcept { return basis_; }
    std::size_t index_of(const Word &w) const { return length_lex_index(w, n_); }

private:
    int n_;
    int max_len_;
    std::vector<Word> basis_;
};

/// b_alpha for every basis word, aligned with TruncatedFock::basis().
struct WeightTable {
    TruncatedFock space;
    std::vector<Rational> weights;

    const Rational &weight(const Word &w) const { return weights[space.index_of(w)]; }
};

/// W_i delta_alpha = sqrt(b_alpha / b_{i alpha}) delta_{i alpha}; top-length
/// basis vectors are annihilated.
struct ShiftFamily {
    WeightTable weights;
    std::vector<Eigen::SparseMatrix<double>> shifts;

    int n() const noexcept { return weights.space.n(); }
    // W_{i_1} ... W_{i_k} on the truncation; identity for the empty word.
    Eigen::SparseMatrix<double> word_operator(const Word &w) const;
};

// b_{g_0} = 1 and b_alpha = sum over alpha = gamma beta, |gamma| >= 1, of
// a_gamma b_beta: the coefficients of the geometric series sum_k f^k.
WeightTable compute_weights(const FreePolynomial &f, int max_len);

ShiftFamily build_shifts(const FreePolynomial &f, int max_len);

double shift_norm(const ShiftFamily &family, const Word &alpha);
double shift_norm(const FreePolynomial &f, const Word &alpha, int max_len);

struct ShiftMembershipReport {
    double max_eigenvalue = 0.0;
    double tol = 0.0;
    std::size_t dim = 0;
    bool pass = false;
};

// Largest eigenvalue of sum a_alpha W_alpha W_alpha^* on the truncation.
ShiftMembershipReport verify_shift_membership(const ShiftFamily &family, const FreePolynomial &f, double tol);
ShiftMembershipReport verify_shift_membership(const FreePolynomial &f, int max_len, double tol);

struct PythagorasResult {
    double residual = 0.0;     // | ||sum c_j W_j||^2 - sum |c_j|^2 ||W_j||^2 |
    double norm_squared = 0.0; // ||sum c_j W_j||^2
};

PythagorasResult pythagoras_residual(const ShiftFamily &family, std::span<const Word> words,
                                     std::span<const std::complex<double>> coeffs);
PythagorasResult pythagoras_residual(const FreePolynomial &f, std::span<const Word> words,
                                     std::span<const std::complex<double>> coeffs, int max_len);

nlohmann::json to_json(const WeightTable &table);

// One "row col value" line per nonzero, 0-based indices into the basis.
std::string to_triplets(const Eigen::SparseMatrix<double> &m);

} // namespace ncd
