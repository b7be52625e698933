#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ncd/symbol.hpp"

namespace ncd {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kMembershipTolerance = 1e-10;
inline constexpr double kRankThreshold = 1e-8;

/// A point (T_1, ..., T_n) of level k: n complex k x k matrices.
class MatrixTuple {
public:
    explicit MatrixTuple(std::vector<ComplexMatrix> mats);

    int n() const noexcept { return static_cast<int>(mats_.size()); }
    Eigen::Index level() const noexcept { return mats_.front().rows(); }
    const ComplexMatrix &operator[](std::size_t i) const { return mats_[i]; }
    const std::vector<ComplexMatrix> &matrices() const noexcept { return mats_; }

    MatrixTuple scaled(double t) const;

private:
    std::vector<ComplexMatrix> mats_;
};

/// Coefficients c[j][alpha] of a free map F fixing the origin:
/// F_j(T) = sum_{1 <= |alpha| <= D} c[j][alpha] T_alpha.
struct FreeMapCoefficients {
    int n = 0;
    int degree_cap = 0;
    std::vector<std::map<Word, std::complex<double>>> coords;

    FreeMapCoefficients(int n, int degree_cap);

    void set(int coordinate, const Word &alpha, std::complex<double> value);
    std::complex<double> get(int coordinate, const Word &alpha) const;
};

struct ForcedIndex {
    int coordinate = 0; // 1-based
    Word word;

    friend bool operator==(const ForcedIndex &, const ForcedIndex &) = default;
};

struct DegreeRelations {
    int degree = 0;
    std::vector<Word> forced;               // coefficients proven zero
    std::vector<Word> unresolved;           // the remaining coefficients
    ComplexMatrix relations;                // rows: reduced relations over `unresolved`
    Eigen::Index free_directions = 0;       // dim of the solution space left
};

struct LinearityReport {
    int n = 0;
    int degree_cap = 0;
    int levels = 0;
    std::vector<ForcedIndex> forced;        // all coordinates
    std::vector<DegreeRelations> degrees;
    std::vector<std::size_t> forced_after_level; // per-coordinate count after k = 1..levels
    std::vector<ForcedIndex> violations;    // forced indices where F itself is nonzero
    bool complete = false;                  // every coefficient of degree >= 2 forced
};

struct MatrixMembership {
    double max_eigenvalue = 0.0;
    bool member = false;
    bool strict = true;
    double tol = 0.0;
    double margin = 0.0; // 1 - max_eigenvalue
};

ComplexMatrix evaluate_word(const MatrixTuple &t, const Word &alpha);

// Largest eigenvalue of sum a_alpha T_alpha T_alpha^*. Strict membership
// requires max_eigenvalue < 1 - tol, closed membership <= 1 + tol.
MatrixMembership matrix_membership(const FreePolynomial &f, const MatrixTuple &t, bool strict = true,
                                   double tol = kMembershipTolerance);

// S_i = sum_j M(i, j) T_j.
MatrixTuple dual_map_apply(const ComplexMatrix &m, const MatrixTuple &t);

MatrixTuple evaluate_free_map(const FreeMapCoefficients &f, const MatrixTuple &t);

// Pseudorandom tuple with entries uniform in the unit square of C.
MatrixTuple random_tuple(int n, Eigen::Index level, std::uint64_t seed);

// Scales t so that its membership value for f is `target` (in (0, 1)).
MatrixTuple scale_into_domain(const FreePolynomial &f, const MatrixTuple &t, double target);

struct SeparatingOptions {
    Eigen::Index level = 0;                // 0: max(word_length + 1, ceil(sqrt(n^word_length)))
    std::optional<FreePolynomial> symbol;  // when set, the tuple is scaled to membership value 1/2
    int max_attempts = 16;
};

// A tuple whose words of length `word_length` are linearly independent.
MatrixTuple separating_tuple(int n, int word_length, std::uint64_t seed, const SeparatingOptions &options = {});

// Imposes "F_k is linear" for k = 1..levels and reports which coefficients
// of degree >= 2 are forced to vanish.
LinearityReport cartan_forced_zeros(const FreeMapCoefficients &f, int levels, std::uint64_t seed = 0);

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);
nlohmann::json to_json(const MatrixTuple &t);
MatrixTuple tuple_from_json(const nlohmann::json &j);
FreeMapCoefficients free_map_from_json(const nlohmann::json &j);
nlohmann::json to_json(const MatrixMembership &m);
nlohmann::json to_json(const LinearityReport &r);

} // namespace ncd
