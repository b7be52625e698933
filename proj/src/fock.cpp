#include "ncd/fock.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <iomanip>

#include "ncd/errors.hpp"
#include "ncd/linalg.hpp"

namespace ncd {

TruncatedFock::TruncatedFock(int n, int max_len) : n_(n), max_len_(max_len)
{
    if (n < 1) {
        throw InvalidInput("Fock space needs n >= 1");
    }
    if (max_len < 1) {
        throw InvalidInput("word-length cutoff must be at least 1");
    }
    // Compare in floating point first so huge n^L cannot overflow.
    if (std::pow(static_cast<double>(n), max_len) > 2.0 * static_cast<double>(kMaxFockDimension) ||
        count_words_up_to(n, max_len) > kMaxFockDimension) {
        throw InvalidInput("truncated Fock space for n=" + std::to_string(n) + ", L=" + std::to_string(max_len) +
                           " exceeds the dimension cap of " + std::to_string(kMaxFockDimension));
    }
    basis_ = words_up_to(n, max_len);
}

WeightTable compute_weights(const FreePolynomial &f, int max_len)
{
    require_regular_positive(f);
    TruncatedFock space(f.n(), max_len);
    std::vector<Rational> b(space.dim());
    b[0] = 1;
    for (std::size_t idx = 1; idx < space.dim(); ++idx) {
        const Word &alpha = space.basis()[idx];
        Rational sum(0);
        for (std::size_t cut = 1; cut <= alpha.size(); ++cut) {
            Rational a = f.coefficient(alpha.prefix(cut));
            if (a != 0) {
                sum += a * b[space.index_of(alpha.suffix_from(cut))];
            }
        }
        sum.canonicalize();
        if (sum <= 0) {
            throw InternalError("nonpositive weight for " + to_string(alpha));
        }
        b[idx] = sum;
    }
    return {std::move(space), std::move(b)};
}

ShiftFamily build_shifts(const FreePolynomial &f, int max_len)
{
    WeightTable table = compute_weights(f, max_len);
    const TruncatedFock &space = table.space;
    const auto dim = static_cast<Eigen::Index>(space.dim());
    std::vector<Eigen::SparseMatrix<double>> shifts;
    for (int i = 1; i <= f.n(); ++i) {
        std::vector<Eigen::Triplet<double>> trips;
        for (std::size_t col = 0; col < space.dim(); ++col) {
            const Word &alpha = space.basis()[col];
            if (static_cast<int>(alpha.size()) == max_len) {
                continue;
            }
            Word target = Word{i} + alpha;
            std::size_t row = space.index_of(target);
            Rational ratio = table.weights[col] / table.weights[row];
            trips.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col),
                               std::sqrt(to_double(ratio)));
        }
        Eigen::SparseMatrix<double> w(dim, dim);
        w.setFromTriplets(trips.begin(), trips.end());
        shifts.push_back(std::move(w));
    }
    return {std::move(table), std::move(shifts)};
}

Eigen::SparseMatrix<double> ShiftFamily::word_operator(const Word &w) const
{
    const auto dim = static_cast<Eigen::Index>(weights.space.dim());
    Eigen::SparseMatrix<double> out(dim, dim);
    out.setIdentity();
    for (int letter : w) {
        if (letter < 1 || letter > n()) {
            throw InvalidInput("word letter outside 1..n");
        }
    }
    // X_alpha = X_{i_1} ... X_{i_k}: multiply left to right.
    for (int letter : w) {
        out = Eigen::SparseMatrix<double>(out * shifts[static_cast<std::size_t>(letter - 1)]);
    }
    return out;
}

double shift_norm(const ShiftFamily &family, const Word &alpha)
{
    if (static_cast<int>(alpha.size()) > family.weights.space.max_len()) {
        throw InvalidInput("word " + to_string(alpha) + " is longer than the truncation length");
    }
    return operator_norm(family.word_operator(alpha));
}

double shift_norm(const FreePolynomial &f, const Word &alpha, int max_len)
{
    if (static_cast<int>(alpha.size()) > max_len) {
        throw InvalidInput("word " + to_string(alpha) + " is longer than the truncation length");
    }
    return shift_norm(build_shifts(f, max_len), alpha);
}

ShiftMembershipReport verify_shift_membership(const ShiftFamily &family, const FreePolynomial &f, double tol)
{
    const auto dim = static_cast<Eigen::Index>(family.weights.space.dim());
    Eigen::SparseMatrix<double> sum(dim, dim);
    for (const auto &[w, a] : f.terms()) {
        if (static_cast<int>(w.size()) > family.weights.space.max_len()) {
            continue; // W_alpha vanishes on the truncation
        }
        Eigen::SparseMatrix<double> wa = family.word_operator(w);
        Eigen::SparseMatrix<double> term = wa * Eigen::SparseMatrix<double>(wa.transpose());
        sum += to_double(a) * term;
    }
    ShiftMembershipReport r;
    r.max_eigenvalue = largest_eigenvalue_psd(sum);
    r.tol = tol;
    r.dim = family.weights.space.dim();
    r.pass = r.max_eigenvalue <= 1.0 + tol;
    return r;
}

ShiftMembershipReport verify_shift_membership(const FreePolynomial &f, int max_len, double tol)
{
    return verify_shift_membership(build_shifts(f, max_len), f, tol);
}

PythagorasResult pythagoras_residual(const ShiftFamily &family, std::span<const Word> words,
                                     std::span<const std::complex<double>> coeffs)
{
    if (words.empty() || words.size() != coeffs.size()) {
        throw InvalidInput("need one coefficient per word and at least one word");
    }
    std::set<Word> distinct(words.begin(), words.end());
    if (distinct.size() != words.size()) {
        throw InvalidInput("words must be distinct");
    }
    const std::size_t len = words.front().size();
    for (const Word &w : words) {
        if (w.size() != len) {
            throw InvalidInput("words must all have the same length");
        }
        if (static_cast<int>(w.size()) > family.weights.space.max_len()) {
            throw InvalidInput("word longer than the truncation length");
        }
    }
    const auto dim = static_cast<Eigen::Index>(family.weights.space.dim());
    Eigen::SparseMatrix<std::complex<double>> combo(dim, dim);
    double expected = 0.0;
    for (std::size_t j = 0; j < words.size(); ++j) {
        Eigen::SparseMatrix<double> wj = family.word_operator(words[j]);
        double nj = operator_norm(wj);
        expected += std::norm(coeffs[j]) * nj * nj;
        combo += coeffs[j] * Eigen::SparseMatrix<std::complex<double>>(wj.cast<std::complex<double>>());
    }
    double norm = operator_norm(combo);
    return {std::abs(norm * norm - expected), norm * norm};
}

PythagorasResult pythagoras_residual(const FreePolynomial &f, std::span<const Word> words,
                                     std::span<const std::complex<double>> coeffs, int max_len)
{
    return pythagoras_residual(build_shifts(f, max_len), words, coeffs);
}

nlohmann::json to_json(const WeightTable &table)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < table.space.dim(); ++i) {
        rows.push_back({{"word", table.space.basis()[i].letters()}, {"b", to_string(table.weights[i])}});
    }
    return rows;
}

std::string to_triplets(const Eigen::SparseMatrix<double> &m)
{
    std::ostringstream os;
    os << std::setprecision(17);
    for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
            os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
        }
    }
    return os.str();
}

} // namespace ncd
