#include "ncd/matrixlevel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ncd/errors.hpp"
#include "ncd/linalg.hpp"

namespace ncd {

MatrixTuple::MatrixTuple(std::vector<ComplexMatrix> mats) : mats_(std::move(mats))
{
    if (mats_.empty()) {
        throw InvalidInput("a matrix tuple needs at least one matrix");
    }
    const Eigen::Index k = mats_.front().rows();
    if (k < 1) {
        throw InvalidInput("matrix level must be at least 1");
    }
    for (const auto &m : mats_) {
        if (m.rows() != k || m.cols() != k) {
            throw InvalidInput("tuple matrices must all be square of the same size");
        }
    }
}

MatrixTuple MatrixTuple::scaled(double t) const
{
    std::vector<ComplexMatrix> out;
    out.reserve(mats_.size());
    for (const auto &m : mats_) {
        out.push_back(t * m);
    }
    return MatrixTuple(std::move(out));
}

FreeMapCoefficients::FreeMapCoefficients(int n_, int degree_cap_)
    : n(n_), degree_cap(degree_cap_), coords(static_cast<std::size_t>(n_))
{
    if (n_ < 1 || degree_cap_ < 1) {
        throw InvalidInput("free map needs n >= 1 and degree cap >= 1");
    }
}

void FreeMapCoefficients::set(int coordinate, const Word &alpha, std::complex<double> value)
{
    if (coordinate < 1 || coordinate > n) {
        throw InvalidInput("coordinate out of range");
    }
    if (alpha.empty()) {
        throw InvalidInput("free maps here fix the origin; no constant term");
    }
    if (static_cast<int>(alpha.size()) > degree_cap || !alpha.uses_only_letters_up_to(n)) {
        throw InvalidInput("word " + to_string(alpha) + " outside the map's degree cap or alphabet");
    }
    auto &c = coords[static_cast<std::size_t>(coordinate - 1)];
    if (value == 0.0) {
        c.erase(alpha);
    } else {
        c[alpha] = value;
    }
}

std::complex<double> FreeMapCoefficients::get(int coordinate, const Word &alpha) const
{
    const auto &c = coords.at(static_cast<std::size_t>(coordinate - 1));
    auto it = c.find(alpha);
    return it == c.end() ? std::complex<double>(0.0) : it->second;
}

ComplexMatrix evaluate_word(const MatrixTuple &t, const Word &alpha)
{
    const Eigen::Index k = t.level();
    ComplexMatrix out = ComplexMatrix::Identity(k, k);
    for (int l : alpha) {
        if (l < 1 || l > t.n()) {
            throw InvalidInput("word letter " + std::to_string(l) + " outside 1.." + std::to_string(t.n()));
        }
        out = out * t[static_cast<std::size_t>(l - 1)];
    }
    return out;
}

MatrixMembership matrix_membership(const FreePolynomial &f, const MatrixTuple &t, bool strict, double tol)
{
    require_regular_positive(f);
    if (t.n() != f.n()) {
        throw InvalidInput("tuple has " + std::to_string(t.n()) + " matrices, symbol has " + std::to_string(f.n()) +
                           " variables");
    }
    const Eigen::Index k = t.level();
    ComplexMatrix sum = ComplexMatrix::Zero(k, k);
    for (const auto &[w, a] : f.terms()) {
        ComplexMatrix tw = evaluate_word(t, w);
        sum += a.get_d() * (tw * tw.adjoint());
    }
    MatrixMembership m;
    m.max_eigenvalue = largest_eigenvalue_hermitian(sum);
    m.strict = strict;
    m.tol = tol;
    m.margin = 1.0 - m.max_eigenvalue;
    m.member = strict ? m.max_eigenvalue < 1.0 - tol : m.max_eigenvalue <= 1.0 + tol;
    return m;
}

MatrixTuple dual_map_apply(const ComplexMatrix &m, const MatrixTuple &t)
{
    if (m.cols() != t.n() || m.rows() < 1) {
        throw InvalidInput("dual map matrix must have one column per tuple entry");
    }
    const Eigen::Index k = t.level();
    std::vector<ComplexMatrix> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ComplexMatrix s = ComplexMatrix::Zero(k, k);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0.0) {
                s += m(i, j) * t[static_cast<std::size_t>(j)];
            }
        }
        out.push_back(std::move(s));
    }
    return MatrixTuple(std::move(out));
}

MatrixTuple evaluate_free_map(const FreeMapCoefficients &f, const MatrixTuple &t)
{
    if (t.n() != f.n) {
        throw InvalidInput("tuple size does not match the map");
    }
    const Eigen::Index k = t.level();
    std::vector<ComplexMatrix> out;
    for (const auto &coord : f.coords) {
        ComplexMatrix s = ComplexMatrix::Zero(k, k);
        for (const auto &[w, c] : coord) {
            s += c * evaluate_word(t, w);
        }
        out.push_back(std::move(s));
    }
    return MatrixTuple(std::move(out));
}

MatrixTuple random_tuple(int n, Eigen::Index level, std::uint64_t seed)
{
    if (n < 1 || level < 1) {
        throw InvalidInput("random tuple needs n >= 1 and level >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<ComplexMatrix> mats;
    for (int i = 0; i < n; ++i) {
        ComplexMatrix m(level, level);
        for (Eigen::Index r = 0; r < level; ++r) {
            for (Eigen::Index c = 0; c < level; ++c) {
                double re = dist(rng);
                double im = dist(rng);
                m(r, c) = {re, im};
            }
        }
        mats.push_back(std::move(m));
    }
    return MatrixTuple(std::move(mats));
}

MatrixTuple scale_into_domain(const FreePolynomial &f, const MatrixTuple &t, double target)
{
    if (!(target > 0.0 && target < 1.0)) {
        throw InvalidInput("target membership value must lie in (0, 1)");
    }
    require_regular_positive(f);
    if (t.n() != f.n()) {
        throw InvalidInput("tuple size does not match the symbol");
    }
    // value(s) = lambda_max(sum_d s^(2d) H_d) with H_d collecting words of length d.
    const Eigen::Index k = t.level();
    std::vector<ComplexMatrix> by_degree(static_cast<std::size_t>(f.degree()) + 1, ComplexMatrix::Zero(k, k));
    for (const auto &[w, a] : f.terms()) {
        ComplexMatrix tw = evaluate_word(t, w);
        by_degree[w.size()] += a.get_d() * (tw * tw.adjoint());
    }
    auto value = [&](double s) {
        ComplexMatrix h = ComplexMatrix::Zero(k, k);
        double power = 1.0;
        for (std::size_t d = 1; d < by_degree.size(); ++d) {
            power *= s * s;
            h += power * by_degree[d];
        }
        return largest_eigenvalue_hermitian(h);
    };
    if (value(1.0) == 0.0) {
        throw InvalidInput("cannot scale the zero tuple into the domain boundary region");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (value(hi) < target) {
        lo = hi;
        hi *= 2.0;
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
        double mid = 0.5 * (lo + hi);
        (value(mid) < target ? lo : hi) = mid;
    }
    return t.scaled(lo);
}

namespace {

Eigen::Index default_level(int n, int word_length)
{
    const double columns = std::pow(static_cast<double>(n), word_length);
    auto k = static_cast<Eigen::Index>(std::ceil(std::sqrt(columns) - 1e-12));
    return std::max<Eigen::Index>(word_length + 1, k);
}

ComplexMatrix word_evaluation_matrix(const MatrixTuple &t, const std::vector<Word> &words)
{
    const Eigen::Index k = t.level();
    ComplexMatrix a(k * k, static_cast<Eigen::Index>(words.size()));
    for (std::size_t c = 0; c < words.size(); ++c) {
        ComplexMatrix tw = evaluate_word(t, words[c]);
        a.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXcd>(tw.data(), k * k);
    }
    return a;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Reduced row echelon form with partial pivoting; rows below `tol` dropped.
ComplexMatrix reduced_row_echelon(ComplexMatrix a, double tol)
{
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index pivot = row;
        double best = 0.0;
        for (Eigen::Index r = row; r < a.rows(); ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        }
        if (best <= tol) {
            continue;
        }
        a.row(pivot).swap(a.row(row));
        a.row(row) /= a(row, col);
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (r != row && a(r, col) != 0.0) {
                a.row(r) -= a(r, col) * a.row(row);
            }
        }
        ++row;
    }
    ComplexMatrix out = a.topRows(row);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        std::complex<double> &x = out.data()[i];
        x = {std::abs(x.real()) <= tol ? 0.0 : x.real(), std::abs(x.imag()) <= tol ? 0.0 : x.imag()};
    }
    return out;
}

} // namespace

MatrixTuple separating_tuple(int n, int word_length, std::uint64_t seed, const SeparatingOptions &options)
{
    if (n < 1 || word_length < 1) {
        throw InvalidInput("separating tuple needs n >= 1 and word length >= 1");
    }
    if (options.symbol && options.symbol->n() != n) {
        throw InvalidInput("symbol size does not match n");
    }
    const Eigen::Index level = options.level > 0 ? options.level : default_level(n, word_length);
    const std::vector<Word> words = words_of_length(n, word_length);
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        MatrixTuple t = random_tuple(n, level, mix_seed(seed, static_cast<std::uint64_t>(attempt), 0x5e9, 0));
        ComplexMatrix a = word_evaluation_matrix(t, words);
        if (numerical_rank(a, kRankThreshold) == static_cast<Eigen::Index>(words.size())) {
            if (options.symbol) {
                return scale_into_domain(*options.symbol, t, 0.5);
            }
            return t;
        }
    }
    throw InvalidInput("no separating tuple for n=" + std::to_string(n) + ", word length " +
                       std::to_string(word_length) + " at level " + std::to_string(level) + " after " +
                       std::to_string(options.max_attempts) + " attempts");
}

LinearityReport cartan_forced_zeros(const FreeMapCoefficients &f, int levels, std::uint64_t seed)
{
    if (levels < 1) {
        throw InvalidInput("need at least one level");
    }
    LinearityReport report;
    report.n = f.n;
    report.degree_cap = f.degree_cap;
    report.levels = levels;
    report.forced_after_level.assign(static_cast<std::size_t>(levels), 0);

    constexpr double kForcedThreshold = 1e-6;
    for (int d = 2; d <= f.degree_cap; ++d) {
        const std::vector<Word> words = words_of_length(f.n, d);
        const auto cols = static_cast<Eigen::Index>(words.size());
        ComplexMatrix constraints(0, cols);
        Eigen::MatrixXcd v;
        Eigen::Index rank = 0;
        std::vector<bool> forced(words.size(), false);

        for (int k = 1; k <= levels; ++k) {
            // Linearity of F_k kills the degree-d part on all of M_k^n; sample
            // enough generic points to reach the rank of that evaluation map.
            const Eigen::Index kk = static_cast<Eigen::Index>(k) * k;
            const Eigen::Index samples = (cols + kk - 1) / kk + 2;
            ComplexMatrix block(samples * kk, cols);
            for (Eigen::Index s = 0; s < samples; ++s) {
                MatrixTuple t = random_tuple(f.n, k, mix_seed(seed, static_cast<std::uint64_t>(d),
                                                              static_cast<std::uint64_t>(k),
                                                              static_cast<std::uint64_t>(s)));
                block.middleRows(s * kk, kk) = word_evaluation_matrix(t, words);
            }
            ComplexMatrix stacked(constraints.rows() + block.rows(), cols);
            stacked << constraints, block;
            constraints = std::move(stacked);

            Eigen::BDCSVD<ComplexMatrix> svd(constraints, Eigen::ComputeFullV);
            const auto &sv = svd.singularValues();
            rank = 0;
            while (rank < sv.size() && sv(rank) > kRankThreshold * sv(0)) {
                ++rank;
            }
            v = svd.matrixV();
            for (std::size_t a = 0; a < words.size(); ++a) {
                double null_weight = rank < cols ? v.row(static_cast<Eigen::Index>(a)).tail(cols - rank).norm() : 0.0;
                if (null_weight < kForcedThreshold) {
                    forced[a] = true;
                }
            }
            report.forced_after_level[static_cast<std::size_t>(k - 1)] +=
                static_cast<std::size_t>(std::count(forced.begin(), forced.end(), true));
        }

        DegreeRelations rel;
        rel.degree = d;
        std::vector<Eigen::Index> unresolved_cols;
        for (std::size_t a = 0; a < words.size(); ++a) {
            (forced[a] ? rel.forced : rel.unresolved).push_back(words[a]);
            if (!forced[a]) {
                unresolved_cols.push_back(static_cast<Eigen::Index>(a));
            }
        }
        // Relations r . c = 0 come from the row space: conj of the leading
        // right singular vectors, restricted to the unresolved coefficients.
        ComplexMatrix restricted(rank, static_cast<Eigen::Index>(unresolved_cols.size()));
        for (Eigen::Index i = 0; i < rank; ++i) {
            for (std::size_t c = 0; c < unresolved_cols.size(); ++c) {
                restricted(i, static_cast<Eigen::Index>(c)) = std::conj(v(unresolved_cols[c], i));
            }
        }
        rel.relations = reduced_row_echelon(restricted, 1e-7);
        rel.free_directions = static_cast<Eigen::Index>(unresolved_cols.size()) - rel.relations.rows();
        report.degrees.push_back(std::move(rel));
    }

    std::size_t total = 0;
    for (const auto &rel : report.degrees) {
        total += rel.unresolved.size() + rel.forced.size();
        for (int j = 1; j <= f.n; ++j) {
            for (const Word &w : rel.forced) {
                report.forced.push_back({j, w});
                if (std::abs(f.get(j, w)) > 1e-12) {
                    report.violations.push_back({j, w});
                }
            }
        }
    }
    report.complete = report.forced.size() == total * static_cast<std::size_t>(f.n);
    return report;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::complex<double> complex_from_json(const nlohmann::json &j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_object() && j.contains("re")) {
        double im = j.contains("im") ? j["im"].get<double>() : 0.0;
        return {j["re"].get<double>(), im};
    }
    throw InvalidInput("complex entries must be numbers or {\"re\":..,\"im\":..}");
}

} // namespace

nlohmann::json matrix_to_json(const ComplexMatrix &m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
        }
        rows.push_back(std::move(row));
    }
    return {{"rows", rows}};
}

ComplexMatrix matrix_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array() || j["rows"].empty()) {
        throw InvalidInput("matrix JSON needs a nonempty \"rows\" array");
    }
    const auto &rows = j["rows"];
    const auto nrows = static_cast<Eigen::Index>(rows.size());
    if (!rows[0].is_array()) {
        throw InvalidInput("matrix rows must be arrays");
    }
    const auto ncols = static_cast<Eigen::Index>(rows[0].size());
    ComplexMatrix m(nrows, ncols);
    for (Eigen::Index r = 0; r < nrows; ++r) {
        const auto &row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != ncols) {
            throw InvalidInput("matrix rows must have equal length");
        }
        for (Eigen::Index c = 0; c < ncols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

nlohmann::json to_json(const MatrixTuple &t)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &m : t.matrices()) {
        out.push_back(matrix_to_json(m));
    }
    return out;
}

MatrixTuple tuple_from_json(const nlohmann::json &j)
{
    if (!j.is_array()) {
        throw InvalidInput("tuple JSON must be an array of matrices");
    }
    std::vector<ComplexMatrix> mats;
    for (const auto &m : j) {
        mats.push_back(matrix_from_json(m));
    }
    return MatrixTuple(std::move(mats));
}

FreeMapCoefficients free_map_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("coords")) {
        throw InvalidInput("free map JSON needs \"n\" and \"coords\"");
    }
    const int n = j["n"].get<int>();
    int degree = j.value("degree", 0);
    if (degree == 0) {
        for (const auto &coord : j["coords"]) {
            for (const auto &t : coord) {
                degree = std::max(degree, static_cast<int>(t["word"].size()));
            }
        }
        degree = std::max(degree, 1);
    }
    FreeMapCoefficients f(n, degree);
    if (!j["coords"].is_array() || static_cast<int>(j["coords"].size()) != n) {
        throw InvalidInput("\"coords\" must hold one term list per coordinate");
    }
    int coordinate = 1;
    for (const auto &coord : j["coords"]) {
        for (const auto &t : coord) {
            if (!t.contains("word")) {
                throw InvalidInput("free map term needs \"word\"");
            }
            std::vector<int> letters = t["word"].get<std::vector<int>>();
            std::complex<double> value = t.contains("coeff") ? complex_from_json(t["coeff"]) : complex_from_json(t);
            f.set(coordinate, Word(std::move(letters)), value);
        }
        ++coordinate;
    }
    return f;
}

nlohmann::json to_json(const MatrixMembership &m)
{
    return {{"max_eigenvalue", m.max_eigenvalue},
            {"member", m.member},
            {"strict", m.strict},
            {"tol", m.tol},
            {"margin", m.margin}};
}

nlohmann::json to_json(const LinearityReport &r)
{
    auto index_list = [](const std::vector<ForcedIndex> &v) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &fi : v) {
            out.push_back({{"coordinate", fi.coordinate}, {"word", fi.word.letters()}});
        }
        return out;
    };
    nlohmann::json degrees = nlohmann::json::array();
    for (const auto &d : r.degrees) {
        nlohmann::json forced = nlohmann::json::array();
        for (const auto &w : d.forced) {
            forced.push_back(w.letters());
        }
        nlohmann::json unresolved = nlohmann::json::array();
        for (const auto &w : d.unresolved) {
            unresolved.push_back(w.letters());
        }
        degrees.push_back({{"degree", d.degree},
                           {"forced", forced},
                           {"unresolved", unresolved},
                           {"relations", matrix_to_json(d.relations)["rows"]},
                           {"free_directions", d.free_directions}});
    }
    return {{"n", r.n},
            {"degree_cap", r.degree_cap},
            {"levels", r.levels},
            {"complete", r.complete},
            {"forced", index_list(r.forced)},
            {"forced_after_level", r.forced_after_level},
            {"violations", index_list(r.violations)},
            {"degrees", degrees}};
}

} // namespace ncd
