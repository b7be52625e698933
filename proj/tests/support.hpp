#pragma once
// Generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "ncd/symbol.hpp"

namespace testing_support {

using ncd::FreePolynomial;
using ncd::Rational;
using ncd::Word;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    Rational positive_rational(int max_num = 9, int max_den = 6)
    {
        Rational r(uniform(1, max_num), uniform(1, max_den));
        r.canonicalize();
        return r;
    }

    Word word(int n, int len)
    {
        std::vector<int> letters;
        for (int i = 0; i < len; ++i) {
            letters.push_back(uniform(1, n));
        }
        return Word(std::move(letters));
    }

    // A regular positive polynomial symbol in n variables of degree <= max_degree.
    FreePolynomial symbol(int n, int max_degree, int extra_terms = 3)
    {
        ncd::TermMap terms;
        for (int i = 1; i <= n; ++i) {
            terms[Word{i}] = positive_rational();
        }
        for (int t = 0; t < extra_terms && max_degree >= 2; ++t) {
            terms[word(n, uniform(2, max_degree))] = positive_rational();
        }
        return FreePolynomial(n, std::move(terms));
    }

    std::vector<int> permutation(int n)
    {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 1);
        std::shuffle(p.begin(), p.end(), rng_);
        return p;
    }

    std::vector<Rational> scalings(int n)
    {
        std::vector<Rational> l;
        for (int i = 0; i < n; ++i) {
            l.push_back(positive_rational(7, 5));
        }
        return l;
    }

    std::complex<double> complex_gauss()
    {
        std::normal_distribution<double> g;
        return {g(rng_), g(rng_)};
    }

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// g(lambda_1 X_sigma(1), ..., lambda_n X_sigma(n)) expanded term by term.
inline FreePolynomial oracle_substitute(const FreePolynomial &g, const std::vector<int> &sigma,
                                        const std::vector<Rational> &lambda)
{
    ncd::TermMap out;
    for (const auto &[w, c] : g.terms()) {
        std::vector<int> mapped;
        Rational coeff = c;
        for (int l : w) {
            mapped.push_back(sigma[static_cast<std::size_t>(l - 1)]);
            coeff *= lambda[static_cast<std::size_t>(l - 1)];
        }
        out[Word(mapped)] += coeff;
    }
    return FreePolynomial(g.n(), std::move(out));
}

// Exhaustive search over permutations; the scalings are forced by the
// degree-one coefficients.
inline bool oracle_equivalent(const FreePolynomial &f, const FreePolynomial &g)
{
    if (f.n() != g.n()) {
        return false;
    }
    const int n = f.n();
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
        std::vector<Rational> lambda;
        for (int i = 1; i <= n; ++i) {
            Rational num = f.coefficient(Word{sigma[static_cast<std::size_t>(i - 1)]});
            Rational den = g.coefficient(Word{i});
            lambda.push_back(Rational(num / den));
        }
        if (oracle_substitute(g, sigma, lambda) == f) {
            return true;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

// b_alpha as the sum over all factorizations alpha = gamma_1 ... gamma_m of
// prod a_{gamma_j}.
inline Rational oracle_weight(const FreePolynomial &f, const Word &alpha)
{
    std::map<std::size_t, Rational> memo;
    std::function<Rational(std::size_t)> from = [&](std::size_t start) -> Rational {
        if (start == alpha.size()) {
            return Rational(1);
        }
        if (auto it = memo.find(start); it != memo.end()) {
            return it->second;
        }
        Rational total = 0;
        for (std::size_t end = start + 1; end <= alpha.size(); ++end) {
            std::vector<int> piece(alpha.letters().begin() + static_cast<long>(start),
                                   alpha.letters().begin() + static_cast<long>(end));
            Rational a = f.coefficient(Word(piece));
            if (a != 0) {
                total += a * from(end);
            }
        }
        memo[start] = total;
        return total;
    };
    return from(0);
}

// Connected components of the bipartite support graph rows <-> columns,
// reported as (row block, column block) pairs sorted by smallest row.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> oracle_components(const Eigen::MatrixXcd &u,
                                                                                     double eps)
{
    const int n = static_cast<int>(u.rows());
    std::vector<int> parent(static_cast<std::size_t>(2 * n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        }
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (std::abs(u(i, j)) > eps) {
                parent[static_cast<std::size_t>(find(i))] = find(n + j);
            }
        }
    }
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> groups;
    for (int i = 0; i < n; ++i) {
        groups[find(i)].first.push_back(i + 1);
    }
    for (int j = 0; j < n; ++j) {
        groups[find(n + j)].second.push_back(j + 1);
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (auto &[root, g] : groups) {
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Block-diagonal unitary with random block sizes in 1..4, conjugated by
// random row and column permutations.
inline Eigen::MatrixXcd random_block_unitary(Gen &gen, int blocks)
{
    std::vector<int> sizes;
    int n = 0;
    for (int b = 0; b < blocks; ++b) {
        sizes.push_back(gen.uniform(1, 4));
        n += sizes.back();
    }
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    int offset = 0;
    for (int s : sizes) {
        Eigen::MatrixXcd a(s, s);
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < s; ++j) {
                a(i, j) = gen.complex_gauss();
            }
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
        u.block(offset, offset, s, s) = qr.householderQ();
        offset += s;
    }
    std::vector<int> rows = gen.permutation(n);
    std::vector<int> cols = gen.permutation(n);
    Eigen::MatrixXcd out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(rows[static_cast<std::size_t>(i)] - 1, cols[static_cast<std::size_t>(j)] - 1) = u(i, j);
        }
    }
    return out;
}

} // namespace testing_support
