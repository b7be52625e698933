#include <doctest.h>

#include <cmath>

#include "ncd/errors.hpp"
#include "ncd/fock.hpp"
#include "support.hpp"

using namespace ncd;
using testing_support::Gen;

namespace {

FreePolynomial P(const char *text, std::optional<int> n = std::nullopt) { return parse_symbol(text, n); }

double entry(const Eigen::SparseMatrix<double> &m, std::size_t r, std::size_t c)
{
    return m.coeff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

} // namespace

TEST_CASE("truncated Fock dimensions")
{
    CHECK(TruncatedFock(2, 3).dim() == 15);
    CHECK(TruncatedFock(1, 4).dim() == 5);
    CHECK(TruncatedFock(3, 2).basis()[4] == Word{1, 1});
    CHECK_THROWS_AS(compute_weights(P("X1 + X2"), 0), InvalidInput);
    CHECK_THROWS_AS(compute_weights(P("X1 + X2"), 20), InvalidInput);
}

TEST_CASE("weights of the example symbols")
{
    WeightTable disk = compute_weights(P("X1 + X2 + X3"), 3);
    for (const Rational &b : disk.weights) {
        CHECK(b == 1);
    }
    WeightTable two = compute_weights(P("2 X1", 1), 5);
    for (int k = 0; k <= 5; ++k) {
        CHECK(two.weights[static_cast<std::size_t>(k)] == Rational(1 << k));
    }
    WeightTable f = compute_weights(P("X1 + X2 + 3 X1*X2"), 2);
    CHECK(f.weight(Word{1}) == 1);
    CHECK(f.weight(Word{2}) == 1);
    CHECK(f.weight(Word{1, 1}) == 1);
    CHECK(f.weight(Word{2, 1}) == 1);
    CHECK(f.weight(Word{1, 2}) == 4);

    nlohmann::json j = to_json(f);
    CHECK(j[4]["word"] == std::vector<int>{1, 2});
    CHECK(j[4]["b"] == "4");
}

TEST_CASE("weights agree with the factorization-sum oracle")
{
    Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        FreePolynomial f = gen.symbol(gen.uniform(1, 3), 3);
        WeightTable t = compute_weights(f, 4);
        for (const Word &w : t.space.basis()) {
            CHECK(t.weight(w) == testing_support::oracle_weight(f, w));
        }
    }
}

TEST_CASE("shift matrices")
{
    ShiftFamily x = build_shifts(P("X1", 1), 2);
    CHECK(entry(x.shifts[0], 1, 0) == 1.0);
    CHECK(entry(x.shifts[0], 2, 1) == 1.0);
    CHECK(x.shifts[0].nonZeros() == 2);

    ShiftFamily two = build_shifts(P("2 X1", 1), 2);
    CHECK(entry(two.shifts[0], 1, 0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(entry(two.shifts[0], 2, 1) == doctest::Approx(std::sqrt(0.5)));

    ShiftFamily disk = build_shifts(P("X1 + X2"), 1);
    CHECK(entry(disk.shifts[0], 1, 0) == 1.0);
    CHECK(entry(disk.shifts[1], 2, 0) == 1.0);
    CHECK(disk.shifts[0].nonZeros() == 1);

    std::string triplets = to_triplets(disk.shifts[1]);
    CHECK(triplets.find("2 0 1") != std::string::npos);
}

TEST_CASE("shift norms")
{
    CHECK(shift_norm(P("X1 + X2"), Word{1, 2, 1}, 3) == doctest::Approx(1.0));
    CHECK(shift_norm(P("2 X1", 1), Word{1, 1}, 2) == doctest::Approx(0.5));
    CHECK(shift_norm(P("X1 + X2 + 3 X1*X2"), Word{1, 2}, 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(shift_norm(P("X1 + X2"), Word{1, 2, 1}, 2), InvalidInput);
}

TEST_CASE("shift membership")
{
    auto disk = verify_shift_membership(P("X1 + X2"), 3, 1e-9);
    CHECK(disk.pass);
    CHECK(disk.max_eigenvalue == doctest::Approx(1.0));
    CHECK(verify_shift_membership(P("2 X1", 1), 4, 1e-9).pass);
    CHECK(verify_shift_membership(P("X1 + X2 + 3 X1*X2"), 4, 1e-9).pass);
}

TEST_CASE("Pythagorean identity")
{
    std::vector<Word> ab{{1}, {2}};
    std::vector<std::complex<double>> ones{1.0, 1.0};
    PythagorasResult disk = pythagoras_residual(P("X1 + X2"), ab, ones, 2);
    CHECK(disk.residual == doctest::Approx(0.0));
    CHECK(disk.norm_squared == doctest::Approx(2.0));

    std::vector<Word> single{{1, 2}};
    std::vector<std::complex<double>> c{{0.3, -2.0}};
    CHECK(pythagoras_residual(P("X1 + X2 + 3 X1*X2"), single, c, 3).residual < 1e-12);

    std::vector<Word> cross{{1, 2}, {2, 1}};
    PythagorasResult f = pythagoras_residual(P("X1 + X2 + 3 X1*X2"), cross, ones, 2);
    CHECK(f.residual < 1e-12);
    CHECK(f.norm_squared == doctest::Approx(1.25));

    std::vector<Word> mixed{{1}, {1, 2}};
    CHECK_THROWS_AS(pythagoras_residual(P("X1 + X2"), mixed, ones, 2), InvalidInput);
    std::vector<Word> dup{{1}, {1}};
    CHECK_THROWS_AS(pythagoras_residual(P("X1 + X2"), dup, ones, 2), InvalidInput);
}
