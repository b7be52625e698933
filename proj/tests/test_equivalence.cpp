#include <doctest.h>

#include <cmath>

#include "ncd/equivalence.hpp"
#include "ncd/errors.hpp"
#include "support.hpp"

using namespace ncd;
using testing_support::Gen;

namespace {

FreePolynomial P(const char *text) { return parse_symbol(text); }

} // namespace

TEST_CASE("decide equivalence on the example triple")
{
    FreePolynomial f = P("X1 + X2 + 3 X1*X2");
    FreePolynomial g = P("2 X1 + X2 + 6 X2*X1");
    FreePolynomial h = P("X1 + 2 X2 + X1*X1");

    auto c = decide_equivalence(f, g);
    REQUIRE(c.has_value());
    CHECK(c->sigma == std::vector<int>{2, 1});
    CHECK(c->lambda == std::vector<Rational>{Rational(1, 2), Rational(1)});
    CHECK(apply_certificate(g, *c) == f);

    CHECK_FALSE(decide_equivalence(f, h).has_value());
    CHECK_FALSE(decide_equivalence(g, h).has_value());

    auto self = decide_equivalence(f, f);
    REQUIRE(self.has_value());
    CHECK(*self == EquivalenceCertificate::identity(2));

    CHECK_FALSE(decide_equivalence(f, P("X1 + X2 + X3")).has_value());
}

TEST_CASE("canonical forms")
{
    CanonicalForm cf = canonical_form(P("X1 + X2 + 3 X1*X2"));
    CHECK(cf.table == P("X1 + X2 + 3 X2*X1"));
    CHECK(cf.witness() == std::vector<int>{2, 1});
    CHECK(apply_certificate(P("X1 + X2 + 3 X1*X2"), cf.to_canonical) == cf.table);

    CHECK(canonical_form(P("2 X1 + X2 + 6 X2*X1")).table == cf.table);

    CanonicalForm disk = canonical_form(P("X1 + X2 + X3"));
    CHECK(disk.table == P("X1 + X2 + X3"));
    CHECK(disk.witness() == std::vector<int>{1, 2, 3});

    CHECK(compare_coefficient_tables(P("X1 + X2 + 3 X2*X1"), P("X1 + X2 + 3 X1*X2")) < 0);
}

TEST_CASE("symmetry groups")
{
    CHECK(symmetry_group(P("X1 + X2")).size() == 2);
    auto trivial = symmetry_group(P("X1 + X2 + 3 X1*X2"));
    REQUIRE(trivial.size() == 1);
    CHECK(trivial.front() == EquivalenceCertificate::identity(2));
    auto sym = symmetry_group(P("1/2 X1 + 1/2 X2 + 1/2 X1*X2 + 1/2 X2*X1"));
    CHECK(sym.size() == 2);
    CHECK(sym.front() == EquivalenceCertificate::identity(2));

    // Rescaled symmetry: swapping needs lambda = (1/2, 2).
    auto scaled = symmetry_group(P("X1 + 4 X2"));
    REQUIRE(scaled.size() == 2);
    FreePolynomial f = P("X1 + 4 X2");
    for (const auto &c : scaled) {
        CHECK(apply_certificate(f, c) == f);
    }
}

TEST_CASE("certificate algebra")
{
    EquivalenceCertificate a{{2, 1}, {Rational(1, 2), Rational(3)}};
    EquivalenceCertificate b{{1, 2}, {Rational(5), Rational(1, 7)}};
    FreePolynomial f = P("X1 + X2 + 3 X1*X2 + X2*X2*X1");
    CHECK(apply_certificate(apply_certificate(f, a), b) == apply_certificate(f, a.then(b)));
    CHECK(apply_certificate(apply_certificate(f, a), a.inverse()) == f);
    CHECK(a.then(a.inverse()) == EquivalenceCertificate::identity(2));

    nlohmann::json j = to_json(a);
    CHECK(j.dump() == R"({"lambda":["1/2","3"],"sigma":[2,1]})");
    CHECK(certificate_from_json(j) == a);
    CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"sigma", {1, 1}}, {"lambda", {"1", "1"}}}), InvalidInput);
}

TEST_CASE("certificate and transport matrices")
{
    CHECK(certificate_matrix(EquivalenceCertificate::identity(2)).isIdentity());
    Eigen::MatrixXcd m = certificate_matrix({{2, 1}, {Rational(1, 2), Rational(1)}});
    Eigen::MatrixXcd expected(2, 2);
    expected << 0.0, 0.5, 1.0, 0.0;
    CHECK(m.isApprox(expected));

    Eigen::MatrixXcd cyc = certificate_matrix({{2, 3, 1}, {1, 1, 1}});
    CHECK(std::abs(cyc(0, 1) - 1.0) == 0.0);
    CHECK(std::abs(cyc(1, 2) - 1.0) == 0.0);
    CHECK(std::abs(cyc(2, 0) - 1.0) == 0.0);
    CHECK((cyc * cyc.adjoint()).isIdentity());

    Eigen::MatrixXcd t = transport_matrix({{2, 1}, {Rational(1, 4), Rational(1)}});
    CHECK(std::abs(t(1, 0) - 2.0) < 1e-15);
    CHECK(std::abs(t(0, 1) - 1.0) < 1e-15);
}

TEST_CASE("support partition examples")
{
    auto p = support_partition(Eigen::MatrixXcd::Identity(3, 3), 0.0);
    CHECK(p.sigma_blocks == std::vector<std::vector<int>>{{1}, {2}, {3}});
    CHECK(p.psi_blocks == p.sigma_blocks);
    CHECK(p.unitary_certified);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    const double r = 1.0 / std::sqrt(2.0);
    h(0, 0) = r;
    h(0, 1) = r;
    h(1, 0) = r;
    h(1, 1) = -r;
    h(2, 2) = 1.0;
    CHECK(support_partition(h).sigma_blocks == std::vector<std::vector<int>>{{1, 2}, {3}});

    Eigen::MatrixXcd dft(3, 3);
    const double pi = std::acos(-1.0);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            dft(j, k) = std::polar(1.0 / std::sqrt(3.0), 2.0 * pi * j * k / 3.0);
        }
    }
    CHECK(support_partition(dft).sigma_blocks == std::vector<std::vector<int>>{{1, 2, 3}});

    // A permutation matrix sends each row block to a different column block.
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(2, 2);
    perm(0, 1) = 1.0;
    perm(1, 0) = 1.0;
    auto pp = support_partition(perm);
    CHECK(pp.sigma_blocks == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(pp.psi_blocks == std::vector<std::vector<int>>{{2}, {1}});

    CHECK_THROWS_AS(support_partition(Eigen::MatrixXcd::Zero(2, 3)), InvalidInput);
}

TEST_CASE("support partition matches union-find on random block unitaries")
{
    Gen gen(7);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::MatrixXcd u = testing_support::random_block_unitary(gen, gen.uniform(1, 4));
        auto p = support_partition(u);
        auto oracle = testing_support::oracle_components(u, kSupportEps);
        REQUIRE(p.sigma_blocks.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(p.sigma_blocks[i] == oracle[i].first);
            CHECK(p.psi_blocks[i] == oracle[i].second);
            CHECK(p.sigma_blocks[i].size() == p.psi_blocks[i].size());
        }
    }
}
