// Randomized invariants over hand-rolled generators.
#include <doctest.h>

#include <cmath>

#include "ncd/equivalence.hpp"
#include "ncd/fock.hpp"
#include "ncd/geometry.hpp"
#include "ncd/matrixlevel.hpp"
#include "support.hpp"

using namespace ncd;
using testing_support::Gen;

namespace {

EquivalenceCertificate random_certificate(Gen &gen, int n) { return {gen.permutation(n), gen.scalings(n)}; }

} // namespace

TEST_CASE("substitution is a group action")
{
    Gen gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = gen.uniform(1, 4);
        FreePolynomial f = gen.symbol(n, 3);
        EquivalenceCertificate a = random_certificate(gen, n);
        EquivalenceCertificate b = random_certificate(gen, n);
        CHECK(apply_certificate(f, a) == testing_support::oracle_substitute(f, a.sigma, a.lambda));
        CHECK(apply_certificate(apply_certificate(f, a), b) == apply_certificate(f, a.then(b)));
        CHECK(apply_certificate(apply_certificate(f, a), a.inverse()) == f);
    }
}

TEST_CASE("normalization is idempotent")
{
    Gen gen(102);
    for (int trial = 0; trial < 100; ++trial) {
        FreePolynomial f = gen.symbol(gen.uniform(1, 4), 3);
        Normalization once = normalize_degree_one(f);
        Normalization twice = normalize_degree_one(once.symbol);
        CHECK(twice.symbol == once.symbol);
        for (const Rational &l : twice.lambda) {
            CHECK(l == 1);
        }
    }
}

TEST_CASE("text and JSON round trips")
{
    Gen gen(103);
    for (int trial = 0; trial < 100; ++trial) {
        FreePolynomial f = gen.symbol(gen.uniform(1, 4), 4, 5);
        CHECK(parse_symbol(to_text(f), f.n()) == f);
        CHECK(symbol_from_json(nlohmann::json::parse(to_json(f).dump())) == f);
    }
}

TEST_CASE("collapse is equivariant")
{
    Gen gen(104);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = gen.uniform(1, 3);
        FreePolynomial f = gen.symbol(n, 3);
        EquivalenceCertificate c = random_certificate(gen, n);
        CollapsedPolynomial lhs = collapse(apply_certificate(f, c));
        CollapsedPolynomial rhs(n);
        const CollapsedPolynomial original = collapse(f);
        for (const auto &[e, coeff] : original.terms()) {
            MultiDegree moved(static_cast<std::size_t>(n), 0);
            Rational scaled = coeff;
            for (int i = 0; i < n; ++i) {
                moved[static_cast<std::size_t>(c.sigma[static_cast<std::size_t>(i)] - 1)] = e[static_cast<std::size_t>(i)];
                for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) {
                    scaled *= c.lambda[static_cast<std::size_t>(i)];
                }
            }
            rhs.add_term(moved, scaled);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("equivalence decisions match the exhaustive oracle")
{
    Gen gen(105);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = gen.uniform(1, 4);
        FreePolynomial f = gen.symbol(n, 3);
        FreePolynomial g = gen.coin() ? apply_certificate(f, random_certificate(gen, n)) : gen.symbol(n, 3);
        const bool expected = testing_support::oracle_equivalent(f, g);
        auto cert = decide_equivalence(f, g);
        CHECK(cert.has_value() == expected);
        if (cert) {
            CHECK(apply_certificate(g, *cert) == f);
        }
        CHECK((canonical_form(f).table == canonical_form(g).table) == expected);
        // Symmetry of the relation.
        CHECK(decide_equivalence(g, f).has_value() == expected);
    }
}

TEST_CASE("symmetry groups are closed subgroups")
{
    Gen gen(106);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = gen.uniform(1, 4);
        // Symmetric seeds make nontrivial groups likely.
        FreePolynomial f = gen.coin() ? gen.symbol(n, 2, 1) : parse_symbol("X1 + X2 + X3 + X1*X2 + X2*X3 + X3*X1");
        auto group = symmetry_group(f);
        REQUIRE(!group.empty());
        CHECK(group.front() == EquivalenceCertificate::identity(f.n()));
        for (const auto &a : group) {
            CHECK(apply_certificate(f, a) == f);
            CHECK(std::find(group.begin(), group.end(), a.inverse()) != group.end());
            for (const auto &b : group) {
                CHECK(std::find(group.begin(), group.end(), a.then(b)) != group.end());
            }
        }
    }
}

TEST_CASE("weights are submultiplicative and norms follow them")
{
    Gen gen(107);
    for (int trial = 0; trial < 15; ++trial) {
        FreePolynomial f = gen.symbol(gen.uniform(1, 3), 3);
        const int L = 5;
        ShiftFamily fam = build_shifts(f, L);
        const auto &basis = fam.weights.space.basis();
        for (const Word &a : basis) {
            for (const Word &b : basis) {
                if (a.size() + b.size() <= static_cast<std::size_t>(L)) {
                    CHECK(fam.weights.weight(a) * fam.weights.weight(b) <= fam.weights.weight(a + b));
                }
            }
            if (!a.empty() && a.size() < static_cast<std::size_t>(L)) {
                double norm = shift_norm(fam, a);
                CHECK(std::abs(norm * norm - 1.0 / fam.weights.weight(a).get_d()) <= 1e-9);
            }
        }
        CHECK(verify_shift_membership(fam, f, 1e-9).pass);
        // Each column of W_i has at most one nonzero entry.
        for (const auto &w : fam.shifts) {
            for (Eigen::Index c = 0; c < w.outerSize(); ++c) {
                CHECK(w.innerVector(c).nonZeros() <= 1);
            }
        }
    }
}

TEST_CASE("Reinhardt phase invariance")
{
    Gen gen(108);
    for (int trial = 0; trial < 50; ++trial) {
        FreePolynomial f = gen.symbol(gen.uniform(1, 3), 3);
        std::vector<std::complex<double>> z;
        std::vector<std::complex<double>> rotated;
        std::vector<ComplexMatrix> t;
        std::vector<ComplexMatrix> trot;
        for (int i = 0; i < f.n(); ++i) {
            z.push_back(gen.complex_gauss() * 0.3);
            double theta = gen.real(0, 6.28);
            rotated.push_back(z.back() * std::polar(1.0, theta));
            ComplexMatrix m = random_tuple(1, 2, static_cast<std::uint64_t>(trial * 7 + i))[0] * 0.3;
            t.push_back(m);
            trot.push_back(m * std::polar(1.0, theta));
        }
        CHECK(scalar_membership(f, z).value == doctest::Approx(scalar_membership(f, rotated).value).epsilon(1e-12));
        CHECK(matrix_membership(f, MatrixTuple(t)).max_eigenvalue ==
              doctest::Approx(matrix_membership(f, MatrixTuple(trot)).max_eigenvalue).epsilon(1e-10));
    }
}

TEST_CASE("sphericality is invariant under equivalence")
{
    Gen gen(109);
    std::vector<FreePolynomial> seeds{parse_symbol("1/2 X1 + 1/2 X2 + 1/2 X1*X1 + 1/2 X2*X2 + X1*X2"),
                                      parse_symbol("X1 + X2 + X3"), parse_symbol("X1 + X2 + 3 X1*X2")};
    for (int trial = 0; trial < 30; ++trial) {
        FreePolynomial f = trial < 15 ? seeds[static_cast<std::size_t>(trial % 3)] : gen.symbol(gen.uniform(2, 3), 3);
        FreePolynomial g = apply_certificate(f, random_certificate(gen, f.n()));
        CHECK(decide_spherical(f).spherical == decide_spherical(g).spherical);
    }
}

TEST_CASE("boundary points are unique along rays")
{
    Gen gen(110);
    for (int trial = 0; trial < 40; ++trial) {
        FreePolynomial f = gen.symbol(gen.uniform(1, 3), 3);
        std::vector<std::complex<double>> d;
        for (int i = 0; i < f.n(); ++i) {
            d.push_back(gen.complex_gauss());
        }
        auto z = boundary_point_on_ray(f, d);
        CHECK(std::abs(scalar_membership(f, z).value - 1.0) <= 1e-12);
        double prev = -1.0;
        for (double s = 0.1; s < 2.0; s += 0.1) {
            std::vector<std::complex<double>> p;
            for (auto x : z) {
                p.push_back(x * s);
            }
            double v = scalar_membership(f, p).value;
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("dual maps compose")
{
    Gen gen(111);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = gen.uniform(1, 3);
        ComplexMatrix a(n, n);
        ComplexMatrix b(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a(i, j) = gen.complex_gauss();
                b(i, j) = gen.complex_gauss();
            }
        }
        MatrixTuple t = random_tuple(n, gen.uniform(1, 3), static_cast<std::uint64_t>(trial));
        MatrixTuple lhs = dual_map_apply(a * b, t);
        MatrixTuple rhs = dual_map_apply(a, dual_map_apply(b, t));
        for (int i = 0; i < n; ++i) {
            CHECK((lhs[static_cast<std::size_t>(i)] - rhs[static_cast<std::size_t>(i)]).norm() < 1e-10);
        }
    }
}

TEST_CASE("forced sets grow with levels")
{
    Gen gen(112);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = gen.uniform(1, 3);
        const int degree = gen.uniform(2, 3);
        FreeMapCoefficients f(n, degree);
        LinearityReport r = cartan_forced_zeros(f, degree, static_cast<std::uint64_t>(trial));
        for (std::size_t k = 1; k < r.forced_after_level.size(); ++k) {
            CHECK(r.forced_after_level[k] >= r.forced_after_level[k - 1]);
        }
        CHECK(r.complete);
    }
}
