#include "ncd/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ncd/errors.hpp"

namespace ncd {

EquivalenceCertificate EquivalenceCertificate::identity(int n)
{
    EquivalenceCertificate c;
    c.sigma.resize(static_cast<std::size_t>(n));
    std::iota(c.sigma.begin(), c.sigma.end(), 1);
    c.lambda.assign(static_cast<std::size_t>(n), Rational(1));
    return c;
}

EquivalenceCertificate EquivalenceCertificate::then(const EquivalenceCertificate &next) const
{
    if (next.n() != n()) {
        throw InvalidInput("cannot compose certificates of different sizes");
    }
    EquivalenceCertificate out;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        auto mid = static_cast<std::size_t>(sigma[i] - 1);
        out.sigma.push_back(next.sigma[mid]);
        Rational l = lambda[i] * next.lambda[mid];
        l.canonicalize();
        out.lambda.push_back(l);
    }
    return out;
}

EquivalenceCertificate EquivalenceCertificate::inverse() const
{
    EquivalenceCertificate out;
    out.sigma.resize(sigma.size());
    out.lambda.resize(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        auto j = static_cast<std::size_t>(sigma[i] - 1);
        out.sigma[j] = static_cast<int>(i) + 1;
        Rational l = Rational(1) / lambda[i];
        l.canonicalize();
        out.lambda[j] = l;
    }
    return out;
}

FreePolynomial apply_certificate(const FreePolynomial &g, const EquivalenceCertificate &cert)
{
    return apply_permutation_rescaling(g, cert.sigma, cert.lambda);
}

int compare_coefficient_tables(const FreePolynomial &a, const FreePolynomial &b)
{
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const auto ea = a.terms().end();
    const auto eb = b.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            // a has a coefficient where b has zero.
            return sgn(ia->second) < 0 ? -1 : 1;
        }
        if (ia == ea || ib->first < ia->first) {
            return sgn(ib->second) < 0 ? 1 : -1;
        }
        if (int c = cmp(ia->second, ib->second); c != 0) {
            return c < 0 ? -1 : 1;
        }
        ++ia;
        ++ib;
    }
    return 0;
}

namespace {

constexpr int kMaxExhaustiveVariables = 9;

std::vector<int> identity_permutation(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    return p;
}

// For each variable v: the sorted multiset of (shape, coefficient) over the
// terms that contain v. The shape replaces v by 0 and the other letters by
// their order of first appearance, so the signature of v in f equals the
// signature of sigma(v) in the permuted symbol.
using Signature = std::vector<std::pair<std::vector<int>, Rational>>;

std::vector<Signature> variable_signatures(const FreePolynomial &f)
{
    std::vector<Signature> sig(static_cast<std::size_t>(f.n()));
    for (const auto &[w, c] : f.terms()) {
        std::set<int> present(w.begin(), w.end());
        for (int v : present) {
            std::vector<int> relabel(static_cast<std::size_t>(f.n()) + 1, -1);
            relabel[static_cast<std::size_t>(v)] = 0;
            int next = 1;
            std::vector<int> shape;
            shape.reserve(w.size());
            for (int l : w) {
                auto &r = relabel[static_cast<std::size_t>(l)];
                if (r < 0) {
                    r = next++;
                }
                shape.push_back(r);
            }
            sig[static_cast<std::size_t>(v - 1)].emplace_back(std::move(shape), c);
        }
    }
    for (auto &s : sig) {
        std::sort(s.begin(), s.end());
    }
    return sig;
}

// Permutations pi with apply(from, pi, 1) == to, for degree-one-normalized
// symbols. Backtracking restricted to signature-compatible images.
std::vector<std::vector<int>> matching_permutations(const FreePolynomial &from, const FreePolynomial &to,
                                                    bool first_only)
{
    const int n = from.n();
    std::vector<std::vector<int>> found;
    if (from.terms().size() != to.terms().size()) {
        return found;
    }
    auto sig_from = variable_signatures(from);
    auto sig_to = variable_signatures(to);
    std::vector<int> pi(static_cast<std::size_t>(n), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));

    auto search = [&](auto &self, int i) -> bool {
        if (i == n) {
            if (apply_permutation_rescaling(from, pi, ones) == to) {
                found.push_back(pi);
                return first_only;
            }
            return false;
        }
        for (int j = 1; j <= n; ++j) {
            if (used[static_cast<std::size_t>(j - 1)] ||
                sig_from[static_cast<std::size_t>(i)] != sig_to[static_cast<std::size_t>(j - 1)]) {
                continue;
            }
            used[static_cast<std::size_t>(j - 1)] = true;
            pi[static_cast<std::size_t>(i)] = j;
            if (self(self, i + 1)) {
                return true;
            }
            used[static_cast<std::size_t>(j - 1)] = false;
        }
        return false;
    };
    search(search, 0);
    return found;
}

// Certificate for apply(g, cert) == f given a permutation pi matching the
// normalized forms: lambda_i = a^f_{pi(i)} / a^g_i.
EquivalenceCertificate certificate_from_permutation(const FreePolynomial &f, const FreePolynomial &g,
                                                    const std::vector<int> &pi)
{
    EquivalenceCertificate c;
    c.sigma = pi;
    for (int i = 1; i <= g.n(); ++i) {
        Rational l = f.coefficient(Word{pi[static_cast<std::size_t>(i - 1)]}) / g.coefficient(Word{i});
        l.canonicalize();
        c.lambda.push_back(l);
    }
    if (apply_certificate(g, c) != f) {
        throw InternalError("equivalence certificate failed exact verification");
    }
    return c;
}

} // namespace

CanonicalForm canonical_form(const FreePolynomial &f)
{
    Normalization norm = normalize_degree_one(f);
    const int n = f.n();
    if (n > kMaxExhaustiveVariables) {
        throw InvalidInput("canonical form is limited to " + std::to_string(kMaxExhaustiveVariables) + " variables");
    }
    std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
    std::vector<int> pi = identity_permutation(n);
    std::vector<int> best_pi = pi;
    FreePolynomial best = norm.symbol;
    while (std::next_permutation(pi.begin(), pi.end())) {
        FreePolynomial candidate = apply_permutation_rescaling(norm.symbol, pi, ones);
        if (compare_coefficient_tables(candidate, best) < 0) {
            best = std::move(candidate);
            best_pi = pi;
        }
    }
    EquivalenceCertificate to_canonical{best_pi, norm.lambda};
    return {std::move(best), std::move(to_canonical)};
}

std::optional<EquivalenceCertificate> decide_equivalence(const FreePolynomial &f, const FreePolynomial &g)
{
    require_regular_positive(f);
    require_regular_positive(g);
    if (f.n() != g.n()) {
        return std::nullopt;
    }
    Normalization nf = normalize_degree_one(f);
    Normalization ng = normalize_degree_one(g);
    auto perms = matching_permutations(ng.symbol, nf.symbol, true);
    if (perms.empty()) {
        return std::nullopt;
    }
    return certificate_from_permutation(f, g, perms.front());
}

std::vector<EquivalenceCertificate> symmetry_group(const FreePolynomial &f)
{
    Normalization nf = normalize_degree_one(f);
    auto perms = matching_permutations(nf.symbol, nf.symbol, false);
    std::vector<EquivalenceCertificate> group;
    for (const auto &pi : perms) {
        group.push_back(certificate_from_permutation(f, f, pi));
    }
    auto id = EquivalenceCertificate::identity(f.n());
    auto it = std::find(group.begin(), group.end(), id);
    if (it == group.end()) {
        throw InternalError("symmetry group search lost the identity");
    }
    std::iter_swap(group.begin(), it);
    return group;
}

SupportPartition support_partition(const Eigen::MatrixXcd &u, double eps)
{
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw InvalidInput("support partition needs a nonempty square matrix");
    }
    if (!(eps >= 0.0)) {
        throw InvalidInput("threshold must be nonnegative");
    }
    const auto n = static_cast<int>(u.rows());
    auto nonzero = [&](int i, int j) { return std::abs(u(i, j)) > eps; };

    // s(A) = {j : exists i in A, u_ij != 0}; s_inv(A) = {j : exists i in A, u_ji != 0}.
    auto s_forward = [&](const std::vector<bool> &a) {
        std::vector<bool> out(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i) {
            if (!a[static_cast<std::size_t>(i)]) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                if (nonzero(i, j)) {
                    out[static_cast<std::size_t>(j)] = true;
                }
            }
        }
        return out;
    };
    auto s_inverse = [&](const std::vector<bool> &a) {
        std::vector<bool> out(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i) {
            if (!a[static_cast<std::size_t>(i)]) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                if (nonzero(j, i)) {
                    out[static_cast<std::size_t>(j)] = true;
                }
            }
        }
        return out;
    };
    auto to_list = [n](const std::vector<bool> &a) {
        std::vector<int> out;
        for (int i = 0; i < n; ++i) {
            if (a[static_cast<std::size_t>(i)]) {
                out.push_back(i + 1);
            }
        }
        return out;
    };

    SupportPartition result;
    result.eps = eps;
    Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n);
    result.unitarity_defect = defect.cwiseAbs().maxCoeff();
    result.unitary_certified = result.unitarity_defect <= kUnitaryTolerance;

    std::vector<bool> assigned(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        if (assigned[static_cast<std::size_t>(i)]) {
            continue;
        }
        std::vector<bool> a(static_cast<std::size_t>(n), false);
        a[static_cast<std::size_t>(i)] = true;
        while (true) {
            std::vector<bool> next = s_inverse(s_forward(a));
            // i stays in the closure only if row i has a nonzero entry.
            next[static_cast<std::size_t>(i)] = true;
            if (next == a) {
                break;
            }
            a = std::move(next);
        }
        std::vector<bool> psi = s_forward(a);
        if (s_inverse(psi) != a && !(to_list(psi).empty())) {
            throw InternalError("support closure is not a fixed point");
        }
        for (int k = 0; k < n; ++k) {
            if (a[static_cast<std::size_t>(k)]) {
                if (assigned[static_cast<std::size_t>(k)]) {
                    throw InternalError("support closures overlap");
                }
                assigned[static_cast<std::size_t>(k)] = true;
            }
        }
        result.sigma_blocks.push_back(to_list(a));
        result.psi_blocks.push_back(to_list(psi));
    }

    if (result.unitary_certified) {
        for (std::size_t b = 0; b < result.sigma_blocks.size(); ++b) {
            if (result.sigma_blocks[b].size() != result.psi_blocks[b].size()) {
                throw InternalError("unitary with |sigma_i| != |psi_i|");
            }
        }
    }
    return result;
}

Eigen::MatrixXcd certificate_matrix(const EquivalenceCertificate &cert)
{
    const int n = cert.n();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, cert.sigma[static_cast<std::size_t>(i)] - 1) = to_double(cert.lambda[static_cast<std::size_t>(i)]);
    }
    return m;
}

Eigen::MatrixXcd transport_matrix(const EquivalenceCertificate &cert)
{
    const int n = cert.n();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(cert.sigma[static_cast<std::size_t>(i)] - 1, i) =
            1.0 / std::sqrt(to_double(cert.lambda[static_cast<std::size_t>(i)]));
    }
    return m;
}

nlohmann::json to_json(const EquivalenceCertificate &cert)
{
    nlohmann::json lambda = nlohmann::json::array();
    for (const auto &l : cert.lambda) {
        lambda.push_back(to_string(l));
    }
    return {{"sigma", cert.sigma}, {"lambda", lambda}};
}

EquivalenceCertificate certificate_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("sigma") || !j.contains("lambda")) {
        throw InvalidInput("certificate JSON needs \"sigma\" and \"lambda\"");
    }
    EquivalenceCertificate c;
    for (const auto &s : j["sigma"]) {
        c.sigma.push_back(s.get<int>());
    }
    for (const auto &l : j["lambda"]) {
        c.lambda.push_back(l.is_string() ? parse_rational(l.get<std::string>()) : parse_rational(l.dump()));
    }
    require_permutation(c.sigma, static_cast<int>(c.sigma.size()));
    if (c.lambda.size() != c.sigma.size()) {
        throw InvalidInput("certificate sigma and lambda sizes differ");
    }
    for (const auto &l : c.lambda) {
        if (l <= 0) {
            throw InvalidInput("certificate lambda entries must be positive");
        }
    }
    return c;
}

} // namespace ncd
