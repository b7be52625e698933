#include "ncd/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ncd/errors.hpp"

namespace ncd {

namespace {

// Solves phi(r) = 1 for the unique r > 0, phi strictly increasing with
// phi(0) = 0.
template <class F>
double solve_increasing(F &&phi)
{
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (phi(hi) < 1.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 2000) {
            throw InternalError("boundary bracket diverged");
        }
    }
    for (int iter = 0; iter < 400; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (phi(mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Pick the endpoint whose value is closer to 1.
    return std::abs(phi(lo) - 1.0) <= std::abs(phi(hi) - 1.0) ? lo : hi;
}

template <class T>
CommutativePolynomial<T> restrict_to_hyperplane(const CollapsedPolynomial &p, const std::vector<T> &mu)
{
    const int n = p.variables();
    const int m = n - 1;
    const int degree = p.total_degree();
    // t_n = 1 - t_1 - ... - t_{n-1}
    CommutativePolynomial<T> last = CommutativePolynomial<T>::constant(m, T(1));
    for (int i = 0; i < m; ++i) {
        last -= CommutativePolynomial<T>::variable(m, i);
    }
    std::vector<CommutativePolynomial<T>> last_pow;
    last_pow.push_back(CommutativePolynomial<T>::constant(m, T(1)));
    for (int k = 1; k <= degree; ++k) {
        last_pow.push_back(last_pow.back() * last);
    }

    CommutativePolynomial<T> out = CommutativePolynomial<T>::constant(m, T(-1));
    for (const auto &[e, c] : p.terms()) {
        T coeff;
        if constexpr (std::is_same_v<T, double>) {
            coeff = c.get_d();
        } else {
            coeff = c;
        }
        MultiDegree head(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) {
                coeff *= mu[static_cast<std::size_t>(i)];
            }
            if (i < m) {
                head[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)];
            }
        }
        CommutativePolynomial<T> mono(m);
        mono.add_term(head, coeff);
        out += mono * last_pow[static_cast<std::size_t>(e[static_cast<std::size_t>(n - 1)])];
    }
    return out;
}

std::vector<double> axis_coefficients(const CollapsedPolynomial &p, int var)
{
    std::vector<double> c(static_cast<std::size_t>(p.total_degree()) + 1, 0.0);
    for (const auto &[e, coeff] : p.terms()) {
        bool on_axis = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (static_cast<int>(i) != var && e[i] != 0) {
                on_axis = false;
            }
        }
        if (on_axis) {
            c[static_cast<std::size_t>(e[static_cast<std::size_t>(var)])] += coeff.get_d();
        }
    }
    return c;
}

Rational axis_value_exact(const CollapsedPolynomial &p, int var, const Rational &x)
{
    Rational sum(0);
    for (const auto &[e, coeff] : p.terms()) {
        bool on_axis = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (static_cast<int>(i) != var && e[i] != 0) {
                on_axis = false;
            }
        }
        if (on_axis) {
            Rational term = coeff;
            for (int k = 0; k < e[static_cast<std::size_t>(var)]; ++k) {
                term *= x;
            }
            sum += term;
        }
    }
    return sum;
}

std::vector<double> grid(int from_tenths, int to_tenths)
{
    std::vector<double> g;
    for (int k = from_tenths; k <= to_tenths; ++k) {
        g.push_back(k / 10.0);
    }
    return g;
}

struct TwoVariable {
    CommutativePolynomial<double> p;
    CommutativePolynomial<double> ps;
    CommutativePolynomial<double> pu;

    explicit TwoVariable(CommutativePolynomial<double> poly)
        : p(std::move(poly)), ps(p.derivative(0)), pu(p.derivative(1))
    {
    }

    double residual(double q, double u) const
    {
        const double s = 1.0 - std::pow(u, q);
        const double x[2] = {s, u};
        return ps.evaluate(x) * q * std::pow(u, q - 1.0) - pu.evaluate(x);
    }
};

void require_two_variables(const FreePolynomial &f)
{
    if (f.n() != 2) {
        throw InvalidInput("Thullen analysis needs a two-variable symbol");
    }
}

std::vector<std::complex<double>> to_complex(const std::vector<double> &v)
{
    return {v.begin(), v.end()};
}

} // namespace

ScalarMembership scalar_membership(const FreePolynomial &f, std::span<const std::complex<double>> z)
{
    require_regular_positive(f);
    if (static_cast<int>(z.size()) != f.n()) {
        throw InvalidInput("point has " + std::to_string(z.size()) + " coordinates, symbol has " +
                           std::to_string(f.n()) + " variables");
    }
    double value = 0.0;
    for (const auto &[w, a] : f.terms()) {
        double m = a.get_d();
        for (int l : w) {
            m *= std::norm(z[static_cast<std::size_t>(l - 1)]);
        }
        value += m;
    }
    return {value, value < 1.0};
}

std::vector<std::complex<double>> boundary_point_on_ray(const FreePolynomial &f,
                                                        std::span<const std::complex<double>> direction)
{
    require_regular_positive(f);
    if (static_cast<int>(direction.size()) != f.n()) {
        throw InvalidInput("direction has the wrong number of coordinates");
    }
    if (std::all_of(direction.begin(), direction.end(), [](std::complex<double> c) { return c == 0.0; })) {
        throw InvalidInput("direction must be nonzero");
    }
    // value(rho d) = sum a_alpha r^{|alpha|} prod |d_i|^2 with r = rho^2.
    std::vector<std::pair<int, double>> terms;
    for (const auto &[w, a] : f.terms()) {
        double m = a.get_d();
        for (int l : w) {
            m *= std::norm(direction[static_cast<std::size_t>(l - 1)]);
        }
        terms.emplace_back(static_cast<int>(w.size()), m);
    }
    double r = solve_increasing([&](double x) {
        double v = 0.0;
        for (auto [k, m] : terms) {
            v += m * std::pow(x, k);
        }
        return v;
    });
    const double rho = std::sqrt(r);
    std::vector<std::complex<double>> z;
    for (auto d : direction) {
        z.push_back(rho * d);
    }
    return z;
}

double axis_root(std::span<const double> coeffs_by_degree)
{
    bool increasing = false;
    for (std::size_t k = 1; k < coeffs_by_degree.size(); ++k) {
        if (coeffs_by_degree[k] < 0) {
            throw InvalidInput("axis polynomial has a negative coefficient");
        }
        increasing = increasing || coeffs_by_degree[k] > 0;
    }
    if (!increasing) {
        throw InvalidInput("axis polynomial is constant");
    }
    return solve_increasing([&](double x) {
        double v = 0.0;
        double xp = 1.0;
        for (std::size_t k = 1; k < coeffs_by_degree.size(); ++k) {
            xp *= x;
            v += coeffs_by_degree[k] * xp;
        }
        return v;
    });
}

SphericalityResult decide_spherical(const FreePolynomial &f, double tol)
{
    require_regular_positive(f);
    const CollapsedPolynomial p = collapse(f);
    const int n = f.n();
    SphericalityResult r;
    r.tol = tol;

    std::vector<Rational> exact;
    bool all_rational = true;
    for (int i = 0; i < n; ++i) {
        double mu = axis_root(axis_coefficients(p, i));
        r.mu.push_back(mu);
        Rational guess = approximate_rational(mu, 1000000);
        if (guess > 0 && axis_value_exact(p, i, guess) == 1) {
            exact.push_back(guess);
            r.mu.back() = guess.get_d();
        } else {
            all_rational = false;
        }
    }

    if (all_rational) {
        CommutativePolynomial<Rational> q = restrict_to_hyperplane<Rational>(p, exact);
        Rational residual = q.max_abs_coefficient();
        r.restricted = q.map_coefficients<double>([](const Rational &c) { return c.get_d(); });
        r.restricted_exact = std::move(q);
        r.residual_exact = residual;
        r.residual = residual.get_d();
        r.mu_exact = std::move(exact);
        r.spherical = residual == 0;
    } else {
        r.restricted = restrict_to_hyperplane<double>(p, r.mu);
        r.residual = r.restricted.max_abs_coefficient();
        r.spherical = r.residual <= tol;
    }
    return r;
}

ProductRefutation refute_product(const FreePolynomial &f, std::span<const int> block_a)
{
    Normalization norm = normalize_degree_one(f);
    const int n = f.n();
    std::vector<int> a(block_a.begin(), block_a.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty() || static_cast<int>(a.size()) >= n || a.front() < 1 || a.back() > n) {
        throw InvalidInput("product split must be a proper nonempty subset of 1..n");
    }
    ProductRefutation r;
    r.block_a = a;
    for (int i = 1; i <= n; ++i) {
        if (!std::binary_search(a.begin(), a.end(), i)) {
            r.block_b.push_back(i);
        }
    }
    r.lambda = norm.lambda;

    Restriction sub = restrict_variables(norm.symbol, a);
    std::vector<std::complex<double>> ones(a.size(), 1.0);
    auto za = boundary_point_on_ray(sub.symbol, ones);
    r.restricted_value = scalar_membership(sub.symbol, za).value;

    r.z.assign(static_cast<std::size_t>(n), 0.0);
    r.w.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        r.z[static_cast<std::size_t>(a[k] - 1)] = za[k];
    }
    for (int b : r.block_b) {
        r.w[static_cast<std::size_t>(b - 1)] = r.epsilon;
    }
    r.point.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        r.point[static_cast<std::size_t>(i)] = r.z[static_cast<std::size_t>(i)] + r.w[static_cast<std::size_t>(i)];
    }
    r.value = scalar_membership(norm.symbol, r.point).value;
    if (!(r.value > 1.0)) {
        throw InternalError("product refutation witness failed to leave the domain");
    }
    return r;
}

double thullen_colinearity_residual(const FreePolynomial &f, double q, double u)
{
    require_regular_positive(f);
    require_two_variables(f);
    if (!(q > 0.0) || q == 1.0) {
        throw InvalidInput("Thullen exponent must satisfy q > 0, q != 1");
    }
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidInput("sample u must lie in (0, 1)");
    }
    TwoVariable tv(collapse(f).map_coefficients<double>([](const Rational &c) { return c.get_d(); }));
    return tv.residual(q, u);
}

std::vector<double> thullen_q_grid()
{
    std::vector<double> g = grid(1, 9);
    auto upper = grid(11, 80);
    g.insert(g.end(), upper.begin(), upper.end());
    return g;
}

std::vector<double> thullen_u_grid() { return grid(1, 9); }

ThullenRefutation refute_thullen(const FreePolynomial &f, double tol)
{
    require_regular_positive(f);
    require_two_variables(f);
    SphericalityResult sph = decide_spherical(f, tol);
    if (sph.spherical) {
        throw InvalidInput("symbol is spherical; its scalar domain is a ball, not a Thullen candidate");
    }
    ThullenRefutation r;
    r.tol = tol;
    r.mu = sph.mu;

    // Rescale so both axis intercepts are 1, as in the standard Thullen form.
    const CollapsedPolynomial p = collapse(f);
    CommutativePolynomial<double> unit(2);
    for (const auto &[e, c] : p.terms()) {
        unit.add_term(e, c.get_d() * std::pow(r.mu[0], e[0]) * std::pow(r.mu[1], e[1]));
    }

    r.refuted = true;
    for (int orientation : {2, 1}) {
        CommutativePolynomial<double> oriented(2);
        for (const auto &[e, c] : unit.terms()) {
            oriented.add_term(orientation == 2 ? e : MultiDegree{e[1], e[0]}, c);
        }
        TwoVariable tv(oriented);
        const double origin_axis[2] = {1.0, 0.0};
        const double ps0 = tv.ps.evaluate(origin_axis);
        const double pu0 = tv.pu.evaluate(origin_axis);

        ThullenOrientation o;
        o.exponent_variable = orientation;
        o.c01 = oriented.coefficient({0, 1});
        o.limit_coefficient = ps0;
        for (double q : thullen_q_grid()) {
            ThullenEvidence ev;
            ev.q = q;
            for (double u : thullen_u_grid()) {
                ThullenSample s{u, tv.residual(q, u)};
                if (ev.samples.empty() || std::abs(s.residual) > std::abs(ev.strongest.residual)) {
                    ev.strongest = s;
                }
                ev.samples.push_back(s);
            }
            ev.nonzero = std::abs(ev.strongest.residual) > tol;
            if (q < 1.0) {
                ev.diverges_at_zero = ps0 > 0.0;
                ev.limit_at_zero = ev.diverges_at_zero ? INFINITY : 0.0;
            } else {
                ev.limit_at_zero = -pu0;
            }
            bool limit_ok = q < 1.0 ? ev.diverges_at_zero : ev.limit_at_zero < 0.0;
            r.refuted = r.refuted && ev.nonzero && limit_ok;
            o.evidence.push_back(std::move(ev));
        }
        r.orientations.push_back(std::move(o));
    }
    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json complex_vector_json(const std::vector<std::complex<double>> &v)
{
    nlohmann::json out = nlohmann::json::array();
    for (auto c : v) {
        out.push_back({{"re", c.real()}, {"im", c.imag()}});
    }
    return out;
}

template <class T, class F>
nlohmann::json polynomial_json(const CommutativePolynomial<T> &p, F &&coeff)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &[e, c] : p.terms()) {
        out.push_back({{"exponents", e}, {"coeff", coeff(c)}});
    }
    return out;
}

} // namespace

nlohmann::json to_json(const SphericalityResult &r)
{
    nlohmann::json j;
    j["verdict"] = r.spherical ? "spherical" : "aspherical";
    j["exact"] = r.mu_exact.has_value();
    j["mu"] = r.mu;
    if (r.mu_exact) {
        nlohmann::json mu = nlohmann::json::array();
        for (const auto &m : *r.mu_exact) {
            mu.push_back(to_string(m));
        }
        j["mu_exact"] = mu;
        j["residual_exact"] = to_string(*r.residual_exact);
        j["restricted"] = polynomial_json(*r.restricted_exact, [](const Rational &c) { return to_string(c); });
    } else {
        j["restricted"] = polynomial_json(r.restricted, [](double c) { return c; });
    }
    j["residual"] = r.residual;
    j["tol"] = r.tol;
    return j;
}

nlohmann::json to_json(const ProductRefutation &r)
{
    nlohmann::json lambda = nlohmann::json::array();
    for (const auto &l : r.lambda) {
        lambda.push_back(to_string(l));
    }
    return {{"block_a", r.block_a},
            {"block_b", r.block_b},
            {"lambda", lambda},
            {"z", complex_vector_json(r.z)},
            {"w", complex_vector_json(r.w)},
            {"restricted_value", r.restricted_value},
            {"value", r.value},
            {"epsilon", r.epsilon},
            {"refuted", r.value > 1.0}};
}

nlohmann::json to_json(const ThullenRefutation &r)
{
    nlohmann::json orientations = nlohmann::json::array();
    for (const auto &o : r.orientations) {
        nlohmann::json evidence = nlohmann::json::array();
        for (const auto &ev : o.evidence) {
            nlohmann::json e{{"q", ev.q},
                             {"u", ev.strongest.u},
                             {"residual", ev.strongest.residual},
                             {"nonzero", ev.nonzero}};
            if (ev.q < 1.0) {
                e["limit"] = ev.diverges_at_zero ? "+inf" : "finite";
            } else {
                e["limit"] = ev.limit_at_zero;
            }
            evidence.push_back(std::move(e));
        }
        orientations.push_back({{"exponent_variable", o.exponent_variable},
                                {"c01", o.c01},
                                {"divergence_coefficient", o.limit_coefficient},
                                {"evidence", evidence}});
    }
    return {{"refuted", r.refuted}, {"mu", r.mu}, {"tol", r.tol}, {"orientations", orientations}};
}

} // namespace ncd
