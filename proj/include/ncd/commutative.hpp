#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace ncd {

// Exponent vector of a commutative monomial; one entry per variable.
using MultiDegree = std::vector<int>;

// Sparse commutative polynomial over T (Rational or double). Exactly-zero
// coefficients are never stored.
template <class T>
class CommutativePolynomial {
public:
    using Terms = std::map<MultiDegree, T>;

    explicit CommutativePolynomial(int variables = 0) : variables_(variables) {}

    static CommutativePolynomial constant(int variables, const T &c)
    {
        CommutativePolynomial p(variables);
        p.add_term(MultiDegree(static_cast<std::size_t>(variables), 0), c);
        return p;
    }

    static CommutativePolynomial variable(int variables, int index, const T &scale = T(1))
    {
        CommutativePolynomial p(variables);
        MultiDegree e(static_cast<std::size_t>(variables), 0);
        e[static_cast<std::size_t>(index)] = 1;
        p.add_term(std::move(e), scale);
        return p;
    }

    int variables() const noexcept { return variables_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const MultiDegree &e, const T &c)
    {
        if (static_cast<int>(e.size()) != variables_) {
            throw std::invalid_argument("multidegree length does not match variable count");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    T coefficient(const MultiDegree &e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    int total_degree() const
    {
        int d = 0;
        for (const auto &[e, c] : terms_) {
            int s = 0;
            for (int x : e) {
                s += x;
            }
            d = std::max(d, s);
        }
        return d;
    }

    CommutativePolynomial &operator+=(const CommutativePolynomial &o)
    {
        for (const auto &[e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    CommutativePolynomial &operator-=(const CommutativePolynomial &o)
    {
        for (const auto &[e, c] : o.terms_) {
            add_term(e, T(-c));
        }
        return *this;
    }

    friend CommutativePolynomial operator+(CommutativePolynomial a, const CommutativePolynomial &b) { return a += b; }
    friend CommutativePolynomial operator-(CommutativePolynomial a, const CommutativePolynomial &b) { return a -= b; }

    friend CommutativePolynomial operator*(const CommutativePolynomial &a, const CommutativePolynomial &b)
    {
        CommutativePolynomial out(a.variables_);
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                MultiDegree e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] += eb[i];
                }
                out.add_term(e, T(ca * cb));
            }
        }
        return out;
    }

    CommutativePolynomial pow(int k) const
    {
        CommutativePolynomial out = constant(variables_, T(1));
        for (int i = 0; i < k; ++i) {
            out = out * *this;
        }
        return out;
    }

    CommutativePolynomial derivative(int index) const
    {
        CommutativePolynomial out(variables_);
        for (const auto &[e, c] : terms_) {
            int k = e[static_cast<std::size_t>(index)];
            if (k == 0) {
                continue;
            }
            MultiDegree d(e);
            --d[static_cast<std::size_t>(index)];
            out.add_term(d, T(c * k));
        }
        return out;
    }

    double evaluate(std::span<const double> x) const
    {
        double sum = 0.0;
        for (const auto &[e, c] : terms_) {
            double term = to_double_(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] != 0) {
                    term *= std::pow(x[i], e[i]);
                }
            }
            sum += term;
        }
        return sum;
    }

    T max_abs_coefficient() const
    {
        T best(0);
        for (const auto &[e, c] : terms_) {
            T a = c < 0 ? T(-c) : c;
            if (a > best) {
                best = a;
            }
        }
        return best;
    }

    template <class U, class F>
    CommutativePolynomial<U> map_coefficients(F &&f) const
    {
        CommutativePolynomial<U> out(variables_);
        for (const auto &[e, c] : terms_) {
            out.add_term(e, f(c));
        }
        return out;
    }

    friend bool operator==(const CommutativePolynomial &, const CommutativePolynomial &) = default;

private:
    static double to_double_(const T &c)
    {
        if constexpr (std::is_convertible_v<T, double>) {
            return static_cast<double>(c);
        } else {
            return c.get_d();
        }
    }

    int variables_;
    Terms terms_;
};

} // namespace ncd
