#include "ncd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ncd {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(Eigen::Index n) : parent_(static_cast<std::size_t>(n))
    {
        std::iota(parent_.begin(), parent_.end(), Eigen::Index{0});
    }

    Eigen::Index find(Eigen::Index x)
    {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            auto &p = parent_[static_cast<std::size_t>(x)];
            p = parent_[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }

    void unite(Eigen::Index a, Eigen::Index b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

private:
    std::vector<Eigen::Index> parent_;
};

template <class Scalar>
double power_iteration(const Eigen::SparseMatrix<Scalar> &h)
{
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Vec v = Vec::Ones(h.rows()) / std::sqrt(static_cast<double>(h.rows()));
    double lambda = 0.0;
    for (int iter = 0; iter < 20000; ++iter) {
        Vec w = h * v;
        double norm = w.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        double next = std::real(v.dot(w));
        v = w / norm;
        if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
            return next;
        }
        lambda = next;
    }
    return lambda;
}

} // namespace

template <class Scalar>
double largest_eigenvalue_psd(const Eigen::SparseMatrix<Scalar> &h)
{
    const Eigen::Index n = h.rows();
    if (n == 0) {
        return 0.0;
    }
    DisjointSets sets(n);
    for (Eigen::Index k = 0; k < h.outerSize(); ++k) {
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(h, k); it; ++it) {
            if (it.value() != Scalar(0)) {
                sets.unite(it.row(), it.col());
            }
        }
    }
    std::vector<std::vector<Eigen::Index>> blocks(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        blocks[static_cast<std::size_t>(sets.find(i))].push_back(i);
    }

    double best = 0.0;
    for (const auto &block : blocks) {
        if (block.empty()) {
            continue;
        }
        const auto m = static_cast<Eigen::Index>(block.size());
        if (m == 1) {
            best = std::max(best, std::real(h.coeff(block[0], block[0])));
            continue;
        }
        std::vector<Eigen::Index> local(static_cast<std::size_t>(n), -1);
        for (Eigen::Index i = 0; i < m; ++i) {
            local[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])] = i;
        }
        std::vector<Eigen::Triplet<Scalar>> trips;
        for (Eigen::Index col : block) {
            for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(h, col); it; ++it) {
                trips.emplace_back(local[static_cast<std::size_t>(it.row())], local[static_cast<std::size_t>(it.col())],
                                   it.value());
            }
        }
        Eigen::SparseMatrix<Scalar> sub(m, m);
        sub.setFromTriplets(trips.begin(), trips.end());
        if (m <= kDenseBlockLimit) {
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense(sub);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(
                dense, Eigen::EigenvaluesOnly);
            best = std::max(best, es.eigenvalues().maxCoeff());
        } else {
            best = std::max(best, power_iteration(sub));
        }
    }
    return best;
}

template <class Scalar>
double operator_norm(const Eigen::SparseMatrix<Scalar> &a)
{
    Eigen::SparseMatrix<Scalar> gram = Eigen::SparseMatrix<Scalar>(a.adjoint()) * a;
    return std::sqrt(std::max(0.0, largest_eigenvalue_psd(gram)));
}

double largest_eigenvalue_hermitian(const Eigen::MatrixXcd &h)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Eigen::Index numerical_rank(const Eigen::MatrixXcd &a, double rel_tol)
{
    if (a.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) {
        return 0;
    }
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > rel_tol * s(0)) {
        ++r;
    }
    return r;
}

template double largest_eigenvalue_psd<double>(const Eigen::SparseMatrix<double> &);
template double largest_eigenvalue_psd<Complex>(const Eigen::SparseMatrix<Complex> &);
template double operator_norm<double>(const Eigen::SparseMatrix<double> &);
template double operator_norm<Complex>(const Eigen::SparseMatrix<Complex> &);

} // namespace ncd
