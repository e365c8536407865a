#include "corrclust/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corrclust/errors.hpp"

namespace corrclust {

SymMatrix::SymMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
    if (n < 1) throw InvalidInput("SymMatrix: dimension must be >= 1");
}

SymMatrix::SymMatrix(int n, const std::vector<double>& rowmajor) : SymMatrix(n) {
    if (rowmajor.size() != static_cast<size_t>(n) * n)
        throw InvalidInput("SymMatrix: data size does not match dimension");
    double max_asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = rowmajor[static_cast<size_t>(i) * n + j];
            if (!std::isfinite(v)) throw InvalidInput("SymMatrix: non-finite entry");
            if (j > i)
                max_asym = std::max(max_asym,
                                    std::abs(v - rowmajor[static_cast<size_t>(j) * n + i]));
        }
    if (max_asym > 1e-12) throw InvalidInput("SymMatrix: asymmetry exceeds 1e-12");
    for (int i = 0; i < n; ++i) {
        a_[static_cast<size_t>(i) * n + i] = rowmajor[static_cast<size_t>(i) * n + i];
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (rowmajor[static_cast<size_t>(i) * n + j] +
                                    rowmajor[static_cast<size_t>(j) * n + i]);
            set(i, j, v);
        }
    }
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diag(const std::vector<double>& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m.set(i, i, d[i]);
    return m;
}

std::vector<double> SymMatrix::diagonal() const {
    std::vector<double> d(n_);
    for (int i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::frob_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double SymMatrix::min_entry() const {
    return *std::min_element(a_.begin(), a_.end());
}

double SymMatrix::max_entry() const {
    return *std::max_element(a_.begin(), a_.end());
}

bool SymMatrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

SymMatrix SymMatrix::submatrix(const std::vector<int>& idx) const {
    SymMatrix s(static_cast<int>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i; j < idx.size(); ++j)
            s.set(static_cast<int>(i), static_cast<int>(j), (*this)(idx[i], idx[j]));
    return s;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    SymMatrix r = a;
    r += b;
    return r;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    SymMatrix r = a;
    r -= b;
    return r;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& b) {
    if (b.n() != n_) throw InvalidInput("SymMatrix: dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& b) {
    if (b.n() != n_) throw InvalidInput("SymMatrix: dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
    return *this;
}

SymMatrix SymMatrix::scaled(double s) const {
    SymMatrix r = *this;
    for (double& v : r.a_) v *= s;
    return r;
}

double inner(const SymMatrix& a, const SymMatrix& b) {
    if (a.n() != b.n()) throw InvalidInput("inner: dimension mismatch");
    const auto& x = a.raw();
    const auto& y = b.raw();
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

std::vector<double> EigenDecomp::eigenvector(int j) const {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = vec(i, j);
    return v;
}

namespace detail {

void matmul(const double* a, const double* b, double* c, int n) {
    std::fill(c, c + static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* ai = a + static_cast<size_t>(i) * n;
        double* ci = c + static_cast<size_t>(i) * n;
        for (int k = 0; k < n; ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b + static_cast<size_t>(k) * n;
            for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
}

void matmul_tn(const double* a, const double* b, double* c, int n) {
    std::fill(c, c + static_cast<size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        const double* ak = a + static_cast<size_t>(k) * n;
        const double* bk = b + static_cast<size_t>(k) * n;
        for (int i = 0; i < n; ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = c + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) ci[j] += aki * bk[j];
        }
    }
}

namespace {

double offdiag_frob(const double* a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = a[static_cast<size_t>(i) * n + j];
            s += 2.0 * v * v;
        }
    return std::sqrt(s);
}

}  // namespace

int jacobi_inplace(double* a, double* v, int n, double off_threshold, int max_sweeps) {
    if (n == 1) return 0;
    // Rotations below skip_tol contribute at most off_threshold/10 in total,
    // which keeps terminal sweeps cheap without affecting convergence.
    const double skip_tol = 0.1 * off_threshold / n;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiag_frob(a, n) <= off_threshold) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<size_t>(p) * n + q];
                if (std::abs(apq) <= skip_tol) continue;
                const double app = a[static_cast<size_t>(p) * n + p];
                const double aqq = a[static_cast<size_t>(q) * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[static_cast<size_t>(p) * n + p] = app - t * apq;
                a[static_cast<size_t>(q) * n + q] = aqq + t * apq;
                a[static_cast<size_t>(p) * n + q] = 0.0;
                a[static_cast<size_t>(q) * n + p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double& arp = a[static_cast<size_t>(r) * n + p];
                        double& arq = a[static_cast<size_t>(r) * n + q];
                        const double rp = arp, rq = arq;
                        arp = rp - s * (rq + tau * rp);
                        arq = rq + s * (rp - tau * rq);
                        a[static_cast<size_t>(p) * n + r] = arp;
                        a[static_cast<size_t>(q) * n + r] = arq;
                    }
                    double& vrp = v[static_cast<size_t>(r) * n + p];
                    double& vrq = v[static_cast<size_t>(r) * n + q];
                    const double rp = vrp, rq = vrq;
                    vrp = rp - s * (rq + tau * rp);
                    vrq = rq + s * (rp - tau * rq);
                }
            }
        }
    }
    return sweep;
}

}  // namespace detail

EigenDecomp eig_sym(const SymMatrix& m) {
    if (!m.all_finite()) throw InvalidInput("eig_sym: non-finite entry");
    const int n = m.n();
    std::vector<double> a = m.raw();
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    const double thresh = 1e-13 * m.frob_norm();
    detail::jacobi_inplace(a.data(), v.data(), n, thresh, 100);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return a[static_cast<size_t>(x) * n + x] > a[static_cast<size_t>(y) * n + y];
    });

    EigenDecomp d;
    d.n = n;
    d.eigenvalues.resize(n);
    d.q.resize(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        d.eigenvalues[j] = a[static_cast<size_t>(order[j]) * n + order[j]];
        for (int i = 0; i < n; ++i)
            d.q[static_cast<size_t>(i) * n + j] = v[static_cast<size_t>(i) * n + order[j]];
    }
    return d;
}

SymMatrix project_psd(const SymMatrix& m) {
    const EigenDecomp d = eig_sym(m);
    const int n = m.n();
    SymMatrix r(n);
    for (int k = 0; k < n; ++k) {
        const double lam = d.eigenvalues[k];
        if (lam <= 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const double w = lam * d.vec(i, k);
            if (w == 0.0) continue;
            for (int j = i; j < n; ++j) r.add(i, j, w * d.vec(j, k));
        }
    }
    return r;
}

double min_eigenvalue(const SymMatrix& m) {
    const EigenDecomp d = eig_sym(m);
    return d.eigenvalues.back();
}

void JacobiWorkspace::decompose(const SymMatrix& m) {
    const int n = m.n();
    const size_t nn = static_cast<size_t>(n) * n;
    const bool warm = (n_ == n);
    n_ = n;
    vals_.resize(n);
    b_.resize(nn);
    tmp_.resize(nn);
    if (!warm) {
        q_.assign(nn, 0.0);
        for (int i = 0; i < n; ++i) q_[static_cast<size_t>(i) * n + i] = 1.0;
        b_ = m.raw();
    } else {
        // B = Q^T M Q is nearly diagonal when M moved little since the last
        // call, so the sweeps below terminate quickly.
        detail::matmul_tn(q_.data(), m.raw().data(), tmp_.data(), n);
        detail::matmul(tmp_.data(), q_.data(), b_.data(), n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double v = 0.5 * (b_[static_cast<size_t>(i) * n + j] +
                                        b_[static_cast<size_t>(j) * n + i]);
                b_[static_cast<size_t>(i) * n + j] = v;
                b_[static_cast<size_t>(j) * n + i] = v;
            }
    }
    const double thresh = 1e-13 * m.frob_norm();
    if (!warm) {
        detail::jacobi_inplace(b_.data(), q_.data(), n, thresh, 100);
    } else {
        std::vector<double>& rot = tmp_;
        std::fill(rot.begin(), rot.end(), 0.0);
        for (int i = 0; i < n; ++i) rot[static_cast<size_t>(i) * n + i] = 1.0;
        detail::jacobi_inplace(b_.data(), rot.data(), n, thresh, 100);
        std::vector<double> qnew(nn);
        detail::matmul(q_.data(), rot.data(), qnew.data(), n);
        q_.swap(qnew);
    }
    for (int i = 0; i < n; ++i) vals_[i] = b_[static_cast<size_t>(i) * n + i];
}

SymMatrix JacobiWorkspace::assemble_positive_part() const {
    SymMatrix r(n_);
    for (int k = 0; k < n_; ++k) {
        const double lam = vals_[k];
        if (lam <= 0.0) continue;
        for (int i = 0; i < n_; ++i) {
            const double w = lam * q_[static_cast<size_t>(i) * n_ + k];
            if (w == 0.0) continue;
            for (int j = i; j < n_; ++j)
                r.add(i, j, w * q_[static_cast<size_t>(j) * n_ + k]);
        }
    }
    return r;
}

double JacobiWorkspace::min_eigenvalue() const {
    return *std::min_element(vals_.begin(), vals_.end());
}

}  // namespace corrclust
