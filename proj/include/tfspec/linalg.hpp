#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfspec/errors.hpp"

namespace tfspec {

/// Real tridiagonal matrix with a Thomas-algorithm solve.  sub/super have
/// length order-1.  The solve is unpivoted; every matrix routed through it
/// here is symmetric positive definite or strictly diagonally dominant.
struct TridiagonalMatrix {
    std::vector<double> sub, diag, super;

    int order() const { return static_cast<int>(diag.size()); }

    static TridiagonalMatrix zeros(int n) {
        TridiagonalMatrix t;
        t.sub.assign(n > 0 ? n - 1 : 0, 0.0);
        t.diag.assign(n, 0.0);
        t.super.assign(n > 0 ? n - 1 : 0, 0.0);
        return t;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        const int n = order();
        std::vector<double> y(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0) v += sub[i - 1] * x[i - 1];
            if (i + 1 < n) v += super[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        const int n = order();
        if (static_cast<int>(b.size()) != n)
            throw std::invalid_argument("TridiagonalMatrix::solve: size mismatch");
        std::vector<double> c(n, 0.0), d(n, 0.0), x(n, 0.0);
        double piv = diag[0];
        if (piv == 0.0) throw near_singular_error("tridiagonal solve: zero pivot", 0.0);
        c[0] = (n > 1) ? super[0] / piv : 0.0;
        d[0] = b[0] / piv;
        for (int i = 1; i < n; ++i) {
            piv = diag[i] - sub[i - 1] * c[i - 1];
            if (piv == 0.0) throw near_singular_error("tridiagonal solve: zero pivot", 0.0);
            if (i + 1 < n) c[i] = super[i] / piv;
            d[i] = (b[i] - sub[i - 1] * d[i - 1]) / piv;
        }
        x[n - 1] = d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
        return x;
    }
};

/// General banded LU with partial pivoting (band storage, row-shift variant).
/// Row i initially holds columns i-kl .. i+ku; pivoting can introduce fill up
/// to i+kl+ku, which the working width accommodates.
class BandedLU {
public:
    BandedLU(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), mm_(kl + ku + 1),
          a_(static_cast<size_t>(n) * mm_, 0.0),
          al_(static_cast<size_t>(n) * kl_, 0.0), indx_(n, 0) {}

    void set(int i, int j, double v) {
        int off = j - i + kl_;
        if (off < 0 || off >= mm_)
            throw std::invalid_argument("BandedLU::set: entry outside band");
        a_[static_cast<size_t>(i) * mm_ + off] = v;
    }

    void add(int i, int j, double v) {
        int off = j - i + kl_;
        if (off < 0 || off >= mm_)
            throw std::invalid_argument("BandedLU::add: entry outside band");
        a_[static_cast<size_t>(i) * mm_ + off] += v;
    }

    /// Factor in place.  Throws near_singular_error on an exactly zero pivot;
    /// min_pivot_ratio() gives a crude conditioning indicator afterwards.
    /// Rows are equilibrated to unit max-norm first so the indicator is not
    /// dominated by deliberate row scaling in the assembled system.
    void factorize() {
        auto A = [&](int i, int j) -> double& { return a_[static_cast<size_t>(i) * mm_ + j]; };
        row_scale_.assign(n_, 1.0);
        for (int i = 0; i < n_; ++i) {
            double m = 0.0;
            for (int j = 0; j < mm_; ++j) m = std::max(m, std::fabs(A(i, j)));
            if (m > 0.0) {
                row_scale_[i] = 1.0 / m;
                for (int j = 0; j < mm_; ++j) A(i, j) *= row_scale_[i];
            }
        }
        // Left-shift the top kl rows so position 0 of every row lines up with
        // the leftmost in-matrix column.
        int l = kl_;
        for (int i = 0; i < kl_; ++i) {
            for (int j = kl_ - i; j < mm_; ++j) A(i, j - l) = A(i, j);
            l--;
            for (int j = mm_ - l - 1; j < mm_; ++j) A(i, j) = 0.0;
        }
        min_pivot_ = std::numeric_limits<double>::max();
        max_pivot_ = 0.0;
        l = kl_;
        for (int k = 0; k < n_; ++k) {
            double piv = A(k, 0);
            int ip = k;
            if (l < n_) l++;
            for (int j = k + 1; j < l; ++j) {
                if (std::fabs(A(j, 0)) > std::fabs(piv)) {
                    piv = A(j, 0);
                    ip = j;
                }
            }
            indx_[k] = ip;
            if (piv == 0.0)
                throw near_singular_error("BandedLU: exactly singular at row " + std::to_string(k),
                                          0.0);
            min_pivot_ = std::min(min_pivot_, std::fabs(piv));
            max_pivot_ = std::max(max_pivot_, std::fabs(piv));
            if (ip != k)
                for (int j = 0; j < mm_; ++j) std::swap(A(k, j), A(ip, j));
            for (int i = k + 1; i < l; ++i) {
                double m = A(i, 0) / A(k, 0);
                al_[static_cast<size_t>(k) * kl_ + (i - k - 1)] = m;
                for (int j = 1; j < mm_; ++j) A(i, j - 1) = A(i, j) - m * A(k, j);
                A(i, mm_ - 1) = 0.0;
            }
        }
        factored_ = true;
    }

    void solve(std::vector<double>& b) const {
        if (!factored_) throw std::logic_error("BandedLU::solve before factorize");
        auto A = [&](int i, int j) { return a_[static_cast<size_t>(i) * mm_ + j]; };
        for (int i = 0; i < n_; ++i) b[i] *= row_scale_[i];
        int l = kl_;
        for (int k = 0; k < n_; ++k) {
            int j = indx_[k];
            if (j != k) std::swap(b[k], b[j]);
            if (l < n_) l++;
            for (int i = k + 1; i < l; ++i) b[i] -= al_[static_cast<size_t>(k) * kl_ + (i - k - 1)] * b[k];
        }
        l = 1;
        for (int i = n_ - 1; i >= 0; --i) {
            double dx = b[i];
            for (int j = 1; j < l; ++j) dx -= A(i, j) * b[i + j];
            b[i] = dx / A(i, 0);
            if (l < mm_) l++;
        }
    }

    double min_pivot_ratio() const { return min_pivot_ / max_pivot_; }

private:
    int n_, kl_, ku_, mm_;
    std::vector<double> a_, al_;
    std::vector<double> row_scale_;
    std::vector<int> indx_;
    bool factored_ = false;
    double min_pivot_ = 0.0, max_pivot_ = 0.0;
};

namespace detail {

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below sigma, by the Sturm sequence / LDL^T sign count.  Vanishing pivots
/// are replaced by -pivmin, with pivmin scaled so the following division can
/// never overflow (a plain -DBL_MIN substitution sends off^2/q to infinity
/// and silently corrupts the count for constant-coefficient matrices, whose
/// bisection midpoints hit exact zero pivots).
inline int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                       double sigma) {
    const int n = static_cast<int>(diag.size());
    double e2max = 1.0;
    for (double e : off) e2max = std::max(e2max, e * e);
    const double pivmin = 1.5e-154 * e2max;
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
        double e2 = (i > 0) ? off[i - 1] * off[i - 1] : 0.0;
        q = (diag[i] - sigma) - e2 / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
    }
    return count;
}

inline void gershgorin_bounds(const std::vector<double>& diag, const std::vector<double>& off,
                              double& lo, double& hi) {
    const int n = static_cast<int>(diag.size());
    lo = std::numeric_limits<double>::max();
    hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(off[i - 1]);
        if (i + 1 < n) r += std::fabs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
}

} // namespace detail

/// k smallest eigenvalues of a symmetric tridiagonal matrix, ascending, by
/// bisection on the Sturm count.  Relative accuracy rel_tol.
inline std::vector<double> smallest_eigenvalues_tridiag(const std::vector<double>& diag,
                                                        const std::vector<double>& off, int k,
                                                        double rel_tol = 1e-10) {
    const int n = static_cast<int>(diag.size());
    if (k < 1 || k > n) throw std::invalid_argument("smallest_eigenvalues_tridiag: bad k");
    double lo, hi;
    detail::gershgorin_bounds(diag, off, lo, hi);
    std::vector<double> out(k);
    const double span = hi - lo;
    for (int j = 1; j <= k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 240; ++it) {
            double m = 0.5 * (a + b);
            if (b - a <= rel_tol * std::max(1.0, std::fabs(m)) || b - a <= 1e-300 * span) break;
            if (detail::sturm_count(diag, off, m) >= j)
                b = m;
            else
                a = m;
        }
        out[j - 1] = 0.5 * (a + b);
    }
    return out;
}

/// Symmetric banded matrix in upper-half-band storage: band[r][i] = A(i, i+r)
/// for r = 0..bw.  Only small bandwidths are used here.
struct SymmetricBand {
    int n = 0;
    int bw = 0;
    std::vector<std::vector<double>> band; // band[r] has length n - r

    static SymmetricBand zeros(int n, int bw) {
        SymmetricBand s;
        s.n = n;
        s.bw = bw;
        s.band.resize(bw + 1);
        for (int r = 0; r <= bw; ++r) s.band[r].assign(n - r, 0.0);
        return s;
    }

    double at(int i, int j) const {
        int r = std::abs(i - j);
        if (r > bw) return 0.0;
        return band[r][std::min(i, j)];
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double v = band[0][i] * x[i];
            for (int r = 1; r <= bw; ++r) {
                if (i + r < n) v += band[r][i] * x[i + r];
                if (i - r >= 0) v += band[r][i - r] * x[i - r];
            }
            y[i] = v;
        }
        return y;
    }
};

namespace detail {

/// Inertia count: number of eigenvalues of A strictly below sigma, via an
/// unpivoted banded LDL^T of A - sigma I.  Zero pivots are nudged; for
/// bisection on eigenvalue counts this is the standard spectrum-slicing trick.
inline int band_inertia_below(const SymmetricBand& A, double sigma) {
    const int n = A.n, bw = A.bw;
    std::vector<double> d(n, 0.0);
    // Lrows[i][r-1] = L(i, i-r), r = 1..bw
    std::vector<double> L(static_cast<size_t>(n) * bw, 0.0);
    int count = 0;
    double scale = 1.0;
    for (int r = 0; r <= bw; ++r)
        for (double v : A.band[r]) scale = std::max(scale, std::fabs(v));
    // Pivot floor scaled so the elimination stays finite if it fires.
    const double tiny = scale * 1.5e-154;
    for (int j = 0; j < n; ++j) {
        double dj = A.band[0][j] - sigma;
        for (int k = std::max(0, j - bw); k < j; ++k) {
            double ljk = L[static_cast<size_t>(j) * bw + (j - k - 1)];
            dj -= ljk * ljk * d[k];
        }
        if (std::fabs(dj) < tiny) dj = -tiny;
        d[j] = dj;
        if (dj < 0) ++count;
        for (int i = j + 1; i <= std::min(n - 1, j + bw); ++i) {
            double aij = A.at(i, j);
            for (int k = std::max(0, i - bw); k < j; ++k) {
                double lik = L[static_cast<size_t>(i) * bw + (i - k - 1)];
                double ljk = L[static_cast<size_t>(j) * bw + (j - k - 1)];
                aij -= lik * ljk * d[k];
            }
            L[static_cast<size_t>(i) * bw + (i - j - 1)] = aij / dj;
        }
    }
    return count;
}

inline void band_gershgorin(const SymmetricBand& A, double& lo, double& hi) {
    lo = std::numeric_limits<double>::max();
    hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < A.n; ++i) {
        double r = 0.0;
        for (int rr = 1; rr <= A.bw; ++rr) {
            if (i + rr < A.n) r += std::fabs(A.band[rr][i]);
            if (i - rr >= 0) r += std::fabs(A.band[rr][i - rr]);
        }
        lo = std::min(lo, A.band[0][i] - r);
        hi = std::max(hi, A.band[0][i] + r);
    }
}

} // namespace detail

/// k smallest eigenvalues of a symmetric banded matrix by inertia bisection.
inline std::vector<double> smallest_eigenvalues_band(const SymmetricBand& A, int k,
                                                     double rel_tol = 1e-10) {
    if (k < 1 || k > A.n) throw std::invalid_argument("smallest_eigenvalues_band: bad k");
    double lo, hi;
    detail::band_gershgorin(A, lo, hi);
    std::vector<double> out(k);
    for (int j = 1; j <= k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 240; ++it) {
            double m = 0.5 * (a + b);
            if (b - a <= rel_tol * std::max(1e-30, std::fabs(m))) break;
            if (detail::band_inertia_below(A, m) >= j)
                b = m;
            else
                a = m;
        }
        out[j - 1] = 0.5 * (a + b);
    }
    return out;
}

/// Eigenvector of a symmetric banded matrix for an isolated eigenvalue
/// estimate, by inverse iteration with a pivoted banded LU of A - lambda I.
inline std::vector<double> band_inverse_iteration(const SymmetricBand& A, double lambda,
                                                  int max_iter = 8) {
    const int n = A.n, bw = A.bw;
    // Shift slightly off the eigenvalue so the LU stays usable.
    double scale = 0.0;
    for (double v : A.band[0]) scale = std::max(scale, std::fabs(v));
    double shift = lambda * (1.0 + 1e-12) + scale * 1e-15;
    BandedLU lu(n, bw, bw);
    for (int i = 0; i < n; ++i) {
        lu.set(i, i, A.band[0][i] - shift);
        for (int r = 1; r <= bw; ++r) {
            if (i + r < n) {
                lu.set(i, i + r, A.band[r][i]);
                lu.set(i + r, i, A.band[r][i]);
            }
        }
    }
    lu.factorize();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < max_iter; ++it) {
        lu.solve(v);
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw iteration_error("band_inverse_iteration: null iterate");
        for (double& x : v) x /= nrm;
    }
    return v;
}

/// Cholesky factor of a symmetric positive definite tridiagonal matrix:
/// T = R^T R with R upper bidiagonal (diag r, super s).
inline void cholesky_tridiag(const TridiagonalMatrix& T, std::vector<double>& r,
                             std::vector<double>& s) {
    const int n = T.order();
    r.assign(n, 0.0);
    s.assign(n > 0 ? n - 1 : 0, 0.0);
    double prev_s = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = T.diag[i] - prev_s * prev_s;
        if (d <= 0.0)
            throw near_singular_error(
                "cholesky_tridiag: matrix not positive definite at row " + std::to_string(i), d);
        r[i] = std::sqrt(d);
        if (i + 1 < n) {
            s[i] = T.super[i] / r[i];
            prev_s = s[i];
        }
    }
}

} // namespace tfspec
