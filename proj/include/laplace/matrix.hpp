#pragma once

// Dense matrices over Q, characteristic polynomials, rational spectra and
// exact Jordan decompositions.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/rational.hpp>

namespace laplace
{

class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> data) : r_(rows), c_(cols), a_(std::move(data))
    {
        require(a_.size() == r_ * c_, "matrix data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto &row : rows) {
            require(row.size() == c_, "ragged matrix literal");
            for (const auto &x : row) {
                a_.push_back(x);
            }
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }
    static Matrix scalar(std::size_t n, const Rational &s) { return identity(n) * s; }
    static Matrix diagonal(const std::vector<Rational> &d)
    {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }
    bool is_square() const noexcept { return r_ == c_; }
    const std::vector<Rational> &data() const noexcept { return a_; }

    Rational &operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rational &operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const Rational &x) { return x.is_zero(); });
    }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < c_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    Matrix column(std::size_t j) const
    {
        Matrix v(r_, 1);
        for (std::size_t i = 0; i < r_; ++i) {
            v(i, 0) = (*this)(i, j);
        }
        return v;
    }

    Matrix &operator+=(const Matrix &o)
    {
        same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            a_[i] += o.a_[i];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o)
    {
        same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            a_[i] -= o.a_[i];
        }
        return *this;
    }
    Matrix &operator*=(const Rational &s)
    {
        for (auto &x : a_) {
            x *= s;
        }
        return *this;
    }
    Matrix operator-() const
    {
        Matrix m = *this;
        for (auto &x : m.a_) {
            x = -x;
        }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational &s) { return a *= s; }
    friend Matrix operator*(const Rational &s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        require(a.c_ == b.r_, "matrix product shape mismatch");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i) {
            for (std::size_t k = 0; k < a.c_; ++k) {
                const Rational &x = a(i, k);
                if (x.is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < b.c_; ++j) {
                    if (!b(k, j).is_zero()) {
                        m(i, j) += x * b(k, j);
                    }
                }
            }
        }
        return m;
    }
    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Matrix pow(unsigned long e) const
    {
        require(is_square(), "power of a non-square matrix");
        Matrix result = identity(r_), base = *this;
        while (e) {
            if (e & 1) {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    Rational trace() const
    {
        require(is_square(), "trace of a non-square matrix");
        Rational t = 0;
        for (std::size_t i = 0; i < r_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    // Reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref_in_place()
    {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < c_ && row < r_; ++col) {
            std::size_t piv = row;
            while (piv < r_ && (*this)(piv, col).is_zero()) {
                ++piv;
            }
            if (piv == r_) {
                continue;
            }
            swap_rows(piv, row);
            Rational inv = (*this)(row, col).inverse();
            for (std::size_t j = col; j < c_; ++j) {
                (*this)(row, j) *= inv;
            }
            for (std::size_t i = 0; i < r_; ++i) {
                if (i == row || (*this)(i, col).is_zero()) {
                    continue;
                }
                Rational f = (*this)(i, col);
                for (std::size_t j = col; j < c_; ++j) {
                    (*this)(i, j) -= f * (*this)(row, j);
                }
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const
    {
        Matrix m = *this;
        return m.rref_in_place().size();
    }

    Rational determinant() const
    {
        require(is_square(), "determinant of a non-square matrix");
        Matrix m = *this;
        Rational det = 1;
        for (std::size_t col = 0; col < r_; ++col) {
            std::size_t piv = col;
            while (piv < r_ && m(piv, col).is_zero()) {
                ++piv;
            }
            if (piv == r_) {
                return 0;
            }
            if (piv != col) {
                m.swap_rows(piv, col);
                det = -det;
            }
            det *= m(col, col);
            Rational inv = m(col, col).inverse();
            for (std::size_t i = col + 1; i < r_; ++i) {
                if (m(i, col).is_zero()) {
                    continue;
                }
                Rational f = m(i, col) * inv;
                for (std::size_t j = col; j < r_; ++j) {
                    m(i, j) -= f * m(col, j);
                }
            }
        }
        return det;
    }

    // Gauss-Jordan elimination on [A | I].
    Matrix inverse() const
    {
        require(is_square(), "inverse of a non-square matrix");
        std::size_t n = r_;
        Matrix aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                aug(i, j) = (*this)(i, j);
            }
            aug(i, n + i) = 1;
        }
        auto piv = aug.rref_in_place();
        if (piv.size() < n || piv[n - 1] != n - 1) {
            throw precondition_error("matrix is singular");
        }
        Matrix inv(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                inv(i, j) = aug(i, n + j);
            }
        }
        return inv;
    }

    // Basis of the right null space, as columns of the returned matrix.
    Matrix kernel() const
    {
        Matrix m = *this;
        auto piv = m.rref_in_place();
        std::vector<bool> is_piv(c_, false);
        for (auto p : piv) {
            is_piv[p] = true;
        }
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < c_; ++j) {
            if (!is_piv[j]) {
                free.push_back(j);
            }
        }
        Matrix k(c_, free.size());
        for (std::size_t f = 0; f < free.size(); ++f) {
            k(free[f], f) = 1;
            for (std::size_t r = 0; r < piv.size(); ++r) {
                k(piv[r], f) = -m(r, free[f]);
            }
        }
        return k;
    }

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < r_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < c_; ++j) {
                s += (j ? "," : "") + (*this)(i, j).to_string();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    void same_shape(const Matrix &o) const
    {
        require(r_ == o.r_ && c_ == o.c_, "matrix shape mismatch");
    }
    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) {
            return;
        }
        for (std::size_t k = 0; k < c_; ++k) {
            std::swap((*this)(i, k), (*this)(j, k));
        }
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

inline bool is_zero(const Matrix &m) { return m.is_zero(); }

inline Matrix hconcat(const Matrix &a, const Matrix &b)
{
    if (a.cols() == 0) {
        return b;
    }
    require(a.rows() == b.rows(), "hconcat row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = a(i, j);
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            m(i, a.cols() + j) = b(i, j);
        }
    }
    return m;
}

inline bool commute(const Matrix &a, const Matrix &b) { return a * b == b * a; }

// Characteristic polynomial det(xI - A), coefficients from constant term up,
// by the Faddeev-LeVerrier recursion.
inline std::vector<Rational> characteristic_polynomial(const Matrix &a)
{
    require(a.is_square(), "characteristic polynomial of a non-square matrix");
    std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix m = Matrix(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + Matrix::scalar(n, c[n - k + 1]);
        c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
    }
    return c;
}

inline Rational poly_eval(const std::vector<Rational> &c, const Rational &x)
{
    Rational r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * x + c[i];
    }
    return r;
}

namespace detail
{

inline std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n)
{
    require(n != 0, "factoring zero");
    if (n < 0) {
        n = -n;
    }
    std::vector<std::pair<Integer, unsigned>> f;
    for (unsigned long p = 2; p < 1000000 && Integer(p) * Integer(p) <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e) {
            f.emplace_back(Integer(p), e);
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0 && n >= Integer(1000000) * Integer(1000000)) {
            throw precondition_error("characteristic polynomial coefficient too large to factor");
        }
        f.emplace_back(n, 1);
    }
    return f;
}

inline std::vector<Integer> divisors(const Integer &n)
{
    std::vector<Integer> d{1};
    for (const auto &[p, e] : factor_integer(n)) {
        std::size_t cur = d.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < cur; ++i) {
                d.push_back(d[i] * pk);
            }
        }
    }
    return d;
}

// Divide c(x) by (x - r), assuming r is a root.
inline std::vector<Rational> deflate(const std::vector<Rational> &c, const Rational &r)
{
    std::size_t n = c.size() - 1;
    std::vector<Rational> q(n);
    Rational carry = 0;
    for (std::size_t i = n; i-- > 0;) {
        carry = c[i + 1] + carry * r;
        q[i] = carry;
    }
    return q;
}

} // namespace detail

// Rational roots with multiplicities. The sum of multiplicities is less than
// the degree exactly when some root is irrational.
inline std::vector<std::pair<Rational, unsigned>> rational_roots(std::vector<Rational> c)
{
    std::vector<std::pair<Rational, unsigned>> roots;
    while (c.size() > 1 && c.front().is_zero()) {
        c.erase(c.begin());
        if (roots.empty() || !roots.back().first.is_zero()) {
            roots.emplace_back(Rational(0), 0);
        }
        roots.back().second++;
    }
    if (c.size() <= 1) {
        return roots;
    }
    Integer den = 1;
    for (const auto &x : c) {
        den = lcm(den, x.denominator());
    }
    std::vector<Integer> ic;
    for (const auto &x : c) {
        ic.push_back((x * Rational(den)).numerator());
    }
    auto num_div = detail::divisors(ic.front());
    auto den_div = detail::divisors(ic.back());
    std::vector<Rational> candidates;
    for (const auto &p : num_div) {
        for (const auto &q : den_div) {
            candidates.emplace_back(p, q);
            candidates.emplace_back(-p, q);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto &r : candidates) {
        unsigned mult = 0;
        while (c.size() > 1 && poly_eval(c, r).is_zero()) {
            c = detail::deflate(c, r);
            ++mult;
        }
        if (mult) {
            roots.emplace_back(r, mult);
        }
        if (c.size() <= 1) {
            break;
        }
    }
    return roots;
}

struct Eigenvalue {
    Rational value;
    unsigned multiplicity;
};

// Throws when some eigenvalue is not rational.
inline std::vector<Eigenvalue> rational_eigenvalues(const Matrix &a)
{
    auto roots = rational_roots(characteristic_polynomial(a));
    std::vector<Eigenvalue> out;
    std::size_t total = 0;
    for (auto &[r, m] : roots) {
        out.push_back({r, m});
        total += m;
    }
    if (total != a.rows()) {
        throw precondition_error("eigenvalues not all rational");
    }
    return out;
}

struct JordanBlock {
    Rational eigenvalue;
    std::size_t size;
    std::size_t start;
};

// A = U J U^{-1} with J block diagonal, each block lambda I + (superdiagonal ones).
struct JordanDecomposition {
    Matrix U, U_inv, J;
    std::vector<JordanBlock> blocks;
};

inline JordanDecomposition jordan_decomposition(const Matrix &a)
{
    require(a.is_square(), "Jordan form of a non-square matrix");
    std::size_t n = a.rows();
    JordanDecomposition jd;
    Matrix basis(n, 0);
    for (const auto &ev : rational_eigenvalues(a)) {
        Matrix shifted = a - Matrix::scalar(n, ev.value);
        // kernels[i] spans ker(shifted^i)
        std::vector<Matrix> kernels{Matrix(n, 0)};
        Matrix power = Matrix::identity(n);
        while (kernels.back().cols() < ev.multiplicity) {
            power = power * shifted;
            kernels.push_back(power.kernel());
        }
        std::size_t q = kernels.size() - 1;
        std::vector<std::pair<Matrix, std::size_t>> heads;
        for (std::size_t level = q; level >= 1; --level) {
            Matrix span = kernels[level - 1];
            for (const auto &[h, hl] : heads) {
                span = hconcat(span, shifted.pow(hl - level) * h);
            }
            std::size_t rk = span.rank();
            for (std::size_t j = 0; j < kernels[level].cols(); ++j) {
                Matrix v = kernels[level].column(j);
                Matrix trial = hconcat(span, v);
                std::size_t trk = trial.rank();
                if (trk > rk) {
                    heads.emplace_back(v, level);
                    span = trial;
                    rk = trk;
                }
            }
        }
        for (const auto &[h, hl] : heads) {
            jd.blocks.push_back({ev.value, hl, basis.cols()});
            for (std::size_t t = hl; t-- > 0;) {
                basis = hconcat(basis, shifted.pow(t) * h);
            }
        }
    }
    jd.U = basis;
    jd.U_inv = basis.inverse();
    jd.J = jd.U_inv * a * jd.U;
    return jd;
}

} // namespace laplace
