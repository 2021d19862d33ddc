#pragma once

// Matrix series Y(x) x^Lambda with Lambda a tuple of commuting rational
// matrices whose eigenvalues are rational and non-integral.  Offsets follow
// the same orthant discipline as LogLaurentSeries: when an offset leaves its
// orthant the reference Lambda_i is moved by an integer multiple of I.

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/log_series.hpp>
#include <laplace/matrix.hpp>
#include <laplace/multi_index.hpp>

namespace laplace
{

inline void validate_exponent_matrices(const std::vector<Matrix> &lambda)
{
    require(!lambda.empty(), "matrix series needs at least one variable");
    std::size_t nu = lambda.front().rows();
    for (const auto &l : lambda) {
        require(l.is_square() && l.rows() == nu && nu >= 1, "exponent matrices must be square of equal size");
        for (const auto &ev : rational_eigenvalues(l)) {
            require(!ev.value.is_integer(), "exponent matrix has an integral eigenvalue");
        }
    }
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) {
            require(commute(lambda[i], lambda[j]), "exponent matrices do not commute");
        }
    }
}

// If a - b = c I with c an integer, returns c.
inline long integer_scalar_difference(const Matrix &a, const Matrix &b)
{
    Matrix d = a - b;
    Rational c = d(0, 0);
    require(c.is_integer() && d == Matrix::scalar(d.rows(), c),
            "exponent matrices do not differ by an integer multiple of I");
    return to_long(c.numerator());
}

class MatrixSeries
{
public:
    MatrixSeries() = default;
    MatrixSeries(std::vector<Matrix> lambda, std::size_t mu, Orthant orthant = Orthant::positive)
        : lambda_(std::move(lambda)), mu_(mu), orthant_(orthant)
    {
        validate_exponent_matrices(lambda_);
        require(mu_ >= 1, "row count must be positive");
    }

    // Skips the spectral checks; for exponent tuples derived from a validated one.
    static MatrixSeries trusted(std::vector<Matrix> lambda, std::size_t mu, Orthant orthant)
    {
        MatrixSeries m;
        m.lambda_ = std::move(lambda);
        m.mu_ = mu;
        m.orthant_ = orthant;
        return m;
    }

    static MatrixSeries from_raw(std::vector<Matrix> lambda, std::size_t mu, Orthant orthant,
                                 const std::vector<std::pair<MultiIndex, Matrix>> &raw)
    {
        std::size_t d = lambda.size();
        MultiIndex shift(d);
        for (const auto &[a, y] : raw) {
            for (std::size_t i = 0; i < d; ++i) {
                shift[i] = orthant == Orthant::positive ? std::min(shift[i], a[i]) : std::max(shift[i], a[i]);
            }
        }
        std::size_t nu = lambda.front().rows();
        for (std::size_t i = 0; i < d; ++i) {
            lambda[i] += Matrix::scalar(nu, Rational(shift[i]));
        }
        MatrixSeries m = trusted(std::move(lambda), mu, orthant);
        for (const auto &[a, y] : raw) {
            m.add_term(a - shift, y);
        }
        return m;
    }

    std::size_t dim() const noexcept { return lambda_.size(); }
    std::size_t nu() const { return lambda_.empty() ? 0 : lambda_.front().rows(); }
    std::size_t mu() const noexcept { return mu_; }
    Orthant orthant() const noexcept { return orthant_; }
    const std::vector<Matrix> &lambda() const noexcept { return lambda_; }
    const std::map<MultiIndex, Matrix> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const MultiIndex &alpha, const Matrix &y)
    {
        require(alpha.size() == dim(), "term dimension mismatch");
        require(y.rows() == mu_ && y.cols() == nu(), "coefficient matrix has the wrong shape");
        if (!in_orthant(alpha, orthant_)) {
            throw precondition_error("mixed orthant support: offset " + alpha.to_string() + " outside the declared orthant");
        }
        if (y.is_zero()) {
            return;
        }
        auto it = terms_.find(alpha);
        if (it == terms_.end()) {
            terms_.emplace(alpha, y);
            return;
        }
        it->second += y;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    Matrix coefficient(const MultiIndex &alpha) const
    {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Matrix(mu_, nu()) : it->second;
    }

    // Integer offset c with lambda_i = ref_i + c_i I.
    MultiIndex offset_from(const std::vector<Matrix> &ref) const
    {
        require(ref.size() == dim(), "reference tuple length mismatch");
        MultiIndex c(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            c[i] = integer_scalar_difference(lambda_[i], ref[i]);
        }
        return c;
    }

    std::vector<std::pair<MultiIndex, Matrix>> raw_terms() const
    {
        return std::vector<std::pair<MultiIndex, Matrix>>(terms_.begin(), terms_.end());
    }

    friend bool operator==(const MatrixSeries &a, const MatrixSeries &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return a.is_zero() && b.is_zero();
        }
        if (a.dim() != b.dim() || a.nu() != b.nu() || a.mu() != b.mu()) {
            return false;
        }
        MultiIndex c = b.offset_from(a.lambda_);
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (const auto &[alpha, y] : b.terms_) {
            auto it = a.terms_.find(alpha + c);
            if (it == a.terms_.end() || !(it->second == y)) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<Matrix> lambda_;
    std::size_t mu_ = 1;
    Orthant orthant_ = Orthant::positive;
    std::map<MultiIndex, Matrix> terms_;
};

// d/dx_i (Y x^alpha x^Lambda) = Y (alpha_i I + Lambda_i) x^(alpha - e_i) x^Lambda
inline MatrixSeries derive(const MatrixSeries &m, std::size_t i)
{
    require(i < m.dim(), "derive: variable index out of range");
    std::vector<std::pair<MultiIndex, Matrix>> raw;
    for (const auto &[a, y] : m.terms()) {
        MultiIndex b = a;
        b[i] -= 1;
        raw.emplace_back(b, y * (Matrix::scalar(m.nu(), Rational(a[i])) + m.lambda()[i]));
    }
    return MatrixSeries::from_raw(m.lambda(), m.mu(), m.orthant(), raw);
}

inline MatrixSeries derive(const MatrixSeries &m, const MultiIndex &beta)
{
    require(beta.size() == m.dim() && beta.is_nonnegative(), "derive: bad multi-index");
    MatrixSeries r = m;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        for (long t = 0; t < beta[i]; ++t) {
            r = derive(r, i);
        }
    }
    return r;
}

inline MatrixSeries monomial_mul(const MatrixSeries &m, const MultiIndex &beta)
{
    require(beta.size() == m.dim() && beta.is_nonnegative(), "monomial_mul: bad multi-index");
    std::vector<std::pair<MultiIndex, Matrix>> raw;
    for (const auto &[a, y] : m.terms()) {
        raw.emplace_back(a + beta, y);
    }
    return MatrixSeries::from_raw(m.lambda(), m.mu(), m.orthant(), raw);
}

inline MatrixSeries operator*(const MatrixSeries &m, const Rational &s)
{
    std::vector<std::pair<MultiIndex, Matrix>> raw;
    for (const auto &[a, y] : m.terms()) {
        raw.emplace_back(a, y * s);
    }
    return MatrixSeries::from_raw(m.lambda(), m.mu(), m.orthant(), raw);
}

inline MatrixSeries operator+(const MatrixSeries &a, const MatrixSeries &b)
{
    if (a.dim() == 0) {
        return b;
    }
    if (b.dim() == 0) {
        return a;
    }
    require(a.orthant() == b.orthant() || a.is_zero() || b.is_zero(), "adding series from different orthants");
    Orthant o = a.is_zero() ? b.orthant() : a.orthant();
    MultiIndex c = b.offset_from(a.lambda());
    auto raw = a.raw_terms();
    for (const auto &[al, y] : b.terms()) {
        raw.emplace_back(al + c, y);
    }
    return MatrixSeries::from_raw(a.lambda(), a.mu(), o, raw);
}

// One joint spectral class of the exponent tuple.
struct SpectralClass {
    std::vector<Rational> eigenvalues;
    Matrix projector;
};

inline std::vector<SpectralClass> joint_spectral_classes(const std::vector<Matrix> &lambda)
{
    std::size_t nu = lambda.front().rows();
    std::vector<SpectralClass> classes{{{}, Matrix::identity(nu)}};
    for (const auto &l : lambda) {
        auto jd = jordan_decomposition(l);
        std::map<Rational, Matrix> proj;
        for (const auto &b : jd.blocks) {
            Matrix e(nu, nu);
            for (std::size_t t = 0; t < b.size; ++t) {
                e(b.start + t, b.start + t) = 1;
            }
            auto [it, inserted] = proj.emplace(b.eigenvalue, e);
            if (!inserted) {
                it->second += e;
            }
        }
        std::vector<SpectralClass> next;
        for (const auto &c : classes) {
            for (const auto &[ev, e] : proj) {
                Matrix p = c.projector * (jd.U * e * jd.U_inv);
                if (!p.is_zero()) {
                    auto evs = c.eigenvalues;
                    evs.push_back(ev);
                    next.push_back({evs, p});
                }
            }
        }
        classes = std::move(next);
    }
    return classes;
}

// Exact expansion Y(x) x^Lambda = sum over joint eigenvalue classes of
// Y P exp(N log x) x^lambda, with N_i = (Lambda_i - lambda_i) P nilpotent.
// Throws when a nonzero term would need a log power above log_trunc.
inline std::vector<LogLaurentSeries<Matrix>> expand_xLambda(const MatrixSeries &m, unsigned log_trunc)
{
    require(m.dim() >= 1, "empty exponent tuple");
    std::size_t nu = m.nu(), d = m.dim();
    std::vector<LogLaurentSeries<Matrix>> out;
    for (const auto &cls : joint_spectral_classes(m.lambda())) {
        std::vector<Matrix> nil;
        for (std::size_t i = 0; i < d; ++i) {
            nil.push_back((m.lambda()[i] - Matrix::scalar(nu, cls.eigenvalues[i])) * cls.projector);
        }
        LogLaurentSeries<Matrix> s(cls.eigenvalues, m.orthant());
        // log multi-indices t with N^t P != 0, with their N^t / t! factors
        std::vector<std::pair<MultiIndex, Matrix>> factors{{MultiIndex::zero(d), cls.projector}};
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<std::pair<MultiIndex, Matrix>> next;
            for (const auto &[t, f] : factors) {
                Matrix cur = f;
                MultiIndex tt = t;
                for (long k = 0; !cur.is_zero(); ++k) {
                    if (k > static_cast<long>(log_trunc)) {
                        throw precondition_error("expand_xLambda: log truncation would drop nonzero terms");
                    }
                    tt[i] = k;
                    next.emplace_back(tt, cur);
                    cur = cur * nil[i] * Rational(k + 1).inverse();
                }
            }
            factors = std::move(next);
        }
        for (const auto &[alpha, y] : m.terms()) {
            for (const auto &[t, f] : factors) {
                s.add_term(alpha, t, y * f);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace laplace
