#pragma once

// Formal Laplace transform of matrix series Y(x) x^Lambda.
//
// The coefficient matrices are
//   C(n)  = tau^{-n} (Lambda + n) ... (Lambda + 1)          n >= 1
//   C(0)  = I
//   C(-m) = tau^{m} Lambda^{-1} (Lambda - 1)^{-1} ... (Lambda - (m-1))^{-1}   m >= 1
// so that tau C(n) = (Lambda + n) C(n-1) for every integer n.  The transform
// sends Y_alpha x^alpha x^Lambda to Y_alpha prod_i C_{Lambda_i,tau_i}(alpha_i)
// x^{-alpha} x^{-Lambda-I}.

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include <laplace/errors.hpp>
#include <laplace/matrix.hpp>
#include <laplace/matrix_series.hpp>
#include <laplace/standard_laplace.hpp>

namespace laplace
{

class CoeffMatrixFn
{
public:
    CoeffMatrixFn(Matrix lambda, Rational tau, bool validate = true) : lambda_(std::move(lambda)), tau_(std::move(tau))
    {
        require(!tau_.is_zero(), "tau must be nonzero");
        require(lambda_.is_square(), "exponent matrix must be square");
        if (validate) {
            for (const auto &ev : rational_eigenvalues(lambda_)) {
                require(!ev.value.is_integer(), "exponent matrix has an integral eigenvalue");
            }
        }
        cache_.emplace(0, Matrix::identity(lambda_.rows()));
    }
    CoeffMatrixFn(const CoeffMatrixFn &o) : lambda_(o.lambda_), tau_(o.tau_)
    {
        std::lock_guard<std::mutex> lock(o.mu_);
        cache_ = o.cache_;
    }

    const Matrix &lambda() const noexcept { return lambda_; }
    const Rational &tau() const noexcept { return tau_; }

    Matrix operator()(long n) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(n);
        if (it != cache_.end()) {
            return it->second;
        }
        std::size_t nu = lambda_.rows();
        long step = n > 0 ? 1 : -1;
        long start = n;
        while (cache_.find(start) == cache_.end()) {
            start -= step;
        }
        Matrix cur = cache_.at(start);
        Rational tau_inv = tau_.inverse();
        for (long t = start + step; step > 0 ? t <= n : t >= n; t += step) {
            if (step > 0) {
                cur = (lambda_ + Matrix::scalar(nu, Rational(t))) * cur * tau_inv;
            } else {
                // C(t) = tau (Lambda + (t+1))^{-1} C(t+1)
                cur = (lambda_ + Matrix::scalar(nu, Rational(t + 1))).inverse() * cur * tau_;
            }
            cache_.emplace(t, cur);
        }
        return cur;
    }

private:
    Matrix lambda_;
    Rational tau_;
    mutable std::mutex mu_;
    mutable std::map<long, Matrix> cache_;
};

inline Matrix c_matrix(const Matrix &lambda, const Rational &tau, long n) { return CoeffMatrixFn(lambda, tau)(n); }

// C_Lambda(n) C_{-Lambda}(-n-1) = (-1)^{n+1} tau Lambda^{-1}
inline bool check_invC(const Matrix &lambda, const Rational &tau, long n)
{
    Matrix lhs = c_matrix(lambda, tau, n) * c_matrix(-lambda, tau, -n - 1);
    Rational sign = (n + 1) % 2 == 0 ? 1 : -1;
    return lhs == lambda.inverse() * (tau * sign);
}

// tau C(n) = (Lambda + n) C(n-1)
inline bool check_cocycle(const CoeffMatrixFn &c, long n)
{
    std::size_t nu = c.lambda().rows();
    return c(n) * c.tau() == (c.lambda() + Matrix::scalar(nu, Rational(n))) * c(n - 1);
}

inline std::vector<Rational> broadcast_tau(const std::vector<Rational> &tau, std::size_t d)
{
    if (tau.size() == 1 && d > 1) {
        return std::vector<Rational>(d, tau.front());
    }
    require(tau.size() == d, "tau vector length mismatch");
    for (const auto &t : tau) {
        require(!t.is_zero(), "tau must be nonzero");
    }
    return tau;
}

// Transform over the reference tuple ref (default: the series' own Lambda); ref
// must differ from Lambda by integer multiples of I.
inline MatrixSeries formal_transform(const MatrixSeries &m, const std::vector<Rational> &tau_in,
                                     const std::optional<std::vector<Matrix>> &ref_in = std::nullopt)
{
    std::size_t d = m.dim();
    std::vector<Rational> tau = broadcast_tau(tau_in, d);
    std::vector<Matrix> ref = ref_in ? *ref_in : m.lambda();
    MultiIndex c = m.offset_from(ref);
    std::size_t nu = m.nu();
    std::vector<CoeffMatrixFn> coeff;
    std::vector<Matrix> out_lambda;
    for (std::size_t i = 0; i < d; ++i) {
        coeff.emplace_back(ref[i], tau[i], false);
        out_lambda.push_back(-ref[i] - Matrix::identity(nu));
    }
    std::vector<std::pair<MultiIndex, Matrix>> raw;
    for (const auto &[alpha, y] : m.terms()) {
        MultiIndex a = alpha + c;
        Matrix z = y;
        for (std::size_t i = 0; i < d; ++i) {
            z = z * coeff[i](a[i]);
        }
        raw.emplace_back(-a, z);
    }
    return MatrixSeries::from_raw(out_lambda, m.mu(), opposite(m.orthant()), raw);
}

// L_{-Lambda}(L_Lambda(Y x^Lambda)) = (-1)^d prod tau_i Y(-x) prod Lambda_i^{-1} x^Lambda
inline bool double_transform_check(const MatrixSeries &m, const std::vector<Rational> &tau_in)
{
    std::size_t d = m.dim();
    std::vector<Rational> tau = broadcast_tau(tau_in, d);
    MatrixSeries first = formal_transform(m, tau);
    std::vector<Matrix> neg;
    for (const auto &l : m.lambda()) {
        neg.push_back(-l);
    }
    MatrixSeries second = formal_transform(first, tau, neg);
    Rational scale = d % 2 ? -1 : 1;
    for (const auto &t : tau) {
        scale *= t;
    }
    Matrix inv = Matrix::identity(m.nu());
    for (const auto &l : m.lambda()) {
        inv = inv * l.inverse();
    }
    MatrixSeries rhs = MatrixSeries::trusted(m.lambda(), m.mu(), m.orthant());
    for (const auto &[alpha, y] : m.terms()) {
        Rational sign = alpha.total() % 2 ? -1 : 1;
        rhs.add_term(alpha, y * inv * (scale * sign));
    }
    return second == rhs;
}

// L(d^beta f) = prod (tau_i x_i)^{beta_i} L(f) and
// L(x^beta f) = (-1)^{|beta|} / prod tau_i^{beta_i} d^beta L(f), over the reference of f.
struct Op3Result {
    bool derivation_side;
    bool multiplication_side;
};

inline Op3Result check_op3(const MatrixSeries &f, const std::vector<Rational> &tau_in, const MultiIndex &beta)
{
    std::size_t d = f.dim();
    std::vector<Rational> tau = broadcast_tau(tau_in, d);
    MatrixSeries lf = formal_transform(f, tau);
    Rational tb = 1;
    for (std::size_t i = 0; i < d; ++i) {
        tb *= tau[i].pow(beta[i]);
    }
    MatrixSeries lhs1 = formal_transform(derive(f, beta), tau, f.lambda());
    MatrixSeries rhs1 = monomial_mul(lf, beta) * tb;
    MatrixSeries lhs2 = formal_transform(monomial_mul(f, beta), tau, f.lambda());
    MatrixSeries rhs2 = derive(lf, beta) * (Rational(beta.total() % 2 ? -1 : 1) / tb);
    return {lhs1 == rhs1, lhs2 == rhs2};
}

// For nu = 1, tau = 1: standard coefficient of x^{-gamma-n-1} over Gamma(gamma+1)
// equals the formal coefficient C_gamma(n).
inline bool cross_check_standard(const Rational &gamma, long n)
{
    require(!gamma.is_integer(), "cross_check_standard: integral exponent");
    auto std_img = laplace_term({gamma}, MultiIndex{0}, MultiIndex{n});
    GammaPoly c = std_img.coefficient_at({-gamma - Rational(n) - Rational(1)}, MultiIndex{0});
    if (!c.is_constant() || std_img.size() != 1) {
        return false;
    }
    Matrix formal = c_matrix(Matrix{{gamma}}, Rational(1), n);
    return c.constant_term() / gamma == formal(0, 0);
}

// Scalar view of a 1x1 matrix series.
inline LogLaurentSeries<Rational> scalar_series(const MatrixSeries &m)
{
    require(m.nu() == 1 && m.mu() == 1, "scalar_series needs 1x1 coefficients");
    std::vector<Rational> gamma;
    for (const auto &l : m.lambda()) {
        gamma.push_back(l(0, 0));
    }
    LogLaurentSeries<Rational> s(gamma, m.orthant());
    for (const auto &[alpha, y] : m.terms()) {
        s.add_term(alpha, MultiIndex::zero(m.dim()), y(0, 0));
    }
    return s;
}

// 1x1 matrix series from a log-free scalar series.
inline MatrixSeries matrix_series_from_scalar(const LogLaurentSeries<Rational> &s)
{
    std::vector<Matrix> lambda;
    for (const auto &g : s.gamma()) {
        lambda.push_back(Matrix{{g}});
    }
    MatrixSeries m(lambda, 1, s.orthant());
    for (const auto &[k, c] : s.terms()) {
        require(k.logpow.is_zero(), "matrix_series_from_scalar: log terms are not representable");
        m.add_term(k.alpha, Matrix{{c}});
    }
    return m;
}

} // namespace laplace
