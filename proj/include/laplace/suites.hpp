#pragma once

// Seeded verification suites.  Each suite draws its samples from a generator
// seeded by (seed, sample index), so results do not depend on the number of
// threads, and reports the first failing sample as a counterexample.

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <laplace/duality.hpp>
#include <laplace/formal_laplace.hpp>
#include <laplace/gevrey.hpp>
#include <laplace/padic_estimates.hpp>
#include <laplace/parallel.hpp>
#include <laplace/standard_laplace.hpp>

namespace laplace
{

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    std::optional<std::size_t> dim;   // restrict random series to this dimension
    std::optional<std::size_t> count; // override the sample count
};

struct SuiteResult {
    std::string name;
    int criterion = 0;
    long checks = 0;
    long failures = 0;
    std::string counterexample;
    std::uint64_t seed = 0;
    double seconds = 0;
    double budget = 0;
    bool correct() const { return checks > 0 && failures == 0; }
    bool within_budget() const { return seconds < budget; }
    bool passed() const { return correct() && within_budget(); }
};

namespace detail
{

using Rng = std::mt19937_64;

inline Rng sample_rng(std::uint64_t seed, std::size_t i)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    return Rng(seq);
}

inline long uniform(Rng &rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng &rng, long num = 9, long den = 6)
{
    return Rational(uniform(rng, -num, num), uniform(rng, 1, den));
}

inline Rational random_nonzero(Rng &rng, long num = 9, long den = 6)
{
    Rational r;
    do {
        r = random_rational(rng, num, den);
    } while (r.is_zero());
    return r;
}

inline Rational random_non_integer(Rng &rng, long num = 7, long den = 5)
{
    Rational r;
    do {
        r = Rational(uniform(rng, -num, num), uniform(rng, 2, den));
    } while (r.is_integer());
    return r;
}

// Random finite series: terms in a box of the given radius, log powers up to kmax.
inline LogLaurentSeries<Rational> random_series(Rng &rng, std::size_t d, long radius, long kmax, bool allow_negative)
{
    std::vector<Rational> gamma;
    for (std::size_t i = 0; i < d; ++i) {
        gamma.push_back(random_non_integer(rng));
    }
    Orthant o = allow_negative && uniform(rng, 0, 3) == 0 ? Orthant::negative : Orthant::positive;
    int sgn = o == Orthant::positive ? 1 : -1;
    LogLaurentSeries<Rational> s(gamma, o);
    long n_terms = uniform(rng, 1, 4);
    while (s.is_zero()) {
        for (long t = 0; t < n_terms; ++t) {
            MultiIndex a(d), k(d);
            for (std::size_t i = 0; i < d; ++i) {
                a[i] = sgn * uniform(rng, 0, radius);
                k[i] = uniform(rng, 0, kmax);
            }
            s.add_term(a, k, random_nonzero(rng));
        }
    }
    return s;
}

// Integer matrix with determinant 1 (unit lower times unit upper triangular).
inline Matrix random_unimodular(Rng &rng, std::size_t n)
{
    Matrix L = Matrix::identity(n), U = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            L(i, j) = Rational(uniform(rng, -2, 2));
            U(j, i) = Rational(uniform(rng, -2, 2));
        }
    }
    return L * U;
}

inline Matrix jordan_block(const Rational &g, std::size_t n)
{
    Matrix m = Matrix::scalar(n, g);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = Rational(1);
    }
    return m;
}

inline Matrix conjugate(const Matrix &m, const Matrix &p) { return p * m * p.inverse(); }

// Exponent matrix with non-integral rational spectrum: diagonal, single
// Jordan block or a mixed Jordan form, conjugated by a unimodular matrix.
inline Matrix random_exponent_matrix(Rng &rng, std::size_t kind)
{
    switch (kind % 3) {
    case 0: {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
        std::vector<Rational> diag;
        for (std::size_t i = 0; i < n; ++i) {
            diag.push_back(random_non_integer(rng));
        }
        return conjugate(Matrix::diagonal(diag), random_unimodular(rng, n));
    }
    case 1: {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3));
        return conjugate(jordan_block(random_non_integer(rng), n), random_unimodular(rng, n));
    }
    default: {
        Matrix j = jordan_block(random_non_integer(rng), 2);
        Matrix m = Matrix::scalar(3, random_non_integer(rng));
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                m(a, b) = j(a, b);
            }
        }
        if (m(0, 0) == m(2, 2)) {
            m(2, 2) += Rational(1, 2);
        }
        return conjugate(m, random_unimodular(rng, 3));
    }
    }
}

// Commuting pair: simultaneously diagonal, or (J, q J + c I) for a Jordan block J.
inline std::pair<Matrix, Matrix> random_commuting_pair(Rng &rng)
{
    Matrix p = random_unimodular(rng, 2);
    if (uniform(rng, 0, 1) == 0) {
        Matrix a = Matrix::diagonal({random_non_integer(rng), random_non_integer(rng)});
        Matrix b = Matrix::diagonal({random_non_integer(rng), random_non_integer(rng)});
        return {conjugate(a, p), conjugate(b, p)};
    }
    Rational g = random_non_integer(rng);
    Matrix j = jordan_block(g, 2);
    Rational q, c;
    do {
        q = random_nonzero(rng, 3, 2);
        c = random_rational(rng, 3, 3);
    } while ((q * g + c).is_integer());
    return {conjugate(j, p), conjugate(j * q + Matrix::scalar(2, c), p)};
}

inline MatrixSeries random_matrix_series(Rng &rng, std::size_t d)
{
    std::vector<Matrix> lambda;
    if (d == 1) {
        lambda.push_back(random_exponent_matrix(rng, static_cast<std::size_t>(uniform(rng, 0, 2))));
    } else {
        auto [a, b] = random_commuting_pair(rng);
        lambda = {a, b};
    }
    std::size_t nu = lambda.front().rows();
    std::size_t mu = static_cast<std::size_t>(uniform(rng, 1, 2));
    Orthant o = uniform(rng, 0, 2) == 0 ? Orthant::negative : Orthant::positive;
    int sgn = o == Orthant::positive ? 1 : -1;
    MatrixSeries m(lambda, mu, o);
    while (m.is_zero()) {
        long n_terms = uniform(rng, 1, 4);
        for (long t = 0; t < n_terms; ++t) {
            MultiIndex a(d);
            for (std::size_t i = 0; i < d; ++i) {
                a[i] = sgn * uniform(rng, 0, 3);
            }
            Matrix y(mu, nu);
            for (std::size_t r = 0; r < mu; ++r) {
                for (std::size_t c = 0; c < nu; ++c) {
                    y(r, c) = random_rational(rng, 5, 4);
                }
            }
            m.add_term(a, y);
        }
    }
    return m;
}

inline std::string describe(const LogLaurentSeries<Rational> &s)
{
    std::ostringstream os;
    os << "gamma=(";
    for (std::size_t i = 0; i < s.dim(); ++i) {
        os << (i ? "," : "") << s.gamma()[i].to_string();
    }
    os << ") " << s.to_string();
    return os.str();
}

// Collects failures from parallel workers, keeping the one with the smallest index.
class FailureLog
{
public:
    void check(bool ok, std::size_t index, const std::function<std::string()> &what)
    {
        std::lock_guard<std::mutex> lock(mu_);
        ++checks_;
        if (!ok) {
            ++failures_;
            if (index < first_) {
                first_ = index;
                text_ = what();
            }
        }
    }
    void fill(SuiteResult &r) const
    {
        r.checks = checks_;
        r.failures = failures_;
        r.counterexample = text_;
    }

private:
    std::mutex mu_;
    long checks_ = 0, failures_ = 0;
    std::size_t first_ = static_cast<std::size_t>(-1);
    std::string text_;
};

template <class F>
SuiteResult timed(const std::string &name, int criterion, double budget, std::uint64_t seed, F &&body)
{
    SuiteResult r;
    r.name = name;
    r.criterion = criterion;
    r.budget = budget;
    r.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    FailureLog log;
    try {
        body(log);
    } catch (const std::exception &e) {
        log.check(false, 0, [&] { return std::string("exception: ") + e.what(); });
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log.fill(r);
    return r;
}

inline std::vector<MultiIndex> indices_up_to(std::size_t d, long n)
{
    std::vector<MultiIndex> out;
    for (long t = 0; t <= n; ++t) {
        auto layer = simplex(d, t);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace detail

// Criterion 1: d^beta L(s) = L((-1)^{|beta|} x^beta s) and L(d^beta s) = x^beta L(s).
inline SuiteResult suite_op2(const SuiteOptions &opt = {})
{
    return detail::timed("op2", 1, 60, opt.seed, [&](detail::FailureLog &log) {
        std::size_t count = opt.count.value_or(200);
        parallel_for(count, [&](std::size_t i) {
            auto rng = detail::sample_rng(opt.seed, i);
            std::size_t d = opt.dim.value_or(1 + i % 3);
            auto s = detail::random_series(rng, d, 5, 2, true);
            LaplaceImage ls = laplace_series(s);
            for (const auto &beta : detail::indices_up_to(d, 3)) {
                Rational sign = beta.total() % 2 ? -1 : 1;
                bool a = derive(ls.series, beta) == laplace_series(monomial_mul(s, beta) * sign, s.gamma()).series;
                bool b = laplace_series(derive(s, beta), s.gamma()).series == monomial_mul(ls.series, beta);
                log.check(a && b, i, [&] {
                    return "sample " + std::to_string(i) + " beta=" + beta.to_string() + (a ? "" : " [d^beta L]") +
                           (b ? "" : " [L d^beta]") + " s: " + detail::describe(s);
                });
            }
        });
    });
}

// Criterion 2: recurrence tables against closed forms, r-tables against rho.
inline SuiteResult suite_rho(const SuiteOptions &opt = {})
{
    return detail::timed("rho", 2, 10, opt.seed, [&](detail::FailureLog &log) {
        const std::vector<Rational> gammas{Rational(1, 2), Rational(-1, 3), Rational(5, 7)};
        const long n_max = 50;
        std::vector<std::pair<unsigned, Rational>> cases;
        for (unsigned k = 0; k <= 4; ++k) {
            for (const auto &g : gammas) {
                cases.emplace_back(k, g);
            }
        }
        parallel_for(cases.size(), [&](std::size_t c) {
            auto [k, g] = cases[c];
            std::string tag = "k=" + std::to_string(k) + " gamma=" + g.to_string();
            RhoTable rho(k, g, n_max);
            for (long n = -n_max; n <= n_max; ++n) {
                RhoRow closed = closed_form_row(k, {g + Rational(n)});
                bool ok = true;
                for (unsigned j = 0; j <= k; ++j) {
                    ok = ok && rebase(closed[j], {g}) == rho.entry(n, j);
                }
                log.check(ok, c, [&] { return tag + " n=" + std::to_string(n) + ": recurrence differs from closed form"; });
            }
            RTable r(k, g, n_max);
            log.check(check_rho_r_consistency(rho, r), c, [&] { return tag + ": r-table does not reproduce rho"; });
            if (k >= 1) {
                log.check(detect_recurrence_sign(k, g) == rho_sign, c,
                          [&] { return tag + ": closed form selects the other sign"; });
            }
        });
        // the sign used by the tables is the one under which the commutation suite holds
        SuiteOptions small = opt;
        small.count = 24;
        SuiteResult op = suite_op2(small);
        log.check(op.correct(), 0, [&] { return "commutation fails with the adopted sign: " + op.counterexample; });
    });
}

// Criterion 3: invC, the derivation/multiplication rules and the cocycle.
inline SuiteResult suite_formal(const SuiteOptions &opt = {})
{
    return detail::timed("formal", 3, 30, opt.seed, [&](detail::FailureLog &log) {
        std::size_t count = opt.count.value_or(50);
        const std::vector<Rational> taus{Rational(1), Rational(2), Rational(-1, 3), Rational(3, 5)};
        parallel_for(count, [&](std::size_t i) {
            auto rng = detail::sample_rng(opt.seed, i);
            std::vector<Matrix> lams;
            if (i % 3 == 2) {
                auto [a, b] = detail::random_commuting_pair(rng);
                lams = {a, b};
            } else {
                lams = {detail::random_exponent_matrix(rng, i % 3)};
            }
            Rational tau = taus[i % taus.size()];
            for (const auto &lam : lams) {
                std::string tag = "sample " + std::to_string(i) + " Lambda=" + lam.to_string() + " tau=" + tau.to_string();
                for (long n = -20; n <= 20; ++n) {
                    log.check(check_invC(lam, tau, n), i, [&] { return tag + " invC n=" + std::to_string(n); });
                }
                CoeffMatrixFn c(lam, tau);
                for (long n = -30; n <= 30; ++n) {
                    log.check(check_cocycle(c, n), i, [&] { return tag + " cocycle n=" + std::to_string(n); });
                }
            }
            std::size_t d = 1 + i % 2;
            MatrixSeries m = detail::random_matrix_series(rng, d);
            std::vector<Rational> tv{tau};
            for (const auto &beta : detail::indices_up_to(d, 2)) {
                Op3Result r = check_op3(m, tv, beta);
                log.check(r.derivation_side && r.multiplication_side, i, [&] {
                    return "sample " + std::to_string(i) + " op3 beta=" + beta.to_string() +
                           (r.derivation_side ? "" : " [derivation]") + (r.multiplication_side ? "" : " [multiplication]");
                });
            }
            log.check(double_transform_check(m, tv), i,
                      [&] { return "sample " + std::to_string(i) + " double transform"; });
        });
    });
}

// Criterion 4: standard and formal coefficients agree for nu = 1, tau = 1.
inline SuiteResult suite_bridge(const SuiteOptions &opt = {})
{
    return detail::timed("bridge", 4, 5, opt.seed, [&](detail::FailureLog &log) {
        for (const auto &g : {Rational(1, 2), Rational(-1, 3)}) {
            for (long n = -40; n <= 40; ++n) {
                log.check(cross_check_standard(g, n), 0,
                          [&] { return "gamma=" + g.to_string() + " n=" + std::to_string(n); });
            }
        }
    });
}

inline std::vector<DualityPair> duality_corpus()
{
    std::vector<DualityPair> base{euler_pair(Rational(1, 2)), euler_pair(Rational(-2, 3)),
                                  hypergeometric_pair(Rational(1, 2), 10), hypergeometric_pair(Rational(-1, 3), 10),
                                  hypergeometric_pair(Rational(5, 7), 8)};
    std::vector<DualityPair> all = base;
    for (auto [a, b] : {std::pair{0, 2}, std::pair{2, 3}, std::pair{0, 1}, std::pair{3, 1}}) {
        for (auto &p : tensor_pairs(base[a], base[b])) {
            all.push_back(std::move(p));
        }
    }
    return all;
}

// Criterion 5: F_tau(phi) annihilates the transform image inside the window.
inline SuiteResult suite_duality(const SuiteOptions &opt = {})
{
    return detail::timed("duality", 5, 30, opt.seed, [&](detail::FailureLog &log) {
        auto pairs = duality_corpus();
        const std::vector<Rational> taus{Rational(1), Rational(2), Rational(-1, 3)};
        parallel_for(pairs.size() * taus.size(), [&](std::size_t c) {
            const auto &p = pairs[c / taus.size()];
            const Rational &tau = taus[c % taus.size()];
            DualityReport r = duality_check(p, {tau});
            log.check(r.passed(), c, [&] {
                return p.name + " gamma=" + p.solution.gamma()[0].to_string() + " tau=" + tau.to_string() + " " +
                       r.residual + (r.standard_identity ? "" : " [standard identity]") +
                       (r.formal_identity ? "" : " [formal identity]");
            });
        });
    });
}

// Criterion 6: val_p((gamma)_{n+1}) / n -> 1/(p-1).
inline SuiteResult suite_pochhammer_valuation(const SuiteOptions &opt = {})
{
    return detail::timed("pochhammer-valuation", 6, 10, opt.seed, [&](detail::FailureLog &log) {
        for (auto [g, p] : {std::pair{Rational(1, 2), 3L}, std::pair{Rational(1, 3), 2L}, std::pair{Rational(2, 5), 7L}}) {
            ValuationReport r = pochhammer_valuation_profile(g, 2000, PadicContext(p));
            log.check(r.passed, 0, [&] {
                return "gamma=" + g.to_string() + " p=" + std::to_string(p) +
                       " w/n=" + (r.samples.back().second.value() / Rational(2000)).to_string();
            });
        }
    });
}

struct CNormCase {
    std::string name;
    Matrix lambda;
    long p;
    Rational tau;
};

inline std::vector<CNormCase> c_norm_corpus()
{
    Matrix mixed = Matrix::scalar(3, Rational(1, 4));
    mixed(0, 0) = mixed(1, 1) = Rational(1, 2);
    mixed(0, 1) = Rational(1);
    Matrix p{{Rational(1), Rational(2), Rational(0)}, {Rational(0), Rational(1), Rational(-1)}, {Rational(1), Rational(1), Rational(2)}};
    return {
        {"scalar 1/2", Matrix{{Rational(1, 2)}}, 3, Rational(1)},
        {"scalar 1/2, tau=3", Matrix{{Rational(1, 2)}}, 3, Rational(3)},
        {"jordan2 1/2", detail::jordan_block(Rational(1, 2), 2), 3, Rational(1, 3)},
        {"diag 1/3,2/3", Matrix::diagonal({Rational(1, 3), Rational(2, 3)}), 2, Rational(2)},
        {"jordan3 2/5", detail::jordan_block(Rational(2, 5), 3), 7, Rational(1)},
        {"conjugated jordan2+1", detail::conjugate(mixed, p), 3, Rational(1)},
    };
}

// Criterion 7: C-norm slopes at n = 1000 and the two-sided envelopes at every n.
inline SuiteResult suite_c_norm(const SuiteOptions &opt = {})
{
    return detail::timed("c-norm", 7, 60, opt.seed, [&](detail::FailureLog &log) {
        auto cases = c_norm_corpus();
        parallel_for(cases.size() * 2, [&](std::size_t c) {
            const auto &cs = cases[c / 2];
            Direction dir = c % 2 ? Direction::minus : Direction::plus;
            ValuationReport r = c_norm_profile(cs.lambda, cs.tau, dir, 1000, PadicContext(cs.p));
            log.check(r.passed, c, [&] {
                return cs.name + (dir == Direction::plus ? " (+)" : " (-)") + " envelopes=" +
                       (r.envelopes_hold ? "ok" : "violated") + " limit=" + (r.limit_holds ? "ok" : "violated") + " " +
                       r.detail;
            });
        });
    });
}

// Criterion 8: norm inequalities on random invertible matrices.
inline SuiteResult suite_norm_inequalities(const SuiteOptions &opt = {})
{
    return detail::timed("norm-inequalities", 8, 10, opt.seed, [&](detail::FailureLog &log) {
        std::size_t count = opt.count.value_or(500);
        const long primes[] = {2, 3, 5};
        parallel_for(count, [&](std::size_t i) {
            auto rng = detail::sample_rng(opt.seed, i);
            std::size_t nu = 1 + i % 4;
            long p = primes[i % 3];
            auto entry = [&] {
                Rational x = detail::random_rational(rng, 12, 12);
                return x * Rational(p).pow(detail::uniform(rng, -2, 2));
            };
            auto invertible = [&] {
                for (;;) {
                    Matrix m(nu, nu);
                    for (std::size_t a = 0; a < nu; ++a) {
                        for (std::size_t b = 0; b < nu; ++b) {
                            m(a, b) = entry();
                        }
                    }
                    if (!m.determinant().is_zero()) {
                        return m;
                    }
                }
            };
            Matrix y = invertible(), z = invertible();
            NormInequalityReport r = norm_inequality_check(y, z, PadicContext(p));
            log.check(r.passed(), i, [&] {
                return "p=" + std::to_string(p) + " Y=" + y.to_string() + " Z=" + z.to_string();
            });
        });
    });
}

struct GrowthCase {
    std::string name;
    std::vector<Matrix> lambda;
    long p;
    Rational tau;
    Orthant orthant;
};

inline MatrixSeries unit_series(const std::vector<Matrix> &lambda, Orthant o, long radius)
{
    std::size_t d = lambda.size(), nu = lambda.front().rows();
    MatrixSeries m(lambda, nu, o);
    int sgn = o == Orthant::positive ? 1 : -1;
    for (const auto &a : detail::indices_up_to(d, radius)) {
        MultiIndex b = a;
        for (std::size_t i = 0; i < d; ++i) {
            b[i] *= sgn;
        }
        m.add_term(b, Matrix::identity(nu));
    }
    return m;
}

inline std::vector<GrowthCase> growth_corpus()
{
    Matrix h{{Rational(1, 2)}}, q{{Rational(1, 4)}};
    Matrix d1 = Matrix::diagonal({Rational(1, 2), Rational(1, 4)}), d2 = Matrix::diagonal({Rational(1, 4), Rational(-1, 2)});
    std::vector<GrowthCase> out;
    for (Orthant o : {Orthant::positive, Orthant::negative}) {
        std::string tag = o == Orthant::positive ? " (+)" : " (-)";
        out.push_back({"d=1 nu=1" + tag, {h}, 3, Rational(1), o});
        out.push_back({"d=1 nu=1 tau=3" + tag, {h}, 3, Rational(3), o});
        out.push_back({"d=1 nu=2" + tag, {d1}, 3, Rational(1), o});
        out.push_back({"d=2 nu=1" + tag, {h, q}, 3, Rational(1), o});
        out.push_back({"d=2 nu=2 tau=1/3" + tag, {d1, d2}, 3, Rational(1, 3), o});
    }
    return out;
}

// Criterion 9: coefficient growth of the formal image along rays.
inline SuiteResult suite_prop46(const SuiteOptions &opt = {})
{
    return detail::timed("prop46", 9, 30, opt.seed, [&](detail::FailureLog &log) {
        auto cases = growth_corpus();
        parallel_for(cases.size(), [&](std::size_t c) {
            const auto &g = cases[c];
            MatrixSeries m = unit_series(g.lambda, g.orthant, 15);
            GrowthReport r = z_coefficient_growth(m, g.tau, 15, PadicContext(g.p));
            log.check(r.passed, c, [&] { return g.name + ": " + r.detail; });
        });
    });
}

inline std::map<MultiIndex, Rational> reciprocal_factorials(long n_max)
{
    std::map<MultiIndex, Rational> out;
    for (long n = 0; n <= n_max; ++n) {
        out[MultiIndex{n}] = Rational(1) / Rational(factorial(n));
    }
    return out;
}

inline std::map<MultiIndex, Rational> geometric_reciprocal(long n_max)
{
    std::map<MultiIndex, Rational> out;
    for (long n = 0; n <= n_max; ++n) {
        out[MultiIndex{-n}] = Rational(1);
    }
    return out;
}

// Criterion 10: order shifts under the transform and the lcd bound.
inline SuiteResult suite_gevrey(const SuiteOptions &opt = {})
{
    return detail::timed("gevrey", 10, 60, opt.seed, [&](detail::FailureLog &log) {
        const long window = 100;
        const Rational g(1, 2);
        NgaElement ex{{NgaSummand{reciprocal_factorials(window), {g}, {0}, Orthant::positive}}};
        OrderShiftReport a = transform_order_shift(ex, -1, window);
        log.check(a.passed() && a.target_order == 0, 0, [&] { return std::string("exponential analogue: s=-1 -> 0"); });
        NgaElement geo{{NgaSummand{geometric_reciprocal(window), {g}, {0}, Orthant::negative}}};
        OrderShiftReport b = transform_order_shift(geo, 0, window);
        log.check(b.passed() && b.target_order == -1, 1, [&] { return std::string("geometric analogue: s=0 -> -1"); });
        // the denominator bounds behind both images
        log.check(lcd_growth_check({g}, {Rational(1)}, window).passed, 2,
                  [&] { return std::string("lcd of (1/2)_n/(1)_n"); });
        log.check(lcd_growth_check({Rational(1)}, {-g}, window).passed, 3,
                  [&] { return std::string("lcd of (1)_n/(-1/2)_n"); });
        LcdGrowthReport l = lcd_growth_check({Rational(1, 2)}, {Rational(1, 3)}, 200);
        log.check(l.passed, 4, [&] {
            return "lcd (1/2)/(1/3): front " + std::to_string(l.fit.front_slope) + " back " + std::to_string(l.fit.back_slope);
        });
    });
}

// Criterion 11: the transform of a nonzero series is nonzero, with certificate.
inline SuiteResult suite_injectivity(const SuiteOptions &opt = {})
{
    return detail::timed("injectivity", 11, 10, opt.seed, [&](detail::FailureLog &log) {
        std::size_t count = opt.count.value_or(100);
        parallel_for(count, [&](std::size_t i) {
            auto rng = detail::sample_rng(opt.seed, i);
            std::size_t d = opt.dim.value_or(1 + i % 3);
            auto s = detail::random_series(rng, d, 5, 2, true);
            bool nonzero = !laplace_series(s).series.is_zero();
            bool cert = injectivity_certificate(s).certified();
            log.check(nonzero && cert, i, [&] {
                return "sample " + std::to_string(i) + (nonzero ? "" : " [zero image]") + (cert ? "" : " [no certificate]") +
                       " s: " + detail::describe(s);
            });
        });
    });
}

struct SuiteEntry {
    std::string name;
    std::function<SuiteResult(const SuiteOptions &)> run;
};

inline const std::vector<SuiteEntry> &suite_registry()
{
    static const std::vector<SuiteEntry> reg{
        {"op2", suite_op2},
        {"rho", suite_rho},
        {"formal", suite_formal},
        {"bridge", suite_bridge},
        {"duality", suite_duality},
        {"pochhammer-valuation", suite_pochhammer_valuation},
        {"c-norm", suite_c_norm},
        {"norm-inequalities", suite_norm_inequalities},
        {"prop46", suite_prop46},
        {"gevrey", suite_gevrey},
        {"injectivity", suite_injectivity},
    };
    return reg;
}

inline std::vector<SuiteResult> run_suites(const std::string &name, const SuiteOptions &opt = {})
{
    std::vector<SuiteResult> out;
    bool found = false;
    for (const auto &e : suite_registry()) {
        if (name == "all" || name == e.name) {
            out.push_back(e.run(opt));
            found = true;
        }
    }
    require(found, "unknown suite \"" + name + "\"");
    return out;
}

} // namespace laplace
