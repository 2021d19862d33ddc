#pragma once

// JSON encodings of the library's values.  Rationals are strings "a/b" (or
// integers), so every artifact round-trips exactly.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <laplace/errors.hpp>
#include <laplace/gamma_ring.hpp>
#include <laplace/gevrey.hpp>
#include <laplace/log_series.hpp>
#include <laplace/matrix_series.hpp>
#include <laplace/padic_estimates.hpp>
#include <laplace/standard_laplace.hpp>
#include <laplace/weyl.hpp>

namespace laplace::json_io
{

using json = nlohmann::json;

inline json to_json(const Rational &r) { return r.to_string(); }

inline Rational rational_from(const json &j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (!j.is_string()) {
        throw parse_error("expected a rational string, got " + j.dump());
    }
    return Rational::parse(j.get<std::string>());
}

inline json to_json(const MultiIndex &m)
{
    json a = json::array();
    for (long x : m) {
        a.push_back(x);
    }
    return a;
}

inline MultiIndex multi_index_from(const json &j)
{
    if (!j.is_array()) {
        throw parse_error("expected an integer array, got " + j.dump());
    }
    std::vector<long> v;
    for (const auto &x : j) {
        if (!x.is_number_integer()) {
            throw parse_error("expected an integer, got " + x.dump());
        }
        v.push_back(x.get<long>());
    }
    return MultiIndex(std::move(v));
}

inline json to_json(const std::vector<Rational> &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(to_json(x));
    }
    return a;
}

inline std::vector<Rational> rationals_from(const json &j)
{
    if (!j.is_array()) {
        throw parse_error("expected an array of rationals, got " + j.dump());
    }
    std::vector<Rational> v;
    for (const auto &x : j) {
        v.push_back(rational_from(x));
    }
    return v;
}

inline const json &field(const json &j, const char *name)
{
    if (!j.is_object() || !j.contains(name)) {
        throw parse_error(std::string("missing field \"") + name + "\"");
    }
    return j.at(name);
}

inline json to_json(const Matrix &m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            row.push_back(to_json(m(i, k)));
        }
        rows.push_back(row);
    }
    return rows;
}

inline Matrix matrix_from(const json &j)
{
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw parse_error("expected a matrix as an array of rows");
    }
    std::size_t r = j.size(), c = j.front().size();
    std::vector<Rational> data;
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != c) {
            throw parse_error("matrix rows have unequal lengths");
        }
        for (const auto &x : row) {
            data.push_back(rational_from(x));
        }
    }
    return Matrix(r, c, std::move(data));
}

inline std::string orthant_name(Orthant o) { return o == Orthant::positive ? "+" : "-"; }

inline Orthant orthant_from(const json &j, const char *name = "orthant")
{
    if (!j.contains(name)) {
        return Orthant::positive;
    }
    std::string s = j.at(name).get<std::string>();
    if (s == "+" || s == "positive") {
        return Orthant::positive;
    }
    if (s == "-" || s == "negative") {
        return Orthant::negative;
    }
    throw parse_error("orthant must be \"+\" or \"-\", got \"" + s + "\"");
}

// GammaPoly: monomials are lists of [variable, order, exponent].
inline json to_json(const GammaPoly &p)
{
    json terms = json::array();
    for (const auto &[m, c] : p.terms()) {
        json mono = json::array();
        for (const auto &[g, e] : m) {
            mono.push_back({g.var, g.order, e});
        }
        terms.push_back({{"monomial", mono}, {"coeff", to_json(c)}});
    }
    return {{"base_gamma", to_json(p.base())}, {"max_order", p.max_order()}, {"terms", terms}};
}

inline GammaPoly gamma_poly_from(const json &j)
{
    std::vector<Rational> base = rationals_from(field(j, "base_gamma"));
    unsigned K = j.contains("max_order") ? j.at("max_order").get<unsigned>() : GammaPoly::default_order;
    GammaPoly p(base, K);
    for (const auto &t : field(j, "terms")) {
        GammaMonomial m;
        for (const auto &g : field(t, "monomial")) {
            if (!g.is_array() || g.size() != 3) {
                throw parse_error("monomial factors are [variable, order, exponent]");
            }
            m.emplace_back(Generator{g[0].get<std::size_t>(), g[1].get<unsigned>()}, g[2].get<unsigned>());
        }
        std::sort(m.begin(), m.end());
        p.add_term(m, rational_from(field(t, "coeff")));
    }
    return p;
}

template <class R>
json coeff_to_json(const R &c)
{
    return to_json(c);
}

template <class R>
R coeff_from(const json &j);

template <>
inline Rational coeff_from<Rational>(const json &j)
{
    return rational_from(j);
}

template <>
inline GammaPoly coeff_from<GammaPoly>(const json &j)
{
    return gamma_poly_from(j);
}

template <class R>
json to_json(const LogLaurentSeries<R> &s)
{
    json terms = json::array();
    for (const auto &[k, c] : s.terms()) {
        terms.push_back({{"alpha", to_json(k.alpha)}, {"logpow", to_json(k.logpow)}, {"coeff", coeff_to_json(c)}});
    }
    return {{"d", s.dim()}, {"gamma", to_json(s.gamma())}, {"orthant", orthant_name(s.orthant())}, {"terms", terms}};
}

template <class R = Rational>
LogLaurentSeries<R> series_from(const json &j)
{
    std::vector<Rational> gamma = rationals_from(field(j, "gamma"));
    if (j.contains("d") && j.at("d").get<std::size_t>() != gamma.size()) {
        throw parse_error("\"d\" does not match the length of \"gamma\"");
    }
    LogLaurentSeries<R> s(gamma, orthant_from(j));
    for (const auto &t : field(j, "terms")) {
        MultiIndex a = multi_index_from(field(t, "alpha"));
        MultiIndex k = t.contains("logpow") ? multi_index_from(t.at("logpow")) : MultiIndex::zero(gamma.size());
        s.add_term(a, k, coeff_from<R>(field(t, "coeff")));
    }
    return s;
}

inline json to_json(const MatrixSeries &m)
{
    json lam = json::array();
    for (const auto &l : m.lambda()) {
        lam.push_back(to_json(l));
    }
    json terms = json::array();
    for (const auto &[a, y] : m.terms()) {
        terms.push_back({{"alpha", to_json(a)}, {"Y", to_json(y)}});
    }
    return {{"nu", m.nu()},       {"mu", m.mu()},   {"d", m.dim()}, {"orthant", orthant_name(m.orthant())},
            {"lambda", lam},       {"terms", terms}};
}

inline MatrixSeries matrix_series_from(const json &j)
{
    std::vector<Matrix> lambda;
    for (const auto &l : field(j, "lambda")) {
        lambda.push_back(matrix_from(l));
    }
    if (lambda.empty()) {
        throw parse_error("\"lambda\" must list one matrix per variable");
    }
    std::size_t mu = field(j, "mu").get<std::size_t>();
    if (j.contains("d") && j.at("d").get<std::size_t>() != lambda.size()) {
        throw parse_error("\"d\" does not match the number of exponent matrices");
    }
    if (j.contains("nu") && j.at("nu").get<std::size_t>() != lambda.front().rows()) {
        throw parse_error("\"nu\" does not match the exponent matrix size");
    }
    MatrixSeries m(lambda, mu, orthant_from(j));
    for (const auto &t : field(j, "terms")) {
        m.add_term(multi_index_from(field(t, "alpha")), matrix_from(field(t, "Y")));
    }
    return m;
}

inline json to_json(const WeylOperator &op)
{
    json terms = json::array();
    for (const auto &[k, c] : op.terms()) {
        terms.push_back({{"x", to_json(k.first)}, {"dx", to_json(k.second)}, {"coeff", to_json(c)}});
    }
    return {{"d", op.dim()}, {"terms", terms}};
}

inline WeylOperator operator_from(const json &j)
{
    std::size_t d = field(j, "d").get<std::size_t>();
    WeylOperator op(d);
    for (const auto &t : field(j, "terms")) {
        op.add_term(multi_index_from(field(t, "x")), multi_index_from(field(t, "dx")), rational_from(field(t, "coeff")));
    }
    return op;
}

inline json to_json(const RTable &t)
{
    json rows = json::array();
    for (const auto &[n, j, l, r] : t.rows()) {
        rows.push_back({{"n", n}, {"j", j}, {"l", l}, {"r", to_json(r)}});
    }
    return {{"k", t.k()}, {"gamma", to_json(t.gamma())}, {"sign", t.sign()}, {"rows", rows}};
}

inline json to_json(const LaplaceImage &img)
{
    return {{"gamma_prefactor", to_json(img.gamma_ref)}, {"series", to_json(img.series)}};
}

inline json to_json(const Valuation &v) { return v.to_string(); }

inline json to_json(const ValuationReport &r)
{
    json samples = json::array();
    for (const auto &[n, w] : r.samples) {
        samples.push_back({n, to_json(w)});
    }
    json out = {{"sequence", r.sequence}, {"p", r.p},        {"samples", samples},
                {"target", to_json(r.target)}, {"tolerance", to_json(r.tolerance)},
                {"limit_holds", r.limit_holds}, {"passed", r.passed}};
    if (!r.lower.empty()) {
        out["lower"] = to_json(r.lower);
        out["upper"] = to_json(r.upper);
        out["envelopes_hold"] = r.envelopes_hold;
    }
    if (!r.detail.empty()) {
        out["detail"] = r.detail;
    }
    return out;
}

inline json to_json(const GevreyCertificate &c)
{
    json out = {{"s", std::to_string(c.s)},          {"size_slope", to_json(c.size_slope)},
                {"denom_slope", to_json(c.denom_slope)}, {"window", c.window},
                {"passed", c.passed}};
    if (!c.detail.empty()) {
        out["detail"] = c.detail;
    }
    return out;
}

inline json parse_text(const std::string &text, const std::string &origin = "input")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw parse_error(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline json read_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path.string());
}

// Write through a temporary file in the same directory, then rename.
inline void write_atomic(const std::filesystem::path &path, const std::string &content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw parse_error("cannot write " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw parse_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace laplace::json_io
