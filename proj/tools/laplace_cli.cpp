// laplace: command-line front end.
//
// Exit status: 0 on success or a passing check, 1 when a verification fails,
// 2 on malformed input or a violated precondition.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <laplace/laplace.hpp>

using namespace laplace;
using json_io::json;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

std::vector<Rational> parse_list(const std::string &text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(Rational::parse(item));
    }
    if (out.empty()) {
        throw parse_error("empty rational list");
    }
    return out;
}

// Inline JSON text, or a path to a JSON file.
json load(const std::string &arg)
{
    std::size_t first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        return json_io::parse_text(arg, "argument");
    }
    return json_io::read_file(arg);
}

void emit(const json &j, const std::string &output)
{
    std::string text = j.dump(2) + "\n";
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        json_io::write_atomic(output, text);
    }
}

json suite_json(const SuiteResult &r)
{
    json j = {{"suite", r.name},       {"criterion", r.criterion}, {"passed", r.passed()},
              {"checks", r.checks},    {"failures", r.failures},   {"seed", r.seed},
              {"seconds", r.seconds},  {"budget_seconds", r.budget}};
    if (!r.counterexample.empty()) {
        j["counterexample"] = r.counterexample;
    }
    return j;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Laplace and Fourier-Laplace transforms of log-Laurent series, with arithmetic estimates"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output;
    app.add_option("-o,--output,--out", output, "write the JSON result here (default: stdout)");

    // transform-standard
    auto *ts = app.add_subcommand("transform-standard", "standard transform of a log-Laurent series");
    std::string ts_input, ts_ref, ts_gamma;
    unsigned ts_rtable_k = 0;
    long ts_n = 10;
    bool ts_rtable = false;
    ts->add_option("-i,--input", ts_input, "series JSON (file or inline)");
    ts->add_option("--ref", ts_ref, "reference exponent, comma separated");
    ts->add_flag("--rtable", ts_rtable, "dump the r-table for --k, --gamma, --n instead");
    ts->add_option("--k", ts_rtable_k, "log order for --rtable");
    ts->add_option("--gamma", ts_gamma, "exponent for --rtable");
    ts->add_option("--n", ts_n, "largest shift for --rtable");

    // transform-formal
    auto *tf = app.add_subcommand("transform-formal", "formal transform of a matrix series");
    tf->alias("formal");
    std::string tf_input, tf_tau = "1";
    tf->add_option("-i,--input", tf_input, "matrix series JSON")->required();
    tf->add_option("--tau", tf_tau, "tau, one value or one per variable");

    // fourier-laplace
    auto *fl = app.add_subcommand("fourier-laplace", "Fourier-Laplace image of a differential operator");
    std::string fl_op, fl_input, fl_tau;
    std::size_t fl_d = 0;
    fl->add_option("--op", fl_op, "operator in infix form, e.g. \"x1*Dx1^2 + (3/2)*Dx1 - 1\"");
    fl->add_option("-i,--input", fl_input, "operator JSON");
    fl->add_option("--d", fl_d, "number of variables (inferred when omitted)");
    fl->add_option("--tau", fl_tau, "tau, one value or one per variable (default 1)");

    // verify
    auto *vf = app.add_subcommand("verify", "run verification suites");
    std::string vf_suite = "all";
    std::optional<std::size_t> vf_d, vf_count;
    std::uint64_t vf_seed = SuiteOptions{}.seed;
    vf->add_option("--suite", vf_suite, "suite name or \"all\"");
    vf->add_option("--d", vf_d, "dimension of random series");
    vf->add_option("--seed", vf_seed, "random seed");
    vf->add_option("--count", vf_count, "number of random samples");

    // estimate-padic
    auto *ep = app.add_subcommand("estimate-padic", "valuation profiles and norm estimates");
    std::string ep_profile = "pochhammer", ep_gamma, ep_lambda, ep_tau = "1", ep_dir = "+", ep_a, ep_b, ep_y, ep_z,
                ep_input;
    long ep_p = 2, ep_n = 100;
    ep->add_option("--profile", ep_profile, "pochhammer | c-norm | norm | lcd | z-growth")
        ->check(CLI::IsMember({"pochhammer", "c-norm", "norm", "lcd", "z-growth"}));
    ep->add_option("--gamma", ep_gamma, "exponent (pochhammer)");
    ep->add_option("--p", ep_p, "prime");
    ep->add_option("--n", ep_n, "largest index");
    ep->add_option("--lambda", ep_lambda, "exponent matrix JSON (c-norm)");
    ep->add_option("--tau", ep_tau, "tau (c-norm, z-growth)");
    ep->add_option("--direction", ep_dir, "+ or - (c-norm)")->check(CLI::IsMember({"+", "-"}));
    ep->add_option("--a", ep_a, "numerator parameters (lcd)");
    ep->add_option("--b", ep_b, "denominator parameters (lcd)");
    ep->add_option("--Y", ep_y, "matrix JSON (norm)");
    ep->add_option("--Z", ep_z, "matrix JSON (norm)");
    ep->add_option("-i,--input", ep_input, "matrix series JSON (z-growth)");

    // certify-gevrey
    auto *cg = app.add_subcommand("certify-gevrey", "arithmetic Gevrey certificate of a series");
    std::string cg_input;
    long cg_s = 0, cg_window = 0;
    bool cg_transform = false;
    cg->add_option("-i,--input", cg_input, "series JSON")->required();
    cg->add_option("--s", cg_s, "Gevrey order (integer)")->required();
    cg->add_option("--window", cg_window, "support radius (default: largest |alpha|)");
    cg->add_flag("--transform", cg_transform, "also transform and certify the image at the shifted order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (ts->parsed()) {
            if (ts_rtable) {
                require(!ts_gamma.empty(), "--rtable needs --gamma");
                emit(json_io::to_json(RTable(ts_rtable_k, Rational::parse(ts_gamma), ts_n)), output);
                return exit_ok;
            }
            require(!ts_input.empty(), "transform-standard needs --input");
            auto s = json_io::series_from<Rational>(load(ts_input));
            std::optional<std::vector<Rational>> ref;
            if (!ts_ref.empty()) {
                ref = parse_list(ts_ref);
            }
            emit(json_io::to_json(laplace_series(s, ref)), output);
            return exit_ok;
        }
        if (tf->parsed()) {
            MatrixSeries m = json_io::matrix_series_from(load(tf_input));
            emit(json_io::to_json(formal_transform(m, parse_list(tf_tau))), output);
            return exit_ok;
        }
        if (fl->parsed()) {
            require(fl_op.empty() != fl_input.empty(), "fourier-laplace needs exactly one of --op and --input");
            WeylOperator op = fl_op.empty() ? json_io::operator_from(load(fl_input)) : parse_operator(fl_op, fl_d);
            WeylOperator f = fl_tau.empty() ? fourier_laplace(op) : fourier_laplace(op, parse_list(fl_tau));
            json j = json_io::to_json(f);
            j["text"] = f.to_string();
            emit(j, output);
            return exit_ok;
        }
        if (vf->parsed()) {
            SuiteOptions opt;
            opt.seed = vf_seed;
            opt.dim = vf_d;
            opt.count = vf_count;
            if (vf_d) {
                require(*vf_d >= 1 && *vf_d <= 3, "--d must be 1, 2 or 3");
            }
            bool all_passed = true;
            json results = json::array();
            for (const auto &r : run_suites(vf_suite, opt)) {
                all_passed = all_passed && r.passed();
                results.push_back(suite_json(r));
                std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << r.seconds
                          << " s)\n";
            }
            emit({{"seed", vf_seed}, {"passed", all_passed}, {"suites", results}}, output);
            return all_passed ? exit_ok : exit_failed;
        }
        if (ep->parsed()) {
            PadicContext ctx(ep_p);
            if (ep_profile == "pochhammer") {
                require(!ep_gamma.empty(), "pochhammer profile needs --gamma");
                ValuationReport r = pochhammer_valuation_profile(Rational::parse(ep_gamma), ep_n, ctx);
                emit(json_io::to_json(r), output);
                return r.passed ? exit_ok : exit_failed;
            }
            if (ep_profile == "c-norm") {
                require(!ep_lambda.empty(), "c-norm profile needs --lambda");
                Matrix lam = json_io::matrix_from(load(ep_lambda));
                ValuationReport r = c_norm_profile(lam, Rational::parse(ep_tau),
                                                   ep_dir == "+" ? Direction::plus : Direction::minus, ep_n, ctx);
                emit(json_io::to_json(r), output);
                return r.passed ? exit_ok : exit_failed;
            }
            if (ep_profile == "norm") {
                require(!ep_y.empty() && !ep_z.empty(), "norm check needs --Y and --Z");
                NormInequalityReport r =
                    norm_inequality_check(json_io::matrix_from(load(ep_y)), json_io::matrix_from(load(ep_z)), ctx);
                emit({{"p", ep_p},
                      {"vY", json_io::to_json(r.vY)},
                      {"vYinv", json_io::to_json(r.vYinv)},
                      {"vZ", json_io::to_json(r.vZ)},
                      {"vYZ", json_io::to_json(r.vYZ)},
                      {"vdetY", json_io::to_json(r.vdetY)},
                      {"vdetZ", json_io::to_json(r.vdetZ)},
                      {"passed", r.passed()}},
                     output);
                return r.passed() ? exit_ok : exit_failed;
            }
            if (ep_profile == "lcd") {
                std::vector<Rational> a = ep_a.empty() ? std::vector<Rational>{} : parse_list(ep_a);
                std::vector<Rational> b = ep_b.empty() ? std::vector<Rational>{} : parse_list(ep_b);
                LcdGrowthReport r = lcd_growth_check(a, b, ep_n);
                json samples = json::array();
                for (const auto &[n, l] : r.lcd) {
                    samples.push_back({n, l.get_str()});
                }
                emit({{"sequence", "lcd"},
                      {"factorial_exponent", r.factorial_exponent},
                      {"samples", samples},
                      {"front_slope", json_io::to_json(rational_approximation(r.fit.front_slope))},
                      {"back_slope", json_io::to_json(rational_approximation(r.fit.back_slope))},
                      {"passed", r.passed}},
                     output);
                return r.passed ? exit_ok : exit_failed;
            }
            // z-growth
            require(!ep_input.empty(), "z-growth needs --input");
            MatrixSeries m = json_io::matrix_series_from(load(ep_input));
            GrowthReport r = z_coefficient_growth(m, Rational::parse(ep_tau), ep_n, ctx);
            json rays = json::array();
            for (const auto &[dir, samples] : r.rays) {
                json s = json::array();
                for (const auto &x : samples) {
                    s.push_back({{"alpha", json_io::to_json(x.alpha)},
                                 {"vY", json_io::to_json(x.vY)},
                                 {"vZ", json_io::to_json(x.vZ)}});
                }
                rays.push_back({{"direction", json_io::to_json(dir)}, {"samples", s}});
            }
            json j = {{"p", r.p}, {"shift", json_io::to_json(r.shift)}, {"rays", rays}, {"passed", r.passed}};
            if (!r.detail.empty()) {
                j["detail"] = r.detail;
            }
            emit(j, output);
            return r.passed ? exit_ok : exit_failed;
        }
        if (cg->parsed()) {
            auto s = json_io::series_from<Rational>(load(cg_input));
            long window = cg_window;
            if (window == 0) {
                for (const auto &[k, c] : s.terms()) {
                    window = std::max(window, abs_total(k.alpha));
                }
            }
            GevreyCertificate c = certify_gevrey(s, cg_s, window);
            json j = json_io::to_json(c);
            bool passed = c.passed;
            if (cg_transform) {
                require(!s.is_zero(), "certify-gevrey: empty support");
                MultiIndex k = s.terms().begin()->first.logpow;
                NgaSummand t{{}, s.gamma(), k, s.orthant()};
                for (const auto &[key, coeff] : s.terms()) {
                    require(key.logpow == k, "--transform needs a single log power");
                    t.coeffs[key.alpha] += coeff;
                }
                OrderShiftReport r = transform_order_shift(NgaElement{{t}}, cg_s, window);
                json coords = json::array();
                for (const auto &list : r.image) {
                    for (const auto &cc : list) {
                        json x = json_io::to_json(cc.certificate);
                        x["logpow"] = json_io::to_json(cc.logpow);
                        x["gamma_monomial"] = cc.monomial;
                        coords.push_back(x);
                    }
                }
                j = {{"source", j}, {"target_order", std::to_string(r.target_order)}, {"image", coords},
                     {"passed", r.passed()}};
                passed = r.passed();
            }
            emit(j, output);
            return passed ? exit_ok : exit_failed;
        }
    } catch (const parse_error &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const truncation_overflow &e) {
        std::cerr << "truncation overflow: " << e.what() << "\n";
        return exit_input;
    } catch (const precondition_error &e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return exit_input;
    } catch (const json::exception &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
