#include "qmb/cli_app.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qmb/algebra.hpp"
#include "qmb/fock.hpp"
#include "qmb/json_io.hpp"
#include "qmb/kernels.hpp"

namespace qmb {
namespace {

struct RunConfig {
    int m = 1;
    int n = 1;
    int degree = 4;
    std::string lambda = "formal";
    std::string q = "formal";
    bool ordinary = false;
    std::string tolerance = "1/1000000000000";
    std::string out;
    std::string suite = "all";
};

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

Rational parse_rational_arg(const std::string& name, const std::string& text) {
    if (text.find('.') != std::string::npos)
        fail(name + ": floating-point literals are rejected; pass an exact rational like 1/2");
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        fail(name + ": " + e.what());
    }
}

/* nullopt = formal */
std::optional<long> parse_lambda_arg(const std::string& text) {
    if (text == "formal") return std::nullopt;
    Rational r = parse_rational_arg("--lambda", text);
    if (!r.is_integer()) fail("--lambda: only \"formal\" or integer weights are supported");
    if (!r.num().fits_slong_p()) fail("--lambda: value out of range");
    return r.num().get_si();
}

Json config_json(const RunConfig& cfg, const std::string& command) {
    return Json{{"command", command},
                {"m", cfg.m},
                {"n", cfg.n},
                {"degree", cfg.degree},
                {"lambda", cfg.lambda},
                {"q", cfg.q},
                {"ordinary", cfg.ordinary},
                {"tolerance", cfg.tolerance},
                {"suite", cfg.suite}};
}

void emit(const Json& doc, const std::string& out_path) {
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail("cannot open output file: " + out_path);
    f << text;
}

int cmd_expand(RunConfig cfg) {
    Shape sh(cfg.m, cfg.n);
    if (cfg.degree < 0) fail("--degree: must be nonnegative");
    std::optional<long> lambda = parse_lambda_arg(cfg.lambda);
    bool q_formal = cfg.q == "formal";

    Json doc;
    if (cfg.ordinary) {
        /* the weighted kernel specializes to the ordinary one at this weight */
        long lam = sh.m + sh.n;
        if (lambda && *lambda != lam)
            fail("--ordinary conflicts with --lambda (the ordinary kernel sits at lambda = m+n)");
        cfg.lambda = std::to_string(lam);
        if (q_formal) {
            KernelAlgebra<QFun> kn(sh, ScalarCtx<QFun>{});
            doc = kernel_series_to_json(kn.ordinary_bergman_kernel(cfg.degree), Json(lam));
        } else {
            Rational q = parse_rational_arg("--q", cfg.q);
            cfg.q = q.str();
            KernelAlgebra<Rational> kn(sh, weighted_ctx(q, lam));
            doc = kernel_series_to_json(kn.ordinary_bergman_kernel(cfg.degree), Json(lam));
        }
    } else if (!lambda) {
        if (!q_formal)
            fail("a formal lambda requires a formal q; pass an integer --lambda for numeric runs");
        KernelAlgebra<QUFun> kn(sh, ScalarCtx<QUFun>{});
        doc = kernel_series_to_json(kn.bergman_kernel(cfg.degree), Json("formal"));
    } else if (q_formal) {
        KernelAlgebra<QFun> kn(sh, ScalarCtx<QFun>(*lambda));
        doc = kernel_series_to_json(kn.bergman_kernel(cfg.degree), Json(*lambda));
    } else {
        Rational q = parse_rational_arg("--q", cfg.q);
        cfg.q = q.str();
        KernelAlgebra<Rational> kn(sh, weighted_ctx(q, *lambda));
        doc = kernel_series_to_json(kn.bergman_kernel(cfg.degree), Json(*lambda));
    }
    doc["config"] = config_json(cfg, "expand");
    emit(doc, cfg.out);
    return 0;
}

int cmd_gram(RunConfig cfg, bool norms_table) {
    Shape sh(cfg.m, cfg.n);
    if (cfg.degree < 0) fail("--degree: must be nonnegative");
    std::optional<long> lambda = parse_lambda_arg(cfg.lambda);
    if (!lambda) fail("--lambda: this command needs an integer weight greater than m+n-1");
    if (cfg.q == "formal") fail("--q: this command needs a rational value in (0,1)");
    Rational q = parse_rational_arg("--q", cfg.q);
    Rational tol = parse_rational_arg("--tolerance", cfg.tolerance);
    if (tol.sign() <= 0) fail("--tolerance: must be positive");
    cfg.lambda = std::to_string(*lambda);
    cfg.q = q.str();
    cfg.tolerance = tol.str();
    WeightedIntegrator<Rational> wi(sh, q, *lambda, tol);

    Json doc;
    doc["shape"] = Json{{"m", sh.m}, {"n", sh.n}};
    doc["lambda"] = *lambda;
    doc["q"] = cfg.q;
    doc["degree"] = cfg.degree;
    bool stable = true;
    Rational max_delta(0);
    if (!norms_table) {
        GramResult<Rational> gr = wi.gram(cfg.degree);
        doc["basis"] = basis_to_json(sh, gr.basis);
        Json rows_j = Json::array();
        for (size_t r = 0; r < gr.matrix.rows(); ++r) {
            Json row = Json::array();
            for (size_t c = 0; c < gr.matrix.cols(); ++c)
                row.push_back(scalar_str(gr.matrix.at(r, c)));
            rows_j.push_back(std::move(row));
        }
        doc["matrix"] = std::move(rows_j);
        stable = gr.stabilized;
        max_delta = gr.max_delta;
    } else {
        Json tables = Json::array();
        for (int d = 0; d <= cfg.degree; ++d) {
            GramResult<Rational> gr = wi.gram(d);
            Json sq = Json::array();
            for (size_t i = 0; i < gr.basis.size(); ++i)
                sq.push_back(scalar_str(gr.matrix.at(i, i)));
            tables.push_back(Json{{"degree", d},
                                  {"basis", basis_to_json(sh, gr.basis)},
                                  {"squared_norms", std::move(sq)}});
            if (!gr.stabilized) stable = false;
            if (max_delta.abs() < gr.max_delta.abs()) max_delta = gr.max_delta;
        }
        doc["tables"] = std::move(tables);
    }
    doc["max_delta"] = scalar_str(max_delta);
    doc["stabilized"] = stable;
    doc["config"] = config_json(cfg, norms_table ? "norms" : "gram");
    emit(doc, cfg.out);
    return stable ? 0 : 2;
}

struct Check {
    std::string name;
    bool passed;
};

Word random_word(std::mt19937& rng, const Shape& sh, int max_len, bool mixed) {
    std::uniform_int_distribution<int> len_d(0, max_len);
    std::uniform_int_distribution<int> row_d(1, sh.m), col_d(1, sh.n), star_d(0, 1);
    Word w;
    int len = len_d(rng);
    for (int i = 0; i < len; ++i)
        w.push_back(Generator{static_cast<std::uint8_t>(row_d(rng)),
                              static_cast<std::uint8_t>(col_d(rng)),
                              mixed && star_d(rng) == 1});
    return w;
}

template <class S>
HVector<S> holomorphic_part(const Algebra<S>& alg, const Word& w) {
    PolElement<S> p = alg.normal_form(w);
    HVector<S> v{alg.shape(), {}};
    for (const auto& [mono, c] : p.terms)
        if (mono.is_holomorphic()) v.terms.emplace(mono, c);
    return v;
}

void suite_algebra(const Shape& sh, int degree, std::vector<Check>& out) {
    ScalarCtx<QFun> ctx;
    Algebra<QFun> left(sh, ctx, RedexStrategy::leftmost);
    Algebra<QFun> right(sh, ctx, RedexStrategy::rightmost);
    std::mt19937 rng(8101);
    int cap = std::clamp(degree, 2, 8);
    bool confluent = true, involutive = true, antihom = true;
    for (int t = 0; t < 30; ++t) {
        Word w = random_word(rng, sh, cap, true);
        PolElement<QFun> p = left.normal_form(w);
        if (!(p == right.normal_form(w))) confluent = false;
        if (!(left.star(left.star(p)) == p)) involutive = false;
    }
    for (int t = 0; t < 12; ++t) {
        PolElement<QFun> a = left.normal_form(random_word(rng, sh, 3, true));
        PolElement<QFun> b = left.normal_form(random_word(rng, sh, 3, true));
        if (!(left.star(left.multiply(a, b)) == left.multiply(left.star(b), left.star(a))))
            antihom = false;
    }
    out.push_back({"algebra: leftmost and rightmost rewriting agree", confluent});
    out.push_back({"algebra: star is an involution", involutive});
    out.push_back({"algebra: star reverses products", antihom});
}

void suite_fock(const Shape& sh, int degree, std::vector<Check>& out) {
    int slots = sh.slots();
    int d_max = std::min(degree, slots <= 2 ? 4 : slots <= 4 ? 3 : slots <= 6 ? 2 : 1);
    d_max = std::max(d_max, 1);

    bool adjoint = true;
    {
        ScalarCtx<QFun> ctx;
        Algebra<QFun> alg(sh, ctx);
        std::mt19937 rng(8102);
        int word_len = slots <= 4 ? 3 : 2;
        int trials = slots <= 4 ? 12 : 8;
        for (int t = 0; t < trials; ++t) {
            PolElement<QFun> f = alg.normal_form(random_word(rng, sh, word_len, true));
            HVector<QFun> v1 = holomorphic_part(alg, random_word(rng, sh, word_len, false));
            HVector<QFun> v2 = holomorphic_part(alg, random_word(rng, sh, word_len, false));
            if (!(inner(alg, act(alg, f, v1), v2) ==
                  inner(alg, v1, act(alg, alg.star(f), v2))))
                adjoint = false;
        }
    }
    out.push_back({"fock: the representation respects the star", adjoint});

    bool positive = true, spectrum = true;
    {
        ScalarCtx<Rational> ctx(Rational(1, 2), Rational(1, 2));
        Algebra<Rational> alg(sh, ctx);
        for (int d = 1; d <= d_max; ++d) {
            DegreeBlock<Rational> block = degree_block(alg, d);
            for (const Rational& mr : leading_principal_minors(block.gram0))
                if (mr.sign() <= 0) positive = false;
            std::vector<Rational> cp = char_poly(block.ty);
            size_t deg = cp.size() - 1;
            for (size_t k = 0; k < cp.size(); ++k) {
                Rational v = ((deg - k) % 2 == 1) ? -cp[k] : cp[k];
                if (v.sign() <= 0) spectrum = false;
            }
            for (const Rational& c : taylor_shift_one(cp))
                if (c.sign() < 0) spectrum = false;
        }
    }
    out.push_back({"fock: canonical Gram matrices are positive definite", positive});
    out.push_back({"fock: the spectrum of the y action lies in (0, 1]", spectrum});
}

template <class S>
bool is_unit_series(const KernelAlgebra<S>& kn, const KernelSeries<S>& s) {
    if (!(s.terms.at(0) == kn.one())) return false;
    for (int d = 1; d <= s.D; ++d)
        if (!s.terms.at(static_cast<size_t>(d)).is_zero()) return false;
    return true;
}

void suite_kernels(const Shape& sh, int degree, std::vector<Check>& out) {
    int D = std::clamp(degree, 1, sh.slots() <= 4 ? 4 : 3);

    KernelAlgebra<QFun> kn(sh, ScalarCtx<QFun>{});
    bool commute = true;
    for (int i = 1; i <= sh.m; ++i)
        for (int j = i + 1; j <= sh.m; ++j)
            if (!(kn.kernel_mul(kn.poly_kernel(i), kn.poly_kernel(j)) ==
                  kn.kernel_mul(kn.poly_kernel(j), kn.poly_kernel(i))))
                commute = false;
    out.push_back({"kernels: the elementary kernels commute", commute});

    bool telescope =
        is_unit_series(kn, kn.series_mul(kn.product_series(D, false), kn.inverse_series(D)));
    out.push_back({"kernels: the defining product telescopes to the unit", telescope});

    KernelAlgebra<QFun> collapsed(sh, ScalarCtx<QFun>(0));
    bool collapse = is_unit_series(collapsed, collapsed.bergman_kernel(D));
    out.push_back({"kernels: the weighted kernel collapses at the degenerate weight", collapse});
}

void suite_crosscheck(const Shape& sh, int degree, long lambda, const Rational& q,
                      const Rational& tol, std::vector<Check>& out, bool& stable) {
    int d_max = std::clamp(degree, 0, 2);
    Rational bound(1, 1000000000);

    WeightedIntegrator<Rational> wi(sh, q, lambda, tol);
    Algebra<Rational> alg(sh, wi.algebra().ctx());
    IntegralResult<Rational> unit_res = wi.integrate(alg.one());
    if (!unit_res.stabilized) stable = false;
    bool normalized = (unit_res.value - Rational(1)).abs() <= bound;
    out.push_back({"crosscheck: the weighted integral of 1 is 1", normalized});

    KernelAlgebra<Rational> kn(sh, wi.algebra().ctx());
    KernelSeries<Rational> kernel = kn.bergman_kernel(d_max);
    bool reproducing = true;
    for (int d = 0; d <= d_max; ++d) {
        Matrix<Rational> c = kn.coefficient_matrix(kernel, d);
        GramResult<Rational> gr = wi.gram(d);
        if (!gr.stabilized) stable = false;
        Matrix<Rational> p = c * gr.matrix;
        for (size_t r = 0; r < p.rows(); ++r)
            for (size_t col = 0; col < p.cols(); ++col) {
                Rational want(r == col ? 1 : 0);
                if ((p.at(r, col) - want).abs() > bound) reproducing = false;
            }
    }
    out.push_back({"crosscheck: kernel coefficients invert the Gram matrices", reproducing});
}

int cmd_verify(RunConfig cfg) {
    Shape sh(cfg.m, cfg.n);
    if (cfg.degree < 0) fail("--degree: must be nonnegative");
    const std::vector<std::string> known{"algebra", "fock", "kernels", "crosscheck", "all"};
    if (std::find(known.begin(), known.end(), cfg.suite) == known.end())
        fail("--suite: unknown suite \"" + cfg.suite +
             "\" (expected algebra, fock, kernels, crosscheck, or all)");
    bool all = cfg.suite == "all";
    bool stable = true;
    std::vector<Check> checks;

    if (all || cfg.suite == "algebra") suite_algebra(sh, cfg.degree, checks);
    if (all || cfg.suite == "fock") suite_fock(sh, cfg.degree, checks);
    if (all || cfg.suite == "kernels") suite_kernels(sh, cfg.degree, checks);
    if (all || cfg.suite == "crosscheck") {
        /* numeric parameters with defaults for suites that need them */
        std::optional<long> lambda = parse_lambda_arg(cfg.lambda);
        long lam = lambda ? *lambda : sh.m + sh.n + 1;
        Rational q = cfg.q == "formal" ? Rational(1, 2) : parse_rational_arg("--q", cfg.q);
        Rational tol = parse_rational_arg("--tolerance", cfg.tolerance);
        if (tol.sign() <= 0) fail("--tolerance: must be positive");
        cfg.lambda = std::to_string(lam);
        cfg.q = q.str();
        suite_crosscheck(sh, cfg.degree, lam, q, tol, checks, stable);
    }

    bool passed = true;
    Json rows = Json::array();
    for (const Check& c : checks) {
        if (!c.passed) passed = false;
        rows.push_back(Json{{"name", c.name}, {"passed", c.passed}});
    }
    Json doc;
    doc["suite"] = cfg.suite;
    doc["checks"] = std::move(rows);
    doc["passed"] = passed;
    doc["config"] = config_json(cfg, "verify");
    emit(doc, cfg.out);
    if (!stable) return 2;
    return passed ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Exact calculator for the quantum matrix ball"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Key=value config file; command-line flags take precedence");
    app.add_option("--m", cfg.m, "Number of rows m (1 <= m <= n)")->required();
    app.add_option("--n", cfg.n, "Number of columns n")->required();
    app.add_option("--degree", cfg.degree, "Truncation degree D")->capture_default_str();
    app.add_option("--lambda", cfg.lambda, "Weight: \"formal\" or an integer")
        ->capture_default_str();
    app.add_option("--q", cfg.q, "Deformation parameter: \"formal\" or a rational in (0,1)")
        ->capture_default_str();
    app.add_flag("--ordinary", cfg.ordinary, "Expand the ordinary (unweighted) kernel");
    app.add_option("--tolerance", cfg.tolerance,
                   "Stabilization tolerance for truncated integrals (rational)")
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Write the JSON document to this path instead of stdout");
    app.add_option("--suite", cfg.suite, "Verification suite: algebra|fock|kernels|crosscheck|all")
        ->capture_default_str();

    CLI::App* s_expand =
        app.add_subcommand("expand", "Graded expansion of the weighted Bergman kernel");
    CLI::App* s_gram =
        app.add_subcommand("gram", "Gram matrix of one degree in the weighted inner product");
    CLI::App* s_norms =
        app.add_subcommand("norms", "Squared norms of the holomorphic basis, degree by degree");
    CLI::App* s_verify = app.add_subcommand("verify", "Run a property-verification suite");
    for (CLI::App* s : {s_expand, s_gram, s_norms, s_verify}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); /* --help and friends */
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (s_expand->parsed()) return cmd_expand(cfg);
        if (s_gram->parsed()) return cmd_gram(cfg, false);
        if (s_norms->parsed()) return cmd_gram(cfg, true);
        return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qmb
