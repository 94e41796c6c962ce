#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qmb/json_io.hpp"
#include "qmb/oracles.hpp"

using namespace qmb;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(QMB_CLI_PATH) + " " + args + " > cli_out.tmp 2> cli_err.tmp";
    int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_out.tmp");
    return r;
}

Json run_json(const std::string& args, int expect_code = 0) {
    CliRun r = run_cli(args);
    REQUIRE(r.code == expect_code);
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("expand command") {
    Json doc = run_json("expand --m 1 --n 1 --degree 4 --lambda formal");
    CHECK(doc["shape"]["m"] == 1);
    CHECK(doc["D"] == 4);
    CHECK(doc["lambda"] == "formal");
    const Json& deg1 = doc["terms"][1]["entries"];
    REQUIRE(deg1.size() == 1);
    CHECK(deg1[0]["left"] == Json::parse("[[1,1,1]]"));
    CHECK(deg1[0]["right"] == Json::parse("[[1,1,1]]"));
    CHECK(deg1[0]["coeff"] == "(1-l)/(1-q^2)");
    /* every coefficient matches the independent series oracle */
    for (int i = 0; i <= 4; ++i) {
        const Json& entries = doc["terms"][i]["entries"];
        REQUIRE(entries.size() == 1);
        CHECK(scalar_parse<QUFun>(entries[0]["coeff"].get<std::string>()) ==
              q_binomial_coefficient_series(i));
    }
    /* the document round-trips bit-exactly */
    Json core = doc;
    core.erase("config");
    KernelSeries<QUFun> ks = kernel_series_from_json<QUFun>(core);
    CHECK(kernel_series_to_json(ks, doc["lambda"]).dump(2) == core.dump(2));

    Json ord = run_json("expand --m 1 --n 1 --degree 2 --ordinary");
    CHECK(ord["lambda"] == 2);
    CHECK(scalar_parse<QFun>(ord["terms"][1]["entries"][0]["coeff"].get<std::string>()) ==
          QFun::parse("(1-q^4)/(1-q^2)"));

    CHECK(run_cli("expand --m 2 --n 1 --degree 2").code == 1);
    CHECK(run_cli("expand --m 1 --n 2 --degree 2 --q 1/2").code == 1);
    CHECK(run_cli("expand --m 1 --n 1 --degree 2 --lambda 7/2").code == 1);
    CHECK(run_cli("expand --m 1 --n 1 --degree 2 --ordinary --lambda 5").code == 1);
}

TEST_CASE("gram command") {
    Json doc = run_json("gram --m 1 --n 1 --q 1/2 --lambda 3 --degree 1");
    CHECK(doc["lambda"] == 3);
    CHECK(doc["q"] == "1/2");
    CHECK(doc["basis"] == Json::parse("[[[1,1,1]]]"));
    CHECK(doc["stabilized"] == true);
    Rational bound(1, 1000000000);
    Rational got = Rational::parse(doc["matrix"][0][0].get<std::string>());
    CHECK((got - Rational(16, 21)).abs() <= bound);

    Json unit = run_json("gram --m 1 --n 1 --q 1/2 --lambda 3 --degree 0");
    Rational total = Rational::parse(unit["matrix"][0][0].get<std::string>());
    CHECK((total - Rational(1)).abs() <= bound);

    CHECK(run_cli("gram --m 1 --n 1 --q 1/2 --lambda 1 --degree 1").code == 1);
    CHECK(run_cli("gram --m 1 --n 1 --q 0.5 --lambda 3 --degree 1").code == 1);
    CHECK(run_cli("gram --m 1 --n 1 --q 1/2 --lambda formal --degree 1").code == 1);
    CHECK(run_cli("gram --m 1 --n 1 --lambda 3 --degree 1").code == 1);

    /* an unreachable tolerance within the degree cap is a computation failure */
    std::string tiny(100, '0');
    CliRun r = run_cli("gram --m 1 --n 1 --q 1/2 --lambda 3 --degree 0 --tolerance 1/1" + tiny);
    CHECK(r.code == 2);
    CHECK(Json::parse(r.out)["stabilized"] == false);
}

TEST_CASE("norms command") {
    Json doc = run_json("norms --m 1 --n 2 --q 1/2 --lambda 4 --degree 1");
    REQUIRE(doc["tables"].size() == 2);
    CHECK(doc["tables"][0]["basis"] == Json::parse("[[]]"));
    const Json& deg1 = doc["tables"][1];
    REQUIRE(deg1["squared_norms"].size() == 2);
    Rational bound(1, 1000000000);
    for (const Json& s : deg1["squared_norms"]) {
        Rational v = Rational::parse(s.get<std::string>());
        CHECK((v - Rational(64, 85)).abs() <= bound);
    }
}

TEST_CASE("verify command") {
    Json kernels = run_json("verify --suite kernels --m 2 --n 2 --degree 3");
    CHECK(kernels["passed"] == true);
    CHECK(kernels["checks"].size() == 3);

    Json cross = run_json("verify --suite crosscheck --m 1 --n 2 --lambda 4 --q 1/2 --degree 2");
    CHECK(cross["passed"] == true);

    Json alg = run_json("verify --suite algebra --m 3 --n 3");
    CHECK(alg["passed"] == true);
    CHECK(alg["config"]["command"] == "verify");

    CHECK(run_cli("verify --suite bogus --m 1 --n 1").code == 1);
}

TEST_CASE("config file and determinism") {
    {
        std::ofstream f("cli_cfg.tmp");
        f << "# fixture configuration\nm=1\nn=1\ndegree=3\nlambda=formal\n";
    }
    Json doc = run_json("expand --config cli_cfg.tmp --degree 2");
    CHECK(doc["D"] == 2); /* flag wins over the file */
    CHECK(doc["config"]["m"] == 1);
    CHECK(doc["config"]["lambda"] == "formal");

    CHECK(run_cli("expand --config cli_cfg.tmp --degree 2 --out cli_a.tmp").code == 0);
    CHECK(run_cli("expand --config cli_cfg.tmp --degree 2 --out cli_b.tmp").code == 0);
    std::string a = slurp("cli_a.tmp"), b = slurp("cli_b.tmp");
    CHECK(!a.empty());
    CHECK(a == b);

    CHECK(run_cli("expand --degree 2").code == 1);       /* m and n are required */
    CHECK(run_cli("--m 1 --n 1").code == 1);             /* a command is required */
}
