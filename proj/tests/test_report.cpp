#include <doctest.h>

#include <hardy/report.hpp>

using namespace hardy;

namespace
{

std::string error_of(const Json& doc)
{
    try
    {
        parse_symbol(doc);
    }
    catch (const InputError& e)
    {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("symbol parsing")
{
    const RationalSymbol s = parse_symbol(Json::parse(
        R"({"poly": [[0, 0], [1, 0.5]], "poles": [{"b": [0.5, 0], "c": [1, 0]}, {"b": [0, 0.2], "m": 2, "c": [0, 1]}]})"));
    CHECK(s.poly().size() == 2);
    CHECK(s.poly()[1] == Complex(1.0, 0.5));
    REQUIRE(s.poles().size() == 2);
    CHECK(s.poles()[0].m == 1);
    CHECK(s.poles()[1].m == 2);
    CHECK(s.poles()[1].b == Complex(0.0, 0.2));
    CHECK(parse_symbol(Json::parse("{}")).is_zero());

    CHECK(error_of(Json::parse("[1, 2]")).find("JSON object") != std::string::npos);
    CHECK(error_of(Json::parse(R"({"poly": [[1, 0], [2]]})")).find("poly[1]") != std::string::npos);
    CHECK(error_of(Json::parse(R"({"poly": 3})")).find("poly") != std::string::npos);
    CHECK(error_of(Json::parse(R"({"poles": [{"c": [1, 0]}]})")).find("poles[0].b") != std::string::npos);
    CHECK(error_of(Json::parse(R"({"poles": [{"b": [0.1, 0], "c": "x"}]})")).find("poles[0].c") != std::string::npos);
    CHECK(error_of(Json::parse(R"({"poles": [{"b": [0.1, 0], "c": [1, 0], "m": 1.5}]})")).find("poles[0].m") != std::string::npos);
    const std::string far = error_of(Json::parse(R"({"poles": [{"b": [0.1, 0], "c": [1, 0]}, {"b": [1.2, 0], "c": [1, 0]}]})"));
    CHECK(far.find("pole 1") != std::string::npos);
    CHECK(far.find("1.2") != std::string::npos);
}

TEST_CASE("Blaschke parsing and complex pairs")
{
    const BlaschkeProduct b = parse_blaschke(Json::parse(R"({"phase": [0, 1], "zeros": [[0, 0], [0.5, 0.1]]})"));
    CHECK(b.phase() == Complex(0.0, 1.0));
    CHECK(b.degree() == 2);
    CHECK_THROWS_AS(parse_blaschke(Json::parse(R"({"zeros": []})")), InputError);
    CHECK_THROWS_AS(parse_blaschke(Json::parse(R"({"phase": [2, 0], "zeros": []})")), InputError);
    CHECK_THROWS_AS(parse_blaschke(Json::parse(R"({"phase": [1, 0], "zeros": [[1, 0]]})")), InputError);

    CHECK(parse_complex_pair("0.25,-1e-1") == Complex(0.25, -0.1));
    CHECK_THROWS_AS(parse_complex_pair("0.25"), InputError);
    CHECK_THROWS_AS(parse_complex_pair("a,b"), InputError);
    CHECK_THROWS_AS(parse_complex_pair("1,2x"), InputError);
    CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("configuration limits")
{
    AnalysisConfig c;
    CHECK_NOTHROW(c.validate());
    c.n = 100;
    CHECK_THROWS_AS(c.validate(), InputError);
    c.n = 2048;
    CHECK_THROWS_AS(c.validate(), InputError);
    c.n          = 16;
    c.verify_tol = 1.0;
    CHECK_THROWS_AS(c.validate(), InputError);
    c.verify_tol  = 1e-6;
    c.cluster_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("analyze: shift symbol")
{
    const Report r = run_analyze(RationalSymbol({0.0, 1.0}, {}), AnalysisConfig{});
    CHECK(r.exit_code == exit_pass);
    const Json& blocks = r.body.at("blocks");
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].at("s").get<double>() == doctest::Approx(1.0));
    CHECK(blocks[0].at("multiplicity") == 2);
    const Json& zeros = blocks[0].at("representation").at("theta").at("zeros");
    REQUIRE(zeros.size() == 2);
    for (const Json& z : zeros)
        CHECK(std::hypot(z[0].get<double>(), z[1].get<double>()) < 1e-12);
    CHECK(blocks[0].at("status") == "pass");

    // fixed field order
    std::vector<std::string> keys;
    for (const auto& item : r.body.items())
        keys.push_back(item.key());
    const std::vector<std::string> expect{"command", "config", "symbol", "tail_bound",
                                          "singular_values", "kernel_dimension", "identities",
                                          "blocks", "warnings", "exit_code"};
    CHECK(keys == expect);
    CHECK(r.text() == run_analyze(RationalSymbol({0.0, 1.0}, {}), AnalysisConfig{}).text());
}

TEST_CASE("analyze: zero symbol and a mixed symbol")
{
    const Report zero = run_analyze(RationalSymbol(), AnalysisConfig{});
    CHECK(zero.exit_code == exit_pass);
    CHECK(zero.body.at("blocks").empty());

    AnalysisConfig c;
    c.n = 64;
    const RationalSymbol mixed({0.3, Complex(0, 0.5)},
                               {PoleTerm{Complex(0.6, 0.2), 1, 1.0}, PoleTerm{Complex(-0.4, 0.5), 2, Complex(0.2, 0.3)}});
    const Report r = run_analyze(mixed, c);
    CHECK(r.exit_code == exit_pass);
    CHECK(r.body.at("blocks").size() == 5);
    for (const Json& b : r.body.at("blocks"))
        CHECK(b.at("residuals").at("action").at("pass").get<bool>());
}

TEST_CASE("analyze: ill-separated blocks are unreliable")
{
    AnalysisConfig c;
    c.n = 16;
    const Report r = run_analyze(RationalSymbol({2e-8, 1.0}, {}), c);
    CHECK(r.exit_code == exit_unreliable);
    CHECK_FALSE(r.body.at("warnings").empty());
}

TEST_CASE("conjugate and frostman reports round trip")
{
    AnalysisConfig c;
    c.n = 32;
    const RationalSymbol u({}, {PoleTerm{0.5, 1, 1.0}});
    const Report conj = run_conjugate(u, 0.4, c);
    CHECK(conj.exit_code == exit_pass);
    const RationalSymbol w = parse_symbol(conj.body);
    CHECK(w.poly().size() == 64);
    const Report back = run_conjugate(w, 0.4, c);
    const RationalSymbol uu = parse_symbol(back.body);
    for (Index k = 0; k < 32; ++k)
        CHECK(std::abs(uu.poly()[static_cast<size_t>(k)] - std::pow(0.5, k)) < 1e-10);
    CHECK_THROWS_AS(run_conjugate(u, 1.0, c), InputError);

    const Report f = run_frostman(BlaschkeProduct(1.0, {0.0, 0.5}), Complex(0.1, 0.2), c);
    const BlaschkeProduct shifted = parse_blaschke(f.body.at("theta_alpha"));
    CHECK(shifted.degree() == 2);
    CHECK(f.body.at("g_alpha").size() == 32);
}
