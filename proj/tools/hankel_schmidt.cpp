// hankel-schmidt: Schmidt subspace analysis of truncated Hankel operators.
//
//   hankel-schmidt analyze <symbol.json> [--n N] [--out report.json]
//   hankel-schmidt verify [--seed S] [--perturb EPS]
//   hankel-schmidt conjugate <symbol.json> --alpha RE,IM
//   hankel-schmidt frostman <blaschke.json> --alpha RE,IM
//
// Exit codes: 0 pass, 1 input error, 2 unreliable blocks, 3 verification
// failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <hardy/report.hpp>

namespace
{

int emit(const hardy::Report& report, const std::string& out_path)
{
    if (out_path.empty())
    {
        std::cout << report.text();
    }
    else
    {
        std::ofstream out(out_path);
        if (!out)
        {
            std::cerr << "error: cannot write " << out_path << "\n";
            return hardy::exit_input_error;
        }
        out << report.text();
    }
    return report.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Schmidt subspaces of Hankel operators on the Hardy space"};
    app.require_subcommand(1);

    hardy::AnalysisConfig config;
    std::string input, out_path, alpha_text;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", config.n, "truncation order N (power of two, 16..1024)");
        sub->add_option("--oversample", config.grid_oversample, "boundary grid oversampling factor");
        sub->add_option("--cluster-tol", config.cluster_tol, "relative eigenvalue clustering tolerance");
        sub->add_option("--verify-tol", config.verify_tol, "residual tolerance for pass/fail");
        sub->add_option("--out", out_path, "write the report here instead of stdout");
    };

    auto* analyze = app.add_subcommand("analyze", "Schmidt decomposition and structure of one symbol");
    analyze->add_option("symbol", input, "symbol JSON file")->required();
    add_common(analyze);

    auto* verify = app.add_subcommand("verify", "seeded identity and property suites");
    verify->add_option("--seed", config.seed, "random seed");
    verify->add_option("--perturb", config.perturb, "add EPS to Gamma(0,1) in the identity suite");
    add_common(verify);

    auto* conjugate = app.add_subcommand("conjugate", "symbol of U_mu H_u U_mu");
    conjugate->add_option("symbol", input, "symbol JSON file")->required();
    conjugate->add_option("--alpha", alpha_text, "Mobius parameter RE,IM")->required();
    add_common(conjugate);

    auto* frostman = app.add_subcommand("frostman", "Frostman shift of a Blaschke product");
    frostman->add_option("blaschke", input, "Blaschke JSON file")->required();
    frostman->add_option("--alpha", alpha_text, "shift parameter RE,IM")->required();
    add_common(frostman);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : hardy::exit_input_error;
    }

    try
    {
        if (*analyze)
        {
            const auto sym = hardy::parse_symbol(hardy::load_json_file(input));
            return emit(hardy::run_analyze(sym, config), out_path);
        }
        if (*verify)
        {
            return emit(hardy::run_verify(config), out_path);
        }
        const hardy::Complex alpha = hardy::parse_complex_pair(alpha_text);
        if (*conjugate)
        {
            const auto sym = hardy::parse_symbol(hardy::load_json_file(input));
            return emit(hardy::run_conjugate(sym, alpha, config), out_path);
        }
        const auto b = hardy::parse_blaschke(hardy::load_json_file(input));
        return emit(hardy::run_frostman(b, alpha, config), out_path);
    }
    catch (const hardy::InputError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return hardy::exit_input_error;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return hardy::exit_input_error;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return hardy::exit_unreliable;
    }
}
