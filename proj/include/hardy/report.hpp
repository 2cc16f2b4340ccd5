///
/// \file report.hpp
///
/// Symbol and Blaschke file parsing, and the JSON reports behind the
/// hankel-schmidt command line tool. Complex numbers are [re, im] pairs and
/// object fields keep insertion order, so reports diff cleanly.
///

#ifndef HARDY_REPORT_HPP
#define HARDY_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include <hardy/structure_extract.hpp>
#include <hardy/symbol_model.hpp>

namespace hardy
{

using Json = nlohmann::ordered_json;

/// Malformed input file or configuration; maps to exit code 1.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int
{
    exit_pass                 = 0,
    exit_input_error          = 1,
    exit_unreliable           = 2,
    exit_verification_failure = 3,
};

struct AnalysisConfig
{
    Index n               = 128;
    Index grid_oversample = 2;
    double cluster_tol    = 1e-8;
    double verify_tol     = 1e-6;
    std::uint64_t seed    = 1;
    double perturb        = 0.0;

    /// N a power of two in [16, 1024], tolerances in (0, 1). Throws InputError.
    void validate() const;
};

struct Report
{
    Json body;
    int exit_code = exit_pass;

    /// Two-space indented JSON with a trailing newline.
    std::string text() const;
};

Json to_json(Complex z);
Json to_json(const HardyVector& f);
Json to_json(const RationalSymbol& sym);
Json to_json(const BlaschkeProduct& b);

/// `{"poly": [[re, im], ...], "poles": [{"b": [re, im], "m": 1, "c": [re, im]}, ...]}`.
/// Both keys are optional; other keys are ignored. Throws InputError naming
/// the offending field.
RationalSymbol parse_symbol(const Json& doc);

/// `{"phase": [re, im], "zeros": [[re, im], ...]}`.
BlaschkeProduct parse_blaschke(const Json& doc);

/// Reads and parses a JSON file; throws InputError.
Json load_json_file(const std::string& path);

/// "RE,IM" -> complex; throws InputError.
Complex parse_complex_pair(const std::string& text);

/// Coefficients, Schmidt decomposition, extraction and verification of
/// every block. Exit code 0 if all blocks pass at verify_tol, 2 otherwise.
Report run_analyze(const RationalSymbol& sym, const AnalysisConfig& config);

/// Seeded suites over random symbols and Blaschke products; exit code 3 if
/// any case fails.
Report run_verify(const AnalysisConfig& config);

/// Coefficients of w = -S^*((Su) o mu) to order 2N, as a symbol file.
Report run_conjugate(const RationalSymbol& sym, Complex alpha, const AnalysisConfig& config);

/// theta_alpha and g_alpha for a Blaschke product.
Report run_frostman(const BlaschkeProduct& b, Complex alpha, const AnalysisConfig& config);

} // namespace hardy

#endif /* HARDY_REPORT_HPP */
