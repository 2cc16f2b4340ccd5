#include <hardy/report.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include <hardy/hankel_ops.hpp>
#include <hardy/suites.hpp>

namespace hardy
{

void AnalysisConfig::validate() const
{
    if (n < 16 || n > 1024 || !is_power_of_two(n))
    {
        throw InputError("N must be a power of two between 16 and 1024 (got " +
                         std::to_string(n) + ")");
    }
    if (grid_oversample < 1)
    {
        throw InputError("grid_oversample must be at least 1");
    }
    if (!(cluster_tol > 0.0 && cluster_tol < 1.0))
    {
        throw InputError("cluster_tol must lie in (0, 1)");
    }
    if (!(verify_tol > 0.0 && verify_tol < 1.0))
    {
        throw InputError("verify_tol must lie in (0, 1)");
    }
    if (!std::isfinite(perturb))
    {
        throw InputError("perturb must be finite");
    }
}

std::string Report::text() const
{
    return body.dump(2) + "\n";
}

Json to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

Json to_json(const HardyVector& f)
{
    Json out = Json::array();
    for (Index i = 0; i < f.order(); ++i)
        out.push_back(to_json(f[i]));
    return out;
}

Json to_json(const RationalSymbol& sym)
{
    Json poly = Json::array();
    for (const Complex& c : sym.poly())
        poly.push_back(to_json(c));
    Json poles = Json::array();
    for (const PoleTerm& t : sym.poles())
    {
        Json p;
        p["b"] = to_json(t.b);
        p["m"] = t.m;
        p["c"] = to_json(t.c);
        poles.push_back(std::move(p));
    }
    Json out;
    out["poly"]  = std::move(poly);
    out["poles"] = std::move(poles);
    return out;
}

Json to_json(const BlaschkeProduct& b)
{
    Json zeros = Json::array();
    for (const Complex& a : b.zeros())
        zeros.push_back(to_json(a));
    Json out;
    out["phase"] = to_json(b.phase());
    out["zeros"] = std::move(zeros);
    return out;
}

namespace
{

Complex parse_complex(const Json& v, const std::string& field)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    {
        throw InputError(field + ": expected a [re, im] pair of numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Complex> parse_complex_list(const Json& doc, const std::string& key)
{
    std::vector<Complex> out;
    if (!doc.contains(key))
        return out;
    const Json& arr = doc.at(key);
    if (!arr.is_array())
    {
        throw InputError(key + ": expected an array");
    }
    for (size_t i = 0; i < arr.size(); ++i)
        out.push_back(parse_complex(arr[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

Json residual_entry(double value, double threshold)
{
    Json out;
    out["value"]     = value;
    out["threshold"] = threshold;
    out["pass"]      = value <= threshold;
    return out;
}

} // namespace

RationalSymbol parse_symbol(const Json& doc)
{
    if (!doc.is_object())
    {
        throw InputError("symbol file: expected a JSON object");
    }
    std::vector<Complex> poly = parse_complex_list(doc, "poly");
    std::vector<PoleTerm> poles;
    if (doc.contains("poles"))
    {
        const Json& arr = doc.at("poles");
        if (!arr.is_array())
        {
            throw InputError("poles: expected an array");
        }
        for (size_t i = 0; i < arr.size(); ++i)
        {
            const std::string name = "poles[" + std::to_string(i) + "]";
            const Json& p          = arr[i];
            if (!p.is_object())
            {
                throw InputError(name + ": expected an object");
            }
            if (!p.contains("b"))
                throw InputError(name + ".b: missing");
            if (!p.contains("c"))
                throw InputError(name + ".c: missing");
            PoleTerm t;
            t.b = parse_complex(p.at("b"), name + ".b");
            t.c = parse_complex(p.at("c"), name + ".c");
            if (p.contains("m"))
            {
                if (!p.at("m").is_number_integer())
                    throw InputError(name + ".m: expected an integer");
                t.m = p.at("m").get<int>();
            }
            poles.push_back(t);
        }
    }
    try
    {
        return RationalSymbol(std::move(poly), std::move(poles));
    }
    catch (const std::invalid_argument& e)
    {
        throw InputError(e.what());
    }
}

BlaschkeProduct parse_blaschke(const Json& doc)
{
    if (!doc.is_object())
    {
        throw InputError("Blaschke file: expected a JSON object");
    }
    if (!doc.contains("phase"))
    {
        throw InputError("phase: missing");
    }
    const Complex phase = parse_complex(doc.at("phase"), "phase");
    try
    {
        return BlaschkeProduct(phase, parse_complex_list(doc, "zeros"));
    }
    catch (const std::invalid_argument& e)
    {
        throw InputError(e.what());
    }
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw InputError("cannot open " + path);
    }
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
}

Complex parse_complex_pair(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
    {
        throw InputError("expected RE,IM (got '" + text + "')");
    }
    try
    {
        size_t used_re = 0, used_im = 0;
        const std::string re = text.substr(0, comma), im = text.substr(comma + 1);
        const double a = std::stod(re, &used_re);
        const double b = std::stod(im, &used_im);
        if (used_re != re.size() || used_im != im.size())
            throw std::invalid_argument("trailing characters");
        return {a, b};
    }
    catch (const std::exception&)
    {
        throw InputError("expected RE,IM (got '" + text + "')");
    }
}

Report run_analyze(const RationalSymbol& sym, const AnalysisConfig& config)
{
    config.validate();
    const Index n = config.n;
    Report report;
    Json& out = report.body;

    out["command"] = "analyze";
    out["config"]  = {{"N", n},
                      {"grid_oversample", config.grid_oversample},
                      {"cluster_tol", config.cluster_tol},
                      {"verify_tol", config.verify_tol}};
    out["symbol"] = to_json(sym);
    Json warnings = Json::array();

    const double tail = tail_bound(sym, 2 * n - 1);
    out["tail_bound"] = tail;
    if (tail > 1e-10)
    {
        std::ostringstream msg;
        msg << "symbol coefficients beyond 2N-1 have norm up to " << tail
            << "; residuals are limited by truncation";
        warnings.push_back(msg.str());
    }

    const HankelMatrix gamma = build_hankel_matrix(sym, n);
    const SchmidtDecomposition dec = schmidt_decompose(gamma, config.cluster_tol);
    for (const std::string& w : dec.warnings)
        warnings.push_back(w);

    Json svals = Json::array();
    for (const SchmidtBlock& b : dec.blocks)
        svals.push_back({{"s", b.s}, {"multiplicity", b.multiplicity()}});
    out["singular_values"]  = std::move(svals);
    out["kernel_dimension"] = dec.kernel_dimension;

    const IdentityResiduals ir = identity_residuals(gamma, fourier_coefficients(sym, 2 * n));
    out["identities"] = {{"shift_intertwining", residual_entry(ir.shift_intertwining, ir.threshold)},
                         {"square_shift", residual_entry(ir.square_shift, ir.threshold)},
                         {"shift_commutator", residual_entry(ir.commutator, ir.threshold)},
                         {"symmetry", residual_entry(ir.symmetry, ir.threshold)},
                         {"toeplitz_relation", residual_entry(ir.toeplitz, ir.threshold)}};

    ExtractOptions opts;
    opts.tol        = config.verify_tol;
    opts.oversample = config.grid_oversample;
    const double tol = config.verify_tol;

    Json blocks = Json::array();
    bool all_pass = true;
    for (size_t k = 0; k < dec.blocks.size(); ++k)
    {
        const SchmidtBlock& block = dec.blocks[k];
        Json jb;
        jb["s"]              = block.s;
        jb["multiplicity"]   = block.multiplicity();
        jb["spread"]         = block.spread;
        jb["gap"]            = block.gap;
        jb["well_separated"] = block.well_separated;
        bool pass            = block.well_separated;
        try
        {
            const Representation rep = extract_representation(gamma, block, opts);
            const VerificationReport v =
                verify_representation(gamma, block, rep, config.grid_oversample);
            jb["branch"]     = to_string(rep.branch);
            jb["base_point"] = to_json(rep.canonicalized_at);
            Json jr;
            jr["p"]     = to_json(rep.p);
            jr["theta"] = to_json(rep.theta);
            jr["phi"]   = rep.phi;
            jb["representation"] = std::move(jr);

            Json res;
            res["subspace_gap"] = residual_entry(v.subspace_gap, tol);
            res["action"]       = residual_entry(v.action, tol);
            res["innerness"]    = residual_entry(v.innerness, tol);
            res["isometry"]     = residual_entry(v.isometry, tol);
            res["near_invariance"] = residual_entry(v.near_invariance, tol);
            res["near_invariance"]["applicable"] = v.near_invariance_applicable;
            res["linear_hankel_form"] = residual_entry(v.linear_form, tol);
            res["us_cross_check"]     = v.us_cross_check;
            res["p0"]                 = v.p0;
            jb["residuals"]           = std::move(res);
            pass = pass && v.pass(tol) && v.innerness <= tol;
        }
        catch (const std::exception& e)
        {
            jb["error"] = e.what();
            pass        = false;
            warnings.push_back("block " + std::to_string(k) + ": " + e.what());
        }
        jb["status"] = pass ? "pass" : "unreliable";
        all_pass     = all_pass && pass;
        blocks.push_back(std::move(jb));
    }
    out["blocks"]   = std::move(blocks);
    out["warnings"] = std::move(warnings);
    report.exit_code = all_pass ? exit_pass : exit_unreliable;
    out["exit_code"] = report.exit_code;
    return report;
}

Report run_verify(const AnalysisConfig& config)
{
    config.validate();
    SuiteConfig sc;
    sc.order           = config.n;
    sc.grid_oversample = config.grid_oversample;
    sc.cluster_tol     = config.cluster_tol;
    sc.verify_tol      = config.verify_tol;
    sc.seed            = config.seed;
    sc.perturb         = config.perturb;

    Report report;
    Json& out      = report.body;
    out["command"] = "verify";
    out["config"]  = {{"N", config.n},
                      {"grid_oversample", config.grid_oversample},
                      {"cluster_tol", config.cluster_tol},
                      {"verify_tol", config.verify_tol},
                      {"seed", config.seed},
                      {"perturb", config.perturb}};

    Json suites = Json::array();
    bool all_pass = true;
    for (const SuiteResult& s : run_all_suites(sc))
    {
        double worst_threshold = 0.0;
        for (const CaseResult& c : s.cases)
            worst_threshold = std::max(worst_threshold, c.threshold);
        suites.push_back({{"name", s.name},
                          {"cases", s.cases.size()},
                          {"passed", s.passed()},
                          {"failed", s.failed()},
                          {"max_residual", s.max_residual()},
                          {"max_threshold", worst_threshold}});
        all_pass = all_pass && s.failed() == 0;
    }
    out["suites"]     = std::move(suites);
    out["all_passed"] = all_pass;
    report.exit_code  = all_pass ? exit_pass : exit_verification_failure;
    out["exit_code"]  = report.exit_code;
    return report;
}

Report run_conjugate(const RationalSymbol& sym, Complex alpha, const AnalysisConfig& config)
{
    config.validate();
    if (!(std::abs(alpha) < 1.0))
    {
        throw InputError("alpha must lie in the open unit disk");
    }
    const Projection w = mobius_conjugate_symbol(sym, MobiusMap(alpha), 2 * config.n);

    Report report;
    Json& out = report.body;
    out["command"] = "conjugate";
    out["alpha"]   = to_json(alpha);
    out["order"]   = 2 * config.n;
    out["poly"]    = to_json(w.value);
    out["poles"]   = Json::array();
    out["projection"] = {{"negative_residual", w.negative_residual},
                         {"tail_residual", w.tail_residual},
                         {"alias_residual", w.alias_residual},
                         {"flagged", w.flagged}};
    report.exit_code = w.flagged ? exit_unreliable : exit_pass;
    return report;
}

Report run_frostman(const BlaschkeProduct& b, Complex alpha, const AnalysisConfig& config)
{
    config.validate();
    if (!(std::abs(alpha) < 1.0))
    {
        throw InputError("alpha must lie in the open unit disk");
    }
    const FrostmanShift fs = frostman_shift(b, alpha, config.n);

    Report report;
    Json& out          = report.body;
    out["command"]     = "frostman";
    out["alpha"]       = to_json(alpha);
    out["theta"]       = to_json(b);
    out["theta_alpha"] = to_json(fs.shifted);
    out["g_alpha"]     = to_json(fs.g);
    out["fit_residual"] = fs.fit_residual;
    return report;
}

} // namespace hardy
