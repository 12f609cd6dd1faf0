#include "denseset/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "denseset/errors.hpp"
#include "denseset/json_io.hpp"

namespace denseset {

namespace {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

void print_plain(std::ostream& out, const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            print_plain(out, value, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& value : j)
            print_plain(out, value, prefix + "[" + std::to_string(i++) + "]");
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(std::ostream& out, const GlobalConfig& cfg, json payload) {
    payload["config"] = io::config_json(cfg);
    if (cfg.output == GlobalConfig::Output::plain) {
        print_plain(out, payload, "");
    } else {
        out << payload.dump(2) << "\n";
    }
}

json parse_json_text(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument(std::string(what) + ": invalid JSON: " + text);
    return j;
}

RealSpec spec_from_text(const std::string& text, const GlobalConfig& cfg) {
    return io::spec_from_json(parse_json_text(text, "--spec"), cfg);
}

std::vector<double> parse_grid(const std::string& text) {
    // "geom:lo:hi:count" or "list:x1,x2,..."
    if (text.rfind("geom:", 0) == 0) {
        std::istringstream in(text.substr(5));
        std::string lo_s, hi_s, count_s;
        if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
            !std::getline(in, count_s, ':'))
            throw std::invalid_argument("--grid: expected geom:lo:hi:count");
        return geometric_grid(Rational::parse(lo_s).to_double(),
                              Rational::parse(hi_s).to_double(), std::stoi(count_s));
    }
    if (text.rfind("list:", 0) == 0) {
        std::vector<double> out;
        std::istringstream in(text.substr(5));
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) out.push_back(Rational::parse(item).to_double());
        if (out.empty()) throw std::invalid_argument("--grid: empty list");
        return out;
    }
    throw std::invalid_argument("--grid: expected geom:lo:hi:count or list:x1,x2,...");
}

struct CliState {
    GlobalConfig cfg;

    std::string config_path;
    long precision_bits = 0;
    long depth_cap = 0;
    long exponent_cap = 0;
    std::string output_mode;

    // engel / witness / approx / certify-engel
    std::string spec_text;
    long count = 10;
    long prefix_count = 0;  // certify-engel: 0 means adaptive
    std::string eps_text;
    long depth = 0;
    std::string target_text;

    // mulapprox / certify-root
    std::string p_text;
    std::string q_text;
    unsigned long degree = 2;
    std::string bound_text = "1";
    std::string out_path;

    // verify
    std::string cert_path;

    // haar-check
    std::string function_text;
    std::string grid_text = "geom:1/4:16:16";
    double tol = 1e-9;
    HaarOptions haar;

    void finalize_config() {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("--config: cannot open " + config_path);
            json j = json::parse(in, nullptr, false);
            if (j.is_discarded())
                throw std::invalid_argument("--config: invalid JSON in " + config_path);
            cfg = io::config_from_json(j, cfg);
        }
        if (precision_bits > 0) cfg.precision_budget_bits = precision_bits;
        if (depth_cap > 0) cfg.engel_depth_cap = depth_cap;
        if (exponent_cap > 0) cfg.exponent_cap = exponent_cap;
        if (!output_mode.empty()) {
            if (output_mode == "json") cfg.output = GlobalConfig::Output::json;
            else if (output_mode == "plain") cfg.output = GlobalConfig::Output::plain;
            else throw std::invalid_argument("--output must be json or plain");
        }
    }
};

int cmd_engel(CliState& st, std::ostream& out) {
    RealSpec spec = spec_from_text(st.spec_text, st.cfg);
    const long count = std::min(st.count, st.cfg.engel_depth_cap);
    EngelExpansion e = engel_digits(spec, count, st.cfg);

    json digits = json::array();
    for (const Integer& d : e.digits) digits.push_back(io::integer_json(d));
    const bool complete = e.terminated || static_cast<long>(e.digits.size()) == count;
    json payload{{"digits", digits},
                 {"terminated", e.terminated},
                 {"partial_sum", partial_sum(e, e.digits.size()).str()},
                 {"bound", truncation_bound(e, e.digits.size()).str()},
                 {"certified", complete}};
    emit(out, st.cfg, payload);
    return complete ? kExitOk : kExitBudget;
}

int cmd_witness(CliState& st, std::ostream& out) {
    RealSpec spec = spec_from_text(st.spec_text, st.cfg);
    DensityWitness w = st.depth > 0 ? make_witness(spec, st.depth, st.cfg)
                                    : witness_below(spec, Rational::parse(st.eps_text), st.cfg);
    json payload = io::witness_json(w);
    payload["certified"] = true;
    emit(out, st.cfg, payload);
    return kExitOk;
}

int cmd_approx(CliState& st, std::ostream& out) {
    RealSpec spec = spec_from_text(st.spec_text, st.cfg);
    RealSpec target = st.target_text.find('{') != std::string::npos
                          ? io::spec_from_json(parse_json_text(st.target_text, "--target"), st.cfg)
                          : RealSpec::rational(Rational::parse(st.target_text));
    AdditiveSolution sol = approx_additive(spec, target, Rational::parse(st.eps_text), st.cfg);
    json payload = io::additive_solution_json(sol);
    payload["certified"] = true;
    emit(out, st.cfg, payload);
    return kExitOk;
}

int cmd_mulapprox(CliState& st, std::ostream& out) {
    const Rational y = Rational::parse(st.target_text);
    if (y.is_zero())
        throw HypothesisError("target_zero", "mulapprox: 0 is not in {±p^m q^n}");
    MulProblem prob{Integer(io::integer_from_json(json(st.p_text))),
                    Integer(io::integer_from_json(json(st.q_text))), y.abs(),
                    Rational::parse(st.eps_text)};
    MulSolution sol = sign_extend(approx_multiplicative(prob, st.cfg), y.sign());
    emit(out, st.cfg, io::mul_solution_json(sol));
    return sol.certified ? kExitOk : kExitBudget;
}

void write_certificate(const CliState& st, std::ostream& out, const json& cert) {
    if (!st.out_path.empty()) {
        std::ofstream file(st.out_path);
        if (!file) throw std::invalid_argument("--out: cannot write " + st.out_path);
        file << cert.dump(2) << "\n";
    }
    json payload{{"certificate", cert}};
    if (!st.out_path.empty()) payload["written"] = st.out_path;
    emit(out, st.cfg, payload);
}

int cmd_certify_root(CliState& st, std::ostream& out) {
    RootCertificate cert =
        certify_nth_root(io::integer_from_json(json(st.q_text)), st.degree,
                         io::integer_from_json(json(st.bound_text)), st.cfg);
    write_certificate(st, out, io::certificate_json(cert));
    return kExitOk;
}

int cmd_certify_e(CliState& st, std::ostream& out) {
    EulerCertificate cert = certify_e(io::integer_from_json(json(st.bound_text)));
    write_certificate(st, out, io::certificate_json(cert));
    return kExitOk;
}

int cmd_certify_engel(CliState& st, std::ostream& out) {
    RealSpec spec = spec_from_text(st.spec_text, st.cfg);
    const Integer B = io::integer_from_json(json(st.bound_text));
    EngelNumberCertificate cert =
        st.prefix_count > 0
            ? certify_engel_number(engel_digits(spec, st.prefix_count, st.cfg), B, st.cfg)
            : certify_engel_number(spec, B, st.cfg);
    write_certificate(st, out, io::certificate_json(cert));
    return kExitOk;
}

int cmd_verify(CliState& st, std::ostream& out) {
    std::ifstream in(st.cert_path);
    if (!in) throw std::invalid_argument("verify: cannot open " + st.cert_path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument("verify: invalid JSON in " + st.cert_path);
    VerifyResult result = io::verify_certificate_json(j, st.cfg);
    emit(out, st.cfg, json{{"ok", result.ok}, {"reason", result.reason}});
    return result.ok ? kExitOk : kExitRejected;
}

int cmd_haar_check(CliState& st, std::ostream& out) {
    FunctionUnderTest f = io::function_from_json(parse_json_text(st.function_text, "--f"));
    AuditReport report =
        two_dilation_audit(f, Rational::parse(st.p_text), Rational::parse(st.q_text),
                           parse_grid(st.grid_text), st.tol, st.haar);
    emit(out, st.cfg, io::audit_report_json(report));
    switch (report.verdict) {
        case AuditVerdict::consistent_with_theorem: return kExitOk;
        case AuditVerdict::violates_hypotheses: return kExitRejected;
        case AuditVerdict::inconclusive: return kExitBudget;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Engel expansions, density witnesses, and irrationality certificates"};
    app.require_subcommand(1);

    CliState st;
    app.add_option("--config", st.config_path, "JSON file with GlobalConfig overrides");
    app.add_option("--precision-bits", st.precision_bits, "precision budget in bits");
    app.add_option("--depth-cap", st.depth_cap, "max Engel expansion depth");
    app.add_option("--exponent-cap", st.exponent_cap, "max |exponent| materialized exactly");
    app.add_option("--output", st.output_mode, "json|plain");

    auto* engel = app.add_subcommand("engel", "Engel digits of a real in (0,1)");
    engel->add_option("--spec", st.spec_text, "RealSpec JSON")->required();
    engel->add_option("--count", st.count, "number of digits")->check(CLI::PositiveNumber);

    auto* witness = app.add_subcommand("witness", "density witness z = q*r + s in (0, eps)");
    witness->add_option("--spec", st.spec_text, "RealSpec JSON for q in (0,1)")->required();
    witness->add_option("--eps", st.eps_text, "target bound as a rational");
    witness->add_option("--depth", st.depth, "fixed depth instead of an eps search");

    auto* approx = app.add_subcommand("approx", "m + n*q within eps of a target");
    approx->add_option("--spec", st.spec_text, "RealSpec JSON for q")->required();
    approx->add_option("--target", st.target_text, "rational or RealSpec JSON")->required();
    approx->add_option("--eps", st.eps_text, "tolerance as a rational")->required();

    auto* mul = app.add_subcommand("mulapprox", "p^m q^n within eps of a target");
    mul->add_option("-p", st.p_text, "integer >= 2")->required();
    mul->add_option("-q", st.q_text, "integer >= 2")->required();
    mul->add_option("--target", st.target_text, "rational y != 0")->required();
    mul->add_option("--eps", st.eps_text, "tolerance as a rational")->required();

    auto* croot = app.add_subcommand("certify-root", "irrationality certificate for q^(1/n)");
    croot->add_option("-q", st.q_text, "prime")->required();
    croot->add_option("-n", st.degree, "degree >= 2")->required();
    croot->add_option("-B", st.bound_text, "denominator bound")->required();
    croot->add_option("--out", st.out_path, "write the certificate here");

    auto* ce = app.add_subcommand("certify-e", "denominator-bound certificate for e");
    ce->add_option("-B", st.bound_text, "denominator bound")->required();
    ce->add_option("--out", st.out_path, "write the certificate here");

    auto* cengel = app.add_subcommand("certify-engel",
                                      "certificate from an Engel prefix with a digit > 2B");
    cengel->add_option("--spec", st.spec_text, "RealSpec JSON")->required();
    cengel->add_option("-B", st.bound_text, "denominator bound")->required();
    cengel->add_option("--count", st.prefix_count, "fixed prefix length (default: adaptive)");
    cengel->add_option("--out", st.out_path, "write the certificate here");

    auto* verify = app.add_subcommand("verify", "check a certificate file; exit 0/1");
    verify->add_option("certificate", st.cert_path, "certificate JSON file")->required();

    auto* haar = app.add_subcommand("haar-check", "dilation-invariance audit of f against c/t");
    haar->add_option("--f", st.function_text, "function JSON")->required();
    haar->add_option("-p", st.p_text, "dilation > 1 (rational)")->required();
    haar->add_option("-q", st.q_text, "second dilation > 1 (rational)")->required();
    haar->add_option("--grid", st.grid_text, "geom:lo:hi:count or list:x1,x2,...");
    haar->add_option("--tol", st.tol, "spread tolerance");
    haar->add_option("--residual-tol", st.haar.residual_tol, "residual budget vs c/t");
    haar->add_option("--quad-tol", st.haar.quad_tol, "per-integral quadrature target");
    haar->add_option("--zero-exclusion", st.haar.zero_exclusion,
                     "excluded neighbourhood of zero");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("denseset");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        st.finalize_config();
        if (witness->parsed() && st.depth <= 0 && st.eps_text.empty())
            throw std::invalid_argument("witness: need --eps or --depth");

        if (engel->parsed()) return cmd_engel(st, out);
        if (witness->parsed()) return cmd_witness(st, out);
        if (approx->parsed()) return cmd_approx(st, out);
        if (mul->parsed()) return cmd_mulapprox(st, out);
        if (croot->parsed()) return cmd_certify_root(st, out);
        if (ce->parsed()) return cmd_certify_e(st, out);
        if (cengel->parsed()) return cmd_certify_engel(st, out);
        if (verify->parsed()) return cmd_verify(st, out);
        if (haar->parsed()) return cmd_haar_check(st, out);
        err << "no subcommand\n";
        return kExitUsage;
    } catch (const HypothesisError& e) {
        emit(out, st.cfg, json{{"error", e.code()}, {"message", e.what()}});
        return kExitRejected;
    } catch (const WitnessBudgetError& e) {
        json payload{{"certified", false},
                     {"error", "budget_exhausted"},
                     {"message", e.what()}};
        if (e.best()) payload["best"] = io::witness_json(*e.best());
        emit(out, st.cfg, payload);
        return kExitBudget;
    } catch (const RefinementError& e) {
        emit(out, st.cfg,
             json{{"certified", false}, {"error", "needs_refinement"}, {"message", e.what()}});
        return kExitBudget;
    } catch (const BudgetError& e) {
        emit(out, st.cfg,
             json{{"certified", false}, {"error", "budget_exhausted"}, {"message", e.what()}});
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace denseset
