#include "denseset/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace denseset::io {

namespace {

Integer integer_parse(const std::string& s) {
    Integer v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return v;
}

std::vector<Integer> integer_vector_from_json(const json& j) {
    std::vector<Integer> out;
    for (const auto& item : j) out.push_back(integer_from_json(item));
    return out;
}

json integer_vector_json_strings(const std::vector<Integer>& v) {
    json out = json::array();
    for (const Integer& x : v) out.push_back(x.get_str());
    return out;
}

}  // namespace

json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return static_cast<long>(v.get_si());
    return v.get_str();
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) return integer_parse(j.get<std::string>());
    throw std::invalid_argument("expected integer or decimal string");
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected rational string 'a/b'");
}

json interval_json(const Interval& iv) {
    return json{{"lo", iv.lo().str()}, {"hi", iv.hi().str()}};
}

Interval interval_from_json(const json& j) {
    return Interval(rational_from_json(j.at("lo")), rational_from_json(j.at("hi")));
}

json spec_json(const RealSpec& spec) {
    struct Visitor {
        json operator()(const RealSpec::RationalLit& r) const {
            return json{{"kind", "rational"}, {"value", r.value.str()}};
        }
        json operator()(const RealSpec::NthRoot& r) const {
            return json{{"kind", "nthroot"},
                        {"base", integer_json(r.base)},
                        {"degree", r.degree}};
        }
        json operator()(const RealSpec::EulerE&) const { return json{{"kind", "e"}}; }
        json operator()(const RealSpec::NaturalLog& l) const {
            return json{{"kind", "ln"}, {"arg", l.arg.str()}};
        }
        json operator()(const RealSpec::Shifted& s) const {
            return json{{"kind", "shifted"},
                        {"inner", spec_json(*s.inner)},
                        {"offset", s.offset.str()}};
        }
        json operator()(const RealSpec::Quotient& q) const {
            return json{{"kind", "quotient"},
                        {"num", spec_json(*q.num)},
                        {"den", spec_json(*q.den)}};
        }
    };
    return std::visit(Visitor{}, spec.node());
}

RealSpec spec_from_json(const json& j, const GlobalConfig& cfg) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") return RealSpec::rational(rational_from_json(j.at("value")));
    if (kind == "nthroot")
        return RealSpec::nth_root(integer_from_json(j.at("base")),
                                  j.at("degree").get<unsigned long>());
    if (kind == "e") return RealSpec::euler_e();
    if (kind == "ln") return RealSpec::natural_log(rational_from_json(j.at("arg")));
    if (kind == "shifted")
        return RealSpec::shifted(spec_from_json(j.at("inner"), cfg),
                                 rational_from_json(j.at("offset")));
    if (kind == "quotient")
        return RealSpec::quotient(spec_from_json(j.at("num"), cfg),
                                  spec_from_json(j.at("den"), cfg),
                                  cfg.precision_budget_bits);
    throw std::invalid_argument("unknown RealSpec kind: '" + kind + "'");
}

json config_json(const GlobalConfig& cfg) {
    return json{{"precision_budget_bits", cfg.precision_budget_bits},
                {"engel_depth_cap", cfg.engel_depth_cap},
                {"exponent_cap", cfg.exponent_cap},
                {"output", cfg.output == GlobalConfig::Output::json ? "json" : "plain"}};
}

GlobalConfig config_from_json(const json& j, GlobalConfig base) {
    if (j.contains("precision_budget_bits"))
        base.precision_budget_bits = j.at("precision_budget_bits").get<long>();
    if (j.contains("engel_depth_cap")) base.engel_depth_cap = j.at("engel_depth_cap").get<long>();
    if (j.contains("exponent_cap")) base.exponent_cap = j.at("exponent_cap").get<long>();
    if (j.contains("output")) {
        const std::string out = j.at("output").get<std::string>();
        if (out == "json") base.output = GlobalConfig::Output::json;
        else if (out == "plain") base.output = GlobalConfig::Output::plain;
        else throw std::invalid_argument("config output must be 'json' or 'plain'");
    }
    for (auto& [key, _] : j.items())
        if (key != "precision_budget_bits" && key != "engel_depth_cap" &&
            key != "exponent_cap" && key != "output")
            throw std::invalid_argument("unknown config key: '" + key + "'");
    if (base.precision_budget_bits < 1 || base.engel_depth_cap < 1 || base.exponent_cap < 1)
        throw std::invalid_argument("config caps must be positive");
    return base;
}

json certificate_json(const RootCertificate& cert) {
    return json{{"kind", "root"},
                {"q", cert.q.get_str()},
                {"n", std::to_string(cert.n)},
                {"m", cert.m.get_str()},
                {"B", cert.B.get_str()},
                {"k", std::to_string(cert.k)},
                {"coeffs", integer_vector_json_strings(cert.coeffs)},
                {"z_enclosure", interval_json(cert.z_enclosure)}};
}

json certificate_json(const EulerCertificate& cert) {
    return json{{"kind", "euler"},
                {"B", cert.B.get_str()},
                {"n", std::to_string(cert.n)},
                {"S", cert.S.str()},
                {"lower", cert.lower.str()},
                {"upper", cert.upper.str()}};
}

json certificate_json(const EngelNumberCertificate& cert) {
    return json{{"kind", "engel"},
                {"B", cert.B.get_str()},
                {"depth", std::to_string(cert.depth)},
                {"r", cert.r.get_str()},
                {"s", cert.s.get_str()},
                {"bound", cert.bound.str()},
                {"z_enclosure", interval_json(cert.z_enclosure)},
                {"digits", integer_vector_json_strings(cert.digits)},
                {"source", spec_json(cert.source)}};
}

RootCertificate root_certificate_from_json(const json& j) {
    RootCertificate cert;
    cert.q = integer_from_json(j.at("q"));
    cert.n = static_cast<unsigned long>(integer_from_json(j.at("n")).get_ui());
    cert.m = integer_from_json(j.at("m"));
    cert.B = integer_from_json(j.at("B"));
    cert.k = static_cast<unsigned long>(integer_from_json(j.at("k")).get_ui());
    cert.coeffs = integer_vector_from_json(j.at("coeffs"));
    cert.z_enclosure = interval_from_json(j.at("z_enclosure"));
    return cert;
}

EulerCertificate euler_certificate_from_json(const json& j) {
    EulerCertificate cert;
    cert.B = integer_from_json(j.at("B"));
    cert.n = static_cast<unsigned long>(integer_from_json(j.at("n")).get_ui());
    cert.S = rational_from_json(j.at("S"));
    cert.lower = rational_from_json(j.at("lower"));
    cert.upper = rational_from_json(j.at("upper"));
    return cert;
}

EngelNumberCertificate engel_certificate_from_json(const json& j, const GlobalConfig& cfg) {
    EngelNumberCertificate cert;
    cert.B = integer_from_json(j.at("B"));
    cert.depth = static_cast<long>(integer_from_json(j.at("depth")).get_si());
    cert.r = integer_from_json(j.at("r"));
    cert.s = integer_from_json(j.at("s"));
    cert.bound = rational_from_json(j.at("bound"));
    cert.z_enclosure = interval_from_json(j.at("z_enclosure"));
    cert.digits = integer_vector_from_json(j.at("digits"));
    cert.source = spec_from_json(j.at("source"), cfg);
    return cert;
}

VerifyResult verify_certificate_json(const json& j, const GlobalConfig& cfg) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "root") return verify_root_certificate(root_certificate_from_json(j), cfg);
    if (kind == "euler") return verify_euler_certificate(euler_certificate_from_json(j), cfg);
    if (kind == "engel")
        return verify_engel_certificate(engel_certificate_from_json(j, cfg), cfg);
    return {false, "unknown_certificate_kind"};
}

json function_json(const FunctionUnderTest& f) {
    struct Visitor {
        json operator()(const Hyperbola& h) const {
            return json{{"kind", "hyperbola"}, {"c", h.c.str()}};
        }
        json operator()(const HyperbolaPlus& h) const {
            return json{{"kind", "hyperbola_plus"},
                        {"c", h.c.str()},
                        {"perturbation",
                         json{{"wave", h.pert.use_cos ? "cos" : "sin"},
                              {"amplitude", h.pert.amplitude},
                              {"omega", h.pert.omega},
                              {"phase", h.pert.phase}}}};
        }
        json operator()(const SampleTable& s) const {
            return json{{"kind", "table"}, {"xs", s.xs}, {"ys", s.ys}};
        }
    };
    return std::visit(Visitor{}, f);
}

FunctionUnderTest function_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "hyperbola") return Hyperbola{rational_from_json(j.at("c"))};
    if (kind == "hyperbola_plus") {
        const json& p = j.at("perturbation");
        LogPeriodic pert;
        const std::string wave = p.at("wave").get<std::string>();
        if (wave == "cos") pert.use_cos = true;
        else if (wave == "sin") pert.use_cos = false;
        else throw std::invalid_argument("perturbation wave must be 'sin' or 'cos'");
        pert.amplitude = p.at("amplitude").get<double>();
        if (p.contains("omega")) {
            pert.omega = p.at("omega").get<double>();
        } else if (p.contains("log2_period")) {
            // Period P in log2 coordinates: w(2*pi*log2(t)/P).
            pert.omega = 2.0 * M_PI / (std::log(2.0) * p.at("log2_period").get<double>());
        } else {
            throw std::invalid_argument("perturbation needs 'omega' or 'log2_period'");
        }
        pert.phase = p.contains("phase") ? p.at("phase").get<double>() : 0.0;
        return HyperbolaPlus{rational_from_json(j.at("c")), pert};
    }
    if (kind == "table") {
        if (j.contains("csv")) return load_table_csv(j.at("csv").get<std::string>());
        SampleTable t;
        t.xs = j.at("xs").get<std::vector<double>>();
        t.ys = j.at("ys").get<std::vector<double>>();
        if (t.xs.size() >= 2 && t.xs.front() > t.xs.back()) {
            std::reverse(t.xs.begin(), t.xs.end());
            std::reverse(t.ys.begin(), t.ys.end());
        }
        return t;
    }
    throw std::invalid_argument("unknown function kind: '" + kind + "'");
}

json witness_json(const DensityWitness& w) {
    return json{{"r", w.r.get_str()},
                {"s", w.s.get_str()},
                {"z_enclosure", interval_json(w.z_enclosure)},
                {"bound", w.bound.str()},
                {"depth", w.depth}};
}

json additive_solution_json(const AdditiveSolution& sol) {
    return json{{"m", sol.m.get_str()},
                {"n", sol.n.get_str()},
                {"err", interval_json(sol.err)}};
}

json mul_solution_json(const MulSolution& sol) {
    return json{{"m", integer_json(sol.m)},
                {"n", integer_json(sol.n)},
                {"value", sol.value.str()},
                {"err", sol.err.str()},
                {"certified", sol.certified}};
}

json invariance_report_json(const InvarianceReport& report) {
    json out{{"p", report.p.str()},
             {"grid", report.grid},
             {"integrals", report.integrals},
             {"spread", report.spread},
             {"quad_error_bound", report.quad_error_bound},
             {"verdict", to_string(report.verdict)}};
    if (report.recovered_c) out["recovered_c"] = *report.recovered_c;
    if (report.residual_max) out["residual_max"] = *report.residual_max;
    return out;
}

namespace {

json axis_report_json(const AxisReport& axis) {
    json out{{"invariance_p", invariance_report_json(axis.inv_p)},
             {"invariance_q", invariance_report_json(axis.inv_q)}};
    if (axis.c_p) out["c_from_p"] = json{{"c", axis.c_p->c}, {"half_width", axis.c_p->half_width}};
    if (axis.c_q) out["c_from_q"] = json{{"c", axis.c_q->c}, {"half_width", axis.c_q->half_width}};
    if (axis.residual_max) out["residual_max"] = *axis.residual_max;
    return out;
}

}  // namespace

json audit_report_json(const AuditReport& report) {
    json out{{"p", report.p.str()},
             {"q", report.q.str()},
             {"verdict", to_string(report.verdict)},
             {"detail", report.detail}};
    if (report.positive) out["positive_axis"] = axis_report_json(*report.positive);
    if (report.negative) out["negative_axis"] = axis_report_json(*report.negative);
    if (report.c1) out["c1"] = *report.c1;
    if (report.c2) out["c2"] = *report.c2;
    if (report.sign_linkage) out["sign_linkage"] = *report.sign_linkage;
    return out;
}

}  // namespace denseset::io
