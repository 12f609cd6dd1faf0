#pragma once

#include <json.hpp>

#include "denseset/certify.hpp"
#include "denseset/config.hpp"
#include "denseset/density.hpp"
#include "denseset/haarcheck.hpp"
#include "denseset/muldensity.hpp"

// JSON wire formats.  All numbers that can outgrow 64 bits cross the
// boundary as exact decimal strings; keys are emitted sorted, so identical
// inputs produce byte-identical output.
namespace denseset::io {

using json = nlohmann::json;

json integer_json(const Integer& v);      // number when it fits int64, else string
Integer integer_from_json(const json& j);

inline json rational_json(const Rational& r) { return r.str(); }
Rational rational_from_json(const json& j);

json interval_json(const Interval& iv);
Interval interval_from_json(const json& j);

// {"kind":"rational"|"nthroot"|"e"|"ln"|"shifted"|"quotient", ...}
json spec_json(const RealSpec& spec);
RealSpec spec_from_json(const json& j, const GlobalConfig& cfg = {});

json config_json(const GlobalConfig& cfg);
GlobalConfig config_from_json(const json& j, GlobalConfig base = {});

// Certificates: canonical JSON, every integer as a decimal string.
json certificate_json(const RootCertificate& cert);
json certificate_json(const EulerCertificate& cert);
json certificate_json(const EngelNumberCertificate& cert);

RootCertificate root_certificate_from_json(const json& j);
EulerCertificate euler_certificate_from_json(const json& j);
EngelNumberCertificate engel_certificate_from_json(const json& j, const GlobalConfig& cfg = {});

// Dispatches on "kind" and runs the matching verifier.
VerifyResult verify_certificate_json(const json& j, const GlobalConfig& cfg = {});

json function_json(const FunctionUnderTest& f);
FunctionUnderTest function_from_json(const json& j);

json witness_json(const DensityWitness& w);
json additive_solution_json(const AdditiveSolution& sol);
json mul_solution_json(const MulSolution& sol);
json invariance_report_json(const InvarianceReport& report);
json audit_report_json(const AuditReport& report);

}  // namespace denseset::io
