#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "denseset/rational.hpp"

namespace denseset {

// f(t) = c/t on R \ {0}.
struct Hyperbola {
    Rational c;
};

// f(t) = (c + amplitude * w(omega * ln|t| + phase)) / t with w = sin or cos.
// In log coordinates the perturbation integrates in closed form, which is
// what the tests use as the oracle for expected spreads.
struct LogPeriodic {
    bool use_cos = false;
    double amplitude = 0.0;
    double omega = 1.0;
    double phase = 0.0;
};

struct HyperbolaPlus {
    Rational c;
    LogPeriodic pert;
};

// Piecewise-linear interpolant of sampled points; abscissae strictly
// increasing and of one sign (the domain never crosses 0).
struct SampleTable {
    std::vector<double> xs;
    std::vector<double> ys;
};

using FunctionUnderTest = std::variant<Hyperbola, HyperbolaPlus, SampleTable>;

struct HaarOptions {
    double zero_exclusion = 1e-6;  // f is only locally integrable away from 0
    double quad_tol = 1e-12;       // per-integral adaptive target
    int max_panels = 4000;
    double residual_tol = 1e-6;
    int check_grid_factor = 4;     // residual grid density vs evaluation grid
};

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;
};

// Adaptive Gauss7/Kronrod15 with QUADPACK-style per-panel error estimates;
// the bound is the sum of panel estimates actually achieved.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_panels);

double eval_function(const FunctionUnderTest& f, double t, const HaarOptions& opts = {});

// I_p(x) = integral of f from x to p*x (oriented).  Closed forms for
// Hyperbola and SampleTable; adaptive quadrature otherwise.
QuadResult dilation_integral(const FunctionUnderTest& f, double x, const Rational& p,
                             const HaarOptions& opts = {});

enum class Verdict { constant, non_constant, inconclusive };
std::string to_string(Verdict v);

struct InvarianceReport {
    Rational p;
    std::vector<double> grid;
    std::vector<double> integrals;
    double spread = 0.0;
    double quad_error_bound = 0.0;  // accumulated panel estimates
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> recovered_c;    // filled when verdict == constant
    std::optional<double> residual_max;   // max |f - c/t| on the check grid
};

InvarianceReport invariance_check(const FunctionUnderTest& f, const Rational& p,
                                  const std::vector<double>& grid, double tol,
                                  const HaarOptions& opts = {});

struct CRecovery {
    double c = 0.0;
    double half_width = 0.0;
};

// c = I_p(1) / ln p; caller is responsible for a constant invariance verdict.
CRecovery recover_c(const FunctionUnderTest& f, const Rational& p,
                    const HaarOptions& opts = {});

enum class AuditVerdict { consistent_with_theorem, violates_hypotheses, inconclusive };
std::string to_string(AuditVerdict v);

struct AxisReport {
    InvarianceReport inv_p;
    InvarianceReport inv_q;
    std::optional<CRecovery> c_p;
    std::optional<CRecovery> c_q;
    std::optional<double> residual_max;
};

struct AuditReport {
    Rational p;
    Rational q;
    std::optional<AxisReport> positive;  // f(t) on t > 0
    std::optional<AxisReport> negative;  // g(t) = f(-t) on t > 0
    std::optional<double> c1;            // f(t) ~ c1/t on R+
    std::optional<double> c2;            // f(-t) ~ c2/t convention
    std::optional<double> sign_linkage;  // |c1 + c2|
    AuditVerdict verdict = AuditVerdict::inconclusive;
    std::string detail;
};

// Runs invariance checks for both dilations on every axis the function is
// defined on, recovers c, measures residuals against c/t, and checks the
// c1 = -c2 linkage across axes.  Refuses dependent dilations.
AuditReport two_dilation_audit(const FunctionUnderTest& f, const Rational& p, const Rational& q,
                               const std::vector<double>& grid, double tol,
                               const HaarOptions& opts = {});

std::vector<double> geometric_grid(double lo, double hi, int count);

// Two-column CSV (abscissa, ordinate); '#' comments allowed.  Decreasing
// abscissae are reversed; zero crossings and duplicates are rejected.
SampleTable load_table_csv(const std::string& path);

}  // namespace denseset
