#include "denseset/haarcheck.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "denseset/errors.hpp"
#include "denseset/muldensity.hpp"

namespace denseset {

namespace {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK
// dqk15 tables, Fullerton 1981).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& other) const { return err < other.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    double fv1[8], fv2[8];
    const double fc = f(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    fv1[7] = fv2[7] = fc;

    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv1[j] = f(centr - absc);
        fv2[j] = f(centr + absc);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double dhlgth = std::abs(hlgth);
    resasc *= dhlgth;
    resabs *= dhlgth;
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double epmach = std::numeric_limits<double>::epsilon();
    err = std::max(err, epmach * 50.0 * resabs);
    return Panel{a, b, resk * hlgth, err};
}

double table_value(const SampleTable& t, double x) {
    if (x < t.xs.front() || x > t.xs.back())
        throw HypothesisError("domain_violation", "sample table: point outside table domain");
    auto it = std::upper_bound(t.xs.begin(), t.xs.end(), x);
    std::size_t hi = std::min<std::size_t>(t.xs.size() - 1,
                                           static_cast<std::size_t>(it - t.xs.begin()));
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double w = (x - t.xs[lo]) / (t.xs[hi] - t.xs[lo]);
    return t.ys[lo] + w * (t.ys[hi] - t.ys[lo]);
}

// Exact integral of the piecewise-linear interpolant over [a, b] (a <= b,
// inside the table domain): trapezoids over the overlapped segments.
QuadResult table_integral(const SampleTable& t, double a, double b) {
    double total = 0.0;
    double abssum = 0.0;
    for (std::size_t i = 0; i + 1 < t.xs.size(); ++i) {
        const double lo = std::max(a, t.xs[i]);
        const double hi = std::min(b, t.xs[i + 1]);
        if (lo >= hi) continue;
        const double piece = 0.5 * (table_value(t, lo) + table_value(t, hi)) * (hi - lo);
        total += piece;
        abssum += std::abs(piece);
    }
    const double epmach = std::numeric_limits<double>::epsilon();
    return {total, 8.0 * epmach * (abssum + std::abs(total))};
}

void validate_table(const SampleTable& t) {
    if (t.xs.size() < 2 || t.xs.size() != t.ys.size())
        throw std::invalid_argument("sample table: need >= 2 points, equal column lengths");
    for (std::size_t i = 0; i + 1 < t.xs.size(); ++i)
        if (!(t.xs[i] < t.xs[i + 1]))
            throw std::invalid_argument("sample table: abscissae must be strictly increasing");
    if (t.xs.front() < 0.0 && t.xs.back() > 0.0)
        throw std::invalid_argument("sample table: abscissae must not cross zero");
}

double ln_dilation(const Rational& p) {
    const double pd = p.to_double();
    if (!(pd > 1.0)) throw std::invalid_argument("dilation must be > 1");
    return std::log(pd);
}

bool table_covers_positive(const SampleTable& t) { return t.xs.front() > 0.0; }

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_panels) {
    if (a == b) return {0.0, 0.0};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<Panel> queue;
    queue.push(gk15(f, a, b));
    int panels = 1;
    double err_total = queue.top().err;

    while (err_total > abs_tol && panels < max_panels) {
        Panel worst = queue.top();
        if (worst.b - worst.a <= std::abs(worst.a) * 1e-15) break;  // width at rounding floor
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        err_total += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    // Deterministic reduction: sum panels ordered by interval start.
    std::vector<Panel> all;
    all.reserve(static_cast<std::size_t>(panels));
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double value = 0.0, err = 0.0;
    for (const Panel& panel : all) {
        value += panel.value;
        err += panel.err;
    }
    return {sign * value, err};
}

double eval_function(const FunctionUnderTest& f, double t, const HaarOptions& opts) {
    if (std::abs(t) < opts.zero_exclusion)
        throw HypothesisError("domain_violation",
                              "evaluation inside the excluded neighbourhood of zero");
    struct Visitor {
        double t;
        double operator()(const Hyperbola& h) const { return h.c.to_double() / t; }
        double operator()(const HyperbolaPlus& h) const {
            const LogPeriodic& w = h.pert;
            const double u = w.omega * std::log(std::abs(t)) + w.phase;
            const double osc = w.use_cos ? std::cos(u) : std::sin(u);
            return (h.c.to_double() + w.amplitude * osc) / t;
        }
        double operator()(const SampleTable& s) const { return table_value(s, t); }
    };
    return std::visit(Visitor{t}, f);
}

QuadResult dilation_integral(const FunctionUnderTest& f, double x, const Rational& p,
                             const HaarOptions& opts) {
    const double pd = p.to_double();
    const double lnp = ln_dilation(p);
    if (x == 0.0) throw HypothesisError("domain_violation", "dilation base point is zero");

    const double a = std::min(x, pd * x);
    const double b = std::max(x, pd * x);
    if (std::min(std::abs(a), std::abs(b)) < opts.zero_exclusion)
        throw HypothesisError("domain_violation",
                              "dilation interval touches the excluded neighbourhood of zero");

    if (const auto* h = std::get_if<Hyperbola>(&f)) {
        // Closed form: oriented integral of c/t from x to px is c ln p on
        // either half-axis.
        const double value = h->c.to_double() * lnp;
        const double epmach = std::numeric_limits<double>::epsilon();
        return {value, 8.0 * epmach * (std::abs(value) + 1e-300)};
    }
    if (const auto* s = std::get_if<SampleTable>(&f)) {
        if (a < s->xs.front() || b > s->xs.back())
            throw HypothesisError("domain_violation", "dilation interval outside table domain");
        QuadResult r = table_integral(*s, a, b);
        if (x > pd * x) r.value = -r.value;  // oriented
        return r;
    }

    QuadResult r = integrate_adaptive([&](double t) { return eval_function(f, t, opts); }, a, b,
                                      opts.quad_tol, opts.max_panels);
    if (x > pd * x) r.value = -r.value;
    return r;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::constant: return "constant";
        case Verdict::non_constant: return "non-constant";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::consistent_with_theorem: return "consistent-with-theorem";
        case AuditVerdict::violates_hypotheses: return "violates-hypotheses";
        case AuditVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

InvarianceReport invariance_check(const FunctionUnderTest& f, const Rational& p,
                                  const std::vector<double>& grid, double tol,
                                  const HaarOptions& opts) {
    if (grid.empty()) throw std::invalid_argument("invariance_check: empty grid");

    InvarianceReport report;
    report.p = p;
    report.grid = grid;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : grid) {
        QuadResult r = dilation_integral(f, x, p, opts);
        report.integrals.push_back(r.value);
        report.quad_error_bound += r.error_bound;
        lo = std::min(lo, r.value);
        hi = std::max(hi, r.value);
    }
    report.spread = hi - lo;

    if (report.quad_error_bound > tol) {
        report.verdict = Verdict::inconclusive;
    } else if (report.spread <= tol + report.quad_error_bound) {
        report.verdict = Verdict::constant;
    } else {
        report.verdict = Verdict::non_constant;
    }

    if (report.verdict == Verdict::constant) {
        CRecovery c = recover_c(f, p, opts);
        report.recovered_c = c.c;
        const double glo = *std::min_element(grid.begin(), grid.end());
        const double ghi = *std::max_element(grid.begin(), grid.end());
        double worst = 0.0;
        for (double t : geometric_grid(glo, ghi,
                                       static_cast<int>(grid.size()) * opts.check_grid_factor))
            worst = std::max(worst, std::abs(eval_function(f, t, opts) - c.c / t));
        report.residual_max = worst;
    }
    return report;
}

CRecovery recover_c(const FunctionUnderTest& f, const Rational& p, const HaarOptions& opts) {
    const double lnp = ln_dilation(p);
    double base = 1.0;
    if (const auto* s = std::get_if<SampleTable>(&f)) {
        // Base point 1 may fall outside the table; pick the point whose
        // dilation interval sits geometrically centered in the domain.
        const double pd = p.to_double();
        base = std::sqrt(std::abs(s->xs.front()) * std::abs(s->xs.back()) / pd);
        if (!table_covers_positive(*s)) base = -base;
    }
    QuadResult r = dilation_integral(f, base, p, opts);
    return {r.value / lnp, r.error_bound / lnp};
}

namespace {

AxisReport run_axis(const FunctionUnderTest& f, const Rational& p, const Rational& q,
                    const std::vector<double>& grid, double tol, const HaarOptions& opts) {
    AxisReport axis{invariance_check(f, p, grid, tol, opts),
                    invariance_check(f, q, grid, tol, opts),
                    std::nullopt,
                    std::nullopt,
                    std::nullopt};
    if (axis.inv_p.verdict == Verdict::constant) axis.c_p = recover_c(f, p, opts);
    if (axis.inv_q.verdict == Verdict::constant) axis.c_q = recover_c(f, q, opts);
    if (axis.c_p) {
        const double glo = *std::min_element(grid.begin(), grid.end());
        const double ghi = *std::max_element(grid.begin(), grid.end());
        double worst = 0.0;
        for (double t : geometric_grid(glo, ghi,
                                       static_cast<int>(grid.size()) * opts.check_grid_factor))
            worst = std::max(worst, std::abs(eval_function(f, t, opts) - axis.c_p->c / t));
        axis.residual_max = worst;
    }
    return axis;
}

// g(u) = f(-u): the negative-axis audit runs the positive machinery on g.
FunctionUnderTest reflect(const FunctionUnderTest& f) {
    struct Visitor {
        FunctionUnderTest operator()(const Hyperbola& h) const { return Hyperbola{-h.c}; }
        FunctionUnderTest operator()(const HyperbolaPlus& h) const {
            // f(-u) = (c + A w(omega ln|u| + phase)) / (-u): reflected
            // hyperbola coefficient -c with the perturbation sign flipped.
            HyperbolaPlus out{-h.c, h.pert};
            out.pert.amplitude = -out.pert.amplitude;
            return out;
        }
        FunctionUnderTest operator()(const SampleTable& s) const {
            SampleTable out;
            out.xs.assign(s.xs.rbegin(), s.xs.rend());
            for (double& x : out.xs) x = -x;
            out.ys.assign(s.ys.rbegin(), s.ys.rend());
            return out;
        }
    };
    return std::visit(Visitor{}, f);
}

bool defined_on_negative_axis(const FunctionUnderTest& f) {
    if (const auto* s = std::get_if<SampleTable>(&f)) return s->xs.front() < 0.0;
    return true;
}

bool defined_on_positive_axis(const FunctionUnderTest& f) {
    if (const auto* s = std::get_if<SampleTable>(&f)) return table_covers_positive(*s);
    return true;
}

}  // namespace

AuditReport two_dilation_audit(const FunctionUnderTest& f, const Rational& p, const Rational& q,
                               const std::vector<double>& grid, double tol,
                               const HaarOptions& opts) {
    if (!mul_independence_rational(p, q))
        throw HypothesisError("dependent_dilations",
                              "two_dilation_audit: ln p / ln q is rational");

    AuditReport report;
    report.p = p;
    report.q = q;

    if (defined_on_positive_axis(f)) report.positive = run_axis(f, p, q, grid, tol, opts);
    if (defined_on_negative_axis(f))
        report.negative = run_axis(reflect(f), p, q, grid, tol, opts);
    if (!report.positive && !report.negative)
        throw std::invalid_argument("two_dilation_audit: function defined on neither axis");

    bool any_inconclusive = false;
    bool any_violation = false;
    std::string detail;
    auto fold = [&](const AxisReport& axis, const char* axis_name) {
        for (const auto* inv : {&axis.inv_p, &axis.inv_q}) {
            if (inv->verdict == Verdict::non_constant) {
                any_violation = true;
                detail += std::string(axis_name) + " axis: I_" + inv->p.str() +
                          " varies (spread " + std::to_string(inv->spread) + "); ";
            } else if (inv->verdict == Verdict::inconclusive) {
                any_inconclusive = true;
                detail += std::string(axis_name) + " axis: I_" + inv->p.str() +
                          " inconclusive at this tolerance; ";
            }
        }
    };
    if (report.positive) fold(*report.positive, "positive");
    if (report.negative) fold(*report.negative, "negative");

    if (any_violation) {
        report.verdict = AuditVerdict::violates_hypotheses;
        report.detail = detail;
        return report;
    }
    if (any_inconclusive) {
        report.verdict = AuditVerdict::inconclusive;
        report.detail = detail;
        return report;
    }

    // Hypotheses hold on every audited axis; now cross-check the recovered
    // constants and the residual against c/t.
    bool consistent = true;
    if (report.positive && report.positive->c_p && report.positive->c_q) {
        report.c1 = report.positive->c_p->c;
        const double gap = std::abs(report.positive->c_p->c - report.positive->c_q->c);
        const double budget =
            report.positive->c_p->half_width + report.positive->c_q->half_width + tol;
        if (gap > budget) {
            consistent = false;
            detail += "positive axis: p- and q-recovered constants disagree; ";
        }
    }
    if (report.negative && report.negative->c_p && report.negative->c_q) {
        report.c2 = report.negative->c_p->c;
        const double gap = std::abs(report.negative->c_p->c - report.negative->c_q->c);
        const double budget =
            report.negative->c_p->half_width + report.negative->c_q->half_width + tol;
        if (gap > budget) {
            consistent = false;
            detail += "negative axis: p- and q-recovered constants disagree; ";
        }
    }
    if (report.c1 && report.c2) {
        report.sign_linkage = std::abs(*report.c1 + *report.c2);
        double budget = tol;
        if (report.positive->c_p) budget += report.positive->c_p->half_width;
        if (report.negative->c_p) budget += report.negative->c_p->half_width;
        budget = std::max(budget, 1e-9 * (std::abs(*report.c1) + std::abs(*report.c2)) + tol);
        if (*report.sign_linkage > budget) {
            consistent = false;
            detail += "sign linkage c1 = -c2 fails; ";
        }
    }
    for (const auto* axis : {&report.positive, &report.negative}) {
        if (*axis && (*axis)->residual_max && *(*axis)->residual_max > opts.residual_tol) {
            consistent = false;
            detail += "residual against c/t exceeds budget; ";
        }
    }

    report.verdict =
        consistent ? AuditVerdict::consistent_with_theorem : AuditVerdict::inconclusive;
    report.detail = detail.empty() ? "all checks passed" : detail;
    return report;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("geometric_grid: count must be >= 2");
    if (!(lo != 0.0 && hi != 0.0 && ((lo > 0) == (hi > 0))))
        throw std::invalid_argument("geometric_grid: endpoints must share a sign");
    const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(count - 1));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) out.push_back(lo * std::pow(ratio, j));
    out.back() = hi;
    return out;
}

SampleTable load_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_table_csv: cannot open " + path);
    SampleTable t;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream row(line);
        double x, y;
        if (row >> x >> y) {
            t.xs.push_back(x);
            t.ys.push_back(y);
        }
    }
    if (t.xs.size() >= 2 && t.xs.front() > t.xs.back()) {
        std::reverse(t.xs.begin(), t.xs.end());
        std::reverse(t.ys.begin(), t.ys.end());
    }
    validate_table(t);
    return t;
}

}  // namespace denseset
