#include "s3e/verify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace s3e {

namespace {

constexpr std::size_t kDiag = 6;

ParamRingElem pconst(const RelationPtr& rel, const RadicalScalar& c) { return ParamRingElem::constant(rel, c); }

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::optional<std::size_t> original_index(std::string_view name) {
    for (std::size_t i = 0; i < 15; ++i)
        if (original_names()[i] == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> transformed_index(std::string_view name) {
    for (std::size_t i = 0; i < 15; ++i)
        if (transformed_names()[i] == name) return i;
    return std::nullopt;
}

MetricSolution empty_solution(const MetricChart& chart, RelationPtr rel) {
    MetricSolution s;
    s.chart = chart;
    s.relation = rel;
    for (auto& v : s.original) v = pconst(rel, RadicalScalar());
    s.mu = pconst(rel, RadicalScalar());
    return s;
}

// Values by variable name over a solver table; both coordinate systems are accepted.
template <class Get>
MetricSolution convert(const VarTablePtr& vars, const MetricChart& chart, RelationPtr rel, Get get) {
    MetricSolution out = empty_solution(chart, rel);
    std::array<std::optional<ParamRingElem>, 15> trans;
    bool have_original = false;
    for (std::size_t k = 0; k < vars->size(); ++k) {
        const std::string& name = vars->name(k);
        if (name == "MU" || name == "mu") {
            out.mu = get(k);
        } else if (auto i = transformed_index(name)) {
            trans[*i] = get(k);
        } else if (auto j = original_index(name)) {
            out.original[*j] = get(k);
            have_original = true;
        } else {
            throw VerifyError("unknown solution variable " + name);
        }
    }
    if (have_original) return out;
    std::array<RadicalScalar, 15> tdiag{};
    for (std::size_t i = 0; i < kDiag; ++i) {
        if (!trans[i] || !trans[i]->is_constant()) throw VerifyError("diagonal value missing or not constant");
        tdiag[i] = trans[i]->constant_value();
    }
    auto o = TransformSpec{chart}.inverse_exact(tdiag);
    if (!o) throw VerifyError("inverse transform leaves the field or a diagonal is not positive");
    for (std::size_t i = 0; i < kDiag; ++i) out.original[i] = pconst(rel, (*o)[i]);
    for (std::size_t i = kDiag; i < 15; ++i)
        if (trans[i]) out.original[i] = *trans[i] * (*o)[transform_divisor(i)];
    return out;
}

std::optional<RadicalScalar> as_radical(std::string_view text) {
    try {
        return RadicalScalar::parse(text);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

const QPoly& scalar_poly(const MetricChart& chart) {
    static std::map<std::string, QPoly> cache;
    // mu-fixed charts share the scalar curvature of the z2 chart
    std::string key = chart.kind == ChartCase::z2_mu_fixed ? "z2" : chart.label();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_scalar_curvature(chart)).first;
    return it->second;
}

// s at parameter t from the relation l*s^2 + m(t)*s + n(t) = 0 (larger root).
double s_at(const SqrtRelation& rel, double t) {
    double l = 0, m = 0, n = 0;
    for (const auto& [mon, c] : rel.poly().terms()) {
        double v = c.to_double() * std::pow(t, mon.exp[0]);
        if (mon.exp[1] == 2)
            l += v;
        else if (mon.exp[1] == 1)
            m += v;
        else
            n += v;
    }
    if (l == 0) throw VerifyError("relation is not quadratic in s");
    double disc = std::max(0.0, m * m - 4 * l * n);
    return (-m + std::sqrt(disc)) / (2 * l);
}

}  // namespace

std::array<RadicalScalar, 6> MetricSolution::diagonal() const {
    std::array<RadicalScalar, 6> d{};
    for (std::size_t i = 0; i < kDiag; ++i) {
        if (!original[i].is_constant()) throw VerifyError("diagonal parameter depends on t");
        d[i] = original[i].constant_value();
    }
    return d;
}

std::array<ParamRingElem, 15> MetricSolution::transformed() const {
    auto d = diagonal();
    std::array<RadicalScalar, 15> full{};
    for (std::size_t i = 0; i < kDiag; ++i) {
        if (d[i].sign() <= 0) throw VerifyError("diagonal parameter not positive");
        full[i] = d[i];
    }
    auto t = TransformSpec{chart}.forward_exact(full);
    std::array<ParamRingElem, 15> out;
    for (std::size_t i = 0; i < kDiag; ++i) out[i] = pconst(relation, t[i]);
    for (std::size_t i = kDiag; i < 15; ++i) out[i] = original[i] * d[transform_divisor(i)].inverse();
    return out;
}

BasisChange MetricSolution::at(double t, double s) const {
    std::array<double, 15> v{};
    for (std::size_t i = 0; i < 15; ++i) v[i] = original[i].evaluate(t, s);
    return BasisChange::from_array(v);
}

double MetricSolution::mu_at(double t, double s) const { return mu.evaluate(t, s); }

MetricSolution from_point(const SolutionPoint& p, const MetricChart& chart) {
    return convert(p.vars, chart, nullptr, [&](std::size_t k) { return pconst(nullptr, p.values[k]); });
}

MetricSolution from_family(const SolutionFamily& f, const MetricChart& chart) {
    MetricSolution s = convert(f.vars, chart, f.relation, [&](std::size_t k) { return f.values[k]; });
    s.parameter = f.parameter_var;
    s.t_lo = f.domain_lo;
    s.t_hi = f.domain_hi;
    return s;
}

ParamRingElem exact_scalar_curvature(const MetricSolution& sol) {
    const QPoly& S = scalar_poly(sol.chart);
    auto tr = sol.transformed();
    std::vector<ParamRingElem> vals;
    for (std::size_t k = 0; k < S.vars()->size(); ++k) {
        const std::string& name = S.vars()->name(k);
        if (name == "MU") {
            vals.push_back(sol.mu);
        } else if (auto i = transformed_index(name)) {
            vals.push_back(tr[*i]);
        } else {
            throw VerifyError("unexpected variable in S: " + name);
        }
    }
    return param_reduce(S.evaluate<ParamRingElem>(std::span<const ParamRingElem>(vals), pconst(sol.relation, 0)));
}

ExactReport exact_verify(const MetricSolution& sol, const PolySystem& system) {
    ExactReport rep;
    std::array<ParamRingElem, 15> tr;
    bool have_tr = false;
    std::vector<ParamRingElem> vals;
    for (std::size_t k = 0; k < system.vars->size(); ++k) {
        const std::string& name = system.vars->name(k);
        if (name == "MU" || name == "mu") {
            vals.push_back(sol.mu);
        } else if (auto i = original_index(name)) {
            vals.push_back(sol.original[*i]);
        } else if (auto j = transformed_index(name)) {
            if (!have_tr) {
                tr = sol.transformed();
                have_tr = true;
            }
            vals.push_back(tr[*j]);
        } else {
            throw VerifyError("system variable " + name + " has no value");
        }
    }
    const ParamRingElem zero = pconst(sol.relation, 0);
    for (std::size_t i = 0; i < system.polys.size(); ++i) {
        ParamRingElem r = param_reduce(system.polys[i].evaluate<ParamRingElem>(std::span<const ParamRingElem>(vals), zero));
        rep.residuals.push_back(r.to_string());
        if (!r.is_zero()) {
            rep.ok = false;
            rep.failing.push_back(i);
        }
    }
    ParamRingElem S = exact_scalar_curvature(sol);
    rep.scalar = S.to_string();
    if (sol.claimed_scalar) {
        auto claimed = as_radical(*sol.claimed_scalar);
        bool match = claimed && S.is_constant() && S.constant_value() == *claimed;
        rep.scalar_matches = match;
        if (!match) rep.ok = false;
    }
    std::ostringstream msg;
    if (!rep.failing.empty()) {
        msg << "nonzero residual in polynomial";
        for (auto i : rep.failing) msg << " " << i + 1;
    }
    if (rep.scalar_matches == false) {
        if (msg.tellp() > 0) msg << "; ";
        msg << "S is " << rep.scalar << ", table says " << *sol.claimed_scalar;
    }
    rep.message = msg.str();
    return rep;
}

std::vector<std::pair<double, double>> family_samples(const MetricSolution& sol, int k) {
    if (!sol.is_family()) return {{0.0, 0.0}};
    double lo = sol.t_lo ? sol.t_lo->to_double() : -1.0;
    double hi = sol.t_hi ? sol.t_hi->to_double() : 1.0;
    std::vector<double> ts{lo};
    for (int i = 1; i <= k; ++i) ts.push_back(lo + (hi - lo) * i / (k + 1));
    ts.push_back(hi);
    std::vector<std::pair<double, double>> out;
    for (double t : ts) {
        double s = s_at(*sol.relation, t);
        out.emplace_back(t, s);
        if (std::abs(s) > 1e-12) out.emplace_back(t, -s);
    }
    return out;
}

Certificate certify_einstein(const MetricSolution& sol, int samples, const Thresholds& th) {
    Certificate cert;
    for (auto [t, s] : family_samples(sol, samples)) {
        SampleCertificate c;
        c.t = t;
        c.s = s;
        BasisChange p = sol.at(t, s);
        double mu = sol.mu_at(t, s);
        c.lambda = -mu / 2;
        try {
            c.report = curvature(p, c.lambda);
        } catch (const GeometryError& e) {
            c.failure = e.what();
            cert.ok = false;
            cert.samples.push_back(c);
            continue;
        }
        c.ricci_residual = c.report.einstein_residual;
        c.scalar_residual = std::abs(c.report.scalar - 6 * c.lambda);
        c.multiplier_residual = std::abs(mu + 2 * c.report.scalar / 6);
        c.volume_residual = std::abs(p.a * p.b * p.c * p.d * p.e * p.f - 1);
        std::ostringstream why;
        if (!(c.ricci_residual < th.ricci)) why << "max|Ric - lambda Id| = " << c.ricci_residual << "; ";
        if (!(c.scalar_residual < th.scalar)) why << "|S - 6 lambda| = " << c.scalar_residual << "; ";
        if (!(c.multiplier_residual < th.multiplier)) why << "|mu + 2 lambda| = " << c.multiplier_residual << "; ";
        if (!(c.volume_residual < th.volume)) why << "|abcdef - 1| = " << c.volume_residual << "; ";
        c.failure = why.str();
        c.ok = c.failure.empty();
        if (!c.ok) cert.ok = false;
        cert.samples.push_back(std::move(c));
    }
    return cert;
}

std::string_view to_string(MetricLabel label) {
    switch (label) {
    case MetricLabel::standard:
        return "standard";
    case MetricLabel::nearly_kahler:
        return "nearly_kahler";
    case MetricLabel::unknown:
        break;
    }
    return "unknown";
}

const std::array<ReferenceMetric, 2>& reference_metrics() {
    static const std::array<ReferenceMetric, 2> refs = [] {
        BasisChange can;
        CurvatureReport rc = curvature(can);
        // nearly Kaehler metric in the z2xz2 normal form
        const double q = std::pow(3.0, 0.25);
        BasisChange nk;
        nk.a = nk.b = nk.c = q / std::sqrt(2.0);
        nk.d = nk.e = nk.f = std::sqrt(2.0) / q;
        nk.x = nk.y = nk.z = 1 / (std::sqrt(2.0) * q);
        CurvatureReport rn = curvature(nk);
        return std::array<ReferenceMetric, 2>{ReferenceMetric{MetricLabel::standard, rc.scalar, rc.invariant_R2},
                                              ReferenceMetric{MetricLabel::nearly_kahler, rn.scalar, rn.invariant_R2}};
    }();
    return refs;
}

MetricLabel classify(const CurvatureReport& report, double rel_tol) {
    auto close = [&](double a, double b) { return std::abs(a - b) <= rel_tol * std::abs(b); };
    for (const auto& ref : reference_metrics())
        if (close(report.scalar, ref.scalar) && close(report.invariant_R2, ref.invariant_R2)) return ref.label;
    return MetricLabel::unknown;
}

std::string format_solutions(const SolutionsFile& file) {
    std::ostringstream out;
    out << "# s3e solutions\n";
    for (const auto& [k, v] : file.header) out << "# " << k << ": " << v << "\n";
    for (const auto& sol : file.solutions) {
        out << (sol.is_family() ? "family" : "point") << "\n";
        if (!sol.label.empty()) out << "  label = " << sol.label << "\n";
        if (sol.is_family()) {
            out << "  relation = " << sol.relation->to_string() << "\n";
            if (!sol.parameter.empty()) out << "  parameter = " << sol.parameter << "\n";
            if (sol.t_lo && sol.t_hi) out << "  domain = " << sol.t_lo->to_string() << ", " << sol.t_hi->to_string() << "\n";
        }
        for (std::size_t i = 0; i < 15; ++i)
            if (sol.chart.is_free(i)) out << "  " << original_names()[i] << " = " << sol.original[i].to_string() << "\n";
        out << "  mu = " << sol.mu.to_string() << "\n";
        bool constant_diag = std::all_of(sol.original.begin(), sol.original.begin() + kDiag,
                                         [](const ParamRingElem& v) { return v.is_constant(); });
        if (constant_diag) {
            auto tr = sol.transformed();
            for (std::size_t i = 0; i < 15; ++i)
                if (sol.chart.is_free(i)) out << "  " << transformed_names()[i] << " = " << tr[i].to_string() << "\n";
        }
        if (sol.claimed_scalar) out << "  S = " << *sol.claimed_scalar << "\n";
        out << "end\n";
    }
    return out.str();
}

SolutionsFile parse_solutions(std::string_view text) {
    SolutionsFile file;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<MetricChart> chart;
    bool in_record = false;
    bool family = false;
    std::vector<std::pair<std::string, std::string>> entries;
    auto fail = [&](const std::string& why) {
        throw ParseError("solutions line " + std::to_string(lineno) + ": " + why);
    };
    auto finish = [&] {
        if (!chart) fail("missing '# case:' header");
        RelationPtr rel;
        std::map<std::string, std::string> kv;
        for (const auto& [k, v] : entries) {
            if (!kv.emplace(k, v).second) fail("duplicate key " + k);
        }
        if (family) {
            auto it = kv.find("relation");
            if (it == kv.end()) fail("family without relation");
            rel = std::make_shared<const SqrtRelation>(parse_rpoly(it->second, param_vars()));
        }
        MetricSolution sol = empty_solution(*chart, rel);
        std::array<std::optional<ParamRingElem>, 15> declared;
        auto value = [&](const std::string& v) {
            try {
                return ParamRingElem::parse(v, rel);
            } catch (const std::exception& e) {
                fail("bad value '" + v + "': " + e.what());
            }
            return ParamRingElem();
        };
        for (const auto& [k, v] : kv) {
            if (k == "relation") continue;
            if (k == "label") {
                sol.label = v;
            } else if (k == "parameter") {
                sol.parameter = v;
            } else if (k == "domain") {
                auto comma = v.find(',');
                if (comma == std::string::npos) fail("domain needs 'lo, hi'");
                try {
                    sol.t_lo = RadicalScalar::parse(trim(v.substr(0, comma)));
                    sol.t_hi = RadicalScalar::parse(trim(v.substr(comma + 1)));
                } catch (const std::exception& e) {
                    fail(std::string("bad domain: ") + e.what());
                }
            } else if (k == "S") {
                sol.claimed_scalar = v;
            } else if (k == "mu") {
                sol.mu = value(v);
            } else if (k == "MU") {
                // the transformed multiplier equals mu; checked below
            } else if (auto i = original_index(k)) {
                if (!chart->is_free(*i)) fail("parameter " + k + " is fixed to 0 in case " + chart->label());
                sol.original[*i] = value(v);
            } else if (auto j = transformed_index(k)) {
                declared[*j] = value(v);
            } else {
                fail("unknown key " + k);
            }
        }
        if (auto it = kv.find("MU"); it != kv.end() && !(value(it->second) == sol.mu))
            fail("MU disagrees with mu");
        bool any_declared = std::any_of(declared.begin(), declared.end(), [](const auto& d) { return d.has_value(); });
        if (any_declared) {
            auto tr = sol.transformed();
            for (std::size_t i = 0; i < 15; ++i)
                if (declared[i] && !(*declared[i] == tr[i]))
                    fail("transformed value " + transformed_names()[i] + " disagrees with the original coordinates");
        }
        file.solutions.push_back(std::move(sol));
        entries.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            auto colon = t.find(':');
            if (colon != std::string::npos) {
                std::string key = trim(std::string_view(t).substr(1, colon - 1));
                std::string val = trim(std::string_view(t).substr(colon + 1));
                file.header[key] = val;
                if (key == "case") {
                    try {
                        chart = MetricChart::from_case(val);
                    } catch (const std::exception& e) {
                        fail(e.what());
                    }
                }
            }
            continue;
        }
        if (t == "point" || t == "family") {
            if (in_record) fail("record not closed");
            in_record = true;
            family = t == "family";
            continue;
        }
        if (t == "end") {
            if (!in_record) fail("'end' outside a record");
            finish();
            in_record = false;
            continue;
        }
        if (!in_record) fail("assignment outside a record");
        auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected 'name = value'");
        entries.emplace_back(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
    }
    if (in_record) fail("unterminated record");
    return file;
}

std::string render_table(const std::vector<MetricSolution>& sols) {
    if (sols.empty()) return "(no solutions)\n";
    const MetricChart& chart = sols.front().chart;
    std::vector<std::string> head{"#"};
    for (std::size_t i = 0; i < 15; ++i)
        if (chart.is_free(i)) head.push_back(original_names()[i]);
    head.push_back("mu");
    head.push_back("S");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < sols.size(); ++r) {
        const auto& s = sols[r];
        std::vector<std::string> row{s.label.empty() ? "(" + std::to_string(r + 1) + ")" : s.label};
        for (std::size_t i = 0; i < 15; ++i)
            if (chart.is_free(i)) row.push_back(s.original[i].to_string());
        row.push_back(s.mu.to_string());
        std::string S;
        try {
            S = exact_scalar_curvature(s).to_string();
        } catch (const std::exception&) {
            S = s.claimed_scalar.value_or("?");
        }
        row.push_back(S);
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) {
        width[c] = head[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size(), ' ') << " | ";
        }
        out << "\n";
    };
    emit(head);
    std::size_t total = 0;
    for (auto w : width) total += w + 3;
    out << std::string(total - 3, '-') << "\n";
    for (const auto& row : rows) emit(row);
    for (const auto& s : sols)
        if (s.is_family()) {
            out << "families: " << s.relation->to_string() << " = 0";
            if (s.t_lo && s.t_hi) out << ", t in [" << s.t_lo->to_string() << ", " << s.t_hi->to_string() << "]";
            out << "\n";
            break;
        }
    return out.str();
}

}  // namespace s3e
