#include "cli.hpp"

#include "s3e/groebner/groebner.hpp"
#include "s3e/solver/solver.hpp"
#include "s3e/varsys/chart.hpp"
#include "s3e/verify/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifndef S3E_DATA_DIR
#define S3E_DATA_DIR "data"
#endif

namespace s3e::cli {

namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

PolySystem derive_system(const MetricChart& chart) {
    // the trace-two system is stated in the original coordinates
    PolySystem sys = chart.kind == ChartCase::trace2 ? build_trace2_original_system() : build_variational_system(chart);
    sys.label = chart.label();
    return sys;
}

std::optional<fs::path> fixture_for(const MetricChart& chart) {
    std::string name;
    switch (chart.kind) {
    case ChartCase::trace2:
        name = "trace2.sys";
        break;
    case ChartCase::z2xz2:
        name = "z2xz2.sys";
        break;
    case ChartCase::z2:
    case ChartCase::z2_mu_fixed:
        name = "z2.sys";
        break;
    case ChartCase::general:
        return std::nullopt;
    }
    fs::path p = fs::path(data_dir()) / "fixtures" / name;
    if (!fs::exists(p)) return std::nullopt;
    return p;
}

void emit(const std::string& out, const std::string& text, std::ostream& os) {
    if (out.empty() || out == "-")
        os << text;
    else
        write_text_file(out, text);
}

PolySystem reorder(const PolySystem& sys, const std::string& var_order, MonomialOrder order) {
    PolySystem out = sys;
    out.order = order;
    if (!var_order.empty()) {
        std::vector<std::string> names;
        std::stringstream ss(var_order);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty()) names.push_back(item);
        std::vector<std::string> a = names;
        std::vector<std::string> b = sys.vars->names();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw ParseError("--var-order must be a permutation of the system variables");
        out.vars = make_vars(names);
        out.polys.clear();
        for (const auto& p : sys.polys) out.polys.push_back(p.rebase(out.vars).with_order(order));
        return out;
    }
    return sys.with_order(order);
}

MetricChart chart_of(const PolySystem& sys, const std::string& case_text) {
    if (!case_text.empty()) return MetricChart::from_case(case_text);
    if (sys.label.empty()) throw ParseError("system file has no '# case:' header; pass --case");
    return MetricChart::from_case(sys.label);
}

std::string sci(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(1) << x;
    return s.str();
}

struct CheckedSolution {
    MetricSolution sol;
    ExactReport exact;
    Certificate cert;
    MetricLabel label = MetricLabel::unknown;
};

CheckedSolution check(MetricSolution sol, const PolySystem& system, int samples) {
    CheckedSolution c{std::move(sol), {}, {}, MetricLabel::unknown};
    c.exact = exact_verify(c.sol, system);
    c.cert = certify_einstein(c.sol, samples);
    if (c.cert.ok && !c.cert.samples.empty()) c.label = classify(c.cert.samples.front().report);
    return c;
}

void report_line(const CheckedSolution& c, std::ostream& os) {
    double ric = 0;
    for (const auto& s : c.cert.samples) ric = std::max(ric, s.ricci_residual);
    os << c.sol.label << ": exact " << (c.exact.ok ? "ok" : "FAILED") << ", S = " << c.exact.scalar << ", "
       << c.cert.samples.size() << " sample" << (c.cert.samples.size() == 1 ? "" : "s")
       << ", max|Ric - lambda Id| = " << sci(ric) << ", " << (c.cert.ok ? "certified" : "NOT certified") << ", "
       << to_string(c.label) << "\n";
    if (!c.exact.ok) os << "  " << c.exact.message << "\n";
    for (const auto& s : c.cert.samples)
        if (!s.ok) {
            os << "  t = " << s.t << ", s = " << s.s << ": " << s.failure << "\n";
            break;
        }
}

}  // namespace

std::string data_dir() { return S3E_DATA_DIR; }

int cmd_derive(const std::string& case_text, const std::string& out, std::ostream& os, std::ostream& err) {
    MetricChart chart;
    try {
        chart = MetricChart::from_case(case_text);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    PolySystem sys = derive_system(chart);
    emit(out, format_system(sys), os);
    auto fixture = fixture_for(chart);
    if (!fixture) return kSuccess;
    PolySystem fx = read_system_file(*fixture);
    PolySystem head = sys;
    if (chart.kind == ChartCase::z2_mu_fixed) head.polys.pop_back();  // the appended mu polynomial
    FixtureMatch m = match_against_fixture(head, fx);
    std::ostream& log = (out.empty() || out == "-") ? err : os;
    log << "fixture " << fixture->filename().string() << ": " << (m.ok ? "match" : "MISMATCH") << " (" << m.message
        << ")\n";
    return m.ok ? kSuccess : kVerificationFailure;
}

int cmd_solve(const std::string& system_path, const std::string& case_text, const SolveFlags& flags, std::ostream& os,
              std::ostream& err) {
    const auto t0 = Clock::now();
    PolySystem input;
    MetricChart chart;
    GroebnerOptions opt;
    try {
        if (!system_path.empty()) {
            input = read_system_file(system_path);
            chart = chart_of(input, case_text);
        } else {
            if (case_text.empty()) throw ParseError("solve needs a system file or --case");
            chart = MetricChart::from_case(case_text);
            input = derive_system(chart);
        }
        opt.order = parse_order(flags.order);
        if (flags.strategy == "sugar")
            opt.strategy = SelectionStrategy::sugar;
        else if (flags.strategy == "normal")
            opt.strategy = SelectionStrategy::normal;
        else
            throw ParseError("unknown strategy '" + flags.strategy + "'");
        if (flags.format != "table" && flags.format != "records") throw ParseError("--format must be table or records");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    opt.max_pairs = flags.budget_pairs;
    opt.max_seconds = flags.budget_seconds;
    PolySystem sys;
    try {
        sys = reorder(input, flags.var_order, opt.order);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    GroebnerBasis gb;
    try {
        gb = buchberger(sys, opt);
    } catch (const BudgetExhausted& e) {
        std::size_t max_terms = 0;
        for (const auto& p : e.partial_basis()) max_terms = std::max(max_terms, p.size());
        os << "case: " << chart.label() << "\n"
           << "status: budget exhausted (" << e.what() << ")\n"
           << "pairs processed: " << e.stats().pairs_processed << "\n"
           << "zero reductions: " << e.stats().zero_reductions << "\n"
           << "partial basis: " << e.partial_basis().size() << " polynomials, largest " << max_terms << " terms\n"
           << "pending pairs: " << e.pairs_pending() << "\n";
        if (!flags.out.empty()) {
            PolySystem partial = sys;
            partial.polys = e.partial_basis();
            write_text_file(flags.out, format_system(partial, {"status: budget exhausted",
                                                               "pairs: " + std::to_string(e.stats().pairs_processed),
                                                               "pending: " + std::to_string(e.pairs_pending())}));
        }
        err << "elapsed " << since(t0) << " s\n";
        return kBudgetExhausted;
    }
    DimensionVerdict verdict = finiteness_test(gb);
    os << "case: " << chart.label() << "\n"
       << "basis: " << gb.polys.size() << " polynomials (" << to_string(gb.order) << "), " << gb.stats.pairs_processed
       << " pairs\n"
       << "dimension: "
       << (verdict.inconsistent ? "empty variety"
                                : verdict.zero_dimensional ? "zero-dimensional" : "positive-dimensional");
    if (!verdict.missing_vars.empty()) {
        os << " (no pure power of";
        for (const auto& v : verdict.missing_vars) os << " " << v;
        os << ")";
    }
    os << "\n";
    err << "buchberger " << gb.stats.seconds << " s\n";
    if (gb.order != MonomialOrder::lex) {
        if (!flags.out.empty()) write_text_file(flags.out, format_basis(gb));
        return kSuccess;
    }

    SolveOptions so;
    for (std::size_t i = 0; i < 6; ++i) {
        so.positive.push_back(original_names()[i]);
        so.positive.push_back(transformed_names()[i]);
    }
    so.family_vars = verdict.missing_vars;
    if (chart.mu0) {
        so.fixed["MU"] = *chart.mu0;
        so.fixed["mu"] = *chart.mu0;
    }
    BackSubstitution bs;
    try {
        bs = back_substitute(gb, so);
    } catch (const SolverError& e) {
        os << "back substitution failed: " << e.what() << "\n";
        return kVerificationFailure;
    }

    std::vector<CheckedSolution> checked;
    int counter = 0;
    for (const auto& p : bs.points) {
        MetricSolution m = from_point(p, chart);
        m.label = "(" + std::to_string(++counter) + ")";
        checked.push_back(check(std::move(m), input, flags.samples));
    }
    for (const auto& f : bs.families) {
        MetricSolution m = from_family(f, chart);
        m.label = "(" + std::to_string(++counter) + ")";
        checked.push_back(check(std::move(m), input, flags.samples));
    }
    bool ok = true;
    SolutionsFile file;
    file.header["case"] = chart.label();
    file.header["system"] = system_hash(input);
    file.header["basis"] = fnv1a_hex(format_basis(gb));
    std::vector<MetricSolution> sols;
    for (auto& c : checked) {
        ok = ok && c.exact.ok && c.cert.ok;
        c.sol.claimed_scalar = c.exact.scalar;
        sols.push_back(c.sol);
    }
    file.solutions = sols;
    const std::string records = format_solutions(file);
    if (!flags.out.empty()) write_text_file(flags.out, records);

    os << "real solutions: " << bs.points.size() << " point" << (bs.points.size() == 1 ? "" : "s") << ", "
       << bs.families.size() << " famil" << (bs.families.size() == 1 ? "y" : "ies") << "; discarded "
       << bs.discarded_sign << " by positivity, " << bs.discarded_filter << " by the mu filter\n";
    for (const auto& u : bs.unresolved) os << "unresolved branch at " << u.var << ": " << u.reason << "\n";
    if (flags.format == "records")
        os << records;
    else
        os << render_table(sols);
    for (const auto& c : checked) report_line(c, os);
    err << "elapsed " << since(t0) << " s\n";
    return ok ? kSuccess : kVerificationFailure;
}

int cmd_verify(const std::string& solutions_path, const std::string& system_path, int samples,
               const std::string& format, std::ostream& os, std::ostream& err) {
    SolutionsFile file;
    PolySystem system;
    try {
        file = parse_solutions(read_text_file(solutions_path));
        if (file.solutions.empty()) throw ParseError("no solutions in " + solutions_path);
        const MetricChart& chart = file.solutions.front().chart;
        system = system_path.empty() ? derive_system(chart) : read_system_file(system_path);
        if (format != "table" && format != "records") throw ParseError("--format must be table or records");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    os << "case: " << file.solutions.front().chart.label() << "\n"
       << "system: " << system.polys.size() << " polynomials, hash " << system_hash(system) << "\n";
    bool ok = true;
    std::vector<MetricSolution> sols;
    for (const auto& s : file.solutions) {
        CheckedSolution c;
        try {
            c = check(s, system, samples);
        } catch (const std::exception& e) {
            os << s.label << ": cannot verify: " << e.what() << "\n";
            ok = false;
            continue;
        }
        report_line(c, os);
        ok = ok && c.exact.ok && c.cert.ok;
        sols.push_back(c.sol);
    }
    if (format == "table")
        os << render_table(sols);
    else
        os << format_solutions(SolutionsFile{file.header, sols});
    os << (ok ? "verification passed\n" : "verification FAILED\n");
    return ok ? kSuccess : kVerificationFailure;
}

int run(int argc, char** argv, std::ostream& os, std::ostream& err) {
    CLI::App app{"Left-invariant Einstein metrics on S3 x S3: derive, solve and verify polynomial systems"};
    app.require_subcommand(1);

    std::string case_text;
    std::string out;
    std::string format = "table";
    SolveFlags flags;
    std::string system_path;
    std::string solutions_path;

    auto* derive = app.add_subcommand("derive", "write the variational system of a case");
    derive->add_option("--case", case_text, "trace2, z2xz2, z2, z2-mu=<scalar>, general")->required();
    derive->add_option("--out", out, "output file (default stdout)");

    auto* solve = app.add_subcommand("solve", "Groebner basis, back substitution and certification");
    solve->add_option("system", system_path, "system file (omit to derive --case)");
    solve->add_option("--case", case_text, "case, if the system file has no '# case:' header");
    solve->add_option("--order", flags.order, "lex or grevlex")->capture_default_str();
    solve->add_option("--var-order", flags.var_order, "comma separated variable order");
    solve->add_option("--strategy", flags.strategy, "normal or sugar pair selection")->capture_default_str();
    solve->add_option("--budget-pairs", flags.budget_pairs, "S-pair budget")->capture_default_str();
    solve->add_option("--budget-seconds", flags.budget_seconds, "wall clock budget, 0 for none")->capture_default_str();
    solve->add_option("--samples", flags.samples, "interior samples per family")->capture_default_str();
    solve->add_option("--out", flags.out, "solutions (lex) or basis (grevlex) file");
    solve->add_option("--format", flags.format, "table or records")->capture_default_str();

    int samples = 5;
    auto* verify = app.add_subcommand("verify", "re-check a solutions file");
    verify->add_option("solutions", solutions_path, "solutions file")->required();
    verify->add_option("system", system_path, "system file (default: derived from the case header)");
    verify->add_option("--samples", samples, "interior samples per family")->capture_default_str();
    verify->add_option("--format", format, "table or records")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, os, err);
        return code == 0 ? kSuccess : kInputError;
    }
    try {
        if (*derive) return cmd_derive(case_text, out, os, err);
        if (*solve) return cmd_solve(system_path, case_text, flags, os, err);
        return cmd_verify(solutions_path, system_path, samples, format, os, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace s3e::cli
