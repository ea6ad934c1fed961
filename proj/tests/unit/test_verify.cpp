#include "doctest.h"
#include "support.hpp"

#include "s3e/groebner/groebner.hpp"
#include "s3e/verify/verify.hpp"

#include <cmath>
#include <set>

using namespace s3e;
using namespace s3e::test;

namespace {

SolutionsFile load(const char* name) { return parse_solutions(read_text_file(data_path(name))); }

PolySystem system_for(const MetricSolution& sol) { return build_variational_system(sol.chart); }

bool label_is(const MetricSolution& sol, MetricLabel expect) {
    for (const auto& sample : certify_einstein(sol).samples)
        if (classify(sample.report) != expect) return false;
    return true;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("reference invariants are pinned") {
    const auto& refs = reference_metrics();
    CHECK(refs[0].label == MetricLabel::standard);
    CHECK(refs[0].scalar == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(refs[0].invariant_R2 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(refs[1].label == MetricLabel::nearly_kahler);
    CHECK(refs[1].scalar == doctest::Approx(2.88675134594813).epsilon(1e-12));
    CHECK(refs[1].invariant_R2 == doctest::Approx(1.66666666666667).epsilon(1e-12));
}

TEST_CASE("Z2xZ2 table: exact residuals, S and certification") {
    SolutionsFile file = load("tables/z2xz2_table.sol");
    REQUIRE(file.solutions.size() == 13);
    PolySystem sys = build_variational_system(MetricChart::z2xz2());
    std::set<std::string> rows;
    for (const auto& sol : file.solutions) {
        CAPTURE(sol.label);
        rows.insert(sol.label.substr(0, 3));
        ExactReport rep = exact_verify(sol, sys);
        CHECK(rep.ok);
        REQUIRE(rep.scalar_matches.has_value());
        CHECK(*rep.scalar_matches);
        RadicalScalar S = exact_scalar_curvature(sol).constant_value();
        CHECK((S == RadicalScalar(3) || S == RadicalScalar::parse("5/sqrt3")));
        Certificate cert = certify_einstein(sol);
        REQUIRE(cert.samples.size() == 1);
        CHECK(cert.ok);
        const auto& s = cert.samples[0];
        CHECK(s.ricci_residual < 1e-9);
        CHECK(s.scalar_residual < 1e-9);
        CHECK(s.multiplier_residual < 1e-9);
        CHECK(s.volume_residual < 1e-12);
        const bool nk = sol.label[1] == '6' || sol.label[1] == '7';
        CHECK(classify(s.report) == (nk ? MetricLabel::nearly_kahler : MetricLabel::standard));
    }
    CHECK(rows.size() == 7);
}

TEST_CASE("row (1) certifies with lambda 1/2, row (6) with lambda 5/(6 sqrt3)") {
    SolutionsFile file = load("tables/z2xz2_table.sol");
    for (const auto& sol : file.solutions) {
        if (sol.label == "(1)") CHECK(certify_einstein(sol).samples[0].lambda == doctest::Approx(0.5));
        if (sol.label == "(6)+")
            CHECK(certify_einstein(sol).samples[0].lambda == doctest::Approx(5 / (6 * std::sqrt(3.0))));
    }
}

TEST_CASE("even sign flips of (x, y, z) map table rows to solutions") {
    SolutionsFile file = load("tables/z2xz2_table.sol");
    PolySystem sys = build_variational_system(MetricChart::z2xz2());
    const std::array<std::array<int, 3>, 3> flips = {{{-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}}};
    for (const auto& sol : file.solutions) {
        const MetricLabel base = classify(certify_einstein(sol).samples[0].report);
        for (const auto& f : flips) {
            MetricSolution g = sol;
            g.claimed_scalar.reset();
            for (int k = 0; k < 3; ++k)
                if (f[k] < 0) g.original[6 + k] = -g.original[6 + k];
            CHECK(exact_verify(g, sys).ok);
            CHECK(label_is(g, base));
        }
        // odd flip: still Einstein is not claimed, but the system is not invariant
        MetricSolution odd = sol;
        odd.original[8] = -odd.original[8];
        if (!sol.original[8].is_zero()) CHECK_FALSE(exact_verify(odd, sys).ok);
    }
}

TEST_CASE("classification is invariant under swapping the factors of diagonal metrics") {
    for (int i = 0; i < 20; ++i) {
        BasisChange p;
        p.a = uniform(0.3, 3), p.b = uniform(0.3, 3), p.c = uniform(0.3, 3);
        p.d = uniform(0.3, 3), p.e = uniform(0.3, 3), p.f = uniform(0.3, 3);
        BasisChange q = p;
        std::swap(q.a, q.d), std::swap(q.b, q.e), std::swap(q.c, q.f);
        CurvatureReport rp = curvature(p), rq = curvature(q);
        CHECK(rq.scalar == doctest::Approx(rp.scalar).epsilon(1e-12));
        CHECK(rq.invariant_R2 == doctest::Approx(rp.invariant_R2).epsilon(1e-12));
        CHECK(classify(rp) == classify(rq));
    }
}

TEST_CASE("mu = -1 families") {
    SolutionsFile file = load("tables/z2_mu-1_families.sol");
    REQUIRE(file.solutions.size() == 5);
    PolySystem sys = system_for(file.solutions[0]);
    CHECK(sys.size() == 13);
    int families = 0;
    for (const auto& sol : file.solutions) {
        CAPTURE(sol.label);
        families += sol.is_family();
        ExactReport rep = exact_verify(sol, sys);
        CHECK(rep.ok);
        CHECK(exact_scalar_curvature(sol) == ParamRingElem::constant(sol.relation, 3));
        Certificate cert = certify_einstein(sol, 5);
        CHECK(cert.ok);
        if (sol.is_family()) {
            CHECK(sol.relation->to_string() == SqrtRelation::unit_circle(1)->to_string());
            CHECK(cert.samples.size() >= 7);  // endpoints plus 5 interior values
        }
        CHECK(label_is(sol, MetricLabel::standard));
    }
    CHECK(families == 4);
}

TEST_CASE("mu = -5/(3 sqrt3) families") {
    SolutionsFile file = load("tables/z2_mu0_families.sol");
    REQUIRE(file.solutions.size() == 2);
    PolySystem sys = system_for(file.solutions[0]);
    for (const auto& sol : file.solutions) {
        CAPTURE(sol.label);
        REQUIRE(sol.is_family());
        CHECK(sol.relation->to_string() == SqrtRelation::unit_circle(3)->to_string());
        CHECK(*sol.t_hi == RadicalScalar::parse("1/sqrt3"));
        ExactReport rep = exact_verify(sol, sys);
        CHECK(rep.ok);
        CHECK(exact_scalar_curvature(sol) == ParamRingElem::constant(sol.relation, RadicalScalar::parse("5/sqrt3")));
        CHECK(certify_einstein(sol, 5).ok);
        CHECK(label_is(sol, MetricLabel::nearly_kahler));
    }
}

TEST_CASE("family samples") {
    SolutionsFile file = load("tables/z2_mu-1_families.sol");
    const MetricSolution& point = file.solutions[0];
    CHECK(family_samples(point, 5) == std::vector<std::pair<double, double>>{{0.0, 0.0}});
    const MetricSolution& fam = file.solutions[1];
    auto samples = family_samples(fam, 5);
    // endpoints have s = 0, interior points come with both signs
    CHECK(samples.size() == 2 + 2 * 5);
    for (auto [t, s] : samples) CHECK(std::abs(s * s + t * t - 1) < 1e-12);
    CHECK(family_samples(fam, 0).size() == 2);
}

TEST_CASE("negative controls") {
    PolySystem z2xz2 = build_variational_system(MetricChart::z2xz2());
    int failures = 0;
    for (const auto& sol : load("tables/z2xz2_table_bad_sign.sol").solutions) failures += !exact_verify(sol, z2xz2).ok;
    CHECK(failures == 1);

    int wrong_s = 0;
    for (const auto& sol : load("tables/z2xz2_table_bad_S.sol").solutions) {
        ExactReport rep = exact_verify(sol, z2xz2);
        wrong_s += rep.scalar_matches.has_value() && !*rep.scalar_matches;
    }
    CHECK(wrong_s == 1);

    SolutionsFile bad_family = load("tables/z2_mu-1_families_bad_sign.sol");
    PolySystem z2 = system_for(bad_family.solutions[0]);
    int family_failures = 0;
    for (const auto& sol : bad_family.solutions) {
        ExactReport rep = exact_verify(sol, z2);
        if (!rep.ok) {
            ++family_failures;
            CHECK_FALSE(rep.failing.empty());
        }
    }
    CHECK(family_failures == 1);
}

TEST_CASE("certification reports the offending residual") {
    SolutionsFile file = load("tables/z2xz2_table.sol");
    MetricSolution sol = file.solutions[0];
    sol.mu = ParamRingElem::constant(nullptr, RadicalScalar(Rational(-9, 10)));
    Certificate cert = certify_einstein(sol);
    CHECK_FALSE(cert.ok);
    CHECK(cert.samples[0].multiplier_residual > 1e-3);
    CHECK_FALSE(cert.samples[0].failure.empty());

    MetricSolution scaled = file.solutions[0];
    scaled.original[0] = ParamRingElem::constant(nullptr, RadicalScalar(2));
    CHECK_FALSE(certify_einstein(scaled).ok);  // volume and Ricci both off
}

TEST_CASE("solutions file round trip") {
    for (const char* name : {"tables/z2xz2_table.sol", "tables/z2_mu-1_families.sol", "tables/z2_mu0_families.sol"}) {
        CAPTURE(name);
        SolutionsFile file = load(name);
        std::string text = format_solutions(file);
        SolutionsFile back = parse_solutions(text);
        CHECK(format_solutions(back) == text);
        REQUIRE(back.solutions.size() == file.solutions.size());
        for (std::size_t i = 0; i < back.solutions.size(); ++i) {
            CHECK(back.solutions[i].original == file.solutions[i].original);
            CHECK(back.solutions[i].mu == file.solutions[i].mu);
        }
    }
    CHECK_THROWS_AS(parse_solutions("# case: z2xz2\npoint\n  a = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_solutions("# case: z2xz2\npoint\n  q = 1\nend\n"), ParseError);
}

TEST_CASE("solver output converts and verifies") {
    PolySystem sys = build_trace2_original_system();
    SolveOptions opt;
    opt.positive = {"a", "b", "c", "d", "e", "f"};
    auto bs = back_substitute(buchberger(sys, {.strategy = SelectionStrategy::sugar}), opt);
    REQUIRE(bs.points.size() == 1);
    MetricSolution sol = from_point(bs.points[0], MetricChart::trace2());
    CHECK(exact_verify(sol, sys).ok);
    CHECK(exact_verify(sol, build_variational_system(MetricChart::trace2())).ok);
    CHECK(exact_scalar_curvature(sol).constant_value() == RadicalScalar(3));
    CHECK(certify_einstein(sol).ok);
    CHECK(label_is(sol, MetricLabel::standard));

    PolySystem r = restricted_z2_system();
    GroebnerBasis gb = buchberger(r);
    SolveOptions fo;
    fo.family_vars = finiteness_test(gb).missing_vars;
    auto fam = back_substitute(gb, fo);
    REQUIRE(fam.families.size() == 2);
    for (const auto& f : fam.families) {
        // put the fixed diagonals and multiplier back
        SolutionFamily full = f;
        std::vector<std::string> names = f.vars->names();
        for (const char* n : {"A", "B", "C", "D", "E", "F"}) {
            names.emplace_back(n);
            full.values.push_back(ParamRingElem::constant(f.relation, 1));
        }
        names.emplace_back("MU");
        full.values.push_back(ParamRingElem::constant(f.relation, -1));
        full.vars = make_vars(names);
        MetricSolution ms = from_family(full, MetricChart::z2_mu_fixed(RadicalScalar(-1)));
        CHECK(ms.is_family());
        CHECK(ms.diagonal()[0] == RadicalScalar(1));
        CHECK(exact_verify(ms, build_variational_system(ms.chart)).ok);
        CHECK(certify_einstein(ms, 5).ok);
    }
}

TEST_CASE("table rendering") {
    SolutionsFile file = load("tables/z2xz2_table.sol");
    std::string table = render_table(file.solutions);
    CHECK(table.find("mu") != std::string::npos);
    CHECK(table.find("(6)+") != std::string::npos);
    CHECK(render_table(file.solutions) == table);
}

}  // TEST_SUITE
