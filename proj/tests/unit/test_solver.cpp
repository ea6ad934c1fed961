#include "doctest.h"
#include "support.hpp"

#include "s3e/groebner/groebner.hpp"
#include "s3e/solver/roots.hpp"
#include "s3e/solver/solver.hpp"

#include <cmath>

using namespace s3e;
using namespace s3e::test;

namespace {

QUPoly upoly(std::vector<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return QUPoly(std::move(c));
}

int sign_at(const QUPoly& p, const Rational& x) { return sgn(p.evaluate(x)); }

PolySystem make_system(std::vector<std::string> names, std::vector<const char*> polys) {
    PolySystem sys;
    sys.vars = make_vars(std::move(names));
    for (const char* p : polys) sys.polys.push_back(parse_poly(p, sys.vars));
    return sys;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("real root isolation") {
    auto roots = isolate_real_roots(upoly({-2, 0, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].to_double() == doctest::Approx(-std::sqrt(2.0)));
    CHECK(roots[1].to_double() == doctest::Approx(std::sqrt(2.0)));
    CHECK(roots[0].hi <= roots[1].lo);

    auto double_root = isolate_real_roots(upoly({1, -2, 1}));
    REQUIRE(double_root.size() == 1);
    CHECK(double_root[0].multiplicity == 2);
    CHECK(double_root[0].lo <= Rational(1));
    CHECK(double_root[0].hi >= Rational(1));

    CHECK(isolate_real_roots(upoly({1, 0, 1})).empty());
    CHECK_THROWS_AS(isolate_real_roots(QUPoly()), std::domain_error);

    // (x - 1)(x - 1001/1000)(x + 3): close roots stay separated
    QUPoly close = upoly({-1, 1}) * QUPoly({Rational(-1001, 1000), Rational(1)}) * upoly({3, 1});
    auto r = isolate_real_roots(close);
    REQUIRE(r.size() == 3);
    CHECK(r[1].hi <= r[2].lo);
}

TEST_CASE("sturm counts") {
    QUPoly p = upoly({-6, 11, -6, 1});  // roots 1, 2, 3
    CHECK(sturm_count(p, Rational(0), Rational(10)) == 3);
    CHECK(sturm_count(p, Rational(1), Rational(2)) == 1);  // (1, 2]
    CHECK(sturm_count(p, Rational(3, 2), Rational(5, 2)) == 1);
}

TEST_CASE("interval refinement is monotone") {
    for (auto p : {upoly({-2, 0, 1}), upoly({-3, 0, 0, 0, 4}), upoly({-1, -1, 0, 1})}) {
        for (IsolatedRoot root : isolate_real_roots(p)) {
            for (unsigned bits = 4; bits <= 96; bits += 4) {
                Rational lo = root.lo, hi = root.hi;
                root.refine(bits);
                CHECK(root.lo >= lo);
                CHECK(root.hi <= hi);
                if (!root.exact()) CHECK(sign_at(root.poly, root.lo) * sign_at(root.poly, root.hi) < 0);
                CHECK(root.hi - root.lo <= Rational(1) / Rational(Integer(1) << bits));
            }
        }
    }
}

TEST_CASE("radical recognition") {
    auto r1 = isolate_real_roots(upoly({-1, 0, 2}));
    auto v1 = recognize_radical(r1[1]);
    REQUIRE(v1.has_value());
    CHECK(*v1 == RadicalScalar::parse("1/sqrt2"));

    auto r2 = isolate_real_roots(upoly({-3, 0, 0, 0, 4}));
    auto v2 = recognize_radical(r2[1]);
    REQUIRE(v2.has_value());
    CHECK(*v2 == RadicalScalar::parse("3^(1/4)/sqrt2"));
    CHECK(r2[1].to_double() == doctest::Approx(0.9306048591));

    for (const auto& r : isolate_real_roots(upoly({-5, 0, 1}))) CHECK_FALSE(recognize_radical(r).has_value());

    // 27 mu^2 - 25: the irrational multiplier of the nearly Kaehler row
    auto mu = isolate_real_roots(upoly({-25, 0, 27}));
    CHECK(*recognize_radical(mu[0]) == RadicalScalar::parse("-5/(3*sqrt3)"));
}

TEST_CASE("roots in the field of a polynomial with radical coefficients") {
    RadicalScalar a = RadicalScalar::parse("sqrt2/3^(1/4)"), b = RadicalScalar(-3);
    RUPoly p = RUPoly({-a, RadicalScalar(1)}) * RUPoly({-b, RadicalScalar(1)});
    FieldRoots fr = real_roots_in_field(p);
    CHECK(fr.exact == std::vector<RadicalScalar>{b, a});
    CHECK(fr.unrecognized.empty());
    FieldRoots none = real_roots_in_field(RUPoly({RadicalScalar(-5), RadicalScalar(0), RadicalScalar(1)}));
    CHECK(none.exact.empty());
    CHECK(none.unrecognized.size() == 2);
}

TEST_CASE("trace-two back substitution") {
    PolySystem sys = build_trace2_original_system();
    GroebnerBasis gb = buchberger(sys, {.strategy = SelectionStrategy::sugar});
    SolveOptions opt;
    opt.positive = {"a", "b", "c", "d", "e", "f"};
    BackSubstitution bs = back_substitute(gb, opt);
    REQUIRE(bs.points.size() == 1);
    CHECK(bs.families.empty());
    CHECK(bs.unresolved.empty());
    CHECK(bs.discarded_sign > 0);
    const SolutionPoint& p = bs.points[0];
    for (const char* v : {"a", "b", "c", "d", "e", "f"}) CHECK(p.at(v) == RadicalScalar(1));
    CHECK(p.at("mu") == RadicalScalar(-1));
    for (const auto& r : point_residuals(p, sys)) CHECK(r.is_zero());

    SolveOptions wrong = opt;
    wrong.fixed["mu"] = RadicalScalar(1);
    BackSubstitution none = back_substitute(gb, wrong);
    CHECK(none.points.empty());
    CHECK(none.discarded_filter > 0);
}

TEST_CASE("synthetic family") {
    PolySystem sys = make_system({"x", "y", "z"}, {"x^2 + y^2 - 1", "z - 1"});
    GroebnerBasis gb = buchberger(sys);
    SolveOptions opt;
    opt.family_vars = finiteness_test(gb).missing_vars;
    BackSubstitution bs = back_substitute(gb, opt);
    REQUIRE(bs.families.size() == 1);
    const SolutionFamily& f = bs.families[0];
    CHECK(f.parameter_var == "y");
    CHECK(*f.relation == *SqrtRelation::unit_circle(1));
    CHECK(f.at("z") == ParamRingElem::constant(f.relation, 1));
    CHECK(f.at("y") == ParamRingElem::t(f.relation));
    CHECK((f.at("x") == ParamRingElem::s(f.relation) || f.at("x") == -ParamRingElem::s(f.relation)));
    REQUIRE(f.domain_lo.has_value());
    CHECK(*f.domain_lo == RadicalScalar(-1));
    CHECK(*f.domain_hi == RadicalScalar(1));
    CHECK(verify_family(f, sys).ok);

    SolveOptions strict;  // no promotion allowed
    CHECK_THROWS_AS(back_substitute(gb, strict), SolverError);
}

TEST_CASE("families of the restricted z2 system") {
    PolySystem sys = restricted_z2_system();
    GroebnerBasis gb = buchberger(sys);
    SolveOptions opt;
    opt.family_vars = finiteness_test(gb).missing_vars;
    BackSubstitution bs = back_substitute(gb, opt);
    REQUIRE(bs.points.size() == 1);
    for (const auto& v : bs.points[0].values) CHECK(v.is_zero());
    REQUIRE(bs.families.size() == 2);
    for (const auto& f : bs.families) {
        CHECK(f.relation->to_string() == SqrtRelation::unit_circle(1)->to_string());
        FamilyReport rep = verify_family(f, sys);
        CHECK(rep.ok);
        CHECK(rep.residuals.size() == sys.size());
        // x = -1 family has z = -t, the x = 1 family has z = t
        RadicalScalar x = f.at("X").constant_value();
        CHECK((x == RadicalScalar(1) || x == RadicalScalar(-1)));
        CHECK(f.at("Z") == f.at("Y") * x);
    }
}

TEST_CASE("verify_family rejects a flipped sign") {
    PolySystem sys = restricted_z2_system();
    GroebnerBasis gb = buchberger(sys);
    SolveOptions opt;
    opt.family_vars = {"Y"};
    SolutionFamily f = back_substitute(gb, opt).families.at(0);
    f.values[f.vars->index("Z")] = -f.values[f.vars->index("Z")];
    FamilyReport rep = verify_family(f, sys);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.failing.empty());
}

TEST_CASE("roots outside the field are reported, not followed") {
    PolySystem sys = make_system({"x", "y"}, {"x - y", "y^2 - 5"});
    BackSubstitution bs = back_substitute(buchberger(sys), {});
    CHECK(bs.points.empty());
    CHECK(bs.unresolved.size() == 2);
    CHECK(bs.unresolved[0].var == "y");
}

TEST_CASE("points are sorted deterministically") {
    PolySystem sys = make_system({"x", "y"}, {"x^2 - y", "y^2 - 1/4*y - 1/8"});
    // y^2 - y/4 - 1/8 = (y - 1/2)(y + 1/4); only y = 1/2 gives real x
    BackSubstitution bs = back_substitute(buchberger(sys), {});
    REQUIRE(bs.points.size() == 2);
    CHECK(bs.points[0].at("x").to_double() < bs.points[1].at("x").to_double());
    CHECK(bs.points[0].at("x") == -RadicalScalar::parse("1/sqrt2"));
}

TEST_CASE("rebase keeps values by name") {
    PolySystem sys = build_trace2_original_system();
    SolveOptions opt;
    opt.positive = {"a", "b", "c", "d", "e", "f"};
    SolutionPoint p = back_substitute(buchberger(sys, {.strategy = SelectionStrategy::sugar}), opt).points.at(0);
    auto other = make_vars({"mu", "f", "e", "d", "c", "b", "a"});
    SolutionPoint q = rebase(p, other);
    CHECK(q.values[0] == RadicalScalar(-1));
    CHECK_THROWS(rebase(p, make_vars({"a", "zz"})));
}

}  // TEST_SUITE
