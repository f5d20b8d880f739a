#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radlab/errors.hpp"
#include "radlab/io.hpp"
#include "radlab/model.hpp"

using namespace radlab;

namespace {

ProblemSpec pinned_entire() {
    return ProblemSpec::power(3, 0, 0, 0.5, 1.0, Domain::entire());
}

} // namespace

TEST_CASE("pinned whole-space spec validates and is rate-eligible") {
    const auto rep = validate_problem(pinned_entire());
    CHECK(rep.ok);
    CHECK(rep.entire_existence_ready);
    CHECK(rep.asymptotics_eligible); // p < 1 and ps = 0.5 < 1
    // s = 1 sits on the hypothesis boundary and is flagged, not rejected
    REQUIRE(!rep.warnings.empty());
    CHECK(rep.warnings.front().find("s = 1") != std::string::npos);
}

TEST_CASE("dimension below 2 is a violation") {
    auto spec = pinned_entire();
    spec.N = 1;
    const auto rep = validate_problem(spec);
    CHECK(!rep.ok);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().code == "dimension");
}

TEST_CASE("non-monotone tabulated nonlinearity is a violation") {
    auto spec = ProblemSpec::power(3, 0, 0, 1.0, 1.0, Domain::ball(1));
    spec.s.reset();
    spec.h = NonlinearityDesc::table({{0.0, 0.0}, {1.0, 2.0}, {2.0, 1.5}}, 1.0);
    const auto rep = validate_problem(spec);
    CHECK(!rep.ok);
    CHECK(rep.violations.front().code == "tabulated-monotone");
}

TEST_CASE("validation is pure: identical inputs give byte-identical reports") {
    auto spec = ProblemSpec::power(3, 0.5, 0.25, 0.75, 1.25, Domain::ball(2));
    const auto a = validation_json(validate_problem(spec));
    const auto b = validation_json(validate_problem(spec));
    CHECK(a == b);
}

TEST_CASE("other hypothesis violations are reported with distinct codes") {
    auto spec = pinned_entire();
    spec.a = -0.5;
    CHECK(validate_problem(spec).violations.front().code == "weight-a");

    spec = pinned_entire();
    spec.s = 0.5;
    CHECK(validate_problem(spec).violations.front().code == "exponent-s");

    spec = ProblemSpec::power(3, 0, 0, 1, 1, Domain::ball(-1));
    CHECK(validate_problem(spec).violations.front().code == "radius");

    spec = pinned_entire();
    spec.p = 0;
    CHECK(validate_problem(spec).violations.front().code == "exponent-p");
}

TEST_CASE("boundary case ps = 1 exists but is not rate-eligible") {
    const auto spec = ProblemSpec::power(3, 0, 0, 1.0, 1.0, Domain::entire());
    const auto rep = validate_problem(spec);
    CHECK(rep.ok);
    CHECK(rep.entire_existence_ready);
    CHECK(!rep.asymptotics_eligible);
}

TEST_CASE("divergence bound evaluates the displayed inequality") {
    // pinned case: 0.5 * (1-2) * (1+0+0+2) / (1-0.5) = -3 <= 2*(3+0-1) = 4
    CHECK(divergence_bound_lhs(0, 0, 0.5, 1.0) == doctest::Approx(-3.0));
    CHECK(divergence_bound_holds(3, 0, 0, 0.5, 1.0));
    // s <= 2 makes the left side nonpositive, so it always holds
    CHECK(divergence_bound_holds(2, 1.0, 2.0, 0.5, 1.5));
}

TEST_CASE("tabulated evaluation interpolates and extends by the tail power law") {
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i <= 100; ++i) {
        const double t = 3.0 * i / 100.0;
        samples.emplace_back(t, t * t);
    }
    const NonlinearityFn fn(NonlinearityDesc::table(samples, 2.0));
    CHECK(fn(1.7) == doctest::Approx(1.7 * 1.7).epsilon(1e-6));
    CHECK(fn(30.0) == doctest::Approx(900.0).epsilon(1e-12)); // tail: 9*(30/3)^2
    CHECK(fn(0.0) == doctest::Approx(0.0));
}

TEST_CASE("tabulated descriptor without a tail cannot be evaluated past its range") {
    const NonlinearityFn fn(NonlinearityDesc::table({{0.0, 0.0}, {1.0, 1.0}}));
    CHECK(fn(0.5) > 0);
    CHECK_THROWS_AS((void)fn(2.0), InputError);
}

TEST_CASE("problem JSON round-trips and rejects unknown fields") {
    const std::string text =
        R"({"N": 3, "a": 0.5, "b": 0.25, "p": 0.5, "s": 1.5, "domain": {"ball": 2.0}, "u0": 1.5, "v0": 0.5})";
    const auto [spec, init] = parse_problem_json(text);
    CHECK(spec.N == 3);
    CHECK(spec.a == 0.5);
    CHECK(*spec.s == 1.5);
    CHECK(spec.domain.is_ball());
    CHECK(spec.domain.radius == 2.0);
    CHECK(init.u0 == 1.5);

    const auto [spec2, init2] = parse_problem_json(problem_json(spec, init));
    CHECK(spec2.N == spec.N);
    CHECK(init2.v0 == init.v0);

    CHECK_THROWS_AS(parse_problem_json(R"({"N":3,"p":1,"s":1,"domain":"entire","q":7})"),
                    InputError);
    CHECK_THROWS_AS(parse_problem_json(R"({"N":3,"p":1,"s":1})"), InputError);
    CHECK_THROWS_AS(parse_problem_json(R"({"N":3.5,"p":1,"s":1,"domain":"entire"})"),
                    InputError);

    const auto [entire_spec, entire_init] =
        parse_problem_json(R"({"N":4,"p":0.5,"s":1,"domain":"entire"})");
    CHECK(!entire_spec.domain.is_ball());
    CHECK(entire_init.u0 == 1.0); // defaults
}

TEST_CASE("separable evaluation matches the displayed forms") {
    auto spec = ProblemSpec::power(3, 1.0, 0.5, 2.0, 1.5, Domain::ball(1));
    const ProblemFns fns(spec);
    CHECK(fns.g(2.0, 3.0) == doctest::Approx(2.0 * 9.0));  // r^1 * v^2
    CHECK(fns.f(4.0, 9.0) == doctest::Approx(2.0 * 27.0)); // r^0.5 * w^1.5

    spec.g_scale = 3.0;
    const ProblemFns scaled(spec);
    CHECK(scaled.g(2.0, 3.0) == doctest::Approx(6.0 * 9.0));
}
