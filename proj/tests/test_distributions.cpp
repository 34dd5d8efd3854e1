#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hplp/distributions.hpp"
#include "hplp/error.hpp"
#include "hplp/parser.hpp"

using namespace hplp;

namespace {

DensitySpec spec_of(const std::string& fact) { return parse_program(fact).density_facts.at(0).density; }

ArithExpr expr_of(const std::string& text) { return parse_query("X =:= " + text).at(0).rhs; }

ErrorKind error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("uniform draws stay in their interval") {
    auto spec = spec_of("angle(_,X) : uniform_dens(X,0,6.28).");
    RngStream rng(42, 0);
    for (int i = 0; i < 100000; ++i) {
        double x = sample(spec, {}, rng);
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 6.28);
    }
}

TEST_CASE("standard normal sample mean") {
    auto spec = spec_of("p(X) : gaussian(X, 0, 1).");
    RngStream rng(7, 3);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += sample(spec, {}, rng);
    CHECK(std::abs(sum / n) < 0.02);
}

TEST_CASE("narrow uniform intervals collapse to their bound") {
    RngStream rng(1, 0);
    for (double eps : {1e-1, 1e-4, 1e-8}) {
        double x = sample(DensityFamily::UniformDens, {2.0, 2.0 + eps}, rng);
        CHECK(x >= 2.0);
        CHECK(x - 2.0 <= eps);
    }
}

TEST_CASE("density values") {
    auto a = spec_of("angle_a(_,X,Y) : uniform_dens(Y,X,2).");
    CHECK(pdf(a, {{"X", 0.5}}, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(pdf(DensityFamily::UniformDens, {0, 1}, 2.0) == 0.0);
    CHECK(pdf(DensityFamily::UniformDens, {0, 1}, -0.1) == 0.0);
    CHECK(pdf(DensityFamily::Gaussian, {0, 1}, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    // the third argument is the variance
    CHECK(pdf(DensityFamily::Gaussian, {0, 4}, 0.0) == doctest::Approx(0.3989422804014327 / 2).epsilon(1e-15));
}

TEST_CASE("gaussian density integrates to one") {
    for (auto [mean, var] : {std::pair{0.0, 1.0}, {5.0, 2.0}, {-1.5, 0.25}}) {
        double sd = std::sqrt(var), lo = mean - 8 * sd, hi = mean + 8 * sd;
        const int n = 20000;  // composite Simpson
        double h = (hi - lo) / n, s = 0;
        for (int i = 0; i <= n; ++i) {
            double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
            s += w * pdf(DensityFamily::Gaussian, {mean, var}, lo + i * h);
        }
        CHECK(std::abs(s * h / 3 - 1.0) < 1e-6);
    }
}

TEST_CASE("arithmetic") {
    CHECK(eval_arith(expr_of("Y + Z"), {{"Y", 0.5}, {"Z", 2.0}}) == 2.5);
    CHECK(eval_arith(expr_of("X"), {{"X", 3.14}}) == 3.14);
    CHECK(eval_arith(expr_of("-(A - B) * 2 / 4"), {{"A", 1}, {"B", 3}}) == 1.0);
    CHECK(eval_compare(CompareOp::Greater, 3.5, 3.14));
    CHECK_FALSE(eval_compare(CompareOp::Less, 3.5, 3.14));
    CHECK(eval_compare(CompareOp::LessEq, 1, 1));
    CHECK(eval_compare(CompareOp::GreaterEq, 1, 1));
    CHECK(error_of([] { eval_arith(expr_of("Y + 1"), {}); }) == ErrorKind::UnboundVariable);
    CHECK(error_of([] { eval_arith(expr_of("1 / Y"), {{"Y", 0}}); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("parameter checks") {
    RngStream rng(1, 0);
    CHECK(error_of([&] { sample(DensityFamily::Gaussian, {0, 0}, rng); }) == ErrorKind::InvalidParameter);
    CHECK(error_of([&] { sample(DensityFamily::Gaussian, {0, -1}, rng); }) == ErrorKind::InvalidParameter);
    CHECK(error_of([&] { sample(DensityFamily::UniformDens, {2, 2}, rng); }) == ErrorKind::InvalidParameter);
    CHECK(error_of([&] { pdf(DensityFamily::UniformDens, {3, 2}, 2.5); }) == ErrorKind::InvalidParameter);
    auto chained = spec_of("value(_,M,X) : gaussian(X,M,2).");
    CHECK(error_of([&] { sample(chained, {}, rng); }) == ErrorKind::UnboundDensityParameter);
    CHECK(eval_parameters(chained, {{"M", 1.5}}) == std::vector<double>{1.5, 2.0});
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(99, 4), b(99, 4), c(99, 5), d(98, 4);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 1000; ++i) {
        auto x = a.next_u64();
        REQUIRE(x == b.next_u64());
        differs_c |= x != c.next_u64();
        differs_d |= x != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
    CHECK(a.position() == 1000);
    RngStream u(5, 0);
    for (int i = 0; i < 10000; ++i) {
        double x = u.uniform();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
}

TEST_CASE("known SplitMix64 output") {
    // reference values of the SplitMix64 finaliser
    CHECK(splitmix64_mix(0x9E3779B97F4A7C15ull) == 0xE220A8397B1DCDAFull);
    CHECK(splitmix64_mix(0x3C6EF372FE94F82Aull) == 0x6E789E6AA1B965F4ull);
}

TEST_CASE("a gaussian with a gaussian mean") {
    // mean ~ N(1,5), value ~ N(mean,2): the marginal of value is N(1,7)
    auto outer = spec_of("mean(M) : gaussian(M,1,5).");
    auto inner = spec_of("value(_,M,X) : gaussian(X,M,2).");
    RngStream rng(2024, 0);
    const int n = 100000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        double m = sample(outer, {}, rng);
        double x = sample(inner, {{"M", m}}, rng);
        s1 += x;
        s2 += x * x;
    }
    double mean = s1 / n, var = s2 / n - mean * mean;
    double se_mean = std::sqrt(7.0 / n), se_var = 7.0 * std::sqrt(2.0 / (n - 1));
    CHECK(std::abs(mean - 1.0) < 5 * se_mean);
    CHECK(std::abs(var - 7.0) < 5 * se_var);
}

TEST_CASE("normal tail") {
    CHECK(normal_sf(0, 0, 1) == doctest::Approx(0.5));
    CHECK(normal_sf(2, 0, 1) == doctest::Approx(0.022750131948179195).epsilon(1e-12));
    CHECK(normal_sf(5, 5, 2) == doctest::Approx(0.5));
}
