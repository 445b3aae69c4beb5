#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "cmlecon/errors.hpp"
#include "cmlecon/exchange.hpp"
#include "cmlecon/rng.hpp"
#include "cmlecon/stats.hpp"
#include "support.hpp"

using namespace cmlecon;
using exchange::ExchangeRule;
using exchange::Variant;

TEST_CASE("dy_exchange pools and splits") {
    const auto [a, b] = exchange::dy_exchange(2.0, 4.0, 0.5);
    CHECK(a == 3.0);
    CHECK(b == 3.0);
    const auto [c, d] = exchange::dy_exchange(4.0, 0.0, 0.25);
    CHECK(c == 1.0);
    CHECK(d == 3.0);

    CHECK_THROWS_AS(exchange::dy_exchange(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(exchange::dy_exchange(1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(exchange::dy_exchange(-1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("dy_exchange conserves the pot over random draws") {
    rng::Engine gen(123);
    for (int k = 0; k < 1000; ++k) {
        const double ui = gen.uniform(0.0, 50.0);
        const double uj = gen.uniform(0.0, 50.0);
        const double eps = gen.uniform01();
        const auto [a, b] = exchange::dy_exchange(ui, uj, eps);
        CHECK(a >= 0.0);
        CHECK(b >= 0.0);
        CHECK(a + b == doctest::Approx(ui + uj).epsilon(1e-12));
    }
}

TEST_CASE("angle_exchange moves eps*omega*ui") {
    const auto [a, b] = exchange::angle_exchange(4.0, 1.0, 0.5, 0.75);
    CHECK(a == 2.5);
    CHECK(b == 2.5);

    // eps -> 0 approaches the identity
    const auto [c, d] = exchange::angle_exchange(4.0, 1.0, 1e-12, 0.75);
    CHECK(c == doctest::Approx(4.0).epsilon(1e-11));
    CHECK(d == doctest::Approx(1.0).epsilon(1e-11));

    CHECK_THROWS_AS(exchange::angle_exchange(1.0, 1.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(exchange::angle_exchange(1.0, 1.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(exchange::angle_exchange(1.0, 1.0, -0.1, 0.5), DomainError);
}

TEST_CASE("angle_exchange keeps the giver non-negative") {
    rng::Engine gen(9);
    for (int k = 0; k < 1000; ++k) {
        const double ui = gen.uniform(0.0, 10.0);
        const double uj = gen.uniform(0.0, 10.0);
        const auto [a, b] = exchange::angle_exchange(ui, uj, gen.uniform01(), gen.uniform01());
        CHECK(a >= 0.0);
        CHECK(a + b == doctest::Approx(ui + uj).epsilon(1e-12));
    }
}

TEST_CASE("rule validation") {
    ExchangeRule dy;
    CHECK_NOTHROW(dy.validate(10));
    dy.omega = 0.5;
    CHECK_THROWS_AS(dy.validate(10), ConfigError);

    ExchangeRule angle{.variant = Variant::ANGLE, .omega = {}, .omega_per_agent = {}};
    CHECK_THROWS_AS(angle.validate(10), ConfigError); // omega required
    angle.omega = 1.5;
    CHECK_THROWS_AS(angle.validate(10), ConfigError);
    angle.omega = 0.75;
    CHECK_NOTHROW(angle.validate(10));

    ExchangeRule het{.variant = Variant::ANGLE_HETEROGENEOUS, .omega = {}, .omega_per_agent = {}};
    CHECK_NOTHROW(het.validate(10)); // defaults drawn from the run seed
    het.omega_per_agent = std::vector<double>(9, 0.5);
    CHECK_THROWS_AS(het.validate(10), ConfigError); // wrong length
    het.omega_per_agent = std::vector<double>(10, 1.2);
    CHECK_THROWS_AS(het.validate(10), ConfigError); // out of (0,1)
    het.omega_per_agent = std::vector<double>(10, 0.5);
    CHECK_NOTHROW(het.validate(10));
}

TEST_CASE("run: zero transactions leaves the equal endowment") {
    const WealthSample sample = exchange::run(50, ExchangeRule{}, 0, 1);
    for (const double v : sample.values()) {
        CHECK(v == 1.0);
    }
    CHECK(sample.meta().model == "exchange-dy");
    CHECK(sample.meta().n_agents == 50);
}

TEST_CASE("run is deterministic in its arguments") {
    const ExchangeRule rule{.variant = Variant::ANGLE, .omega = 0.75, .omega_per_agent = {}};
    const WealthSample a = exchange::run(200, rule, 50'000, 77);
    const WealthSample b = exchange::run(200, rule, 50'000, 77);
    CHECK(a.values() == b.values());
    const WealthSample c = exchange::run(200, rule, 50'000, 78);
    CHECK(a.values() != c.values());
}

TEST_CASE("run conserves money and keeps everyone non-negative") {
    for (const Variant variant : {Variant::DY, Variant::ANGLE, Variant::ANGLE_HETEROGENEOUS}) {
        ExchangeRule rule;
        rule.variant = variant;
        if (variant == Variant::ANGLE) {
            rule.omega = 0.75;
        }
        const std::size_t n = 1000;
        const WealthSample sample = exchange::run(n, rule, 1'000'000, 5);
        double total = 0.0;
        for (const double v : sample.values()) {
            CHECK(v >= 0.0);
            total += v;
        }
        const double rel = std::fabs(total - static_cast<double>(n)) / static_cast<double>(n);
        CHECK(rel < static_cast<double>(n) * 1e-12);
        CHECK(rel < 1e-9);
        CHECK(sample.meta().params.at("conservation_rel_drift") < 1e-9);
    }
}

TEST_CASE("relabeling agents permutes the DY final state") {
    const std::size_t n = 6;
    const std::size_t transactions = 400;
    // permutation pi and its application to agent labels
    const std::array<std::size_t, 6> pi = {3, 5, 0, 1, 4, 2};

    rng::Engine gen(4242);
    std::vector<std::array<double, 3>> script;
    for (std::size_t t = 0; t < transactions; ++t) {
        const auto i = static_cast<std::size_t>(gen.below(n));
        auto j = static_cast<std::size_t>(gen.below(n - 1));
        if (j >= i) ++j;
        script.push_back({static_cast<double>(i), static_cast<double>(j), gen.uniform01()});
    }

    std::vector<double> base(n, 1.0);
    std::vector<double> relabeled(n, 1.0);
    for (const auto& [fi, fj, eps] : script) {
        const auto i = static_cast<std::size_t>(fi);
        const auto j = static_cast<std::size_t>(fj);
        std::tie(base[i], base[j]) = exchange::dy_exchange(base[i], base[j], eps);
        std::tie(relabeled[pi[i]], relabeled[pi[j]]) =
            exchange::dy_exchange(relabeled[pi[i]], relabeled[pi[j]], eps);
    }
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(relabeled[pi[i]] == base[i]);
    }
}

TEST_CASE("DY equilibrates to the exponential law with unit mean") {
    const WealthSample sample = exchange::run(5000, ExchangeRule{}, 5'000'000, 11);
    const stats::FitResult fit = stats::fit_exponential(sample, 0.0);
    CHECK(*fit.mu == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.ks_distance < 0.05);

    // oracle cross-check: the MLE recovers the same rate on direct Exp(1) draws
    const WealthSample oracle(testsupport::sample_exponential(5000, 1.0, 13));
    const stats::FitResult oracle_fit = stats::fit_exponential(oracle, 0.0);
    CHECK(std::fabs(*fit.mu - *oracle_fit.mu) < 0.05);
}

TEST_CASE("Angle exchange with omega = 0.75 is classified exponential") {
    const ExchangeRule rule{.variant = Variant::ANGLE, .omega = 0.75, .omega_per_agent = {}};
    const WealthSample sample = exchange::run(5000, rule, 5'000'000, 21);
    const stats::Classification cls = stats::classify_regime(sample);
    CHECK(cls.label == stats::Regime::BOLTZMANN_GIBBS);
}

TEST_CASE("heterogeneous omegas run deterministically") {
    const ExchangeRule rule{.variant = Variant::ANGLE_HETEROGENEOUS, .omega = {},
                            .omega_per_agent = {}};
    const WealthSample a = exchange::run(500, rule, 200'000, 8);
    const WealthSample b = exchange::run(500, rule, 200'000, 8);
    CHECK(a.values() == b.values());
    CHECK(a.meta().model == "exchange-angle-het");

    const ExchangeRule explicit_rule{
        .variant = Variant::ANGLE_HETEROGENEOUS,
        .omega = {},
        .omega_per_agent = std::vector<double>(500, 0.75),
    };
    const WealthSample c = exchange::run(500, explicit_rule, 200'000, 8);
    CHECK(c.values() != a.values());
}

TEST_CASE("two agents only ever trade with each other") {
    const WealthSample sample = exchange::run(2, ExchangeRule{}, 10'000, 17);
    CHECK(sample.size() == 2);
    CHECK(sample.values()[0] + sample.values()[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("run rejects bad configurations") {
    CHECK_THROWS_AS(exchange::run(1, ExchangeRule{}, 10, 1), ConfigError);
    const ExchangeRule angle{.variant = Variant::ANGLE, .omega = {}, .omega_per_agent = {}};
    CHECK_THROWS_AS(exchange::run(10, angle, 10, 1), ConfigError);
}
