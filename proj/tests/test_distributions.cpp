#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qwalk/distributions.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/seeding.hpp"

using namespace qwalk;

TEST_CASE("poisson pmf") {
    CHECK(pmf_poisson(1.0, 0) == doctest::Approx(0.36787944117144233).epsilon(1e-14));
    CHECK(pmf_poisson(1.0, 1) == doctest::Approx(0.36787944117144233).epsilon(1e-14));
    CHECK(pmf_poisson(2.0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(pmf_poisson(2.0, 3) == doctest::Approx(std::exp(-2.0) * 8.0 / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS(pmf_poisson(1.0, -1), DomainError);
    CHECK_THROWS_AS(pmf_poisson(0.0, 1), DomainError);
    CHECK_THROWS_AS(pmf_poisson(-1.0, 1), DomainError);
}

TEST_CASE("binomial pmf") {
    CHECK(pmf_binomial(2, 0.5, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pmf_binomial(7, 0.3, 0) == doctest::Approx(std::pow(0.7, 7)).epsilon(1e-13));
    CHECK(pmf_binomial(9, 1.0 / 9.0, 9) == doctest::Approx(std::pow(1.0 / 9.0, 9)).epsilon(1e-12));
    CHECK_THROWS_AS(pmf_binomial(2, 0.5, 3), DomainError);
    CHECK_THROWS_AS(pmf_binomial(2, 0.5, -1), DomainError);
    CHECK_THROWS_AS(pmf_binomial(2, 1.0, 1), DomainError);
}

TEST_CASE("hypergeometric pmf") {
    CHECK(pmf_hypergeometric(4, 2, 2, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(pmf_hypergeometric(4, 2, 2, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(pmf_hypergeometric(6, 6, 3, 3) == doctest::Approx(1.0).epsilon(1e-14));
    // inside [0, n] but outside the support
    CHECK(pmf_hypergeometric(5, 4, 3, 1) == 0.0);
    CHECK_THROWS_AS(pmf_hypergeometric(4, 2, 2, 3), DomainError);
    CHECK_THROWS_AS(pmf_hypergeometric(4, 5, 2, 1), DomainError);
    CHECK_THROWS_AS(pmf_hypergeometric(4, 0, 2, 1), DomainError);
}

TEST_CASE("negative binomial pmf") {
    for (int k = 0; k < 10; ++k)
        CHECK(pmf_negative_binomial(1, 0.5, k) == doctest::Approx(std::pow(0.5, k + 1)).epsilon(1e-13));
    CHECK(pmf_negative_binomial(4, 0.2, 0) == doctest::Approx(std::pow(0.8, 4)).epsilon(1e-13));
    CHECK(pmf_negative_binomial(9, 0.1, 1) == doctest::Approx(9.0 * std::pow(0.9, 9) * 0.1).epsilon(1e-13));
    CHECK_THROWS_AS(pmf_negative_binomial(0, 0.5, 1), DomainError);
    CHECK_THROWS_AS(pmf_negative_binomial(1, 0.5, -1), DomainError);
}

TEST_CASE("geometric pmf") {
    CHECK(pmf_geometric(0.5, 0) == 0.5);
    CHECK(pmf_geometric(0.5, 3) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(pmf_geometric(0.3, 0) == doctest::Approx(0.3));
    CHECK_THROWS_AS(pmf_geometric(0.0, 1), DomainError);
    CHECK_THROWS_AS(pmf_geometric(0.5, -2), DomainError);
}

TEST_CASE("truncate") {
    SUBCASE("poisson lambda 1 at R = 5") {
        const TruncatedJumpPmf pmf = truncate({Poisson{1.0}, 1e-3});
        CHECK(pmf.max_jump() == 5);
        // 1 - e^-1 (1 + 1 + 1/2 + 1/6 + 1/24 + 1/120)
        const double head = std::exp(-1.0) * (1.0 + 1.0 + 0.5 + 1.0 / 6 + 1.0 / 24 + 1.0 / 120);
        CHECK(pmf.raw_tail_mass() == doctest::Approx(1.0 - head).epsilon(1e-9));
        CHECK(pmf.raw_tail_mass() == doctest::Approx(5.94e-4).epsilon(1e-3));
        CHECK(std::abs(std::accumulate(pmf.probs().begin(), pmf.probs().end(), 0.0) - 1.0) < 1e-12);
    }
    SUBCASE("poisson lambda 1 at the default tolerance keeps one more value") {
        const TruncatedJumpPmf pmf = truncate({Poisson{1.0}});
        CHECK(pmf.max_jump() == 6);
        CHECK(pmf.raw_tail_mass() <= kDefaultTailTolerance);
    }
    SUBCASE("finite support") {
        const TruncatedJumpPmf pmf = truncate({Binomial{2, 0.5}});
        CHECK(pmf.max_jump() == 2);
        CHECK(pmf.raw_tail_mass() == 0.0);
        CHECK(pmf.probs()[0] == doctest::Approx(0.25));
        CHECK(pmf.probs()[1] == doctest::Approx(0.5));
        CHECK(pmf.probs()[2] == doctest::Approx(0.25));
    }
    SUBCASE("constant") {
        const TruncatedJumpPmf pmf = truncate({Constant{1}});
        CHECK(pmf.max_jump() == 1);
        CHECK(pmf.probs() == std::vector<double>{0.0, 1.0});
    }
    SUBCASE("geometric picks the smallest adequate R") {
        const TruncatedJumpPmf pmf = truncate({Geometric{0.5}});
        // tail above R is 2^-(R+1): 2^-14 < 1e-4 < 2^-13
        CHECK(pmf.max_jump() == 13);
        CHECK(pmf.raw_tail_mass() == doctest::Approx(std::pow(0.5, 14)).epsilon(1e-12));
    }
    SUBCASE("bad tolerance") {
        CHECK_THROWS_AS(truncate({Poisson{1.0}, 0.0}), DomainError);
        CHECK_THROWS_AS(truncate({Poisson{1.0}, 1.0}), DomainError);
        CHECK_THROWS_AS(truncate({Poisson{1.0}, 5.0}), DomainError);
    }
}

TEST_CASE("truncation invariants across families") {
    const std::vector<DistributionSpec> specs{
        {Poisson{0.5}},          {Poisson{1.0}, 1e-3},      {Poisson{2.0}, 1e-6},        {Poisson{7.5}},
        {Binomial{2, 0.5}},      {Binomial{9, 1.0 / 9.0}},  {Hypergeometric{4, 2, 2}},   {Hypergeometric{10, 3, 5}},
        {NegativeBinomial{1, 0.5}}, {NegativeBinomial{9, 0.1}}, {NegativeBinomial{3, 0.7}, 1e-5},
        {Geometric{0.5}},        {Geometric{0.2}},          {Constant{0}},               {Constant{3}},
    };
    for (const auto& spec : specs) {
        CAPTURE(family_name(spec.params));
        const TruncatedJumpPmf pmf = truncate(spec);
        double head = 0.0;
        for (int k = 0; k <= pmf.max_jump(); ++k) head += raw_pmf(spec, k);
        CHECK(std::abs(head + pmf.raw_tail_mass() - 1.0) < 1e-12);
        CHECK(pmf.raw_tail_mass() <= spec.tail_tolerance);
        double sum = 0.0;
        for (double p : pmf.probs()) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        if (!support_max(spec.params) && pmf.max_jump() > 0) {
            // R is minimal: one fewer value would exceed the tolerance
            CHECK(pmf.raw_tail_mass() + raw_pmf(spec, pmf.max_jump()) > spec.tail_tolerance);
        }

        // truncating an already-finite distribution changes nothing
        const TruncatedJumpPmf again = TruncatedJumpPmf::from_probs(pmf.probs());
        CHECK(again.max_jump() == pmf.max_jump());
        for (std::size_t j = 0; j < pmf.probs().size(); ++j)
            CHECK(again.probs()[j] == doctest::Approx(pmf.probs()[j]).epsilon(1e-15));
    }
}

TEST_CASE("nominal moments of the unit-mean configurations") {
    struct Row {
        DistributionParams params;
        double variance;
    };
    const std::vector<Row> rows{
        {Binomial{2, 0.5}, 0.5},         {Binomial{9, 1.0 / 9.0}, 8.0 / 9.0}, {Hypergeometric{4, 2, 2}, 1.0 / 3.0},
        {NegativeBinomial{1, 0.5}, 2.0}, {NegativeBinomial{9, 0.1}, 10.0 / 9.0}, {Geometric{0.5}, 2.0},
        {Poisson{1.0}, 1.0},
    };
    for (const auto& row : rows) {
        const Moments m = nominal_moments(row.params);
        CHECK(m.mean == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m.variance == doctest::Approx(row.variance).epsilon(1e-14));
    }
}

TEST_CASE("moments of truncated pmfs") {
    const Moments b = moments(truncate({Binomial{2, 0.5}}));
    CHECK(b.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.variance == doctest::Approx(0.5).epsilon(1e-14));

    // Geometric(1/2) cut at R = 13: exact rational evaluation of the
    // renormalized pmf gives mean 0.99914545565525 and variance
    // 1.98803564892750. The discarded tail carries ~0.012 of the variance,
    // so "variance 2" only holds to 1.5e-2 at tolerance 1e-4.
    const Moments g = moments(truncate({Geometric{0.5}}));
    CHECK(g.mean == doctest::Approx(0.9991454556552524).epsilon(1e-13));
    CHECK(g.variance == doctest::Approx(1.9880356489274964).epsilon(1e-13));
    CHECK(std::abs(g.mean - 1.0) < 1e-2);
    CHECK(std::abs(g.variance - 2.0) < 1.5e-2);

    const Moments c = moments(truncate({Constant{1}}));
    CHECK(c.mean == 1.0);
    CHECK(c.variance == 0.0);

    // finite families: truncated moments equal the closed forms
    for (const DistributionParams& p : {DistributionParams{Binomial{9, 1.0 / 9.0}}, DistributionParams{Hypergeometric{4, 2, 2}}}) {
        const Moments t = moments(truncate({p}));
        const Moments n = nominal_moments(p);
        CHECK(t.mean == doctest::Approx(n.mean).epsilon(1e-13));
        CHECK(t.variance == doctest::Approx(n.variance).epsilon(1e-13));
    }
}

TEST_CASE("inverse-CDF sampling") {
    const TruncatedJumpPmf constant = truncate({Constant{1}});
    for (double u : {0.0, 0.3, 0.999999}) CHECK(sample(constant, u) == 1);

    const TruncatedJumpPmf b = truncate({Binomial{2, 0.5}});
    CHECK(sample(b, 0.0) == 0);
    CHECK(sample(b, 0.5) == 1);
    CHECK(sample(b, 0.99) == 2);

    CHECK_THROWS_AS(sample(b, 1.0), DomainError);
    CHECK_THROWS_AS(sample(b, -0.1), DomainError);
}

TEST_CASE("sampling intervals match the probabilities at their boundaries") {
    for (const DistributionSpec& spec :
         {DistributionSpec{Poisson{1.0}, 1e-3}, DistributionSpec{Geometric{0.5}}, DistributionSpec{Hypergeometric{4, 2, 2}}}) {
        const TruncatedJumpPmf pmf = truncate(spec);
        const auto& cdf = pmf.cdf();
        double lower = 0.0;
        for (int j = 0; j <= pmf.max_jump(); ++j) {
            const double upper = cdf[static_cast<std::size_t>(j)];
            CHECK(upper - lower == doctest::Approx(pmf.probs()[static_cast<std::size_t>(j)]).epsilon(1e-12));
            if (upper > lower) {
                CHECK(sample(pmf, lower) == j);
                CHECK(sample(pmf, std::nextafter(upper, 0.0)) == j);
            }
            lower = upper;
        }
        CHECK(cdf.back() == 1.0);
    }
}

TEST_CASE("poisson deviates pass a per-bin goodness-of-fit check") {
    const TruncatedJumpPmf pmf = truncate({Poisson{1.0}, 1e-3});
    UniformSource uniform(12345);
    const int draws = 1'000'000;
    std::vector<int> counts(static_cast<std::size_t>(pmf.max_jump() + 1), 0);
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(sample(pmf, uniform.next()))];
    double chi2 = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const double p = pmf.probs()[j];
        const double expected = draws * p;
        const double se = std::sqrt(draws * p * (1.0 - p));
        CHECK(std::abs(counts[j] - expected) < 4.0 * se);
        chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
    }
    // 5 degrees of freedom; 0.999 quantile is 20.5
    CHECK(chi2 < 20.5);
}
