#include <doctest.h>

#include "gen.hpp"

#include <priceform/errors.hpp>
#include <priceform/flow.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace priceform;

namespace {

// Kolmogorov-Smirnov statistic sqrt(n) D against Exp(rate).
double ks_exponential(std::vector<double> samples, double rate)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = -std::expm1(-rate * samples[i]);
        d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
    }
    return std::sqrt(n) * d;
}

ClippedIntensity tight(const ExpIntensity& lam, double width) { return ClippedIntensity::with_clip_width(lam, width); }

}  // namespace

TEST_CASE("rng streams are keyed and deterministic")
{
    RngStream a(7, 0), b(7, 0), c(7, 1), d(8, 0);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
        CHECK(x != d.next_u64());
    }
    RngStream u(1, 2);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = u.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sq / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("price path: constant, drift and increment variance")
{
    RngStream rng(1, 0);
    const auto flat = simulate_price({0.0, 0.0, 100.0}, 0.01, 1.0, rng);
    CHECK(flat.size() == 101);
    for (double v : flat.values)
        CHECK(v == 100.0);

    const auto drift = simulate_price({0.5, 0.0, 100.0}, 0.01, 1.0, rng);
    for (std::size_t i = 0; i < drift.size(); ++i)
        CHECK(drift.values[i] == doctest::Approx(100.0 + 0.5 * drift.times[i]).epsilon(1e-15));

    const double dt = 1e-3;
    const auto path = simulate_price({0.0, 0.06, 100.0}, dt, 10.0, rng);
    std::vector<double> inc;
    for (std::size_t i = 1; i < path.size(); ++i)
        inc.push_back((path.values[i] - path.values[i - 1]) * (path.values[i] - path.values[i - 1]) / dt);
    double m = 0.0;
    for (double v : inc)
        m += v;
    m /= static_cast<double>(inc.size());
    double var = 0.0;
    for (double v : inc)
        var += (v - m) * (v - m);
    const double se = std::sqrt(var / static_cast<double>(inc.size()) / static_cast<double>(inc.size()));
    CHECK(inc.size() >= 10000);
    CHECK(std::abs(m - 0.0036) < 3.0 * se);
    for (std::size_t i = 1; i < path.size(); ++i)
        CHECK(path.times[i] > path.times[i - 1]);

    CHECK_THROWS_AS(simulate_price({0.0, 0.06, 100.0}, 0.0, 1.0, rng), InvalidArgument);
}

TEST_CASE("meta-order schedule")
{
    auto times = [](const std::vector<TradeEvent>& ev) {
        std::vector<double> t;
        for (const auto& e : ev) {
            CHECK(e.side == Side::Ask);
            CHECK(e.source == Source::Meta);
            t.push_back(e.time);
        }
        return t;
    };
    const auto two = times(meta_events({2.0, 1.6}));
    REQUIRE(two.size() == 3);
    CHECK(two[0] == doctest::Approx(0.5));
    CHECK(two[1] == doctest::Approx(1.0));
    CHECK(two[2] == doctest::Approx(1.5));
    CHECK(meta_events({10.0, INFINITY}, 2.5).size() == 25);
    CHECK(meta_events({1.0, 0.5}).empty());
    CHECK(MetaOrderSchedule{10.0, 2.5}.executed_by(1.05) == 10);
    CHECK_THROWS_AS(meta_events({0.0, 1.0}), InvalidArgument);
}

TEST_CASE("property: meta times are exactly k / beta up to T")
{
    gen::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const double beta = g.log_uniform(0.5, 100.0), T = g.uniform(0.0, 5.0);
        const auto ev = meta_events({beta, T});
        CHECK(ev.size() == static_cast<std::size_t>(std::floor(beta * T * (1 + 1e-12))));
        for (std::size_t k = 0; k < ev.size(); ++k) {
            CHECK(ev[k].time == doctest::Approx((k + 1) / beta).epsilon(1e-14));
            CHECK(ev[k].time <= T * (1 + 1e-12));
        }
    }
}

TEST_CASE("flat intensity: each side fires at lambda0")
{
    const ExpIntensity lam(50.0, 1e-12);
    const ClippedIntensity clip(lam, 1e-8, 50.0 * 1.001);
    RngStream rng(3, 0);
    const double horizon = 1000.0 / 50.0;
    const auto rec =
        simulate_trades({0.0, 0.0, 100.0}, [](double) { return Quotes::centered(100.0, 0.1); }, clip, horizon, rng);
    const auto asks = std::count_if(rec.events.begin(), rec.events.end(), [](auto& e) { return e.side == Side::Ask; });
    const auto bids = static_cast<long>(rec.events.size()) - asks;
    const double expected = 50.0 * horizon, se = std::sqrt(expected);
    CHECK(std::abs(asks - expected) < 3 * se);
    CHECK(std::abs(bids - expected) < 3 * se);
}

TEST_CASE("symmetric quotes: half the trades are buys")
{
    const ExpIntensity lam(50.0, 5.0);
    RngStream rng(4, 0);
    const auto rec =
        simulate_trades({0.0, 0.0, 100.0}, [](double) { return Quotes::centered(100.0, 0.1); }, tight(lam, 1.0), 200.0, rng);
    const double n = static_cast<double>(rec.events.size());
    const auto asks = std::count_if(rec.events.begin(), rec.events.end(), [](auto& e) { return e.side == Side::Ask; });
    CHECK(std::abs(asks / n - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("price at the ask: rate ratio e^{2 a delta}")
{
    const ExpIntensity lam(50.0, 5.0);
    TradeFlow flow({0.0, 0.0, 100.1}, tight(lam, 1.0), RngStream(5, 0));
    const Quotes q = Quotes::centered(100.0, 0.1);
    double na = 0, nb = 0;
    while (auto e = flow.next_until(q, 300.0))
        (e->side == Side::Ask ? na : nb) += 1;
    const double ratio = na / nb;
    const double se = ratio * std::sqrt(1.0 / na + 1.0 / nb);
    CHECK(std::abs(ratio - std::exp(1.0)) < 3.0 * se);
}

TEST_CASE("inter-arrival times are exponential (KS at 1%)")
{
    const ExpIntensity lam(50.0, 5.0);
    const Quotes q = Quotes::centered(100.0, 0.1);
    for (Envelope env : {Envelope::Local, Envelope::Global}) {
        TradeFlow flow({0.0, 0.0, 100.0}, tight(lam, 0.5), RngStream(6, env == Envelope::Local), env);
        std::vector<double> ask_gaps, bid_gaps;
        double last_ask = 0.0, last_bid = 0.0;
        while (ask_gaps.size() < 10000 || bid_gaps.size() < 10000) {
            auto e = flow.next_until(q, 1e9);
            REQUIRE(e);
            if (e->side == Side::Ask) {
                ask_gaps.push_back(e->time - last_ask);
                last_ask = e->time;
            } else {
                bid_gaps.push_back(e->time - last_bid);
                last_bid = e->time;
            }
        }
        ask_gaps.resize(10000);
        bid_gaps.resize(10000);
        const double rate = lam(0.1);
        CHECK(ks_exponential(ask_gaps, rate) < 1.628);
        CHECK(ks_exponential(bid_gaps, rate) < 1.628);
    }
}

TEST_CASE("identical seeds give identical event streams")
{
    const ExpIntensity lam(50.0, 5.0);
    auto run = [&](std::uint64_t seed) {
        TradeFlow flow({0.0, 0.06, 100.0}, tight(lam, 2.0), RngStream(seed, 3));
        std::vector<TradeEvent> out;
        while (auto e = flow.next_until(Quotes::centered(100.0, 0.1), 20.0))
            out.push_back(*e);
        return out;
    };
    const auto x = run(9), y = run(9), z = run(10);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].time == y[i].time);
        CHECK(x[i].side == y[i].side);
        CHECK(x[i].efficient_price == y[i].efficient_price);
        if (i > 0)
            CHECK(x[i].time >= x[i - 1].time);
    }
    CHECK((x.size() != z.size() || x.front().time != z.front().time));
}

TEST_CASE("envelope violations are reported")
{
    const ExpIntensity lam(50.0, 5.0);
    // Ceiling at the at-the-money rate; the price sits 0.5 through the ask.
    const ClippedIntensity clip(lam, 1e-8, 50.0);
    RngStream rng(1, 0);
    CHECK_THROWS_AS(
        simulate_trades({0.0, 0.0, 100.6}, [](double) { return Quotes::centered(100.0, 0.1); }, clip, 1.0, rng),
        EnvelopeViolation);
}

TEST_CASE("time-varying quotes need the global envelope")
{
    TradeFlow flow({0.0, 0.0, 100.0}, ClippedIntensity(ExpIntensity(50.0, 5.0)), RngStream(1, 0), Envelope::Local);
    std::function<Quotes(double)> q = [](double) { return Quotes::centered(100.0, 0.1); };
    CHECK_THROWS_AS(flow.next_until(q, 1.0), InvalidArgument);
}
