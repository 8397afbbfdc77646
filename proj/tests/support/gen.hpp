#pragma once

// Small hand-rolled generators for property tests. Each property draws its
// cases from a fixed stream so failures reproduce.

#include <priceform/model.hpp>
#include <priceform/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace gen {

class Gen {
public:
    explicit Gen(std::uint64_t stream) : rng_(0x5eed, stream) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_.next_u64() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (rng_.next_u64() & 1u) != 0; }
    priceform::RngStream& rng() { return rng_; }

    priceform::ExpIntensity intensity() { return {log_uniform(1.0, 200.0), log_uniform(0.5, 40.0)}; }
    priceform::GaussianPrior prior() { return {uniform(95.0, 105.0), log_uniform(0.005, 0.2)}; }
    priceform::Quotes quotes_around(double mid, double max_half_spread)
    {
        return priceform::Quotes::centered(mid + uniform(-0.05, 0.05), uniform(0.0, max_half_spread));
    }
    priceform::Side side() { return coin() ? priceform::Side::Ask : priceform::Side::Bid; }

    /// Sorted trade times in (0, t_end) with random sides.
    std::vector<priceform::TradeEvent> trades(int count, double t_end)
    {
        std::vector<double> times;
        for (int i = 0; i < count; ++i)
            times.push_back(uniform(0.0, t_end));
        std::sort(times.begin(), times.end());
        std::vector<priceform::TradeEvent> out;
        for (double t : times)
            out.push_back({t, side(), priceform::Source::Opportunistic});
        return out;
    }

private:
    priceform::RngStream rng_;
};

}  // namespace gen
