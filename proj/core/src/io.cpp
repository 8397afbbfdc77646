#include "priceform/io.hpp"

#include "priceform/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace priceform {

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, r.ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + path.string() + " (temporary file " + tmp + " not creatable)");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("cannot write " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::string events_csv(std::span<const TradeEvent> events)
{
    std::string out = "time,side,source,bid,ask,efficient_price\n";
    for (const auto& e : events) {
        out += format_double(e.time);
        out += ',';
        out += to_string(e.side);
        out += ',';
        out += to_string(e.source);
        out += ',' + format_double(e.quotes.bid()) + ',' + format_double(e.quotes.ask()) + ',' +
               format_double(e.efficient_price) + '\n';
    }
    return out;
}

std::string density_csv(const GridDensity& density)
{
    std::string out = "x,value\n";
    for (std::size_t i = 0; i < density.size(); ++i)
        out += format_double(density.x(i)) + ',' + format_double(density[i]) + '\n';
    return out;
}

std::string density_sidecar_json(const GridDensity& density, double t, const Quotes& quotes)
{
    nlohmann::json doc{
        {"t", t},
        {"bid", quotes.bid()},
        {"ask", quotes.ask()},
        {"normalized", density.normalized()},
        {"mass", mass(density)},
        {"x_min", density.x_min()},
        {"dx", density.dx()},
        {"n", density.size()},
    };
    return doc.dump(2) + "\n";
}

std::string trajectory_csv(std::span<const TrajectoryPoint> points)
{
    std::string out = "t,x_t,sigma_t2,argmax,bid,ask,efficient_price,event\n";
    for (const auto& p : points) {
        out += format_double(p.t) + ',' + format_double(p.mean) + ',' + format_double(p.variance) + ',' +
               format_double(p.argmax) + ',' + format_double(p.quotes.bid()) + ',' +
               format_double(p.quotes.ask()) + ',' + format_double(p.efficient_price) + ',';
        out += p.event;
        out += '\n';
    }
    return out;
}

std::string impact_csv(const ImpactCurve& curve)
{
    std::string out = "t,mean_impact,stderr,overlay\n";
    for (std::size_t k = 0; k < curve.times.size(); ++k)
        out += format_double(curve.times[k]) + ',' + format_double(curve.mean_impact[k]) + ',' +
               format_double(curve.stderr_impact[k]) + ',' + format_double(curve.overlay[k]) + '\n';
    return out;
}

std::vector<std::string> write_outputs(const std::filesystem::path& dir, const OutputBundle& bundle,
                                       const RunConfig& config)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<std::string> written;
    const auto put = [&](const std::string& name, const std::string& content) {
        write_file_atomic(dir / name, content);
        written.push_back(name);
    };
    if (bundle.curve)
        put("impact.csv", impact_csv(*bundle.curve));
    if (bundle.events)
        put("events.csv", events_csv(*bundle.events));
    if (bundle.trajectory)
        put("trajectory.csv", trajectory_csv(*bundle.trajectory));
    for (const auto& [stem, snap] : bundle.densities) {
        put(stem + ".csv", density_csv(snap.density));
        put(stem + ".json", density_sidecar_json(snap.density, snap.t, snap.quotes));
    }
    written.push_back("manifest.json");
    write_file_atomic(dir / "manifest.json", manifest_json(config, written));
    return written;
}

}  // namespace priceform
