#include "priceform/config.hpp"

#include "priceform/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#ifndef PRICEFORM_GIT_DESCRIBE
#define PRICEFORM_GIT_DESCRIBE "unknown"
#endif

namespace priceform {

using nlohmann::json;

std::string_view to_string(Command command) noexcept
{
    switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Impact: return "impact";
    case Command::FilterDemo: return "filter-demo";
    case Command::Verify: return "verify";
    }
    return "?";
}

Command parse_command(std::string_view name)
{
    for (Command c : {Command::Simulate, Command::Impact, Command::FilterDemo, Command::Verify})
        if (to_string(c) == name)
            return c;
    throw ConfigError("command", "must be one of simulate, impact, filter-demo, verify (got '" +
                                     std::string(name) + "')");
}

ImpactExperiment RunConfig::experiment() const
{
    ImpactExperiment exp;
    exp.lambda0 = lambda0;
    exp.a = a;
    exp.half_spread = half_spread;
    exp.sigma = sigma;
    exp.s0 = s0;
    exp.prior = {x0, sigma0};
    exp.beta = beta;
    exp.T = T;
    exp.horizon = horizon;
    exp.policy = QuotePolicy::parse(policy, half_spread, x0).kind();
    exp.filter = filter == "gaussian" ? FilterKind::Gaussian : FilterKind::Grid;
    exp.grid_n = grid_n.value_or(1001);
    exp.grid_half_width = grid_half_width;
    exp.output_dt = output_dt;
    exp.replicas = replicas;
    exp.seed = seed.value_or(0);
    exp.threads = threads;
    return exp;
}

namespace {

const std::set<std::string> kSections{"model", "quotes", "prior", "meta", "run", "grid"};
const std::set<std::string> kTopLevel{"command", "seed", "output_dir", "model", "quotes",
                                      "prior",   "meta", "run",        "grid"};

class Reader {
public:
    explicit Reader(const json& doc) : doc_(doc) {}

    const json* find(const std::string& section, const std::string& key) const
    {
        const json* node = &doc_;
        if (!section.empty()) {
            auto it = doc_.find(section);
            if (it == doc_.end())
                return nullptr;
            node = &*it;
        }
        auto it = node->find(key);
        return it == node->end() ? nullptr : &*it;
    }

    void number(const std::string& section, const std::string& key, double& out) const
    {
        if (const json* v = find(section, key)) {
            if (!v->is_number())
                throw ConfigError(path(section, key), "must be a number");
            out = v->get<double>();
        }
    }

    void integer(const std::string& section, const std::string& key, int& out) const
    {
        if (const json* v = find(section, key)) {
            if (!v->is_number_integer())
                throw ConfigError(path(section, key), "must be an integer");
            out = v->get<int>();
        }
    }

    void text(const std::string& section, const std::string& key, std::string& out) const
    {
        if (const json* v = find(section, key)) {
            if (!v->is_string())
                throw ConfigError(path(section, key), "must be a string");
            out = v->get<std::string>();
        }
    }

    static std::string path(const std::string& section, const std::string& key)
    {
        return section.empty() ? key : section + "." + key;
    }

private:
    const json& doc_;
};

void check_keys(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("", "config must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!kTopLevel.count(it.key()))
            throw ConfigError(it.key(), "is not a known setting");
        if (kSections.count(it.key()) && !it.value().is_object())
            throw ConfigError(it.key(), "must be an object");
    }
    static const std::map<std::string, std::set<std::string>> known{
        {"model", {"lambda0", "a", "sigma", "s0"}},
        {"quotes", {"half_spread", "policy"}},
        {"prior", {"x0", "sigma0"}},
        {"meta", {"beta", "T"}},
        {"run", {"horizon", "output_dt", "replicas", "threads", "filter"}},
        {"grid", {"n", "half_width"}},
    };
    for (const auto& [section, keys] : known) {
        auto it = doc.find(section);
        if (it == doc.end())
            continue;
        for (auto kv = it->begin(); kv != it->end(); ++kv)
            if (!keys.count(kv.key()))
                throw ConfigError(section + "." + kv.key(), "is not a known setting");
    }
}

void require(bool ok, const std::string& field, const std::string& reason)
{
    if (!ok)
        throw ConfigError(field, reason);
}

void validate(const RunConfig& c)
{
    require(c.lambda0 > 0.0 && std::isfinite(c.lambda0), "model.lambda0", "must be > 0");
    require(c.a > 0.0 && std::isfinite(c.a), "model.a", "must be > 0");
    require(c.sigma >= 0.0 && std::isfinite(c.sigma), "model.sigma", "must be >= 0");
    require(std::isfinite(c.s0), "model.s0", "must be finite");
    require(c.half_spread >= 0.0 && std::isfinite(c.half_spread), "quotes.half_spread", "must be ≥ 0");
    require(c.policy == "fixed" || c.policy == "mid-mean" || c.policy == "mid-argmax", "quotes.policy",
            "must be fixed, mid-mean or mid-argmax");
    require(std::isfinite(c.x0), "prior.x0", "must be finite");
    require(c.sigma0 > 0.0 && std::isfinite(c.sigma0), "prior.sigma0", "must be > 0");
    require(c.beta >= 0.0 && std::isfinite(c.beta), "meta.beta", "must be >= 0");
    require(c.T >= 0.0, "meta.T", "must be >= 0 or null");
    require(c.horizon > 0.0 && std::isfinite(c.horizon), "run.horizon", "must be > 0");
    require(!(std::isfinite(c.T) && c.beta > 0.0 && c.horizon < c.T), "run.horizon",
            "must be >= meta.T when T is finite");
    require(c.output_dt > 0.0 && std::isfinite(c.output_dt), "run.output_dt", "must be > 0");
    require(c.replicas >= 1, "run.replicas", "must be >= 1");
    require(c.threads >= 0, "run.threads", "must be >= 0");
    require(c.filter == "grid" || c.filter == "gaussian", "run.filter", "must be grid or gaussian");
    require(!(c.filter == "gaussian" && c.policy == "mid-argmax"), "quotes.policy",
            "mid-argmax needs run.filter = grid");
    require(!c.grid_n || *c.grid_n >= 3, "grid.n", "must be >= 3");
    require(c.grid_half_width >= 0.0 && std::isfinite(c.grid_half_width), "grid.half_width",
            "must be >= 0 (0 selects the automatic span)");
    if (c.command == Command::Simulate || c.command == Command::Impact)
        require(c.seed.has_value(), "seed", "is required for the " + std::string(to_string(c.command)) + " command");
}

void apply_override(json& doc, const ConfigOverride& o)
{
    if (o.path.empty())
        throw ConfigError("", "override with an empty key");
    json value;
    try {
        value = json::parse(o.value);
    } catch (const json::parse_error&) {
        value = o.value;
    }
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = o.path.find('.', start);
        const std::string key = o.path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        json& child = (*node)[key];
        if (child.is_null())
            child = json::object();
        if (!child.is_object())
            throw ConfigError(o.path.substr(0, dot), "must be an object");
        node = &child;
        start = dot + 1;
    }
}

RunConfig from_json(const json& doc)
{
    check_keys(doc);
    const Reader r(doc);
    RunConfig c;

    if (const json* v = r.find("", "command")) {
        if (!v->is_string())
            throw ConfigError("command", "must be a string");
        c.command = parse_command(v->get<std::string>());
    }
    if (const json* v = r.find("", "seed")) {
        if (!v->is_null()) {
            if (!v->is_number_unsigned())
                throw ConfigError("seed", "must be a non-negative integer");
            c.seed = v->get<std::uint64_t>();
        }
    }
    r.text("", "output_dir", c.output_dir);
    if (c.output_dir.empty()) {
        const char* env = std::getenv(kOutputDirEnv);
        c.output_dir = env && *env ? env : kDefaultOutputDir;
    }

    r.number("model", "lambda0", c.lambda0);
    r.number("model", "a", c.a);
    r.number("model", "sigma", c.sigma);
    r.number("model", "s0", c.s0);
    r.number("quotes", "half_spread", c.half_spread);
    r.text("quotes", "policy", c.policy);
    r.number("prior", "x0", c.x0);
    r.number("prior", "sigma0", c.sigma0);
    r.number("meta", "beta", c.beta);
    if (const json* v = r.find("meta", "T")) {
        if (v->is_null())
            c.T = std::numeric_limits<double>::infinity();
        else if (v->is_string() && (v->get<std::string>() == "inf" || v->get<std::string>() == "infinity"))
            c.T = std::numeric_limits<double>::infinity();
        else
            r.number("meta", "T", c.T);
    }
    r.number("run", "horizon", c.horizon);
    r.number("run", "output_dt", c.output_dt);
    r.integer("run", "replicas", c.replicas);
    r.integer("run", "threads", c.threads);
    r.text("run", "filter", c.filter);
    if (const json* v = r.find("grid", "n")) {
        if (!v->is_null()) {
            if (!v->is_number_unsigned())
                throw ConfigError("grid.n", "must be a non-negative integer");
            c.grid_n = v->get<std::size_t>();
        }
    }
    r.number("grid", "half_width", c.grid_half_width);

    validate(c);
    return c;
}

json to_json_value(const RunConfig& c)
{
    json doc;
    doc["command"] = std::string(to_string(c.command));
    doc["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    doc["output_dir"] = c.output_dir;
    doc["model"] = {{"lambda0", c.lambda0}, {"a", c.a}, {"sigma", c.sigma}, {"s0", c.s0}};
    doc["quotes"] = {{"half_spread", c.half_spread}, {"policy", c.policy}};
    doc["prior"] = {{"x0", c.x0}, {"sigma0", c.sigma0}};
    doc["meta"] = {{"beta", c.beta}, {"T", std::isinf(c.T) ? json(nullptr) : json(c.T)}};
    doc["run"] = {{"horizon", c.horizon},
                  {"output_dt", c.output_dt},
                  {"replicas", c.replicas},
                  {"threads", c.threads},
                  {"filter", c.filter}};
    doc["grid"] = {{"n", c.grid_n ? json(*c.grid_n) : json(nullptr)}, {"half_width", c.grid_half_width}};
    return doc;
}

}  // namespace

RunConfig parse_config(std::string_view json_text, std::span<const ConfigOverride> overrides)
{
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("is not valid JSON: ") + e.what());
    }
    for (const auto& o : overrides)
        apply_override(doc, o);
    return from_json(doc);
}

RunConfig load_config(const std::filesystem::path& file, std::span<const ConfigOverride> overrides)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw IoError("cannot read config file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

std::string to_json(const RunConfig& config)
{
    return to_json_value(config).dump(2) + "\n";
}

std::string_view git_describe() noexcept
{
    return PRICEFORM_GIT_DESCRIBE;
}

std::string manifest_json(const RunConfig& config, std::span<const std::string> outputs)
{
    json doc;
    doc["config"] = to_json_value(config);
    doc["seed"] = config.seed ? json(*config.seed) : json(nullptr);
    doc["git_describe"] = std::string(git_describe());
    doc["outputs"] = json(std::vector<std::string>(outputs.begin(), outputs.end()));
    return doc.dump(2) + "\n";
}

RunConfig parse_manifest(std::string_view manifest_text)
{
    json doc;
    try {
        doc = json::parse(manifest_text.begin(), manifest_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("config"))
        throw ConfigError("config", "is missing from the manifest");
    return from_json(doc["config"]);
}

}  // namespace priceform
