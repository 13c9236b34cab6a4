#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lsii/cli.hpp"
#include "lsii/errors.hpp"

namespace lsii::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ParseError("config: unknown key '" + where + key + "'", 0);
    }
}

template <typename T>
T get(const json& obj, const char* key) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: bad value for '") + key + "': " + e.what(), 0);
    }
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
    return line;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto line = line_of(text, e.byte);
        throw ParseError("config: line " + std::to_string(line) + ": " + e.what(), line);
    }
    if (!doc.is_object()) throw ParseError("config: top level must be an object", 1);
    reject_unknown(doc,
                   {"model", "design", "theta", "T", "replications", "kernel", "bandwidth", "grid", "H",
                    "sim_length", "bounds", "seed", "threads", "restarts", "tolerance", "max_iterations",
                    "bootstrap", "input", "output", "column", "regressors", "time_varying_mean", "lags"},
                   "");
    RunConfig c;
    if (doc.contains("model")) c.model = get<std::string>(doc, "model");
    if (doc.contains("design")) c.design = get<std::string>(doc, "design");
    if (doc.contains("theta")) c.theta = get<double>(doc, "theta");
    if (doc.contains("T")) c.T = get<std::size_t>(doc, "T");
    if (doc.contains("replications")) c.replications = get<std::size_t>(doc, "replications");
    if (doc.contains("kernel")) c.kernel = get<std::string>(doc, "kernel");
    if (doc.contains("bandwidth")) {
        const auto& b = doc.at("bandwidth");
        if (b.is_string()) {
            if (b.get<std::string>() != "rule_of_thumb") throw ParseError("config: bandwidth must be a number or \"rule_of_thumb\"", 0);
        } else {
            c.bandwidth = get<double>(doc, "bandwidth");
        }
    }
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        c.grid = g.is_string() ? parse_list(g.get<std::string>()) : get<std::vector<double>>(doc, "grid");
    }
    if (doc.contains("H")) c.H = get<std::size_t>(doc, "H");
    if (doc.contains("sim_length")) c.sim_length = get<std::size_t>(doc, "sim_length");
    if (doc.contains("bounds")) {
        const auto& b = doc.at("bounds");
        if (!b.is_object()) throw ParseError("config: bounds must be an object of name: [lo, hi]", 0);
        for (const auto& [name, value] : b.items()) {
            if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
                throw ParseError("config: bounds." + name + " must be [lo, hi]", 0);
            }
            c.bounds[name] = Bounds{value[0].get<double>(), value[1].get<double>()};
        }
    }
    if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc, "seed");
    if (doc.contains("threads")) c.threads = get<int>(doc, "threads");
    if (doc.contains("restarts")) c.restarts = get<int>(doc, "restarts");
    if (doc.contains("tolerance")) c.tolerance = get<double>(doc, "tolerance");
    if (doc.contains("max_iterations")) c.max_iterations = get<int>(doc, "max_iterations");
    if (doc.contains("bootstrap")) {
        const auto& b = doc.at("bootstrap");
        if (!b.is_object()) throw ParseError("config: bootstrap must be an object", 0);
        reject_unknown(b, {"block_size", "window_fraction", "replications", "level"}, "bootstrap.");
        if (b.contains("block_size")) c.bootstrap.block_size = get<std::size_t>(b, "block_size");
        if (b.contains("window_fraction")) c.bootstrap.window_fraction = get<double>(b, "window_fraction");
        if (b.contains("replications")) c.bootstrap.replications = get<std::size_t>(b, "replications");
        if (b.contains("level")) c.bootstrap.level = get<double>(b, "level");
    }
    if (doc.contains("input")) c.input = get<std::string>(doc, "input");
    if (doc.contains("output")) c.output = get<std::string>(doc, "output");
    if (doc.contains("column")) c.column = get<std::string>(doc, "column");
    if (doc.contains("regressors")) c.regressors = get<std::vector<std::string>>(doc, "regressors");
    if (doc.contains("time_varying_mean")) c.time_varying_mean = get<bool>(doc, "time_varying_mean");
    if (doc.contains("lags")) c.lags = get<int>(doc, "lags");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace lsii::cli
