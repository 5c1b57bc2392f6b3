#include "covert/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covert {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    return parts;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
    Config config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        if (!section.empty()) key = section + "." + key;
        config.set(key, value);
    }
    return config;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

void Config::set(const std::string& key, const std::string& value) {
    if (values_.find(key) == values_.end()) order_.push_back(key);
    values_[key] = value;
}

bool Config::has(const std::string& key) const {
    return values_.find(key) != values_.end();
}

std::string Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::invalid_argument("config: missing required key '" + key + "'");
    return it->second;
}

std::string Config::get_or(const std::string& key,
                           const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

uint64_t Config::get_u64(const std::string& key) const {
    const std::string v = get(key);
    try {
        // Accepts 1e6-style scientific notation for lengths.
        double d = std::stod(v);
        auto u = static_cast<uint64_t>(d);
        if (d < 0 || static_cast<double>(u) != d)
            throw std::invalid_argument("not a non-negative integer");
        return u;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key +
                                    "' is not an integer: " + v);
    }
}

uint64_t Config::get_u64_or(const std::string& key, uint64_t fallback) const {
    return has(key) ? get_u64(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (trim(v.substr(pos)) != "")
            throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key +
                                    "' is not a number: " + v);
    }
}

double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& part : split_commas(get(key))) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw std::invalid_argument("config: key '" + key +
                                        "' has a non-numeric entry: " + part);
        }
    }
    if (out.empty())
        throw std::invalid_argument("config: key '" + key + "' is empty");
    return out;
}

std::vector<uint64_t> Config::get_u64_list(const std::string& key) const {
    std::vector<uint64_t> out;
    for (double d : get_double_list(key)) {
        auto u = static_cast<uint64_t>(d);
        if (d < 0 || static_cast<double>(u) != d)
            throw std::invalid_argument("config: key '" + key +
                                        "' has a non-integer entry");
        out.push_back(u);
    }
    return out;
}

std::vector<std::string> Config::keys_with_prefix(
    const std::string& prefix) const {
    std::vector<std::string> out;
    for (const std::string& key : order_)
        if (key.rfind(prefix, 0) == 0) out.push_back(key);
    return out;
}

namespace {

std::vector<uint32_t> support_from(const Config& config) {
    std::vector<uint32_t> support;
    for (uint64_t s : config.get_u64_list("model.support"))
        support.push_back(static_cast<uint32_t>(s));
    return support;
}

PacketSizePmf conditional_from_row(const std::vector<uint32_t>& support,
                                   const std::vector<double>& probs,
                                   const std::string& key) {
    if (probs.size() != support.size())
        throw std::invalid_argument("config: '" + key + "' must list " +
                                    std::to_string(support.size()) +
                                    " probabilities");
    std::vector<uint32_t> sub_support;
    std::vector<double> sub_probs;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0.0) continue;
        sub_support.push_back(support[i]);
        sub_probs.push_back(probs[i]);
    }
    return PacketSizePmf::make_conditional(std::move(sub_support),
                                           std::move(sub_probs));
}

}  // namespace

LoadedModel load_model(const Config& config) {
    LoadedModel loaded;
    std::string type = config.get_or("model.type", "iid");
    std::vector<uint32_t> support = support_from(config);
    if (type == "iid") {
        loaded.pmf = PacketSizePmf::make(
            support, config.get_double_list("model.probs"));
    } else if (type == "dependent") {
        size_t order = static_cast<size_t>(config.get_u64("model.order"));
        PacketSizePmf initial = conditional_from_row(
            support, config.get_double_list("model.initial"), "model.initial");
        std::map<SizeHistory, PacketSizePmf> rows;
        const std::string prefix = "model.row.";
        for (const std::string& key : config.keys_with_prefix(prefix)) {
            SizeHistory history;
            std::stringstream hs(key.substr(prefix.size()));
            std::string part;
            while (std::getline(hs, part, ','))
                history.push_back(static_cast<uint32_t>(std::stoul(part)));
            rows.emplace(std::move(history),
                         conditional_from_row(
                             support, config.get_double_list(key), key));
        }
        loaded.model = DependentSizeModel(order, std::move(initial),
                                          std::move(rows));
    } else {
        throw std::invalid_argument("config: model.type must be iid or "
                                    "dependent, got '" + type + "'");
    }
    return loaded;
}

}  // namespace covert
