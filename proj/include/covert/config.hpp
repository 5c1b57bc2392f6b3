#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covert/dependent_model.hpp"
#include "covert/pmf.hpp"

namespace covert {

// Plain-text "key = value" configuration with dotted sections. An
// "[section]" header prefixes following keys with "section.". Lines starting
// with '#' or ';' are comments.
class Config {
public:
    static Config parse_string(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    uint64_t get_u64(const std::string& key) const;
    uint64_t get_u64_or(const std::string& key, uint64_t fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;

    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<uint64_t> get_u64_list(const std::string& key) const;

    // Keys beginning with the prefix, in file order of first appearance.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    void set(const std::string& key, const std::string& value);

private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

// Loads the model.* section. Exactly one of the two results is set:
// model.type = iid      -> pmf from model.support / model.probs
// model.type = dependent -> model.order, model.initial, model.row.<history>
//                           rows give probabilities aligned with
//                           model.support; zero entries are excluded from the
//                           conditional support.
struct LoadedModel {
    std::optional<PacketSizePmf> pmf;
    std::optional<DependentSizeModel> model;
};

LoadedModel load_model(const Config& config);

}  // namespace covert
