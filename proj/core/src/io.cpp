#include "linexplain/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "linexplain/errors.hpp"

namespace linexplain {

namespace {

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    return out;
}

// Whole-token numeric parses; trailing junk ("7x", "1.0.0") is rejected.
bool parse_u32(std::string_view token, std::uint32_t& out) {
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_f64(std::string_view token, double& out) {
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool is_blank_or_comment(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace

LinearModel load_model(const std::string& path, double threshold) {
    std::ifstream in = open_for_read(path);

    std::vector<std::pair<FeatureId, double>> entries;
    double intercept = 0.0;
    bool saw_intercept = false;
    FeatureId max_id = 0;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (is_blank_or_comment(line)) continue;

        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError(path, line_no, "expected `feature_id<TAB>weight`");
        }
        const std::string_view id_token = line.substr(0, tab);
        const std::string_view weight_token = line.substr(tab + 1);

        double weight;
        if (!parse_f64(weight_token, weight)) {
            throw ParseError(path, line_no,
                             "malformed weight '" + std::string(weight_token) + "'");
        }
        if (!std::isfinite(weight)) {
            throw ParseError(path, line_no, "weight must be finite");
        }

        if (id_token == "__intercept__") {
            if (saw_intercept) throw ParseError(path, line_no, "duplicate __intercept__ line");
            saw_intercept = true;
            intercept = weight;
            continue;
        }
        FeatureId id;
        if (!parse_u32(id_token, id)) {
            throw ParseError(path, line_no,
                             "malformed feature id '" + std::string(id_token) + "'");
        }
        entries.emplace_back(id, weight);
        max_id = std::max(max_id, id);
    }

    const std::size_t num_features = entries.empty() ? 0 : static_cast<std::size_t>(max_id) + 1;
    try {
        return LinearModel(std::move(entries), intercept, threshold, num_features);
    } catch (const std::invalid_argument& e) {
        // The only constructor failure reachable from parsed input is a repeat id.
        throw ParseError(path + ": " + e.what());
    }
}

void save_model(const LinearModel& model, const std::string& path) {
    std::ofstream out = open_for_write(path);
    for (const auto& [id, weight] : model.entries()) {
        out << id << '\t' << format_double(weight) << '\n';
    }
    out << "__intercept__\t" << format_double(model.intercept()) << '\n';
    if (!out) throw ParseError("write to '" + path + "' failed");
}

SparseDataset load_dataset(const std::string& path, std::size_t num_features) {
    std::ifstream in = open_for_read(path);

    std::vector<SparseInstance> instances;
    std::size_t max_id_plus_one = 0;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (is_blank_or_comment(line)) continue;

        const auto tokens = split_ws(line);
        const std::string_view label_token = tokens.front();
        bool label;
        if (label_token == "1" || label_token == "+1") {
            label = true;
        } else if (label_token == "0" || label_token == "-1") {
            label = false;
        } else {
            throw ParseError(path, line_no,
                             "expected label 1/+1/0/-1, got '" + std::string(label_token) + "'");
        }

        std::vector<FeatureId> active;
        active.reserve(tokens.size() - 1);
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const std::string_view token = tokens[t];
            const auto colon = token.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError(path, line_no,
                                 "expected `idx:value`, got '" + std::string(token) + "'");
            }
            FeatureId idx;
            if (!parse_u32(token.substr(0, colon), idx)) {
                throw ParseError(path, line_no,
                                 "malformed index '" + std::string(token.substr(0, colon)) + "'");
            }
            double value;
            if (!parse_f64(token.substr(colon + 1), value)) {
                throw ParseError(path, line_no,
                                 "malformed value '" + std::string(token.substr(colon + 1)) +
                                     "'");
            }
            if (value != 1.0) {
                throw ParseError(path, line_no,
                                 "features are binary: value must be 1, got '" +
                                     std::string(token.substr(colon + 1)) + "'");
            }
            if (!active.empty() && idx <= active.back()) {
                throw ParseError(path, line_no, "indices must be strictly increasing");
            }
            active.push_back(idx);
            max_id_plus_one = std::max(max_id_plus_one, static_cast<std::size_t>(idx) + 1);
        }
        instances.emplace_back(instances.size(), std::move(active), label);
    }

    return SparseDataset(std::move(instances), std::max(num_features, max_id_plus_one));
}

void save_dataset(const SparseDataset& dataset, const std::string& path) {
    std::ofstream out = open_for_write(path);
    for (const auto& instance : dataset.instances()) {
        // Instances without labels serialize as 0; the format has no unlabeled
        // form, and the explanation machinery never reads labels anyway.
        out << (instance.label().value_or(false) ? '1' : '0');
        for (FeatureId f : instance.active()) out << ' ' << f << ":1";
        out << '\n';
    }
    if (!out) throw ParseError("write to '" + path + "' failed");
}

std::vector<std::string> load_feature_names(const std::string& path) {
    std::ifstream in = open_for_read(path);

    std::vector<std::string> names;
    std::vector<bool> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (is_blank_or_comment(line)) continue;

        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError(path, line_no, "expected `feature_id<TAB>name`");
        }
        FeatureId id;
        if (!parse_u32(line.substr(0, tab), id)) {
            throw ParseError(path, line_no,
                             "malformed feature id '" + std::string(line.substr(0, tab)) + "'");
        }
        if (id >= names.size()) {
            names.resize(id + 1);
            seen.resize(id + 1, false);
        }
        if (seen[id]) throw ParseError(path, line_no, "duplicate feature id");
        seen[id] = true;
        names[id] = std::string(line.substr(tab + 1));
    }
    return names;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace linexplain
