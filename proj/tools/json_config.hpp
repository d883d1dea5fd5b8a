#pragma once

#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace crackgen::cli {

/// Fills options of `app` that were not given on the command line from a flat
/// JSON object keyed by long flag names (without the leading dashes).
inline void apply_json_config(CLI::App& app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ConversionError(path + ": not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError(path + ": config must be a JSON object");

    auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError(path + ": '" + key + "' must be a scalar or a list of scalars");
    };

    for (const auto& [key, value] : j.items()) {
        CLI::Option* opt = nullptr;
        try {
            opt = app.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw CLI::ConversionError(path + ": unknown setting '" + key + "'");
        }
        if (opt->count() > 0 || key == "config") continue;  // the command line wins
        if (value.is_array()) {
            for (const auto& v : value) opt->add_result(scalar(key, v));
        } else {
            opt->add_result(scalar(key, value));
        }
        opt->run_callback();
    }
}

}  // namespace crackgen::cli
