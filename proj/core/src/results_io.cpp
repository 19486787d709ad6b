// Copyright 2026 The qloop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "qloop/error.hpp"
#include "qloop/harness.hpp"

namespace qloop {

namespace {

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(text);
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string comment_lines(std::string_view comment)
{
    std::string out;
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) {
        out += "# " + line + "\n";
    }
    return out;
}

bool any_distribution(std::span<const ExperimentResult> results)
{
    for (const auto& result : results) {
        for (const auto& rec : result.records) {
            if (rec.distribution) {
                return true;
            }
        }
    }
    return false;
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
    }
}

} // namespace

std::string format_number(double value)
{
    // Keep "-0" out of the files.
    if (value == 0.0) {
        value = 0.0;
    }
    return fmt::format("{:.12g}", value);
}

std::string results_csv(std::span<const ExperimentResult> results, std::string_view comment)
{
    std::string out = comment_lines(comment);
    out += kCsvHeader;
    out += '\n';
    for (const auto& result : results) {
        const ExperimentConfig& c = result.config;
        const std::string prefix = fmt::format(
            "{},{},{},{},{},{},{},{},{},{}", csv_field(c.label), c.loop.n, c.loop.sink_site,
            format_number(c.loop.sink_strength), to_string(c.noise.kind),
            format_number(c.noise.strength), format_number(c.noise.dephase_angle),
            c.loop.coin.kind == CoinSpec::Kind::Rotation ? format_number(c.loop.coin.theta) : "",
            format_number(c.loop.initial.delta_init), format_number(c.loop.initial.eta));
        for (const auto& rec : result.records) {
            out += fmt::format("{},{},{},{},{}\n", prefix, rec.t, format_number(rec.te),
                               format_number(rec.trace),
                               rec.mid ? format_number(*rec.mid) : std::string());
        }
    }
    return out;
}

std::string distribution_csv(std::span<const ExperimentResult> results)
{
    std::string out(kDistributionHeader);
    out += '\n';
    for (const auto& result : results) {
        const std::string label = csv_field(result.config.label);
        for (const auto& rec : result.records) {
            if (!rec.distribution) {
                continue;
            }
            for (std::size_t site = 0; site < rec.distribution->size(); ++site) {
                out += fmt::format("{},{},{},{}\n", label, rec.t, site,
                                   format_number((*rec.distribution)[site]));
            }
        }
    }
    return out;
}

std::string results_json(std::span<const ExperimentResult> results)
{
    using nlohmann::json;
    // Numbers go through format_number so the JSON carries the same 12
    // significant digits as the CSV.
    auto number = [](double v) { return json::parse(format_number(v)); };

    json rows = json::array();
    json distribution = json::array();
    for (const auto& result : results) {
        const ExperimentConfig& c = result.config;
        for (const auto& rec : result.records) {
            json row;
            row["label"] = c.label;
            row["n"] = c.loop.n;
            row["k"] = c.loop.sink_site;
            row["r"] = number(c.loop.sink_strength);
            row["noise"] = std::string(to_string(c.noise.kind));
            row["P"] = number(c.noise.strength);
            row["delta_phase"] = number(c.noise.dephase_angle);
            row["theta"] = c.loop.coin.kind == CoinSpec::Kind::Rotation
                               ? number(c.loop.coin.theta)
                               : json(nullptr);
            row["delta_init"] = number(c.loop.initial.delta_init);
            row["eta"] = number(c.loop.initial.eta);
            row["t"] = rec.t;
            row["te"] = number(rec.te);
            row["trace"] = number(rec.trace);
            row["mid"] = rec.mid ? number(*rec.mid) : json(nullptr);
            rows.push_back(std::move(row));

            if (rec.distribution) {
                for (std::size_t site = 0; site < rec.distribution->size(); ++site) {
                    distribution.push_back({{"label", c.label},
                                            {"t", rec.t},
                                            {"site", site},
                                            {"probability", number((*rec.distribution)[site])}});
                }
            }
        }
    }
    json doc;
    doc["rows"] = std::move(rows);
    doc["distribution"] = std::move(distribution);
    return doc.dump(2) + "\n";
}

std::filesystem::path distribution_path(const std::filesystem::path& path)
{
    std::filesystem::path sibling = path;
    sibling.replace_filename(path.stem().string() + ".distribution" + path.extension().string());
    return sibling;
}

void write_results(std::span<const ExperimentResult> results, OutputFormat format,
                   const std::filesystem::path& path, std::string_view comment)
{
    if (format == OutputFormat::Json) {
        write_file(path, results_json(results));
        return;
    }
    write_file(path, results_csv(results, comment));
    if (any_distribution(results)) {
        write_file(distribution_path(path), distribution_csv(results));
    }
}

} // namespace qloop
