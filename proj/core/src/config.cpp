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
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "qloop/error.hpp"
#include "qloop/harness.hpp"

namespace qloop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::InvalidConfig, where + ": " + what);
}

void require_object(const json& j, const std::string& where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed)
{
    for (const auto& item : j.items()) {
        bool known = false;
        for (auto key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            fail(where, fmt::format("unknown key '{}'", item.key()));
        }
    }
}

double get_number(const json& j, const std::string& where)
{
    if (!j.is_number()) {
        fail(where, "expected a number");
    }
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& where)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

bool get_bool(const json& j, const std::string& where)
{
    if (!j.is_boolean()) {
        fail(where, "expected true or false");
    }
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& where)
{
    if (!j.is_string()) {
        fail(where, "expected a string");
    }
    return j.get<std::string>();
}

CoinSpec coin_from(const json& j)
{
    const std::string where = "loop.coin";
    require_object(j, where);
    reject_unknown(j, where, {"variant", "theta"});
    CoinSpec coin;
    if (j.contains("variant")) {
        const std::string variant = get_string(j["variant"], where + ".variant");
        if (variant == "rotation") {
            coin.kind = CoinSpec::Kind::Rotation;
        } else if (variant == "symmetric_dft") {
            coin.kind = CoinSpec::Kind::SymmetricDft;
        } else {
            fail(where + ".variant", "expected 'rotation' or 'symmetric_dft', got '" + variant + "'");
        }
    }
    if (j.contains("theta")) {
        if (coin.kind != CoinSpec::Kind::Rotation) {
            fail(where + ".theta", "only valid for the rotation coin");
        }
        coin.theta = get_number(j["theta"], where + ".theta");
    }
    return coin;
}

InitialStateSpec initial_from(const json& j)
{
    const std::string where = "loop.initial";
    require_object(j, where);
    reject_unknown(j, where, {"delta_init", "eta", "start_site"});
    InitialStateSpec init;
    if (j.contains("delta_init")) init.delta_init = get_number(j["delta_init"], where + ".delta_init");
    if (j.contains("eta")) init.eta = get_number(j["eta"], where + ".eta");
    if (j.contains("start_site")) init.start_site = get_count(j["start_site"], where + ".start_site");
    return init;
}

LoopConfig loop_from(const json& j)
{
    const std::string where = "loop";
    require_object(j, where);
    reject_unknown(j, where, {"n", "sink_site", "sink_strength", "coin", "initial"});
    for (const char* key : {"n", "sink_site", "sink_strength"}) {
        if (!j.contains(key)) {
            fail(where, fmt::format("missing required key '{}'", key));
        }
    }
    LoopConfig loop;
    loop.n = get_count(j["n"], "loop.n");
    loop.sink_site = get_count(j["sink_site"], "loop.sink_site");
    loop.sink_strength = get_number(j["sink_strength"], "loop.sink_strength");
    if (j.contains("coin")) loop.coin = coin_from(j["coin"]);
    if (j.contains("initial")) loop.initial = initial_from(j["initial"]);
    return loop;
}

NoiseSpec noise_from(const json& j)
{
    const std::string where = "noise";
    require_object(j, where);
    reject_unknown(j, where, {"kind", "strength", "dephase_angle"});
    NoiseSpec noise;
    if (j.contains("kind")) {
        const std::string kind = get_string(j["kind"], "noise.kind");
        const auto parsed = parse_noise_kind(kind);
        if (!parsed) {
            fail("noise.kind", "expected none, depolarizing or dephasing, got '" + kind + "'");
        }
        noise.kind = *parsed;
    }
    if (j.contains("strength")) noise.strength = get_number(j["strength"], "noise.strength");
    if (j.contains("dephase_angle")) {
        noise.dephase_angle = get_number(j["dephase_angle"], "noise.dephase_angle");
    }
    return noise;
}

ObservableFlags observables_from(const json& j)
{
    const std::string where = "observables";
    require_object(j, where);
    reject_unknown(j, where, {"te", "distribution", "mid"});
    ObservableFlags flags;
    if (j.contains("te")) flags.te = get_bool(j["te"], "observables.te");
    if (j.contains("distribution")) flags.distribution = get_bool(j["distribution"], "observables.distribution");
    if (j.contains("mid")) flags.mid = get_bool(j["mid"], "observables.mid");
    return flags;
}

ExperimentConfig experiment_from(const json& j, const std::string& where)
{
    require_object(j, where);
    reject_unknown(j, where, {"loop", "noise", "t_max", "observables", "mid_every", "label"});
    if (!j.contains("loop")) {
        fail(where, "missing required key 'loop'");
    }
    ExperimentConfig config;
    config.loop = loop_from(j["loop"]);
    if (j.contains("noise")) config.noise = noise_from(j["noise"]);
    if (j.contains("t_max")) config.t_max = get_count(j["t_max"], where + ".t_max");
    if (j.contains("observables")) config.observables = observables_from(j["observables"]);
    if (j.contains("mid_every")) config.mid_every = get_count(j["mid_every"], where + ".mid_every");
    if (j.contains("label")) config.label = get_string(j["label"], where + ".label");
    return config;
}

SweepSpec sweep_from(const json& j)
{
    require_object(j, "sweep");
    reject_unknown(j, "sweep", {"base", "axes"});
    if (!j.contains("base")) {
        fail("sweep", "missing required key 'base'");
    }
    SweepSpec spec;
    spec.base = experiment_from(j["base"], "base");
    if (j.contains("axes")) {
        if (!j["axes"].is_array()) {
            fail("axes", "expected an array");
        }
        std::size_t i = 0;
        for (const auto& axis_json : j["axes"]) {
            const std::string where = fmt::format("axes[{}]", i++);
            require_object(axis_json, where);
            reject_unknown(axis_json, where, {"parameter", "values"});
            if (!axis_json.contains("parameter") || !axis_json.contains("values")) {
                fail(where, "needs 'parameter' and 'values'");
            }
            SweepAxis axis;
            axis.parameter = get_string(axis_json["parameter"], where + ".parameter");
            if (!axis_json["values"].is_array()) {
                fail(where + ".values", "expected an array");
            }
            for (const auto& v : axis_json["values"]) {
                axis.values.push_back(get_number(v, where + ".values"));
            }
            spec.axes.push_back(std::move(axis));
        }
    }
    return spec;
}

json parse_document(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("malformed JSON: ") + e.what());
    }
}

json experiment_to_json(const ExperimentConfig& c)
{
    json coin = {{"variant", c.loop.coin.kind == CoinSpec::Kind::Rotation ? "rotation" : "symmetric_dft"}};
    if (c.loop.coin.kind == CoinSpec::Kind::Rotation) {
        coin["theta"] = c.loop.coin.theta;
    }
    json j = {
        {"loop",
         {{"n", c.loop.n},
          {"sink_site", c.loop.sink_site},
          {"sink_strength", c.loop.sink_strength},
          {"coin", coin},
          {"initial",
           {{"delta_init", c.loop.initial.delta_init},
            {"eta", c.loop.initial.eta},
            {"start_site", c.loop.initial.start_site}}}}},
        {"noise",
         {{"kind", std::string(to_string(c.noise.kind))},
          {"strength", c.noise.strength},
          {"dephase_angle", c.noise.dephase_angle}}},
        {"t_max", c.t_max},
        {"observables",
         {{"te", c.observables.te},
          {"distribution", c.observables.distribution},
          {"mid", c.observables.mid}}},
        {"label", c.label},
    };
    if (c.mid_every) {
        j["mid_every"] = *c.mid_every;
    }
    return j;
}

} // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text)
{
    return experiment_from(parse_document(json_text), "experiment");
}

SweepSpec parse_sweep_spec(std::string_view json_text)
{
    return sweep_from(parse_document(json_text));
}

SweepSpec load_sweep_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidConfig, "cannot read config '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_sweep_spec(text.str());
}

std::string to_json(const ExperimentConfig& config)
{
    return experiment_to_json(config).dump(2);
}

std::string to_json(const SweepSpec& spec)
{
    json axes = json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"parameter", axis.parameter}, {"values", axis.values}});
    }
    return json{{"base", experiment_to_json(spec.base)}, {"axes", axes}}.dump(2);
}

} // namespace qloop
