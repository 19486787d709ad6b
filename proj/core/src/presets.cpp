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

// Parameter grids for the published figures. Sites in figure captions are
// 1-based with the walker starting on site 1; here the start is index 0, the
// nearest sink is index 1 and the farthest is index n/2.

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qloop/error.hpp"
#include "qloop/harness.hpp"

namespace qloop {

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<std::size_t> kLoopSizes = {7, 8, 9, 21, 100};

struct Series {
    std::string label;
    std::size_t n;
    std::size_t k;
    double r;
    NoiseSpec noise;
    std::size_t t_max;
    ObservableFlags observables;
    std::vector<SweepAxis> axes;
};

SweepSpec make(Series s)
{
    SweepSpec spec;
    spec.base.loop.n = s.n;
    spec.base.loop.sink_site = s.k;
    spec.base.loop.sink_strength = s.r;
    spec.base.noise = s.noise;
    spec.base.t_max = s.t_max;
    spec.base.observables = s.observables;
    spec.base.label = std::move(s.label);
    spec.axes = std::move(s.axes);
    return spec;
}

ObservableFlags te_only() { return {}; }

std::vector<double> p_grid() { return uniform_grid(0.0, 1.0, 0.02); }
std::vector<double> r_grid() { return uniform_grid(0.0, 1.0, 0.05); }

std::vector<double> delta_grid()
{
    std::vector<double> values;
    for (int i = 0; i <= 20; ++i) {
        values.push_back(kPi * i / 20.0);
    }
    return values;
}

std::string site_note(std::size_t n, std::size_t k)
{
    return fmt::format("n={} sink index {} (site {} counting the start as site 1)", n, k, k + 1);
}

FigurePreset fig2()
{
    ObservableFlags flags;
    flags.distribution = true;
    FigurePanel panel{"main",
                      "n=21 r=1 t=25 noiseless; sink index 1 (nearest) and 10 (farthest); "
                      "site distribution recorded",
                      {make({"fig2", 21, 1, 1.0, NoiseSpec::none(), 25, flags,
                             {{"k", {1.0, 10.0}}}})}};
    return {"fig2", {panel}};
}

FigurePreset fig3(bool farthest)
{
    const std::string name = farthest ? "fig3b" : "fig3a";
    FigurePanel panel{farthest ? "b" : "a",
                      fmt::format("TE vs t up to 100, r=1, noiseless, {} sink, n in 7,8,9,21,100",
                                  farthest ? "farthest (index n/2)" : "nearest (index 1)"),
                      {}};
    for (std::size_t n : kLoopSizes) {
        const std::size_t k = farthest ? farthest_sink(n) : nearest_sink(n);
        panel.series.push_back(make({fmt::format("{}:n={}", name, n), n, k, 1.0,
                                     NoiseSpec::none(), 100, te_only(), {}}));
    }
    return {name, {panel}};
}

FigurePreset fig4(bool farthest)
{
    const std::string name = farthest ? "fig4b" : "fig4a";
    FigurePanel panel{farthest ? "b" : "a",
                      fmt::format("TE vs r (0..1 step 0.05) at t=40, noiseless, {} sink, n in "
                                  "7,8,9,21,100",
                                  farthest ? "farthest (index n/2)" : "nearest (index 1)"),
                      {}};
    for (std::size_t n : kLoopSizes) {
        const std::size_t k = farthest ? farthest_sink(n) : nearest_sink(n);
        panel.series.push_back(make({fmt::format("{}:n={}", name, n), n, k, 0.0,
                                     NoiseSpec::none(), 40, te_only(), {{"r", r_grid()}}}));
    }
    return {name, {panel}};
}

// Panels alternate nearest / farthest sink for each loop size.
std::vector<FigurePanel> paired_panels(const std::string& name,
                                       const std::vector<std::size_t>& sizes, double r,
                                       std::size_t t_max, const std::vector<SweepAxis>& axes,
                                       const std::string& grid_note)
{
    std::vector<FigurePanel> panels;
    char letter = 'a';
    for (std::size_t n : sizes) {
        for (std::size_t k : {nearest_sink(n), farthest_sink(n)}) {
            const std::string panel_name(1, letter++);
            panels.push_back(
                {panel_name,
                 fmt::format("{}; depolarizing; t up to {}; {}", site_note(n, k), t_max, grid_note),
                 {make({fmt::format("{}{}", name, panel_name), n, k, r,
                        NoiseSpec::depolarizing(0.0), t_max, te_only(), axes})}});
        }
    }
    return panels;
}

FigurePreset fig5()
{
    return {"fig5", paired_panels("fig5", kLoopSizes, 0.6, 50, {{"P", p_grid()}},
                                  "r=0.6; P 0..1 step 0.02")};
}

FigurePreset fig6()
{
    return {"fig6", paired_panels("fig6", {8, 9}, 0.0, 10, {{"r", r_grid()}, {"P", p_grid()}},
                                  "r 0..1 step 0.05; P 0..1 step 0.02; read at t=10")};
}

FigurePreset fig7()
{
    return {"fig7",
            paired_panels("fig7", {7, 8, 9, 21}, 0.5, 40,
                          {{"r", uniform_grid(0.5, 1.0, 0.05)}, {"P", p_grid()}},
                          "r 0.5..1 step 0.05; P 0..1 step 0.02; read at t=40")};
}

// Figs. 8 and 9: TE vs P at t=40 with the sink on every site except the start.
FigurePreset sink_scan(const std::string& name, double r)
{
    FigurePreset preset{name, {}};
    char letter = 'a';
    for (std::size_t n : {7, 8, 9, 21}) {
        std::vector<double> sites;
        for (std::size_t k = 1; k < n; ++k) {
            sites.push_back(static_cast<double>(k));
        }
        preset.panels.push_back(
            {std::string(1, letter++),
             fmt::format("n={} r={}; depolarizing; sink index 1..{}; P 0..1 step 0.02; t up to 40",
                         n, format_number(r), n - 1),
             {make({fmt::format("{}:n={}", name, n), n, 1, r, NoiseSpec::depolarizing(0.0), 40,
                    te_only(), {{"k", sites}, {"P", p_grid()}}})}});
    }
    return preset;
}

FigurePreset dephasing_pair(const std::string& name, std::size_t t_max,
                            const std::vector<SweepAxis>& axes, const std::string& grid_note)
{
    FigurePreset preset{name, {}};
    char letter = 'a';
    for (std::size_t k : {nearest_sink(8), farthest_sink(8)}) {
        const std::string panel_name(1, letter++);
        preset.panels.push_back(
            {panel_name,
             fmt::format("{}; r=1; dephasing; t up to {}; {}", site_note(8, k), t_max, grid_note),
             {make({name + panel_name, 8, k, 1.0, NoiseSpec::dephasing(0.0, kPi), t_max, te_only(),
                    axes})}});
    }
    return preset;
}

FigurePreset fig13()
{
    ObservableFlags flags;
    flags.mid = true;
    const std::vector<std::pair<std::size_t, std::size_t>> cases = {{7, 1}, {7, 3}, {8, 4}, {9, 4}};
    FigurePreset preset{"fig13", {}};
    char letter = 'a';
    for (auto [n, k] : cases) {
        const std::string panel_name(1, letter++);
        SweepSpec spec = make({"fig13" + panel_name, n, k, 1.0, NoiseSpec::depolarizing(0.0), 40,
                               flags, {{"P", {0.0, 0.02, 0.06, 0.1}}}});
        spec.base.mid_every = 1;
        preset.panels.push_back(
            {panel_name,
             fmt::format("{}; r=1; depolarizing P in 0,0.02,0.06,0.1; TE and MID (nats) up to t=40",
                         site_note(n, k)),
             {std::move(spec)}});
    }
    return preset;
}

} // namespace

std::vector<double> uniform_grid(double first, double last, double step)
{
    if (!(step > 0.0) || last < first) {
        throw Error(ErrorCode::InvalidConfig, "grid needs step > 0 and last >= first");
    }
    const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        values.push_back(std::round((first + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return values;
}

const std::vector<std::string>& figure_names()
{
    static const std::vector<std::string> names = {
        "fig2", "fig3a", "fig3b", "fig4a", "fig4b", "fig5",  "fig6",
        "fig7", "fig8",  "fig9",  "fig10", "fig11", "fig12", "fig13"};
    return names;
}

FigurePreset figure_preset(std::string_view name)
{
    if (name == "fig2") return fig2();
    if (name == "fig3a") return fig3(false);
    if (name == "fig3b") return fig3(true);
    if (name == "fig4a") return fig4(false);
    if (name == "fig4b") return fig4(true);
    if (name == "fig5") return fig5();
    if (name == "fig6") return fig6();
    if (name == "fig7") return fig7();
    if (name == "fig8") return sink_scan("fig8", 0.6);
    if (name == "fig9") return sink_scan("fig9", 1.0);
    if (name == "fig10") {
        // P stops at 0.5: beyond it the dephasing map is closer to a
        // deterministic phase gate than to noise.
        return dephasing_pair("fig10", 40,
                              {{"delta_phase", delta_grid()}, {"P", uniform_grid(0.0, 0.5, 0.02)}},
                              "delta 0..pi step pi/20; P 0..0.5 step 0.02; read at t=40");
    }
    if (name == "fig11") {
        return dephasing_pair("fig11", 50, {{"P", p_grid()}},
                              "delta=pi; P 0..1 step 0.02");
    }
    if (name == "fig12") {
        return dephasing_pair("fig12", 50, {{"P", p_grid()}},
                              "delta=pi; P 0..1 step 0.02; read at t=40,45,50");
    }
    if (name == "fig13") return fig13();
    throw Error(ErrorCode::UnknownPreset, fmt::format("no figure preset named '{}'", name));
}

} // namespace qloop
