// SPDX-License-Identifier: Apache-2.0
//
// fsalink: frequency-scanning antenna link and localization simulator
// Copyright (C) 2026 The fsalink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fsalink/scenario.hpp"

#include "fsalink/constants.hpp"
#include "fsalink/error.hpp"
#include "fsalink/ofdma.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

namespace fsalink
{
    using json = nlohmann::json;

    std::string_view to_string(AntennaKind kind) noexcept
    {
        switch (kind)
        {
        case AntennaKind::fsa:
            return "fsa";
        case AntennaKind::omni:
            return "omni";
        case AntennaKind::ideal_beams:
            return "ideal_beams";
        }
        return "unknown";
    }

    double bearing_deg(Vec2 v) noexcept
    {
        return rad_to_deg(std::atan2(v.x, v.y));
    }

    double wrap_deg(double a) noexcept
    {
        double w = a - 360.0 * std::floor((a + 180.0) / 360.0);
        if (w >= 180.0)
            w -= 360.0;
        return w;
    }

    namespace
    {
        [[noreturn]] void invalid(const std::string &field, const std::string &what)
        {
            throw Error(ErrorCode::validation, field + ": " + what);
        }

        // Re-labels errors from model validators with the scenario field.
        template <class F>
        void checked(const std::string &field, F &&fn)
        {
            try
            {
                fn();
            }
            catch (const Error &e)
            {
                invalid(field, e.what());
            }
        }
    }

    void Scenario::validate() const
    {
        if (trials < 1)
            invalid("$.trials", "must be >= 1");
        if (devices.empty())
            invalid("$.devices", "at least one device is required");

        checked("$.channel", [&] { channel.validate(); });
        checked("$.ap.radio", [&] { ap.radio.validate(); });
        checked("$.antennas.fsa", [&] { fsa.validate(); });
        checked("$.antennas.ideal_beams", [&] { ideal_beams.validate(); });
        checked("$.localization.smoothing", [&] { localization.smoothing.validate(); });
        checked("$.localization.rtt", [&] { localization.rtt.validate(); });
        if (!(localization.probe_rssi_sigma_db >= 0.0))
            invalid("$.localization.probe_rssi_sigma_db", "must be >= 0");
        if (!std::isfinite(k_factor_db))
            invalid("$.fading.k_factor_db", "must be finite");

        if (ru_widths_hz.empty())
            invalid("$.ru_widths_hz", "at least one RU width is required");
        for (std::size_t i = 0; i < ru_widths_hz.size(); ++i)
        {
            const std::string field = "$.ru_widths_hz[" + std::to_string(i) + "]";
            checked(field, [&] { partition_rus(channel.bandwidth_hz, ru_widths_hz[i], channel); });
            if (evaluation != Evaluation::localization)
                checked(field, [&] { mcs().rate_mbps(0, ru_widths_hz[i]); });
        }

        const double lo = channel.frequency(0), hi = channel.frequency(channel.count() - 1);
        for (AntennaKind kind : {ap.antenna, AntennaKind::omni})
            if (!pattern_covers(pattern(kind), lo, hi))
                invalid("$.channel", "subcarriers leave the band of the " + std::string(to_string(kind)) + " antenna");

        if (evaluation != Evaluation::comm && ap.antenna != AntennaKind::fsa)
            invalid("$.ap.antenna", "localization requires the fsa antenna at the AP");

        std::set<std::uint32_t> ids;
        for (std::size_t i = 0; i < devices.size(); ++i)
        {
            const Device &d = devices[i];
            const std::string field = "$.devices[" + std::to_string(i) + "]";
            if (!ids.insert(d.id).second)
                invalid(field + ".id", "duplicate device id " + std::to_string(d.id));
            if (d.position_m == ap.position_m)
                invalid(field + ".position_m", "coincides with the AP");
            if (!std::isfinite(d.position_m.x) || !std::isfinite(d.position_m.y) || !std::isfinite(d.orientation_deg))
                invalid(field, "position and orientation must be finite");
            if (d.antenna != AntennaKind::omni && !pattern_covers(pattern(d.antenna), lo, hi))
                invalid(field + ".antenna", "channel leaves the band of the device antenna");

            const LinkGeometry g = geometry(d);
            if (ap.antenna == AntennaKind::fsa && std::abs(g.azimuth_at_a_deg) > 90.0)
                invalid(field + ".position_m", "device lies behind the AP's fsa antenna (azimuth " +
                                                   std::to_string(g.azimuth_at_a_deg) + " deg)");
            if (d.antenna == AntennaKind::fsa && std::abs(g.azimuth_at_b_deg) > 90.0)
                invalid(field + ".orientation_deg", "AP lies behind the device's fsa antenna (azimuth " +
                                                        std::to_string(g.azimuth_at_b_deg) + " deg)");
        }
    }

    AntennaPattern Scenario::pattern(AntennaKind kind) const
    {
        switch (kind)
        {
        case AntennaKind::fsa:
            return fsa;
        case AntennaKind::ideal_beams:
            return ideal_beams;
        case AntennaKind::omni:
            break;
        }
        return omni;
    }

    LinkGeometry Scenario::geometry(const Device &device) const
    {
        const Vec2 d{device.position_m.x - ap.position_m.x, device.position_m.y - ap.position_m.y};
        return LinkGeometry{std::hypot(d.x, d.y), wrap_deg(bearing_deg(d) - ap.orientation_deg),
                            wrap_deg(bearing_deg(Vec2{-d.x, -d.y}) - device.orientation_deg)};
    }

    // ---- strict JSON reading --------------------------------------------

    namespace
    {
        json parse_json(std::string_view text)
        {
            try
            {
                return json::parse(text.begin(), text.end());
            }
            catch (const json::parse_error &e)
            {
                // locate the byte offset reported by the parser
                std::size_t line = 1, col = 1;
                const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
                for (std::size_t i = 0; i < end; ++i)
                {
                    if (text[i] == '\n')
                    {
                        ++line;
                        col = 1;
                    }
                    else
                        ++col;
                }
                // drop the library's own "[json.exception...] parse error at line L, column C: " prefix
                std::string what = e.what();
                if (auto p = what.find("column"); p != std::string::npos)
                    if (auto q = what.find(": ", p); q != std::string::npos)
                        what = what.substr(q + 2);
                throw Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
            }
        }

        class Node
        {
          public:
            Node(const json &j, std::string path, std::initializer_list<const char *> allowed) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    invalid(path_, "expected an object");
                for (const auto &[key, _] : j_.items())
                    if (std::find_if(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; }) == allowed.end())
                        throw Error(ErrorCode::parse, "unknown key '" + key + "' in " + path_);
            }

            bool has(const char *key) const { return j_.contains(key); }
            const json &at(const char *key) const { return j_.at(key); }
            std::string field(const char *key) const { return path_ + "." + key; }

            void number(const char *key, double &out) const
            {
                if (!has(key))
                    return;
                if (!at(key).is_number())
                    invalid(field(key), "expected a number");
                out = at(key).get<double>();
                if (!std::isfinite(out))
                    invalid(field(key), "must be finite");
            }

            template <class T>
            void integer(const char *key, T &out, std::int64_t min_value) const
            {
                if (!has(key))
                    return;
                const json &v = at(key);
                if (v.is_number_unsigned())
                    out = static_cast<T>(v.get<std::uint64_t>());
                else if (v.is_number_integer() && v.get<std::int64_t>() >= min_value)
                    out = static_cast<T>(v.get<std::int64_t>());
                else if (v.is_number_integer())
                    invalid(field(key), "must be >= " + std::to_string(min_value));
                else
                    invalid(field(key), "expected an integer");
            }

            void boolean(const char *key, bool &out) const
            {
                if (!has(key))
                    return;
                if (!at(key).is_boolean())
                    invalid(field(key), "expected true or false");
                out = at(key).get<bool>();
            }

            template <class E>
            void choice(const char *key, E &out, std::initializer_list<std::pair<const char *, E>> options) const
            {
                if (!has(key))
                    return;
                if (at(key).is_string())
                    for (const auto &[name, value] : options)
                        if (at(key).get<std::string>() == name)
                        {
                            out = value;
                            return;
                        }
                std::string names;
                for (const auto &[name, _] : options)
                    names += (names.empty() ? "" : "|") + std::string(name);
                invalid(field(key), "expected one of " + names);
            }

            Vec2 point(const char *key, bool required) const
            {
                if (!has(key))
                {
                    if (required)
                        invalid(field(key), "missing");
                    return {};
                }
                const json &v = at(key);
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                    invalid(field(key), "expected [x, y] in meters");
                return Vec2{v[0].get<double>(), v[1].get<double>()};
            }

          private:
            const json &j_;
            std::string path_;
        };

        const std::initializer_list<std::pair<const char *, AntennaKind>> antenna_kinds{
            {"fsa", AntennaKind::fsa}, {"omni", AntennaKind::omni}, {"ideal_beams", AntennaKind::ideal_beams}};

        void read_calibration(const Node &n, BeamCalibration &cal)
        {
            n.number("f_ref_hz", cal.f_ref_hz);
            n.number("theta_ref_deg", cal.theta_ref_deg);
            n.number("slope_deg_per_hz", cal.slope_deg_per_hz);
            n.number("f_min_hz", cal.f_min_hz);
            n.number("f_max_hz", cal.f_max_hz);
        }

        const std::initializer_list<const char *> calibration_keys{"f_ref_hz", "theta_ref_deg", "slope_deg_per_hz", "f_min_hz", "f_max_hz"};

        void read_antennas(const Node &n, Scenario &s)
        {
            if (n.has("fsa"))
            {
                const Node f(n.at("fsa"), n.field("fsa"),
                             {"element_count", "element_spacing_m", "element_gain_dbi", "per_stage_loss_db", "calibration"});
                f.integer("element_count", s.fsa.element_count, 1);
                f.number("element_spacing_m", s.fsa.element_spacing_m);
                f.number("element_gain_dbi", s.fsa.element_gain_dbi);
                f.number("per_stage_loss_db", s.fsa.per_stage_loss_db);
                if (f.has("calibration"))
                    read_calibration(Node(f.at("calibration"), f.field("calibration"), calibration_keys), s.fsa.calibration);
            }
            if (n.has("omni"))
                Node(n.at("omni"), n.field("omni"), {"gain_dbi"}).number("gain_dbi", s.omni.gain_dbi);
            if (n.has("ideal_beams"))
            {
                const Node b(n.at("ideal_beams"), n.field("ideal_beams"),
                             {"beam_count", "center_gain_dbi", "sidelobe_gain_dbi", "coverage_min_deg", "coverage_max_deg", "f_min_hz", "f_max_hz"});
                b.integer("beam_count", s.ideal_beams.beam_count, 1);
                b.number("center_gain_dbi", s.ideal_beams.center_gain_dbi);
                b.number("sidelobe_gain_dbi", s.ideal_beams.sidelobe_gain_dbi);
                b.number("coverage_min_deg", s.ideal_beams.coverage_min_deg);
                b.number("coverage_max_deg", s.ideal_beams.coverage_max_deg);
                b.number("f_min_hz", s.ideal_beams.f_min_hz);
                b.number("f_max_hz", s.ideal_beams.f_max_hz);
            }
        }

        void read_localization(const Node &n, LocalizationSettings &loc)
        {
            n.choice("method", loc.method, {{"csi", AoaMethod::csi}, {"probe", AoaMethod::probe}});
            if (n.has("csi_snr_db"))
            {
                if (n.at("csi_snr_db").is_null())
                    loc.csi_snr_db.reset();
                else
                {
                    double v = 0.0;
                    n.number("csi_snr_db", v);
                    loc.csi_snr_db = v;
                }
            }
            n.number("probe_rssi_sigma_db", loc.probe_rssi_sigma_db);
            if (n.has("smoothing"))
            {
                const Node sm(n.at("smoothing"), n.field("smoothing"), {"points_per_mhz", "window", "order", "compensate_path_loss_slope"});
                sm.number("points_per_mhz", loc.smoothing.points_per_mhz);
                sm.integer("window", loc.smoothing.window, 1);
                sm.integer("order", loc.smoothing.order, 0);
                sm.boolean("compensate_path_loss_slope", loc.smoothing.compensate_path_loss_slope);
            }
            if (n.has("rtt"))
            {
                const Node r(n.at("rtt"), n.field("rtt"), {"jitter_sigma_ns", "clock_resolution_ns", "group_size", "sifs_ns"});
                r.number("jitter_sigma_ns", loc.rtt.jitter_sigma_ns);
                r.number("clock_resolution_ns", loc.rtt.clock_resolution_ns);
                r.integer("group_size", loc.rtt.group_size, 1);
                r.number("sifs_ns", loc.rtt.sifs_ns);
            }
        }
    }

    Scenario parse_scenario(std::string_view json_text, const std::filesystem::path &base_dir)
    {
        const json doc = parse_json(json_text);
        const Node root(doc, "$", {"seed", "trials", "evaluation", "channel", "ru_widths_hz", "fading", "ap", "devices", "antennas", "localization", "mcs_table"});

        Scenario s;
        root.integer("seed", s.seed, 0);
        root.integer("trials", s.trials, 1);
        root.choice("evaluation", s.evaluation,
                    {{"comm", Evaluation::comm}, {"localization", Evaluation::localization}, {"both", Evaluation::both}});

        if (root.has("channel"))
        {
            const Node c(root.at("channel"), root.field("channel"), {"center_hz", "bandwidth_hz", "subcarrier_spacing_hz"});
            c.number("center_hz", s.channel.center_hz);
            c.number("bandwidth_hz", s.channel.bandwidth_hz);
            c.number("subcarrier_spacing_hz", s.channel.spacing_hz);
        }

        if (root.has("ru_widths_hz"))
        {
            const json &w = root.at("ru_widths_hz");
            if (!w.is_array())
                invalid(root.field("ru_widths_hz"), "expected an array of numbers");
            s.ru_widths_hz.clear();
            for (std::size_t i = 0; i < w.size(); ++i)
            {
                if (!w[i].is_number())
                    invalid(root.field("ru_widths_hz") + "[" + std::to_string(i) + "]", "expected a number");
                s.ru_widths_hz.push_back(w[i].get<double>());
            }
        }

        if (root.has("fading"))
        {
            const Node f(root.at("fading"), root.field("fading"), {"kind", "k_factor_db"});
            f.choice("kind", s.fading, {{"los", FadingKind::los}, {"rician", FadingKind::rician}});
            f.number("k_factor_db", s.k_factor_db);
        }

        if (!root.has("ap"))
            invalid(root.field("ap"), "missing");
        {
            const Node ap(root.at("ap"), root.field("ap"), {"position_m", "orientation_deg", "antenna", "radio"});
            s.ap.position_m = ap.point("position_m", false);
            ap.number("orientation_deg", s.ap.orientation_deg);
            ap.choice("antenna", s.ap.antenna, antenna_kinds);
            if (ap.has("radio"))
            {
                const Node r(ap.at("radio"), ap.field("radio"), {"tx_power_dbm", "noise_figure_db"});
                r.number("tx_power_dbm", s.ap.radio.tx_power_dbm);
                r.number("noise_figure_db", s.ap.radio.noise_figure_db);
            }
        }

        if (!root.has("devices") || !root.at("devices").is_array())
            invalid(root.field("devices"), "expected an array");
        const json &devs = root.at("devices");
        for (std::size_t i = 0; i < devs.size(); ++i)
        {
            const Node d(devs[i], root.field("devices") + "[" + std::to_string(i) + "]", {"id", "position_m", "orientation_deg", "antenna"});
            Device dev;
            dev.id = static_cast<std::uint32_t>(i);
            d.integer("id", dev.id, 0);
            dev.position_m = d.point("position_m", true);
            d.number("orientation_deg", dev.orientation_deg);
            d.choice("antenna", dev.antenna, antenna_kinds);
            s.devices.push_back(dev);
        }

        if (root.has("antennas"))
            read_antennas(Node(root.at("antennas"), root.field("antennas"), {"fsa", "omni", "ideal_beams"}), s);
        if (root.has("localization"))
            read_localization(Node(root.at("localization"), root.field("localization"),
                                   {"method", "csi_snr_db", "probe_rssi_sigma_db", "smoothing", "rtt"}),
                              s.localization);

        if (root.has("mcs_table"))
        {
            if (!root.at("mcs_table").is_string())
                invalid(root.field("mcs_table"), "expected a file path");
            std::filesystem::path p = root.at("mcs_table").get<std::string>();
            if (p.is_relative())
                p = base_dir / p;
            s.mcs_table = McsTable::load_csv(p);
        }

        s.validate();
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path)
    {
        return parse_scenario(read_text_file(path), path.parent_path());
    }

    BeamCalibration parse_calibration(std::string_view json_text)
    {
        const json doc = parse_json(json_text);
        BeamCalibration cal;
        read_calibration(Node(doc, "$", calibration_keys), cal);
        checked("calibration", [&] { cal.validate(); });
        return cal;
    }

    std::string calibration_to_json(const BeamCalibration &cal)
    {
        json j = json::object();
        j["f_ref_hz"] = cal.f_ref_hz;
        j["theta_ref_deg"] = cal.theta_ref_deg;
        j["slope_deg_per_hz"] = cal.slope_deg_per_hz;
        j["f_min_hz"] = cal.f_min_hz;
        j["f_max_hz"] = cal.f_max_hz;
        return j.dump(2) + "\n";
    }
}
