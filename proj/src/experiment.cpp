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

#include "fsalink/experiment.hpp"

#include "fsalink/error.hpp"
#include "fsalink/ofdma.hpp"
#include "fsalink/random.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

namespace fsalink
{
    std::string ru_suffix(double ru_width_hz)
    {
        std::array<char, 32> buf{};
        const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), ru_width_hz / 1e6);
        return "ru" + std::string(buf.data(), ptr) + "mhz";
    }

    namespace
    {
        using JobOutput = std::vector<std::pair<std::string, Sample>>;

        struct Job
        {
            const Device *device;
            std::uint64_t trial;
        };

        // Jobs in (device id, trial) order; the merge below follows that order.
        std::vector<Job> make_jobs(const Scenario &s)
        {
            std::vector<const Device *> devices;
            for (const Device &d : s.devices)
                devices.push_back(&d);
            std::sort(devices.begin(), devices.end(), [](const Device *a, const Device *b) { return a->id < b->id; });

            std::vector<Job> jobs;
            jobs.reserve(devices.size() * s.trials);
            for (const Device *d : devices)
                for (std::uint64_t t = 0; t < s.trials; ++t)
                    jobs.push_back({d, t});
            return jobs;
        }

        template <class F>
        SummaryStats run_jobs(const std::vector<Job> &jobs, const RunOptions &options, F &&fn)
        {
            std::vector<JobOutput> slots(jobs.size());
            std::vector<std::exception_ptr> failures(jobs.size());
            std::atomic<std::size_t> next{0};

            auto worker = [&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++)
                {
                    try
                    {
                        slots[i] = fn(jobs[i]);
                    }
                    catch (...)
                    {
                        failures[i] = std::current_exception();
                    }
                }
            };

            unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
            threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
            if (threads <= 1)
                worker();
            else
            {
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t)
                    pool.emplace_back(worker);
                for (std::thread &t : pool)
                    t.join();
            }

            for (const auto &f : failures)
                if (f)
                    std::rethrow_exception(f);

            SummaryStats stats;
            for (const JobOutput &out : slots)
                for (const auto &[metric, sample] : out)
                    stats.add(metric, sample);
            return stats;
        }

        // Angular interval [lo, hi] a pattern can steer to on [f_lo, f_hi];
        // nullopt when the pattern does not steer (omni).
        std::optional<std::pair<double, double>> steering_span(const AntennaPattern &p, double f_lo, double f_hi)
        {
            if (const auto *fsa = std::get_if<FsaModel>(&p))
            {
                const double a = beam_angle(fsa->calibration, f_lo), b = beam_angle(fsa->calibration, f_hi);
                return std::pair{std::min(a, b), std::max(a, b)};
            }
            if (const auto *ideal = std::get_if<IdealBeamModel>(&p))
                return std::pair{ideal->coverage_min_deg, ideal->coverage_max_deg};
            return std::nullopt;
        }

        bool within(const std::optional<std::pair<double, double>> &span, double theta)
        {
            return !span || (theta >= span->first && theta <= span->second);
        }

        std::uint64_t job_key(const Scenario &s, const Job &job, rng::Stream stream)
        {
            return rng::derive_key(s.seed, {job.device->id, job.trial, static_cast<std::uint64_t>(stream)});
        }

        FadingModel job_fading(const Scenario &s, const Job &job)
        {
            return FadingModel{s.fading, s.k_factor_db, rng::derive_key(s.seed, {job.device->id, job.trial}), job.device->id};
        }

        const char *comm_metrics[] = {"delta_snr_db", "rate_improvement_pct", "range_improvement_pct", "rate_new_link_mbps", "rate_no_link"};
        const char *loc_metrics[] = {"aoa_error_deg", "distance_error_m", "position_error_m"};
    }

    SummaryStats run_comm_eval(const Scenario &scenario, const RunOptions &options)
    {
        if (scenario.evaluation == Evaluation::localization)
            throw Error(ErrorCode::config, "scenario does not request the comm evaluation");
        scenario.validate();

        const SubcarrierGrid &grid = scenario.channel;
        const double f_lo = grid.frequency(0), f_hi = grid.frequency(grid.count() - 1);
        const AntennaPattern omni = scenario.omni;
        const McsTable &table = scenario.mcs();

        std::vector<RuPlan> plans;
        for (double w : scenario.ru_widths_hz)
            plans.push_back(partition_rus(grid.bandwidth_hz, w, grid));

        SummaryStats stats = run_jobs(make_jobs(scenario), options, [&](const Job &job) {
            const LinkGeometry g = scenario.geometry(*job.device);
            const AntennaPattern ap_pattern = scenario.pattern(scenario.ap.antenna);
            const AntennaPattern dev_pattern = scenario.pattern(job.device->antenna);
            const bool covered = within(steering_span(ap_pattern, f_lo, f_hi), g.azimuth_at_a_deg) &&
                                 within(steering_span(dev_pattern, f_lo, f_hi), g.azimuth_at_b_deg);
            const std::string prefix = covered ? "" : "coverage_limited.";

            // identical geometry and fading draw; only the antennas differ
            const FadingModel fading = job_fading(scenario, job);
            const CsiVector csi_test = synthesize_csi(g, ap_pattern, dev_pattern, grid, scenario.ap.radio, fading);
            const CsiVector csi_base = synthesize_csi(g, omni, omni, grid, scenario.ap.radio, fading);

            JobOutput out;
            for (const RuPlan &plan : plans)
            {
                const std::string suffix = "." + ru_suffix(plan.ru_width_hz);
                const RuReport test = measure_ru_power(csi_test, plan, job.device->id, AntennaLabel::fsa);
                const RuReport base = measure_ru_power(csi_base, plan, job.device->id, AntennaLabel::omni);
                const double delta = delta_snr(test, base);
                const Sample at{job.device->id, job.trial, 0.0};
                auto emit = [&](const char *metric, double v) {
                    Sample s = at;
                    s.value = v;
                    out.emplace_back(prefix + metric + suffix, s);
                };

                emit("delta_snr_db", delta);
                emit("range_improvement_pct", range_improvement_pct(delta));

                const double noise = noise_floor_dbm(plan.ru_width_hz, scenario.ap.radio.noise_figure_db);
                const RateImprovement r = rate_improvement(table, snr_db(test.best_power_dbm(), noise),
                                                           snr_db(base.best_power_dbm(), noise), plan.ru_width_hz);
                switch (r.outcome)
                {
                case RateImprovement::Outcome::percent:
                    emit("rate_improvement_pct", r.value);
                    break;
                case RateImprovement::Outcome::new_link:
                    emit("rate_new_link_mbps", r.value);
                    break;
                case RateImprovement::Outcome::no_link:
                    emit("rate_no_link", delta);
                    break;
                }
            }
            return out;
        });

        for (double w : scenario.ru_widths_hz)
            for (const char *m : comm_metrics)
            {
                stats.declare(std::string(m) + "." + ru_suffix(w));
                stats.declare("coverage_limited." + std::string(m) + "." + ru_suffix(w));
            }
        return stats;
    }

    SummaryStats run_localization_eval(const Scenario &scenario, const RunOptions &options)
    {
        if (scenario.evaluation == Evaluation::comm)
            throw Error(ErrorCode::config, "scenario does not request the localization evaluation");
        scenario.validate();

        const FsaModel &fsa = scenario.fsa;
        const LocalizationSettings &loc = scenario.localization;
        const SubcarrierGrid &grid = scenario.channel;

        std::pair<double, double> span;
        if (loc.method == AoaMethod::csi)
            span = *steering_span(fsa, grid.frequency(0), grid.frequency(grid.count() - 1));
        else
        {
            const std::vector<double> ch = RssiScan::default_channels();
            span = *steering_span(fsa, ch.front(), ch.back());
        }

        SummaryStats stats = run_jobs(make_jobs(scenario), options, [&](const Job &job) {
            const LinkGeometry g = scenario.geometry(*job.device);
            const AntennaPattern dev_pattern = scenario.pattern(job.device->antenna);
            const double truth = g.azimuth_at_a_deg;
            const std::string prefix = within(span, truth) ? "" : "coverage_limited.";

            JobOutput out;
            auto emit = [&](const std::string &metric, double v) { out.emplace_back(metric, Sample{job.device->id, job.trial, v}); };

            std::optional<double> aoa, dist;
            try
            {
                if (loc.method == AoaMethod::csi)
                {
                    CsiVector csi = synthesize_csi(g, fsa, dev_pattern, grid, scenario.ap.radio, job_fading(scenario, job));
                    if (loc.csi_snr_db)
                        add_measurement_noise(csi.power_dbm, *loc.csi_snr_db, job_key(scenario, job, rng::Stream::csi_noise));
                    aoa = aoa_from_csi(csi, fsa.calibration, loc.smoothing).angle_deg;
                }
                else
                {
                    RssiScan scan{RssiScan::default_channels(), {}};
                    const std::uint64_t key = job_key(scenario, job, rng::Stream::probe_noise);
                    for (std::size_t c = 0; c < scan.channel_hz.size(); ++c)
                    {
                        const double f = scan.channel_hz[c];
                        double p = scenario.ap.radio.tx_power_dbm + fsa_gain(fsa, f, truth) +
                                   pattern_gain(dev_pattern, f, g.azimuth_at_b_deg) - fspl_db(g.distance_m, f);
                        if (loc.probe_rssi_sigma_db > 0.0)
                            p += loc.probe_rssi_sigma_db * rng::normal(key, c);
                        scan.rssi_dbm.push_back(p);
                    }
                    aoa = aoa_from_probe_scan(scan, fsa.calibration, loc.smoothing).angle_deg;
                }
                emit(prefix + "aoa_error_deg", std::abs(*aoa - truth));
            }
            catch (const Error &e)
            {
                emit("failed." + std::string(to_string(e.code())), 1.0);
            }

            try
            {
                const RttSampleGroup group = simulate_rtt_exchange(g.distance_m, loc.rtt, job_key(scenario, job, rng::Stream::rtt_jitter));
                dist = rtt_distance(group);
                emit("distance_error_m", std::abs(*dist - g.distance_m));
            }
            catch (const Error &e)
            {
                emit("failed." + std::string(to_string(e.code())), 1.0);
            }

            if (aoa && dist && *dist > 0.0)
            {
                const PositionEstimate est = fuse(*aoa, *dist);
                const PositionEstimate ref = fuse(truth, g.distance_m);
                emit(prefix + "position_error_m", std::hypot(est.x_m - ref.x_m, est.y_m - ref.y_m));
            }
            return out;
        });

        for (const char *m : loc_metrics)
        {
            stats.declare(m);
            if (std::string_view(m) != "distance_error_m")
                stats.declare("coverage_limited." + std::string(m));
        }
        return stats;
    }

    SummaryStats run_scenario(const Scenario &scenario, const RunOptions &options)
    {
        SummaryStats stats;
        if (scenario.evaluation != Evaluation::localization)
            stats = run_comm_eval(scenario, options);
        if (scenario.evaluation != Evaluation::comm)
            for (auto &[name, samples] : run_localization_eval(scenario, options).metrics)
                stats.metrics[name] = std::move(samples);
        return stats;
    }
}
