#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <fstream>
#include <limits>

#include "afdm/ambiguity.hpp"
#include "afdm/baselines.hpp"
#include "afdm/comm.hpp"
#include "afdm/estimator.hpp"
#include "afdm/radar.hpp"
#include "afdm/rng.hpp"
#include "csv.hpp"

namespace afdm::cli {

namespace fs = std::filesystem;

void check_subcommand(const std::string& subcommand, ExperimentKind kind) {
  const bool ok = subcommand == "ambiguity"
                      ? (kind == ExperimentKind::ambiguity_cut || kind == ExperimentKind::ambiguity_surface)
                      : subcommand == to_string(kind);
  if (!ok)
    throw ValidationError("config declares a " + to_string(kind) + " experiment; run it with the matching subcommand");
}

std::string c2_slug(const std::string& c2_text) {
  std::string out;
  for (char c : c2_text) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+';
    out += keep ? c : '_';
  }
  return out;
}

namespace {

// One curve or cut: AFDM once per c2 entry, OFDM and OTFS once.
struct Series {
  WaveformFamily family;
  std::string c2;  // "-" for the chirp-free families
  WaveformParams params;

  std::string slug() const {
    return family == WaveformFamily::afdm ? "afdm_c2-" + c2_slug(c2) : to_string(family);
  }
};

std::vector<Series> expand_series(const ExperimentConfig& cfg) {
  std::vector<Series> out;
  for (auto f : cfg.waveform.families) {
    if (f == WaveformFamily::afdm) {
      for (const auto& c2 : cfg.waveform.c2) out.push_back({f, c2, cfg.params(c2)});
    } else {
      WaveformParams p = cfg.params(cfg.waveform.c2.front());
      if (f == WaveformFamily::ofdm) p = ofdm_params(p);
      else p.c2 = ChirpRate::zero();
      out.push_back({f, "-", p});
    }
  }
  return out;
}

// Prefix-free pilot for the ambiguity analysis.
TimeSignal ambiguity_pilot(const Series& s) {
  if (s.family == WaveformFamily::otfs) {
    TimeSignal frame = otfs_modulate(OtfsGrid::pilot_for(s.params), s.params);
    return remove_cpp(frame, s.params);
  }
  return radar_pilot(s.params);
}

double to_db(Complex v) {
  const double a = std::abs(v);
  return a > 0.0 ? 20.0 * std::log10(a) : -std::numeric_limits<double>::infinity();
}

std::string snr_slug(double snr) { return std::isinf(snr) ? "inf" : c2_slug(format_number(snr)); }

struct Outputs {
  fs::path dir;
  std::string name;
  std::vector<fs::path> files;

  fs::path next(const std::string& suffix) {
    files.push_back(dir / (name + "_" + suffix + ".csv"));
    return files.back();
  }
};

void run_ambiguity_cut(const ExperimentConfig& cfg, Outputs& out) {
  const auto series = expand_series(cfg);
  const bool delay_axis = cfg.ambiguity.cut == CutAxis::zero_doppler;
  CsvWriter metrics(out.next(delay_axis ? "zero-doppler_metrics" : "zero-delay_metrics"),
                    {"waveform", "c2", "mainlobe_width_bins", "pslr_db", "islr_db", "max_offpeak_db"});
  for (const auto& s : series) {
    const TimeSignal pilot = ambiguity_pilot(s);
    CVector cut;
    if (delay_axis) {
      cut = zero_doppler_cut(pilot);
      CsvWriter w(out.next("zero-doppler_" + s.slug()), {"waveform", "c2", "lag", "re", "im", "magnitude_db"});
      const int n = static_cast<int>(pilot.samples.size());
      for (int l = -(n - 1); l < n; ++l) {
        const Complex v = cut[static_cast<std::size_t>(l + n - 1)];
        w.cell(to_string(s.family)).cell(s.c2).cell(l).cell(v.real()).cell(v.imag()).cell(to_db(v));
        w.end_row();
      }
    } else {
      const auto grid = default_doppler_grid(s.params, cfg.ambiguity.doppler_oversample);
      cut = zero_delay_cut(pilot, grid);
      CsvWriter w(out.next("zero-delay_" + s.slug()), {"waveform", "c2", "doppler_hz", "re", "im", "magnitude_db"});
      for (std::size_t i = 0; i < grid.size(); ++i) {
        w.cell(to_string(s.family)).cell(s.c2).cell(grid[i]).cell(cut[i].real()).cell(cut[i].imag()).cell(to_db(cut[i]));
        w.end_row();
      }
    }
    const AbfMetrics m = abf_metrics(cut);
    metrics.cell(to_string(s.family)).cell(s.c2).cell(m.mainlobe_width_bins).cell(m.pslr_db).cell(m.islr_db);
    metrics.cell(m.max_offpeak_db);
    metrics.end_row();
  }
}

void run_ambiguity_surface(const ExperimentConfig& cfg, Outputs& out) {
  for (const auto& s : expand_series(cfg)) {
    const TimeSignal pilot = ambiguity_pilot(s);
    const auto grid = default_doppler_grid(s.params, cfg.ambiguity.doppler_oversample);
    const AmbiguitySurface surf = ambiguity_surface(pilot, cfg.ambiguity.lag_min, cfg.ambiguity.lag_max, grid);
    CsvWriter w(out.next("surface_" + s.slug()), {"waveform", "c2", "doppler_hz", "lag", "magnitude_db"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (int l = surf.first_lag; l < surf.first_lag + surf.lag_count; ++l) {
        w.cell(to_string(s.family)).cell(s.c2).cell(grid[i]).cell(l).cell(to_db(surf.at(i, l)));
        w.end_row();
      }
    }
  }
}

void run_range_profile(const ExperimentConfig& cfg, Outputs& out) {
  const auto series = expand_series(cfg);
  std::optional<CsvWriter> rates;
  if (cfg.radar.trials > 0)
    rates.emplace(out.next("detection-rate"),
                  std::vector<std::string>{"waveform", "c2", "snr_db", "trials", "all_detected", "rate",
                                           "false_alarms", "seed"});
  for (const auto& s : series) {
    RadarScenario sc{s.params, s.family == WaveformFamily::otfs ? PilotKind::otfs : PilotKind::afdm,
                     cfg.target_geometry(), cfg.cfar, cfg.radar.filter};
    for (std::size_t i = 0; i < cfg.radar.snr_db.size(); ++i) {
      const double snr = cfg.radar.snr_db[i];
      // The same noise seed for every waveform at a given SNR.
      const std::uint64_t seed = mix_seed(cfg.seed, i);
      const RadarFrame frame = simulate_radar_frame(sc, snr, seed);
      const auto thresholds = cfar_thresholds(frame.profile, cfg.cfar);
      const auto detected = frame.report.bins();
      CsvWriter w(out.next("range-profile_" + s.slug() + "_snr-" + snr_slug(snr)),
                  {"waveform", "c2", "snr_db", "bin", "range_m", "magnitude", "threshold", "detected"});
      for (std::size_t k = 0; k < frame.profile.size(); ++k) {
        const int bin = frame.profile.first_bin + static_cast<int>(k);
        const bool hit = std::find(detected.begin(), detected.end(), bin) != detected.end();
        w.cell(to_string(s.family)).cell(s.c2).cell(snr).cell(bin).cell(bin * frame.profile.bin_to_meters);
        w.cell(std::abs(frame.profile.response[k])).cell(thresholds[k]).cell(hit ? 1 : 0);
        w.end_row();
      }
      if (rates) {
        const DetectionStats st = detection_rate(sc, snr, cfg.radar.trials, mix_seed(seed, 0x7261746573ULL));
        rates->cell(to_string(s.family)).cell(s.c2).cell(snr).cell(st.trials).cell(st.all_detected).cell(st.rate());
        rates->cell(st.false_alarms).cell(static_cast<unsigned long long>(cfg.seed));
        rates->end_row();
      }
    }
  }
}

void run_ber(const ExperimentConfig& cfg, Outputs& out) {
  CsvWriter w(out.next("ber"), {"waveform", "c2", "snr_db", "bits", "errors", "ber", "seed"});
  const BerBudget budget{cfg.ber.max_bits, cfg.ber.max_errors, cfg.ber.batch};
  for (const auto& s : expand_series(cfg)) {
    const BerSetup setup{s.params, s.family, cfg.ber.channel, cfg.ber.paths};
    const BerCurve curve = ber_curve(setup, cfg.ber.snr_db, budget, cfg.seed);
    for (const auto& p : curve.points) {
      w.cell(to_string(s.family)).cell(s.c2).cell(p.snr_db).cell(static_cast<unsigned long long>(p.bits));
      w.cell(static_cast<unsigned long long>(p.bit_errors)).cell(p.ber()).cell(static_cast<unsigned long long>(cfg.seed));
      w.end_row();
    }
  }
}

void run_complexity(const ExperimentConfig& cfg, Outputs& out) {
  CsvWriter w(out.next("complexity"), {"variant", "n", "cp_len", "complex_mults", "complex_adds"});
  for (auto f : cfg.complexity.filters) {
    for (const auto& row : complexity_probe(f, cfg.complexity.sizes, cfg.complexity.cp_fraction, cfg.seed)) {
      w.cell(to_string(row.variant)).cell(row.nc).cell(row.cp_len);
      w.cell(static_cast<unsigned long long>(row.ops.complex_mults));
      w.cell(static_cast<unsigned long long>(row.ops.complex_adds));
      w.end_row();
    }
  }
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  config.validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  Outputs out{out_dir, config.name, {}};
  switch (config.kind) {
    case ExperimentKind::ambiguity_cut: run_ambiguity_cut(config, out); break;
    case ExperimentKind::ambiguity_surface: run_ambiguity_surface(config, out); break;
    case ExperimentKind::range_profile: run_range_profile(config, out); break;
    case ExperimentKind::ber: run_ber(config, out); break;
    case ExperimentKind::complexity: run_complexity(config, out); break;
  }

  const fs::path meta = out_dir / (config.name + ".meta.cfg");
  std::ofstream m(meta, std::ios::binary);
  if (!m) throw std::runtime_error("cannot write " + meta.string());
  m << "# afdm-sim " << AFDM_VERSION << "\n# seed " << config.seed << "\n";
  for (const auto& f : out.files) m << "# output " << f.filename().string() << "\n";
  m << "\n" << echo_config(config);
  if (!m) throw std::runtime_error("cannot write " + meta.string());

  RunReport report{out.files};
  report.files.push_back(meta);
  return report;
}

}  // namespace afdm::cli
