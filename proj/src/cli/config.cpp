#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "csv.hpp"

namespace afdm::cli {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ambiguity_cut: return "ambiguity-cut";
    case ExperimentKind::ambiguity_surface: return "ambiguity-surface";
    case ExperimentKind::range_profile: return "range-profile";
    case ExperimentKind::ber: return "ber";
    case ExperimentKind::complexity: return "complexity";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::ambiguity_cut, ExperimentKind::ambiguity_surface, ExperimentKind::range_profile,
                 ExperimentKind::ber, ExperimentKind::complexity})
    if (to_string(k) == name) return k;
  throw ValidationError("unknown experiment kind '" + name +
                        "' (expected ambiguity-cut, ambiguity-surface, range-profile, ber or complexity)");
}

namespace {

std::string cut_name(CutAxis a) { return a == CutAxis::zero_doppler ? "zero-doppler" : "zero-delay"; }

std::string geometry_name(Geometry g) { return g == Geometry::monostatic ? "monostatic" : "bistatic"; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ValidationError("empty entry in list '" + value + "'");
    items.push_back(item);
  }
  if (items.empty()) throw ValidationError("empty list");
  return items;
}

long long parse_integer(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (!std::isfinite(v) || std::floor(v) != v || std::abs(v) > 9.0e15)
    throw ValidationError(what + ": '" + text + "' is not an integer");
  return static_cast<long long>(v);
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ValidationError(what + ": '" + text + "' is not a nonnegative integer");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const long long v = parse_integer(text, what);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ValidationError(what + ": '" + text + "' is out of range");
  return static_cast<int>(v);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

template <class T, class F>
std::string join_map(const std::vector<T>& items, F f) {
  std::vector<std::string> s;
  for (const auto& i : items) s.push_back(f(i));
  return join(s);
}

using Setter = std::function<void(const std::string&)>;

struct SectionTable {
  std::map<std::string, Setter> keys;
};

}  // namespace

WaveformParams ExperimentConfig::params(const std::string& c2_text) const {
  const auto& w = waveform;
  WaveformParams probe;
  probe.nc = w.nc;
  probe.subcarrier_spacing_hz = w.subcarrier_spacing_hz;
  probe.k_max = w.k_max;
  probe.cp_len = w.cp_len;
  probe.carrier_hz = w.carrier_hz;
  probe.validate();
  return make_params(w.nc, w.subcarrier_spacing_hz, w.k_max, ChirpRate::parse(c2_text, w.nc), w.cp_len, w.carrier_hz,
                     w.geometry);
}

std::vector<TargetGeometry> ExperimentConfig::target_geometry() const {
  std::vector<TargetGeometry> out;
  for (const auto& t : targets) out.push_back({t.range_tx_m, t.range_rx_m, t.velocity_mps, {t.gain, 0.0}});
  return out;
}

void ExperimentConfig::validate() const {
  if (name.empty() || name.find_first_of("/\\") != std::string::npos)
    throw ValidationError("experiment name must be nonempty and contain no path separators");
  if (waveform.families.empty()) throw ValidationError("waveform.families must list at least one family");
  if (waveform.c2.empty()) throw ValidationError("waveform.c2 must list at least one value");
  for (const auto& c2 : waveform.c2) (void)params(c2);
  for (auto f : waveform.families) {
    if (f == WaveformFamily::otfs) {
      const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(waveform.nc))));
      if (side * side != waveform.nc)
        throw ValidationError("OTFS needs Nc to be a perfect square (got " + std::to_string(waveform.nc) + ")");
    }
  }
  auto check_snrs = [](const std::vector<double>& snrs, const char* what) {
    if (snrs.empty()) throw ValidationError(std::string(what) + " must list at least one SNR");
    for (double s : snrs)
      if (std::isnan(s) || (std::isinf(s) && s < 0))
        throw ValidationError(std::string(what) + ": SNR must be finite or +inf");
  };

  switch (kind) {
    case ExperimentKind::ambiguity_cut:
    case ExperimentKind::ambiguity_surface:
      if (ambiguity.doppler_oversample < 1) throw ValidationError("ambiguity.doppler_oversample must be >= 1");
      if (kind == ExperimentKind::ambiguity_surface) {
        if (ambiguity.lag_min > ambiguity.lag_max) throw ValidationError("ambiguity.lag_min must not exceed lag_max");
        if (ambiguity.lag_min <= -waveform.nc || ambiguity.lag_max >= waveform.nc)
          throw ValidationError("ambiguity lags must lie inside (-Nc, Nc)");
      }
      break;
    case ExperimentKind::range_profile: {
      if (targets.empty()) throw ValidationError("range-profile needs at least one [target] section");
      for (auto f : waveform.families)
        if (f == WaveformFamily::ofdm)
          throw ValidationError("range-profile supports the afdm and otfs pilots only");
      check_snrs(radar.snr_db, "radar.snr_db");
      if (radar.trials < 0) throw ValidationError("radar.trials must be >= 0");
      cfar.validate();
      for (const auto& c2 : waveform.c2) {
        RadarScenario sc{params(c2), PilotKind::afdm, target_geometry(), cfar, radar.filter};
        (void)sc.channel();
      }
      break;
    }
    case ExperimentKind::ber:
      check_snrs(ber.snr_db, "ber.snr_db");
      if (ber.paths < 1) throw ValidationError("ber.paths must be >= 1");
      if (ber.max_bits == 0) throw ValidationError("ber.max_bits must be positive");
      if (ber.batch < 1) throw ValidationError("ber.batch must be >= 1");
      break;
    case ExperimentKind::complexity:
      if (complexity.sizes.empty()) throw ValidationError("complexity.sizes must list at least one size");
      for (int n : complexity.sizes)
        if (n < 2 || n % 2 != 0) throw ValidationError("complexity sizes must be even and >= 2");
      if (!(complexity.cp_fraction >= 0.0 && complexity.cp_fraction < 1.0))
        throw ValidationError("complexity.cp_fraction must be in [0, 1)");
      if (complexity.filters.empty()) throw ValidationError("complexity.filters must list at least one variant");
      break;
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::set<std::string> seen_unique;

  struct TargetDraft {
    std::optional<double> range, tx, rx;
    double velocity = 0.0, gain = 1.0;
  };
  std::vector<TargetDraft> drafts;

  std::map<std::string, std::function<SectionTable()>> sections;
  sections["experiment"] = [&] {
    return SectionTable{{{"kind", [&](const std::string& v) { cfg.kind = experiment_kind_from_string(v); }},
                         {"name", [&](const std::string& v) { cfg.name = v; }},
                         {"seed", [&](const std::string& v) { cfg.seed = parse_unsigned(v, "experiment.seed"); }}}};
  };
  sections["waveform"] = [&] {
    auto& w = cfg.waveform;
    return SectionTable{{
        {"nc", [&](const std::string& v) { w.nc = parse_int(v, "waveform.nc"); }},
        {"subcarrier_spacing_hz",
         [&](const std::string& v) { w.subcarrier_spacing_hz = parse_number(v, "waveform.subcarrier_spacing_hz"); }},
        {"k_max", [&](const std::string& v) { w.k_max = parse_int(v, "waveform.k_max"); }},
        {"cp_len", [&](const std::string& v) { w.cp_len = parse_int(v, "waveform.cp_len"); }},
        {"carrier_hz", [&](const std::string& v) { w.carrier_hz = parse_number(v, "waveform.carrier_hz"); }},
        {"geometry",
         [&](const std::string& v) {
           if (v == "monostatic") w.geometry = Geometry::monostatic;
           else if (v == "bistatic") w.geometry = Geometry::bistatic;
           else throw ValidationError("waveform.geometry must be monostatic or bistatic");
         }},
        {"families",
         [&](const std::string& v) {
           w.families.clear();
           for (const auto& f : split_list(v)) w.families.push_back(waveform_family_from_string(f));
         }},
        {"c2", [&](const std::string& v) { w.c2 = split_list(v); }},
    }};
  };
  sections["target"] = [&] {
    drafts.emplace_back();
    auto* d = &drafts.back();
    return SectionTable{{
        {"range_m", [d](const std::string& v) { d->range = parse_number(v, "target.range_m"); }},
        {"range_tx_m", [d](const std::string& v) { d->tx = parse_number(v, "target.range_tx_m"); }},
        {"range_rx_m", [d](const std::string& v) { d->rx = parse_number(v, "target.range_rx_m"); }},
        {"velocity_mps", [d](const std::string& v) { d->velocity = parse_number(v, "target.velocity_mps"); }},
        {"gain", [d](const std::string& v) { d->gain = parse_number(v, "target.gain"); }},
    }};
  };
  sections["radar"] = [&] {
    auto& r = cfg.radar;
    return SectionTable{{
        {"snr_db",
         [&](const std::string& v) {
           r.snr_db.clear();
           for (const auto& s : split_list(v)) r.snr_db.push_back(parse_number(s, "radar.snr_db"));
         }},
        {"filter", [&](const std::string& v) { r.filter = matched_filter_from_string(v); }},
        {"trials", [&](const std::string& v) { r.trials = parse_int(v, "radar.trials"); }},
    }};
  };
  sections["cfar"] = [&] {
    auto& c = cfg.cfar;
    return SectionTable{{
        {"guard", [&](const std::string& v) { c.guard = parse_int(v, "cfar.guard"); }},
        {"train", [&](const std::string& v) { c.train = parse_int(v, "cfar.train"); }},
        {"pfa", [&](const std::string& v) { c.pfa = parse_number(v, "cfar.pfa"); }},
        {"peak_radius", [&](const std::string& v) { c.peak_radius = parse_int(v, "cfar.peak_radius"); }},
        {"floor_db", [&](const std::string& v) { c.floor_db = parse_number(v, "cfar.floor_db"); }},
    }};
  };
  sections["ambiguity"] = [&] {
    auto& a = cfg.ambiguity;
    return SectionTable{{
        {"cut",
         [&](const std::string& v) {
           if (v == "zero-doppler") a.cut = CutAxis::zero_doppler;
           else if (v == "zero-delay") a.cut = CutAxis::zero_delay;
           else throw ValidationError("ambiguity.cut must be zero-doppler or zero-delay");
         }},
        {"doppler_oversample",
         [&](const std::string& v) { a.doppler_oversample = parse_int(v, "ambiguity.doppler_oversample"); }},
        {"lag_min", [&](const std::string& v) { a.lag_min = parse_int(v, "ambiguity.lag_min"); }},
        {"lag_max", [&](const std::string& v) { a.lag_max = parse_int(v, "ambiguity.lag_max"); }},
    }};
  };
  sections["ber"] = [&] {
    auto& b = cfg.ber;
    return SectionTable{{
        {"channel", [&](const std::string& v) { b.channel = ber_channel_from_string(v); }},
        {"paths", [&](const std::string& v) { b.paths = parse_int(v, "ber.paths"); }},
        {"snr_db",
         [&](const std::string& v) {
           b.snr_db.clear();
           for (const auto& s : split_list(v)) b.snr_db.push_back(parse_number(s, "ber.snr_db"));
         }},
        {"max_bits", [&](const std::string& v) { b.max_bits = parse_unsigned(v, "ber.max_bits"); }},
        {"max_errors", [&](const std::string& v) { b.max_errors = parse_unsigned(v, "ber.max_errors"); }},
        {"batch", [&](const std::string& v) { b.batch = parse_int(v, "ber.batch"); }},
    }};
  };
  sections["complexity"] = [&] {
    auto& c = cfg.complexity;
    return SectionTable{{
        {"sizes",
         [&](const std::string& v) {
           c.sizes.clear();
           for (const auto& s : split_list(v)) c.sizes.push_back(parse_int(s, "complexity.sizes"));
         }},
        {"cp_fraction", [&](const std::string& v) { c.cp_fraction = parse_number(v, "complexity.cp_fraction"); }},
        {"filters",
         [&](const std::string& v) {
           c.filters.clear();
           for (const auto& s : split_list(v)) c.filters.push_back(matched_filter_from_string(s));
         }},
    }};
  };

  std::optional<SectionTable> current;
  std::string current_name;
  std::set<std::string> keys_in_section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto where = [&] { return origin + ":" + std::to_string(line_no) + ": "; };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ValidationError("malformed section header '" + line + "'");
        current_name = trim(std::string_view(line).substr(1, line.size() - 2));
        auto it = sections.find(current_name);
        if (it == sections.end()) throw ValidationError("unknown section [" + current_name + "]");
        if (current_name != "target" && !seen_unique.insert(current_name).second)
          throw ValidationError("section [" + current_name + "] appears twice");
        current = it->second();
        keys_in_section.clear();
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ValidationError("expected 'key = value', got '" + line + "'");
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (!current) throw ValidationError("key '" + key + "' outside of any section");
      auto k = current->keys.find(key);
      if (k == current->keys.end()) throw ValidationError("unknown key '" + key + "' in [" + current_name + "]");
      if (!keys_in_section.insert(key).second)
        throw ValidationError("key '" + key + "' repeated in [" + current_name + "]");
      if (value.empty()) throw ValidationError("key '" + key + "' has no value");
      k->second(value);
    } catch (const ValidationError& e) {
      throw ValidationError(where() + e.what());
    }
  }

  for (std::size_t i = 0; i < drafts.size(); ++i) {
    const auto& d = drafts[i];
    const std::string tag = "target " + std::to_string(i + 1) + ": ";
    TargetSection t;
    if (d.range && (d.tx || d.rx)) throw ValidationError(origin + ": " + tag + "give range_m or range_tx_m/range_rx_m, not both");
    if (d.range) {
      t.range_tx_m = t.range_rx_m = *d.range;
    } else if (d.tx && d.rx) {
      t.range_tx_m = *d.tx;
      t.range_rx_m = *d.rx;
    } else {
      throw ValidationError(origin + ": " + tag + "missing range_m (or both range_tx_m and range_rx_m)");
    }
    if (cfg.waveform.geometry == Geometry::monostatic && t.range_tx_m != t.range_rx_m)
      throw ValidationError(origin + ": " + tag + "monostatic geometry needs range_tx_m == range_rx_m");
    t.velocity_mps = d.velocity;
    t.gain = d.gain;
    cfg.targets.push_back(t);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string echo_config(const ExperimentConfig& c) {
  auto num = [](double v) { return format_number(v); };
  std::ostringstream o;
  o << "[experiment]\n"
    << "kind = " << to_string(c.kind) << "\n"
    << "name = " << c.name << "\n"
    << "seed = " << c.seed << "\n\n";
  const auto& w = c.waveform;
  o << "[waveform]\n"
    << "nc = " << w.nc << "\n"
    << "subcarrier_spacing_hz = " << num(w.subcarrier_spacing_hz) << "\n"
    << "k_max = " << w.k_max << "\n"
    << "cp_len = " << w.cp_len << "\n"
    << "carrier_hz = " << num(w.carrier_hz) << "\n"
    << "geometry = " << geometry_name(w.geometry) << "\n"
    << "families = " << join_map(w.families, [](WaveformFamily f) { return to_string(f); }) << "\n"
    << "c2 = " << join(w.c2) << "\n\n";
  for (const auto& t : c.targets) {
    o << "[target]\n";
    if (t.range_tx_m == t.range_rx_m) {
      o << "range_m = " << num(t.range_tx_m) << "\n";
    } else {
      o << "range_tx_m = " << num(t.range_tx_m) << "\n"
        << "range_rx_m = " << num(t.range_rx_m) << "\n";
    }
    o << "velocity_mps = " << num(t.velocity_mps) << "\n"
      << "gain = " << num(t.gain) << "\n\n";
  }
  o << "[radar]\n"
    << "snr_db = " << join_map(c.radar.snr_db, num) << "\n"
    << "filter = " << to_string(c.radar.filter) << "\n"
    << "trials = " << c.radar.trials << "\n\n";
  o << "[cfar]\n"
    << "guard = " << c.cfar.guard << "\n"
    << "train = " << c.cfar.train << "\n"
    << "pfa = " << num(c.cfar.pfa) << "\n"
    << "peak_radius = " << c.cfar.peak_radius << "\n"
    << "floor_db = " << num(c.cfar.floor_db) << "\n\n";
  o << "[ambiguity]\n"
    << "cut = " << cut_name(c.ambiguity.cut) << "\n"
    << "doppler_oversample = " << c.ambiguity.doppler_oversample << "\n"
    << "lag_min = " << c.ambiguity.lag_min << "\n"
    << "lag_max = " << c.ambiguity.lag_max << "\n\n";
  o << "[ber]\n"
    << "channel = " << to_string(c.ber.channel) << "\n"
    << "paths = " << c.ber.paths << "\n"
    << "snr_db = " << join_map(c.ber.snr_db, num) << "\n"
    << "max_bits = " << c.ber.max_bits << "\n"
    << "max_errors = " << c.ber.max_errors << "\n"
    << "batch = " << c.ber.batch << "\n\n";
  o << "[complexity]\n"
    << "sizes = " << join_map(c.complexity.sizes, [](int n) { return std::to_string(n); }) << "\n"
    << "cp_fraction = " << num(c.complexity.cp_fraction) << "\n"
    << "filters = " << join_map(c.complexity.filters, [](MatchedFilter f) { return to_string(f); }) << "\n";
  return o.str();
}

}  // namespace afdm::cli
