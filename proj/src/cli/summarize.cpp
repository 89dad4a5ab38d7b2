#include "summarize.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "afdm/ambiguity.hpp"
#include "afdm/estimator.hpp"
#include "csv.hpp"

namespace afdm::cli {

namespace {

using Group = std::vector<std::size_t>;

// Rows grouped by the given key columns, in first-appearance order.
std::vector<std::pair<std::string, Group>> group_rows(const CsvTable& t, const std::vector<std::string>& keys) {
  std::vector<std::pair<std::string, Group>> groups;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::string key;
    for (const auto& k : keys) key += (key.empty() ? "" : " ") + k + "=" + t.at(r, k);
    auto [it, fresh] = index.emplace(key, groups.size());
    if (fresh) groups.push_back({key, {}});
    groups[it->second].second.push_back(r);
  }
  return groups;
}

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

void range_profile(const CsvTable& t, std::ostream& out) {
  for (const auto& [key, rows] : group_rows(t, {"waveform", "c2", "snr_db"})) {
    out << key << "\n";
    out << "  " << std::setw(6) << "bin" << std::setw(12) << "range_m" << std::setw(14) << "magnitude" << "\n";
    int count = 0;
    for (auto r : rows) {
      if (t.at(r, "detected") != "1") continue;
      ++count;
      out << "  " << std::setw(6) << t.at(r, "bin") << std::setw(12) << fixed(t.number(r, "range_m"), 2)
          << std::setw(14) << fixed(t.number(r, "magnitude"), 6) << "\n";
    }
    out << "  " << count << (count == 1 ? " detection" : " detections") << "\n";
  }
}

void cut(const CsvTable& t, std::ostream& out) {
  for (const auto& [key, rows] : group_rows(t, {"waveform", "c2"})) {
    CVector values;
    for (auto r : rows) values.emplace_back(t.number(r, "re"), t.number(r, "im"));
    const AbfMetrics m = abf_metrics(values);
    out << key << "\n  mainlobe width " << m.mainlobe_width_bins << " bins, PSLR " << fixed(m.pslr_db, 2)
        << " dB, ISLR " << fixed(m.islr_db, 2) << " dB, max off-peak " << fixed(m.max_offpeak_db, 2) << " dB\n";
  }
}

void metrics(const CsvTable& t, std::ostream& out) {
  out << std::left << std::setw(10) << "waveform" << std::setw(10) << "c2" << std::right << std::setw(8) << "width"
      << std::setw(12) << "PSLR_dB" << std::setw(12) << "ISLR_dB" << std::setw(14) << "offpeak_dB" << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << std::left << std::setw(10) << t.at(r, "waveform") << std::setw(10) << t.at(r, "c2") << std::right
        << std::setw(8) << t.at(r, "mainlobe_width_bins") << std::setw(12) << fixed(t.number(r, "pslr_db"), 2)
        << std::setw(12) << fixed(t.number(r, "islr_db"), 2) << std::setw(14)
        << fixed(t.number(r, "max_offpeak_db"), 2) << "\n";
  }
}

void surface(const CsvTable& t, std::ostream& out) {
  for (const auto& [key, rows] : group_rows(t, {"waveform", "c2"})) {
    // Flat cuts have many equal maxima; report the one nearest the origin.
    auto distance = [&](std::size_t r) {
      return std::make_pair(std::abs(t.number(r, "doppler_hz")), std::abs(t.number(r, "lag")));
    };
    std::size_t best = rows.front();
    for (auto r : rows) {
      const double m = t.number(r, "magnitude_db"), b = t.number(best, "magnitude_db");
      if (m > b + 1e-9 || (m >= b - 1e-9 && distance(r) < distance(best))) best = r;
    }
    out << key << "\n  " << rows.size() << " cells, peak " << fixed(t.number(best, "magnitude_db"), 2)
        << " dB at lag " << t.at(best, "lag") << ", Doppler " << fixed(t.number(best, "doppler_hz"), 1) << " Hz\n";
  }
}

void ber(const CsvTable& t, std::ostream& out) {
  for (const auto& [key, rows] : group_rows(t, {"waveform", "c2"})) {
    out << key << "\n  " << std::setw(8) << "snr_db" << std::setw(12) << "bits" << std::setw(10) << "errors"
        << std::setw(14) << "ber" << "\n";
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (auto r : rows) {
      const double b = t.number(r, "ber");
      monotone = monotone && b <= prev;
      prev = b;
      std::ostringstream e;
      e << std::scientific << std::setprecision(3) << b;
      out << "  " << std::setw(8) << fixed(t.number(r, "snr_db"), 2) << std::setw(12) << t.at(r, "bits")
          << std::setw(10) << t.at(r, "errors") << std::setw(14) << e.str() << "\n";
    }
    out << "  " << (monotone ? "nonincreasing in SNR" : "not monotone in SNR") << "\n";
  }
}

void detection_rates(const CsvTable& t, std::ostream& out) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "waveform=" << t.at(r, "waveform") << " c2=" << t.at(r, "c2") << " snr_db=" << t.at(r, "snr_db") << ": "
        << t.at(r, "all_detected") << "/" << t.at(r, "trials") << " trials found every target ("
        << fixed(100.0 * t.number(r, "rate"), 1) << "%), " << t.at(r, "false_alarms") << " false alarms\n";
  }
}

void complexity(const CsvTable& t, std::ostream& out) {
  for (const auto& [key, rows] : group_rows(t, {"variant"})) {
    std::vector<double> n, mults;
    out << key << "\n  " << std::setw(8) << "n" << std::setw(16) << "complex_mults" << std::setw(14) << "per_NlogN"
        << "\n";
    for (auto r : rows) {
      n.push_back(t.number(r, "n"));
      mults.push_back(t.number(r, "complex_mults"));
      out << "  " << std::setw(8) << t.at(r, "n") << std::setw(16) << t.at(r, "complex_mults") << std::setw(14)
          << fixed(mults.back() / (n.back() * std::log2(n.back())), 3) << "\n";
    }
    if (n.size() >= 2) out << "  log-log slope " << fixed(fit_loglog(n, mults).slope, 3) << "\n";
  }
}

}  // namespace

void summarize(const std::filesystem::path& csv, std::ostream& out) {
  const CsvTable t = read_csv(csv);
  if (t.rows.empty()) {
    out << csv.filename().string() << ": no rows\n";
    return;
  }
  if (t.has("detected")) return range_profile(t, out);
  if (t.has("mainlobe_width_bins")) return metrics(t, out);
  if (t.has("re") && (t.has("lag") || t.has("doppler_hz"))) return cut(t, out);
  if (t.has("lag") && t.has("doppler_hz")) return surface(t, out);
  if (t.has("ber")) return ber(t, out);
  if (t.has("all_detected")) return detection_rates(t, out);
  if (t.has("complex_mults")) return complexity(t, out);
  throw ValidationError(csv.string() + ": unrecognized CSV header");
}

}  // namespace afdm::cli
