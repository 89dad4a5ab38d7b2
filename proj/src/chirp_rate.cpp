#include "afdm/chirp_rate.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

namespace afdm {

namespace {

// Above this magnitude a double no longer carries useful fractional bits.
constexpr double kResolvedLimit = 4503599627370496.0;  // 2^52

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

Complex unit_phasor(double cycles) {
  double f = cycles - std::floor(cycles + 0.5);
  if (f == 0.0) return {1.0, 0.0};
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

ChirpRate ChirpRate::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("chirp rate denominator must be nonzero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  ChirpRate c;
  c.rational_ = true;
  c.num_ = g == 0 ? 0 : num / g;
  c.den_ = g == 0 ? 1 : den / g;
  if (c.num_ == 0) c.den_ = 1;
  return c;
}

ChirpRate ChirpRate::real(double value) {
  if (!std::isfinite(value)) throw ValidationError("chirp rate must be finite");
  ChirpRate c;
  c.rational_ = false;
  c.real_ = value;
  return c;
}

ChirpRate ChirpRate::from_doppler_rule(int k_max, int nc) {
  if (k_max < 0) throw ValidationError("k_max must be nonnegative");
  if (nc <= 0) throw ValidationError("subcarrier count must be positive");
  return rational(2 * static_cast<std::int64_t>(k_max) + 1, 2 * static_cast<std::int64_t>(nc));
}

ChirpRate ChirpRate::parse(std::string_view text, int nc) {
  text = trim(text);
  if (text.empty()) throw ValidationError("empty chirp rate");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    std::int64_t i = 0;
    if (parse_int(text, i)) return rational(i, 1);
    double d = 0.0;
    if (parse_double(text, d)) return real(d);
    throw ValidationError("cannot parse chirp rate '" + std::string(text) + "'");
  }
  const auto num_text = trim(text.substr(0, slash));
  const auto den_text = trim(text.substr(slash + 1));
  std::int64_t den = 0;
  if (den_text == "Nc^2" || den_text == "Nc2" || den_text == "Nc**2") {
    if (nc <= 0) throw ValidationError("Nc^2 shorthand needs a positive subcarrier count");
    den = static_cast<std::int64_t>(nc) * nc;
  } else if (den_text == "Nc") {
    den = nc;
  } else if (!parse_int(den_text, den)) {
    throw ValidationError("cannot parse chirp rate denominator '" + std::string(den_text) + "'");
  }
  std::int64_t num = 0;
  if (parse_int(num_text, num)) return rational(num, den);
  double d = 0.0;
  if (parse_double(num_text, d)) {
    if (den == 0) throw ValidationError("chirp rate denominator must be nonzero");
    return real(d / static_cast<double>(den));
  }
  throw ValidationError("cannot parse chirp rate numerator '" + std::string(num_text) + "'");
}

double ChirpRate::value() const {
  return rational_ ? static_cast<double>(num_) / static_cast<double>(den_) : real_;
}

bool ChirpRate::resolves(std::int64_t k) const {
  if (rational_) return true;
  return std::abs(real_ * static_cast<double>(k)) < kResolvedLimit;
}

double ChirpRate::cycles(std::int64_t k) const {
  if (rational_) {
    __extension__ using Wide = __int128;
    Wide r = static_cast<Wide>(num_) * k % den_;
    if (r < 0) r += den_;
    return static_cast<double>(r) / static_cast<double>(den_);
  }
  const double t = real_ * static_cast<double>(k);
  return t - std::floor(t);
}

Complex ChirpRate::phasor(std::int64_t k) const {
  if (resolves(k)) return unit_phasor(cycles(k));
  return std::polar(1.0, kTwoPi * (real_ * static_cast<double>(k)));
}

std::string ChirpRate::to_string() const {
  if (rational_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, real_);
  (void)ec;
  std::string s(buf, ptr);
  // Keep real-valued rates real on re-parse ("2" would come back rational).
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

}  // namespace afdm
