#include "sheafkit/field.hpp"

#include <charconv>

namespace sheafkit {

namespace {

thread_local std::uint32_t g_modulus = ModP::kDefaultModulus;

long long parse_integer(std::string_view text) {
  long long v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ModP::Scope::Scope(std::uint32_t p) : previous_(g_modulus) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  g_modulus = p;
}

ModP::Scope::~Scope() { g_modulus = previous_; }

std::uint32_t ModP::active_modulus() noexcept { return g_modulus; }

bool ModP::is_prime(std::uint32_t p) noexcept {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

ModP ModP::inverse() const {
  if (value_ == 0) throw std::domain_error("division by zero in F_" + std::to_string(modulus_));
  long long t = 0, new_t = 1;
  long long r = modulus_, new_r = value_;
  while (new_r != 0) {
    long long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  ModP out = *this;
  if (t < 0) t += modulus_;
  out.value_ = static_cast<std::uint32_t>(t);
  return out;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!ModP::is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return {Kind::prime, p};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "q" || text == "Q") return rational();
  if (text == "fp") return prime(ModP::kDefaultModulus);
  if (text.starts_with("fp:")) {
    long long p = parse_integer(text.substr(3));
    if (p < 2 || p > 0x7fffffffLL) throw std::invalid_argument("modulus out of range: " + std::string(text));
    return prime(static_cast<std::uint32_t>(p));
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected q, fp or fp:<p>)");
}

std::string FieldSpec::to_string() const {
  return kind == Kind::rational ? "q" : "fp:" + std::to_string(modulus);
}

std::string to_string(const Rational& x) {
  auto num = boost::multiprecision::numerator(x);
  auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_string(const ModP& x) { return std::to_string(x.value()); }

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  long long num = parse_integer(trim(text.substr(0, slash)));
  long long den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num) / Rational(den);
}

template <>
ModP parse_scalar<ModP>(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return ModP(parse_integer(text));
  ModP num(parse_integer(trim(text.substr(0, slash))));
  ModP den(parse_integer(trim(text.substr(slash + 1))));
  if (den.is_zero()) {
    throw std::invalid_argument("denominator of '" + std::string(text) + "' vanishes mod " +
                                std::to_string(den.modulus()));
  }
  return num / den;
}

}  // namespace sheafkit
