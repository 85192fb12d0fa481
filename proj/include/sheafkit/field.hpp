// Exact scalar fields: arbitrary-precision rationals and integers mod a prime.
//
// Every algorithm in sheafkit is templated on the scalar type `S`, which is
// either `Rational` or `ModP`. Both are usable as Eigen scalars.

#ifndef SHEAFKIT_FIELD_HPP
#define SHEAFKIT_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace sheafkit {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Raised when scalars from two different prime fields meet in one operation.
class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Element of F_p. The modulus is taken from the thread's active
/// `ModP::Scope` at construction time and travels with the value; combining
/// values with different moduli throws `FieldMismatch`.
class ModP {
 public:
  static constexpr std::uint32_t kDefaultModulus = 46337;

  /// RAII guard selecting the modulus for values constructed on this thread.
  class Scope {
   public:
    explicit Scope(std::uint32_t p);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::uint32_t previous_;
  };

  static std::uint32_t active_modulus() noexcept;
  static bool is_prime(std::uint32_t p) noexcept;

  ModP() : value_(0), modulus_(active_modulus()) {}
  ModP(long long v) : modulus_(active_modulus()) {  // NOLINT(google-explicit-constructor)
    long long r = v % static_cast<long long>(modulus_);
    if (r < 0) r += modulus_;
    value_ = static_cast<std::uint32_t>(r);
  }
  ModP(int v) : ModP(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  ModP inverse() const;

  ModP& operator+=(const ModP& o) {
    check(o);
    std::uint64_t s = std::uint64_t{value_} + o.value_;
    value_ = static_cast<std::uint32_t>(s >= modulus_ ? s - modulus_ : s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + (modulus_ - o.value_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * o.value_) % modulus_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  ModP operator-() const {
    ModP r = *this;
    r.value_ = value_ == 0 ? 0 : modulus_ - value_;
    return r;
  }
  ModP operator+() const { return *this; }

  friend bool operator==(const ModP& a, const ModP& b) {
    a.check(b);
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }
  // Arbitrary total order; only Eigen's generic code asks for it.
  friend bool operator<(const ModP& a, const ModP& b) { return a.value_ < b.value_; }
  friend bool operator>(const ModP& a, const ModP& b) { return b < a; }
  friend bool operator<=(const ModP& a, const ModP& b) { return !(b < a); }
  friend bool operator>=(const ModP& a, const ModP& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.value_; }

 private:
  void check(const ModP& o) const {
    if (modulus_ != o.modulus_) {
      throw FieldMismatch("mixing F_" + std::to_string(modulus_) + " and F_" +
                          std::to_string(o.modulus_) + " scalars");
    }
  }

  std::uint32_t value_;
  std::uint32_t modulus_;
};

inline ModP abs(const ModP& x) { return x; }

/// Runtime description of the coefficient field: "q", "fp" (p = 46337) or "fp:<p>".
struct FieldSpec {
  enum class Kind { rational, prime };
  Kind kind = Kind::rational;
  std::uint32_t modulus = 0;

  static FieldSpec rational() { return {}; }
  static FieldSpec prime(std::uint32_t p);
  static FieldSpec parse(std::string_view text);

  std::string to_string() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// ---------------------------------------------------------------------------
// Uniform scalar helpers used by the templated algorithms.

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const ModP& x) { return x.is_zero(); }

inline Rational inverse(const Rational& x) {
  if (x.is_zero()) throw std::domain_error("division by zero");
  return Rational(1) / x;
}
inline ModP inverse(const ModP& x) { return x.inverse(); }

std::string to_string(const Rational& x);
std::string to_string(const ModP& x);

/// Parses "n", "-n" or "n/d". For ModP the fraction is reduced mod p and a
/// denominator divisible by p is rejected.
template <class S>
S parse_scalar(std::string_view text);

template <>
Rational parse_scalar<Rational>(std::string_view text);
template <>
ModP parse_scalar<ModP>(std::string_view text);

/// Descriptor of the field a scalar type currently represents.
template <class S>
FieldSpec current_field();
template <>
inline FieldSpec current_field<Rational>() {
  return FieldSpec::rational();
}
template <>
inline FieldSpec current_field<ModP>() {
  return FieldSpec::prime(ModP::active_modulus());
}

/// Runs `fn.template operator()<S>()` with `S` bound to the scalar type of
/// `spec`, activating the modulus for prime fields.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::prime) {
    ModP::Scope scope(spec.modulus);
    return fn.template operator()<ModP>();
  }
  return fn.template operator()<Rational>();
}

}  // namespace sheafkit

namespace Eigen {

template <>
struct NumTraits<sheafkit::ModP> : GenericNumTraits<sheafkit::ModP> {
  using Real = sheafkit::ModP;
  using NonInteger = sheafkit::ModP;
  using Literal = sheafkit::ModP;
  using Nested = sheafkit::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // SHEAFKIT_FIELD_HPP
