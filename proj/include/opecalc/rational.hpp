// Exact rational scalars and the supersign/binomial combinatorics used
// throughout the library.  All arithmetic is arbitrary precision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace opecalc {

using BigInt = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}            // NOLINT(google-explicit-constructor)
    Rational(long n) : num_(n), den_(1) {}           // NOLINT(google-explicit-constructor)
    Rational(long long n) : num_(n), den_(1) {}      // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long n, long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_half_integer() const { return den_ == 1 || den_ == 2; }

    // Only valid when is_integer() holds and the value fits in a long.
    long to_long() const {
        if (!is_integer()) throw error("Rational::to_long: not an integer: " + str());
        if (num_ > std::numeric_limits<long>::max() || num_ < std::numeric_limits<long>::min())
            throw error("Rational::to_long: out of range");
        return static_cast<long>(num_);
    }

    std::optional<long> as_long() const {
        if (!is_integer()) return std::nullopt;
        if (num_ > std::numeric_limits<long>::max() || num_ < std::numeric_limits<long>::min())
            return std::nullopt;
        return static_cast<long>(num_);
    }

    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Renders as "p" or "p/q" with q > 0.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    static std::optional<Rational> parse(const std::string& s);

  private:
    void normalize() {
        if (den_ == 0) throw error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline std::optional<Rational> Rational::parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto parse_int = [](const std::string& t) -> std::optional<BigInt> {
        if (t.empty()) return std::nullopt;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return std::nullopt;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
        return BigInt(t);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        auto n = parse_int(s);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(s.substr(0, slash));
    auto d = parse_int(s.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
}

enum class Parity : uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

// (-1)^{pq}: -1 iff both parities are odd.
inline Rational supersign(Parity p, Parity q) {
    return (p == Parity::odd && q == Parity::odd) ? Rational(-1) : Rational(1);
}

inline Rational factorial(long n) {
    Rational r = 1;
    for (long i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

// binom(a, n) = prod_{i=0}^{n-1} (a - i) / n!  for n >= 0, and 0 for n < 0.
inline Rational binom(const Rational& a, long n) {
    if (n < 0) return 0;
    Rational r = 1;
    for (long i = 0; i < n; ++i) r *= (a - Rational(i));
    return r / factorial(n);
}

// (-1)^k for integer k; rejects non-integer exponents where a branch choice
// would be required.
inline Rational signed_power(const Rational& k) {
    if (!k.is_integer()) throw error("signed_power: non-integer exponent " + k.str());
    return (k.num() % 2 == 0) ? Rational(1) : Rational(-1);
}

inline Rational signed_power(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace opecalc
