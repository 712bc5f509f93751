#pragma once

// Exact rational arithmetic used by the coefficient layer.
//
// Thin wrapper around boost::multiprecision::cpp_rational.  The backend keeps
// every value in canonical form: reduced fraction, denominator > 0.  The
// wrapper adds the text format used throughout ("num/den", e.g. "-5/3",
// integers canonicalised to "k/1") and a few queries the sign analysis needs
// (floor, integrality).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lpsteiner {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        // The backend requires a positive denominator; fold the sign into num.
        if (den < 0)
            v_ = boost::multiprecision::cpp_rational(-num, -den);
        else
            v_ = boost::multiprecision::cpp_rational(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.v_ = -v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    int sign() const { return v_ == 0 ? 0 : (v_ < 0 ? -1 : 1); }
    bool is_integer() const { return den() == 1; }

    // Largest integer <= value (rounds toward -infinity, not toward zero).
    BigInt floor() const {
        BigInt q = num() / den();
        if (num() < 0 && q * den() != num()) --q;
        return q;
    }

    double to_double() const { return v_.convert_to<double>(); }

    // Canonical text form "num/den" with den > 0 and gcd(num, den) = 1.
    std::string str() const { return num().str() + "/" + den().str(); }

    // Accepts "a/b", "a", or a plain decimal such as "-1.25" (exact binary-free
    // decimal-to-fraction conversion).  Throws std::invalid_argument otherwise.
    static Rational parse(const std::string& s);

private:
    boost::multiprecision::cpp_rational v_;
};

inline Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t) -> BigInt {
        if (t.empty() || (t.size() == 1 && (t[0] == '+' || t[0] == '-')))
            throw std::invalid_argument("Rational::parse: bad integer '" + t + "'");
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("Rational::parse: bad integer '" + t + "'");
        return BigInt(t);
    };
    if (slash != std::string::npos) {
        return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_int(s), BigInt(1));
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (head.empty() || head == "+" || head == "-") head += "0";
    for (char c : tail)
        if (c < '0' || c > '9') throw std::invalid_argument("Rational::parse: bad decimal '" + s + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    BigInt whole = parse_int(head);
    BigInt frac = tail.empty() ? BigInt(0) : BigInt(tail);
    bool neg = !head.empty() && head[0] == '-';
    BigInt num = whole * scale + (neg ? -frac : frac);
    return Rational(num, scale);
}

}  // namespace lpsteiner
