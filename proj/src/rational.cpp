#include "elastoball/rational.hpp"

#include <numeric>

namespace elastoball {

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::int64_t {
        if (s.empty()) throw std::invalid_argument("Rational: empty component");
        std::size_t pos = 0;
        bool neg = false;
        if (s[pos] == '+' || s[pos] == '-') {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos == s.size()) throw std::invalid_argument("Rational: sign without digits");
        std::int64_t v = 0;
        for (; pos < s.size(); ++pos) {
            if (s[pos] < '0' || s[pos] > '9')
                throw std::invalid_argument("Rational: bad digit in '" + std::string(s) + "'");
            v = v * 10 + (s[pos] - '0');
        }
        return neg ? -v : v;
    };
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
}

}  // namespace elastoball
