#include "elastoball/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace elastoball {

double pow_rational(double x, const Rational& p, double p_cached) {
    if (p.num() == 0) return 1.0;
    if (x == 0.0) {
        if (p.num() > 0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    if (p.is_integer()) {
        // integer powers: exact and cheap, the common case for the built-ins
        std::int64_t n = p.num();
        const bool inv = n < 0;
        if (inv) n = -n;
        double r = 1.0, base = x;
        while (n > 0) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return inv ? 1.0 / r : r;
    }
    return std::pow(x, p_cached);
}

MonomialSum::MonomialSum(std::vector<Monomial> terms) : terms_(std::move(terms)) {
    cache_exponents();
}

void MonomialSum::cache_exponents() {
    pxd_.resize(terms_.size());
    pyd_.resize(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        pxd_[i] = terms_[i].px.value();
        pyd_[i] = terms_[i].py.value();
    }
}

void MonomialSum::add(double coef, Rational px, Rational py) {
    if (coef == 0.0) return;
    terms_.push_back({coef, px, py});
    pxd_.push_back(px.value());
    pyd_.push_back(py.value());
}

double MonomialSum::eval(double x, double y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        s += terms_[i].coef * pow_rational(x, terms_[i].px, pxd_[i]) *
             pow_rational(y, terms_[i].py, pyd_[i]);
    return s;
}

double MonomialSum::eval_dy(double x, double y, int k) const {
    double s = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        double factor = terms_[i].coef;
        double p = pyd_[i];
        Rational pr = terms_[i].py;
        for (int j = 0; j < k; ++j) {
            factor *= p;
            p -= 1.0;
            pr -= Rational(1);
        }
        if (factor == 0.0) continue;
        s += factor * pow_rational(x, terms_[i].px, pxd_[i]) * pow_rational(y, pr, p);
    }
    return s;
}

MonomialSum MonomialSum::dx() const {
    MonomialSum r;
    for (const auto& t : terms_) {
        if (t.px.num() == 0) continue;
        r.add(t.coef * t.px.value(), t.px - Rational(1), t.py);
    }
    return r;
}

MonomialSum MonomialSum::dy() const {
    MonomialSum r;
    for (const auto& t : terms_) {
        if (t.py.num() == 0) continue;
        r.add(t.coef * t.py.value(), t.px, t.py - Rational(1));
    }
    return r;
}

MonomialSum MonomialSum::scaled(double factor) const {
    MonomialSum r;
    for (const auto& t : terms_) r.add(t.coef * factor, t.px, t.py);
    return r;
}

MonomialSum MonomialSum::shifted(const Rational& dpx, const Rational& dpy) const {
    MonomialSum r;
    for (const auto& t : terms_) r.add(t.coef, t.px + dpx, t.py + dpy);
    return r;
}

MonomialSum operator+(const MonomialSum& a, const MonomialSum& b) {
    MonomialSum r = a;
    for (const auto& t : b.terms_) r.add(t.coef, t.px, t.py);
    return r;
}

MonomialSum operator-(const MonomialSum& a, const MonomialSum& b) {
    MonomialSum r = a;
    for (const auto& t : b.terms_) r.add(-t.coef, t.px, t.py);
    return r;
}

MonomialSum MonomialSum::combined(double rel_eps) const {
    using Key = std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>;
    std::map<Key, std::pair<double, double>> acc;  // key -> (net, sum of |coef|)
    std::map<Key, Monomial> exps;
    for (const auto& t : terms_) {
        Key k{{t.px.num(), t.px.den()}, {t.py.num(), t.py.den()}};
        auto& slot = acc[k];
        slot.first += t.coef;
        slot.second += std::abs(t.coef);
        exps[k] = t;
    }
    MonomialSum r;
    for (const auto& [k, v] : acc) {
        if (std::abs(v.first) <= rel_eps * v.second) continue;
        const Monomial& m = exps[k];
        r.add(v.first, m.px, m.py);
    }
    return r;
}

Rational MonomialSum::min_px() const {
    Rational m = terms_.front().px;
    for (const auto& t : terms_)
        if (t.px < m) m = t.px;
    return m;
}

Rational MonomialSum::min_py() const {
    Rational m = terms_.front().py;
    for (const auto& t : terms_)
        if (t.py < m) m = t.py;
    return m;
}

double eval_over_one_minus_y(const MonomialSum& s, double x, double y, double switch_tol) {
    const double omy = 1.0 - y;
    if (std::abs(omy) >= switch_tol) return s.eval(x, y) / omy;
    // S(y) = S(1) + S'(1)(y-1) + S''(1)(y-1)^2/2 + ... =>
    // S/(1-y) = S(1)/(1-y) - S'(1) - S''(1)(y-1)/2 - S'''(1)(y-1)^2/6 - ...
    const double s0 = s.eval(x, 1.0);
    const double s1 = s.eval_dy(x, 1.0, 1);
    const double s2 = s.eval_dy(x, 1.0, 2);
    const double s3 = s.eval_dy(x, 1.0, 3);
    const double s4 = s.eval_dy(x, 1.0, 4);
    const double dy1 = y - 1.0;
    double r = -(s1 + dy1 * (s2 / 2.0 + dy1 * (s3 / 6.0 + dy1 * s4 / 24.0)));
    // keep the singular part when the numerator does not actually vanish at y=1
    const double scale = std::abs(s1) + std::abs(s2) + std::abs(s0) + 1e-300;
    if (std::abs(s0) > 1e-11 * scale) {
        if (omy == 0.0) return std::numeric_limits<double>::infinity() * (s0 > 0 ? 1.0 : -1.0);
        r += s0 / omy;
    }
    return r;
}

}  // namespace elastoball
