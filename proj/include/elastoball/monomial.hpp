#pragma once

#include <cstddef>
#include <vector>

#include "elastoball/rational.hpp"

namespace elastoball {

/// One term coef * x^px * y^py with exact rational exponents.
struct Monomial {
    double coef = 0.0;
    Rational px{0};
    Rational py{0};
};

/// Finite sum of monomials in (x, y). Exponents stay exact rationals; the
/// numeric values are cached for evaluation. Evaluation follows the
/// closed-quadrant convention 0^0 = 1, 0^p = 0 for p > 0 (negative powers of
/// zero produce inf, which callers avoid by shifting exponents first).
class MonomialSum {
  public:
    MonomialSum() = default;
    explicit MonomialSum(std::vector<Monomial> terms);

    void add(double coef, Rational px, Rational py);
    const std::vector<Monomial>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    double eval(double x, double y) const;

    // k-th partial derivative in y, evaluated. k small (<= 4 used).
    double eval_dy(double x, double y, int k) const;

    MonomialSum dx() const;
    MonomialSum dy() const;
    MonomialSum scaled(double factor) const;
    MonomialSum shifted(const Rational& dpx, const Rational& dpy) const;
    friend MonomialSum operator+(const MonomialSum& a, const MonomialSum& b);
    friend MonomialSum operator-(const MonomialSum& a, const MonomialSum& b);

    // Merges terms with identical exponent pairs and drops terms whose net
    // coefficient is below rel_eps times the largest absolute contribution;
    // exact cancellations between float coefficients land there.
    MonomialSum combined(double rel_eps = 1e-12) const;

    // Minimal x (resp. y) exponent over the terms. Sum must be non-empty.
    Rational min_px() const;
    Rational min_py() const;

  private:
    void cache_exponents();

    std::vector<Monomial> terms_;
    std::vector<double> pxd_, pyd_;  // cached double exponents
};

/// x^p with the closed-quadrant convention described above.
double pow_rational(double x, const Rational& p, double p_cached);

/// Evaluates S(x,y) / (1 - y) where S(x,1) == 0 (removable singularity).
/// For |1-y| >= switch_tol the direct quotient is used; otherwise the Taylor
/// expansion of S around y = 1. If S(x,1) != 0 the singular part is kept.
double eval_over_one_minus_y(const MonomialSum& s, double x, double y,
                             double switch_tol = 1e-6);

}  // namespace elastoball
