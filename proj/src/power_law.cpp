#include "elastoball/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace elastoball {

MonomialSum PowerLawSpec::energy_sum() const {
    MonomialSum w;
    for (const auto& g : groups)
        for (const auto& t : g.terms) w.add(t.alpha, g.gamma, t.beta);
    return w;
}

void validate_power_law_structure(const PowerLawSpec& spec) {
    spec.lame.validate();
    if (spec.groups.empty())
        throw std::invalid_argument("power-law spec: no groups");
    const Rational zero{0}, minus_one{-1};
    bool has_generic_beta = false;
    for (std::size_t j = 0; j < spec.groups.size(); ++j) {
        const auto& g = spec.groups[j];
        if (g.terms.empty())
            throw std::invalid_argument("power-law spec: empty group");
        if (j > 0 && !(spec.groups[j - 1].gamma < g.gamma))
            throw std::invalid_argument("power-law spec: gamma exponents must increase strictly");
        for (std::size_t i = 0; i < g.terms.size(); ++i) {
            if (g.terms[i].alpha == 0.0)
                throw std::invalid_argument("power-law spec: zero coefficient");
            if (i > 0 && !(g.terms[i - 1].beta < g.terms[i].beta))
                throw std::invalid_argument("power-law spec: beta exponents must increase strictly");
            if (g.terms[i].beta != zero && g.terms[i].beta != minus_one) has_generic_beta = true;
        }
        if (g.terms.size() == 1) {
            if (g.gamma == zero)
                throw std::invalid_argument("power-law spec: single-term group with gamma = 0");
            if (g.terms[0].beta * Rational(3) != g.gamma)
                throw std::invalid_argument(
                    "power-law spec: single-term group requires beta = gamma/3");
        }
    }
    if (!has_generic_beta)
        throw std::invalid_argument(
            "power-law spec: at least one beta must differ from 0 and -1");
}

PowerLawConditionReport check_power_law_conditions(const PowerLawSpec& spec) {
    PowerLawConditionReport r;
    double s_a = 0.0, s_ag = 0.0, s_ag2 = 0.0, s_ab2 = 0.0;
    for (const auto& g : spec.groups) {
        const double gv = g.gamma.value();
        double balance = 0.0;
        for (const auto& t : g.terms) {
            const double bv = t.beta.value();
            s_a += t.alpha;
            s_ag += t.alpha * gv;
            s_ag2 += t.alpha * gv * gv;
            s_ab2 += t.alpha * bv * bv;
            balance += t.alpha * (bv - gv / 3.0);
        }
        r.worst_group_balance = std::max(r.worst_group_balance, std::abs(balance));
    }
    r.zero_energy = s_a + spec.w0;
    r.zero_first_moment = s_ag;
    r.gamma_second_moment = s_ag2 - 3.0 * spec.lame.bulk3();
    r.beta_second_moment = s_ab2 - spec.lame.p_wave();
    r.tolerance = 1e-10 * std::max(1.0, spec.lame.p_wave());
    r.passed = std::abs(r.zero_energy) <= r.tolerance &&
               std::abs(r.zero_first_moment) <= r.tolerance &&
               std::abs(r.gamma_second_moment) <= r.tolerance &&
               std::abs(r.beta_second_moment) <= r.tolerance &&
               r.worst_group_balance <= r.tolerance;
    return r;
}

PowerLawSpecBuilder& PowerLawSpecBuilder::term(Rational gamma, double alpha, Rational beta) {
    raw_.emplace_back(gamma, beta, alpha);
    return *this;
}

PowerLawSpecBuilder& PowerLawSpecBuilder::offset(double w0) {
    spec_.w0 = w0;
    return *this;
}

PowerLawSpec PowerLawSpecBuilder::build() const {
    std::map<std::pair<std::int64_t, std::int64_t>,
             std::pair<Rational, std::map<std::pair<std::int64_t, std::int64_t>,
                                          std::pair<Rational, double>>>>
        acc;
    for (const auto& [gamma, beta, alpha] : raw_) {
        auto& grp = acc[{gamma.num(), gamma.den()}];
        grp.first = gamma;
        auto& slot = grp.second[{beta.num(), beta.den()}];
        slot.first = beta;
        slot.second += alpha;
    }
    PowerLawSpec out = spec_;
    out.groups.clear();
    for (const auto& [gk, grp] : acc) {
        PowerLawGroup g;
        g.gamma = grp.first;
        for (const auto& [bk, term] : grp.second) {
            if (term.second == 0.0) continue;
            g.terms.push_back({term.second, term.first});
        }
        if (g.terms.empty()) continue;
        std::sort(g.terms.begin(), g.terms.end(),
                  [](const PowerLawTerm& a, const PowerLawTerm& b) { return a.beta < b.beta; });
        out.groups.push_back(std::move(g));
    }
    std::sort(out.groups.begin(), out.groups.end(),
              [](const PowerLawGroup& a, const PowerLawGroup& b) { return a.gamma < b.gamma; });
    validate_power_law_structure(out);
    return out;
}

}  // namespace elastoball
