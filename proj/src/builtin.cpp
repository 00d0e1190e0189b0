#include "elastoball/model.hpp"

#include <stdexcept>

namespace elastoball {

namespace {

PowerLawSpec svk_spec(const LameParameters& lame) {
    const double l = lame.lambda, m = lame.mu;
    PowerLawSpecBuilder b(lame);
    b.term(Rational(-4), (l + 2 * m) / 8.0, Rational(-4))
        .term(Rational(-4), l / 2.0, Rational(-2))
        .term(Rational(-4), (l + m) / 2.0, Rational(0))
        .term(Rational(-2), -(3 * l + 2 * m) / 4.0, Rational(-2))
        .term(Rational(-2), -(3 * l + 2 * m) / 2.0, Rational(0))
        .offset(3.0 / 8.0 * (3 * l + 2 * m));
    return b.build();
}

PowerLawSpec john_spec(const LameParameters& lame) {
    const double l = lame.lambda, m = lame.mu;
    PowerLawSpecBuilder b(lame);
    b.term(Rational(-3), -2 * m, Rational(-1))
        .term(Rational(-2), (l + 2 * m) / 2.0, Rational(-2))
        .term(Rational(-2), 2 * (l + 2 * m), Rational(-1))
        .term(Rational(-2), 2 * (l + 2 * m), Rational(0))
        .term(Rational(-1), -(3 * l + 4 * m), Rational(-1))
        .term(Rational(-1), -2 * (3 * l + 4 * m), Rational(0))
        .offset((9 * l + 10 * m) / 2.0);
    return b.build();
}

PowerLawSpec signorini_spec(const LameParameters& lame) {
    const double l = lame.lambda, m = lame.mu;
    PowerLawSpecBuilder b(lame);
    b.term(Rational(-3), (9 * l + 5 * m) / 8.0, Rational(-1))
        .term(Rational(-1), -(3 * l + m) / 2.0, Rational(-1))
        .term(Rational(-1), -(3 * l + m) / 4.0, Rational(1))
        .term(Rational(1), (l + m) / 2.0, Rational(-1))
        .term(Rational(1), (l + m) / 2.0, Rational(1))
        .term(Rational(1), (l + m) / 8.0, Rational(3))
        .offset(-m);
    return b.build();
}

ConstitutiveModel seth_model(const LameParameters& lame) {
    if (!(lame.mu > 0.0)) throw std::invalid_argument("seth: requires mu > 0");
    if (!(lame.bulk3() > 0.0)) throw std::invalid_argument("seth: requires 3 lambda + 2 mu > 0");
    const double l = lame.lambda, m = lame.mu;
    const double p0 = (3 * l + 2 * m) / 2.0;
    MonomialSum prad, ptan;
    prad.add(l, Rational(2), Rational(0));
    prad.add((l + 2 * m) / 2.0, Rational(2), Rational(2));
    prad.add(-p0, Rational(0), Rational(0));
    ptan.add(l + m, Rational(2), Rational(0));
    ptan.add(l / 2.0, Rational(2), Rational(2));
    ptan.add(-p0, Rational(0), Rational(0));
    return ConstitutiveModel::from_pressures(prad, ptan, lame, "seth");
}

}  // namespace

PowerLawSpec hadamard_spec(const Rational& k, const LameParameters& lame) {
    if (k == Rational(0) || k == Rational(1))
        throw std::invalid_argument("hadamard: exponent k must differ from 0 and 1");
    const double l = lame.lambda, m = lame.mu;
    const double kv = k.value();
    PowerLawSpecBuilder b(lame);
    b.term(Rational(-4), (l + 2 * kv * m) / (2 * (1 - kv)), Rational(-2))
        .term(Rational(-4), (l + 2 * kv * m) / (4 * (1 - kv)), Rational(0))
        .term(Rational(-2), (l + 2 * (2 * kv - 1) * m) / (4 * (kv - 1)), Rational(-2))
        .term(Rational(-2), (l + 2 * (2 * kv - 1) * m) / (2 * (kv - 1)), Rational(0))
        .term(Rational(-6) * k, (l + 2 * m) / (4 * kv * (kv - 1)), Rational(-2) * k)
        .offset((l + 2 * (1 - 3 * kv + 3 * kv * kv) * m) / (4 * kv * (1 - kv)));
    return b.build();
}

PowerLawSpec fluid_spec(const LameParameters& lame) {
    if (lame.mu != 0.0) throw std::invalid_argument("fluid: requires mu = 0");
    if (!(lame.lambda > 0.0)) throw std::invalid_argument("fluid: requires lambda > 0");
    const double l = lame.lambda;
    PowerLawSpecBuilder b(lame);
    b.term(Rational(-6), l / 2.0, Rational(-2)).term(Rational(-3), -l, Rational(-1)).offset(l / 2.0);
    return b.build();
}

ConstitutiveModel make_builtin(BuiltinKind kind, const LameParameters& lame) {
    lame.validate();
    ConstitutiveModel m = [&] {
        switch (kind) {
            case BuiltinKind::svk:
                return ConstitutiveModel::from_power_law(svk_spec(lame), "svk");
            case BuiltinKind::john:
                return ConstitutiveModel::from_power_law(john_spec(lame), "john");
            case BuiltinKind::hadamard_half:
                if (!(lame.lambda > 0.0))
                    throw std::invalid_argument("hadamard_half: requires lambda > 0");
                return ConstitutiveModel::from_power_law(hadamard_spec(Rational(1, 2), lame),
                                                         "hadamard_half");
            case BuiltinKind::seth:
                return seth_model(lame);
            case BuiltinKind::signorini:
                return ConstitutiveModel::from_power_law(signorini_spec(lame), "signorini");
        }
        throw std::logic_error("make_builtin: unreachable");
    }();
    m.builtin_ = kind;
    return m;
}

}  // namespace elastoball
