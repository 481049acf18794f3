#include "decsym/heating.hh"

#include <stdexcept>
#include <string>

namespace decsym {

std::vector<DecVec> decimal_range(const Decimal& start, const Decimal& step,
                                  const Decimal& stop) {
    if (!(Decimal(0, 0) < step)) throw std::invalid_argument("range step must be positive");
    std::vector<DecVec> out;
    for (Decimal v = start; !(stop < v); v = v + step) out.push_back(DecVec{v});
    return out;
}

NetworkModel heating_model(int n_rooms, std::vector<DecVec> inputs) {
    if (n_rooms < 3) throw std::invalid_argument("the ring needs at least 3 rooms");
    NetworkModel m;
    m.n_comp = n_rooms;
    m.dims.assign(n_rooms, 1);
    m.input_dims.assign(n_rooms, 1);
    m.inputs.assign(n_rooms, inputs);
    m.dynamics = ThermalRing{Decimal::parse("0.45"), Decimal::parse("0.045"),
                             Decimal::parse("0.09"), Decimal::parse("-1"),
                             Decimal::parse("50")};
    m.finalize();
    return m;
}

NetworkModel heating_model(int n_rooms) {
    return heating_model(n_rooms, decimal_range(Decimal(0, 0), Decimal::parse("0.025"),
                                                Decimal(1, 0)));
}

GasCertificate heating_certificate() {
    GasCertificate c;
    c.weight = {Decimal(1, 0)};
    c.alpha_lo = KinfFn::linear(Decimal(1, 0));
    c.alpha_hi = KinfFn::linear(Decimal(1, 0));
    // decrease margin 1 - 0.955 for the default conduction factors
    c.rho = KinfFn::linear(Decimal(1, 0) -
                           thermal_contraction(Decimal::parse("0.45"), Decimal::parse("0.045"),
                                               Decimal::parse("0.09")));
    c.sigma = KinfFn::linear(Decimal(1, 0));
    return c;
}

std::vector<DecVec> heating_schedule(int n_rooms, ScheduleVariant variant) {
    if (n_rooms < 3) throw std::invalid_argument("the ring needs at least 3 rooms");
    static const char* interior[12] = {"18",   "18.5", "19", "19.5", "20",    "20",
                                      "20",   "19.5", "19", "18.5", "18.25", "18"};
    std::vector<DecVec> word;
    word.reserve(12);
    for (int t = 0; t < 12; ++t) {
        DecVec p;
        p.reserve(n_rooms);
        bool raised = variant == ScheduleVariant::raised_tail && (t == 9 || t == 10);
        p.push_back(Decimal::parse(raised ? "20" : "19"));
        Decimal inner = Decimal::parse(interior[t]);
        for (int i = 1; i < n_rooms; ++i) p.push_back(inner);
        word.push_back(std::move(p));
    }
    return word;
}

} // namespace decsym
