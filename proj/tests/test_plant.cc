#include "decsym/heating.hh"
#include "decsym/plant.hh"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace decsym;

namespace {

// x1+ = 0.5 x1 + 0.1 x2 + u1, x2+ = 0.4 x2 + u2, all scalar
NetworkModel coupled_pair() {
    NetworkModel m;
    m.n_comp = 2;
    m.dims = {1, 1};
    m.input_dims = {1, 1};
    m.inputs = {{{Decimal::parse("0")}, {Decimal::parse("0.5")}},
                {{Decimal::parse("0")}, {Decimal::parse("-0.5")}}};
    LinearCoupled lin;
    lin.blocks.resize(2);
    lin.blocks[0][0] = Matrix(1, 1);
    lin.blocks[0][0].at(0, 0) = 0.5;
    lin.blocks[0][1] = Matrix(1, 1);
    lin.blocks[0][1].at(0, 0) = 0.1;
    lin.blocks[1][1] = Matrix(1, 1);
    lin.blocks[1][1].at(0, 0) = 0.4;
    lin.gain = {Matrix(1, 1), Matrix(1, 1)};
    lin.gain[0].at(0, 0) = 1;
    lin.gain[1].at(0, 0) = 1;
    lin.offset = {{0.0}, {0.0}};
    m.dynamics = lin;
    m.finalize();
    return m;
}

} // namespace

TEST_CASE("thermal ring update matches the closed formula") {
    NetworkModel m = heating_model(4);
    double a = 0.45, b = 0.045, g = 0.09;
    std::vector<double> x = {19.0, 18.0, 20.0, 17.5};
    std::vector<double> u = {0.25, 0.0, 1.0, 0.6};
    std::vector<double> y = step(m, x, u);
    for (int i = 0; i < 4; ++i) {
        double left = x[(i + 3) % 4], right = x[(i + 1) % 4];
        double want = x[i] + a * (left + right - 2 * x[i]) + b * (-1 - x[i]) +
                      g * (50 - x[i]) * u[i];
        CHECK(y[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("step step_idx and psi_eval share one arithmetic path") {
    NetworkModel m = heating_model(5);
    std::vector<double> x = {18.0, 18.5, 19.0, 19.5, 20.0};
    std::vector<int> u_idx = {0, 3, 7, 11, 40};
    std::vector<double> u;
    for (int i = 0; i < 5; ++i) u.push_back(m.inputs_dbl[i][u_idx[i]][0]);
    std::vector<double> via_vals = step(m, x, u);
    std::vector<double> via_idx = step_idx(m, x, u_idx);
    CHECK(via_vals == via_idx); // bitwise: same code path
    for (int i = 0; i < 5; ++i) {
        auto w = gather_neighbors(m, i, x);
        auto yi = psi_eval_idx(m, i, {x[i]}, w, u_idx[i]);
        CHECK(yi[0] == via_idx[i]);
    }
}

TEST_CASE("ring neighbors wrap and stay ascending") {
    NetworkModel m = heating_model(6);
    CHECK(m.neighbors(0) == std::vector<int>{1, 5});
    CHECK(m.neighbors(3) == std::vector<int>{2, 4});
    CHECK(m.neighbors(5) == std::vector<int>{0, 4});
}

TEST_CASE("linear coupled update matches manual block arithmetic") {
    NetworkModel m = coupled_pair();
    std::vector<double> x = {2.0, -1.0};
    std::vector<double> u = {0.5, -0.5};
    std::vector<double> y = step(m, x, u);
    CHECK(y[0] == doctest::Approx(0.5 * 2.0 + 0.1 * -1.0 + 0.5).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.4 * -1.0 - 0.5).epsilon(1e-15));
    // component 2 reads no neighbors, component 1 reads component 2
    CHECK(m.neighbors(0) == std::vector<int>{1});
    CHECK(m.neighbors(1).empty());
}

TEST_CASE("psi_eval rejects inputs outside U_i") {
    NetworkModel m = heating_model(3);
    std::vector<double> w = {18.0, 18.0};
    CHECK_THROWS_AS((void)psi_eval(m, 0, {19.0}, w, {0.26}), std::invalid_argument);
    (void)psi_eval(m, 0, {19.0}, w, {0.25}); // on the grid, fine
}

TEST_CASE("finalize validates shapes and the zero-input requirement") {
    NetworkModel m = heating_model(3);
    m.inputs[1].erase(m.inputs[1].begin()); // drops 0
    CHECK_THROWS_AS(m.finalize(), std::invalid_argument);
}

TEST_CASE("contraction modulus is exact") {
    Decimal A = thermal_contraction(Decimal::parse("0.45"), Decimal::parse("0.045"),
                                    Decimal::parse("0.09"));
    CHECK(A.str() == "0.955");
    // |1-2a-b| dominating branch
    Decimal B = thermal_contraction(Decimal::parse("0.1"), Decimal::parse("0.05"),
                                    Decimal::parse("0.3"));
    CHECK(B == Decimal::parse("0.95")); // max(0.45, 0.75) + 0.2
}

TEST_CASE("certificate V is the weighted sup norm") {
    GasCertificate c = heating_certificate();
    CHECK(c.v({19, 18, 17}, {18.5, 18, 20}) == 3.0);
    GasCertificate w = c;
    w.weight = {Decimal::parse("2"), Decimal::parse("1"), Decimal::parse("1")};
    CHECK(w.v({19, 18, 17}, {18.5, 18, 20}) == 3.0);
    CHECK(w.v({19, 18, 17}, {17, 18, 17}) == 4.0);
    CHECK_THROWS_AS(w.validate(2), std::invalid_argument);
    w.validate(3);
}

TEST_CASE("kinf forms evaluate and invert") {
    KinfFn lin = KinfFn::linear(Decimal::parse("0.045"));
    CHECK(lin.eval(2.0) == doctest::Approx(0.09));
    CHECK(lin.inv(0.09) == doctest::Approx(2.0));
    CHECK(lin.is_linear());
    CHECK(lin.linear_coeff() == Decimal::parse("0.045"));

    KinfFn pw = KinfFn::power(2.0, 2.0);
    CHECK(pw.eval(3.0) == doctest::Approx(18.0));
    CHECK(pw.inv(18.0) == doctest::Approx(3.0));

    KinfFn tab = KinfFn::table({{1.0, 0.5}, {2.0, 2.0}, {4.0, 3.0}});
    CHECK(tab.eval(0.0) == 0.0);
    CHECK(tab.eval(1.5) == doctest::Approx(1.25)); // midpoint of the segment
    for (double y : {0.3, 0.5, 1.7, 2.9, 5.0})
        CHECK(tab.eval(tab.inv(y)) == doctest::Approx(y).epsilon(1e-9));
    CHECK_THROWS_AS(KinfFn::table({{2.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("falsifier flags the expansive pair and is worker independent") {
    NetworkModel m;
    m.n_comp = 2;
    m.dims = {1, 1};
    m.input_dims = {1, 1};
    std::vector<DecVec> grid;
    for (int k = -2; k <= 2; ++k) grid.push_back({Decimal(5 * k, -1)});
    m.inputs = {grid, grid};
    LinearCoupled lin;
    lin.blocks.resize(2);
    lin.blocks[0][0] = Matrix(1, 1);
    lin.blocks[0][0].at(0, 0) = -2;
    lin.blocks[1][1] = Matrix(1, 1);
    lin.blocks[1][1].at(0, 0) = -2;
    lin.gain = {Matrix(1, 1), Matrix(1, 1)};
    lin.gain[0].at(0, 0) = 1;
    lin.gain[1].at(0, 0) = 1;
    lin.offset = {{0.0}, {0.0}};
    m.dynamics = lin;
    m.finalize();

    GasCertificate cert = heating_certificate(); // claims a decrease, wrongly here
    std::vector<double> lo = {-2, -2}, hi = {2, 2};
    FalsifyResult r1 = falsify_certificate_serial(m, cert, lo, hi, 100, 5);
    CHECK(r1.found);
    CHECK(r1.condition == "decrease");
    for (int workers : {1, 2, 7}) {
        FalsifyResult rp = falsify_certificate(m, cert, lo, hi, 100, 5, workers);
        CHECK(rp.found == r1.found);
        CHECK(rp.sample_index == r1.sample_index);
        CHECK(rp.lhs == r1.lhs);
    }
}

TEST_CASE("heating certificate survives sampling") {
    NetworkModel m = heating_model(4);
    GasCertificate cert = heating_certificate();
    std::vector<double> lo(4, 0.0), hi(4, 50.0);
    FalsifyResult r = falsify_certificate(m, cert, lo, hi, 5000, 11, 2);
    CHECK(!r.found);
    CHECK(r.samples_run == 5000);
}

TEST_CASE("quantization bound is exact for all-linear certificates") {
    GasCertificate cert = heating_certificate();
    QuantBound b = quantization_bound(cert, Decimal::parse("0.5"));
    REQUIRE(b.exact.has_value());
    CHECK(b.exact->str() == "0.0225");
    CHECK(b.value == 0.0225);
    QuantBound half = quantization_bound(cert, Decimal::parse("0.25"));
    CHECK(half.exact->str() == "0.01125");
}

TEST_CASE("aligned planning picks mu = theta and a dividing nice step") {
    GasCertificate cert = heating_certificate();
    std::vector<Decimal> coords;
    for (const char* y : {"18", "18.25", "18.5", "19", "19.5", "20"})
        coords.push_back(Decimal::parse(y));
    AccuracyPlan plan = accuracy_plan(cert, Decimal::parse("0.5"), coords, PlanMode::aligned);
    REQUIRE(plan.feasible);
    CHECK(plan.mu_exact == Decimal::parse("0.5"));
    CHECK(plan.eta.str() == "0.01");
    CHECK(plan.bound.exact->str() == "0.0225");
    for (const Decimal& c : coords) CHECK(plan.eta.divides(c));
    CHECK(!validate_accuracy(cert, Decimal::parse("0.5"), plan.mu, plan.eta, coords,
                             PlanMode::aligned)
               .has_value());
    // the printed pair fails exactly on grid alignment
    CHECK(validate_accuracy(cert, Decimal::parse("0.5"), 0.5, Decimal::parse("0.0225"),
                            coords, PlanMode::aligned)
              .has_value());
}

TEST_CASE("split planning divides the budget") {
    GasCertificate cert = heating_certificate();
    Decimal theta = Decimal::parse("0.5");
    AccuracyPlan plan = accuracy_plan(cert, theta, {}, PlanMode::split);
    REQUIRE(plan.feasible);
    // mu + bound(mu)/2 <= theta, and mu sits near theta / (1 + 0.045/2)
    double bound = quantization_bound(cert, plan.mu).value;
    CHECK(plan.mu + bound / 2 <= 0.5 + 1e-12);
    CHECK(plan.mu == doctest::Approx(0.5 / 1.0225).epsilon(1e-6));
    CHECK(plan.eta.to_double() <= bound);
    CHECK(!validate_accuracy(cert, theta, plan.mu, plan.eta, {}, PlanMode::split).has_value());
}

TEST_CASE("external dynamics run through the same interfaces") {
    NetworkModel m;
    m.n_comp = 2;
    m.dims = {1, 1};
    m.input_dims = {1, 1};
    m.inputs = {{{Decimal::parse("0")}, {Decimal::parse("1")}},
                {{Decimal::parse("0")}, {Decimal::parse("1")}}};
    ExternDynamics ext;
    ext.neighbors = {{1}, {0}};
    ext.psi = [](int, const std::vector<double>& x, const std::vector<double>& w,
                 const std::vector<double>& u) {
        return std::vector<double>{0.5 * x[0] + 0.25 * w[0] + u[0]};
    };
    m.dynamics = ext;
    m.finalize();
    std::vector<double> y = step(m, {1.0, 2.0}, {1.0, 0.0});
    CHECK(y[0] == doctest::Approx(0.5 + 0.5 + 1.0));
    CHECK(y[1] == doctest::Approx(1.0 + 0.25));
}
