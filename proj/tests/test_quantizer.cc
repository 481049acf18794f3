#include "decsym/quantizer.hh"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace decsym;

TEST_CASE("cells are half open: eta*(k + 1/2) belongs to k+1") {
    for (const char* es : {"0.25", "0.5", "0.125", "0.01"}) {
        Decimal eta = Decimal::parse(es);
        Quantizer q = Quantizer::uniform(1, eta);
        for (std::int64_t k : {-7L, -1L, 0L, 1L, 12L}) {
            double edge = eta.to_double() * (static_cast<double>(k) + 0.5);
            GridPoint g = q.quantize(0, {edge});
            CHECK(g.k[0] == k + 1);
            // just below the edge still belongs to k
            GridPoint h = q.quantize(0, {edge - eta.to_double() * 1e-6});
            CHECK(h.k[0] == k);
        }
    }
}

TEST_CASE("quantize after dequantize is the identity") {
    Quantizer q = Quantizer::uniform(2, Decimal::parse("0.01"));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> cell(-5000, 5000);
    for (int it = 0; it < 1000; ++it) {
        GridPoint g{{cell(rng)}};
        CHECK(q.quantize(0, q.dequantize_dbl(0, g)) == g);
        DecVec exact = q.dequantize(0, g);
        CHECK(Decimal::parse("0.01").divides(exact[0]));
    }
}

TEST_CASE("rounding error stays within half a cell") {
    Decimal eta = Decimal::parse("0.0225");
    Quantizer q = Quantizer::uniform(1, eta);
    double e = eta.to_double();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-40.0, 40.0);
    int used = 0;
    while (used < 10000) {
        double z = dist(rng);
        double frac = std::abs(std::remainder(z / e + 0.5, 1.0));
        if (frac < 1e-6) continue; // keep clear of the boundary band
        ++used;
        GridPoint g = q.quantize(0, {z});
        double back = q.dequantize_dbl(0, g)[0];
        CHECK(std::abs(z - back) <= e / 2 + 1e-12);
    }
}

TEST_CASE("boundary band raises the risk flag") {
    Quantizer q = Quantizer::uniform(1, Decimal::parse("0.5"));
    bool risk = false;
    (void)q.quantize(0, {0.25 + 1e-12}, &risk);
    CHECK(risk);
    risk = false;
    (void)q.quantize(0, {0.1}, &risk);
    CHECK(!risk);
}

TEST_CASE("per component steps are independent") {
    Quantizer q({Decimal::parse("0.5"), Decimal::parse("0.25")});
    CHECK(q.n_comp() == 2);
    CHECK(q.eta(0) == Decimal::parse("0.5"));
    CHECK(q.eta(1) == Decimal::parse("0.25"));
    CHECK(q.quantize(0, {1.2}).k[0] == 2);  // 1.2/0.5 = 2.4 -> 2
    CHECK(q.quantize(1, {1.2}).k[0] == 5);  // 1.2/0.25 = 4.8 -> 5
    CHECK(q.dequantize(1, GridPoint{{5}})[0] == Decimal::parse("1.25"));
}

TEST_CASE("multi coordinate blocks quantize coordinate wise") {
    Quantizer q = Quantizer::uniform(1, Decimal::parse("0.5"));
    GridPoint g = q.quantize(0, {1.2, -0.7, 0.26});
    CHECK(g.k == std::vector<std::int64_t>{2, -1, 1});
}
