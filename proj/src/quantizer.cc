#include "decsym/quantizer.hh"

#include <cmath>
#include <stdexcept>

namespace decsym {

Quantizer::Quantizer(std::vector<Decimal> eta) : eta_(std::move(eta)) {
    if (eta_.empty()) throw std::invalid_argument("quantizer needs at least one step");
    for (const Decimal& e : eta_) {
        if (!(e > Decimal())) throw std::invalid_argument("quantizer steps must be positive");
        eta_dbl_.push_back(e.to_double());
    }
}

Quantizer Quantizer::uniform(int n_comp, const Decimal& eta) {
    return Quantizer(std::vector<Decimal>(n_comp, eta));
}

const Decimal& Quantizer::eta(int i) const {
    if (i < 0 || i >= n_comp()) throw std::out_of_range("component index out of range");
    return eta_[i];
}

GridPoint Quantizer::quantize(int i, const std::vector<double>& z, bool* boundary_risk) const {
    if (i < 0 || i >= n_comp()) throw std::out_of_range("component index out of range");
    GridPoint g;
    g.k.reserve(z.size());
    for (double zc : z) {
        double v = zc / eta_dbl_[i] + 0.5;
        if (boundary_risk && std::abs(v - std::nearbyint(v)) < 1e-9) *boundary_risk = true;
        g.k.push_back(static_cast<std::int64_t>(std::floor(v)));
    }
    return g;
}

DecVec Quantizer::dequantize(int i, const GridPoint& g) const {
    if (i < 0 || i >= n_comp()) throw std::out_of_range("component index out of range");
    DecVec p;
    p.reserve(g.k.size());
    for (std::int64_t k : g.k) p.push_back(eta_[i].mul_int(k));
    return p;
}

std::vector<double> Quantizer::dequantize_dbl(int i, const GridPoint& g) const {
    DecVec p = dequantize(i, g);
    std::vector<double> d;
    d.reserve(p.size());
    for (const Decimal& c : p) d.push_back(c.to_double());
    return d;
}

} // namespace decsym
