/*
 * quantizer.hh
 *
 * Uniform state quantizer: cell k covers [eta*k - eta/2, eta*k + eta/2)
 * per coordinate, i.e. k = floor(z/eta + 1/2). The cell index is the
 * symbolic identity; reconstruction eta*k is exact decimal arithmetic.
 * Quantization itself runs in doubles, so values within 1e-9 of a cell
 * boundary raise a diagnostic flag (double rounding could tip them).
 */

#pragma once

#include "decsym/decimal.hh"

#include <cstdint>
#include <vector>

namespace decsym {

struct GridPoint {
    std::vector<std::int64_t> k;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

class Quantizer {
public:
    // one step per component, applied to every coordinate of its block
    explicit Quantizer(std::vector<Decimal> eta);
    static Quantizer uniform(int n_comp, const Decimal& eta);

    int n_comp() const { return static_cast<int>(eta_.size()); }
    const Decimal& eta(int i) const;
    const std::vector<Decimal>& etas() const { return eta_; }

    GridPoint quantize(int i, const std::vector<double>& z, bool* boundary_risk = nullptr) const;
    DecVec dequantize(int i, const GridPoint& g) const;
    std::vector<double> dequantize_dbl(int i, const GridPoint& g) const;

private:
    std::vector<Decimal> eta_;
    std::vector<double> eta_dbl_;
};

} // namespace decsym
