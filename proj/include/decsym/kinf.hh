/*
 * kinf.hh
 *
 * Class-K-infinity comparison functions used by the stability
 * certificates: linear, power, and monotone-table forms. Linear forms
 * carry exact decimal coefficients so that certificate algebra (bound
 * compositions) can stay exact when the data allows it.
 */

#pragma once

#include "decsym/decimal.hh"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace decsym {

class KinfFn {
public:
    struct Linear { Decimal c; };            // s -> c*s
    struct Power { double c, p; };           // s -> c*s^p
    struct Table {                           // piecewise linear through (0,0)
        std::vector<std::pair<double, double>> pts; // strictly increasing (s, v)
    };

    static KinfFn linear(Decimal c);
    static KinfFn power(double c, double p);
    static KinfFn table(std::vector<std::pair<double, double>> pts);

    double eval(double s) const;
    // inverse on [0, inf); tables are inverted by bisection to 1e-12 within
    // the sampled range and by inverting the extrapolation line outside it
    double inv(double y) const;

    bool is_linear() const { return std::holds_alternative<Linear>(f_); }
    const Decimal& linear_coeff() const { return std::get<Linear>(f_).c; }

    std::string str() const;

private:
    std::variant<Linear, Power, Table> f_;
};

} // namespace decsym
