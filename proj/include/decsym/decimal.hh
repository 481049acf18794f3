/*
 * decimal.hh
 *
 * Exact decimal scalars: value = mant * 10^expo with an int64 mantissa.
 * Symbol coordinates, grid parameters and region bounds are kept in this
 * form so that identity questions (is 18.25 on the 0.0225 grid?) have
 * exact answers; doubles are derived views used only inside dynamics
 * evaluation.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace decsym {

class Decimal {
public:
    Decimal() = default;
    Decimal(std::int64_t mant, std::int32_t expo) : mant_(mant), expo_(expo) { normalize(); }

    static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }
    // accepts forms like "18.25", "-.5", "2e-3"; throws std::invalid_argument
    static Decimal parse(const std::string& s);

    std::int64_t mant() const { return mant_; }
    std::int32_t expo() const { return expo_; }
    bool is_zero() const { return mant_ == 0; }
    bool is_negative() const { return mant_ < 0; }

    Decimal operator-() const { return Decimal(-mant_, expo_); }
    Decimal operator+(const Decimal& o) const;
    Decimal operator-(const Decimal& o) const { return *this + (-o); }
    Decimal operator*(const Decimal& o) const;
    Decimal mul_int(std::int64_t k) const;
    Decimal abs() const { return mant_ < 0 ? -*this : *this; }

    // -1 / 0 / +1 comparison against o
    int cmp(const Decimal& o) const;
    bool operator==(const Decimal& o) const { return mant_ == o.mant_ && expo_ == o.expo_; }
    bool operator!=(const Decimal& o) const { return !(*this == o); }
    bool operator<(const Decimal& o) const { return cmp(o) < 0; }
    bool operator<=(const Decimal& o) const { return cmp(o) <= 0; }
    bool operator>(const Decimal& o) const { return cmp(o) > 0; }
    bool operator>=(const Decimal& o) const { return cmp(o) >= 0; }

    // true iff o / *this is an integer (exact test, no rounding)
    bool divides(const Decimal& o) const;
    // *this / o when the quotient has a finite decimal expansion
    std::optional<Decimal> try_div(const Decimal& o) const;

    double to_double() const;
    std::string str() const;

private:
    void normalize();

    std::int64_t mant_ = 0;
    std::int32_t expo_ = 0;
};

using DecVec = std::vector<Decimal>;

std::string str(const DecVec& v);                 // space separated
int cmp(const DecVec& a, const DecVec& b);        // length first, then lexicographic
bool decvec_less(const DecVec& a, const DecVec& b);

} // namespace decsym
