#include "decsym/decimal.hh"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace decsym {

namespace {

using i128 = __int128;

const std::int64_t kPow10[19] = {
    1LL, 10LL, 100LL, 1000LL, 10000LL, 100000LL, 1000000LL, 10000000LL,
    100000000LL, 1000000000LL, 10000000000LL, 100000000000LL, 1000000000000LL,
    10000000000000LL, 100000000000000LL, 1000000000000000LL,
    10000000000000000LL, 100000000000000000LL, 1000000000000000000LL};

std::int64_t narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error("decimal mantissa overflow");
    return static_cast<std::int64_t>(v);
}

// mantissas scaled to the smaller of the two exponents
void align(const Decimal& a, const Decimal& b, i128& ma, i128& mb, std::int32_t& e) {
    e = std::min(a.expo(), b.expo());
    int sa = a.expo() - e, sb = b.expo() - e;
    if (sa > 38 || sb > 38) throw std::overflow_error("decimal exponent spread too large");
    ma = i128(a.mant());
    for (int i = 0; i < sa; ++i) ma *= 10;
    mb = i128(b.mant());
    for (int i = 0; i < sb; ++i) mb *= 10;
}

} // namespace

void Decimal::normalize() {
    if (mant_ == 0) { expo_ = 0; return; }
    while (mant_ % 10 == 0) { mant_ /= 10; ++expo_; }
}

Decimal Decimal::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    i128 mant = 0;
    std::int32_t expo = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        mant = mant * 10 + (s[i] - '0');
        any_digit = true;
        if (mant > i128(INT64_MAX)) throw std::invalid_argument("decimal literal too long: " + s);
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            mant = mant * 10 + (s[i] - '0');
            --expo;
            any_digit = true;
            if (mant > i128(INT64_MAX)) throw std::invalid_argument("decimal literal too long: " + s);
        }
    }
    if (!any_digit) throw std::invalid_argument("bad decimal literal: " + s);
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        std::size_t pos = 0;
        int e = std::stoi(s.substr(i), &pos);
        if (i + pos != s.size()) throw std::invalid_argument("bad decimal literal: " + s);
        expo += e;
        i = s.size();
    }
    if (i != s.size()) throw std::invalid_argument("bad decimal literal: " + s);
    return Decimal(neg ? -narrow(mant) : narrow(mant), expo);
}

Decimal Decimal::operator+(const Decimal& o) const {
    i128 ma, mb;
    std::int32_t e;
    align(*this, o, ma, mb, e);
    return Decimal(narrow(ma + mb), e);
}

Decimal Decimal::operator*(const Decimal& o) const {
    i128 p = i128(mant_) * i128(o.mant_);
    // strip factors of ten before narrowing so e.g. 0.5 * 0.2 survives scale
    std::int32_t e = expo_ + o.expo_;
    while (p != 0 && p % 10 == 0) { p /= 10; ++e; }
    return Decimal(narrow(p), e);
}

Decimal Decimal::mul_int(std::int64_t k) const {
    i128 p = i128(mant_) * i128(k);
    std::int32_t e = expo_;
    while (p != 0 && p % 10 == 0) { p /= 10; ++e; }
    return Decimal(narrow(p), e);
}

int Decimal::cmp(const Decimal& o) const {
    if (mant_ == o.mant_ && expo_ == o.expo_) return 0;
    i128 ma, mb;
    std::int32_t e;
    align(*this, o, ma, mb, e);
    return ma < mb ? -1 : (ma > mb ? 1 : 0);
}

bool Decimal::divides(const Decimal& o) const {
    if (mant_ == 0) throw std::domain_error("division by zero decimal");
    if (o.mant_ == 0) return true;
    i128 md, mq;
    std::int32_t e;
    align(o, *this, md, mq, e);
    return md % mq == 0;
}

std::optional<Decimal> Decimal::try_div(const Decimal& o) const {
    if (o.mant_ == 0) throw std::domain_error("division by zero decimal");
    if (mant_ == 0) return Decimal();
    i128 num = mant_ < 0 ? -i128(mant_) : i128(mant_);
    i128 den = o.mant_ < 0 ? -i128(o.mant_) : i128(o.mant_);
    bool neg = (mant_ < 0) != (o.mant_ < 0);
    std::int32_t e = expo_ - o.expo_;
    i128 q = num / den, r = num % den;
    // long division; terminates iff den = 2^a * 5^b after reduction
    for (int step = 0; r != 0; ++step) {
        if (step > 64 || q > i128(INT64_MAX) / 10) return std::nullopt;
        q *= 10;
        r *= 10;
        q += r / den;
        r %= den;
        --e;
    }
    return Decimal(neg ? -narrow(q) : narrow(q), e);
}

double Decimal::to_double() const {
    double m = static_cast<double>(mant_);
    if (expo_ == 0) return m;
    // powers of ten are exact doubles up to 1e22, so a single mul/div
    // gives the correctly rounded value for the whole domain we touch
    if (expo_ > 0) {
        if (expo_ <= 18) return m * static_cast<double>(kPow10[expo_]);
        return m * std::pow(10.0, expo_);
    }
    if (expo_ >= -18) return m / static_cast<double>(kPow10[-expo_]);
    return m / std::pow(10.0, -expo_);
}

std::string Decimal::str() const {
    if (mant_ == 0) return "0";
    std::string digits = std::to_string(mant_ < 0 ? -mant_ : mant_);
    std::string out = mant_ < 0 ? "-" : "";
    if (expo_ >= 0) {
        out += digits;
        out.append(expo_, '0');
    } else {
        int frac = -expo_;
        if (static_cast<int>(digits.size()) <= frac)
            digits.insert(0, frac - digits.size() + 1, '0');
        out += digits.substr(0, digits.size() - frac);
        out += '.';
        out += digits.substr(digits.size() - frac);
    }
    return out;
}

std::string str(const DecVec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += v[i].str();
    }
    return out;
}

int cmp(const DecVec& a, const DecVec& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = a[i].cmp(b[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool decvec_less(const DecVec& a, const DecVec& b) { return cmp(a, b) < 0; }

} // namespace decsym
