#include "decsym/bigcount.hh"

#include <stdexcept>

namespace decsym {

namespace {
constexpr std::uint64_t kBase = 1000000000ULL;
}

BigCount::BigCount(std::uint64_t v) {
    do {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    } while (v);
}

void BigCount::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigCount& BigCount::mul(std::uint64_t k) {
    // keep per-limb products inside u64: split k into base-1e9 digits
    if (k >= kBase) {
        BigCount lo = *this, hi = *this;
        lo.mul(k % kBase);
        hi.mul(k / kBase);
        hi.limbs_.insert(hi.limbs_.begin(), 0); // shift one limb
        *this = lo;
        return add(hi);
    }
    std::uint64_t carry = 0;
    for (auto& l : limbs_) {
        std::uint64_t p = std::uint64_t(l) * k + carry;
        l = static_cast<std::uint32_t>(p % kBase);
        carry = p / kBase;
    }
    while (carry) {
        limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
        carry /= kBase;
    }
    trim();
    return *this;
}

BigCount& BigCount::add(const BigCount& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t s = std::uint64_t(limbs_[i]) + carry +
                          (i < o.limbs_.size() ? o.limbs_[i] : 0);
        limbs_[i] = static_cast<std::uint32_t>(s % kBase);
        carry = s / kBase;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    trim();
    return *this;
}

bool BigCount::fits_u64() const {
    if (limbs_.size() > 3) return false;
    if (limbs_.size() < 3) return true;
    // 2^64-1 = 18,446,744,073,709,551,615 = 18 * 1e18 + ...
    return limbs_[2] < 18 ||
           (limbs_[2] == 18 && (limbs_[1] < 446744073 ||
                                (limbs_[1] == 446744073 && limbs_[0] <= 709551615)));
}

std::uint64_t BigCount::as_u64() const {
    if (!fits_u64()) throw std::overflow_error("counter exceeds uint64");
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
    return v;
}

std::string BigCount::str() const {
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string d = std::to_string(limbs_[i]);
        out.append(9 - d.size(), '0');
        out += d;
    }
    return out;
}

} // namespace decsym
