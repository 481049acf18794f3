/*
 * bigcount.hh
 *
 * Unsigned big integer for evaluation counters. The centralized counter
 * N_Q * prod_i |U_i| leaves uint64 range around a dozen components with
 * 41 inputs each, and the benchmark table wants the true value printed.
 * Only the operations the counters need are provided.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace decsym {

class BigCount {
public:
    BigCount() : limbs_{0} {}
    explicit BigCount(std::uint64_t v);

    BigCount& mul(std::uint64_t k);
    BigCount& add(const BigCount& o);

    bool operator==(const BigCount& o) const { return limbs_ == o.limbs_; }
    bool operator!=(const BigCount& o) const { return !(*this == o); }

    // exact value when it fits, otherwise nullopt-like flag via fits()
    bool fits_u64() const;
    std::uint64_t as_u64() const;

    std::string str() const;

private:
    void trim();
    std::vector<std::uint32_t> limbs_; // base 1e9, little endian
};

} // namespace decsym
