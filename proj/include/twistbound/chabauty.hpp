#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "twistbound/intpoly.hpp"
#include "twistbound/numtheory.hpp"

namespace twistbound {

/// Residue characteristic p together with the ramification index e = v(p)
/// of the local field the bound is computed over.
struct LocalValuationContext {
    Int p;
    unsigned long e;

    LocalValuationContext(Int prime, unsigned long ram_index)
        : p(std::move(prime)), e(ram_index) {
        if (e < 1) throw std::domain_error("ramification index must be positive");
        if (!is_prime(p)) throw std::domain_error("residue characteristic must be prime");
    }
};

/// delta(v, n) = max{ d >= 0 : e*v_p(n+1) + d <= e*v_p(n+d+1) }.
///
/// Any valid d forces p^ceil(d/e) | n+d+1, so p^ceil(d/e) <= n+d+1. The
/// most favorable d with ceil(d/e) = k is d = e*k, and once p^k > n+e*k+1
/// with (p-1)*p^k >= e the failure is permanent (the left side then grows
/// by more than e per block). That caps the search range; inside it every
/// d is tested against the exact defining condition, so no interval
/// structure of the valid set is assumed.
inline unsigned long delta(const LocalValuationContext& ctx, unsigned long n) {
    const Int n1 = Int(n) + 1;
    unsigned long last_possible_block = 0;
    Int pk(1);
    for (unsigned long k = 1;; ++k) {
        pk *= ctx.p;
        if (pk <= Int(n) + Int(ctx.e) * k + 1)
            last_possible_block = k;
        else if ((ctx.p - 1) * pk >= ctx.e)
            break;
    }
    const unsigned long d_cap = ctx.e * last_possible_block;
    const unsigned long base = ctx.e * valuation(n1, ctx.p);
    unsigned long best = 0;
    for (unsigned long d = 1; d <= d_cap; ++d)
        if (base + d <= ctx.e * valuation(n1 + d, ctx.p)) best = d;
    return best;
}

/// Delta_v(s, r) = max{ sum_j delta(v, m_j) : m_1 + ... + m_s <= r } over
/// nonnegative m_j (zero parts allowed). Computed by dynamic programming
/// over (parts used, budget left); parts beyond the first r can only be
/// zero-valued and contribute delta(v, 0) each.
inline unsigned long big_delta(const LocalValuationContext& ctx, unsigned long s,
                               unsigned long r) {
    if (s == 0) return 0;
    std::vector<unsigned long> part_value(r + 1);
    for (unsigned long m = 0; m <= r; ++m) part_value[m] = delta(ctx, m);
    const unsigned long s_eff = std::min(s, r);
    const unsigned long surplus = (s - s_eff) * part_value[0];
    std::vector<unsigned long> best(r + 1, 0);
    for (unsigned long j = 0; j < s_eff; ++j) {
        std::vector<unsigned long> next(r + 1, 0);
        for (unsigned long b = 0; b <= r; ++b)
            for (unsigned long m = 0; m <= b; ++m)
                next[b] = std::max(next[b], part_value[m] + best[b - m]);
        best = std::move(next);
    }
    return surplus + best[r];
}

/// Value of f_C(r): a nonnegative integer for r < g, the Infinite
/// sentinel once r >= g. Any bound assembled from an infinite value is
/// itself infinite, so callers reject before assembling.
class FValue {
  public:
    static FValue infinite() { return FValue(true, 0); }
    static FValue finite(unsigned long v) { return FValue(false, v); }

    bool is_infinite() const { return infinite_; }

    unsigned long value() const {
        if (infinite_) throw std::logic_error("finite value of the Infinite sentinel");
        return value_;
    }

    friend bool operator==(const FValue& a, const FValue& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

  private:
    FValue(bool inf, unsigned long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    unsigned long value_;
};

/// f_C for a hyperelliptic curve of genus g >= 2: 2r for r < g.
inline FValue f_hyperelliptic(unsigned long r, unsigned long g) {
    if (g < 2) throw std::domain_error("hyperelliptic genus must be at least 2");
    return r < g ? FValue::finite(2 * r) : FValue::infinite();
}

/// f_C for a smooth plane curve of degree n >= 4, genus g = (n-1)(n-2)/2:
/// r + binom(n-a, 2) - 1 with a = max{ k : r + binom(k, 2) < g }.
inline FValue f_plane(unsigned long r, unsigned long n) {
    if (n < 4) throw std::domain_error("plane curve degree must be at least 4");
    const unsigned long g = (n - 1) * (n - 2) / 2;
    if (r >= g) return FValue::infinite();
    unsigned long a = n - 2;
    while (r + a * (a - 1) / 2 >= g) --a;  // a = 1 always qualifies
    const unsigned long m = n - a;
    return FValue::finite(r + m * (m - 1) / 2 - 1);
}

/// One assembled local bound: residue_count + f_value + Delta correction.
struct LocalBoundData {
    Int p;
    unsigned long e;
    unsigned long residue_count;
    unsigned long f_value;
    unsigned long delta_correction;
    unsigned long bound;
};

inline LocalBoundData coleman_bound(const LocalValuationContext& ctx,
                                    unsigned long residue_count, unsigned long f_value) {
    const unsigned long correction = big_delta(ctx, residue_count, f_value);
    return LocalBoundData{ctx.p, ctx.e, residue_count, f_value, correction,
                          residue_count + f_value + correction};
}

}  // namespace twistbound
