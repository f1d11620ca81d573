#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistbound/intpoly.hpp"

namespace twistbound {

/// Budget knobs for factorize(); defaults match the CLI configuration.
struct FactorEffort {
    unsigned long trial_division_bound = 1'000'000;
    unsigned long rho_iteration_budget = 10'000'000;
};

/// Thrown when the factoring budget runs out on a composite cofactor.
/// Certificate code must treat this as "cannot certify", never as a pass.
class IncompleteFactorizationError : public std::runtime_error {
  public:
    explicit IncompleteFactorizationError(Int cofactor)
        : std::runtime_error("factorization budget exhausted on composite cofactor " +
                             cofactor.get_str()),
          cofactor_(std::move(cofactor)) {}

    const Int& cofactor() const { return cofactor_; }

  private:
    Int cofactor_;
};

enum class Primality { composite, prime, probable_prime };

namespace detail {

/// One strong-pseudoprime round for odd n = 2^s * d + 1.
inline bool strong_probable_prime(const Int& n, const Int& base, const Int& d, unsigned long s) {
    Int a = base % n;
    if (a == 0) return true;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic for n below 3.317e24 (fixed strong-pseudoprime bases);
/// above that, 64 extra rounds leave error probability below 2^-128 and
/// the answer is reported as probable_prime.
inline Primality classify_prime(const Int& n) {
    if (n < 2) throw std::domain_error("primality of integer below 2");
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == p) return Primality::prime;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long b : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul})
        if (!detail::strong_probable_prime(n, Int(b), d, s)) return Primality::composite;
    static const Int deterministic_limit("3317044064679887385961981");
    if (n < deterministic_limit) return Primality::prime;
    // Extra rounds with bases derived deterministically from n itself.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(n);
    for (int round = 0; round < 64; ++round) {
        Int base = rng.get_z_range(n - 3) + 2;
        if (!detail::strong_probable_prime(n, base, d, s)) return Primality::composite;
    }
    return Primality::probable_prime;
}

inline bool is_prime(const Int& n) { return classify_prime(n) != Primality::composite; }

/// Sign times a sorted list of (prime, exponent) pairs.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors;
    bool probabilistic = false;

    Int value() const {
        Int v(sign);
        for (const auto& [p, e] : factors) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            v *= pe;
        }
        return v;
    }

    unsigned max_exponent() const {
        unsigned m = 0;
        for (const auto& [p, e] : factors)
            if (e > m) m = e;
        return m;
    }
};

namespace detail {

/// Brent-cycle Pollard rho; returns a nontrivial factor of odd composite n
/// or 0 when the shared iteration budget is exhausted.
inline Int brent_rho(const Int& n, unsigned long& budget) {
    for (unsigned long c = 1; budget > 0; ++c) {
        Int y = Int(2) + c, x, ys, q(1), g(1);
        const unsigned long block = 128;
        unsigned long r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const unsigned long steps = std::min(block, r - k);
                for (unsigned long i = 0; i < steps && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                    --budget;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1 && budget > 0) {
                --budget;
                ys = (ys * ys + c) % n;
                Int diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != 1 && g != n) return g;
    }
    return Int(0);
}

}  // namespace detail

/// Complete factorization of n != 0, or IncompleteFactorizationError naming
/// the composite cofactor when the effort budget is exhausted.
inline Factorization factorize(const Int& n, const FactorEffort& effort = {}) {
    if (n == 0) throw std::domain_error("factorization of zero");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    Int m = abs(n);
    auto record = [&out](const Int& p, unsigned e) {
        for (auto& [q, k] : out.factors)
            if (q == p) {
                k += e;
                return;
            }
        out.factors.emplace_back(p, e);
    };
    if (mpz_fits_ulong_p(m.get_mpz_t())) {
        // Fast native path for word-sized inputs.
        unsigned long v = m.get_ui();
        for (unsigned long p = 2; p * p <= v && p <= effort.trial_division_bound;
             p += (p == 2 ? 1 : 2)) {
            unsigned e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            if (e) record(Int(p), e);
        }
        if (v > 1) record(Int(v), 1);
        std::sort(out.factors.begin(), out.factors.end());
        return out;
    }
    for (unsigned long p = 2; p <= effort.trial_division_bound; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > m) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e) record(Int(p), e);
    }
    unsigned long budget = effort.rho_iteration_budget;
    std::vector<std::pair<Int, unsigned>> pending;
    if (m > 1) pending.emplace_back(m, 1);
    while (!pending.empty()) {
        auto [c, mult] = pending.back();
        pending.pop_back();
        const Primality kind = classify_prime(c);
        if (kind != Primality::composite) {
            if (kind == Primality::probable_prime) out.probabilistic = true;
            record(c, mult);
            continue;
        }
        if (mpz_perfect_power_p(c.get_mpz_t())) {
            for (unsigned long k = 2;; ++k) {
                Int root;
                if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), k)) {
                    pending.emplace_back(root, mult * k);
                    break;
                }
            }
            continue;
        }
        Int f = detail::brent_rho(c, budget);
        if (f == 0) throw IncompleteFactorizationError(c);
        pending.emplace_back(f, mult);
        pending.emplace_back(c / f, mult);
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

/// True iff no prime power p^k divides n.
inline bool is_kth_power_free(const Int& n, unsigned k, const FactorEffort& effort = {}) {
    if (n == 0) throw std::domain_error("power-freeness of zero");
    if (k < 2) throw std::domain_error("power-freeness needs k >= 2");
    return factorize(n, effort).max_exponent() < k;
}

/// Largest t with p^t | n, for n != 0.
inline unsigned long valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    if (p < 2) throw std::domain_error("valuation at integer below 2");
    Int rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

/// Legendre symbol (a|p) by Euler's criterion, p an odd prime.
inline int legendre(const Int& a, const Int& p) {
    if (p == 2 || !is_prime(p)) throw std::domain_error("legendre symbol needs an odd prime");
    Int e = (p - 1) / 2, r;
    Int base = a % p;
    if (base < 0) base += p;
    if (base == 0) return 0;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1 ? 1 : -1;
}

/// Distinct primes dividing |n|, n != 0.
inline std::set<Int> prime_divisors(const Int& n, const FactorEffort& effort = {}) {
    std::set<Int> out;
    for (const auto& [p, e] : factorize(n, effort).factors) out.insert(p);
    return out;
}

/// All primes <= limit, by sieve.
inline std::vector<unsigned long> primes_up_to(unsigned long limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<unsigned long> primes;
    for (unsigned long i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (unsigned long j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace twistbound
