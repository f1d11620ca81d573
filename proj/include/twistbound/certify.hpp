#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistbound/chabauty.hpp"
#include "twistbound/curves.hpp"
#include "twistbound/intpoly.hpp"
#include "twistbound/numtheory.hpp"

namespace twistbound {

enum class TheoremId { hc_independence, hc_twist_bound, thue_bound, coleman };

inline std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::hc_independence: return "HC-independence";
        case TheoremId::hc_twist_bound: return "HC-twist-bound";
        case TheoremId::thue_bound: return "Thue-bound";
        case TheoremId::coleman: return "Coleman";
    }
    throw std::logic_error("unreachable");
}

/// One verified hypothesis: a stable name, the instantiated condition as
/// human-readable text, and whether it held.
struct Check {
    std::string name;
    std::string condition;
    bool pass;
};

enum class CertStatus { accepted, rejected };

/// Outcome of a hypothesis check run: which theorem, the exact inputs, the
/// assumed rank (always an assumption, never computed), the witness prime
/// when one was found, every condition with its pass/fail, and either the
/// resulting bound or a structured rejection.
struct BoundCertificate {
    TheoremId theorem = TheoremId::hc_independence;
    Json inputs;
    unsigned long assumed_rank = 0;
    Int witness_prime{0};
    std::vector<Check> checks;
    Json bound;  // number, "Infinite", or "independence of rank = n"
    CertStatus status = CertStatus::rejected;
    std::string reason;         // nonempty iff rejected
    bool unverifiable = false;  // rejection caused by factoring budget, not a failed hypothesis
    int tier = 0;               // Thue certificates: 1 or 2
    Json extra;                 // theorem-specific payload (e.g. Coleman local data)

    bool accepted() const { return status == CertStatus::accepted; }

    unsigned long numeric_bound() const {
        if (!bound.is_number_unsigned() && !bound.is_number_integer())
            throw std::logic_error("certificate carries no numeric bound");
        return bound.get<unsigned long>();
    }

    Json to_json() const {
        Json j;
        j["theorem"] = theorem_name(theorem);
        j["inputs"] = inputs;
        j["assumed_rank"] = assumed_rank;
        if (witness_prime != 0) j["witness_prime"] = detail::int_to_json(witness_prime);
        Json cs = Json::array();
        for (const Check& c : checks)
            cs.push_back(Json{{"name", c.name}, {"condition", c.condition}, {"pass", c.pass}});
        j["checks"] = cs;
        if (tier != 0) j["tier"] = tier;
        j["bound"] = bound;
        j["status"] = accepted() ? "accepted" : "rejected";
        if (!accepted()) j["reason"] = reason;
        if (unverifiable) j["unverifiable"] = true;
        if (!extra.is_null()) j["details"] = extra;
        return j;
    }
};

/// Witness threshold of the twist master inequality p > m(Gamma)*e_v + f~ + 1.
inline unsigned long master_threshold(unsigned long m_gamma, unsigned long e_v,
                                      unsigned long f_tilde) {
    return m_gamma * e_v + f_tilde + 1;
}

namespace detail {

inline void finalize(BoundCertificate& cert) {
    std::string failed;
    for (const Check& c : cert.checks)
        if (!c.pass) failed += (failed.empty() ? "" : "; ") + c.name;
    if (failed.empty()) {
        cert.status = CertStatus::accepted;
    } else {
        cert.status = CertStatus::rejected;
        cert.reason = (cert.unverifiable ? "unverifiable: " : "failed: ") + failed;
        cert.bound = nullptr;
        cert.witness_prime = 0;
    }
}

inline bool check_squarefree_poly(BoundCertificate& cert, const IntegerPolynomial& f,
                                  const std::string& label) {
    const bool ok = is_squarefree_poly(f);
    cert.checks.push_back(
        {label + "_squarefree", label + " is squarefree: gcd(" + label + ", " + label + "') is constant",
         ok});
    return ok;
}

/// Records nonzero and k-th-power-free checks for a twist parameter and
/// returns its factorization, or nullopt when further checks are blocked.
inline std::optional<Factorization> check_twist_parameter(BoundCertificate& cert, const Int& value,
                                                          const std::string& label, unsigned k,
                                                          const FactorEffort& effort) {
    if (value == 0) {
        cert.checks.push_back({label + "_nonzero", label + " != 0", false});
        return std::nullopt;
    }
    cert.checks.push_back({label + "_nonzero", label + " != 0", true});
    Factorization fact;
    try {
        fact = factorize(value, effort);
    } catch (const IncompleteFactorizationError& e) {
        cert.unverifiable = true;
        cert.checks.push_back({label + "_power_free",
                               "factorization of " + label + " = " + value.get_str() +
                                   " exhausted its budget (composite cofactor " +
                                   e.cofactor().get_str() + ")",
                               false});
        return std::nullopt;
    }
    const bool free = fact.max_exponent() < k;
    const std::string what = k == 2 ? "squarefree" : "free of prime " + std::to_string(k) + "th powers";
    cert.checks.push_back({label + "_power_free", label + " = " + value.get_str() + " is " + what, free});
    return fact;
}

/// Smallest prime divisor of the factored parameter exceeding the
/// threshold and avoiding the listed obstructions; 0 when none qualifies.
struct WitnessQuery {
    unsigned long threshold;
    const Int* avoid_divisor_of = nullptr;  // require p not dividing this
    bool exclude_two = false;
};

inline Int find_witness(const Factorization& fact, const WitnessQuery& q) {
    for (const auto& [p, e] : fact.factors) {
        if (p <= q.threshold) continue;
        if (q.exclude_two && p == 2) continue;
        if (q.avoid_divisor_of != nullptr &&
            mpz_divisible_p(q.avoid_divisor_of->get_mpz_t(), p.get_mpz_t()))
            continue;
        return p;
    }
    return Int(0);
}

}  // namespace detail

/// Independence certificate for the quadratic twist d*y^2 = f(x): accepted
/// when f and d are squarefree, n <= g, and some prime p | d has
/// p > 2n + 1 and p coprime to the degree-(2g+2) discriminant. The
/// conclusion is that every n-element set of rational points meeting its
/// involution image trivially generates rank n in the Jacobian.
inline BoundCertificate certify_independence(const IntegerPolynomial& f, const Int& d,
                                             unsigned long n_points,
                                             const FactorEffort& effort = {}) {
    if (f.degree() < 5) throw std::domain_error("need deg f >= 5");
    if (n_points == 0) throw std::domain_error("need a positive number of points");
    const unsigned long g = (static_cast<unsigned long>(f.degree()) - 1) / 2;
    const Int disc = binary_discriminant(BinaryForm(f, 2 * g + 2));

    BoundCertificate cert;
    cert.theorem = TheoremId::hc_independence;
    cert.assumed_rank = n_points;
    cert.inputs = Json{{"f", f.to_string()},
                       {"d", detail::int_to_json(d)},
                       {"n_points", n_points},
                       {"genus", g},
                       {"discriminant", disc.get_str()}};

    detail::check_squarefree_poly(cert, f, "f");
    cert.checks.push_back({"points_in_range", "n = " + std::to_string(n_points) +
                                                  " <= g = " + std::to_string(g),
                           n_points <= g});
    const auto fact = detail::check_twist_parameter(cert, d, "d", 2, effort);
    if (fact) {
        const unsigned long threshold = master_threshold(2, 1, 2 * (n_points - 1));
        const Int witness = detail::find_witness(*fact, {threshold, &disc});
        const std::string cond =
            witness != 0
                ? "p = " + witness.get_str() + " divides d, p > 2n+1 = " + std::to_string(threshold) +
                      ", p does not divide Delta = " + disc.get_str()
                : "no prime divisor of d = " + d.get_str() + " has p > 2n+1 = " +
                      std::to_string(threshold) + " and p not dividing Delta = " + disc.get_str();
        cert.checks.push_back({"witness_prime", cond, witness != 0});
        cert.witness_prime = witness;
    }
    cert.bound = "independence of rank = " + std::to_string(n_points);
    detail::finalize(cert);
    if (cert.accepted())
        cert.extra = Json{{"conclusion",
                           "every set S of at most " + std::to_string(n_points) +
                               " rational points with S and iota(S) disjoint generates a subgroup "
                               "of rank #S in the Jacobian"}};
    return cert;
}

/// Point-count certificate for the quadratic twist: accepted when f and d
/// are squarefree, r < g, and some prime p | d has p > 2r + 3 and p
/// coprime to the discriminant; the bound is 2r plus the number of
/// rational Weierstrass points, equivalently at most r pairs of rational
/// non-Weierstrass points.
inline BoundCertificate certify_twist_bound(const IntegerPolynomial& f, const Int& d,
                                            unsigned long r, const FactorEffort& effort = {}) {
    if (f.degree() < 5) throw std::domain_error("need deg f >= 5");
    const unsigned long g = (static_cast<unsigned long>(f.degree()) - 1) / 2;
    const Int disc = binary_discriminant(BinaryForm(f, 2 * g + 2));

    BoundCertificate cert;
    cert.theorem = TheoremId::hc_twist_bound;
    cert.assumed_rank = r;
    cert.inputs = Json{{"f", f.to_string()},
                       {"d", detail::int_to_json(d)},
                       {"r", r},
                       {"genus", g},
                       {"discriminant", disc.get_str()}};

    detail::check_squarefree_poly(cert, f, "f");
    cert.checks.push_back(
        {"rank_in_range", "r = " + std::to_string(r) + " < g = " + std::to_string(g), r < g});
    const auto fact = detail::check_twist_parameter(cert, d, "d", 2, effort);
    if (fact) {
        const unsigned long threshold = master_threshold(2, 1, 2 * r);
        const Int witness = detail::find_witness(*fact, {threshold, &disc});
        const std::string cond =
            witness != 0
                ? "p = " + witness.get_str() + " divides d, p > 2r+3 = " + std::to_string(threshold) +
                      ", p does not divide Delta = " + disc.get_str()
                : "no prime divisor of d = " + d.get_str() + " has p > 2r+3 = " +
                      std::to_string(threshold) + " and p not dividing Delta = " + disc.get_str();
        cert.checks.push_back({"witness_prime", cond, witness != 0});
        cert.witness_prime = witness;
    }
    detail::finalize(cert);
    if (cert.accepted()) {
        // f and d already verified squarefree, so the model constructs.
        const HyperellipticTwist curve(f, d, effort);
        const unsigned long w = weierstrass_points(curve).size();
        cert.bound = 2 * r + w;
        cert.extra = Json{{"rational_weierstrass_points", w},
                          {"non_weierstrass_pairs_bound", r}};
    }
    return cert;
}

/// Thue certificate for F(X, Y) = h with F squarefree of degree n >= 3 and
/// h free of n-th prime powers. Tier 1 (r <= n - 3, witness p > n + r + 1)
/// bounds the rational solutions by r; tier 2 (r <= n(n-3)/2, witness
/// p > n + 2r + 1) bounds them by 2r. The witness prime must divide h and
/// avoid both disc(F) and n.
inline BoundCertificate certify_thue(const BinaryForm& F, const Int& h, unsigned long r,
                                     const FactorEffort& effort = {}) {
    if (F.formal_degree < 3) throw std::domain_error("need a form of degree n >= 3");
    if (F.is_zero()) throw std::domain_error("need a nonzero form");
    const unsigned long n = F.formal_degree;
    const Int disc = binary_discriminant(F);

    BoundCertificate cert;
    cert.theorem = TheoremId::thue_bound;
    cert.assumed_rank = r;
    cert.inputs = Json{{"F", F.to_string()},
                       {"h", detail::int_to_json(h)},
                       {"r", r},
                       {"n", n},
                       {"discriminant", disc.get_str()}};

    cert.checks.push_back({"F_squarefree", "disc(F) = " + disc.get_str() + " != 0", disc != 0});
    const bool tier1 = r + 3 <= n;
    const bool tier2 = 2 * r <= n * (n - 3);
    cert.tier = tier1 ? 1 : (tier2 ? 2 : 0);
    const std::string rank_cond =
        tier1 ? "r = " + std::to_string(r) + " <= n-3 = " + std::to_string(n - 3) + " (tier 1)"
              : "r = " + std::to_string(r) + " <= n(n-3)/2 = " + std::to_string(n * (n - 3) / 2) +
                    (tier2 ? " (tier 2; tier 1 needs r <= n-3)" : " fails in both tiers");
    cert.checks.push_back({"rank_in_range", rank_cond, tier1 || tier2});
    const auto fact = detail::check_twist_parameter(cert, h, "h", static_cast<unsigned>(n), effort);
    if (fact && (tier1 || tier2)) {
        const unsigned long f_tilde = tier1 ? r : 2 * r;
        const unsigned long threshold = master_threshold(n, 1, f_tilde);
        const Int n_int(n);
        Int witness(0);
        for (const auto& [p, e] : fact->factors) {
            if (p <= threshold) continue;
            if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
            if (mpz_divisible_p(n_int.get_mpz_t(), p.get_mpz_t())) continue;
            witness = p;
            break;
        }
        const std::string label = tier1 ? "n+r+1" : "n+2r+1";
        const std::string cond =
            witness != 0 ? "p = " + witness.get_str() + " divides h, p > " + label + " = " +
                               std::to_string(threshold) + ", p does not divide disc(F) = " +
                               disc.get_str() + ", p does not divide n = " + std::to_string(n)
                         : "no prime divisor of h = " + h.get_str() + " has p > " + label + " = " +
                               std::to_string(threshold) +
                               " avoiding disc(F) = " + disc.get_str() + " and n";
        cert.checks.push_back({"witness_prime", cond, witness != 0});
        cert.witness_prime = witness;
    }
    detail::finalize(cert);
    if (cert.accepted()) {
        cert.bound = tier1 ? r : 2 * r;
        cert.extra = Json{{"bounded_quantity", "rational solutions of F(X, Y) = h"}};
    }
    return cert;
}

enum class ExceptionalMode { independence, bound };

/// The finite set of positive squarefree d whose prime support lies in
/// {p <= 2n+3} (independence mode) or {p <= 2r+3} (bound mode) joined with
/// the primes of the discriminant; every squarefree d outside it admits a
/// witness prime. Enumerates all subset products.
inline std::set<Int> exceptional_set(const IntegerPolynomial& f, unsigned long n_or_r,
                                     ExceptionalMode mode, const FactorEffort& effort = {}) {
    if (f.degree() < 5) throw std::domain_error("need deg f >= 5");
    if (!is_squarefree_poly(f)) throw std::domain_error("need squarefree f");
    const unsigned long g = (static_cast<unsigned long>(f.degree()) - 1) / 2;
    const Int disc = binary_discriminant(BinaryForm(f, 2 * g + 2));
    const unsigned long threshold = 2 * n_or_r + 3;
    (void)mode;  // both modes share the 2*arg + 3 prime cutoff
    std::set<Int> support;
    for (unsigned long p : primes_up_to(threshold)) support.insert(Int(p));
    for (const Int& p : prime_divisors(disc, effort)) support.insert(p);
    if (support.size() > 30) throw std::runtime_error("exceptional prime support too large");
    std::vector<Int> primes(support.begin(), support.end());
    std::set<Int> out;
    const std::size_t subsets = std::size_t{1} << primes.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        Int product(1);
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask >> i & 1) product *= primes[i];
        out.insert(product);
    }
    return out;
}

/// Best Coleman prime for d*y^2 = f(x) at assumed rank r < g: over odd
/// primes p <= prime_limit of good reduction, assemble
/// count + f(r) + Delta and return the minimizing (prime, data), ties to
/// the smaller prime.
inline std::pair<Int, LocalBoundData> best_coleman_prime(const IntegerPolynomial& f, const Int& d,
                                                         unsigned long r, unsigned long prime_limit,
                                                         const FactorEffort& effort = {}) {
    const HyperellipticTwist curve(f, d, effort);
    if (r >= curve.genus()) throw std::domain_error("need assumed rank below the genus");
    if (prime_limit < 3) throw std::domain_error("need prime_limit >= 3");
    const unsigned long f_value = f_hyperelliptic(r, curve.genus()).value();
    std::optional<std::pair<Int, LocalBoundData>> best;
    for (unsigned long p : primes_up_to(prime_limit)) {
        if (p == 2) continue;
        const Int pz(p);
        if (mpz_divisible_p(curve.d().get_mpz_t(), pz.get_mpz_t())) continue;
        if (mpz_divisible_p(curve.discriminant().get_mpz_t(), pz.get_mpz_t())) continue;
        const unsigned long count = count_points_hyperelliptic(curve, pz);
        const LocalBoundData data = coleman_bound(LocalValuationContext(pz, 1), count, f_value);
        if (!best || data.bound < best->second.bound) best = {pz, data};
    }
    if (!best) throw std::runtime_error("no admissible prime up to the limit");
    return *best;
}

inline Json local_bound_to_json(const LocalBoundData& data) {
    return Json{{"p", detail::int_to_json(data.p)},
                {"e", data.e},
                {"residue_count", data.residue_count},
                {"f_value", data.f_value},
                {"delta_correction", data.delta_correction},
                {"bound", data.bound}};
}

/// Coleman certificate wrapping best_coleman_prime, with the full table of
/// admissible primes evaluated.
inline BoundCertificate certify_coleman(const IntegerPolynomial& f, const Int& d, unsigned long r,
                                        unsigned long prime_limit, const FactorEffort& effort = {}) {
    if (f.degree() < 5) throw std::domain_error("need deg f >= 5");
    const unsigned long g = (static_cast<unsigned long>(f.degree()) - 1) / 2;
    const Int disc = binary_discriminant(BinaryForm(f, 2 * g + 2));

    BoundCertificate cert;
    cert.theorem = TheoremId::coleman;
    cert.assumed_rank = r;
    cert.inputs = Json{{"f", f.to_string()},
                       {"d", detail::int_to_json(d)},
                       {"r", r},
                       {"prime_limit", prime_limit},
                       {"genus", g},
                       {"discriminant", disc.get_str()}};

    detail::check_squarefree_poly(cert, f, "f");
    cert.checks.push_back(
        {"rank_in_range", "r = " + std::to_string(r) + " < g = " + std::to_string(g), r < g});
    const auto fact = detail::check_twist_parameter(cert, d, "d", 2, effort);
    const bool model_ok = std::all_of(cert.checks.begin(), cert.checks.end(),
                                      [](const Check& c) { return c.pass; });
    if (fact && model_ok) {
        const HyperellipticTwist curve(f, d, effort);
        const unsigned long f_value = f_hyperelliptic(r, g).value();
        Json table = Json::array();
        std::optional<std::pair<Int, LocalBoundData>> best;
        for (unsigned long p : primes_up_to(prime_limit)) {
            if (p == 2) continue;
            const Int pz(p);
            if (mpz_divisible_p(curve.d().get_mpz_t(), pz.get_mpz_t())) continue;
            if (mpz_divisible_p(curve.discriminant().get_mpz_t(), pz.get_mpz_t())) continue;
            const unsigned long count = count_points_hyperelliptic(curve, pz);
            const LocalBoundData data = coleman_bound(LocalValuationContext(pz, 1), count, f_value);
            table.push_back(local_bound_to_json(data));
            if (!best || data.bound < best->second.bound) best = {pz, data};
        }
        cert.checks.push_back({"admissible_prime",
                               "some odd prime p <= " + std::to_string(prime_limit) +
                                   " avoids d and the discriminant",
                               best.has_value()});
        if (best) {
            cert.witness_prime = best->first;
            cert.bound = best->second.bound;
            cert.extra = Json{{"best", local_bound_to_json(best->second)}, {"evaluated", table}};
        }
    }
    detail::finalize(cert);
    return cert;
}

/// Re-runs the appropriate hypothesis check from a certificate's recorded
/// inputs; certificates are self-verifying in the sense that this
/// reproduces them bit for bit.
inline BoundCertificate recertify(const Json& certificate, const FactorEffort& effort = {}) {
    const std::string theorem = certificate.at("theorem").get<std::string>();
    const Json& in = certificate.at("inputs");
    if (theorem == "HC-independence")
        return certify_independence(IntegerPolynomial::from_string(in.at("f").get<std::string>()),
                                    detail::int_from_json(in.at("d")),
                                    in.at("n_points").get<unsigned long>(), effort);
    if (theorem == "HC-twist-bound")
        return certify_twist_bound(IntegerPolynomial::from_string(in.at("f").get<std::string>()),
                                   detail::int_from_json(in.at("d")),
                                   in.at("r").get<unsigned long>(), effort);
    if (theorem == "Thue-bound")
        return certify_thue(BinaryForm::from_string(in.at("F").get<std::string>()),
                            detail::int_from_json(in.at("h")), in.at("r").get<unsigned long>(),
                            effort);
    if (theorem == "Coleman")
        return certify_coleman(IntegerPolynomial::from_string(in.at("f").get<std::string>()),
                               detail::int_from_json(in.at("d")), in.at("r").get<unsigned long>(),
                               in.at("prime_limit").get<unsigned long>(), effort);
    throw std::invalid_argument("unknown theorem id: " + theorem);
}

}  // namespace twistbound
