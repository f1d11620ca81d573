#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistbound/curves.hpp"
#include "twistbound/intpoly.hpp"
#include "twistbound/numtheory.hpp"

namespace twistbound {

struct SearchStats {
    std::uint64_t candidates_tested = 0;
    double elapsed_seconds = 0.0;
};

/// Involution structure of a point list: two-element orbits {P, iota(P)},
/// fixed points, and a maximal set Sigma with Sigma and iota(Sigma)
/// disjoint (one representative per orbit). Entries are indices into the
/// report's point list.
struct InvolutionPairing {
    std::vector<std::array<std::size_t, 2>> orbits;
    std::vector<std::size_t> fixed;
    std::vector<std::size_t> sigma_max;
};

struct SearchReport {
    Json curve;
    unsigned long height = 0;
    std::vector<HyperPoint> points;
    std::optional<InvolutionPairing> pairing;
    SearchStats stats;

    Json to_json() const {
        Json j;
        j["curve"] = curve;
        j["height"] = height;
        Json pts = Json::array();
        for (const HyperPoint& p : points) pts.push_back(p.to_json());
        j["points"] = pts;
        j["count"] = points.size();
        if (pairing) {
            Json orbits = Json::array();
            for (const auto& o : pairing->orbits) orbits.push_back(Json{o[0], o[1]});
            j["pairing"] = Json{{"orbits", orbits},
                                {"fixed", pairing->fixed},
                                {"sigma_max", pairing->sigma_max}};
        }
        j["stats"] = Json{{"candidates", stats.candidates_tested},
                          {"elapsed_seconds", stats.elapsed_seconds}};
        return j;
    }
};

struct ThueSearchReport {
    Json curve;
    unsigned long height = 0;
    std::vector<ThueSolution> solutions;
    SearchStats stats;

    Json to_json() const {
        Json j;
        j["curve"] = curve;
        j["height"] = height;
        Json sols = Json::array();
        for (const ThueSolution& s : solutions) sols.push_back(s.to_json());
        j["solutions"] = sols;
        j["count"] = solutions.size();
        j["stats"] = Json{{"candidates", stats.candidates_tested},
                          {"elapsed_seconds", stats.elapsed_seconds}};
        return j;
    }
};

/// All points (x, y) on d*y^2 = f(x) with x = a/b in lowest terms,
/// |a| <= H and 0 < b <= H, both y signs listed, plus the points at
/// infinity of the smooth model. A candidate x is accepted exactly when
/// the cleared-denominator integer d * b^(2*ceil(deg f / 2)) * f(a/b) is a
/// perfect square.
inline SearchReport search_hyperelliptic(const HyperellipticTwist& curve, unsigned long height) {
    if (height < 1) throw std::domain_error("need a positive search height");
    const auto started = std::chrono::steady_clock::now();
    SearchReport report;
    report.curve = curve.to_json();
    report.height = height;

    const auto deg = static_cast<unsigned long>(curve.f().degree());
    const unsigned long half = (deg + 1) / 2;
    if (curve.odd_degree()) {
        report.points.push_back(HyperPoint::infinity_point(curve));
    } else {
        Int lcd = curve.f().leading() * curve.d();
        if (lcd > 0 && mpz_perfect_square_p(lcd.get_mpz_t())) {
            report.points.push_back(HyperPoint::infinity_point(curve, 1));
            report.points.push_back(HyperPoint::infinity_point(curve, -1));
        }
    }
    const Int& d = curve.d();
    for (unsigned long b = 1; b <= height; ++b) {
        const Int bz(b);
        Int bhalf;
        mpz_pow_ui(bhalf.get_mpz_t(), bz.get_mpz_t(), half);
        for (long a = -static_cast<long>(height); a <= static_cast<long>(height); ++a) {
            if (std::gcd(a < 0 ? -a : a, static_cast<long>(b)) != 1) continue;
            ++report.stats.candidates_tested;
            const Int az(a);
            const Int cleared = d * curve.f().evaluate_homogeneous(az, bz, 2 * half);
            if (cleared == 0) {
                Rat x(az, bz);
                x.canonicalize();
                report.points.push_back(HyperPoint::affine(curve, x, Rat(0)));
            } else if (cleared > 0 && mpz_perfect_square_p(cleared.get_mpz_t())) {
                Int root;
                mpz_sqrt(root.get_mpz_t(), cleared.get_mpz_t());
                Rat x(az, bz);
                x.canonicalize();
                Rat y(root, d * bhalf);
                y.canonicalize();
                report.points.push_back(HyperPoint::affine(curve, x, y));
                report.points.push_back(HyperPoint::affine(curve, x, -y));
            }
        }
    }
    std::sort(report.points.begin(), report.points.end());
    report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

/// All rational solutions (X, Y) = (a/c, b/c) of F(X, Y) = h with
/// |a|, |b|, c <= H and gcd(a, b, c) = 1: for each primitive (a, b) the
/// unique candidate denominator is the exact n-th root of F(a, b)/h.
inline ThueSearchReport search_thue(const ThueTwist& curve, unsigned long height) {
    if (height < 1) throw std::domain_error("need a positive search height");
    const auto started = std::chrono::steady_clock::now();
    ThueSearchReport report;
    report.curve = curve.to_json();
    report.height = height;

    const unsigned long n = curve.degree_n();
    const long H = static_cast<long>(height);
    for (long a = -H; a <= H; ++a) {
        for (long b = -H; b <= H; ++b) {
            if (a == 0 && b == 0) continue;
            ++report.stats.candidates_tested;
            const Int value = curve.form().value_at(Int(a), Int(b));
            if (!mpz_divisible_p(value.get_mpz_t(), curve.h().get_mpz_t())) continue;
            const Int q = value / curve.h();
            if (q < 1) continue;
            Int c;
            if (!mpz_root(c.get_mpz_t(), q.get_mpz_t(), n)) continue;
            if (c > H) continue;
            Int g;
            mpz_gcd_ui(g.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(a < 0 ? -a : a));
            mpz_gcd_ui(g.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(b < 0 ? -b : b));
            if (g != 1) continue;
            report.solutions.push_back(ThueSolution::make(curve, Int(a), Int(b), c));
        }
    }
    std::sort(report.solutions.begin(), report.solutions.end());
    report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

/// Partitions a hyperelliptic search report into involution orbits and
/// fixed points and extracts a maximal Sigma with Sigma and iota(Sigma)
/// disjoint. The report must be involution-closed (search output is).
inline SearchReport pair_by_involution(SearchReport report) {
    InvolutionPairing pairing;
    std::vector<bool> used(report.points.size(), false);
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        if (used[i]) continue;
        const HyperPoint& p = report.points[i];
        if (p.involution_fixed()) {
            pairing.fixed.push_back(i);
            used[i] = true;
            continue;
        }
        const HyperPoint partner = p.involute();
        std::size_t j = i + 1;
        while (j < report.points.size() && !(report.points[j] == partner)) ++j;
        if (j == report.points.size())
            throw std::logic_error("point list is not closed under the involution");
        pairing.orbits.push_back({i, j});
        pairing.sigma_max.push_back(i);
        used[i] = used[j] = true;
    }
    report.pairing = std::move(pairing);
    return report;
}

namespace detail {

/// Pretty monomial rendering of a sparse polynomial in t, for witness tables.
inline std::string pretty_poly_in_t(const IntegerPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        const Int& c = p.coefficient(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        const Int ac = abs(c);
        const bool unit = ac == 1 && i > 0;
        if (!unit) out += ac.get_str();
        if (i > 0) {
            if (!unit) out += "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace detail

/// One verified witness of the parametric family: X(t), Y(t) with
/// Y^2 + Y = X^ell + t^(2 ell) as an identity in Z[t].
struct FamilyWitness {
    std::string X, Y;
    bool identity_holds = false;
};

struct FamilyVerification {
    unsigned long ell = 0;
    bool verified = false;
    std::array<FamilyWitness, 4> witnesses;

    Json to_json() const {
        Json ws = Json::array();
        for (const auto& w : witnesses)
            ws.push_back(Json{{"X", w.X}, {"Y", w.Y}, {"identity_holds", w.identity_holds}});
        return Json{{"ell", ell}, {"verified", verified}, {"witnesses", ws}};
    }
};

/// Verifies symbolically that Y^2 + Y = X^ell + t^(2 ell) holds for the
/// four parametric points with X in {t, -t, -t^2, t^4}.
inline FamilyVerification verify_family(unsigned long ell) {
    if (ell < 5 || ell % 2 == 0) throw std::domain_error("need an odd ell >= 5");
    const IntegerPolynomial t = IntegerPolynomial::monomial(Int(1), 1);
    const IntegerPolynomial t_ell = IntegerPolynomial::monomial(Int(1), ell);
    const IntegerPolynomial rhs_tail = IntegerPolynomial::monomial(Int(1), 2 * ell);
    const std::array<std::pair<IntegerPolynomial, IntegerPolynomial>, 4> table = {{
        {t, t_ell},
        {-t, -t_ell},
        {-(t * t), IntegerPolynomial{}},
        {t * t * t * t, rhs_tail},
    }};
    FamilyVerification out;
    out.ell = ell;
    out.verified = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& [X, Y] = table[i];
        const IntegerPolynomial residue = Y * Y + Y - X.pow(ell) - rhs_tail;
        out.witnesses[i] = {detail::pretty_poly_in_t(X), detail::pretty_poly_in_t(Y),
                            residue.is_zero()};
        out.verified = out.verified && residue.is_zero();
    }
    return out;
}

enum class PowerFreeStatus { yes, no, unknown };

/// Specialization of the family at an integer t, moved to the standard
/// model y^2 = x^ell + A with A = 4^(ell-1) (4 t^(2 ell) + 1) via
/// (X, Y) -> (4X, 2^(ell-1) (2Y + 1)); carries the four mapped witness
/// points (each checked exactly on construction) and reports whether A is
/// free of 2*ell-th prime powers.
struct FamilyInstance {
    unsigned long ell = 0;
    Int t;
    Int A;
    HyperellipticTwist curve;
    std::vector<HyperPoint> points;
    PowerFreeStatus A_power_free = PowerFreeStatus::unknown;

    Json to_json() const {
        Json pts = Json::array();
        for (const HyperPoint& p : points) pts.push_back(p.to_json());
        const char* pf = A_power_free == PowerFreeStatus::yes
                             ? "yes"
                             : (A_power_free == PowerFreeStatus::no ? "no" : "unknown");
        return Json{{"ell", ell},
                    {"t", detail::int_to_json(t)},
                    {"A", detail::int_to_json(A)},
                    {"curve", curve.to_json()},
                    {"points", pts},
                    {"A_2ell_power_free", pf}};
    }
};

inline FamilyInstance family_to_standard_model(unsigned long ell, const Int& t,
                                               const FactorEffort& effort = {}) {
    if (ell < 5 || ell % 2 == 0) throw std::domain_error("need an odd ell >= 5");
    if (t == 0) throw std::domain_error("need a nonzero parameter t");
    Int t2ell;
    mpz_pow_ui(t2ell.get_mpz_t(), t.get_mpz_t(), 2 * ell);
    Int four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, ell - 1);
    const Int A = four_pow * (4 * t2ell + 1);
    Int two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, ell - 1);

    std::vector<Int> coeffs(ell + 1, Int(0));
    coeffs[0] = A;
    coeffs[ell] = 1;
    FamilyInstance out{ell, t, A, HyperellipticTwist(IntegerPolynomial(std::move(coeffs)), Int(1)),
                       {}, PowerFreeStatus::unknown};

    Int t_ell;
    mpz_pow_ui(t_ell.get_mpz_t(), t.get_mpz_t(), ell);
    const std::array<std::pair<Int, Int>, 4> witnesses = {{
        {t, t_ell},
        {-t, -t_ell},
        {-(t * t), Int(0)},
        {t * t * t * t, t2ell},
    }};
    for (const auto& [X, Y] : witnesses)
        out.points.push_back(
            HyperPoint::affine(out.curve, Rat(4 * X), Rat(two_pow * (2 * Y + 1))));
    try {
        out.A_power_free = is_kth_power_free(A, static_cast<unsigned>(2 * ell), effort)
                               ? PowerFreeStatus::yes
                               : PowerFreeStatus::no;
    } catch (const IncompleteFactorizationError&) {
        out.A_power_free = PowerFreeStatus::unknown;
    }
    return out;
}

}  // namespace twistbound
