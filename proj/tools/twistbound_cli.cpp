// Command-line front end: parses one subcommand, runs the corresponding
// library operation, and prints a JSON (or table) report to stdout.
//
// Exit codes: 0 accepted/success, 1 rejected hypotheses, 2 usage or
// internal error, 3 unverifiable (factoring budget exhausted).

#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistbound/certify.hpp"
#include "twistbound/config.hpp"
#include "twistbound/curves.hpp"
#include "twistbound/intpoly.hpp"
#include "twistbound/search.hpp"

namespace {

using twistbound::BinaryForm;
using twistbound::BoundCertificate;
using twistbound::Int;
using twistbound::IntegerPolynomial;
using twistbound::Json;
using twistbound::RunConfig;

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnverifiable = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntegerPolynomial parse_poly(const std::string& flag, const std::string& text) {
    try {
        return IntegerPolynomial::from_string(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

BinaryForm parse_form(const std::string& flag, const std::string& text) {
    try {
        return BinaryForm::from_string(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

Int parse_int(const std::string& flag, const std::string& text) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(flag + ": \"" + text + "\" is not an integer");
    }
}

void print_table_value(const std::string& key, const Json& value, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (value.is_object()) {
        std::cout << pad << key << ":\n";
        for (const auto& [k, v] : value.items()) print_table_value(k, v, indent + 2);
    } else if (value.is_array()) {
        std::cout << pad << key << ":\n";
        std::size_t i = 0;
        for (const auto& v : value) print_table_value("[" + std::to_string(i++) + "]", v, indent + 2);
    } else {
        std::cout << pad << key << ": " << value.dump() << "\n";
    }
}

void emit(const RunConfig& config, const std::string& command, const Json& result) {
    Json envelope;
    envelope["tool"] = twistbound::kToolName;
    envelope["version"] = twistbound::kToolVersion;
    envelope["command"] = command;
    envelope["config"] = config.to_json();
    envelope["result"] = result;
    if (config.output_mode == "json") {
        std::cout << envelope.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : envelope.items()) print_table_value(k, v);
    }
}

int certificate_exit(const BoundCertificate& cert) {
    if (cert.accepted()) return kExitAccepted;
    return cert.unverifiable ? kExitUnverifiable : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified bounds for rational points on twists of hyperelliptic "
                 "and superelliptic curves"};
    app.require_subcommand(1);

    RunConfig config;
    std::string config_path;
    if (const char* env = std::getenv("TWISTBOUND_CONFIG")) config_path = env;
    app.add_option("--config", config_path, "path to a key = value configuration file");
    // Flag overrides are applied after the file is read, so remember them.
    std::optional<unsigned long> trial_bound, rho_budget, seed;
    std::optional<std::string> output_mode;
    app.add_option("--factor-trial-bound", trial_bound, "trial division bound for factoring");
    app.add_option("--rho-budget", rho_budget, "iteration budget for the rho factoring stage");
    app.add_option("--seed", seed, "random seed recorded for test harnesses");
    app.add_option("--output", output_mode, "output mode: json or table");

    std::string f_text, form_text, d_text, h_text, t_text;
    unsigned long n_points = 1, rank = 0, ell = 5;
    std::optional<unsigned long> height_opt, prime_limit_opt, n_opt, r_opt;

    CLI::App* hc_indep = app.add_subcommand("certify-hc-indep",
                                            "independence certificate for d*y^2 = f(x)");
    hc_indep->add_option("--f", f_text, "coefficients of f, ascending, comma-separated")
        ->required();
    hc_indep->add_option("--d", d_text, "twist parameter d")->required();
    hc_indep->add_option("--n", n_points, "number of points whose independence is asserted")
        ->required();

    CLI::App* hc_bound = app.add_subcommand("certify-hc-bound",
                                            "point-count certificate for d*y^2 = f(x)");
    hc_bound->add_option("--f", f_text, "coefficients of f, ascending")->required();
    hc_bound->add_option("--d", d_text, "twist parameter d")->required();
    hc_bound->add_option("--r", rank, "assumed Mordell-Weil rank")->required();

    CLI::App* thue = app.add_subcommand("certify-thue",
                                        "solution-count certificate for F(X, Y) = h");
    thue->add_option("--F", form_text, "binary form as coeffs@degree")->required();
    thue->add_option("--h", h_text, "right-hand side h")->required();
    thue->add_option("--r", rank, "assumed Mordell-Weil rank")->required();

    CLI::App* exc = app.add_subcommand("exceptional-set",
                                       "twist parameters not covered by the witness argument");
    exc->add_option("--f", f_text, "coefficients of f, ascending")->required();
    exc->add_option("--n", n_opt, "independence mode: number of points");
    exc->add_option("--r", r_opt, "bound mode: assumed rank");

    CLI::App* coleman = app.add_subcommand("coleman", "best-prime Coleman bound");
    coleman->add_option("--f", f_text, "coefficients of f, ascending")->required();
    coleman->add_option("--d", d_text, "twist parameter d")->required();
    coleman->add_option("--r", rank, "assumed Mordell-Weil rank")->required();
    coleman->add_option("--prime-limit", prime_limit_opt, "largest prime to consider");

    CLI::App* search_hc = app.add_subcommand("search-hc", "height-bounded point search");
    search_hc->add_option("--f", f_text, "coefficients of f, ascending")->required();
    search_hc->add_option("--d", d_text, "twist parameter d")->required();
    search_hc->add_option("--height", height_opt, "naive height bound on x = a/b");

    CLI::App* search_thue = app.add_subcommand("search-thue", "box search for Thue solutions");
    search_thue->add_option("--F", form_text, "binary form as coeffs@degree")->required();
    search_thue->add_option("--h", h_text, "right-hand side h")->required();
    search_thue->add_option("--height", height_opt, "box bound on numerators and denominator");

    CLI::App* family = app.add_subcommand("verify-family",
                                          "symbolic witnesses for Y^2 + Y = X^ell + t^(2 ell)");
    family->add_option("--ell", ell, "odd exponent >= 5")->required();

    CLI::App* family_model = app.add_subcommand("family-model",
                                                "specialize the family to y^2 = x^ell + A");
    family_model->add_option("--ell", ell, "odd exponent >= 5")->required();
    family_model->add_option("--t", t_text, "integer parameter t")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config_path.empty()) config = RunConfig::load(config_path);
        if (trial_bound) config.factor_trial_bound = *trial_bound;
        if (rho_budget) config.rho_budget = *rho_budget;
        if (seed) config.random_seed = *seed;
        if (output_mode) config.output_mode = *output_mode;
        config.validate();
        const auto effort = config.effort();

        if (hc_indep->parsed()) {
            const auto cert = twistbound::certify_independence(
                parse_poly("--f", f_text), parse_int("--d", d_text), n_points, effort);
            emit(config, "certify-hc-indep", cert.to_json());
            return certificate_exit(cert);
        }
        if (hc_bound->parsed()) {
            const auto cert = twistbound::certify_twist_bound(
                parse_poly("--f", f_text), parse_int("--d", d_text), rank, effort);
            emit(config, "certify-hc-bound", cert.to_json());
            return certificate_exit(cert);
        }
        if (thue->parsed()) {
            const auto cert = twistbound::certify_thue(parse_form("--F", form_text),
                                                       parse_int("--h", h_text), rank, effort);
            emit(config, "certify-thue", cert.to_json());
            return certificate_exit(cert);
        }
        if (exc->parsed()) {
            if (n_opt.has_value() == r_opt.has_value())
                throw UsageError("exceptional-set needs exactly one of --n or --r");
            const auto mode = n_opt ? twistbound::ExceptionalMode::independence
                                    : twistbound::ExceptionalMode::bound;
            const auto parameter = n_opt ? *n_opt : *r_opt;
            const auto set =
                twistbound::exceptional_set(parse_poly("--f", f_text), parameter, mode, effort);
            Json values = Json::array();
            for (const Int& v : set) values.push_back(twistbound::detail::int_to_json(v));
            emit(config, "exceptional-set",
                 Json{{"f", f_text},
                      {"mode", n_opt ? "independence" : "bound"},
                      {n_opt ? "n" : "r", parameter},
                      {"size", set.size()},
                      {"exceptional", values}});
            return kExitAccepted;
        }
        if (coleman->parsed()) {
            const auto cert = twistbound::certify_coleman(
                parse_poly("--f", f_text), parse_int("--d", d_text), rank,
                prime_limit_opt.value_or(config.prime_limit), effort);
            emit(config, "coleman", cert.to_json());
            return certificate_exit(cert);
        }
        if (search_hc->parsed()) {
            const twistbound::HyperellipticTwist curve(parse_poly("--f", f_text),
                                                       parse_int("--d", d_text), effort);
            auto report = twistbound::pair_by_involution(twistbound::search_hyperelliptic(
                curve, height_opt.value_or(config.search_height)));
            emit(config, "search-hc", report.to_json());
            return kExitAccepted;
        }
        if (search_thue->parsed()) {
            const twistbound::ThueTwist curve(parse_form("--F", form_text),
                                              parse_int("--h", h_text), effort);
            const auto report =
                twistbound::search_thue(curve, height_opt.value_or(config.search_height));
            emit(config, "search-thue", report.to_json());
            return kExitAccepted;
        }
        if (family->parsed()) {
            const auto verification = twistbound::verify_family(ell);
            emit(config, "verify-family", verification.to_json());
            return verification.verified ? kExitAccepted : kExitRejected;
        }
        if (family_model->parsed()) {
            const auto instance =
                twistbound::family_to_standard_model(ell, parse_int("--t", t_text), effort);
            emit(config, "family-model", instance.to_json());
            return kExitAccepted;
        }
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << twistbound::kToolName << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const twistbound::IncompleteFactorizationError& e) {
        std::cerr << twistbound::kToolName << ": " << e.what() << "\n";
        return kExitUnverifiable;
    } catch (const std::domain_error& e) {
        std::cerr << twistbound::kToolName << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << twistbound::kToolName << ": internal error: " << e.what() << "\n";
        return kExitUsage;
    }
}
