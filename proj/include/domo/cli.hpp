#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dist_spec.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "orders.hpp"
#include "stability.hpp"
#include "theorems.hpp"

namespace domo::cli {

enum ExitCode : int {
    kOk = 0,
    kReversed = 1,
    kCrosses = 2,
    kInconclusive = 3,
    kUsage = 64,       // bad flags, unparsable spec, invalid parameter values
    kCapability = 65,  // the input cannot support the requested operation
    kIo = 74,
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Writes to --out when given, otherwise to the caller's stream. Text is buffered and
// committed in one go so a failed command never leaves a half-written file.
class Sink {
public:
    Sink(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {}
    std::ostream& stream() { return buffer_; }
    void commit() {
        if (path_.empty()) {
            fallback_ << buffer_.str();
            return;
        }
        std::ofstream file(path_, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + path_ + "' for writing");
        file << buffer_.str();
        file.flush();
        if (!file) throw IoError("write to '" + path_ + "' failed");
    }

private:
    std::ostream& fallback_;
    std::string path_;
    std::ostringstream buffer_;
};

inline const char* flag(bool b) { return b ? "true" : "false"; }

inline void write_profile_csv(std::ostream& os, const AnyDistribution& dist, std::size_t points, double plo, double phi) {
    os << "x,cdf,pdf,survival,hazard,odds,odds_rate\n";
    std::visit(
        [&](const auto& d) {
            for (std::size_t i = 0; i < points; ++i) {
                const double p = points == 1 ? plo : plo + (phi - plo) * static_cast<double>(i) / static_cast<double>(points - 1);
                const double x = quantile_at(d, p);
                os << format_g12(x) << ',' << format_g12(d.cdf(x)) << ',' << format_g12(d.pdf(x)) << ','
                   << format_g12(d.sf(x)) << ',' << format_g12(d.hazard(x)) << ',' << format_g12(d.odds(x)) << ','
                   << format_g12(d.odds_rate(x)) << '\n';
            }
        },
        dist);
}

inline nlohmann::ordered_json params_json(const ParamTriple& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"theta", p.theta}};
}

inline nlohmann::ordered_json report_json(const CaseReport& r) {
    nlohmann::ordered_json j;
    j["baseline"] = r.scenario.baseline.spec();
    j["params"] = params_json(r.scenario.p);
    if (r.scenario.q) j["params1"] = params_json(*r.scenario.q);
    if (find_case(r.id).monte_carlo) {
        j["p"] = r.scenario.prob;
        j["mc_seed"] = r.scenario.seed;
    }
    j["replay"] = r.scenario.str();
    j["expected"] = r.expected;
    j["observed"] = r.observed;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline nlohmann::ordered_json sweep_json(const SweepReport& report) {
    nlohmann::ordered_json root;
    root["seed"] = report.seed;
    root["trials"] = report.trials;
    auto& cases = root["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : report.cases) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["reading"] = c.reading;
        j["flagged"] = c.flagged;
        if (!c.note.empty()) j["note"] = c.note;
        j["trials_applicable"] = c.applicable;
        j["agreements"] = c.agreements;
        auto& dis = j["disagreements"] = nlohmann::ordered_json::array();
        for (const auto& r : c.disagreements) dis.push_back(report_json(r));
        cases.push_back(std::move(j));
    }
    root["disagreements_unflagged"] = report.disagreements(false);
    root["disagreements_flagged"] = report.disagreements(true) - report.disagreements(false);
    return root;
}

} // namespace detail

/// Runs one command line (args excludes the program name). Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"distorted odds toolkit", "domo"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string dist_text, left_text, right_text, out_path, relation_text = "st";
    std::size_t points = 101, grid_points = GridSpec{}.count, trials = 200, n = 100000;
    double plo = 0.01, phi = 0.99, prob = 0.5;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::vector<std::string> case_ids;

    auto* eval = app.add_subcommand("eval", "tabulate cdf, pdf, survival, hazard, odds and odds rate as CSV");
    eval->add_option("--dist", dist_text, "distribution spec")->required();
    eval->add_option("--points", points, "number of rows")->capture_default_str();
    eval->add_option("--plo", plo, "lowest probability level")->capture_default_str();
    eval->add_option("--phi", phi, "highest probability level")->capture_default_str();
    eval->add_option("--out", out_path, "output file (default stdout)");

    auto* classify = app.add_subcommand("classify", "hazard and odds-rate monotonicity, cdf curvature");
    classify->add_option("--dist", dist_text, "distribution spec")->required();
    classify->add_option("--grid-points", grid_points, "probability grid size")->capture_default_str();

    auto* order = app.add_subcommand("order", "check a stochastic order between two laws");
    order->add_option("--relation", relation_text, "st|hr|rh|lr|c|disp")->required();
    order->add_option("--left", left_text, "left distribution spec")->required();
    order->add_option("--right", right_text, "right distribution spec")->required();
    order->add_option("--grid-points", grid_points, "probability grid size")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "randomized theorem sweep, JSON report");
    verify->add_option("--trials", trials, "scenarios per case")->capture_default_str();
    verify->add_option("--seed", seed, "sweep seed")->capture_default_str();
    verify->add_option("--case", case_ids, "restrict to these case ids");
    verify->add_option("--threads", threads, "worker threads (default DOMO_THREADS or 1)");
    verify->add_option("--out", out_path, "output file (default stdout)");
    auto* list = verify->add_flag("--list", "print the case ids and exit");

    auto* stability = app.add_subcommand("stability", "geometric min/max stability experiment");
    stability->add_option("--dist", dist_text, "domo distribution spec")->required();
    stability->add_option("--p", prob, "geometric success probability")->required();
    stability->add_option("--n", n, "number of groups")->capture_default_str();
    stability->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* prentice = app.add_subcommand("prentice", "densities of the lung cancer survival example as CSV");
    prentice->add_option("--out", out_path, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (eval->parsed()) {
            if (points == 0) throw ValidationError("points must be >= 1");
            if (!(plo > 0.0 && plo <= phi && phi < 1.0)) throw ValidationError("need 0 < plo <= phi < 1");
            const auto dist = parse_distribution(dist_text);
            detail::Sink sink(out, out_path);
            detail::write_profile_csv(sink.stream(), dist, points, plo, phi);
            sink.commit();
            return kOk;
        }
        if (classify->parsed()) {
            GridSpec grid;
            grid.count = grid_points;
            grid.validate();
            const auto dist = parse_distribution(dist_text);
            const auto r = std::visit([&](const auto& d) { return classify_shape(d, grid); }, dist);
            out << "dist=" << spec_of(dist) << "\nihr=" << detail::flag(r.ihr) << "\ndhr=" << detail::flag(r.dhr)
                << "\nior=" << detail::flag(r.ior) << "\ndor=" << detail::flag(r.dor)
                << "\ncdf_convex=" << detail::flag(r.cdf_convex) << "\ncdf_concave=" << detail::flag(r.cdf_concave)
                << "\nnote=" << r.note << '\n';
            return kOk;
        }
        if (order->parsed()) {
            GridSpec grid;
            grid.count = grid_points;
            grid.validate();
            const Relation rel = parse_relation(relation_text);
            const auto left = parse_distribution(left_text);
            const auto right = parse_distribution(right_text);
            const auto v = std::visit([&](const auto& a, const auto& b) { return check_order(rel, a, b, grid); }, left, right);
            out << "relation=" << to_string(v.relation) << "\nleft=" << spec_of(left) << "\nright=" << spec_of(right)
                << "\nstatus=" << to_string(v.status) << "\nequal=" << detail::flag(v.equal)
                << "\nwitness=" << (v.witness ? format_number(*v.witness) : "none")
                << "\nmax_violation=" << format_number(v.max_violation) << "\npoints=" << v.points << '\n';
            if (v.odds_route) out << "odds_route=" << to_string(*v.odds_route) << '\n';
            switch (v.status) {
            case OrderStatus::holds: return kOk;
            case OrderStatus::reversed: return kReversed;
            case OrderStatus::crosses: return kCrosses;
            case OrderStatus::inconclusive: return kInconclusive;
            }
            return kInconclusive;
        }
        if (verify->parsed()) {
            if (*list) {
                for (const auto& c : list_cases()) {
                    out << c.id << (c.flagged ? " [flagged]" : "") << ": " << c.hypothesis_text << " => "
                        << c.conclusion_text << '\n';
                }
                return kOk;
            }
            SweepConfig cfg;
            cfg.trials = trials;
            cfg.case_ids = case_ids;
            cfg.threads = threads;
            const auto report = run_sweep(cfg, seed);
            detail::Sink sink(out, out_path);
            sink.stream() << detail::sweep_json(report).dump(2) << '\n';
            sink.commit();
            return kOk;
        }
        if (stability->parsed()) {
            const auto dist = parse_distribution(dist_text);
            const auto* d = std::get_if<DOMODistribution>(&dist);
            if (!d) throw CapabilityError("stability needs a domo:<alpha>,<beta>,<theta>@<baseline> spec");
            const auto r = geometric_extreme_experiment(*d, prob, n, seed);
            out << "dist=" << d->spec() << "\np=" << format_number(r.p) << "\nn=" << r.n << "\nseed=" << r.seed
                << "\nks_min=" << format_number(r.ks_min) << "\nks_max=" << format_number(r.ks_max)
                << "\nks_min_unscaled=" << format_number(r.ks_min_unscaled)
                << "\nks_max_unscaled=" << format_number(r.ks_max_unscaled) << "\ncritical=" << format_number(r.critical)
                << "\npass_min=" << detail::flag(r.pass_min) << "\npass_max=" << detail::flag(r.pass_max)
                << "\nmean_group=" << format_number(r.mean_group) << "\ncap_hits=" << r.cap_hits << '\n';
            return kOk;
        }
        if (prentice->parsed()) {
            const auto base = BaselineDistribution::gamma(1.13, 116.6);
            const DOMODistribution g(base, ParamTriple::make(0.0, 4.4324, 0.6822));
            detail::Sink sink(out, out_path);
            auto& os = sink.stream();
            os << "x,baseline_pdf,baseline_cdf,domo_pdf,domo_cdf\n";
            for (int i = 0; i <= 1000; ++i) {
                const double x = static_cast<double>(i);
                os << format_g12(x) << ',' << format_g12(base.pdf(x)) << ',' << format_g12(base.cdf(x)) << ','
                   << format_g12(g.pdf(x)) << ',' << format_g12(g.cdf(x)) << '\n';
            }
            sink.commit();
            return kOk;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kCapability;
    } catch (const std::invalid_argument& e) {  // ParseError, ValidationError
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace domo::cli
