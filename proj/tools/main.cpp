// Command-line front end: parameter sweeps, threshold tables, secure-region
// grids, and the self-verification suite. All numerics live in the library;
// this file only wires flags to library calls and formats rows.

#include "CLI11.hpp"
#include "json.hpp"

#include "qtel/channels.hpp"
#include "qtel/entanglement.hpp"
#include "qtel/security.hpp"
#include "qtel/states.hpp"
#include "qtel/teleport.hpp"
#include "qtel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace qtel;

constexpr double kPi = std::numbers::pi;

struct Options {
    std::string channel = "adc";
    std::string scenario = "two";
    std::string bell = "psi+";
    bool watched = false;
    bool direct = false;
    double pa = -1.0;  // sentinel: follow --pb when absent (two-arm)
    double pb = 0.0;
    double delta = 0.5;  // units of pi
    double gamma = 0.0;  // units of pi
    std::string strategy = "standard";
    std::string avg;  // empty: no Bloch-average column
    std::string kept = "1,3";
    std::string hemisphere = "upper";
    std::string reference = "classical";
    std::string sweep;
    int outcome = -1;
    std::string format = "csv";
    std::string output;
    unsigned long seed = 12345;
};

struct SweepSpec {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

[[noreturn]] void usage_error(const std::string& msg) {
    throw CLI::ValidationError("usage", msg);
}

ChannelKind parse_channel(const std::string& s) {
    if (s == "adc") return ChannelKind::AmplitudeDamping;
    if (s == "pdc") return ChannelKind::PhaseDamping;
    if (s == "dc") return ChannelKind::Depolarizing;
    usage_error("unknown channel '" + s + "' (expected adc, pdc or dc)");
}

BellKind parse_bell(const std::string& s) {
    if (s == "psi+") return BellKind::PsiPlus;
    if (s == "psi-") return BellKind::PsiMinus;
    if (s == "phi+") return BellKind::PhiPlus;
    if (s == "phi-") return BellKind::PhiMinus;
    usage_error("unknown bell state '" + s + "' (expected psi+, psi-, phi+ or phi-)");
}

Reference parse_reference(const std::string& s) {
    if (s == "classical") return Reference::Classical;
    if (s == "nocloning") return Reference::UniversalClone;
    if (s == "pccm") return Reference::Pccm;
    usage_error("unknown reference '" + s + "' (expected classical, nocloning or pccm)");
}

Hemisphere parse_hemisphere(const std::string& s) {
    if (s == "upper") return Hemisphere::Upper;
    if (s == "lower") return Hemisphere::Lower;
    if (s == "full") return Hemisphere::Full;
    usage_error("unknown hemisphere '" + s + "' (expected upper, lower or full)");
}

std::vector<int> parse_kept(const std::string& s) {
    std::vector<int> kept;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int k = -1;
        try {
            k = std::stoi(item);
        } catch (const std::exception&) {
            usage_error("--kept expects comma-separated outcome indices 0..3");
        }
        if (k < 0 || k > 3) usage_error("--kept indices must lie in 0..3");
        if (std::find(kept.begin(), kept.end(), k) == kept.end()) kept.push_back(k);
    }
    if (kept.empty()) usage_error("--kept must name at least one outcome");
    return kept;
}

SweepSpec parse_sweep(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) usage_error("--sweep expects var=start:stop:steps");
    SweepSpec spec;
    spec.variable = s.substr(0, eq);
    const std::string rest = s.substr(eq + 1);
    std::stringstream ss(rest);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        usage_error("--sweep expects var=start:stop:steps");
    try {
        spec.start = std::stod(a);
        spec.stop = std::stod(b);
        spec.steps = std::stoi(c);
    } catch (const std::exception&) {
        usage_error("--sweep expects numeric start:stop:steps");
    }
    if (spec.variable == "pa") spec.variable = "p_a";
    if (spec.variable == "pb") spec.variable = "p_b";
    static const std::set<std::string> allowed{"p", "p_a", "p_b", "delta"};
    if (!allowed.count(spec.variable))
        usage_error("sweep variable must be one of p, p_a, p_b, delta");
    if (spec.steps < 2) usage_error("sweep steps must be at least 2");
    if (spec.start > spec.stop) usage_error("sweep start must not exceed stop");
    return spec;
}

void check_rate(double v, const char* name) {
    if (v < 0.0 || v > 1.0)
        usage_error(std::string(name) + " must lie in [0, 1]");
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(std::ostream& out, const Options& o, const ordered_json& config,
          const std::vector<std::string>& columns, const std::vector<ordered_json>& rows) {
    if (o.format == "json") {
        ordered_json doc;
        doc["config"] = config;
        doc["rows"] = rows;
        out << doc.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "");
    out << "\n";
    for (const ordered_json& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const ordered_json& cell = row.at(columns[i]);
            if (cell.is_null()) {
                // leave the field empty
            } else if (cell.is_string()) {
                out << cell.get<std::string>();
            } else if (cell.is_boolean()) {
                out << (cell.get<bool>() ? "true" : "false");
            } else if (cell.is_number_integer()) {
                out << cell.get<long long>();
            } else {
                out << num(cell.get<double>());
            }
            out << (i + 1 < columns.size() ? "," : "");
        }
        out << "\n";
    }
}

// A single evaluation point after sweep substitution. Rates are effective
// values; delta/gamma are in radians.
struct Point {
    double var = 0.0;
    double pa = 0.0;
    double pb = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
};

std::vector<Point> resolve_points(const Options& o, bool pa_given,
                                  const std::optional<SweepSpec>& sweep) {
    const bool two = o.scenario == "two";
    if (o.scenario != "two" && o.scenario != "one")
        usage_error("unknown scenario '" + o.scenario + "' (expected one or two)");
    if (!two && pa_given)
        usage_error("--pa applies to the two-arm scenario only");
    check_rate(o.pb, "--pb");
    if (pa_given) check_rate(o.pa, "--pa");
    if (o.delta < 0.0 || o.delta > 1.0) usage_error("--delta must lie in [0, 1] (units of pi)");

    auto base_point = [&](double pbv, std::optional<double> pav) {
        Point pt;
        pt.pb = pbv;
        pt.pa = two ? (pav ? *pav : (pa_given ? o.pa : pbv)) : 0.0;
        pt.delta = o.delta * kPi;
        pt.gamma = o.gamma * kPi;
        return pt;
    };
    std::vector<Point> points;
    if (!sweep) {
        points.push_back(base_point(o.pb, std::nullopt));
        return points;
    }
    for (int i = 0; i < sweep->steps; ++i) {
        const double v =
            sweep->start + (sweep->stop - sweep->start) * i / (sweep->steps - 1);
        Point pt;
        if (sweep->variable == "p") {
            check_rate(v, "sweep value");
            pt = base_point(v, two ? std::optional<double>(v) : std::nullopt);
        } else if (sweep->variable == "p_a") {
            if (!two) usage_error("sweep over p_a requires the two-arm scenario");
            check_rate(v, "sweep value");
            pt = base_point(o.pb, v);
        } else if (sweep->variable == "p_b") {
            check_rate(v, "sweep value");
            pt = base_point(v, pa_given ? std::optional<double>(o.pa) : std::nullopt);
        } else {  // delta
            if (v < 0.0 || v > 1.0) usage_error("delta sweep must stay in [0, 1] (units of pi)");
            pt = base_point(o.pb, std::nullopt);
            pt.delta = v * kPi;
        }
        pt.var = v;
        points.push_back(pt);
    }
    return points;
}

DistributionScenario scenario_at(const Options& o, const Point& pt) {
    const ChannelKind kind = parse_channel(o.channel);
    const BellKind bell = parse_bell(o.bell);
    if (o.scenario == "one")
        return DistributionScenario::one_arm(kind, bell, pt.pb, o.watched);
    return DistributionScenario::two_arm(kind, bell, pt.pa, pt.pb, o.watched);
}

Averaging resolve_averaging(const Options& o) {
    if (o.avg == "weighted") return Weighted{};
    if (o.avg == "unweighted") return Unweighted{};
    if (o.avg == "selective")
        return Selective{parse_kept(o.kept), parse_hemisphere(o.hemisphere)};
    usage_error("unknown averaging '" + o.avg + "' (expected weighted, unweighted or selective)");
}

CorrectionStrategy resolve_strategy(const Options& o, const SharedState& shared,
                                    const StrategyObjective& objective) {
    const BellKind bell = parse_bell(o.bell);
    if (o.strategy == "standard") return standard_strategy(bell);
    if (o.strategy == "paper") return prescribed_strategy(bell);
    if (o.strategy == "optimal") return optimal_strategy(bell, shared, objective);
    usage_error("unknown strategy '" + o.strategy + "' (expected standard, paper or optimal)");
}

ordered_json config_json(const Options& o, const std::string& command,
                         const std::optional<SweepSpec>& sweep) {
    ordered_json c;
    c["command"] = command;
    c["channel"] = o.channel;
    c["scenario"] = o.scenario;
    c["bell"] = o.bell;
    c["watched"] = o.watched;
    if (o.direct) c["direct"] = true;
    if (o.pa >= 0.0) c["pa"] = o.pa;
    c["pb"] = o.pb;
    c["delta_pi"] = o.delta;
    c["gamma_pi"] = o.gamma;
    c["strategy"] = o.strategy;
    if (!o.avg.empty()) {
        c["avg"] = o.avg;
        if (o.avg == "selective") {
            c["kept"] = o.kept;
            c["hemisphere"] = o.hemisphere;
        }
    }
    c["reference"] = o.reference;
    if (sweep)
        c["sweep"] = sweep->variable + "=" + num(sweep->start) + ":" + num(sweep->stop) + ":" +
                     std::to_string(sweep->steps);
    c["format"] = o.format;
    c["seed"] = o.seed;
    return c;
}

int cmd_fidelity(const Options& o, bool pa_given, std::ostream& out) {
    const std::optional<SweepSpec> sweep =
        o.sweep.empty() ? std::nullopt : std::optional<SweepSpec>(parse_sweep(o.sweep));
    const std::vector<Point> points = resolve_points(o, pa_given, sweep);
    if (o.outcome < -1 || o.outcome > 3) usage_error("--outcome must lie in 0..3");

    std::vector<std::string> columns;
    if (sweep) columns.push_back(sweep->variable);
    if (o.direct) {
        columns.push_back("fidelity");
    } else {
        for (const char* c : {"k", "probability", "fidelity", "weighted_mean",
                              "unweighted_mean"})
            columns.push_back(c);
        if (!o.avg.empty()) columns.push_back("bloch_average");
    }

    std::vector<ordered_json> rows;
    for (const Point& pt : points) {
        const BlochState input(pt.delta, pt.gamma);
        if (o.direct) {
            ordered_json row;
            if (sweep) row[sweep->variable] = pt.var;
            row["fidelity"] =
                direct_transmission_fidelity(input, parse_channel(o.channel), pt.pb);
            rows.push_back(std::move(row));
            continue;
        }
        const DistributionScenario s = scenario_at(o, pt);
        const SharedState shared = distribute(s);
        const CorrectionStrategy strategy =
            resolve_strategy(o, shared, PerOutcomeAtPoint{input});
        const FidelityReport report = fidelity_report(input, s.bell, shared, strategy);
        std::optional<double> bloch_avg;
        if (!o.avg.empty()) {
            const CorrectionStrategy avg_strategy =
                resolve_strategy(o, shared, BlochAverage{});
            bloch_avg = bloch_average_fidelity(s, avg_strategy, resolve_averaging(o));
        }
        for (const TeleportOutcome& oc : report.outcomes) {
            if (o.outcome >= 0 && oc.k != o.outcome) continue;
            ordered_json row;
            if (sweep) row[sweep->variable] = pt.var;
            row["k"] = oc.k;
            row["probability"] = oc.probability;
            if (oc.fidelity)
                row["fidelity"] = *oc.fidelity;
            else
                row["fidelity"] = nullptr;
            row["weighted_mean"] = report.probability_weighted_mean;
            row["unweighted_mean"] = report.unweighted_outcome_mean;
            if (bloch_avg) row["bloch_average"] = *bloch_avg;
            rows.push_back(std::move(row));
        }
    }
    emit(out, o, config_json(o, "fidelity", sweep), columns, rows);
    return 0;
}

int cmd_entanglement(const Options& o, bool pa_given, std::ostream& out) {
    const std::optional<SweepSpec> sweep =
        o.sweep.empty() ? std::nullopt : std::optional<SweepSpec>(parse_sweep(o.sweep));
    if (sweep && sweep->variable == "delta")
        usage_error("entanglement sweeps run over rates, not delta");
    const std::vector<Point> points = resolve_points(o, pa_given, sweep);

    std::vector<std::string> columns;
    if (sweep) columns.push_back(sweep->variable);
    for (const char* c : {"concurrence", "f_ent", "f_ent_closed", "concurrence_closed"})
        columns.push_back(c);

    std::vector<ordered_json> rows;
    for (const Point& pt : points) {
        const DistributionScenario s = scenario_at(o, pt);
        const SharedState shared = distribute(s);
        ordered_json row;
        if (sweep) row[sweep->variable] = pt.var;
        row["concurrence"] = concurrence(shared.rho);
        row["f_ent"] = fully_entangled_fraction(shared.rho);
        row["f_ent_closed"] = fef_closed_form(s);
        row["concurrence_closed"] = concurrence_closed_form(s);
        rows.push_back(std::move(row));
    }
    emit(out, o, config_json(o, "entanglement", sweep), columns, rows);
    return 0;
}

int cmd_thresholds(const Options& o, std::ostream& out) {
    struct Case {
        std::string channel, scenario, bell, quantity;
        double target, analytic, tol;
        std::function<double(double)> fn;
    };
    std::vector<Case> cases;

    auto fent_fn = [](ChannelKind kind, BellKind bell, bool two) {
        return [kind, bell, two](double p) {
            const DistributionScenario s =
                two ? DistributionScenario::two_arm_equal(kind, bell, p)
                    : DistributionScenario::one_arm(kind, bell, p);
            return fef_closed_form(s);
        };
    };
    struct FentRow {
        const char* channel;
        ChannelKind kind;
        const char* scenario;
        bool two;
        const char* bell;
        BellKind bk;
        double half, three_quarter;
    };
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
    const std::vector<FentRow> fent_rows = {
        {"adc", ChannelKind::AmplitudeDamping, "two", true, "psi+", BellKind::PsiPlus, 0.5, 0.25},
        {"adc", ChannelKind::AmplitudeDamping, "one", false, "psi+", BellKind::PsiPlus,
         2.0 * (r2 - 1.0), 2.0 * r3 - 3.0},
        {"adc", ChannelKind::AmplitudeDamping, "two", true, "phi+", BellKind::PhiPlus, 1.0,
         1.0 - r2 / 2.0},
        {"adc", ChannelKind::AmplitudeDamping, "one", false, "phi+", BellKind::PhiPlus,
         2.0 * (r2 - 1.0), 2.0 * r3 - 3.0},
        {"pdc", ChannelKind::PhaseDamping, "two", true, "psi+", BellKind::PsiPlus, 1.0,
         1.0 - r2 / 2.0},
        {"pdc", ChannelKind::PhaseDamping, "one", false, "psi+", BellKind::PsiPlus, 1.0, 0.5},
        {"pdc", ChannelKind::PhaseDamping, "two", true, "phi+", BellKind::PhiPlus, 1.0,
         1.0 - r2 / 2.0},
        {"pdc", ChannelKind::PhaseDamping, "one", false, "phi+", BellKind::PhiPlus, 1.0, 0.5},
        {"dc", ChannelKind::Depolarizing, "two", true, "psi+", BellKind::PsiPlus,
         1.0 - r3 / 3.0, 1.0 - r6 / 3.0},
        {"dc", ChannelKind::Depolarizing, "one", false, "psi+", BellKind::PsiPlus, 2.0 / 3.0,
         1.0 / 3.0},
        {"dc", ChannelKind::Depolarizing, "two", true, "phi+", BellKind::PhiPlus,
         1.0 - r3 / 3.0, 1.0 - r6 / 3.0},
        {"dc", ChannelKind::Depolarizing, "one", false, "phi+", BellKind::PhiPlus, 2.0 / 3.0,
         1.0 / 3.0},
    };
    for (const FentRow& fr : fent_rows) {
        cases.push_back({fr.channel, fr.scenario, fr.bell, "f_ent", 0.5, fr.half, 1e-6,
                         fent_fn(fr.kind, fr.bk, fr.two)});
        cases.push_back({fr.channel, fr.scenario, fr.bell, "f_ent", 0.75, fr.three_quarter,
                         1e-6, fent_fn(fr.kind, fr.bk, fr.two)});
    }

    auto min_fid_fn = [](BellKind bell) {
        return [bell](double p) {
            const DistributionScenario s =
                DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping, bell, p);
            double best = 1.0;
            for (int k = 0; k < 4; ++k)
                for (int i = 0; i <= 720; ++i)
                    best = std::min(best,
                                    closed_form_fidelity(s, k, BlochState(kPi * i / 720, 0.0)));
            return best;
        };
    };
    cases.push_back({"adc", "two", "psi+", "min_fidelity", 5.0 / 6.0, 1.0 / 11.0, 1e-4,
                     min_fid_fn(BellKind::PsiPlus)});
    cases.push_back({"adc", "two", "psi+", "min_fidelity", 2.0 / 3.0, 1.0 / 5.0, 1e-4,
                     min_fid_fn(BellKind::PsiPlus)});
    cases.push_back({"adc", "two", "phi+", "min_fidelity", 5.0 / 6.0, 1.0 / 6.0, 1e-4,
                     min_fid_fn(BellKind::PhiPlus)});

    const double eq_ref = pccm_fidelity(kPi / 2.0);
    auto equator_fn = [](ChannelKind kind, bool two) {
        return [kind, two](double p) {
            const DistributionScenario s =
                two ? DistributionScenario::two_arm_equal(kind, BellKind::PsiPlus, p)
                    : DistributionScenario::one_arm(kind, BellKind::PsiPlus, p);
            return closed_form_fidelity(s, 0, BlochState(kPi / 2.0, 0.0));
        };
    };
    cases.push_back({"adc", "two", "psi+", "equator_fidelity", eq_ref, 1.0 - r2 / 2.0, 1e-6,
                     equator_fn(ChannelKind::AmplitudeDamping, true)});
    cases.push_back({"pdc", "two", "psi+", "equator_fidelity", eq_ref,
                     1.0 - std::pow(2.0, -0.25), 1e-6,
                     equator_fn(ChannelKind::PhaseDamping, true)});
    cases.push_back({"pdc", "one", "psi+", "equator_fidelity", eq_ref, 1.0 - 1.0 / r2, 1e-6,
                     equator_fn(ChannelKind::PhaseDamping, false)});

    const std::vector<std::string> columns = {"channel", "scenario", "bell",    "quantity",
                                             "target",  "crossing", "analytic", "ok"};
    std::vector<ordered_json> rows;
    for (const Case& c : cases) {
        const ThresholdResult t = critical_damping(c.fn, c.target, c.quantity, c.analytic);
        ordered_json row;
        row["channel"] = c.channel;
        row["scenario"] = c.scenario;
        row["bell"] = c.bell;
        row["quantity"] = c.quantity;
        row["target"] = c.target;
        if (t.crossings.empty()) {
            row["crossing"] = nullptr;
            row["ok"] = false;
        } else {
            row["crossing"] = t.crossings.front();
            row["ok"] = std::abs(t.crossings.front() - c.analytic) <= c.tol;
        }
        row["analytic"] = c.analytic;
        rows.push_back(std::move(row));
    }
    emit(out, o, config_json(o, "thresholds", std::nullopt), columns, rows);
    return 0;
}

int cmd_region(const Options& o, bool pa_given, std::ostream& out) {
    const std::optional<SweepSpec> sweep =
        o.sweep.empty() ? std::nullopt : std::optional<SweepSpec>(parse_sweep(o.sweep));
    if (sweep && sweep->variable == "delta")
        usage_error("region sweeps run over rates; delta is the scanned axis");
    const std::vector<Point> points = resolve_points(o, pa_given, sweep);
    const Reference ref = parse_reference(o.reference);

    std::vector<std::string> columns;
    columns.push_back(sweep ? sweep->variable : "p_b");
    for (const char* c : {"interval", "delta_lo_pi", "delta_hi_pi"}) columns.push_back(c);

    std::vector<ordered_json> rows;
    for (const Point& pt : points) {
        std::function<double(double)> curve;
        if (o.direct) {
            const ChannelKind kind = parse_channel(o.channel);
            const double rate = pt.pb;
            curve = [kind, rate](double d) {
                return direct_transmission_fidelity(BlochState(d, 0.0), kind, rate);
            };
        } else {
            const DistributionScenario s = scenario_at(o, pt);
            const SharedState shared = distribute(s);
            const CorrectionStrategy strategy = resolve_strategy(o, shared, BlochAverage{});
            const BellKind bell = s.bell;
            curve = [shared, strategy, bell](double d) {
                return fidelity_report(BlochState(d, 0.0), bell, shared, strategy)
                    .probability_weighted_mean;
            };
        }
        const std::vector<DeltaInterval> intervals = secure_delta_range(curve, ref);
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            ordered_json row;
            row[columns[0]] = sweep ? pt.var : pt.pb;
            row["interval"] = static_cast<int>(i);
            row["delta_lo_pi"] = intervals[i].lo / kPi;
            row["delta_hi_pi"] = intervals[i].hi / kPi;
            rows.push_back(std::move(row));
        }
    }
    ordered_json config = config_json(o, "region", sweep);
    config["note"] =
        "(delta, p) grid is a reconstruction; source figure axes are not fully specified";
    emit(out, o, config, columns, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Qubit teleportation through noisy entanglement: fidelities, entanglement "
        "measures, damping thresholds and secure-state regions"};
    app.require_subcommand(1);

    Options o;
    std::vector<CLI::Option*> pa_opts;

    auto add_state_flags = [&](CLI::App* cmd) {
        cmd->add_option("--channel", o.channel, "Channel kind: adc, pdc or dc")
            ->capture_default_str();
        cmd->add_option("--scenario", o.scenario, "Noisy arms: two (both) or one (Bob only)")
            ->capture_default_str();
        cmd->add_option("--bell", o.bell, "Initial Bell state: psi+, psi-, phi+ or phi-")
            ->capture_default_str();
        cmd->add_flag("--watched", o.watched,
                      "Post-select on no environment excitation and renormalize");
        pa_opts.push_back(
            cmd->add_option("--pa", o.pa, "Damping rate on Alice's arm (default: equals --pb)"));
        cmd->add_option("--pb", o.pb, "Damping rate on Bob's arm")->capture_default_str();
    };
    auto add_io_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "Output format: csv or json")
            ->capture_default_str();
        cmd->add_option("--output", o.output, "Write output to PATH instead of stdout");
        cmd->add_option("--seed", o.seed, "Seed for any sampled quantity")
            ->capture_default_str();
    };
    auto add_sweep_flag = [&](CLI::App* cmd) {
        cmd->add_option("--sweep", o.sweep, "Grid: var=start:stop:steps with var in {p,p_a,p_b,delta}");
    };

    CLI::App* fid = app.add_subcommand(
        "fidelity", "Per-outcome teleportation fidelities, probabilities and means");
    add_state_flags(fid);
    fid->add_option("--delta", o.delta, "Input polar angle in units of pi")
        ->capture_default_str();
    fid->add_option("--gamma", o.gamma, "Input azimuthal angle in units of pi")
        ->capture_default_str();
    fid->add_option("--strategy", o.strategy, "Correction strategy: standard, paper or optimal")
        ->capture_default_str();
    fid->add_option("--avg", o.avg,
                    "Append a Bloch-average column: weighted, unweighted or selective");
    fid->add_option("--kept", o.kept, "Outcomes kept by the selective average")
        ->capture_default_str();
    fid->add_option("--hemisphere", o.hemisphere,
                    "Selective average domain: upper, lower or full")
        ->capture_default_str();
    fid->add_option("--outcome", o.outcome, "Restrict rows to one measurement outcome (0..3)");
    fid->add_flag("--direct", o.direct,
                  "Send the state through the channel directly (rate --pb), no teleportation");
    add_sweep_flag(fid);
    add_io_flags(fid);

    CLI::App* ent = app.add_subcommand(
        "entanglement", "Concurrence and fully entangled fraction of the shared pair");
    add_state_flags(ent);
    add_sweep_flag(ent);
    add_io_flags(ent);

    CLI::App* thr = app.add_subcommand(
        "thresholds", "Critical damping rates for the standard security targets");
    add_io_flags(thr);

    CLI::App* reg = app.add_subcommand(
        "region", "Secure delta-intervals of the Bloch sphere per damping rate");
    add_state_flags(reg);
    reg->add_option("--strategy", o.strategy, "Correction strategy: standard, paper or optimal")
        ->capture_default_str();
    reg->add_option("--reference", o.reference,
                    "Security reference: classical, nocloning or pccm")
        ->capture_default_str();
    reg->add_flag("--direct", o.direct,
                  "Use direct transmission through the channel (rate --pb)");
    add_sweep_flag(reg);
    add_io_flags(reg);

    CLI::App* ver = app.add_subcommand(
        "verify", "Run the full self-check suite; exit 0 iff every check passes");
    ver->add_option("--output", o.output, "Write the report to PATH instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    bool pa_given = false;
    for (const CLI::Option* opt : pa_opts) pa_given = pa_given || opt->count() > 0;

    try {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!o.output.empty()) {
            file.open(o.output, std::ios::binary);
            if (!file) {
                std::cerr << "error: cannot open output file '" << o.output << "'\n";
                return 2;
            }
            out = &file;
        }
        if (ver->parsed()) {
            const VerifyReport report = run_verify(*out);
            return report.ok() ? 0 : 1;
        }
        if (fid->parsed()) return cmd_fidelity(o, pa_given, *out);
        if (ent->parsed()) return cmd_entanglement(o, pa_given, *out);
        if (thr->parsed()) return cmd_thresholds(o, *out);
        if (reg->parsed()) return cmd_region(o, pa_given, *out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
