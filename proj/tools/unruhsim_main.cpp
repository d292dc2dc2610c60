// Command-line front door. Every subcommand emits one JSON document
// {"manifest": ..., "params": ..., "results": ...} to --out or stdout;
// report-eq5 can emit CSV instead. Exit codes: 0 success, 2 bad input.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "unruhsim/coinflip.hpp"
#include "unruhsim/frames.hpp"
#include "unruhsim/manifest.hpp"
#include "unruhsim/protocols.hpp"
#include "unruhsim/teleport.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;

struct PairFlag {
    double first = 0.0;
    double second = 0.0;
};

// "re,im" / "X,P" comma syntax.
PairFlag parse_pair(const std::string& text, const std::string& flag) {
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument(flag + " expects two comma-separated numbers, got '" + text + "'");
    }
    PairFlag out;
    std::size_t used0 = 0;
    std::size_t used1 = 0;
    try {
        out.first = std::stod(text.substr(0, comma), &used0);
        out.second = std::stod(text.substr(comma + 1), &used1);
    } catch (const std::exception&) {
        throw std::invalid_argument(flag + " expects two comma-separated numbers, got '" + text + "'");
    }
    if (used0 != comma || used1 != text.size() - comma - 1) {
        throw std::invalid_argument(flag + " expects two comma-separated numbers, got '" + text + "'");
    }
    return out;
}

// Shared --mu / --mu-squared pair; exactly one must be given unless a default
// is supplied by the subcommand.
struct MuFlag {
    std::optional<double> mu;
    std::optional<double> mu_squared;

    void attach(CLI::App* cmd) {
        auto* direct = cmd->add_option("--mu", mu, "Squeezing parameter mu");
        auto* squared = cmd->add_option("--mu-squared", mu_squared,
                                        "Squeezing parameter as mu^2");
        direct->excludes(squared);
        squared->excludes(direct);
    }

    bool provided() const { return mu.has_value() || mu_squared.has_value(); }

    double resolve() const {
        if (mu_squared.has_value()) {
            if (*mu_squared < 0.0) {
                throw std::invalid_argument("--mu-squared must be >= 0");
            }
            return std::sqrt(*mu_squared);
        }
        if (!mu.has_value()) {
            throw std::invalid_argument("one of --mu or --mu-squared is required");
        }
        return *mu;
    }
};

json detector_json(const unruhsim::DetectorModel& d) {
    return json{{"efficiency", d.efficiency}, {"dark_count_prob", d.dark_count_prob}};
}

json vec_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json mat_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw std::invalid_argument("cannot open output file '" + out_path + "'");
    }
    file << text << "\n";
}

void emit_json(const std::string& out_path, const unruhsim::RunManifest& manifest,
               const json& results) {
    emit(out_path, unruhsim::run_output(manifest, results).dump(2));
}

unruhsim::RunManifest make_manifest(const std::string& subcommand, json params,
                                    std::uint64_t seed) {
    unruhsim::RunManifest m;
    m.subcommand = subcommand;
    m.params = std::move(params);
    m.seed = seed;
    m.timestamp = unruhsim::iso8601_utc_now();
    return m;
}

// ---------------------------------------------------------------- teleport

struct TeleportArgs {
    MuFlag mu;
    std::string alpha = "1,0";
    std::string outcomes;              // empty -> sample them
    std::uint64_t seed = 0;
    double gain = 1.0;
    std::uint64_t fidelity_trials = 10000;
    bool no_cool = false;
    int shards = 1;
    std::string out;
};

int run_teleport(const TeleportArgs& args) {
    double mu = args.mu.resolve();
    PairFlag alpha = parse_pair(args.alpha, "--alpha");

    unruhsim::TeleportationConfig config;
    config.mu = mu;
    config.alpha0 = {alpha.first, alpha.second};
    config.seed = args.seed;
    config.cool_bob = !args.no_cool;
    if (!args.outcomes.empty()) {
        PairFlag oc = parse_pair(args.outcomes, "--outcomes");
        config.sample_outcomes = false;
        config.outcome_x = oc.first;
        config.outcome_p = oc.second;
    }

    unruhsim::TeleportationResult result = unruhsim::run_teleportation(config);
    unruhsim::ConditionalLaw law = unruhsim::conditional_form(mu);
    unruhsim::FidelityStats fid = unruhsim::average_fidelity_stats(
        mu, args.gain, config.alpha0, args.fidelity_trials, args.seed, args.shards);

    json params{
        {"mu", mu},
        {"alpha", json::array({alpha.first, alpha.second})},
        {"seed", args.seed},
        {"gain", args.gain},
        {"fidelity_trials", args.fidelity_trials},
        {"cool_bob", config.cool_bob},
    };
    if (config.sample_outcomes) {
        params["outcomes"] = "sampled";
    } else {
        params["outcomes"] = json::array({config.outcome_x, config.outcome_p});
    }

    json results{
        {"outcome", json{{"x", result.outcome_x}, {"p", result.outcome_p}}},
        {"bob_conditional", unruhsim::state_to_json(result.bob_conditional)},
        {"eq5_reference_state", unruhsim::state_to_json(result.eq_five_reference)},
        {"conditional_law",
         json{{"center_coefficients", mat_json(law.center_coefficients)},
              {"covariance", mat_json(law.covariance)}}},
        {"fidelity_recentred", result.fidelity_recentred},
        {"average_fidelity",
         json{{"mean", fid.mean}, {"std_error", fid.std_error}, {"trials", fid.trials}}},
        {"mork",
         json{{"state", unruhsim::state_to_json(result.mork_state)},
              {"observables", mat_json(result.mork_observables)},
              {"cross_block_norm", result.mork_entanglement.cross_block_norm},
              {"entangled", result.mork_entanglement.entangled}}},
        {"mu_limit",
         json{{"applicable", result.mu_limit_applicable}, {"ok", result.mu_limit_ok}}},
    };

    emit_json(args.out, make_manifest("teleport", params, args.seed), results);
    return 0;
}

// ---------------------------------------------------------------- coinflip

struct CoinflipArgs {
    MuFlag mu;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double eta_alice = 1.0;
    double dark_alice = 0.0;
    double eta_bob = 1.0;
    double dark_bob = 0.0;
    std::string cheat = "none";
    int photons = 1;
    double evade = 0.0;
    std::string flipped = "bob";
    int shards = 1;
    std::string out;
};

int run_coinflip(const CoinflipArgs& args) {
    unruhsim::CoinFlipConfig config;
    config.mu = args.mu.resolve();
    config.trials = args.trials;
    config.seed = args.seed;
    config.shards = args.shards;
    config.alice = {args.eta_alice, args.dark_alice};
    config.bob = {args.eta_bob, args.dark_bob};

    if (args.cheat == "none") {
        config.cheat.kind = unruhsim::CheatModel::Kind::none;
    } else if (args.cheat == "injection") {
        config.cheat.kind = unruhsim::CheatModel::Kind::injection;
        config.cheat.photons = args.photons;
        config.cheat.evade_prob = args.evade;
    } else if (args.cheat == "report-flip") {
        config.cheat.kind = unruhsim::CheatModel::Kind::report_flip;
        config.cheat.flipped = args.flipped == "alice"
                                   ? unruhsim::CheatModel::Party::alice
                                   : unruhsim::CheatModel::Party::bob;
    } else {
        throw std::invalid_argument("--cheat must be none, injection, or report-flip");
    }

    unruhsim::ProtocolStats stats =
        config.cheat.kind == unruhsim::CheatModel::Kind::none
            ? unruhsim::run_protocol(config)
            : unruhsim::run_with_cheat(config);
    // Honest-party bias only; the opponent is modeled honest, epsilon 0.
    unruhsim::KitaevReport kitaev =
        unruhsim::kitaev_check(stats.epsilon0, stats.epsilon1, 0.0, 0.0);

    json params{
        {"mu", config.mu},
        {"trials", args.trials},
        {"seed", args.seed},
        {"alice_detector", detector_json(config.alice)},
        {"bob_detector", detector_json(config.bob)},
        {"cheat", args.cheat},
    };
    if (args.cheat == "injection") {
        params["photons"] = args.photons;
        params["evade_prob"] = args.evade;
    }
    if (args.cheat == "report-flip") params["flipped"] = args.flipped;

    json results{
        {"trials", stats.trials},
        {"count0", stats.count0},
        {"count1", stats.count1},
        {"count_fail", stats.count_fail},
        {"count_agree", stats.count_agree},
        {"p_outcome0", stats.p_outcome0},
        {"p_outcome1", stats.p_outcome1},
        {"p_fail", stats.p_fail},
        {"agreement_rate", stats.agreement_rate},
        {"epsilon0", stats.epsilon0},
        {"epsilon1", stats.epsilon1},
        {"epsilon0_se", stats.epsilon0_se},
        {"epsilon1_se", stats.epsilon1_se},
        {"kitaev",
         json{{"product0", kitaev.product0},
              {"product1", kitaev.product1},
              {"satisfies_bound", kitaev.satisfies_bound}}},
    };

    emit_json(args.out, make_manifest("coinflip", params, args.seed), results);
    return 0;
}

// ------------------------------------------------------------------ frames

struct FramesArgs {
    MuFlag mu;
    std::optional<double> accel;
    double omega = 1.0;
    double c = unruhsim::kSpeedOfLight;
    std::optional<double> distance;
    std::optional<double> wavelength;
    int shards = 1;
    std::string out;
};

int run_frames(const FramesArgs& args) {
    int sources = (args.mu.provided() ? 1 : 0) + (args.accel.has_value() ? 1 : 0) +
                  (args.distance.has_value() || args.wavelength.has_value() ? 1 : 0);
    if (sources != 1) {
        throw std::invalid_argument(
            "give exactly one of --mu/--mu-squared, --accel, or --distance with --wavelength");
    }

    json params{{"omega", args.omega}, {"c", args.c}};
    double mu = 0.0;
    json results;
    if (args.accel.has_value()) {
        unruhsim::AccelParams ap;
        ap.acceleration = *args.accel;
        ap.rindler_frequency = args.omega;
        ap.speed_of_light = args.c;
        mu = unruhsim::mu_from_acceleration(ap);
        params["accel"] = *args.accel;
        results["acceleration"] = *args.accel;
        results["unruh_temperature"] = unruhsim::unruh_temperature(ap);
    } else if (args.distance.has_value() || args.wavelength.has_value()) {
        if (!args.distance.has_value() || !args.wavelength.has_value()) {
            throw std::invalid_argument("--distance and --wavelength go together");
        }
        mu = unruhsim::mu_from_geometry(*args.distance, *args.wavelength);
        params["distance"] = *args.distance;
        params["wavelength"] = *args.wavelength;
    } else {
        mu = args.mu.resolve();
        if (mu < 0.0 || mu > 1.0) {
            throw std::invalid_argument("mu must lie in [0, 1]");
        }
        params["mu"] = mu;
    }

    results["mu"] = mu;
    results["mu_squared"] = mu * mu;
    results["fair_coin_acceleration"] =
        unruhsim::fair_coin_acceleration(args.omega, args.c);

    emit_json(args.out, make_manifest("frames", params, 0), results);
    return 0;
}

// -------------------------------------------------------------------- bell

struct BellArgs {
    MuFlag mu;
    double range = 1.5;
    int points = 9;
    int refinements = 2;
    int shards = 1;
    std::string out;
};

int run_bell(const BellArgs& args) {
    double mu = args.mu.resolve();
    unruhsim::GaussianState state = unruhsim::two_mode_squeezed(mu, +1, "E", "Et");
    unruhsim::ChshSearchResult search =
        unruhsim::chsh_search(state, args.range, args.points, args.refinements);

    json params{
        {"mu", mu},
        {"range", args.range},
        {"points", args.points},
        {"refinements", args.refinements},
    };
    json results{
        {"duan_epr", unruhsim::duan_epr(state)},
        {"chsh",
         json{{"value", search.value},
              {"best_a", json::array({search.best.a(0), search.best.a(1)})},
              {"best_b", json::array({search.best.b(0), search.best.b(1)})},
              {"level_values", search.level_values}}},
    };

    emit_json(args.out, make_manifest("bell", params, 0), results);
    return 0;
}

// --------------------------------------------------------------------- qkd

struct QkdArgs {
    MuFlag mu;
    std::uint64_t bits = 10000;
    std::uint64_t seed = 0;
    double eta_alice = 1.0;
    double dark_alice = 0.0;
    double eta_bob = 1.0;
    double dark_bob = 0.0;
    int shards = 1;
    std::string out;
};

int run_qkd(const QkdArgs& args) {
    double mu = args.mu.resolve();
    unruhsim::DetectorModel alice{args.eta_alice, args.dark_alice};
    unruhsim::DetectorModel bob{args.eta_bob, args.dark_bob};
    unruhsim::KeyBits key =
        unruhsim::generate_key_bits(mu, args.bits, alice, bob, args.seed, args.shards);

    json params{
        {"mu", mu},
        {"bits", args.bits},
        {"seed", args.seed},
        {"alice_detector", detector_json(alice)},
        {"bob_detector", detector_json(bob)},
    };
    json results{
        {"alice_bits", key.alice},
        {"bob_bits", key.bob},
        {"qber", key.qber},
        {"bit_bias", key.bit_bias},
        {"chsh_estimate", key.chsh_estimate},
    };

    emit_json(args.out, make_manifest("qkd", params, args.seed), results);
    return 0;
}

// -------------------------------------------------------------- report-eq5

struct Eq5Args {
    std::string format = "json";
    std::string alpha = "1,0";
    std::string outcomes = "0.5,-0.2";
    std::string out;
    int shards = 1;
};

int run_report_eq5(const Eq5Args& args) {
    if (args.format != "json" && args.format != "csv") {
        throw std::invalid_argument("--format must be json or csv");
    }
    PairFlag alpha = parse_pair(args.alpha, "--alpha");
    PairFlag oc = parse_pair(args.outcomes, "--outcomes");
    std::complex<double> alpha0{alpha.first, alpha.second};

    const std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6,
                                      0.7, 0.8, 0.9, 0.95, 0.99, 0.999};

    json params{
        {"format", args.format},
        {"alpha", json::array({alpha.first, alpha.second})},
        {"outcomes", json::array({oc.first, oc.second})},
        {"grid", grid},
    };
    unruhsim::RunManifest manifest = make_manifest("report-eq5", params, 0);

    json rows = json::array();
    for (double mu : grid) {
        unruhsim::ConditionalLaw law = unruhsim::conditional_form(mu);
        Eigen::Vector4d probe(alpha.first, alpha.second, oc.first, oc.second);
        Eigen::Vector2d pipe_center = law.center_coefficients * probe;
        double pipe_var = law.covariance(0, 0);
        unruhsim::GaussianState ref =
            unruhsim::eq_five_reference(mu, alpha0, oc.first, oc.second);
        Eigen::Vector2d ref_center = ref.mean();
        double ref_var = ref.covariance()(0, 0);
        rows.push_back(json{
            {"mu", mu},
            {"pipeline_center", json::array({pipe_center(0), pipe_center(1)})},
            {"pipeline_variance", pipe_var},
            {"eq5_center", json::array({ref_center(0), ref_center(1)})},
            {"eq5_variance", ref_var},
            {"center_magnitude_gap",
             std::abs(pipe_center.norm() - ref_center.norm())},
            {"variance_gap", std::abs(pipe_var - ref_var)},
        });
    }

    if (args.format == "json") {
        emit_json(args.out, manifest, json{{"table", rows}});
        return 0;
    }

    std::ostringstream csv;
    csv << "# " << unruhsim::to_json(manifest).dump() << "\n";
    csv << "mu,pipeline_center_x,pipeline_center_p,pipeline_variance,"
           "eq5_center_x,eq5_center_p,eq5_variance,center_magnitude_gap,"
           "variance_gap";
    for (const json& row : rows) {
        csv << "\n"
            << row["mu"].dump() << "," << row["pipeline_center"][0].dump() << ","
            << row["pipeline_center"][1].dump() << ","
            << row["pipeline_variance"].dump() << "," << row["eq5_center"][0].dump()
            << "," << row["eq5_center"][1].dump() << ","
            << row["eq5_variance"].dump() << ","
            << row["center_magnitude_gap"].dump() << ","
            << row["variance_gap"].dump();
    }
    emit(args.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for quantum protocols between accelerated observers"};
    app.require_subcommand(1);

    TeleportArgs tp;
    auto* tp_cmd = app.add_subcommand(
        "teleport", "Homodyne-conditioned teleportation of a coherent state");
    tp.mu.attach(tp_cmd);
    tp_cmd->add_option("--alpha", tp.alpha, "Input coherent amplitude re,im");
    tp_cmd->add_option("--outcomes", tp.outcomes,
                       "Fixed measurement outcomes X,P (default: sampled)");
    tp_cmd->add_option("--seed", tp.seed, "RNG seed");
    tp_cmd->add_option("--gain", tp.gain, "Recentring gain for the fidelity average");
    tp_cmd->add_option("--fidelity-trials", tp.fidelity_trials,
                       "Outcome samples for the fidelity average");
    tp_cmd->add_flag("--no-cool", tp.no_cool, "Leave Bob's mirror mode thermal");
    tp_cmd->add_option("--shards", tp.shards, "Worker count (does not change results)");
    tp_cmd->add_option("--out", tp.out, "Output file (default: stdout)");

    CoinflipArgs cf;
    auto* cf_cmd =
        app.add_subcommand("coinflip", "Photon-counting coin flip on the shared vacuum");
    cf.mu.attach(cf_cmd);
    cf_cmd->add_option("--trials", cf.trials, "Monte Carlo trials");
    cf_cmd->add_option("--seed", cf.seed, "RNG seed");
    cf_cmd->add_option("--eta-alice", cf.eta_alice, "Alice detector efficiency");
    cf_cmd->add_option("--dark-alice", cf.dark_alice, "Alice dark count probability");
    cf_cmd->add_option("--eta-bob", cf.eta_bob, "Bob detector efficiency");
    cf_cmd->add_option("--dark-bob", cf.dark_bob, "Bob dark count probability");
    cf_cmd->add_option("--cheat", cf.cheat, "none | injection | report-flip");
    cf_cmd->add_option("--photons", cf.photons, "Injected photons (injection cheat)");
    cf_cmd->add_option("--evade", cf.evade,
                       "Probability the vacuum check misses the injection");
    cf_cmd->add_option("--flipped", cf.flipped,
                       "Party misreporting its bit (report-flip cheat): alice | bob");
    cf_cmd->add_option("--shards", cf.shards, "Worker count (does not change results)");
    cf_cmd->add_option("--out", cf.out, "Output file (default: stdout)");

    FramesArgs fr;
    auto* fr_cmd = app.add_subcommand(
        "frames", "Physical-parameter conversions between frames");
    fr.mu.attach(fr_cmd);
    fr_cmd->add_option("--accel", fr.accel, "Proper acceleration");
    fr_cmd->add_option("--omega", fr.omega, "Accelerated-frame mode frequency");
    fr_cmd->add_option("--c", fr.c, "Speed of light in the chosen units");
    fr_cmd->add_option("--distance", fr.distance, "Wavepacket separation");
    fr_cmd->add_option("--wavelength", fr.wavelength, "Wavepacket wavelength");
    fr_cmd->add_option("--shards", fr.shards, "Worker count (does not change results)");
    fr_cmd->add_option("--out", fr.out, "Output file (default: stdout)");

    BellArgs bl;
    auto* bl_cmd = app.add_subcommand(
        "bell", "Displaced-parity CHSH search on the two-mode squeezed state");
    bl.mu.attach(bl_cmd);
    bl_cmd->add_option("--range", bl.range, "Initial search half-width");
    bl_cmd->add_option("--points", bl.points, "Grid points per axis");
    bl_cmd->add_option("--refinements", bl.refinements, "Grid refinement rounds");
    bl_cmd->add_option("--shards", bl.shards, "Worker count (does not change results)");
    bl_cmd->add_option("--out", bl.out, "Output file (default: stdout)");

    QkdArgs qk;
    auto* qk_cmd =
        app.add_subcommand("qkd", "Raw key generation with an entanglement check");
    qk.mu.attach(qk_cmd);
    qk_cmd->add_option("--bits", qk.bits, "Key length");
    qk_cmd->add_option("--seed", qk.seed, "RNG seed");
    qk_cmd->add_option("--eta-alice", qk.eta_alice, "Alice detector efficiency");
    qk_cmd->add_option("--dark-alice", qk.dark_alice, "Alice dark count probability");
    qk_cmd->add_option("--eta-bob", qk.eta_bob, "Bob detector efficiency");
    qk_cmd->add_option("--dark-bob", qk.dark_bob, "Bob dark count probability");
    qk_cmd->add_option("--shards", qk.shards, "Worker count (does not change results)");
    qk_cmd->add_option("--out", qk.out, "Output file (default: stdout)");

    Eq5Args e5;
    auto* e5_cmd = app.add_subcommand(
        "report-eq5",
        "Closed-form conditional state vs the Gaussian pipeline over a mu grid");
    e5_cmd->add_option("--format", e5.format, "json | csv");
    e5_cmd->add_option("--alpha", e5.alpha, "Probe coherent amplitude re,im");
    e5_cmd->add_option("--outcomes", e5.outcomes, "Probe measurement outcomes X,P");
    e5_cmd->add_option("--shards", e5.shards, "Worker count (does not change results)");
    e5_cmd->add_option("--out", e5.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (tp_cmd->parsed()) return run_teleport(tp);
        if (cf_cmd->parsed()) return run_coinflip(cf);
        if (fr_cmd->parsed()) return run_frames(fr);
        if (bl_cmd->parsed()) return run_bell(bl);
        if (qk_cmd->parsed()) return run_qkd(qk);
        if (e5_cmd->parsed()) return run_report_eq5(e5);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
