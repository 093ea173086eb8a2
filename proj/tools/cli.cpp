#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string_view>

#include "CLI11.hpp"
#include "linexplain/batch.hpp"
#include "linexplain/errors.hpp"
#include "linexplain/evaluation.hpp"
#include "linexplain/io.hpp"
#include "linexplain/model.hpp"
#include "linexplain/ranking.hpp"
#include "linexplain/synth.hpp"

namespace linexplain::cli {

namespace {

EcSearch parse_search(const std::string& s) {
    if (s == "linear_rank") return EcSearch::linear_rank;
    if (s == "complete") return EcSearch::complete;
    return EcSearch::greedy;
}

EcCreditMode parse_credit(const std::string& s) {
    return s == "inverse_size" ? EcCreditMode::inverse_size : EcCreditMode::membership;
}

BatchOptions batch_options(const RunConfig& cfg) {
    BatchOptions opts;
    opts.search = parse_search(cfg.search);
    opts.complete_max_size = cfg.max_size;
    opts.complete_budget = cfg.budget;
    opts.samples = cfg.samples;
    opts.seed = cfg.seed;
    opts.parallelism = cfg.parallelism;
    return opts;
}

// File sink when --output is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ParseError("cannot open '" + path + "' for writing");
            path_ = path;
        }
    }

    std::ostream& stream() { return path_.empty() ? std::cout : file_; }

    void finish() {
        stream().flush();
        if (!path_.empty() && !file_) throw ParseError("write to '" + path_ + "' failed");
    }

private:
    std::ofstream file_;
    std::string path_;
};

void meta(std::ostream& out, std::string_view key, std::string_view value) {
    out << "# " << key << ' ' << value << '\n';
}

void meta(std::ostream& out, std::string_view key, std::size_t value) {
    out << "# " << key << ' ' << value << '\n';
}

void meta_list(std::ostream& out, std::string_view key, std::span<const std::size_t> values) {
    out << "# " << key << ' ';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ',';
        out << values[i];
    }
    out << '\n';
}

struct Inputs {
    LinearModel model;
    SparseDataset dataset;
};

// Loads whatever the run needs and aligns both sides on one vocabulary, so a
// dataset mentioning features beyond the model's support scores them as zero
// instead of erroring.
Inputs load_inputs(const RunConfig& cfg, bool need_model, bool need_data) {
    Inputs in;
    if (need_model) in.model = load_model(cfg.model_path, cfg.threshold);
    if (need_data) in.dataset = load_dataset(cfg.data_path);
    const std::size_t m = std::max(in.model.num_features(), in.dataset.num_features());
    if (in.model.num_features() < m) in.model = in.model.with_num_features(m);
    if (in.dataset.num_features() < m) in.dataset = in.dataset.with_num_features(m);
    return in;
}

FeatureRanking build_ranking(const std::string& method, const LinearModel& model,
                             const SparseDataset& dataset, const RunConfig& cfg) {
    if (method == "beta") return rank_by_beta(model);
    if (method == "coverage") return rank_by_coverage(dataset);
    if (method == "ec") {
        const auto explanations = explain_dataset(model, dataset, batch_options(cfg));
        return aggregate_ec(explanations, model.num_features(), parse_credit(cfg.credit));
    }
    const auto attributions = attribute_dataset(model, dataset, batch_options(cfg));
    return aggregate_shapley(attributions, model.num_features());
}

void write_ec_meta(std::ostream& out, const RunConfig& cfg) {
    meta(out, "search", cfg.search);
    if (cfg.search == "complete") {
        meta(out, "max_size", cfg.max_size);
        meta(out, "budget", cfg.budget);
    }
}

void write_shapley_meta(std::ostream& out, const RunConfig& cfg) {
    meta(out, "samples", cfg.samples);
    meta(out, "exact_limit", kDefaultExactLimit);
    meta(out, "shapley_normalization", "signed-total");
}

int do_explain(const RunConfig& cfg) {
    const Inputs in = load_inputs(cfg, true, true);
    Output out(cfg.output_path);
    std::ostream& os = out.stream();

    meta(os, "linexplain", cfg.subcommand);
    meta(os, "model", cfg.model_path);
    meta(os, "data", cfg.data_path);
    meta(os, "method", cfg.method);
    if (cfg.method == "ec") write_ec_meta(os, cfg);
    if (cfg.method == "shapley") write_shapley_meta(os, cfg);
    meta(os, "threshold", format_double(cfg.threshold));
    meta(os, "seed", cfg.seed);
    os << "instance_id,feature_id,score\n";

    if (cfg.method == "ec") {
        for (const auto& e : explain_dataset(in.model, in.dataset, batch_options(cfg))) {
            for (FeatureId f : e.features) {
                os << e.instance_id << ',' << f << ','
                   << format_double(in.model.weight(f)) << '\n';
            }
        }
    } else {
        for (const auto& a : attribute_dataset(in.model, in.dataset, batch_options(cfg))) {
            for (const auto& [f, phi] : a.values) {
                os << a.instance_id << ',' << f << ',' << format_double(phi) << '\n';
            }
        }
    }
    out.finish();
    return 0;
}

int do_rank(const RunConfig& cfg) {
    const bool need_model = cfg.method != "coverage";
    const bool need_data = cfg.method != "beta";
    if (need_model && cfg.model_path.empty()) {
        std::cerr << "rank --method " << cfg.method << " requires --model\n";
        return 2;
    }
    if (need_data && cfg.data_path.empty()) {
        std::cerr << "rank --method " << cfg.method << " requires --data\n";
        return 2;
    }

    const Inputs in = load_inputs(cfg, need_model, need_data);
    std::vector<std::string> names;
    if (!cfg.names_path.empty()) names = load_feature_names(cfg.names_path);

    const FeatureRanking ranking = build_ranking(cfg.method, in.model, in.dataset, cfg);

    Output out(cfg.output_path);
    std::ostream& os = out.stream();
    meta(os, "linexplain", cfg.subcommand);
    if (need_model) meta(os, "model", cfg.model_path);
    if (need_data) meta(os, "data", cfg.data_path);
    meta(os, "method", cfg.method);
    if (cfg.method == "ec") {
        write_ec_meta(os, cfg);
        meta(os, "credit", cfg.credit);
    }
    if (cfg.method == "shapley") write_shapley_meta(os, cfg);
    meta(os, "threshold", format_double(cfg.threshold));
    meta(os, "seed", cfg.seed);
    os << "rank,feature_id,normalized_score,raw_score";
    if (!names.empty()) os << ",name";
    os << '\n';

    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        const auto& e = ranking.entries[i];
        // Beta entries carry the raw coefficient as their sort score; the
        // normalized column shares of positive weight, zero when degenerate.
        const double normalized = cfg.method == "beta"
                                      ? (ranking.raw_total > 0.0 ? e.raw / ranking.raw_total : 0.0)
                                      : e.score;
        os << (i + 1) << ',' << e.feature << ',' << format_double(normalized) << ','
           << format_double(e.raw);
        if (!names.empty()) os << ',' << (e.feature < names.size() ? names[e.feature] : "");
        os << '\n';
    }
    out.finish();
    return 0;
}

int do_curve(const RunConfig& cfg) {
    const Inputs in = load_inputs(cfg, true, true);

    std::vector<std::size_t> ks = cfg.ks;
    if (ks.empty()) {
        ks = default_k_grid(in.model.num_features());
    } else {
        for (std::size_t i = 1; i < ks.size(); ++i) {
            if (ks[i] <= ks[i - 1]) {
                std::cerr << "--ks must be strictly ascending\n";
                return 2;
            }
        }
        if (ks.back() > in.model.num_features()) {
            std::cerr << "--ks entries cannot exceed the feature count ("
                      << in.model.num_features() << ")\n";
            return 2;
        }
    }

    std::vector<ExplanationCurve> curves;
    curves.reserve(cfg.methods.size());
    for (const auto& method : cfg.methods) {
        const FeatureRanking ranking = build_ranking(method, in.model, in.dataset, cfg);
        curves.push_back(
            explanation_curve(ranking, in.model, in.dataset, ks, cfg.parallelism));
    }

    Output out(cfg.output_path);
    std::ostream& os = out.stream();
    meta(os, "linexplain", cfg.subcommand);
    meta(os, "model", cfg.model_path);
    meta(os, "data", cfg.data_path);
    write_ec_meta(os, cfg);
    meta(os, "credit", cfg.credit);
    write_shapley_meta(os, cfg);
    meta(os, "threshold", format_double(cfg.threshold));
    meta(os, "seed", cfg.seed);
    meta_list(os, "ks", ks);
    meta(os, "positives", curves.empty() ? 0 : curves.front().baseline_positive_count);
    os << "method,k,explained_count,explained_fraction\n";

    for (const auto& curve : curves) {
        for (const auto& [k, count] : curve.points) {
            const double fraction =
                curve.baseline_positive_count == 0
                    ? 0.0
                    : static_cast<double>(count) /
                          static_cast<double>(curve.baseline_positive_count);
            os << curve.method << ',' << k << ',' << count << ',' << format_double(fraction)
               << '\n';
        }
    }
    out.finish();
    return 0;
}

int do_correlate(const RunConfig& cfg) {
    const Inputs in = load_inputs(cfg, true, true);

    static constexpr const char* kOrder[] = {"shapley", "ec", "beta", "coverage"};
    std::vector<FeatureRanking> rankings;
    rankings.reserve(4);
    for (const char* method : kOrder) {
        rankings.push_back(build_ranking(method, in.model, in.dataset, cfg));
    }

    Output out(cfg.output_path);
    std::ostream& os = out.stream();
    meta(os, "linexplain", cfg.subcommand);
    meta(os, "model", cfg.model_path);
    meta(os, "data", cfg.data_path);
    write_ec_meta(os, cfg);
    meta(os, "credit", cfg.credit);
    write_shapley_meta(os, cfg);
    meta(os, "threshold", format_double(cfg.threshold));
    meta(os, "seed", cfg.seed);
    meta(os, "top_k", cfg.top_k);
    meta(os, "sentinel_rank",
         "features absent from the column ranking share rank |ranking|+1, tie-averaged");
    meta(os, "undefined_cells", "nan (fewer than two overlapping rankable features)");
    os << "method";
    for (const char* method : kOrder) os << ',' << method;
    os << '\n';

    for (std::size_t i = 0; i < rankings.size(); ++i) {
        os << kOrder[i];
        for (std::size_t j = 0; j < rankings.size(); ++j) {
            // One degenerate pair should not take down the rest of the matrix.
            std::string cell;
            try {
                cell = format_double(spearman_topk(rankings[i], rankings[j], cfg.top_k).rho);
            } catch (const UndefinedCorrelationError&) {
                cell = "nan";
            }
            os << ',' << cell;
        }
        os << '\n';
    }
    out.finish();
    return 0;
}

int do_synth(const SynthConfig& synth_cfg, const std::string& out_model,
             const std::string& out_data) {
    const SynthData data = generate_synthetic(synth_cfg);
    save_model(data.model, out_model);
    save_dataset(data.dataset, out_data);

    std::size_t positives = 0;
    for (const auto& instance : data.dataset.instances()) {
        if (instance.label().value_or(false)) ++positives;
    }
    std::cerr << "wrote " << out_model << " and " << out_data << " ("
              << data.dataset.size() << " instances, " << data.model.num_features()
              << " features, " << positives << " positive)\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    SynthConfig synth_cfg;
    std::string synth_model_path;
    std::string synth_data_path;

    CLI::App app{"explanations for linear classifiers on sparse binary data"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub, bool model_required, bool data_required) {
        auto* model_opt =
            sub->add_option("--model", cfg.model_path, "model TSV (feature_id<TAB>weight)");
        auto* data_opt =
            sub->add_option("--data", cfg.data_path, "SVMLight-style data file");
        if (model_required) model_opt->required();
        if (data_required) data_opt->required();
        sub->add_option("--output", cfg.output_path, "output CSV path (default: stdout)");
        sub->add_option("--threshold", cfg.threshold, "decision threshold (default 0)");
        sub->add_option("--seed", cfg.seed, "base seed for all sampling");
        sub->add_option("--samples", cfg.samples, "Monte Carlo permutations per instance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--parallelism", cfg.parallelism,
                        "worker threads (0 = hardware concurrency)");
        sub->add_option("--search", cfg.search, "counterfactual search strategy")
            ->check(CLI::IsMember({"linear_rank", "complete", "greedy"}));
        sub->add_option("--max-size", cfg.max_size,
                        "complete search: largest removal set (0 = all active)");
        sub->add_option("--budget", cfg.budget,
                        "complete search: subset evaluation budget");
        sub->add_option("--credit", cfg.credit, "counterfactual aggregation credit")
            ->check(CLI::IsMember({"membership", "inverse_size"}));
    };

    auto* explain = app.add_subcommand(
        "explain", "per-instance explanations (one CSV row per explaining feature)");
    add_common(explain, true, true);
    explain->add_option("--method", cfg.method, "ec | shapley")
        ->check(CLI::IsMember({"ec", "shapley"}));

    auto* rank = app.add_subcommand("rank", "global feature ranking CSV");
    add_common(rank, false, false);
    rank->add_option("--method", cfg.method, "ec | shapley | beta | coverage")
        ->check(CLI::IsMember({"ec", "shapley", "beta", "coverage"}));
    rank->add_option("--names", cfg.names_path, "feature-name sidecar TSV");

    auto* curve = app.add_subcommand("curve", "explanation curves per method");
    add_common(curve, true, true);
    curve->add_option("--ks", cfg.ks, "comma-separated mask sizes (default: 1,2,5,... grid)")
        ->delimiter(',');
    curve->add_option("--methods", cfg.methods, "methods to plot")
        ->delimiter(',')
        ->check(CLI::IsMember({"ec", "shapley", "beta", "coverage"}));

    auto* correlate =
        app.add_subcommand("correlate", "pairwise Spearman matrix over method rankings");
    add_common(correlate, true, true);
    correlate->add_option("--top-k", cfg.top_k, "feature count per correlation (default 1000)")
        ->check(CLI::PositiveNumber);

    auto* synth = app.add_subcommand("synth", "generate a synthetic model + dataset pair");
    synth->add_option("--out-model", synth_model_path, "model TSV destination")->required();
    synth->add_option("--out-data", synth_data_path, "data file destination")->required();
    synth->add_option("--instances", synth_cfg.num_instances, "rows to generate");
    synth->add_option("--features", synth_cfg.num_features, "vocabulary size");
    synth->add_option("--seed", synth_cfg.seed, "generation seed");
    synth->add_option("--coverage-exponent", synth_cfg.coverage_exponent,
                      "power-law decay of feature coverage");
    synth->add_option("--mean-active", synth_cfg.mean_active,
                      "target mean active features per instance");
    synth->add_option("--max-coverage", synth_cfg.max_coverage,
                      "cap on single-feature coverage");
    synth->add_option("--informative-fraction", synth_cfg.informative_fraction,
                      "share of features with lattice weights");
    synth->add_option("--anti-fraction", synth_cfg.anti_fraction,
                      "share of informative features boosted by rarity");
    synth->add_option("--boost-exponent", synth_cfg.boost_exponent, "rarity boost exponent");
    synth->add_option("--positive-sign-fraction", synth_cfg.positive_sign_fraction,
                      "share of informative weights that are positive");
    synth->add_option("--noise-scale", synth_cfg.noise_weight_scale,
                      "uninformative weight scale");
    synth->add_option("--weight-cap", synth_cfg.weight_cap, "informative weight magnitude cap");
    synth->add_option("--intercept", synth_cfg.intercept, "model intercept");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (explain->parsed()) {
            cfg.subcommand = "explain";
            return do_explain(cfg);
        }
        if (rank->parsed()) {
            cfg.subcommand = "rank";
            return do_rank(cfg);
        }
        if (curve->parsed()) {
            cfg.subcommand = "curve";
            return do_curve(cfg);
        }
        if (correlate->parsed()) {
            cfg.subcommand = "correlate";
            return do_correlate(cfg);
        }
        return do_synth(synth_cfg, synth_model_path, synth_data_path);
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("linexplain");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace linexplain::cli
