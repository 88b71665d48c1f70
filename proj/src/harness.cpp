#include "csdp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include <fmt/format.h>

namespace csdp {

namespace {

int truth_of(const ExperimentConfig& config, int input_value) {
    return config.truth_table.at(static_cast<std::size_t>(input_value));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out << text;
    out.close();
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError(fmt::format("cannot create output directory '{}'", dir.string()));
}

std::string bits_string(std::span<const int> bits) {
    std::string s;
    for (int b : bits) s += b ? '1' : '0';
    return s;
}

const char* phase_name(Phase p) { return p == Phase::positive ? "positive" : "negative"; }

}  // namespace

std::vector<Example> positives_from_truth_table(const ExperimentConfig& config) {
    const int inputs = config.network.input_bits;
    std::vector<Example> out;
    for (int v = 0; v < (1 << inputs); ++v)
        out.push_back(Example{value_to_bits(v, inputs),
                              value_to_bits(truth_of(config, v), config.network.label_bits),
                              Phase::positive});
    return out;
}

std::vector<Example> build_dataset(const ExperimentConfig& config) {
    auto data = positives_from_truth_table(config);
    const auto negatives = generate_negatives(data, config.network.label_bits);
    data.insert(data.end(), negatives.begin(), negatives.end());
    return data;
}

int infer_label(const Network& net, std::span<const int> input_bits) {
    const int label_bits = net.config().label_bits;
    int best = 0;
    double best_score = 0.0;
    for (int v = 0; v < (1 << label_bits); ++v) {
        const Example candidate{std::vector<int>(input_bits.begin(), input_bits.end()),
                                value_to_bits(v, label_bits), Phase::positive};
        const auto g = forward_pass(net, candidate).goodness();
        double score = 0.0;
        for (double z : g) score += z;
        if (v == 0 || score > best_score) {
            best = v;
            best_score = score;
        }
    }
    return best;
}

ExperimentReport evaluate(const Network& net, const ExperimentConfig& config,
                          std::vector<EpochReport> epochs, std::uint64_t seed) {
    ExperimentReport report;
    report.seed = seed;
    report.epochs = std::move(epochs);
    report.config_echo = echo_config(config);
    {
        std::ostringstream w;
        write_weights(net, w);
        report.weights_csv = w.str();
    }

    const int inputs = config.network.input_bits;
    const int label_bits = config.network.label_bits;
    const auto layers = net.num_layers();
    std::vector<int> correct(layers, 0);
    for (int v = 0; v < (1 << inputs); ++v) {
        for (int label = 0; label < (1 << label_bits); ++label) {
            const Phase phase = label == truth_of(config, v) ? Phase::positive : Phase::negative;
            const Example ex{value_to_bits(v, inputs), value_to_bits(label, label_bits), phase};
            CombinationResult row{ex.input_bits, label, phase, forward_pass(net, ex).goodness()};
            for (std::size_t l = 0; l < layers; ++l)
                if ((row.z_p[l] > 0.5) == (phase == Phase::positive)) ++correct[l];
            report.combinations.push_back(std::move(row));
        }
    }
    const double n = static_cast<double>(report.combinations.size());
    for (int c : correct) report.layer_threshold_accuracy.push_back(c / n);
    report.threshold_accuracy = report.layer_threshold_accuracy.back();
    report.all_separated = correct.back() == static_cast<int>(report.combinations.size());

    int hits = 0;
    for (int v = 0; v < (1 << inputs); ++v)
        if (infer_label(net, value_to_bits(v, inputs)) == truth_of(config, v)) ++hits;
    report.argmax_accuracy = static_cast<double>(hits) / static_cast<double>(1 << inputs);
    return report;
}

TrainingRun run_training(const ExperimentConfig& config, std::uint64_t seed) {
    TrainingRun run{Network(config.network), {}};
    Rng rng(seed);
    run.net.initialize_uniform(config.training.init_weight_range, rng);
    const auto dataset = build_dataset(config);
    run.epochs = train(run.net, dataset, config.training, rng);
    return run;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
    prepare_dir(out_dir);

    std::string mse = "epoch,layer,mse,mean_abs_delta\n";
    for (std::size_t e = 0; e < report.epochs.size(); ++e)
        for (std::size_t l = 0; l < report.epochs[e].mse.size(); ++l)
            mse += fmt::format("{},{},{:.17g},{:.17g}\n", e + 1, l + 1, report.epochs[e].mse[l],
                               report.epochs[e].mean_abs_delta[l]);
    write_file(out_dir / "mse.csv", mse);

    std::string probs = "input_bits,label,phase,layer,z_p\n";
    for (const auto& c : report.combinations)
        for (std::size_t l = 0; l < c.z_p.size(); ++l)
            probs += fmt::format("{},{},{},{},{:.17g}\n", bits_string(c.input_bits), c.label,
                                 phase_name(c.phase), l + 1, c.z_p[l]);
    write_file(out_dir / "probabilities.csv", probs);

    write_file(out_dir / "weights.csv", report.weights_csv);

    const auto total = report.combinations.size();
    std::string text;
    text += fmt::format("seed: {}\n", report.seed);
    text += fmt::format("epochs trained: {}\n", report.epochs.size());
    text += fmt::format("final-layer threshold accuracy: {:.4f} ({}/{})\n", report.threshold_accuracy,
                        static_cast<long>(report.threshold_accuracy * total + 0.5), total);
    text += fmt::format("argmax inference accuracy: {:.4f}\n", report.argmax_accuracy);
    text += fmt::format("all combinations separated: {}\n", report.all_separated ? "yes" : "no");
    for (std::size_t l = 0; l < report.layer_threshold_accuracy.size(); ++l)
        text += fmt::format("layer {} threshold accuracy: {:.4f}\n", l + 1,
                            report.layer_threshold_accuracy[l]);
    if (!report.epochs.empty()) {
        const auto& last = report.epochs.back();
        for (std::size_t l = 0; l < last.mse.size(); ++l)
            text += fmt::format("layer {} final mse: {:.6f}\n", l + 1, last.mse[l]);
    }
    text += "\ninput label phase    z_p per layer\n";
    for (const auto& c : report.combinations) {
        text += fmt::format("{:>5} {:>5} {:<8}", bits_string(c.input_bits), c.label,
                            phase_name(c.phase));
        for (double z : c.z_p) text += fmt::format(" {:.4f}", z);
        text += '\n';
    }
    text += "\nconfig:\n" + report.config_echo;
    write_file(out_dir / "report.txt", text);
}

ExperimentReport run_experiment(const std::filesystem::path& config_path,
                                std::optional<std::uint64_t> seed,
                                const std::filesystem::path& out_dir) {
    auto config = load_config(config_path);
    if (seed) config.training.seed = *seed;
    auto run = run_training(config, config.training.seed);
    auto report = evaluate(run.net, config, std::move(run.epochs), config.training.seed);
    write_report(report, out_dir);
    return report;
}

ExperimentReport run_evaluation(const std::filesystem::path& config_path,
                                const std::filesystem::path& weights_path,
                                const std::filesystem::path& out_dir) {
    const auto config = load_config(config_path);
    Network net(config.network);
    std::ifstream in(weights_path);
    if (!in) throw IoError(fmt::format("cannot read weights '{}'", weights_path.string()));
    try {
        read_weights(net, in);
    } catch (const std::runtime_error& e) {
        throw IoError(fmt::format("{}: {}", weights_path.string(), e.what()));
    }
    auto report = evaluate(net, config, {}, config.training.seed);
    write_report(report, out_dir);
    return report;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, std::uint64_t base_seed, int count,
                                int jobs) {
    if (count < 1) throw std::invalid_argument("run_sweep: count must be >= 1");
    jobs = std::clamp(jobs, 1, count);
    std::vector<SweepRow> rows(static_cast<std::size_t>(count));
    std::atomic<int> next{0};

    auto worker = [&] {
        for (int k = next++; k < count; k = next++) {
            const auto start = std::chrono::steady_clock::now();
            const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
            auto run = run_training(config, seed);
            const auto report = evaluate(run.net, config, {}, seed);
            SweepRow row;
            row.seed = seed;
            row.threshold_accuracy = report.threshold_accuracy;
            row.argmax_accuracy = report.argmax_accuracy;
            row.all_separated = report.all_separated;
            if (!run.epochs.empty()) {
                row.first_mse = run.epochs.front().mse;
                row.final_mse = run.epochs.back().mse;
            }
            row.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            rows[static_cast<std::size_t>(k)] = std::move(row);
        }
    };

    std::vector<std::future<void>> pool;
    for (int j = 0; j < jobs; ++j) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    return rows;
}

void write_sweep(std::span<const SweepRow> rows, const std::filesystem::path& out_dir) {
    prepare_dir(out_dir);
    std::size_t layers = 0;
    for (const auto& r : rows) layers = std::max(layers, r.final_mse.size());

    std::string csv = "seed,threshold_accuracy,argmax_accuracy,all_separated";
    for (std::size_t l = 1; l <= layers; ++l)
        csv += fmt::format(",first_mse_layer{},final_mse_layer{}", l, l);
    csv += ",wall_time_s\n";
    for (const auto& r : rows) {
        csv += fmt::format("{},{:.17g},{:.17g},{}", r.seed, r.threshold_accuracy, r.argmax_accuracy,
                           r.all_separated ? 1 : 0);
        for (std::size_t l = 0; l < layers; ++l) {
            if (l < r.final_mse.size())
                csv += fmt::format(",{:.17g},{:.17g}", r.first_mse[l], r.final_mse[l]);
            else
                csv += ",,";
        }
        csv += fmt::format(",{:.6f}\n", r.wall_time_s);
    }
    write_file(out_dir / "sweep.csv", csv);
}

}  // namespace csdp
