// ffinc: set generation, incidence/energy/exponential-sum computation,
// bound verification suites, and benchmarks over prime fields.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ffinc/energy.hpp"
#include "ffinc/expsum.hpp"
#include "ffinc/field.hpp"
#include "ffinc/incidence.hpp"
#include "ffinc/prng.hpp"
#include "ffinc/subset.hpp"
#include "ffinc/verify.hpp"

namespace {

using namespace ffinc;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitCapExceeded = 4;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::cap_exceeded: return kExitCapExceeded;
        case Errc::check_failed: return kExitCheckFailed;
        default: return kExitValidation;
    }
}

// FFINC_SEED in the environment overrides any --seed flag.
std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("FFINC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            fail(Errc::bad_params, std::string("FFINC_SEED is not an integer: ") + env);
        }
    }
    return flag_seed;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
    out << text;
    if (!out) fail(Errc::io_error, "write failed: " + path);
}

Algo algo_from_string(const std::string& s) {
    if (s == "fast") return Algo::fast;
    if (s == "oracle") return Algo::oracle;
    fail(Errc::bad_params, "unknown algorithm: " + s);
}

std::string agreement_json(const EnergyResult& fast, const EnergyResult& oracle) {
    nlohmann::ordered_json j;
    j["fast"] = nlohmann::ordered_json::parse(fast.to_json());
    j["oracle"] = nlohmann::ordered_json::parse(oracle.to_json());
    j["agree"] = fast.value == oracle.value;
    return j.dump(2) + "\n";
}

struct GenArgs {
    std::uint32_t p = 0;
    std::string kind;
    std::int64_t size = 0;
    std::optional<std::int64_t> start, step, ratio, order;
    std::uint64_t seed = 1;
    std::string out;
};

int run_gen(const GenArgs& args) {
    const FieldCtx ctx(args.p);
    std::map<std::string, std::int64_t> params;
    const GenKind kind = gen_kind_from_string(args.kind);
    if (kind != GenKind::subgroup) params["size"] = args.size;
    if (args.start) params["start"] = *args.start;
    if (args.step) params["step"] = *args.step;
    if (args.ratio) params["ratio"] = *args.ratio;
    if (args.order) params["order"] = *args.order;
    const Subset set = gen_subset(ctx, kind, params, effective_seed(args.seed));
    write_output(args.out, set.to_json());
    return kExitOk;
}

struct TriplesArgs {
    std::string a_path, b_path;
    std::uint32_t lambda = 1, mu = 1;
    std::string algo = "fast";
    bool nonzero = false;
    std::string out;
};

int run_triples(const TriplesArgs& args) {
    const Subset A = Subset::load(args.a_path);
    const Subset B = Subset::load(args.b_path);
    auto compute = [&](Algo algo) {
        return args.nonzero ? collinear_triples_nonzero(A, B, args.lambda, args.mu, algo)
                            : collinear_triples(A, B, args.lambda, args.mu, algo);
    };
    if (args.algo == "both") {
        const auto fast = compute(Algo::fast);
        const auto oracle = compute(Algo::oracle);
        write_output(args.out, agreement_json(fast, oracle));
        return fast.value == oracle.value ? kExitOk : kExitCheckFailed;
    }
    write_output(args.out, compute(algo_from_string(args.algo)).to_json());
    return kExitOk;
}

struct EnergyArgs {
    std::string a_path, b_path;
    std::uint32_t lambda = 1, mu = 1;
    std::string algo = "fast";
    bool star = false;  // D* instead of D
    std::string out;
};

int run_energy(const EnergyArgs& args) {
    const Subset A = Subset::load(args.a_path);
    const Subset B = Subset::load(args.b_path);
    auto compute = [&](Algo algo) {
        return quad_energy(A, B, args.lambda, args.mu, args.star, algo);
    };
    if (args.algo == "both") {
        const auto fast = compute(Algo::fast);
        const auto oracle = compute(Algo::oracle);
        write_output(args.out, agreement_json(fast, oracle));
        return fast.value == oracle.value ? kExitOk : kExitCheckFailed;
    }
    write_output(args.out, compute(algo_from_string(args.algo)).to_json());
    return kExitOk;
}

struct SpectrumArgs {
    std::string a_path, b_path;
    std::uint32_t lambda = 1, mu = 1;
    std::string out;
    std::string moments_out;
};

int run_spectrum(const SpectrumArgs& args) {
    const Subset A = Subset::load(args.a_path);
    const Subset B = Subset::load(args.b_path);
    const IncidenceSpectrum spec = incidence_spectrum(A, B);
    std::ostringstream csv;
    csv << "n,line_count\n";
    for (const auto& [n, lines] : spec.histogram) csv << n << ',' << lines << '\n';
    write_output(args.out, csv.str());

    if (!args.moments_out.empty()) {
        nlohmann::ordered_json j;
        j["first_moment"] = to_decimal(first_moment(A, B));
        j["mixed_11"] = to_decimal(mixed_moment_11(A, B, args.lambda, args.mu));
        j["centered_2_num"] = to_decimal(centered_moment_2(A, B, args.lambda, args.mu).num);
        j["scale"] = "p^2";
        write_output(args.moments_out, j.dump(2) + "\n");
    }
    return kExitOk;
}

struct SumArgs {
    std::vector<std::string> set_paths;
    std::string weights = "ones";
    std::uint32_t coeff = 1;
    std::uint64_t seed = 1;
    std::string out;
};

int run_bilinear(const SumArgs& args) {
    const Subset X = Subset::load(args.set_paths[0]);
    const Subset Y = Subset::load(args.set_paths[1]);
    const FieldCtx ctx(X.p());
    const WeightKind kind = weight_kind_from_string(args.weights);
    const std::uint64_t seed = effective_seed(args.seed);
    const auto alpha = gen_weight_vec(kind, X.size(), derive_seed(seed, 1));
    const auto beta = gen_weight_vec(kind, Y.size(), derive_seed(seed, 2));
    write_output(args.out, bilinear_sum(ctx, X, Y, alpha, beta, args.coeff).to_json());
    return kExitOk;
}

int run_trisum(const SumArgs& args) {
    const Subset X = Subset::load(args.set_paths[0]);
    const Subset Y = Subset::load(args.set_paths[1]);
    const Subset Z = Subset::load(args.set_paths[2]);
    const FieldCtx ctx(X.p());
    const WeightKind kind = weight_kind_from_string(args.weights);
    const std::uint64_t seed = effective_seed(args.seed);
    const auto rho = gen_weight_grid2(kind, X.size(), Y.size(), derive_seed(seed, 1));
    const auto sigma = gen_weight_grid2(kind, X.size(), Z.size(), derive_seed(seed, 2));
    const auto tau = gen_weight_grid2(kind, Y.size(), Z.size(), derive_seed(seed, 3));
    write_output(args.out,
                 trilinear_sum(ctx, X, Y, Z, rho, sigma, tau, args.coeff).to_json());
    return kExitOk;
}

int run_quadsum(const SumArgs& args) {
    const Subset W = Subset::load(args.set_paths[0]);
    const Subset X = Subset::load(args.set_paths[1]);
    const Subset Y = Subset::load(args.set_paths[2]);
    const Subset Z = Subset::load(args.set_paths[3]);
    const FieldCtx ctx(W.p());
    const WeightKind kind = weight_kind_from_string(args.weights);
    const std::uint64_t seed = effective_seed(args.seed);
    const auto theta =
        gen_weight_grid3(kind, W.size(), X.size(), Y.size(), derive_seed(seed, 1));
    const auto rho =
        gen_weight_grid3(kind, W.size(), X.size(), Z.size(), derive_seed(seed, 2));
    const auto sigma =
        gen_weight_grid3(kind, W.size(), Y.size(), Z.size(), derive_seed(seed, 3));
    const auto tau =
        gen_weight_grid3(kind, X.size(), Y.size(), Z.size(), derive_seed(seed, 4));
    write_output(args.out,
                 quadrilinear_sum(ctx, W, X, Y, Z, theta, rho, sigma, tau, args.coeff)
                     .to_json());
    return kExitOk;
}

struct VerifyArgs {
    std::string suite = "all";
    std::vector<std::uint32_t> primes = {101, 499, 1009};
    int trials = 10;
    std::uint64_t seed = 1;
    double ratio_gate = 10.0;
    int threads = 1;
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyArgs& args) {
    if (args.format != "json" && args.format != "csv")
        fail(Errc::bad_params, "format must be json or csv");
    SuiteConfig config;
    config.suite = args.suite;
    config.primes = args.primes;
    config.trials = args.trials;
    config.seed = effective_seed(args.seed);
    config.ratio_gate = args.ratio_gate;
    config.threads = args.threads;

    const Report report = run_suite(config);
    write_output(args.out,
                 args.format == "csv" ? report_to_csv(report) : report_to_json(report));
    return report.all_pass ? kExitOk : kExitCheckFailed;
}

struct BenchArgs {
    std::uint32_t p = 101;
    std::vector<std::size_t> sizes = {8, 12, 16, 24, 32};
    std::vector<std::string> quantities = {"T", "Dstar", "N"};
    std::vector<std::string> algos = {"fast", "oracle"};
    std::uint64_t seed = 1;
    std::string out;
};

int run_bench(const BenchArgs& args) {
    const FieldCtx ctx(args.p);
    const std::uint64_t seed = effective_seed(args.seed);
    std::ostringstream csv;
    csv << "quantity,p,sizes,algo,millis\n";
    for (std::size_t size : args.sizes) {
        const Subset A = gen_subset(ctx, GenKind::random_elements,
                                    {{"size", static_cast<std::int64_t>(size)}},
                                    derive_seed(seed, size, 1));
        const Subset B = gen_subset(ctx, GenKind::random_elements,
                                    {{"size", static_cast<std::int64_t>(size)}},
                                    derive_seed(seed, size, 2));
        for (const std::string& quantity : args.quantities) {
            for (const std::string& algo_name : args.algos) {
                const Algo algo = algo_from_string(algo_name);
                const auto start = std::chrono::steady_clock::now();
                try {
                    if (quantity == "T")
                        collinear_triples(A, B, 1, 1, algo);
                    else if (quantity == "Tstar")
                        collinear_triples_nonzero(A, B, 1, 1, algo);
                    else if (quantity == "D")
                        quad_energy(A, B, 1, 1, false, algo);
                    else if (quantity == "Dstar")
                        quad_energy(A, B, 1, 1, true, algo);
                    else if (quantity == "N")
                        collision_count(A, B, B, algo);
                    else
                        fail(Errc::bad_params, "unknown quantity: " + quantity);
                } catch (const Error& e) {
                    // Oracle refuses oversized instances; skip the cell instead
                    // of aborting the whole benchmark.
                    if (e.code() == Errc::cap_exceeded) continue;
                    throw;
                }
                const auto elapsed = std::chrono::steady_clock::now() - start;
                const double millis =
                    std::chrono::duration<double, std::milli>(elapsed).count();
                csv << quantity << ',' << args.p << ',' << size << ';' << size << ','
                    << algo_name << ',' << millis << '\n';
            }
        }
    }
    write_output(args.out, csv.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incidence, energy, and exponential-sum toolkit over prime fields"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a subset file");
    gen_cmd->add_option("--p", gen.p, "odd prime modulus, 3 <= p <= 2^20")->required();
    gen_cmd->add_option("--kind", gen.kind,
                        "random | interval | arith_prog | geom_prog | subgroup")
        ->required();
    gen_cmd->add_option("--size", gen.size, "number of elements");
    gen_cmd->add_option("--start", gen.start, "first element (interval/progressions)");
    gen_cmd->add_option("--step", gen.step, "arith_prog step");
    gen_cmd->add_option("--ratio", gen.ratio, "geom_prog ratio");
    gen_cmd->add_option("--order", gen.order, "subgroup order (must divide p-1)");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--out", gen.out, "output path (default stdout)");

    auto* compute = app.add_subcommand("compute", "Compute a single quantity");
    compute->require_subcommand(1);

    TriplesArgs triples;
    auto* triples_cmd = compute->add_subcommand("triples", "Collinear triple count T");
    triples_cmd->add_option("--a", triples.a_path)->required();
    triples_cmd->add_option("--b", triples.b_path)->required();
    triples_cmd->add_option("--lambda", triples.lambda);
    triples_cmd->add_option("--mu", triples.mu);
    triples_cmd->add_option("--algo", triples.algo, "fast | oracle | both");
    triples_cmd->add_flag("--nonzero", triples.nonzero, "restrict to T*");
    triples_cmd->add_option("--out", triples.out);

    EnergyArgs energy;
    auto* energy_cmd = compute->add_subcommand("energy", "Quadruple energy D / D*");
    energy_cmd->add_option("--a", energy.a_path)->required();
    energy_cmd->add_option("--b", energy.b_path)->required();
    energy_cmd->add_option("--lambda", energy.lambda);
    energy_cmd->add_option("--mu", energy.mu);
    energy_cmd->add_option("--algo", energy.algo, "fast | oracle | both");
    energy_cmd->add_flag("--star", energy.star, "nonzero common value (D*)");
    energy_cmd->add_option("--out", energy.out);

    SpectrumArgs spectrum;
    auto* spectrum_cmd = compute->add_subcommand("spectrum", "Incidence spectrum CSV");
    spectrum_cmd->add_option("--a", spectrum.a_path)->required();
    spectrum_cmd->add_option("--b", spectrum.b_path)->required();
    spectrum_cmd->add_option("--lambda", spectrum.lambda);
    spectrum_cmd->add_option("--mu", spectrum.mu);
    spectrum_cmd->add_option("--out", spectrum.out);
    spectrum_cmd->add_option("--moments-out", spectrum.moments_out,
                             "also write exact moments JSON");

    SumArgs bilinear, trisum, quadsum;
    bilinear.set_paths.resize(2);
    trisum.set_paths.resize(3);
    quadsum.set_paths.resize(4);
    auto add_sum_flags = [](CLI::App* cmd, SumArgs& args) {
        cmd->add_option("--weights", args.weights, "ones | random_phase | random_sign");
        cmd->add_option("--coeff", args.coeff, "coefficient inside the character");
        cmd->add_option("--seed", args.seed, "weight seed");
        cmd->add_option("--out", args.out);
    };
    auto* bilinear_cmd = compute->add_subcommand("bilinear", "Bilinear exponential sum");
    bilinear_cmd->add_option("--x", bilinear.set_paths[0])->required();
    bilinear_cmd->add_option("--y", bilinear.set_paths[1])->required();
    add_sum_flags(bilinear_cmd, bilinear);

    auto* trisum_cmd = compute->add_subcommand("trisum", "Trilinear exponential sum");
    trisum_cmd->add_option("--x", trisum.set_paths[0])->required();
    trisum_cmd->add_option("--y", trisum.set_paths[1])->required();
    trisum_cmd->add_option("--z", trisum.set_paths[2])->required();
    add_sum_flags(trisum_cmd, trisum);

    auto* quadsum_cmd = compute->add_subcommand("quadsum", "Quadrilinear exponential sum");
    quadsum_cmd->add_option("--w", quadsum.set_paths[0])->required();
    quadsum_cmd->add_option("--x", quadsum.set_paths[1])->required();
    quadsum_cmd->add_option("--y", quadsum.set_paths[2])->required();
    quadsum_cmd->add_option("--z", quadsum.set_paths[3])->required();
    add_sum_flags(quadsum_cmd, quadsum);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the bound-check suite");
    verify_cmd->add_option("--suite", verify.suite, "exact | asymptotic | all");
    verify_cmd->add_option("--p", verify.primes, "prime list")->delimiter(',');
    verify_cmd->add_option("--trials", verify.trials);
    verify_cmd->add_option("--seed", verify.seed);
    verify_cmd->add_option("--ratio-gate", verify.ratio_gate,
                           "max allowed asymptotic ratio");
    verify_cmd->add_option("--threads", verify.threads, "recorded in the report");
    verify_cmd->add_option("--format", verify.format, "json | csv");
    verify_cmd->add_option("--out", verify.out, "report path (default stdout)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time fast vs oracle algorithms");
    bench_cmd->add_option("--p", bench.p);
    bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',');
    bench_cmd->add_option("--quantities", bench.quantities)->delimiter(',');
    bench_cmd->add_option("--algos", bench.algos)->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed);
    bench_cmd->add_option("--out", bench.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*triples_cmd) return run_triples(triples);
        if (*energy_cmd) return run_energy(energy);
        if (*spectrum_cmd) return run_spectrum(spectrum);
        if (*bilinear_cmd) return run_bilinear(bilinear);
        if (*trisum_cmd) return run_trisum(trisum);
        if (*quadsum_cmd) return run_quadsum(quadsum);
        if (*verify_cmd) return run_verify(verify);
        if (*bench_cmd) return run_bench(bench);
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
