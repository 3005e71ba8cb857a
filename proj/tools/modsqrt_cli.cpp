// SPDX-License-Identifier: Apache-2.0
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "modsqrt/bench.hpp"
#include "modsqrt/oracle.hpp"
#include "modsqrt/parallel.hpp"
#include "modsqrt/shanks.hpp"
#include "modsqrt/tabulated.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitComposite = 2;
constexpr int kExitNotAResidue = 3;

// Decimal-only unsigned parse; rejects hex, signs and trailing junk.
std::optional<std::uint64_t> parse_u64(const std::string& s) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 10);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::uint64_t require_u64(const std::string& s, const char* name) {
    const auto v = parse_u64(s);
    if (!v) throw modsqrt::ConfigError(std::string("malformed ") + name + ": '" + s + "'");
    return *v;
}

int cmd_sqrt(const std::string& p_str, const std::string& a_str, const std::string& algo,
             const std::string& mode_str, bool canonical, bool stats) {
    const std::uint64_t p = require_u64(p_str, "-p");
    std::uint64_t a = require_u64(a_str, "-a");

    const modsqrt::PrimeContext ctx = modsqrt::build_context(p);
    a %= p;

    const modsqrt::ExecMode mode = mode_str == "concurrent"
                                       ? modsqrt::ExecMode::concurrent
                                       : modsqrt::ExecMode::sequential_simulated;
    modsqrt::SqrtOutcome out;
    if (algo == "v1") {
        out = modsqrt::sqrt_shanks(modsqrt::Residue(a), ctx);
    } else if (algo == "v2") {
        out = modsqrt::sqrt_tabulated(modsqrt::Residue(a), ctx);
    } else {
        out = modsqrt::sqrt_parallel(modsqrt::Residue(a), ctx, mode);
    }

    std::uint64_t root = out.root.v;
    if (canonical && root != 0 && p - root < root) root = p - root;
    std::cout << root << '\n';
    if (stats) {
        std::cout << "mul_init=" << out.counter.mul_init() << '\n'
                  << "mul_loop=" << out.counter.mul_loop() << '\n'
                  << "lookups=" << out.counter.lookups() << '\n';
        if (out.rounds) std::cout << "rounds=" << *out.rounds << '\n';
        std::cout << "loop_iterations=" << out.loop_iterations << '\n';
    }
    return kExitOk;
}

int cmd_check(const std::string& p_str, const std::string& a_str, const std::string& x_str) {
    const std::uint64_t p = require_u64(p_str, "-p");
    if (p == 0 || p >> 63 != 0) {
        throw modsqrt::ConfigError("modulus must be in [1, 2^63)");
    }
    const std::uint64_t a = require_u64(a_str, "-a") % p;
    const std::uint64_t x = require_u64(x_str, "-x") % p;
    if (modsqrt::raw::mul(x, x, p) == a) {
        std::cout << "OK\n";
        return kExitOk;
    }
    std::cout << "FAIL\n";
    return kExitBadInput;
}

modsqrt::bench::BenchConfig config_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw modsqrt::ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw modsqrt::ConfigError("config parse error: " + std::string(e.what()));
    }
    modsqrt::bench::BenchConfig cfg;
    try {
        if (j.contains("primes")) cfg.primes = j["primes"].get<std::vector<std::uint64_t>>();
        if (j.contains("n")) cfg.n_list = j["n"].get<std::vector<int>>();
        if (j.contains("q_max")) cfg.q_max = j["q_max"].get<std::uint64_t>();
        if (j.contains("samples")) cfg.samples_per_prime = j["samples"].get<std::uint64_t>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("algorithms")) {
            cfg.algorithms.clear();
            for (const auto& name : j["algorithms"]) {
                const auto algo =
                    modsqrt::bench::algorithm_from_string(name.get<std::string>());
                if (!algo) {
                    throw modsqrt::ConfigError("config field 'algorithms': unknown value '" +
                                               name.get<std::string>() + "'");
                }
                cfg.algorithms.push_back(*algo);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw modsqrt::ConfigError("config field error: " + std::string(e.what()));
    }
    return cfg;
}

int cmd_bench(const modsqrt::bench::BenchConfig& cfg, const std::string& out_path) {
    const auto records = modsqrt::bench::run_sweep(cfg);
    const std::string csv = modsqrt::bench::emit_csv(records);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw modsqrt::ConfigError("cannot open output file '" + out_path + "'");
        out << csv;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular square roots modulo p = q*2^n + 1 with instrumented"
                 " operation counts"};
    app.require_subcommand(1);

    auto* sqrt_cmd = app.add_subcommand("sqrt", "Compute a square root mod a prime");
    std::string p_str, a_str, x_str;
    std::string algo = "v1";
    std::string mode = "sequential-simulated";
    bool canonical = false, stats = false;
    sqrt_cmd->add_option("-p", p_str, "odd prime modulus (decimal)")->required();
    sqrt_cmd->add_option("-a", a_str, "quadratic residue (decimal)")->required();
    sqrt_cmd->add_option("--algo", algo, "algorithm variant")
        ->check(CLI::IsMember({"v1", "v2", "v3"}));
    sqrt_cmd->add_option("--mode", mode, "execution mode of the v3 table refresh")
        ->check(CLI::IsMember({"sequential-simulated", "concurrent"}));
    sqrt_cmd->add_flag("--canonical", canonical, "print min(x, p-x)");
    sqrt_cmd->add_flag("--stats", stats, "print operation counts as key=value lines");

    auto* check_cmd = app.add_subcommand("check", "Verify x^2 = a (mod p)");
    check_cmd->add_option("-p", p_str, "modulus (decimal)")->required();
    check_cmd->add_option("-a", a_str, "value (decimal)")->required();
    check_cmd->add_option("-x", x_str, "candidate root (decimal)")->required();

    auto* bench_cmd = app.add_subcommand("bench", "Sweep Proth primes and emit cost CSV");
    std::vector<int> n_list;
    std::vector<std::string> prime_strs, algo_names;
    std::uint64_t q_max = 999, samples = 100, seed = 0;
    std::string config_path, out_path;
    bench_cmd->add_option("--n", n_list, "n values; uses the smallest odd q with q*2^n+1 prime")
        ->delimiter(',');
    bench_cmd->add_option("--primes", prime_strs, "explicit prime moduli")->delimiter(',');
    bench_cmd->add_option("--q-max", q_max, "largest odd q tried per n");
    bench_cmd->add_option("--samples", samples, "samples per prime");
    bench_cmd->add_option("--seed", seed, "sweep seed");
    bench_cmd->add_option("--algos", algo_names, "subset of v1,v2,v3")->delimiter(',');
    bench_cmd->add_option("--config", config_path, "JSON config file")
        ->excludes("--n", "--primes", "--q-max", "--samples", "--seed", "--algos");
    bench_cmd->add_option("--out", out_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (sqrt_cmd->parsed()) {
            return cmd_sqrt(p_str, a_str, algo, mode, canonical, stats);
        }
        if (check_cmd->parsed()) {
            return cmd_check(p_str, a_str, x_str);
        }
        modsqrt::bench::BenchConfig cfg;
        if (!config_path.empty()) {
            cfg = config_from_json(config_path);
        } else {
            cfg.n_list = n_list;
            cfg.q_max = q_max;
            cfg.samples_per_prime = samples;
            cfg.seed = seed;
            for (const std::string& s : prime_strs) {
                cfg.primes.push_back(require_u64(s, "--primes"));
            }
            if (!algo_names.empty()) {
                cfg.algorithms.clear();
                for (const std::string& name : algo_names) {
                    const auto algo_value = modsqrt::bench::algorithm_from_string(name);
                    if (!algo_value) {
                        throw modsqrt::ConfigError("--algos: unknown algorithm '" + name + "'");
                    }
                    cfg.algorithms.push_back(*algo_value);
                }
            }
        }
        if (cfg.primes.empty() && cfg.n_list.empty()) {
            throw modsqrt::ConfigError("bench needs --n, --primes or --config");
        }
        return cmd_bench(cfg, out_path);
    } catch (const modsqrt::NotAResidue& e) {
        std::cerr << e.what() << '\n';
        return kExitNotAResidue;
    } catch (const modsqrt::CompositeModulus& e) {
        std::cerr << e.what() << '\n';
        return kExitComposite;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitBadInput;
    }
}
