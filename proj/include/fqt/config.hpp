#pragma once

#include <cstdint>
#include <string>

#include "fqt/cumulants.hpp"
#include "fqt/optimizer.hpp"

#define FQT_VERSION "1.0.0"

// Run configuration: one structured JSON file per run, CLI flags override
// file keys (documented in the README).

namespace fqt {

struct ProtocolSpec {
    std::string kind{"unmodulated"};  // unmodulated | sinusoidal | pi-flip | crab
    double lambda{0.8};
    std::string crab_file;            // waveform JSON for kind = crab
};

struct GridSpec {
    double start{0.0};
    double stop{0.0};
    int steps{0};
};

struct OutputSpec {
    std::string csv;
    std::string json;
    std::string svg;
    std::string trace_csv;    // optimizer evaluation log
    std::string summary_csv;  // optimizer per-grid-point summary
};

struct RunConfig {
    std::string mode;  // sweep-tb | sweep-nu | optimize-beta | optimize-fano | validate
    SystemParams params;
    ProtocolSpec protocol;
    double nu{0.0};  // fixed modulation frequency for sweep-tb / optimize-beta
    GridSpec grid;
    OutputSpec output;
    std::uint64_t seed{1};
    int threads{0};  // 0: FQT_THREADS env, then hardware concurrency
    DerivativeOptions derivatives;
    double beta_probe{1e-3};
    CrabConfig crab;
    bool dump_matrix{false};   // validate mode: emit the generator as JSON
    CountingField chi;         // counting field for --dump-matrix
    std::string dump_builder{"full"};  // full | low-t
};

// Throws std::invalid_argument (usage error) on malformed input.
RunConfig load_config(const std::string& path);
CrabWaveform load_waveform(const std::string& path);

int resolve_threads(const RunConfig& cfg);

}  // namespace fqt
