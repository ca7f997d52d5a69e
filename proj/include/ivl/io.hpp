// Run configuration, CSV output and the binary caches.
//
// Config files are flat key=value text with a versioned first line; unknown
// keys are errors so runs cannot drift silently. The caches carry magic
// bytes ("IVLK1" kernel/profile, "IVLW1" witnesses), little-endian u32
// section lengths and a trailing CRC32; any corruption is detected and the
// loader reports a miss instead of wrong data.

#pragma once

#include "ivl/classify.hpp"
#include "ivl/spanning.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ivl {

struct RunConfig {
    std::string example = "A1";
    std::vector<Rat> epsilons{Rat(1, 10)};
    std::vector<Rat> delta_ladder;  // empty: library default
    Rat grid_step = Rat(1, 512);
    std::size_t n_max = 16;
    std::size_t horizon = 64;
    std::size_t burn_in = 64;
    std::size_t window = 64;
    std::size_t density_horizon = 512;
    Rat delta0 = Rat(1, 256);
    std::size_t refute_horizon = 16;
    std::string mode = "plain";  // plain | mean | limsup
    std::vector<std::string> notions{"EI"};
    std::string out_dir = ".";
    unsigned jobs = 1;
    unsigned long seed = 1;
    std::size_t exact_threshold = 10000;
    std::size_t block_depth = 8;
    std::size_t splice_max = 12;
};

std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// CRC32 of the canonical serialization; keys span runs reproducibly.
std::string config_hash(const RunConfig& cfg);

// RFC 4180: quote fields containing commas, quotes or newlines.
std::string csv_field(const std::string& raw);
std::string csv_row(const std::vector<std::string>& fields);

std::string scalar_csv(const Scalar& s);  // "p/q" exact, "mid±err" approximate

// ---- binary caches --------------------------------------------------------

struct SpanCache {
    std::string config_hash;
    KernelTable table;
    ComplexityProfile profile;
};

void save_span_cache(const std::string& path, const SpanCache& cache);
std::optional<SpanCache> load_span_cache(const std::string& path);

struct WitnessFile {
    std::vector<VerdictRecord> records;
    std::vector<std::pair<std::string, Certificate>> certificates;  // label -> cert
    std::vector<std::pair<std::string, Refutation>> refutations;    // label -> ref
};

void save_witness_file(const std::string& path, const WitnessFile& wf);
std::optional<WitnessFile> load_witness_file(const std::string& path);

}  // namespace ivl
