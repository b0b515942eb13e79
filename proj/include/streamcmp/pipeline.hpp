#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamcmp/centrality.hpp"
#include "streamcmp/config.hpp"
#include "streamcmp/corpus.hpp"
#include "streamcmp/network.hpp"
#include "streamcmp/report.hpp"
#include "streamcmp/simulator.hpp"

namespace streamcmp {

/// Bad or missing input data (as opposed to bad usage).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CompareOptions {
    std::vector<std::string> inputs;
    std::vector<std::string> labels;  // defaults to input file stems
    std::filesystem::path out_dir;
    std::size_t top_k = 1000;
    std::uint64_t louvain_seed = 42;
    std::vector<std::string> langs;     // empty = keep all
    std::vector<std::string> keywords;  // empty = keep all
    MatchScope scope = MatchScope::text_fields;
    Seconds bin = Seconds{15 * 60};
    BuildOptions build;
    CentralityOptions centrality;
};

/// Reads the `compare` keys of a flat config. Unknown keys are fatal.
CompareOptions compare_options_from_config(const KeyValueConfig& config);

/// Config snapshot of the options, as recorded in report metadata.
std::map<std::string, std::string> describe(const CompareOptions& options);

/// Applies the language and keyword filters of `options`.
Corpus prepare_corpus(const Corpus& corpus, const CompareOptions& options);

/// Steps 2 to 5 for every corpus pair, in memory. Corpora are used as given
/// (no filtering).
ComparisonReport build_report(const std::vector<Corpus>& corpora, const CompareOptions& options,
                              const std::vector<std::string>& inputs = {});

/// Ingests, filters, compares and writes the report files.
ComparisonReport run_compare(const CompareOptions& options);

struct SimulateResult {
    std::vector<std::filesystem::path> files;  // truth, one per collector, manifest
    std::vector<std::string> warnings;
};

/// Writes truth.plx, <collector>.plx (raw emission, duplicates kept) and
/// manifest.conf.
SimulateResult run_simulate(const Scenario& scenario, const std::filesystem::path& out_dir);

}  // namespace streamcmp
