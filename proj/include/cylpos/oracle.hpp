#ifndef CYLPOS_ORACLE_HPP
#define CYLPOS_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cylpos/colops.hpp"
#include "cylpos/matrix.hpp"
#include "cylpos/network.hpp"
#include "cylpos/synth.hpp"

namespace cylpos {

/// Per-item generator: mt19937_64 seeded from (seed, index) through
/// std::seed_seq, so item k is the same however the work is split.
std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index);

enum class EnumFilter { kNone, kFullRank, kNoZeroColumn };

struct EnumSpec {
    std::size_t m = 2;
    std::size_t n_max = 2;
    std::vector<long> alphabet{0, 1};
    EnumFilter filter = EnumFilter::kNone;
};

/// Number of candidate matrices before filtering: Σ_{n=m}^{n_max} |A|^{mn}.
std::uint64_t enumeration_size(const EnumSpec& spec);

/// Candidate number `index` in odometer order: n ascending, then the
/// row-major entry string read as a base-|A| number with the last entry
/// varying fastest.
Matrix enumerated_matrix(const EnumSpec& spec, std::uint64_t index);

bool passes_filter(const EnumSpec& spec, const Matrix& m);

/// Calls `visit` on every matrix of the spec that passes its filter.
void enumerate_matrices(const EnumSpec& spec, const std::function<void(const Matrix&)>& visit);

/// Random m×n matrices, n uniform in [n_min, n_max], entries uniform in
/// [0, max_entry].
struct SampleSpec {
    std::size_t m = 3;
    std::size_t n_min = 3;
    std::size_t n_max = 6;
    long max_entry = 3;
    std::uint64_t count = 0;
    std::uint64_t seed = 1;
};

Matrix sampled_matrix(const SampleSpec& spec, std::uint64_t index);

/// Valid ops only; rescale factors p/q with p, q ∈ {1..9}.
Certificate random_certificate(std::size_t m, std::size_t length, std::uint64_t seed);

struct NetworkSpec {
    std::size_t sources = 2;
    std::size_t sinks = 2;
    std::size_t interior = 4;
    std::size_t extra_edges = 3;
};

/// Random valid layered network without geometry; weights p/q, p, q ∈ {1..9}.
CylNetwork random_network(const NetworkSpec& spec, std::uint64_t seed);

/// CYLPOS_PATH_BOUND if set to a positive integer, else 10^6.
std::uint64_t default_path_bound();

/// Walks every source-to-sink path explicitly. Nothing if more than
/// `bound` paths exist.
std::optional<Matrix> brute_force_paths(const CylNetwork& n, std::uint64_t bound = default_path_bound());

enum class Condition {
    /// m = 2: nonnegative, rank 2, cvar 2 after deleting zero columns.
    kConstructible,
    /// m = 2: nonnegative, rank 2, cvar(M) = 2 as stated, zero columns kept.
    kLiteral,
};

/// Closed-form condition from naive Laplace determinants and the
/// definitional cyclic sign variation; shares no code with exactmat.
/// `mutant` flips one sign check, for smoke-testing the harness.
bool independent_condition(const Matrix& m, Condition condition, bool mutant = false);

struct CheckOptions {
    Condition condition = Condition::kConstructible;
    bool mutant = false;
    bool check_networks = true;
    unsigned jobs = 1;
};

struct Discrepancy {
    std::uint64_t index = 0;
    Matrix input;
    std::string expected;
    std::string got;
};

struct TrialReport {
    std::string label;
    std::uint64_t seed = 0;
    std::uint64_t total = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::map<std::string, std::uint64_t> rejected_by;
    std::uint64_t certificates_verified = 0;
    std::uint64_t networks_checked = 0;
    std::uint64_t networks_skipped_zero_column = 0;
    std::uint64_t witnesses_checked = 0;
    /// m = 2: rank-2 nonnegative inputs with cvar(M) = 0 taken literally.
    std::uint64_t literal_cvar_zero = 0;
    std::uint64_t removals = 0;
    std::uint64_t removal_violations = 0;
    std::uint64_t subtractions = 0;
    std::uint64_t dichotomy_violations = 0;
    std::uint64_t potential_violations = 0;
    std::vector<Discrepancy> discrepancies;

    void merge(const TrialReport& other);
    std::string str() const;
};

/// Replays `log` forward with apply_step, counting removals, subtractions
/// and violations of the subtraction dichotomy and of the (n, −#zeros)
/// decrease between successive subtractions. Adds to `report`.
void audit_reduction(const ReductionLog& log, TrialReport& report);

/// Runs decide on every item and compares with independent_condition;
/// accepted items also get their certificate re-applied and compiled to a
/// network. Items are split into contiguous blocks across `jobs` threads and
/// merged in order, so the report does not depend on `jobs`.
TrialReport cross_check_theorem(const EnumSpec& spec, const CheckOptions& options);
TrialReport cross_check_sampled(const SampleSpec& spec, const CheckOptions& options);

/// One matrix inline: "2 3; 1 0 1; 0 1 1".
std::string inline_matrix(const Matrix& m);

}  // namespace cylpos

#endif  // CYLPOS_ORACLE_HPP
