// cylpos: decide, synthesize and inspect boundary measurement matrices of
// cylinder networks of rank 2 and 3.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cylpos/colops.hpp"
#include "cylpos/errors.hpp"
#include "cylpos/exactmat.hpp"
#include "cylpos/network.hpp"
#include "cylpos/oracle.hpp"
#include "cylpos/synth.hpp"
#include "cylpos/text_io.hpp"

using namespace cylpos;

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kInputError = 2;

constexpr std::size_t kMaxOracleCols = 6;
constexpr long kMaxOracleEntry = 3;

Matrix load_matrix(const std::string& path) {
    Matrix m = parse_matrix(read_file(path));
    if (m.rows() != 2 && m.rows() != 3)
        throw InputError("unsupported rank class: " + std::to_string(m.rows()) + " rows (need 2 or 3)");
    return m;
}

void print_conditions(const Matrix& m) {
    std::cout << "rank " << rank(m) << '\n';
    if (m.rows() == 2) {
        std::cout << "cvar " << cvar_matrix(m) << '\n';
    } else if (m.cols() >= 3) {
        const MinorExtreme e = min_maximal_minor_3(m);
        std::cout << "min-minor " << e.value << " cols=";
        for (std::size_t k = 0; k < e.cols.size(); ++k) std::cout << (k ? "," : "") << e.cols[k] + 1;
        std::cout << '\n';
    }
}

int cmd_check(const std::string& path) {
    const Matrix m = load_matrix(path);
    const Verdict v = decide(m);
    std::cout << (v.accepted() ? std::string("ACCEPT") : "REJECT " + v.witness->str()) << '\n';
    print_conditions(m);
    return v.accepted() ? kOk : kReject;
}

int cmd_synthesize(const std::string& path, const std::string& cert_path, const std::string& net_path) {
    const Matrix m = load_matrix(path);
    const Verdict v = decide(m);
    if (!v.accepted()) {
        std::cout << "REJECT " << v.witness->str() << '\n';
        return kReject;
    }
    const Certificate& c = *v.certificate;
    if (!verify_certificate(c, m)) throw InternalError("synthesized certificate does not reproduce the input");
    std::cout << "ACCEPT\n" << format_certificate(c);
    if (!cert_path.empty()) write_file(cert_path, format_certificate(c));
    if (!net_path.empty()) {
        CylNetwork n;
        try {
            n = to_network(c);
        } catch (const InputError& e) {
            std::cout << "NO-NETWORK " << e.what() << '\n';
            return kReject;
        }
        write_file(net_path, format_network(n));
    }
    return kOk;
}

CylNetwork load_network(const std::string& path) {
    CylNetwork n = parse_network(read_file(path));
    require_valid(n);
    return n;
}

int cmd_measure(const std::string& path) {
    std::cout << format_matrix(boundary_measurements(load_network(path)));
    return kOk;
}

int cmd_slice(const std::string& path, const std::string& t_text) {
    const CylNetwork n = load_network(path);
    Rational t;
    try {
        t = Rational::parse(t_text);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--t: ") + e.what());
    }
    const SliceResult s = slice(n, t);
    std::cout << format_network(s.network);
    std::cout << "# cut edges (1-based, in new sink order):";
    for (auto e : s.cut_edges) std::cout << ' ' << e + 1;
    std::cout << "\n# measurement\n" << format_matrix(boundary_measurements(s.network));
    return kOk;
}

int cmd_verify(const std::string& matrix_path, const std::string& cert_path) {
    const Matrix m = parse_matrix(read_file(matrix_path));
    const Certificate c = parse_certificate(read_file(cert_path));
    if (auto why = explain_mismatch(c, m)) {
        std::cout << "MISMATCH " << why->reason << '\n';
        return kReject;
    }
    std::cout << "OK\n";
    return kOk;
}

int cmd_gen(std::size_t rows, std::size_t ops, std::uint64_t seed, const std::string& matrix_path,
            const std::string& cert_path, const std::string& net_path, bool check) {
    if (rows != 2 && rows != 3) throw InputError("--rows must be 2 or 3");
    const Certificate c = random_certificate(rows, ops, seed);
    const Matrix m = apply_certificate(c);
    if (!cert_path.empty()) write_file(cert_path, format_certificate(c));
    if (!matrix_path.empty()) write_file(matrix_path, format_matrix(m));
    std::optional<CylNetwork> n;
    if (!net_path.empty() || check) {
        try {
            n = to_network(c);
        } catch (const InputError& e) {
            std::cout << "NO-NETWORK " << e.what() << '\n';
        }
    }
    if (n && !net_path.empty()) write_file(net_path, format_network(*n));
    if (cert_path.empty()) std::cout << format_certificate(c);
    if (matrix_path.empty()) std::cout << format_matrix(m);
    if (check && n) {
        const Matrix measured = boundary_measurements(*n);
        if (!(measured == m)) {
            std::cout << "CHECK-FAILED network measures " << measured.str() << '\n';
            return kReject;
        }
        std::cout << "CHECK-OK\n";
    }
    return kOk;
}

int cmd_oracle(std::size_t rows, std::size_t cols_max, long max_entry, unsigned jobs, bool literal, bool mutant,
               bool no_networks) {
    if (rows != 2 && rows != 3) throw InputError("--rows must be 2 or 3");
    if (cols_max < rows || cols_max > kMaxOracleCols)
        throw InputError("--cols-max must lie in [rows, " + std::to_string(kMaxOracleCols) + "]");
    if (max_entry < 0 || max_entry > kMaxOracleEntry)
        throw InputError("--max-entry must lie in [0, " + std::to_string(kMaxOracleEntry) + "]");
    EnumSpec spec;
    spec.m = rows;
    spec.n_max = cols_max;
    spec.alphabet.clear();
    for (long v = 0; v <= max_entry; ++v) spec.alphabet.push_back(v);
    CheckOptions opt;
    opt.condition = literal ? Condition::kLiteral : Condition::kConstructible;
    opt.mutant = mutant;
    opt.jobs = jobs;
    opt.check_networks = !no_networks;
    const TrialReport r = cross_check_theorem(spec, opt);
    std::cout << r.str();
    return r.discrepancies.empty() ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary measurement matrices of cylinder networks (rank 2 and 3)"};
    app.require_subcommand(1);

    std::string matrix_path, cert_path, net_path, network_path, t_text, emit_cert, emit_net, emit_matrix;

    auto* check = app.add_subcommand("check", "Decide a matrix file");
    check->add_option("matrix", matrix_path, "Matrix file")->required();

    auto* synth = app.add_subcommand("synthesize", "Decide and emit a certificate");
    synth->add_option("matrix", matrix_path, "Matrix file")->required();
    synth->add_option("--emit-cert", emit_cert, "Write the certificate here");
    synth->add_option("--emit-network", emit_net, "Write the compiled network here");

    auto* measure = app.add_subcommand("measure", "Boundary measurement matrix of a network file");
    measure->add_option("network", network_path, "Network file")->required();

    auto* slice_cmd = app.add_subcommand("slice", "Subnetwork up to layer t");
    slice_cmd->add_option("network", network_path, "Network file")->required();
    slice_cmd->add_option("--t", t_text, "Layer p/q in (0,1)")->required();

    auto* verify = app.add_subcommand("verify", "Check a certificate against a matrix");
    verify->add_option("matrix", matrix_path, "Matrix file")->required();
    verify->add_option("certificate", cert_path, "Certificate file")->required();

    std::size_t rows = 2, ops = 0, cols_max = 5;
    std::uint64_t seed = 1;
    long max_entry = 3;
    unsigned jobs = 1;
    bool gen_check = false, literal = false, mutant = false, no_networks = false;

    auto* gen = app.add_subcommand("gen", "Random certificate, its matrix, and its network");
    gen->add_option("--rows", rows, "Row count (2 or 3)")->required();
    gen->add_option("--ops", ops, "Number of operations")->required();
    gen->add_option("--seed", seed, "Seed")->required();
    gen->add_option("--emit-matrix", emit_matrix, "Write the matrix here");
    gen->add_option("--emit-cert", emit_cert, "Write the certificate here");
    gen->add_option("--emit-network", emit_net, "Write the compiled network here");
    gen->add_flag("--check", gen_check, "Compile and measure the network, compare with the matrix");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive cross-check of the characterization");
    oracle->add_option("--rows", rows, "Row count (2 or 3)")->required();
    oracle->add_option("--cols-max", cols_max, "Largest column count (default 5)");
    oracle->add_option("--max-entry", max_entry, "Entries range over 0..k (default 3)");
    oracle->add_option("--jobs", jobs, "Worker threads");
    oracle->add_flag("--literal", literal, "m=2: compare with cvar(M) = 2 without deleting zero columns");
    oracle->add_flag("--mutant", mutant, "Flip one sign check in the reference condition");
    oracle->add_flag("--no-networks", no_networks, "Skip compiling accepted certificates to networks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*check) return cmd_check(matrix_path);
        if (*synth) return cmd_synthesize(matrix_path, emit_cert, emit_net);
        if (*measure) return cmd_measure(network_path);
        if (*slice_cmd) return cmd_slice(network_path, t_text);
        if (*verify) return cmd_verify(matrix_path, cert_path);
        if (*gen) return cmd_gen(rows, ops, seed, emit_matrix, emit_cert, emit_net, gen_check);
        if (*oracle) return cmd_oracle(rows, cols_max, max_entry, jobs, literal, mutant, no_networks);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return kInputError;
}
