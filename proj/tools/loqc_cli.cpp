// Command-line front end: gate runs, full analyzer reports, network
// search, and triangular decomposition. Output is key=value records;
// exit status is 0 only when the invoked command's invariants hold.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "loqc/loqc.hpp"

using namespace loqc;

namespace {

Backend parse_backend(const std::string& name, int n) {
    if (name == "ideal") return Backend::make_ideal();
    if (name == "basic") return Backend::make_basic();
    if (name == "teleported") return Backend::make_teleported(n);
    throw CLI::ValidationError("--backend", "expected ideal, basic, or teleported");
}

// Input specs: `occ:n1,n2,...`, `bell:d:m:n`, `file:PATH`.
SparseState parse_input(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "occ") {
        Occupation occ;
        std::istringstream is(rest);
        std::string field;
        while (std::getline(is, field, ',')) occ.push_back(std::stoi(field));
        if (occ.empty()) throw CLI::ValidationError("--input", "occ: needs photon counts");
        return SparseState::basis(occ);
    }
    if (kind == "bell") {
        int d, m, n;
        char c1, c2;
        std::istringstream is(rest);
        if (!(is >> d >> c1 >> m >> c2 >> n) || c1 != ':' || c2 != ':')
            throw CLI::ValidationError("--input", "bell: expects bell:d:m:n");
        return bell_state(d, m, n);
    }
    if (kind == "file") {
        std::ifstream is(rest);
        if (!is) throw CLI::ValidationError("--input", "cannot open " + rest);
        return read_state(is);
    }
    throw CLI::ValidationError("--input", "expected occ:, bell:, or file:");
}

void print_kv(const std::string& key, const std::string& value) {
    std::cout << key << "=" << value << "\n";
}
void print_kv(const std::string& key, const char* value) { print_kv(key, std::string(value)); }
void print_kv(const std::string& key, double value) { print_kv(key, format_double(value)); }
void print_kv(const std::string& key, bool value) { print_kv(key, value ? "true" : "false"); }

// First line `dim=N`, then N rows of N entries, each entry `re im`.
Matrix read_unitary(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(is, header);
    int dim = 0;
    if (std::sscanf(header.c_str(), "dim=%d", &dim) != 1 || dim < 1)
        throw std::runtime_error("bad unitary header: " + header);
    Matrix u(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            double re, im;
            if (!(is >> re >> im)) throw std::runtime_error("truncated unitary file");
            u(r, c) = cplx(re, im);
        }
    return u;
}

struct GateOptions {
    std::string name;
    std::string backend_name = "basic";
    int n = 1;
    int d = 2;
    std::string input_spec;
    std::uint64_t sample_trials = 0;  // 0 = exact only
    std::uint64_t seed = 0;
    std::string dump_state_path;
};

int run_gate(const GateOptions& opt) {
    Backend backend = parse_backend(opt.backend_name, opt.n);
    std::string spec = opt.input_spec;
    if (spec.empty()) {
        if (opt.name == "ns") spec = "occ:2";
        else if (opt.name == "csign") spec = "occ:1,1";
        else if (opt.name == "cswap") spec = "occ:1,1,0";
    }

    ConditionalResult result;
    if (opt.name == "cshift") {
        QuditRegister control(opt.d, 0), target(opt.d, opt.d);
        SparseState input = spec.empty()
                                ? tensor(logical_state(opt.d, 1), logical_state(opt.d, 0))
                                : parse_input(spec);
        result = apply_cshift(input, control, target, backend);
    } else {
        SparseState input = parse_input(spec);
        if (opt.name == "ns")
            result = apply_ns(input, 0);
        else if (opt.name == "csign")
            result = csign(input, 0, 1, backend);
        else
            result = cswap(input, 0, 1, 2, backend);
    }

    print_kv("command", "gate");
    print_kv("gate", opt.name);
    if (opt.name != "ns") print_kv("backend", backend.name());
    if (opt.name == "cshift") print_kv("d", std::to_string(opt.d));
    print_kv("branch_count", std::to_string(result.branches.size()));
    print_kv("success_probability", result.success_probability());
    print_kv("total_probability", result.total_probability());

    if (opt.sample_trials > 0) {
        // Draw trials from the branch law with per-trial substreams.
        std::vector<double> cum;
        double acc = 0;
        for (const auto& b : result.branches) cum.push_back(acc += b.probability);
        std::uint64_t successes = 0;
        for (std::uint64_t t = 0; t < opt.sample_trials; ++t) {
            double u = detail::substream_uniform(opt.seed, t) * acc;
            size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
            if (i < result.branches.size() && result.branches[i].success) ++successes;
        }
        print_kv("trials", std::to_string(opt.sample_trials));
        print_kv("seed", std::to_string(opt.seed));
        print_kv("success_count", std::to_string(successes));
        print_kv("success_frequency",
                 static_cast<double>(successes) / static_cast<double>(opt.sample_trials));
    }

    if (!opt.dump_state_path.empty()) {
        std::ofstream os(opt.dump_state_path);
        if (!os) throw std::runtime_error("cannot write " + opt.dump_state_path);
        write_state(os, result.success_state());
        print_kv("dumped_state", opt.dump_state_path);
    }

    bool probability_conserved = std::abs(result.total_probability() - 1.0) < 1e-9;
    bool success_normalized = result.success_probability() <= 0 ||
                              std::abs(result.success_state().norm() - 1.0) < 1e-9;
    print_kv("invariants_ok", probability_conserved && success_normalized);
    return probability_conserved && success_normalized ? 0 : 1;
}

int run_analyze(int d, int parties, const std::string& backend_name, int n, bool searched,
                const std::string& report_path) {
    AnalyzerConfig cfg{.d = d, .parties = parties, .backend = parse_backend(backend_name, n),
                       .searched_network = searched};
    AnalyzerReport report = analyze_all(cfg);

    bool rows_ok = true;
    for (const auto& row : report.rows) {
        double conditional_sum = row.invalid_probability;
        for (const auto& [label, p] : row.decoded) conditional_sum += p;
        rows_ok = rows_ok && std::abs(conditional_sum - 1.0) < 1e-9 &&
                  std::abs(row.total_probability - 1.0) < 1e-9;
    }
    bool invariants = rows_ok && report.max_success_deviation < 1e-9;

    if (!report_path.empty()) {
        std::ofstream os(report_path);
        if (!os) throw std::runtime_error("cannot write " + report_path);
        write_report(os, report);
        print_kv("command", "analyze");
        print_kv("report", report_path);
        print_kv("labels", std::to_string(report.rows.size()));
        print_kv("theoretical_success", report.theoretical_success);
        print_kv("max_confusion", report.max_confusion);
        print_kv("max_success_deviation", report.max_success_deviation);
    } else {
        write_report(std::cout, report);
    }
    print_kv("invariants_ok", invariants);
    return invariants ? 0 : 1;
}

int run_network_search(int d, int max_swaps) {
    auto found = search_minimal_network(d, max_swaps);
    print_kv("command", "network-search");
    print_kv("d", std::to_string(d));
    print_kv("max_swaps", std::to_string(max_swaps));
    print_kv("found", found.has_value());
    bool invariants = true;
    if (found) {
        print_kv("swaps", std::to_string(found->size()));
        invariants = network_matches_cshift(*found, d);
        print_kv("verified", invariants);
        write_network(std::cout, *found);
    }
    return invariants ? 0 : 1;
}

int run_decompose(const std::string& unitary_path) {
    Matrix u = read_unitary(unitary_path);
    auto elements = reck_decompose(u);
    double error = u.max_abs_diff(recompose(elements, u.rows()));
    int splitters = 0;
    for (const auto& e : elements)
        if (e.kind == ElementaryElement::beam_splitter) ++splitters;
    print_kv("command", "decompose");
    print_kv("dim", std::to_string(u.rows()));
    print_kv("elements", std::to_string(elements.size()));
    print_kv("splitters", std::to_string(splitters));
    print_kv("recompose_error", error);
    bool invariants = error < 1e-10 && splitters <= u.rows() * (u.rows() - 1) / 2;
    print_kv("invariants_ok", invariants);
    write_netlist(std::cout, elements);
    return invariants ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear-optics qudit gate and Bell-analyzer toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Plain key=value config file");

    GateOptions gate_opt;
    auto* gate = app.add_subcommand("gate", "Run a single gate on an input state");
    gate->require_subcommand(1);
    for (const char* name : {"ns", "csign", "cswap", "cshift"}) {
        auto* sub = gate->add_subcommand(name);
        sub->callback([&gate_opt, name] { gate_opt.name = name; });
        if (std::string(name) != "ns") {
            sub->add_option("--backend", gate_opt.backend_name, "ideal, basic, or teleported");
            sub->add_option("--n", gate_opt.n, "Teleported-backend ancilla size");
        }
        if (std::string(name) == "cshift") sub->add_option("--d", gate_opt.d, "Qudit dimension");
        sub->add_option("--input", gate_opt.input_spec, "occ:..., bell:d:m:n, or file:PATH");
        sub->add_option("--sample", gate_opt.sample_trials, "Monte Carlo trials (default exact)");
        sub->add_option("--seed", gate_opt.seed, "Sampling seed");
        sub->add_option("--dump-state", gate_opt.dump_state_path, "Write the success state here");
    }

    int an_d = 2, an_parties = 2, an_n = 1;
    std::string an_backend = "basic", an_report;
    bool an_searched = false;
    auto* analyze = app.add_subcommand("analyze", "Exact Bell-analyzer report over all labels");
    analyze->add_option("--d", an_d, "Qudit dimension")->required();
    analyze->add_option("--parties", an_parties, "Number of qudits");
    analyze->add_option("--backend", an_backend, "ideal, basic, or teleported");
    analyze->add_option("--n", an_n, "Teleported-backend ancilla size");
    analyze->add_flag("--searched", an_searched, "Use the exhaustively searched network");
    analyze->add_option("--report", an_report, "Write the full report to this file");

    int ns_d = 2, ns_max = 4;
    auto* network = app.add_subcommand("network", "Swap-network utilities");
    auto* search = network->add_subcommand("search", "Find a minimal C-SHIFT network");
    search->add_option("--d", ns_d, "Qudit dimension")->required();
    search->add_option("--max-swaps", ns_max, "Search depth cap");

    std::string unitary_path;
    auto* decompose = app.add_subcommand("decompose", "Triangular mesh for a unitary");
    decompose->add_option("--unitary", unitary_path, "Unitary file (dim=N header)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gate->parsed()) return run_gate(gate_opt);
        if (analyze->parsed())
            return run_analyze(an_d, an_parties, an_backend, an_n, an_searched, an_report);
        if (network->parsed()) return run_network_search(ns_d, ns_max);
        if (decompose->parsed()) return run_decompose(unitary_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
