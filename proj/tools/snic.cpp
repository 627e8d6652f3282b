// snic: secure network / index coding toolkit.
//
// Exit codes: 0 success, 1 failed check or disagreement, 2 malformed or
// mismatched input, 3 budget exceeded.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "snic/errors.hpp"
#include "snic/io.hpp"
#include "snic/kernels.hpp"
#include "snic/search.hpp"
#include "snic/transform.hpp"
#include "snic/translate.hpp"
#include "snic/verify.hpp"

namespace fs = std::filesystem;
using namespace snic;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kMalformed = 2;
constexpr int kBudget = 3;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

fs::path sibling(const fs::path& out, const std::string& suffix) {
    fs::path p = out;
    return p.replace_extension(suffix);
}

void emit_to(const fs::path& path, const std::string& text, const std::string& what) {
    io::write_file(path, text);
    std::cout << "wrote " << what << " " << path.string() << "\n";
}

std::string witness_text(const std::vector<Assignment>& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ", ";
        out += w[i].name + "=" + std::to_string(w[i].value);
    }
    return out;
}

std::vector<std::string> split_names(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& file, bool dot) {
    const std::string text = io::read_file(file);
    const auto kind = io::peek_kind(text);
    ValidationReport report;
    if (kind == io::DocumentKind::network_instance) {
        auto inst = io::parse_network_instance(text);
        report = validate_network(inst);
        if (dot) std::cout << io::to_dot(inst);
    } else if (kind == io::DocumentKind::index_instance) {
        report = validate_index(io::parse_index_instance(text));
    } else {
        throw FormatError("validate expects a network-instance or index-instance document");
    }
    if (report.ok()) {
        std::cout << "valid " << io::to_string(kind) << "\n";
        return kOk;
    }
    std::cout << report.to_string() << "\n";
    return kFailed;
}

int cmd_i2n(const std::string& file, const fs::path& out, std::optional<fs::path> mapping_out) {
    const auto [net, mapping] = index_to_network(io::parse_index_instance(io::read_file(file)));
    emit_to(out, io::emit(net), "network instance");
    emit_to(mapping_out.value_or(sibling(out, ".mapping.json")), io::emit(mapping), "mapping");
    return kOk;
}

int cmd_augment(const std::string& file, const fs::path& out, std::optional<fs::path> record_out,
                std::optional<std::string> code_in, std::optional<fs::path> code_out) {
    const auto inst = io::parse_network_instance(io::read_file(file));
    const auto [aug, record] = augment(inst);
    emit_to(out, io::emit(aug), "augmented instance");
    emit_to(record_out.value_or(sibling(out, ".record.json")), io::emit(record), "augmentation record");
    if (code_in) {
        const auto code = randomized_to_augmented(inst, io::parse_network_code(io::read_file(*code_in)));
        emit_to(code_out.value_or(sibling(out, ".code.json")), io::emit(code), "deterministic code");
    }
    return kOk;
}

int cmd_n2i(const std::string& file, const fs::path& out, bool no_augment, std::optional<fs::path> mapping_out,
            std::optional<fs::path> augmented_out) {
    auto inst = io::parse_network_instance(io::read_file(file));
    if (!no_augment) {
        inst = augment(inst).first;
        emit_to(augmented_out.value_or(sibling(out, ".augmented.json")), io::emit(inst), "augmented instance");
    }
    const auto [index, mapping] = network_to_index(inst);
    emit_to(out, io::emit(index), "index instance");
    emit_to(mapping_out.value_or(sibling(out, ".mapping.json")), io::emit(mapping), "mapping");
    return kOk;
}

int cmd_translate(int theorem, const std::string& direction, const std::string& instance_file,
                  const std::string& mapping_file, const std::string& code_file, const fs::path& out,
                  std::optional<Symbol> sigma) {
    const std::string inst_text = io::read_file(instance_file);
    const std::string map_text = io::read_file(mapping_file);
    const std::string code_text = io::read_file(code_file);
    if (theorem == 1) {
        const auto index = io::parse_index_instance(inst_text);
        const auto mapping = io::parse_index_to_network_mapping(map_text);
        if (direction == "i2n")
            emit_to(out, io::emit(t1_index_code_to_network_code(index, mapping, io::parse_index_code(code_text))),
                    "network code");
        else
            emit_to(out, io::emit(t1_network_code_to_index_code(index, mapping, io::parse_network_code(code_text))),
                    "index code");
    } else {
        const auto net = io::parse_network_instance(inst_text);
        const auto mapping = io::parse_network_to_index_mapping(map_text);
        if (direction == "n2i")
            emit_to(out, io::emit(t2_network_code_to_index_code(net, mapping, io::parse_network_code(code_text))),
                    "index code");
        else
            emit_to(out,
                    io::emit(t2_index_code_to_network_code(net, mapping, io::parse_index_code(code_text), sigma)),
                    "network code");
    }
    return kOk;
}

int cmd_verify(const std::string& instance_file, const std::string& code_file, std::vector<std::string> checks,
               std::uint64_t max_rows) {
    if (checks.empty()) checks = {"all"};
    auto wants = [&](const std::string& c) {
        return std::find(checks.begin(), checks.end(), c) != checks.end() ||
               std::find(checks.begin(), checks.end(), "all") != checks.end();
    };
    const std::string inst_text = io::read_file(instance_file);
    const std::string code_text = io::read_file(code_file);

    std::vector<std::pair<std::string, CheckResult>> results;
    if (io::peek_kind(inst_text) == io::DocumentKind::network_instance) {
        const auto inst = io::parse_network_instance(inst_text);
        require_valid(inst);
        const auto code = io::parse_network_code(code_text);
        if (wants("decode")) results.emplace_back("decodable", check_network_decodable(inst, code, max_rows));
        if (wants("secure")) results.emplace_back("secure", check_network_secure(inst, code, max_rows));
        if (wants("recover")) results.emplace_back("recoverable", check_source_recoverable(inst, code, max_rows));
    } else {
        const auto inst = io::parse_index_instance(inst_text);
        require_valid(inst);
        const auto code = io::parse_index_code(code_text);
        if (std::find(checks.begin(), checks.end(), "recover") != checks.end())
            throw FormatError("--check recover applies to network codes only");
        if (wants("decode")) results.emplace_back("decodable", check_index_decodable(inst, code, max_rows));
        if (wants("secure")) results.emplace_back("secure", check_index_secure(inst, code, max_rows));
    }

    bool all = true;
    std::string line;
    for (const auto& [name, r] : results) {
        if (!line.empty()) line += ", ";
        line += name + ": " + yes_no(r.passed);
        all = all && r.passed;
    }
    std::cout << line << "\n";
    for (const auto& [name, r] : results) {
        if (r.passed) continue;
        std::cout << "  " << name << " fails at " << r.culprit;
        if (!r.witness.empty()) std::cout << " (witness " << witness_text(r.witness) << ")";
        std::cout << "\n";
    }
    return all ? kOk : kFailed;
}

std::map<std::string, Alphabet> parse_key_sizes(const std::vector<std::string>& specs) {
    std::map<std::string, Alphabet> keys;
    for (const auto& s : specs) {
        const auto eq = s.rfind('=');
        if (eq == std::string::npos || eq == 0) throw FormatError("--key-size expects node=K, got " + s);
        try {
            keys[s.substr(0, eq)] = Alphabet{std::stoull(s.substr(eq + 1))};
        } catch (const std::logic_error&) {
            throw FormatError("--key-size expects node=K, got " + s);
        }
    }
    return keys;
}

template <class Result>
int report_search(const Result& res, const std::optional<fs::path>& out) {
    std::cout << to_string(res.status) << " (" << res.candidates << " candidates)\n";
    if (res.feasible() && out) emit_to(*out, io::emit(*res.code), "witness");
    return res.status == SearchStatus::budget_exceeded ? kBudget : kOk;
}

int cmd_search(const std::string& instance_file, const std::vector<std::string>& key_specs, bool deterministic,
               const SearchBudget& budget, const SearchOptions& options, const std::optional<fs::path>& out) {
    const std::string text = io::read_file(instance_file);
    if (io::peek_kind(text) == io::DocumentKind::network_instance) {
        const auto inst = io::parse_network_instance(text);
        require_valid(inst);
        std::map<std::string, Alphabet> keys;
        if (!key_specs.empty())
            keys = parse_key_sizes(key_specs);
        else if (!deterministic)
            keys = augment(inst).second.key_alphabets;
        return report_search(search_network_codes(inst, keys, budget, options), out);
    }
    const auto inst = io::parse_index_instance(text);
    Alphabet key{1};
    if (key_specs.size() > 1) throw FormatError("index search takes a single --key-size K");
    if (!key_specs.empty()) {
        const std::string& s = key_specs.front();
        const std::string value = s.substr(s.rfind('=') == std::string::npos ? 0 : s.rfind('=') + 1);
        try {
            key = Alphabet{std::stoull(value)};
        } catch (const std::logic_error&) {
            throw FormatError("--key-size expects an integer, got " + s);
        }
    }
    return report_search(search_index_codes(inst, key, budget, options), out);
}

int cmd_equiv(const std::string& instance_file, const SearchBudget& budget, const EquivalenceOptions& options) {
    const auto inst = io::parse_index_instance(io::read_file(instance_file));
    const auto rep = feasibility_equivalence(inst, budget, options);
    std::cout << "index feasible: " << yes_no(rep.index_feasible)
              << ", network feasible: " << yes_no(rep.network_feasible) << ", agree: " << yes_no(rep.agree) << "\n";
    std::cout << "augmented index image: "
              << (rep.augmented_feasible ? (*rep.augmented_feasible ? "feasible" : "infeasible") : "unresolved") << " ("
              << rep.augmented_note << ")\n";
    return rep.agree ? kOk : kFailed;
}

int cmd_entropy(const std::string& instance_file, const std::string& code_file, const std::vector<std::string>& of,
                const std::vector<std::string>& given, std::uint64_t max_rows) {
    const std::string inst_text = io::read_file(instance_file);
    const std::string code_text = io::read_file(code_file);
    JointTable joint = [&] {
        if (io::peek_kind(inst_text) == io::DocumentKind::network_instance) {
            const auto inst = io::parse_network_instance(inst_text);
            require_valid(inst);
            return network_joint(inst, io::parse_network_code(code_text), max_rows);
        }
        const auto inst = io::parse_index_instance(inst_text);
        require_valid(inst);
        return index_joint(inst, io::parse_index_code(code_text), max_rows);
    }();
    const auto a = split_names(of);
    const auto b = split_names(given);
    const IdSet sa(a.begin(), a.end());
    const IdSet sb(b.begin(), b.end());
    const double h = conditional_entropy_bits(joint, sa, sb);
    auto join = [](const IdSet& s) {
        std::string out;
        for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
        return out;
    };
    std::cout << "H(" << join(sa) << (sb.empty() ? "" : " | " + join(sb)) << ") = " << std::fixed
              << std::setprecision(9) << h << " bits\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure network and index coding: mappings, code translations, verification, search"};
    app.require_subcommand(1);
    std::string backend;
    app.add_option("--kernels", backend, "Kernel backend: scalar or avx2 (default: best available)");

    SearchBudget budget;
    std::uint64_t max_rows = kDefaultJointBudget;

    // validate
    auto* validate = app.add_subcommand("validate", "Check an instance file against the model invariants");
    std::string validate_file;
    bool dot = false;
    validate->add_option("file", validate_file, "Instance document")->required();
    validate->add_flag("--dot", dot, "Also print the graph in Graphviz form (network instances)");

    // i2n
    auto* i2n = app.add_subcommand("i2n", "Map an index instance to a network instance");
    std::string i2n_file;
    fs::path i2n_out;
    std::optional<fs::path> i2n_mapping;
    i2n->add_option("file", i2n_file, "Index instance")->required();
    i2n->add_option("-o,--output", i2n_out, "Network instance output")->required();
    i2n->add_option("--mapping", i2n_mapping, "Mapping record output (default: <output>.mapping.json)");

    // augment
    auto* aug = app.add_subcommand("augment", "Turn node keys into explicit sources");
    std::string aug_file;
    fs::path aug_out;
    std::optional<fs::path> aug_record, aug_code_out;
    std::optional<std::string> aug_code;
    aug->add_option("file", aug_file, "Network instance")->required();
    aug->add_option("-o,--output", aug_out, "Augmented instance output")->required();
    aug->add_option("--record", aug_record, "Augmentation record output");
    aug->add_option("--code", aug_code, "Randomised code for the input instance to carry over");
    aug->add_option("--code-out", aug_code_out, "Output for the carried-over deterministic code");

    // n2i
    auto* n2i = app.add_subcommand("n2i", "Map a network instance (augmented first) to an index instance");
    std::string n2i_file;
    fs::path n2i_out;
    bool no_augment = false;
    std::optional<fs::path> n2i_mapping, n2i_augmented;
    n2i->add_option("file", n2i_file, "Network instance")->required();
    n2i->add_option("-o,--output", n2i_out, "Index instance output")->required();
    n2i->add_flag("--no-augment", no_augment, "Map the instance as given");
    n2i->add_option("--mapping", n2i_mapping, "Mapping record output");
    n2i->add_option("--augmented", n2i_augmented, "Augmented network instance output");

    // translate
    auto* tr = app.add_subcommand("translate", "Translate a code along a mapping");
    int theorem = 1;
    std::string direction, tr_instance, tr_mapping, tr_code;
    fs::path tr_out;
    std::optional<Symbol> sigma;
    tr->add_option("--theorem", theorem, "1: index <-> mapped network; 2: augmented network <-> index image")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    tr->add_option("--direction", direction, "i2n: index code to network code; n2i: network code to index code")
        ->required()
        ->check(CLI::IsMember({"i2n", "n2i"}));
    tr->add_option("--instance", tr_instance,
                   "Theorem 1: the index instance; theorem 2: the (augmented) network instance")
        ->required();
    tr->add_option("--mapping", tr_mapping, "Mapping record produced with the instance")->required();
    tr->add_option("--code", tr_code, "Code to translate")->required();
    tr->add_option("-o,--output", tr_out, "Translated code output")->required();
    tr->add_option("--sigma", sigma, "Broadcast value to hold fixed (theorem 2, i2n)");

    // verify
    auto* ver = app.add_subcommand("verify", "Certify decodability, security and source recoverability");
    std::string ver_instance, ver_code;
    std::vector<std::string> checks;
    ver->add_option("--instance", ver_instance, "Instance")->required();
    ver->add_option("--code", ver_code, "Code")->required();
    ver->add_option("--check", checks, "decode, secure, recover or all (repeatable; default all)")
        ->check(CLI::IsMember({"decode", "secure", "recover", "all"}));
    ver->add_option("--joint-budget", max_rows, "Largest joint input space to enumerate");

    // search
    auto* se = app.add_subcommand("search", "Exhaustive code search at fixed alphabets");
    std::string se_instance;
    std::vector<std::string> key_specs;
    bool deterministic = false, naive = false, symmetry = false;
    std::optional<fs::path> se_out;
    se->add_option("--instance", se_instance, "Network or index instance")->required();
    se->add_option("--key-size", key_specs,
                   "node=K per keyed node (network; default: out-edge products), or K (index; default 1)");
    se->add_flag("--deterministic", deterministic, "Network search without keys");
    se->add_option("--budget", budget.max_candidate_codes, "Candidate budget");
    se->add_option("--joint-budget", budget.max_joint_tuples, "Joint input space budget");
    se->add_flag("--naive", naive, "Verify every full candidate instead of pruning partial codes");
    se->add_flag("--symmetry", symmetry, "Symmetry pruning (witnesses are re-derived unpruned)");
    se->add_option("-o,--output", se_out, "Witness output");

    // equiv
    auto* eq = app.add_subcommand("equiv", "Compare index and mapped network feasibility");
    std::string eq_instance;
    EquivalenceOptions eq_options;
    bool no_augmented = false;
    std::uint64_t eq_key = 1;
    eq->add_option("--instance", eq_instance, "Index instance")->required();
    eq->add_option("--budget", budget.max_candidate_codes, "Candidate budget per search");
    eq->add_option("--joint-budget", budget.max_joint_tuples, "Joint input space budget");
    eq->add_option("--key-size", eq_key, "Sender key size (node 1 on the network side)");
    eq->add_flag("--no-augmented", no_augmented, "Skip the augmented index image");
    eq->add_flag("--naive", naive, "Verify every full candidate instead of pruning partial codes");
    eq->add_flag("--symmetry", symmetry, "Symmetry pruning");

    // entropy
    auto* en = app.add_subcommand("entropy", "Conditional entropy of variables of a code's joint law");
    std::string en_instance, en_code;
    std::vector<std::string> of, given;
    en->add_option("--instance", en_instance, "Instance")->required();
    en->add_option("--code", en_code, "Code")->required();
    en->add_option("--of", of, "Variables A (comma separated)")->required();
    en->add_option("--given", given, "Variables B (comma separated)");
    en->add_option("--joint-budget", max_rows, "Largest joint input space to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kMalformed;
    }

    try {
        if (!backend.empty()) {
            if (backend == "scalar") {
                kernels::set_backend(kernels::Backend::scalar);
            } else if (backend == "avx2") {
                if (!kernels::set_backend(kernels::Backend::avx2)) throw FormatError("avx2 kernels unavailable");
            } else {
                throw FormatError("unknown kernel backend " + backend);
            }
        }
        SearchOptions options;
        options.early_rejection = !naive;
        options.symmetry_pruning = symmetry;

        if (*validate) return cmd_validate(validate_file, dot);
        if (*i2n) return cmd_i2n(i2n_file, i2n_out, i2n_mapping);
        if (*aug) return cmd_augment(aug_file, aug_out, aug_record, aug_code, aug_code_out);
        if (*n2i) return cmd_n2i(n2i_file, n2i_out, no_augment, n2i_mapping, n2i_augmented);
        if (*tr) return cmd_translate(theorem, direction, tr_instance, tr_mapping, tr_code, tr_out, sigma);
        if (*ver) return cmd_verify(ver_instance, ver_code, checks, max_rows);
        if (*se) return cmd_search(se_instance, key_specs, deterministic, budget, options, se_out);
        if (*eq) {
            eq_options.key_alphabet = Alphabet{eq_key};
            eq_options.augmented_leg = !no_augmented;
            eq_options.search = options;
            return cmd_equiv(eq_instance, budget, eq_options);
        }
        if (*en) return cmd_entropy(en_instance, en_code, of, given, max_rows);
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const SizeBudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
    return kMalformed;
}
