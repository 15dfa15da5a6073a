// rts — command-line front end for descriptions of rational tree series:
// guarded fixed-point systems over exact commutative semirings, their
// flattening to weighted tree automata, truncated behaviors, and
// simulation-based equivalence proofs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rts/document.hpp"
#include "rts/series.hpp"
#include "rts/simulation.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rts::Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

rts::Document load_document(const std::string& path, const std::string& ring_override) {
    rts::Document doc = rts::parse_document(read_file(path));
    if (!ring_override.empty() && ring_override != doc.ring.name())
        throw rts::Error("--semiring '" + ring_override + "' does not match the document header '" +
                         doc.ring.name() + "'");
    return doc;
}

void check_height(int height, int max_height) {
    if (height < 0) throw rts::Error("--height must be non-negative");
    if (height > max_height)
        throw rts::Error("height " + std::to_string(height) + " exceeds the cap of " +
                         std::to_string(max_height) + " (raise it with --max-height)");
}

void print_result_document(const rts::Document& doc, const std::string& name,
                           const rts::Description& d) {
    rts::Document out{doc.ring, doc.alphabet, {{name, d}}};
    std::cout << print_document(out);
}

std::vector<rts::Value> parse_universe(const std::string& text, const rts::Semiring& ring) {
    std::vector<rts::Value> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(ring.parse(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw rts::Error("--universe must list at least one literal");
    return out;
}

std::vector<rts::Value> default_universe(const rts::Semiring& ring) {
    using rts::SemiringKind;
    std::vector<rts::Value> out;
    switch (ring.kind()) {
        case SemiringKind::boolean:
            for (int i = 0; i <= 1; ++i) out.push_back(ring.make(i));
            return out;
        case SemiringKind::nat:
            for (int i = 0; i <= 4; ++i) out.push_back(ring.make(i));
            return out;
        case SemiringKind::integer:
            for (int i = -2; i <= 2; ++i) out.push_back(ring.make(i));
            return out;
        case SemiringKind::zmod:
            for (std::uint64_t i = 0; i < ring.modulus(); ++i)
                out.push_back(ring.make(static_cast<long long>(i)));
            return out;
        case SemiringKind::tropical:
            throw rts::Error("the tropical semiring is infinite; pass --universe explicitly");
    }
    throw rts::Error("corrupt semiring kind");
}

int run(int argc, char** argv) {
    CLI::App app{"descriptions of rational tree series: guarded fixed-point systems, "
                 "weighted tree automata, and simulations over exact semirings"};
    app.require_subcommand(1);

    std::string file, ring_override;
    std::string desc_a, desc_b, tree_text, matrix_file, universe_text, out_name;
    std::vector<std::string> bind_specs;
    int height = 0;
    int max_height = 6;
    std::uint64_t budget = rts::kDefaultSearchBudget;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "description document")->required();
        cmd->add_option("--semiring", ring_override,
                        "assert the document's semiring (e.g. 'nat', 'zmod 5')");
    };

    CLI::App* flatten_cmd = app.add_subcommand("flatten", "flatten a description");
    add_common(flatten_cmd);
    flatten_cmd->add_option("desc", desc_a)->required();

    CLI::App* coeff_cmd = app.add_subcommand("coeff", "coefficient of one tree in a behavior");
    add_common(coeff_cmd);
    coeff_cmd->add_option("desc", desc_a)->required();
    coeff_cmd->add_option("tree", tree_text)->required();

    CLI::App* enum_cmd =
        app.add_subcommand("enumerate", "dump a truncated behavior, one line per tree");
    add_common(enum_cmd);
    enum_cmd->add_option("desc", desc_a)->required();
    enum_cmd->add_option("--height", height, "height bound")->required();
    enum_cmd->add_option("--max-height", max_height, "raise the height cap");

    CLI::App* equiv_cmd = app.add_subcommand("equiv", "compare truncated behaviors");
    add_common(equiv_cmd);
    equiv_cmd->add_option("descA", desc_a)->required();
    equiv_cmd->add_option("descB", desc_b)->required();
    equiv_cmd->add_option("--height", height, "height bound")->required();
    equiv_cmd->add_option("--max-height", max_height, "raise the height cap");

    CLI::App* checksim_cmd =
        app.add_subcommand("check-sim", "verify a simulation matrix between two descriptions");
    add_common(checksim_cmd);
    checksim_cmd->add_option("descA", desc_a)->required();
    checksim_cmd->add_option("descB", desc_b)->required();
    checksim_cmd->add_option("--matrix", matrix_file, "matrix file")->required();

    CLI::App* findsim_cmd =
        app.add_subcommand("find-sim", "search simulation matrices over a finite entry universe");
    add_common(findsim_cmd);
    findsim_cmd->add_option("descA", desc_a)->required();
    findsim_cmd->add_option("descB", desc_b)->required();
    findsim_cmd->add_option("--universe", universe_text, "comma-separated entry literals");
    findsim_cmd->add_option("--budget", budget, "candidate budget");

    CLI::App* combine_cmd = app.add_subcommand("combine", "sum, scale or symbol-apply descriptions");
    add_common(combine_cmd);
    std::string mode;
    std::vector<std::string> operands;
    combine_cmd->add_option("mode", mode, "sum | scale <k> | sigma <symbol>")->required();
    combine_cmd->add_option("args", operands, "mode argument and description names")
        ->expected(-1);
    combine_cmd->add_option("--as", out_name, "name of the result description");

    CLI::App* subst_cmd = app.add_subcommand("subst", "substitute descriptions for parameters");
    add_common(subst_cmd);
    subst_cmd->add_option("desc", desc_a)->required();
    subst_cmd->add_option("--bind", bind_specs, "parameter=description, repeatable")
        ->required();
    subst_cmd->add_option("--as", out_name, "name of the result description");

    CLI::App* norm_cmd =
        app.add_subcommand("normalize-initial", "move all weight to a fresh first variable");
    add_common(norm_cmd);
    norm_cmd->add_option("desc", desc_a)->required();

    CLI11_PARSE(app, argc, argv);

    if (flatten_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        print_result_document(doc, desc_a, flatten(doc.find(desc_a)));
        return kExitTrue;
    }

    if (coeff_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        rts::Tree tree = parse_tree(tree_text, doc.alphabet);
        rts::WeightedTreeAutomaton wta = to_wta(flatten(doc.find(desc_a)));
        std::cout << wta_coeff(wta, tree).str() << "\n";
        return kExitTrue;
    }

    if (enum_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        check_height(height, max_height);
        rts::TruncatedSeries series = behavior(doc.find(desc_a), height);
        for (const rts::Tree& t : enumerate_trees(doc.alphabet, height))
            std::cout << t.str() << "\t" << series.coeff(t).str() << "\n";
        return kExitTrue;
    }

    if (equiv_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        check_height(height, max_height);
        rts::EquivResult r = equiv_up_to(doc.find(desc_a), doc.find(desc_b), height);
        if (r.equivalent) {
            std::cout << "equivalent up to height " << height << "\n";
            return kExitTrue;
        }
        std::cout << "not equivalent: " << r.witness->str() << " has coefficient "
                  << r.lhs->str() << " vs " << r.rhs->str() << "\n";
        return kExitFalse;
    }

    if (checksim_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        rts::Matrix m = parse_matrix(read_file(matrix_file), doc.ring);
        if (check_simulation(doc.find(desc_a), doc.find(desc_b), m)) {
            std::cout << "simulation\n";
            return kExitTrue;
        }
        std::cout << "not a simulation\n";
        return kExitFalse;
    }

    if (findsim_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        std::vector<rts::Value> universe = universe_text.empty()
                                               ? default_universe(doc.ring)
                                               : parse_universe(universe_text, doc.ring);
        std::vector<rts::Matrix> found =
            find_simulations(doc.find(desc_a), doc.find(desc_b), universe, budget);
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (i) std::cout << "\n";
            std::cout << print_matrix(found[i]);
        }
        return found.empty() ? kExitFalse : kExitTrue;
    }

    if (combine_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        std::string name = out_name.empty() ? "result" : out_name;
        if (mode == "sum") {
            if (operands.size() != 2) throw rts::Error("combine sum takes two description names");
            print_result_document(
                doc, name, desc_sum(doc.find(operands[0]), doc.find(operands[1])));
        } else if (mode == "scale") {
            if (operands.size() != 2)
                throw rts::Error("combine scale takes a literal and a description name");
            print_result_document(
                doc, name, desc_scale(doc.ring.parse(operands[0]), doc.find(operands[1])));
        } else if (mode == "sigma") {
            if (operands.empty()) throw rts::Error("combine sigma takes a symbol name");
            auto sym = doc.alphabet->find_symbol(operands[0]);
            if (!sym) throw rts::LookupError("unknown symbol '" + operands[0] + "'");
            std::vector<rts::Description> parts;
            for (std::size_t i = 1; i < operands.size(); ++i)
                parts.push_back(doc.find(operands[i]));
            print_result_document(
                doc, name, desc_sigma(doc.alphabet, doc.ring, *sym, parts));
        } else {
            throw rts::Error("unknown combine mode '" + mode + "' (sum | scale | sigma)");
        }
        return kExitTrue;
    }

    if (subst_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        std::map<rts::ParamId, rts::Description> bind;
        for (const std::string& binding : bind_specs) {
            std::size_t eq = binding.find('=');
            if (eq == std::string::npos)
                throw rts::Error("--bind expects parameter=description, got '" + binding + "'");
            std::string pname = binding.substr(0, eq);
            auto pid = doc.alphabet->find_param(pname);
            if (!pid) throw rts::LookupError("unknown parameter '" + pname + "'");
            bind.emplace(*pid, doc.find(binding.substr(eq + 1)));
        }
        std::string name = out_name.empty() ? desc_a : out_name;
        print_result_document(doc, name, desc_substitute(doc.find(desc_a), bind));
        return kExitTrue;
    }

    if (norm_cmd->parsed()) {
        rts::Document doc = load_document(file, ring_override);
        print_result_document(doc, desc_a, normalize_initial(doc.find(desc_a)));
        return kExitTrue;
    }

    throw rts::Error("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rts::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
