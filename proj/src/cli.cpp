#include "pmod/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pmod/errors.hpp"
#include "pmod/homology.hpp"
#include "pmod/streaming.hpp"
#include "pmod/text_format.hpp"

namespace pmod {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void expect_args(const RunConfig& config, std::size_t n, const std::string& usage) {
    if (config.args.size() != n) throw UsageError("usage: pmod " + usage);
}

void print_value_map(std::ostream& out, const std::vector<std::pair<std::string, int>>& value_map) {
    for (const auto& [value, rank] : value_map) out << "# value " << value << " -> " << rank << "\n";
}

std::string bar_text(const Bar& b) {
    return (b.dim ? std::to_string(*b.dim) : "-") + " " + std::to_string(b.birth) + " " +
           (b.death ? std::to_string(*b.death) : "inf");
}

int cmd_barcode(const RunConfig& config, std::ostream& out) {
    expect_args(config, 1, "barcode <complex>");
    const ParsedComplex pc = parse_complex(read_file(config.args[0]));
    print_value_map(out, pc.value_map);
    out << print_barcode(persistent_homology(pc.complex, config.field));
    return 0;
}

int cmd_relative(const RunConfig& config, std::ostream& out) {
    expect_args(config, 1, "relative <complex>");
    const ParsedComplex pc = parse_complex(read_file(config.args[0]));
    print_value_map(out, pc.value_map);
    Barcode b = torsion_homology(relative_complex(pc.complex, config.field)).barcode;
    out << print_barcode(config.keep_ephemeral ? b : b.without_ephemeral());
    return 0;
}

int cmd_presentation_barcode(const RunConfig& config, std::ostream& out) {
    expect_args(config, 1, "presentation-barcode <presentation>");
    const Presentation p = parse_presentation(read_file(config.args[0]), config.field);
    out << print_barcode(barcode(p));
    return 0;
}

int cmd_snf(const RunConfig& config, std::ostream& out) {
    expect_args(config, 1, "snf <presentation> [--dump]");
    const Presentation p = parse_presentation(read_file(config.args[0]), config.field);
    if (!config.dump_snf) {
        out << print_presentation(snf_form(p, config.keep_ephemeral).presentation);
        return 0;
    }
    const SnfResult snf = graded_snf(p.incl());
    const GradedBasis& gens = *p.gens();
    const GradedBasis& rels = *p.rels();
    for (const auto& piv : snf.diagonal)
        out << "pivot " << gens.label(piv.row) << " " << rels.label(piv.col) << " " << piv.value.to_string() << "\n";
    for (std::size_t i : snf.free_rows) out << "free " << gens.label(i) << "\n";
    for (std::size_t j : snf.zero_cols) out << "zero " << rels.label(j) << "\n";
    for (std::size_t i = 0; i < gens.size(); ++i)
        out << "basis " << gens.label(i) << "' = " << snf.row_change_inverse.column_element(i).to_string() << "\n";
    return 0;
}

int cmd_stream(const RunConfig& config, std::ostream& out) {
    expect_args(config, 1, "stream <complex> [--emit-events]");
    std::vector<std::pair<std::string, int>> value_map;
    const auto simplices = parse_simplices(read_file(config.args[0]), &value_map);
    print_value_map(out, value_map);
    StreamState state(config.field);
    for (const auto& s : simplices) {
        if (s.removal) throw ValidationError("stream input cannot contain removals");
        const BarcodeDelta delta = state.add_simplex(s.vertices, s.birth);
        if (!config.emit_events) continue;
        out << "# insert " << simplex_label(s.vertices) << " at " << s.birth << "\n";
        for (const auto& b : delta.removed) out << "- " << bar_text(b) << "\n";
        for (const auto& b : delta.added) out << "+ " << bar_text(b) << "\n";
    }
    out << print_barcode(state.current_barcode());
    return 0;
}

Presentation load_presentation(const RunConfig& config, std::size_t i) {
    return parse_presentation(read_file(config.args.at(i)), config.field);
}

PresentationMorphism load_morphism(const RunConfig& config, std::size_t i) {
    return parse_morphism(read_file(config.args.at(i)), config.field);
}

int parse_power(const std::string& op, const std::string& prefix) {
    const std::string digits = op.substr(prefix.size());
    try {
        std::size_t used = 0;
        const int m = std::stoi(digits, &used);
        if (used == digits.size()) return m;
    } catch (const std::exception&) {
    }
    throw UsageError("bad power in '" + op + "'");
}

int cmd_op(const RunConfig& config, std::ostream& out) {
    if (config.args.empty()) throw UsageError("usage: pmod op <operation> <inputs...> [-o <out>]");
    const std::string& op = config.args[0];
    auto arity = [&](std::size_t n, const std::string& what) {
        if (config.args.size() != n + 1) throw UsageError("usage: pmod op " + op + " " + what);
    };
    std::optional<Presentation> result;
    if (op == "kernel" || op == "cokernel" || op == "image") {
        arity(1, "<morphism>");
        const PresentationMorphism f = load_morphism(config, 1);
        result = op == "kernel" ? kernel(f).module : op == "cokernel" ? cokernel(f) : image(f);
    } else if (op == "pullback" || op == "pushout") {
        arity(2, "<morphism> <morphism>");
        const PresentationMorphism f = load_morphism(config, 1), g = load_morphism(config, 2);
        result = op == "pullback" ? pullback(f, g).module : pushout(f, g);
    } else if (op == "tensor" || op == "tensor-k" || op == "hom" || op == "dsum") {
        arity(2, "<presentation> <presentation>");
        const Presentation p = load_presentation(config, 1), q = load_presentation(config, 2);
        if (op == "tensor") result = tensor(p, q);
        else if (op == "tensor-k") result = tensor_over_k(p, q, config.side);
        else if (op == "hom") result = hom(p, q);
        else result = direct_sum(p, q);
    } else if (op == "dual" || op.starts_with("wedge:") || op.starts_with("sym:")) {
        arity(1, "<presentation>");
        const Presentation p = load_presentation(config, 1);
        if (op == "dual") result = dual(p);
        else if (op.starts_with("wedge:")) result = exterior_power(p, parse_power(op, "wedge:"));
        else result = symmetric_power(p, parse_power(op, "sym:"));
    } else {
        throw UsageError("unknown operation '" + op + "'");
    }
    if (config.minimize) result = minimize(*result, config.keep_ephemeral);
    const std::string text = print_presentation(*result);
    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file) throw ParseError(0, "cannot write '" + *config.output_path + "'");
        file << text;
    } else {
        out << text;
    }
    return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "barcode") return cmd_barcode(config, out);
        if (config.command == "relative") return cmd_relative(config, out);
        if (config.command == "presentation-barcode") return cmd_presentation_barcode(config, out);
        if (config.command == "snf") return cmd_snf(config, out);
        if (config.command == "stream") return cmd_stream(config, out);
        if (config.command == "op") return cmd_op(config, out);
        throw UsageError("unknown command '" + config.command + "'");
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Persistence modules as graded k[t]-modules"};
    std::string field = "Q";
    std::string side = "left";
    RunConfig config;
    std::string output;
    app.add_option("--field", field, "coefficient field: Q or Zp:<p>");
    app.add_option("-o,--output", output, "output file for `op`");
    app.add_flag("--keep-ephemeral", config.keep_ephemeral, "keep length-0 bars / unit relations");
    app.add_flag("--emit-events", config.emit_events, "print barcode changes during `stream`");
    app.add_flag("--dump", config.dump_snf, "print pivots and basis changes for `snf`");
    app.add_flag("--minimize", config.minimize, "minimize the result of `op`");
    app.add_option("--side", side, "acting factor for tensor-k: left or right");
    app.add_option("command", config.command,
                   "barcode | presentation-barcode | snf | relative | stream | op")
        ->required();
    app.add_option("args", config.args, "command inputs");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        config.field = Field::parse(field);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    if (side == "left") config.side = Side::left;
    else if (side == "right") config.side = Side::right;
    else {
        std::cerr << "--side must be left or right\n";
        return 1;
    }
    if (!output.empty()) config.output_path = output;
    return run(config, std::cout, std::cerr);
}

}  // namespace pmod
