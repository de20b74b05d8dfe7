// SPDX-License-Identifier: Apache-2.0
// Command-line front end over the ancl C API.
#include "ancl/ancl.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct InputDeleter {
    void operator()(ancl_input* p) const { ancl_input_free(p); }
};
using InputPtr = std::unique_ptr<ancl_input, InputDeleter>;

int report(ancl_status s) {
    if (s != ANCL_OK) std::cerr << "error: " << ancl_last_error() << '\n';
    return static_cast<int>(s);
}

// Prints and frees a library string.
void emit(char* s, std::ostream& os = std::cout) {
    os << s;
    const std::size_t n = std::char_traits<char>::length(s);
    if (n == 0 || s[n - 1] != '\n') os << '\n';
    ancl_string_free(s);
}

int load(const std::string& source, InputPtr& out) {
    ancl_input* raw = nullptr;
    ancl_status s;
    const std::string prefix = "catalog:";
    if (source.rfind(prefix, 0) == 0) {
        s = ancl_input_catalog(source.substr(prefix.size()).c_str(), &raw);
    } else {
        std::string text;
        if (source == "-") {
            text.assign(std::istreambuf_iterator<char>(std::cin), {});
        } else {
            std::ifstream in(source);
            if (!in) {
                std::cerr << "error: cannot read '" << source << "'\n";
                return ANCL_ERR_PARSE;
            }
            text.assign(std::istreambuf_iterator<char>(in), {});
        }
        s = ancl_input_parse(text.c_str(), &raw);
    }
    out.reset(raw);
    return report(s);
}

using Command = ancl_status (*)(const ancl_input*, char**);

int run_json(const std::string& source, Command cmd) {
    InputPtr in;
    if (int rc = load(source, in)) return rc;
    char* out = nullptr;
    const ancl_status s = cmd(in.get(), &out);
    if (s == ANCL_OK) emit(out);
    return report(s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ancl: classify shifted-diagonal operators against the absolutely norm attaining classes"};
    app.require_subcommand(1);
    double tolerance = ancl_get_tolerance();
    app.add_option("--tolerance", tolerance, "identity tolerance for spectral points")->check(CLI::PositiveNumber);

    std::string source;
    const char* input_help = "operator/profile JSON file, '-' for stdin, or catalog:<name>";
    auto with_input = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", source, input_help)->required();
        return sub;
    };
    CLI::App* spectrum = with_input("spectrum", "spectral report (JSON)");
    CLI::App* classify = with_input("classify", "membership report with certificates (JSON)");
    CLI::App* decompose = with_input("decompose", "closure decompositions (JSON)");
    CLI::App* diagram = with_input("diagram", "number-line spectral diagram");
    std::string svg_path, format = "ascii";
    diagram->add_option("--svg", svg_path, "also write the SVG rendering to this path");
    diagram->add_option("--format", format, "stdout format")->check(CLI::IsMember({"ascii", "svg"}));
    CLI::App* oracle = with_input("oracle", "finite-section convergence study (CSV)");
    std::vector<std::int64_t> sizes{64, 256, 1024};
    oracle->add_option("--sizes", sizes, "section orders, strictly increasing")->delimiter(',');
    CLI::App* verify = with_input("verify", "run the invariant checks on the input");

    CLI::App* catalog = app.add_subcommand("catalog", "named example operators");
    catalog->require_subcommand(1);
    catalog->add_subcommand("list", "names, summaries and expected flags");
    std::string entry;
    catalog->add_subcommand("build", "operator JSON of one entry")->add_option("name", entry)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ANCL_ERR_PARSE;
    }
    if (int rc = report(ancl_set_tolerance(tolerance))) return rc;

    if (*spectrum) return run_json(source, ancl_spectrum);
    if (*classify) return run_json(source, ancl_classify);
    if (*decompose) return run_json(source, ancl_decompose);
    if (*diagram) {
        InputPtr in;
        if (int rc = load(source, in)) return rc;
        if (!svg_path.empty()) {
            char* svg = nullptr;
            if (int rc = report(ancl_diagram(in.get(), ANCL_DIAGRAM_SVG, &svg))) return rc;
            std::ofstream f(svg_path, std::ios::binary);
            f << svg;
            ancl_string_free(svg);
            if (!f) {
                std::cerr << "error: cannot write '" << svg_path << "'\n";
                return ANCL_ERR_CONTRACT;
            }
        }
        char* out = nullptr;
        const ancl_status s = ancl_diagram(in.get(), format == "svg" ? ANCL_DIAGRAM_SVG : ANCL_DIAGRAM_ASCII, &out);
        if (s == ANCL_OK) emit(out);
        return report(s);
    }
    if (*oracle) {
        InputPtr in;
        if (int rc = load(source, in)) return rc;
        char* out = nullptr;
        const ancl_status s = ancl_oracle(in.get(), sizes.data(), sizes.size(), &out);
        if (s == ANCL_OK) emit(out);
        return report(s);
    }
    if (*verify) {
        InputPtr in;
        if (int rc = load(source, in)) return rc;
        char* out = nullptr;
        int ok = 0;
        const ancl_status s = ancl_verify(in.get(), &out, &ok);
        if (s != ANCL_OK) return report(s);
        emit(out);
        return ok ? 0 : ANCL_ERR_INTERNAL;
    }
    if (*catalog) {
        char* out = nullptr;
        if (catalog->got_subcommand("list")) {
            const ancl_status s = ancl_catalog_list(&out);
            if (s == ANCL_OK) emit(out);
            return report(s);
        }
        InputPtr in;
        if (int rc = load("catalog:" + entry, in)) return rc;
        const ancl_status s = ancl_input_to_json(in.get(), &out);
        if (s == ANCL_OK) emit(out);
        return report(s);
    }
    return ANCL_ERR_PARSE;
}
