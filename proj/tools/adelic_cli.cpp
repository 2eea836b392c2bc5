// Batch front end: reads one problem descriptor (JSON or TOML), dispatches to
// the library, writes the report. Exit codes: 0 success, 2 parse/schema
// failure, 3 numerical guard, 4 infeasible input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adelic/descriptor.hpp"
#include "adelic/errors.hpp"

namespace {

std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adelic: product formulas, Jensen defects, Arakelov degrees, "
                 "Harder-Narasimhan flags and Nevanlinna heights at desk scale"};
    std::string in_path, out_path, format;
    bool force_csv = false;
    app.add_option("--in", in_path, "descriptor file (default: stdin)");
    app.add_option("--format", format, "descriptor format: toml|json (default: by extension, else json)")
        ->check(CLI::IsMember({"toml", "json"}));
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_flag("--csv", force_csv, "require CSV output (grid commands only)");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (in_path.empty()) {
        text = read_all(std::cin);
    } else {
        std::ifstream f(in_path);
        if (!f) {
            std::cerr << "error: cannot open " << in_path << "\n";
            return 2;
        }
        text = read_all(f);
    }

    adelic::DescriptorFormat fmt = adelic::DescriptorFormat::Json;
    if (format == "toml" || (format.empty() && in_path.size() > 5 && in_path.ends_with(".toml")))
        fmt = adelic::DescriptorFormat::Toml;

    try {
        adelic::ProblemDescriptor descriptor = adelic::parse_descriptor(text, fmt);
        adelic::Report report = adelic::run(descriptor);
        if (force_csv && !report.is_csv) {
            std::cerr << "error: --csv requested but '" << descriptor.command() << "' emits JSON\n";
            return 2;
        }
        std::string bytes = adelic::emit(report);
        if (out_path.empty()) {
            std::cout << bytes;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 2;
            }
            out << bytes;
        }
        return 0;
    } catch (const adelic::numerical_guard_error& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const adelic::argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const adelic::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 4;
    } catch (const adelic::unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
