#include "polarwalk/io.hpp"

#include <fstream>
#include <sstream>

#include "polarwalk/errors.hpp"

namespace polarwalk {

FunctionInput parse_function_input(const std::string& path, const Caps& caps) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::size_t first_content = 0;
    while (first_content < text.size() &&
           (text[first_content] == '\n' || text[first_content] == '\r'))
        ++first_content;
    if (first_content >= text.size()) throw IoError(path + ": line 1: empty input");

    std::istringstream stream(text.substr(first_content));
    if (text.compare(first_content, 2, "n=") == 0) return parse_truth_table(stream, caps);
    return parse_f2(stream, caps);
}

TruthTable input_truth_table(const FunctionInput& input, const Caps& caps) {
    if (const auto* table = std::get_if<TruthTable>(&input)) return *table;
    return lift_pm(std::get<F2Polynomial>(input), caps);
}

}  // namespace polarwalk
