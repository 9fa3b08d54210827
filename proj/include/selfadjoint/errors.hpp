#pragma once

#include <stdexcept>
#include <string>

namespace selfadjoint {

// Engine-side failure: order cap exceeded, coefficient overflow, internal
// rewriting budget blown. Maps to exit code 3 in the CLI.
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem-side failure: bad declarations, unknown symbols, malformed files.
// Maps to exit code 2 in the CLI.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input error with a source position.
struct ParseError : InputError {
    int line;
    int column;

    ParseError(int line_, int column_, const std::string& what_)
        : InputError(std::to_string(line_) + ":" + std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_) {}
};

} // namespace selfadjoint
