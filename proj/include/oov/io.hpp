#pragma once

#include <string>

#include "oov/parser.hpp"

namespace oov {

/// Whole file as text; std::runtime_error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Program with its flavor taken from the file extension when known.
Program load_program(const std::string& path);
State load_state(const std::string& path, const Signature& sig);
ProofFile load_proof(const std::string& path, Signature& sig);

/// Path of a bundled data file (fixtures, golden proofs).
std::string data_path(const std::string& name);

}  // namespace oov
