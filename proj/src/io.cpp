#include "oov/io.hpp"

#include <fstream>
#include <sstream>

namespace oov {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Program load_program(const std::string& path) {
  return parse_program(SourceText{read_file(path), path}, flavor_for_path(path));
}

State load_state(const std::string& path, const Signature& sig) {
  return parse_state(SourceText{read_file(path), path}, sig);
}

ProofFile load_proof(const std::string& path, Signature& sig) {
  return parse_proof(SourceText{read_file(path), path}, sig);
}

std::string data_path(const std::string& name) { return std::string(OOV_DATA_DIR) + "/" + name; }

}  // namespace oov
