#include "gsm/io.hpp"

#include <fstream>
#include <sstream>

#include "gsm/errors.hpp"

namespace gsm {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ModelError("cannot read " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw ModelError("cannot write " + path);
}

}  // namespace gsm
