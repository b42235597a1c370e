#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "gsm/errors.hpp"
#include "gsm/random.hpp"
#include "gsm/reaction.hpp"
#include "gsm/species.hpp"

namespace gsm::test {

// Uniform source with a scripted tape; running past the end is a test bug.
class PinnedUniform final : public UniformSource {
 public:
  explicit PinnedUniform(std::vector<double> values)
      : values_(std::move(values)) {}

  double next() override {
    if (next_ >= values_.size())
      throw InternalError("pinned uniform tape exhausted");
    return values_[next_++];
  }

  std::size_t consumed() const { return next_; }

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

inline SpeciesMultiset ms(std::initializer_list<const char*> names) {
  SpeciesMultiset out;
  for (const char* name : names) out.add(SpeciesKey(name));
  return out;
}

inline std::string model_path(const std::string& name) {
  return std::string(GSM_MODELS_DIR) + "/" + name;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs the simulator binary with the given arguments, capturing both
// streams and the real exit code.
inline CliResult run_cli(const std::string& args) {
  static int counter = 0;
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "gsm_cli_tests";
  std::filesystem::create_directories(dir);
  std::filesystem::path out_file =
      dir / ("out_" + std::to_string(counter) + ".txt");
  std::filesystem::path err_file =
      dir / ("err_" + std::to_string(counter) + ".txt");
  ++counter;

  std::string command = std::string("\"") + GSM_CLI_PATH + "\" " + args +
                        " >\"" + out_file.string() + "\" 2>\"" +
                        err_file.string() + "\"";
  int status = std::system(command.c_str());

  CliResult result;
  if (status == -1)
    throw InternalError("failed to launch " + command);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  std::filesystem::remove(out_file);
  std::filesystem::remove(err_file);
  return result;
}

}  // namespace gsm::test
