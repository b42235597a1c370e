#include "gsm/model.hpp"

#include <filesystem>

#include "gsm/crn.hpp"
#include "gsm/errors.hpp"
#include "gsm/io.hpp"
#include "gsm/multi.hpp"
#include "gsm/spi.hpp"

namespace gsm {

LoadedModel load_model(const std::string& path) {
  std::string extension = std::filesystem::path(path).extension().string();
  if (extension == ".crn")
    return LoadedModel{ModelKind::crn,
                       std::make_unique<CrnCalculus>(
                           parse_crn(read_text_file(path), path)),
                       path};
  if (extension == ".spi")
    return LoadedModel{ModelKind::spi,
                       std::make_unique<SpiCalculus>(
                           parse_spi(read_text_file(path), path)),
                       path};
  if (extension == ".multi")
    return LoadedModel{ModelKind::multi, parse_multi(path), path};
  throw ModelError("unrecognised model extension (want .crn, .spi or .multi): " +
                   path);
}

}  // namespace gsm
