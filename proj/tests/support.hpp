#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "suitegen/genotype.hpp"
#include "suitegen/metadata.hpp"
#include "suitegen/minipy.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SUITEGEN_FIXTURE_DIR) / "bmi" / name;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const suitegen::UutMetadata& bmi_meta() {
  static const suitegen::UutMetadata meta = suitegen::load_metadata(fixture("bmi.json").string());
  return meta;
}

inline const suitegen::minipy::Program& bmi_program() {
  static const suitegen::minipy::Program program =
      suitegen::minipy::load_program(fixture("bmi_calculator.py").string());
  return program;
}

inline suitegen::TestSuite golden_suite() {
  return suitegen::load_suite(fixture("golden_genotype.json").string(), bmi_meta());
}

/// Fresh scratch directory removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("suitegen-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_support
