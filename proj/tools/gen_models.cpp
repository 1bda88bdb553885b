// Regenerates the bundled model files. Usage: gen-models [output-dir]
// (default "models"). The outputs are committed; the test suite rebuilds the
// documents and diffs them against the files, so regeneration is only needed
// when a builder or the serializer changes.

#include "bundled_models.hpp"

#include "ocs/model_io.hpp"

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  const std::string root = argc > 1 ? argv[1] : "models";
  try {
    for (const auto& [rel, bytes] : ocs::models::bundle()) {
      const std::filesystem::path path = std::filesystem::path(root) / rel;
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      ocs::write_file_atomic(path.string(), bytes);
      std::cout << path.string() << "  (" << bytes.size() << " bytes)\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "gen-models: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
