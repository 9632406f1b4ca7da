// Writes the built-in fixture documents as canonical JSON into a directory.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "divfan/fixture_documents.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: export_fixtures DIR\n";
    return 2;
  }
  std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  for (const auto& [name, doc] : divfan::fixtures::documents::all()) {
    std::ofstream out(dir / (name + ".json"));
    out << divfan::io::canonical_text(divfan::io::dump_document(doc));
    std::cout << (dir / (name + ".json")).string() << "\n";
  }
  return 0;
}
