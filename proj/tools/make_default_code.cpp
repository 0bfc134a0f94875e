// Regenerates the committed default LDPC code: writes the alist interchange
// file and the C++ source embedding it. Run from the repository root:
//   cfmimo_make_code [n m seed] [alist_path source_path]
#include <fstream>
#include <iostream>
#include <sstream>

#include "cfmimo/ldpc.hpp"

int main(int argc, char** argv) {
  int n = 256, m = 128;
  std::uint64_t seed = cfmimo::default_code_seed();
  std::string alist_path = "data/ldpc_256_128.alist";
  std::string source_path = "src/ldpc_default_code.cpp";
  if (argc >= 4) {
    n = std::stoi(argv[1]);
    m = std::stoi(argv[2]);
    seed = std::stoull(argv[3]);
  }
  if (argc >= 6) {
    alist_path = argv[4];
    source_path = argv[5];
  }

  const cfmimo::LdpcCode code = cfmimo::build_code(n, m, seed);
  std::cout << "built (" << code.n << ", " << code.k() << ") code, seed "
            << code.seed_used << ", attempts " << code.build_attempts << "\n";

  cfmimo::save_alist_file(alist_path, code);
  std::cout << "wrote " << alist_path << "\n";

  std::ostringstream alist;
  cfmimo::write_alist(alist, code);

  std::ofstream src(source_path);
  if (!src) {
    std::cerr << "cannot write " << source_path << "\n";
    return 1;
  }
  src << "// Generated by cfmimo_make_code; do not edit by hand.\n"
         "// Matches data/ldpc_256_128.alist and build_code("
      << n << ", " << m << ", " << code.seed_used << ").\n"
      << "#include <sstream>\n\n"
         "#include \"cfmimo/ldpc.hpp\"\n\n"
         "namespace cfmimo {\n\n"
         "namespace {\n\n"
         "constexpr std::uint64_t kDefaultSeed = "
      << code.seed_used << ";\n\n"
      << "const char* const kDefaultAlist = R\"ALIST(" << alist.str()
      << ")ALIST\";\n\n"
         "}  // namespace\n\n"
         "std::uint64_t default_code_seed() { return kDefaultSeed; }\n\n"
         "const LdpcCode& default_code() {\n"
         "  static const LdpcCode code = [] {\n"
         "    std::istringstream ss(kDefaultAlist);\n"
         "    LdpcCode c = read_alist(ss);\n"
         "    c.seed_used = kDefaultSeed;\n"
         "    return c;\n"
         "  }();\n"
         "  return code;\n"
         "}\n\n"
         "}  // namespace cfmimo\n";
  std::cout << "wrote " << source_path << "\n";
  return 0;
}
