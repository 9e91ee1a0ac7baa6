// Word-problem oracle for the infinite cyclic group on one generator "a",
// speaking the line protocol:
//   WP <word>  ->  T | F
//   NF <word>  ->  canonical word ("a a a" / "a^-1 a^-1" / empty line)
// Pass --no-nf to refuse NF requests (answers ERR), for testing clients
// that must fall back to WP-based equality.

#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
  bool nf_enabled = true;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--no-nf") nf_enabled = false;

  std::string line;
  while (std::getline(std::cin, line)) {
    std::istringstream is(line);
    std::string cmd;
    is >> cmd;
    long long sum = 0;
    bool bad = false;
    std::string tok;
    while (is >> tok) {
      if (tok == "a")
        ++sum;
      else if (tok == "a^-1")
        --sum;
      else
        bad = true;
    }
    if (bad || (cmd != "WP" && cmd != "NF")) {
      std::cout << "ERR" << std::endl;
      continue;
    }
    if (cmd == "WP") {
      std::cout << (sum == 0 ? "T" : "F") << std::endl;
    } else if (!nf_enabled) {
      std::cout << "ERR" << std::endl;
    } else {
      std::string out;
      for (long long i = 0; i < (sum < 0 ? -sum : sum); ++i) {
        if (!out.empty()) out += ' ';
        out += (sum > 0 ? "a" : "a^-1");
      }
      std::cout << out << std::endl;
    }
  }
  return 0;
}
