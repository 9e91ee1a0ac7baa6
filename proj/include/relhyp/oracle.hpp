#ifndef RELHYP_ORACLE_HPP_
#define RELHYP_ORACLE_HPP_

#include <mutex>
#include <string>
#include <vector>

namespace relhyp {

// Line-based subprocess channel for oracle peripherals.
//
// Protocol, one request in flight per channel:
//   "WP <word>"  ->  "T" or "F"   (does <word> represent 1?)
//   "NF <word>"  ->  canonical word on one line (may be empty for 1)
// A server that does not implement NF answers "ERR".
// <word> is a space-separated sequence of generator tokens, each
// "name" or "name^-1"; the empty sequence denotes the identity.
class OracleChannel {
 public:
  // Spawns `argv` with stdin/stdout piped. Throws OracleFailure on error.
  OracleChannel(const std::string& peripheral_name,
                const std::vector<std::string>& argv);
  ~OracleChannel();

  OracleChannel(const OracleChannel&) = delete;
  OracleChannel& operator=(const OracleChannel&) = delete;

  // True iff the word (space-joined tokens) represents the identity.
  bool word_problem(const std::string& word);

  // Canonical form, or nullopt-like failure signalled by `supported`=false
  // after the first probe. Throws on protocol errors.
  std::string normal_form(const std::string& word);

  // Probes NF support once (cached).
  bool has_normal_forms();

 private:
  std::string request(const std::string& line);

  std::string name_;
  int in_fd_ = -1;   // write end (child stdin)
  int out_fd_ = -1;  // read end (child stdout)
  long pid_ = -1;
  std::string buf_;
  std::mutex mu_;
  int nf_support_ = -1;  // -1 unknown, 0 no, 1 yes
};

}  // namespace relhyp

#endif  // RELHYP_ORACLE_HPP_
