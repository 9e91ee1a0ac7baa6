#include "relhyp/oracle.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>

#include "relhyp/errors.hpp"

namespace relhyp {

OracleChannel::OracleChannel(const std::string& peripheral_name,
                             const std::vector<std::string>& argv)
    : name_(peripheral_name) {
  if (argv.empty()) throw OracleFailure(name_, "empty command");
  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0)
    throw OracleFailure(name_, std::strerror(errno));
  pid_t pid = fork();
  if (pid < 0) throw OracleFailure(name_, std::strerror(errno));
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  pid_ = pid;
  close(to_child[0]);
  close(from_child[1]);
  in_fd_ = to_child[1];
  out_fd_ = from_child[0];
}

OracleChannel::~OracleChannel() {
  if (in_fd_ >= 0) close(in_fd_);
  if (out_fd_ >= 0) close(out_fd_);
  if (pid_ > 0) {
    int status;
    waitpid((pid_t)pid_, &status, 0);
  }
}

std::string OracleChannel::request(const std::string& line) {
  std::lock_guard<std::mutex> lock(mu_);
  std::string msg = line + "\n";
  size_t off = 0;
  while (off < msg.size()) {
    ssize_t n = write(in_fd_, msg.data() + off, msg.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure(name_, "write: " + std::string(std::strerror(errno)));
    }
    off += (size_t)n;
  }
  for (;;) {
    size_t nl = buf_.find('\n');
    if (nl != std::string::npos) {
      std::string reply = buf_.substr(0, nl);
      buf_.erase(0, nl + 1);
      if (!reply.empty() && reply.back() == '\r') reply.pop_back();
      return reply;
    }
    char chunk[512];
    ssize_t n = read(out_fd_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure(name_, "read: " + std::string(std::strerror(errno)));
    }
    if (n == 0) throw OracleFailure(name_, "channel closed");
    buf_.append(chunk, (size_t)n);
  }
}

bool OracleChannel::word_problem(const std::string& word) {
  std::string r = request(word.empty() ? "WP" : "WP " + word);
  if (r == "T") return true;
  if (r == "F") return false;
  throw OracleFailure(name_, "bad WP reply '" + r + "'");
}

std::string OracleChannel::normal_form(const std::string& word) {
  std::string r = request(word.empty() ? "NF" : "NF " + word);
  if (r == "ERR") throw OracleFailure(name_, "NF not supported");
  return r;
}

bool OracleChannel::has_normal_forms() {
  if (nf_support_ < 0) {
    std::string r = request("NF");
    nf_support_ = (r == "ERR") ? 0 : 1;
  }
  return nf_support_ == 1;
}

}  // namespace relhyp
