#ifndef CLOCKTHM_SRC_COMMANDS_HPP
#define CLOCKTHM_SRC_COMMANDS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

// Subcommands of the clockthm tool. Each prints to stdout and returns an exit code.
namespace clockthm::cli {

constexpr int exit_ok = 0;
constexpr int exit_check = 1;
constexpr int exit_input = 2;
constexpr int exit_cap = 3;

// unreadable or unwritable files, bad environment
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StatesFlags {
  bool enumerate = false;
  bool count = false;
  bool extremal = false;
  bool json = false;
};

std::size_t cap_from_env();

int cmd_validate(const std::string& path, bool json);
int cmd_states(const std::string& path, StatesFlags f, std::size_t cap);
int cmd_lattice(const std::string& path, const std::string& dot, bool json, bool tables, std::size_t cap);
int cmd_poly(const std::string& path, const std::string& weights, const std::string& method);
int cmd_trails(const std::string& path, bool json, bool trees, std::size_t cap);
int cmd_classify(const std::string& path);
int cmd_corpus(const std::string& dir, bool all, const std::string& json, bool timing, std::size_t cap);

}  // namespace clockthm::cli

#endif  // CLOCKTHM_SRC_COMMANDS_HPP
