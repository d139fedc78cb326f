#pragma once

#include <string>

namespace nehari::cli {

// Exit codes: 0 success, 1 config error, 2 not converged, 3 verify failure.
int run_solve(const std::string& config_path);
int run_sweep(const std::string& config_path);
int run_verify(const std::string& config_path);
int run_continue(const std::string& config_path);

int main(int argc, char** argv);

}  // namespace nehari::cli
