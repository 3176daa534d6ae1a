#ifndef OCGR_EXTERNAL_SOLVER_HPP
#define OCGR_EXTERNAL_SOLVER_HPP

#include "ocgr/errors.hpp"
#include "ocgr/linear_model.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

namespace ocgr {

/*
  Process-level adapter for cross-validating the internal solvers against
  an external one. The model is written as MPS to a temporary file whose
  path replaces the `{}` placeholder in the command template; the command
  must print the optimal objective value as the last whitespace-separated
  token of its last non-empty output line. Returns nullopt when the
  command fails or prints nothing parseable.
*/
inline std::optional<double> solve_with_external(const LinearModel &model,
                                                 const std::string &command_template,
                                                 bool integral = false) {
    namespace fs = std::filesystem;
    fs::path mps_path =
        fs::temp_directory_path() /
        ("ocgr_xsolve_" + std::to_string(::getpid()) + ".mps");
    {
        std::ofstream out(mps_path);
        if (!out)
            raise(ErrorKind::InvalidArgument,
                  "cannot write '" + mps_path.string() + "'");
        out << write_mps(model, "XCHECK", integral);
    }
    std::string command = command_template;
    auto placeholder = command.find("{}");
    if (placeholder == std::string::npos)
        command += " " + mps_path.string();
    else
        command.replace(placeholder, 2, mps_path.string());

    std::string output;
    FILE *pipe = ::popen(command.c_str(), "r");
    if (!pipe) {
        fs::remove(mps_path);
        return std::nullopt;
    }
    char buffer[256];
    while (std::fgets(buffer, sizeof(buffer), pipe))
        output += buffer;
    int status = ::pclose(pipe);
    fs::remove(mps_path);
    if (status != 0)
        return std::nullopt;

    std::istringstream lines(output);
    std::string line, last_nonempty;
    while (std::getline(lines, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            last_nonempty = line;
    std::istringstream tokens(last_nonempty);
    std::string token, last_token;
    while (tokens >> token)
        last_token = token;
    try {
        std::size_t pos = 0;
        double value = std::stod(last_token, &pos);
        if (pos != last_token.size())
            return std::nullopt;
        return value;
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

} // namespace ocgr

#endif
