#pragma once

// Instance files and the analyze / cycles / stokes subcommands.

#include "gkz/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gkz::cli {

/// {"n": 1, "A": [[1], [-1]], "c": ["1/3"], "z": [[0.5, 0], [0.5, 0]],
///  "options": {"seed": 7, "tol_quad": 1e-9, "tol_morse": 1e-10,
///              "lambda_ladder": [20, 40, 80], "sector_delta": 0.3, "force": false}}
/// Components of c are rational strings ("1/3", "0.25"), [re, im] pairs of
/// such strings, or plain JSON numbers (held inexactly).
struct Instance {
    PointConfiguration config;
    ParameterVector c;
    std::vector<cplx> z;
    AnalysisOptions options;
};

/// Throws ParseError naming the line and column of a syntax error or the
/// offending field.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// Entry point of the command-line tool, args excluding the program name.
/// Exit codes: 0 success, 2 partial report, 1 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkz::cli
