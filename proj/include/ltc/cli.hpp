#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltc/quad.hpp"

namespace ltc {

enum class RowCheck {
    within,     // |computed - reference| <= tolerance
    at_most,    // computed <= reference + tolerance
    at_least,   // computed >= reference - tolerance
    reference,  // shown, never gated
};

struct TableRow {
    std::string quantity;
    double reference = 0;
    double computed = 0;
    double tolerance = 0;
    RowCheck check = RowCheck::within;

    double abs_diff() const;
    bool passes() const;
};

/// Every headline constant with its published value and tolerance.
std::vector<TableRow> reference_table(const QuadSpec& quad = {});

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 ok, 1 regression or failed check, 2 usage or config error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltc
