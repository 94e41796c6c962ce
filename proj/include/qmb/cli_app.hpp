#pragma once

namespace qmb {

/* Entry point of the qmball command-line tool; returns the process exit
 * code (0 success, 1 validation or verification failure, 2 computation
 * that did not stabilize within the degree cap). */
int run_cli(int argc, const char* const* argv);

}  // namespace qmb
