#include "qmb/cli_app.hpp"

int main(int argc, char** argv) { return qmb::run_cli(argc, argv); }
