#include "qtpm/scenarios.hpp"

int main(int argc, char** argv) { return qtpm::scen::run_cli(argc, argv); }
