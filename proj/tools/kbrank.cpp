#include "kbrank/service/cli.hpp"

int main(int argc, char** argv) { return kbrank::service::run_cli(argc, argv); }
