#include "sshqed/cli.hpp"

int main(int argc, char** argv) { return sshqed::cli::run(argc, argv); }
