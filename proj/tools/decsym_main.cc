#include "decsym/cli.hh"

int main(int argc, char** argv) { return decsym::cli_main(argc, argv); }
