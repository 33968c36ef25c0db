#include "berrylink/cli.hpp"

int main(int argc, char** argv) { return berrylink::cli::run(argc, argv); }
