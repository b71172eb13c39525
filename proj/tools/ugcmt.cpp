#include "ugcmt/cli/app.hpp"

int main(int argc, char** argv) { return ugcmt::cli::run(argc, argv); }
