#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace claimcheck::cli {

// Runs one subcommand (ingest, index, retrieve, gen-nli, features, train,
// predict, score, e2e). `args` excludes the program name. Returns the exit
// status; diagnostics go to `err`, summaries to `out`.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace claimcheck::cli
