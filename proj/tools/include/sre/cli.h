// sre/cli.h

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#ifndef SRE_CLI_H_
#define SRE_CLI_H_

#include <iosfwd>

namespace sre::cli {

/// Exit codes of sre-eval.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEvaluation = 1;  // rejection, no participating cell, ...
inline constexpr int kExitInput = 2;       // unreadable or malformed input, bad flags

/// Runs sre-eval with the given arguments (argv[0] is the program name).
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace sre::cli

#endif  // SRE_CLI_H_
