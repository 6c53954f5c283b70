#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"

namespace trendmine::pipeline {

// synth, train, eval, trends, sentiment-trend, geo, topics, report
const std::vector<std::string>& commands();

// Runs one batch command, writing into cfg.out. Progress goes to `log`, one
// line per stage. Throws Error on validation/I-O failures.
void run_command(const std::string& command, const RunConfig& cfg, std::ostream& log);

// 0 ok, 1 validation, 2 I/O.
int exit_code(Errc code);

}  // namespace trendmine::pipeline
