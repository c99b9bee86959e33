#pragma once

#include <iosfwd>

#include "expconfig.hpp"

namespace prf::cli {

int cmd_index(const experiment_config& cfg, std::ostream& out, std::ostream& err);
int cmd_run(const experiment_config& cfg, std::ostream& out, std::ostream& err);
int cmd_eval(const experiment_config& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep_terms(const experiment_config& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep_docs(const experiment_config& cfg, std::ostream& out, std::ostream& err);

} // namespace prf::cli
