#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ntrust/driver.hpp"

namespace ntrust {

/// Round-trip-exact decimal rendering of a double (17 significant digits;
/// nan and +/-inf render as parseable tokens).
std::string format_double(double v);

/// Columns: iter,f_true,f_noisy,gnorm_true,gnorm_noisy,delta,rho,accepted,
/// step_norm,dist. Values round-trip bitwise through read_trace_csv.
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);

std::vector<IterationRecord> read_trace_csv(const std::filesystem::path& path);

}  // namespace ntrust
