#include "ntrust/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ntrust {

namespace {

constexpr const char* kHeader =
    "iter,f_true,f_noisy,gnorm_true,gnorm_noisy,delta,rho,accepted,step_norm,dist";

double parse_double(const std::string& tok, const std::filesystem::path& path,
                    std::size_t line_no) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error("malformed numeric field '" + tok + "' in " +
                             path.string() + " line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open trace file for writing: " + path.string());
  }
  out << kHeader << '\n';
  for (const IterationRecord& rec : trace.records) {
    out << rec.k << ',' << format_double(rec.f_true) << ','
        << format_double(rec.f_noisy) << ',' << format_double(rec.gnorm_true) << ','
        << format_double(rec.gnorm_noisy) << ',' << format_double(rec.delta) << ','
        << format_double(rec.rho) << ',' << (rec.accepted ? 1 : 0) << ','
        << format_double(rec.step_norm) << ',' << format_double(rec.dist) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failure on trace file: " + path.string());
  }
}

std::vector<IterationRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file for reading: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("unexpected trace header in " + path.string());
  }
  std::vector<IterationRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> toks;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) toks.push_back(tok);
    if (!line.empty() && line.back() == ',') toks.push_back("");
    if (toks.size() != 10) {
      throw std::runtime_error("expected 10 fields in " + path.string() + " line " +
                               std::to_string(line_no) + ", got " +
                               std::to_string(toks.size()));
    }
    IterationRecord rec;
    rec.k = static_cast<int>(parse_double(toks[0], path, line_no));
    rec.f_true = parse_double(toks[1], path, line_no);
    rec.f_noisy = parse_double(toks[2], path, line_no);
    rec.gnorm_true = parse_double(toks[3], path, line_no);
    rec.gnorm_noisy = parse_double(toks[4], path, line_no);
    rec.delta = parse_double(toks[5], path, line_no);
    rec.rho = parse_double(toks[6], path, line_no);
    const std::string& acc = toks[7];
    if (acc != "0" && acc != "1") {
      throw std::runtime_error("accepted flag must be 0 or 1 in " + path.string() +
                               " line " + std::to_string(line_no));
    }
    rec.accepted = (acc == "1");
    rec.step_norm = parse_double(toks[8], path, line_no);
    rec.dist = parse_double(toks[9], path, line_no);
    records.push_back(rec);
  }
  return records;
}

}  // namespace ntrust
