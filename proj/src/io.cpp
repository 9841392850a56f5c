#include "posdef/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace posdef {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' '))
    s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && s[b] == ' ') ++b;
  return s.substr(b);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

SampledSignal read_signal_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || strip(line) != "t,re,im")
    throw std::runtime_error(name + ": expected header \"t,re,im\"");

  std::vector<double> ts;
  std::vector<cdouble> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = strip(line);
    if (row.empty()) continue;
    double t, re, im;
    if (std::sscanf(row.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw std::runtime_error(name + ": malformed row at line " + std::to_string(lineno));
    ts.push_back(t);
    values.emplace_back(re, im);
  }
  if (values.empty()) throw std::runtime_error(name + ": no samples");

  const std::size_t n = ts.size();
  const double dt = n > 1 ? ts.back() / double(n - 1) : 1.0;
  if (n > 1 && dt <= 0.0)
    throw std::runtime_error(name + ": time axis must be strictly increasing");
  const double tol = 1e-9 * std::max(std::abs(ts.back()), std::max(dt, 1e-300));
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(ts[j] - double(j) * dt) > tol)
      throw std::runtime_error(name + ": time axis not uniform from 0 at row " +
                               std::to_string(j + 2));
    if (j > 0 && ts[j] <= ts[j - 1])
      throw std::runtime_error(name + ": time axis must be strictly increasing");
  }
  return SampledSignal(dt, std::move(values));
}

SampledSignal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_signal_csv(in, path);
}

void write_signal_csv(std::ostream& out, const SampledSignal& s) {
  out << "t,re,im\n";
  for (std::size_t j = 0; j < s.size(); ++j)
    out << format_double(double(j) * s.dt) << ',' << format_double(s.values[j].real())
        << ',' << format_double(s.values[j].imag()) << '\n';
}

void write_signal_csv(const std::string& path, const SampledSignal& s) {
  auto out = open_out(path);
  write_signal_csv(out, s);
}

void write_pole_csv(const std::string& path, const PoleModel& model) {
  auto out = open_out(path);
  out << "omega,weight\n";
  for (std::size_t i = 0; i < model.omega.size(); ++i)
    out << format_double(model.omega[i]) << ',' << format_double(model.weight[i]) << '\n';
}

void write_spectrum_csv(const std::string& path, const Spectrum& sp) {
  auto out = open_out(path);
  out << "omega,re,im\n";
  for (std::size_t i = 0; i < sp.omegas.size(); ++i)
    out << format_double(sp.omegas[i]) << ',' << format_double(sp.values[i]) << ",0\n";
}

std::string format_report(const Report& rep) {
  std::ostringstream os;
  for (const auto& [key, value] : rep) os << key << ": " << value << '\n';
  return os.str();
}

void write_report(const std::string& path, const Report& rep) {
  auto out = open_out(path);
  out << format_report(rep);
}

}  // namespace posdef
