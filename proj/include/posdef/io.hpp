#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "posdef/poles.hpp"
#include "posdef/spectrum.hpp"

namespace posdef {

// Signal files: header "t,re,im", one row per sample, t uniform from 0
// (validated to 1e-9 relative). Values are written with 17 significant
// digits so a read-back is bit-faithful.
SampledSignal read_signal_csv(const std::string& path);
SampledSignal read_signal_csv(std::istream& in, const std::string& name);
void write_signal_csv(const std::string& path, const SampledSignal& s);
void write_signal_csv(std::ostream& out, const SampledSignal& s);

// Pole table: header "omega,weight".
void write_pole_csv(const std::string& path, const PoleModel& model);

// Spectrum table: header "omega,re,im" (im is zero by construction).
void write_spectrum_csv(const std::string& path, const Spectrum& sp);

// Reports are "key: value" lines so tests can grep exact fields.
using Report = std::vector<std::pair<std::string, std::string>>;
void write_report(const std::string& path, const Report& rep);
std::string format_report(const Report& rep);

std::string format_double(double x);  // %.17g

}  // namespace posdef
