#pragma once

#include <string>

#include "pencil/potential.hpp"
#include "pencil/spectrum.hpp"
#include "pencil/vtable.hpp"

namespace pencil {

// JSON formats (complex numbers are always [re, im] pairs):
//   potential: {"beta": b, "p": [[re,im],...], "q": [[re,im],...]}
//   vtable:    {"sign": "+"|"-", "M": m, "single": [...], "double": [[...],...]}
//   spectral:  {"order": n, "beta_hint": b?, "eigenvalues": [...],
//               "circles": [...], "axis_probes": [...]}
// Emission is deterministic: fixed key order, every double printed with
// %.17g, so identical data serializes to identical bytes.

std::string format_double(double v);     // %.17g
std::string json_complex(Complex z);     // "[re,im]"

std::string to_json(const FourierPotential& pot);
std::string to_json(const VTable& vt);
std::string to_json(const SpectralData& sd);

FourierPotential parse_potential_json(const std::string& text);
VTable parse_vtable_json(const std::string& text);
SpectralData parse_spectral_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

FourierPotential read_potential_file(const std::string& path);
SpectralData read_spectral_file(const std::string& path);

}  // namespace pencil
