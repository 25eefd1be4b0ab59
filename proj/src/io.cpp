#include "pencil/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pencil/errors.hpp"

namespace pencil {

namespace {

using nlohmann::json;

// ---- emission (hand-rolled: fixed key order, %.17g, byte-stable) ----

void put_complex_array(std::string& s, const Eigen::VectorXcd& v) {
  s += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += json_complex(v[i]);
  }
  s += ']';
}

// ---- parsing (nlohmann does the lexing; shapes are checked here) ----

json parse_checked(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

double get_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex get_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(std::string(what) + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::VectorXcd get_complex_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  Eigen::VectorXcd out(j.size());
  for (size_t i = 0; i < j.size(); ++i) out[i] = get_complex(j[i], what);
  return out;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // canonical zero; "-0" would not survive a parse
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_complex(Complex z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string to_json(const FourierPotential& pot) {
  std::string s = "{\"beta\":" + format_double(pot.beta) + ",\"p\":";
  put_complex_array(s, pot.p);
  s += ",\"q\":";
  put_complex_array(s, pot.q);
  s += '}';
  return s;
}

std::string to_json(const VTable& vt) {
  std::string s = "{\"sign\":\"";
  s += (vt.sign == Sign::plus ? '+' : '-');
  s += "\",\"M\":" + std::to_string(vt.M) + ",\"single\":";
  put_complex_array(s, vt.single);
  s += ",\"double\":[";
  for (int a = 1; a <= vt.M; ++a) {
    if (a > 1) s += ',';
    put_complex_array(s, vt.dbl[a - 1]);
  }
  s += "],\"divergence_suspected\":";
  s += (vt.divergence_suspected ? "true" : "false");
  s += '}';
  return s;
}

std::string to_json(const SpectralData& sd) {
  std::string s = "{\"order\":" + std::to_string(sd.order) + ",\"beta_hint\":";
  s += sd.beta_hint ? format_double(*sd.beta_hint) : "null";
  s += ",\"eigenvalues\":[";
  for (size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    const EigenvalueRecord& r = sd.eigenvalues[i];
    if (i) s += ',';
    s += "{\"sector\":" + std::to_string(r.sector);
    s += ",\"lambda\":" + json_complex(r.lambda);
    s += ",\"c11_plus\":" + json_complex(r.c11_plus);
    s += ",\"c11_minus\":" + json_complex(r.c11_minus) + "}";
  }
  s += "],\"circles\":[";
  for (size_t i = 0; i < sd.circles.size(); ++i) {
    const CircleData& c = sd.circles[i];
    if (i) s += ',';
    s += "{\"center\":" + json_complex(c.center);
    s += ",\"radius\":" + format_double(c.radius);
    s += ",\"samples\":[";
    for (size_t k = 0; k < c.samples.size(); ++k) {
      if (k) s += ',';
      s += "{\"lambda\":" + json_complex(c.samples[k].lambda);
      s += ",\"c11\":" + json_complex(c.samples[k].c11);
      s += ",\"c12\":" + json_complex(c.samples[k].c12) + "}";
    }
    s += "]}";
  }
  s += "],\"axis_probes\":[";
  for (size_t i = 0; i < sd.axis_probes.size(); ++i) {
    if (i) s += ',';
    s += "{\"lambda\":" + json_complex(sd.axis_probes[i].lambda);
    s += ",\"c11\":" + json_complex(sd.axis_probes[i].c11);
    s += ",\"c12\":" + json_complex(sd.axis_probes[i].c12) + "}";
  }
  s += "]}";
  return s;
}

FourierPotential parse_potential_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw ParseError("potential must be a JSON object");
  const double beta = get_number(field(j, "beta"), "beta");
  const Eigen::VectorXcd p = get_complex_array(field(j, "p"), "p");
  const Eigen::VectorXcd q = get_complex_array(field(j, "q"), "q");
  return validate_potential(beta, p, q);
}

VTable parse_vtable_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw ParseError("table must be a JSON object");
  VTable vt;
  const json& sign = field(j, "sign");
  if (!sign.is_string() || (sign != "+" && sign != "-")) {
    throw ParseError("sign must be \"+\" or \"-\"");
  }
  vt.sign = sign == "+" ? Sign::plus : Sign::minus;
  const json& M = field(j, "M");
  if (!M.is_number_integer() || M.get<int>() < 0) {
    throw ParseError("M must be a non-negative integer");
  }
  vt.M = M.get<int>();
  vt.single = get_complex_array(field(j, "single"), "single");
  if (vt.single.size() != 0 && vt.single.size() != vt.M) {
    throw ParseError("single must be empty or carry M entries");
  }
  const json& dbl = field(j, "double");
  if (!dbl.is_array() || static_cast<int>(dbl.size()) != vt.M) {
    throw ParseError("double must carry M columns");
  }
  for (int a = 1; a <= vt.M; ++a) {
    Eigen::VectorXcd col = get_complex_array(dbl[a - 1], "double column");
    if (col.size() != a) {
      throw ParseError("double column " + std::to_string(a) +
                       " must carry " + std::to_string(a) + " entries");
    }
    vt.dbl.push_back(std::move(col));
  }
  const json& div = field(j, "divergence_suspected");
  if (!div.is_boolean()) throw ParseError("divergence_suspected must be a boolean");
  vt.divergence_suspected = div.get<bool>();
  return vt;
}

SpectralData parse_spectral_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw ParseError("spectral data must be a JSON object");
  SpectralData sd;
  const json& order = field(j, "order");
  if (!order.is_number_integer() || order.get<int>() < 0) {
    throw ParseError("order must be a non-negative integer");
  }
  sd.order = order.get<int>();
  const json& bh = field(j, "beta_hint");
  if (!bh.is_null()) sd.beta_hint = get_number(bh, "beta_hint");
  const json& ev = field(j, "eigenvalues");
  if (!ev.is_array()) throw ParseError("eigenvalues must be an array");
  for (const json& r : ev) {
    EigenvalueRecord rec;
    const json& sec = field(r, "sector");
    if (!sec.is_number_integer() || sec.get<int>() < 0 || sec.get<int>() > 3) {
      throw ParseError("sector must be an integer 0..3");
    }
    rec.sector = sec.get<int>();
    rec.lambda = get_complex(field(r, "lambda"), "lambda");
    rec.c11_plus = get_complex(field(r, "c11_plus"), "c11_plus");
    rec.c11_minus = get_complex(field(r, "c11_minus"), "c11_minus");
    sd.eigenvalues.push_back(rec);
  }
  const json& circles = field(j, "circles");
  if (!circles.is_array()) throw ParseError("circles must be an array");
  for (const json& c : circles) {
    CircleData cd;
    cd.center = get_complex(field(c, "center"), "center");
    cd.radius = get_number(field(c, "radius"), "radius");
    const json& samples = field(c, "samples");
    if (!samples.is_array() || samples.empty()) {
      throw ParseError("samples must be a non-empty array");
    }
    for (const json& s : samples) {
      CircleSample smp;
      smp.lambda = get_complex(field(s, "lambda"), "lambda");
      smp.c11 = get_complex(field(s, "c11"), "c11");
      smp.c12 = get_complex(field(s, "c12"), "c12");
      cd.samples.push_back(smp);
    }
    sd.circles.push_back(std::move(cd));
  }
  const json& probes = field(j, "axis_probes");
  if (!probes.is_array()) throw ParseError("axis_probes must be an array");
  for (const json& pr : probes) {
    AxisProbe ap;
    ap.lambda = get_complex(field(pr, "lambda"), "lambda");
    ap.c11 = get_complex(field(pr, "c11"), "c11");
    ap.c12 = get_complex(field(pr, "c12"), "c12");
    sd.axis_probes.push_back(ap);
  }
  return sd;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

FourierPotential read_potential_file(const std::string& path) {
  return parse_potential_json(read_file(path));
}

SpectralData read_spectral_file(const std::string& path) {
  return parse_spectral_json(read_file(path));
}

}  // namespace pencil
