// Copyright 2026 The robust-iswap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "robust_iswap/pulses.hpp"

namespace robust_iswap {

namespace {

using Json = nlohmann::ordered_json;

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double number(const Json& v, const std::string& where) {
  if (v.is_null()) throw NanFieldError(where + ": NaN or null value");
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw NanFieldError(where + ": non-finite value");
  return x;
}

std::vector<double> number_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json finite(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json finite_list(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(finite(x));
  return arr;
}

}  // namespace

std::string pulse_to_json(const Pulse& p) {
  Json doc;
  doc["version"] = kPulseFormatVersion;
  doc["layout"] = {{"kind", layout_name(p.layout.kind)},
                   {"delta", finite(p.layout.delta)},
                   {"omega_max", finite(p.layout.omega_max)}};
  doc["duration"] = finite(p.duration);

  const auto names = channel_names(p.layout.kind);
  Json basis;
  Json channels = Json::object();
  if (const auto* pw = std::get_if<PiecewiseBasis>(&p.basis)) {
    basis["type"] = "piecewise";
    basis["steps"] = pw->steps();
    for (std::size_t c = 0; c < pw->values.size() && c < names.size(); ++c) {
      channels[names[c]] = finite_list(pw->values[c]);
    }
  } else {
    const auto& cb = std::get<ChebyshevBasis>(p.basis);
    basis["type"] = "chebyshev";
    basis["order"] = cb.order();
    for (std::size_t c = 0; c < cb.coeffs.size() && c < names.size(); ++c) {
      channels[names[c]] = finite_list(cb.coeffs[c]);
    }
  }
  basis["channels"] = channels;
  doc["basis"] = basis;

  Json frames = Json::array();
  for (const auto& r : p.frames.triples) {
    frames.push_back(
        {{"theta", finite(r.theta)}, {"phi", finite(r.phi)}, {"lambda", finite(r.lambda)}});
  }
  doc["frames"] = frames;

  Json meta = Json::object();
  const auto& m = p.metadata;
  if (m.cost) {
    meta["fidelity"] = finite(m.cost->fidelity);
    meta["robustness"] = finite(m.cost->robustness);
    meta["cost"] = finite(m.cost->cost);
  }
  if (m.seed) meta["seed"] = *m.seed;
  if (m.iterations) meta["iterations"] = *m.iterations;
  if (m.converged) meta["converged"] = *m.converged;
  if (m.sampling_steps) meta["sampling_steps"] = *m.sampling_steps;
  if (!m.notes.empty()) {
    Json notes = Json::object();
    for (const auto& [k, v] : m.notes) notes[k] = v;
    meta["notes"] = notes;
  }
  doc["metadata"] = meta;
  return doc.dump(2) + "\n";
}

static Pulse parse_pulse(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("pulse file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("pulse document must be an object");
  const Json& version = field(doc, "version", "pulse");
  if (!version.is_string()) throw SchemaError("pulse: version must be a string");
  if (version.get<std::string>() != kPulseFormatVersion) {
    throw VersionError("pulse: unsupported version '" + version.get<std::string>() +
                       "', reader understands '" + kPulseFormatVersion + "'");
  }

  Pulse p;
  const Json& layout = field(doc, "layout", "pulse");
  const Json& kind = field(layout, "kind", "layout");
  if (!kind.is_string()) throw SchemaError("layout.kind must be a string");
  try {
    p.layout.kind = parse_layout(kind.get<std::string>());
  } catch (const DomainError& e) {
    throw SchemaError(std::string("layout.kind: ") + e.what());
  }
  p.layout.delta = number(field(layout, "delta", "layout"), "layout.delta");
  p.layout.omega_max = number(field(layout, "omega_max", "layout"), "layout.omega_max");
  p.duration = number(field(doc, "duration", "pulse"), "duration");

  const Json& basis = field(doc, "basis", "pulse");
  const Json& type = field(basis, "type", "basis");
  const Json& channels = field(basis, "channels", "basis");
  const auto names = channel_names(p.layout.kind);
  std::vector<std::vector<double>> values;
  for (const auto& name : names) {
    values.push_back(number_list(field(channels, name.c_str(), "basis.channels"),
                                 "basis.channels." + name));
  }
  if (type == "piecewise") {
    const Json& steps = field(basis, "steps", "basis");
    if (!steps.is_number_integer()) throw SchemaError("basis.steps must be an integer");
    for (const auto& v : values) {
      if (static_cast<std::int64_t>(v.size()) != steps.get<std::int64_t>()) {
        throw SchemaError("basis.steps does not match channel length");
      }
    }
    p.basis = PiecewiseBasis{values};
  } else if (type == "chebyshev") {
    const Json& order = field(basis, "order", "basis");
    if (!order.is_number_integer()) throw SchemaError("basis.order must be an integer");
    for (const auto& v : values) {
      if (static_cast<std::int64_t>(v.size()) != order.get<std::int64_t>() + 1) {
        throw SchemaError("basis.order does not match coefficient count");
      }
    }
    p.basis = ChebyshevBasis{values};
  } else {
    throw SchemaError("basis.type must be 'piecewise' or 'chebyshev'");
  }

  const Json& frames = field(doc, "frames", "pulse");
  if (!frames.is_array()) throw SchemaError("frames must be an array");
  p.frames.triples.clear();
  for (const auto& f : frames) {
    p.frames.triples.push_back({number(field(f, "theta", "frames"), "frames.theta"),
                                number(field(f, "phi", "frames"), "frames.phi"),
                                number(field(f, "lambda", "frames"), "frames.lambda")});
  }

  if (doc.contains("metadata")) {
    const Json& meta = doc.at("metadata");
    if (!meta.is_object()) throw SchemaError("metadata must be an object");
    auto& m = p.metadata;
    if (meta.contains("cost")) {
      m.cost = CostBreakdown{number(field(meta, "fidelity", "metadata"), "metadata.fidelity"),
                             number(field(meta, "robustness", "metadata"), "metadata.robustness"),
                             number(meta.at("cost"), "metadata.cost")};
    }
    if (meta.contains("seed")) m.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("iterations")) m.iterations = meta.at("iterations").get<int>();
    if (meta.contains("converged")) m.converged = meta.at("converged").get<bool>();
    if (meta.contains("sampling_steps")) {
      m.sampling_steps = meta.at("sampling_steps").get<Eigen::Index>();
    }
    if (meta.contains("notes")) {
      for (const auto& [k, v] : meta.at("notes").items()) {
        m.notes[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
  }

  try {
    p.validate();
  } catch (const Error& e) {
    throw SchemaError(std::string("pulse violates invariants: ") + e.what());
  }
  return p;
}

Pulse pulse_from_json(const std::string& text) {
  try {
    return parse_pulse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("pulse file: ") + e.what());
  }
}

void write_pulse(const Pulse& p, const std::string& path) {
  p.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << pulse_to_json(p);
  if (!out) throw IoError("failed writing '" + path + "'");
}

Pulse read_pulse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return pulse_from_json(buf.str());
}

}  // namespace robust_iswap
