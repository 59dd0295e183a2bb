// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace hypervisc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFFu) << (8 * (7 - i));
    return r;
  }
}

void write_component(const fs::path& file, const SpectralField& f) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + file.string() + " for writing");
  for (const Complex& c : f.coeffs()) {
    for (double part : {c.real(), c.imag()}) {
      const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(part));
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!out) throw InvalidArgument("write failed: " + file.string());
}

void read_component(const fs::path& file, SpectralField& f) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + file.string());
  auto coeffs = f.coeffs();
  for (auto& c : coeffs) {
    std::uint64_t bits[2];
    in.read(reinterpret_cast<char*>(bits), sizeof bits);
    if (!in) throw InvalidArgument("truncated checkpoint component: " + file.string());
    c = Complex(std::bit_cast<double>(to_little(bits[0])), std::bit_cast<double>(to_little(bits[1])));
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw InvalidArgument("checkpoint component has trailing data: " + file.string());
  }
}

}  // namespace

void write_checkpoint(const fs::path& dir, const State& state, const OperatorSpec& op) {
  fs::create_directories(dir);
  const Grid& g = state.field.grid();
  json comps = json::array();
  for (int c = 0; c < state.field.size(); ++c) {
    const std::string name = "u" + std::to_string(c) + ".bin";
    write_component(dir / name, state.field[c]);
    comps.push_back(name);
  }
  json manifest = {
      {"format", "hypervisc-checkpoint"},
      {"format_version", kCheckpointFormatVersion},
      {"endianness", "little"},
      {"equation", to_string(state.equation)},
      {"time", state.time},
      {"grid", {{"n", {g.n1(), g.n2(), g.n3()}}, {"dealias", g.dealias_fraction().str()}}},
      {"operator", {{"variant", to_string(op.variant)}, {"nu", op.nu}, {"epsilon", op.epsilon}, {"l", op.l}}},
      {"layout",
       {{"order", {"k3", "k2", "k1"}},
        {"shape", {g.n3(), g.n2(), g.n1_half()}},
        {"k1", "nonnegative"},
        {"value", "complex128 (re, im)"},
        {"components", comps}}},
  };
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw InvalidArgument("cannot write manifest in " + dir.string());
}

Checkpoint read_checkpoint(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InvalidArgument("no manifest.json in " + dir.string());
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed manifest in " + dir.string() + ": " + e.what());
  }
  try {
    if (m.at("format") != "hypervisc-checkpoint") throw InvalidArgument("not a hypervisc checkpoint");
    if (m.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw InvalidArgument("unsupported checkpoint format_version");
    }
    if (m.at("endianness") != "little") throw InvalidArgument("unsupported endianness");
    const auto n = m.at("grid").at("n").get<std::vector<int>>();
    if (n.size() != 3) throw InvalidArgument("grid.n must have 3 entries");
    const Grid grid(n[0], n[1], n[2], Rational::parse(m.at("grid").at("dealias").get<std::string>()));
    OperatorSpec op;
    const auto& o = m.at("operator");
    op.variant = parse_variant(o.at("variant").get<std::string>());
    op.nu = o.at("nu").get<double>();
    op.epsilon = o.at("epsilon").get<double>();
    op.l = o.at("l").get<double>();
    const Equation eq = parse_equation(m.at("equation").get<std::string>());
    const auto files = m.at("layout").at("components").get<std::vector<std::string>>();
    if (static_cast<int>(files.size()) != components(eq)) {
      throw InvalidArgument("component count does not match the equation");
    }
    VectorField field(grid, components(eq));
    for (int c = 0; c < field.size(); ++c) read_component(dir / files[static_cast<std::size_t>(c)], field[c]);
    return Checkpoint{State{eq, std::move(field), m.at("time").get<double>()}, op};
  } catch (const json::exception& e) {
    throw InvalidArgument("bad manifest in " + dir.string() + ": " + e.what());
  }
}

}  // namespace hypervisc
