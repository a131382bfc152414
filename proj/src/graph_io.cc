//
// Copyright 2026 The privcut Authors
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
//

#include "privcut/graph_io.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "privcut/error.h"

namespace privcut {
namespace {

constexpr char kMagic[8] = {'P', 'C', 'U', 'T', 'G', 'R', 'P', 'H'};
constexpr std::uint32_t kBinaryVersion = 1;

void PutU32(std::ostream& out, std::uint32_t x) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b.data(), 4);
}

void PutU64(std::ostream& out, std::uint64_t x) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}

std::uint64_t GetUnsigned(std::istream& in, int bytes) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), bytes);
  if (in.gcount() != bytes) throw ParseError("truncated binary graph", 0);
  std::uint64_t x = 0;
  for (int i = 0; i < bytes; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return x;
}

bool ParseVertexCountComment(const std::string& line, int* n) {
  const auto pos = line.find("vertices:");
  if (pos == std::string::npos) return false;
  std::istringstream rest(line.substr(pos + 9));
  int value = -1;
  if (!(rest >> value) || value < 0) return false;
  *n = value;
  return true;
}

}  // namespace

GraphFormat FormatForPath(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".bin") {
    return GraphFormat::kDenseBinary;
  }
  return GraphFormat::kEdgeList;
}

Graph ParseEdgeList(std::istream& in, std::optional<int> n) {
  struct Line {
    int number;
    Vertex u, v;
    double w;
  };
  std::vector<Line> lines;
  int header_n = -1;
  int max_vertex = -1;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    const auto hash = text.find('#');
    if (hash != std::string::npos) {
      int value = 0;
      if (ParseVertexCountComment(text.substr(hash), &value)) header_n = value;
      text = text.substr(0, hash);
    }
    std::istringstream fields(text);
    std::string first;
    if (!(fields >> first)) continue;
    fields.clear();
    fields.seekg(0);
    long long u = 0, v = 0;
    double w = 0.0;
    std::string extra;
    if (!(fields >> u >> v >> w)) {
      throw ParseError("expected \"u v w\"", number);
    }
    if (fields >> extra) throw ParseError("trailing token '" + extra + "'", number);
    if (u < 0 || v < 0) throw ParseError("negative vertex id", number);
    if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u), number);
    if (!std::isfinite(w)) throw ParseError("non-finite weight", number);
    if (w < 0.0) throw ParseError("negative weight", number);
    if (u > 1'000'000'000 || v > 1'000'000'000) {
      throw ParseError("vertex id too large", number);
    }
    lines.push_back({number, static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    max_vertex = std::max<int>(max_vertex, static_cast<int>(std::max(u, v)));
  }
  int count = n.value_or(header_n >= 0 ? header_n : max_vertex + 1);
  if (count < 0) count = 0;
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(PairCount(count));
  std::vector<char> seen(PairCount(count), 0);
  for (const Line& l : lines) {
    if (l.u >= count || l.v >= count) {
      throw ParseError("vertex out of range for n=" + std::to_string(count),
                       l.number);
    }
    const std::size_t p = PairIndex(count, l.u, l.v);
    if (seen[p]) throw ParseError("duplicate pair", l.number);
    seen[p] = 1;
    weights[p] = l.w;
  }
  return Graph(count, std::move(weights));
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  out << "# privcut edge list\n# vertices: " << g.n() << "\n";
  if (!g.name().empty()) out << "# name: " << g.name() << "\n";
  char buf[64];
  std::size_t p = 0;
  for (Vertex i = 0; i < g.n(); ++i) {
    for (Vertex j = i + 1; j < g.n(); ++j, ++p) {
      const double w = g.weights()[p];
      if (w == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", w);
      out << i << ' ' << j << ' ' << buf << '\n';
    }
  }
}

Graph ParseDenseBinary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0) {
    throw ParseError("bad magic in binary graph", 0);
  }
  const auto version = GetUnsigned(in, 4);
  if (version != kBinaryVersion) {
    throw ParseError("unsupported binary graph version " +
                         std::to_string(version),
                     0);
  }
  const auto n = GetUnsigned(in, 4);
  if (n > 100000) throw ParseError("vertex count too large", 0);
  Eigen::VectorXd w(PairCount(static_cast<int>(n)));
  for (Eigen::Index p = 0; p < w.size(); ++p) {
    const std::uint64_t bits = GetUnsigned(in, 8);
    double value;
    std::memcpy(&value, &bits, sizeof(value));
    w[p] = value;
  }
  for (Eigen::Index p = 0; p < w.size(); ++p) {
    if (!(w[p] >= 0.0) || !std::isfinite(w[p])) {
      throw ParseError("invalid weight at pair " + std::to_string(p), 0);
    }
  }
  return Graph(static_cast<int>(n), std::move(w));
}

void WriteDenseBinary(std::ostream& out, const Graph& g) {
  out.write(kMagic, 8);
  PutU32(out, kBinaryVersion);
  PutU32(out, static_cast<std::uint32_t>(g.n()));
  for (Eigen::Index p = 0; p < g.weights().size(); ++p) {
    std::uint64_t bits;
    const double value = g.weights()[p];
    std::memcpy(&bits, &value, sizeof(bits));
    PutU64(out, bits);
  }
}

Graph ReadGraph(const std::string& path, GraphFormat format,
                std::optional<int> n) {
  std::ifstream in(path, format == GraphFormat::kDenseBinary
                             ? std::ios::in | std::ios::binary
                             : std::ios::in);
  if (!in) throw InvalidArgumentError("cannot open graph file " + path);
  return format == GraphFormat::kDenseBinary ? ParseDenseBinary(in)
                                             : ParseEdgeList(in, n);
}

void WriteGraph(const std::string& path, const Graph& g, GraphFormat format) {
  std::ofstream out(path, format == GraphFormat::kDenseBinary
                              ? std::ios::out | std::ios::binary
                              : std::ios::out);
  if (!out) throw InvalidArgumentError("cannot write graph file " + path);
  if (format == GraphFormat::kDenseBinary) {
    WriteDenseBinary(out, g);
  } else {
    WriteEdgeList(out, g);
  }
}

}  // namespace privcut
