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

#ifndef PRIVCUT_GRAPH_IO_H_
#define PRIVCUT_GRAPH_IO_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "privcut/graph.h"

namespace privcut {

enum class GraphFormat {
  // One "u v w" line per edge, 0-based vertices. '#' starts a comment. A
  // "# vertices: N" comment fixes the vertex count.
  kEdgeList,
  // "PCUTGRPH", uint32 version, uint32 n, then C(n,2) little-endian float64
  // weights in canonical pair order.
  kDenseBinary,
};

// Picks the format from the file extension: ".bin" means dense binary.
GraphFormat FormatForPath(const std::string& path);

// `n` overrides the vertex count; otherwise the header comment or the largest
// vertex id decides.
Graph ParseEdgeList(std::istream& in, std::optional<int> n = std::nullopt);
void WriteEdgeList(std::ostream& out, const Graph& g);

Graph ParseDenseBinary(std::istream& in);
void WriteDenseBinary(std::ostream& out, const Graph& g);

Graph ReadGraph(const std::string& path, GraphFormat format,
                std::optional<int> n = std::nullopt);
void WriteGraph(const std::string& path, const Graph& g, GraphFormat format);

}  // namespace privcut

#endif  // PRIVCUT_GRAPH_IO_H_
