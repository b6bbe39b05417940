#pragma once

namespace kwgraph {

inline constexpr const char* kToolName = "kwgraph";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace kwgraph
