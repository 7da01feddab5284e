#pragma once

#include "dlgraph/dl_graph.hpp"
#include "json.hpp"

namespace dlg {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// {"params":[q1,...],"vertices":[canonical strings],"edges":[[i,j],...],
///  "distances":[...]} plus a version stamp.
nlohmann::json graph_to_json(const BallGraph& g);

BallGraph graph_from_json(const nlohmann::json& j);

}  // namespace dlg
