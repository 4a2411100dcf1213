#pragma once

#include <json.hpp>

#include "cchain/congruence/congruence.hpp"
#include "cchain/graph/graph.hpp"
#include "cchain/image/image.hpp"
#include "cchain/mlt/mlt.hpp"
#include "cchain/planner/planner.hpp"

namespace cchain {

using Json = nlohmann::json;  // std::map-backed objects: keys come out sorted

/// Format version written into every serialized record and cache entry.
inline constexpr int kFormatVersion = 1;

Json to_json(const EigenSystem& e);
Json to_json(const NewformOrbit& o);
Json to_json(const ImageClass& c);
Json to_json(const MltVerdict& v);
Json to_json(const CongruenceEdge& e);
Json to_json(const GoodDihedralPair& g);
Json to_json(const LocalType& t);
Json to_json(const SystemDescriptor& d);
Json to_json(const ChainMove& m);
Json to_json(const ChainPlan& p);
Json to_json(const MazurReport& r);

/// Parses a descriptor document and validates it; throws DomainError on any problem.
SystemDescriptor descriptor_from_json(const Json& j);

}  // namespace cchain
