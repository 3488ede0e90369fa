#pragma once

#include <string>

#include <json.hpp>

#include "ctxdim/bounds.hpp"
#include "ctxdim/graph.hpp"
#include "ctxdim/membership.hpp"

namespace ctxdim::report {

using json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so reports do not carry the last-bit
/// noise of floating point. Non-finite values become null.
json number(double x);

json to_json(const Graph& g);
json to_json(const VectorSystem& v);
json to_json(const Verdict& v);
json to_json(const BoundReport& r);
json to_json(const GapReport& r);

/// Two-space indented dump with a trailing newline. Wall-clock times are
/// never written, so equal inputs give byte-identical output.
std::string dump(const json& doc);

/// Plain-text summary of a gap report.
std::string gap_table(const GapReport& r);

}  // namespace ctxdim::report
