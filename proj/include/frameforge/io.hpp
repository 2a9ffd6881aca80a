#pragma once

// File formats shared by the library and the CLI.
//
//   vector    {"dim": n, "entries": [[re, im], ...]}
//   operator  {"rows": m, "cols": n, "entries": [[re, im], ...]}  (row-major)
//   sequence  {"space_dim": m, "vectors": [vector, ...]}
//   min. sum  {"d": d, "r": r, "groups": [[sequence, ...], ...]}
//   FSR       {"shape": {"h1", "h2", "k1", "k2"}, "terms": [{"A": operator, "B": operator}, ...]}
//   window    vector fields plus {"N": n, "generator": name}
//   sweep     CSV with header N,a,b,count,A,B,is_frame,is_riesz,ab_over_N

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "frameforge/gabor.hpp"
#include "frameforge/hilbert.hpp"
#include "frameforge/schmidt.hpp"
#include "frameforge/sequences.hpp"

namespace frameforge::io {

using nlohmann::json;

json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j);

json operator_to_json(const COperator& a);
COperator operator_from_json(const json& j);

json sequence_to_json(const VectorSequence& seq);
VectorSequence sequence_from_json(const json& j);

json minimal_sum_to_json(const MinimalSumSequence& ms);
MinimalSumSequence minimal_sum_from_json(const json& j);

json shape_to_json(const BipartiteShape& shape);
BipartiteShape shape_from_json(const json& j);

json fsr_to_json(const FSROperator& f);
FSROperator fsr_from_json(const json& j);

json window_to_json(const ZNWindow& w);
ZNWindow window_from_json(const json& j);

json frame_report_to_json(const FrameReport& r);
json main_theorem_report_to_json(const MainTheoremReport& r);
json disjunction_report_to_json(const DisjunctionReport& r);
json perturbation_report_to_json(const PerturbationReport& r);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Throws ParseError on I/O or JSON syntax errors.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace frameforge::io
