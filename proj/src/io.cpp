#include "frameforge/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "frameforge/errors.hpp"

namespace frameforge::io {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

json entries_to_json(const Complex* data, Eigen::Index n) {
  json out = json::array();
  for (Eigen::Index i = 0; i < n; ++i) out.push_back({data[i].real(), data[i].imag()});
  return out;
}

Complex complex_from_json(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw ParseError("complex entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

const json& entries_field(const json& j, std::size_t expected) {
  if (!j.contains("entries") || !j.at("entries").is_array())
    throw ParseError("missing array field \"entries\"");
  const json& e = j.at("entries");
  if (e.size() != expected)
    throw ParseError("expected " + std::to_string(expected) + " entries, found " +
                     std::to_string(e.size()));
  return e;
}

}  // namespace

json vector_to_json(const CVector& v) {
  return {{"dim", v.size()}, {"entries", entries_to_json(v.data(), v.size())}};
}

CVector vector_from_json(const json& j) {
  const auto dim = field<std::size_t>(j, "dim");
  if (dim == 0) throw ParseError("vector dimension must be positive");
  const json& e = entries_field(j, dim);
  CVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(e[i]);
  return v;
}

json operator_to_json(const COperator& a) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) entries.push_back({a(i, k).real(), a(i, k).imag()});
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

COperator operator_from_json(const json& j) {
  const auto rows = field<std::size_t>(j, "rows");
  const auto cols = field<std::size_t>(j, "cols");
  if (rows == 0 || cols == 0) throw ParseError("operator dimensions must be positive");
  const json& e = entries_field(j, rows * cols);
  COperator a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(e[i * cols + k]);
  return a;
}

json sequence_to_json(const VectorSequence& seq) {
  json vectors = json::array();
  for (const CVector& v : seq.vectors()) vectors.push_back(vector_to_json(v));
  return {{"space_dim", seq.space_dim()}, {"vectors", std::move(vectors)}};
}

VectorSequence sequence_from_json(const json& j) {
  const auto dim = field<std::size_t>(j, "space_dim");
  if (!j.contains("vectors") || !j.at("vectors").is_array())
    throw ParseError("missing array field \"vectors\"");
  std::vector<CVector> vectors;
  for (const json& v : j.at("vectors")) vectors.push_back(vector_from_json(v));
  try {
    return VectorSequence(dim, std::move(vectors));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid sequence: ") + e.what());
  }
}

json minimal_sum_to_json(const MinimalSumSequence& ms) {
  json groups = json::array();
  for (const auto& group : ms.groups()) {
    json g = json::array();
    for (const VectorSequence& s : group) g.push_back(sequence_to_json(s));
    groups.push_back(std::move(g));
  }
  return {{"d", ms.d()}, {"r", ms.r()}, {"groups", std::move(groups)}};
}

MinimalSumSequence minimal_sum_from_json(const json& j) {
  const auto d = field<std::size_t>(j, "d");
  const auto r = field<std::size_t>(j, "r");
  if (!j.contains("groups") || !j.at("groups").is_array() || j.at("groups").size() != d)
    throw ParseError("\"groups\" must hold d groups");
  std::vector<std::vector<VectorSequence>> groups;
  for (const json& g : j.at("groups")) {
    if (!g.is_array() || g.size() != r) throw ParseError("each group must hold r sequences");
    std::vector<VectorSequence> group;
    for (const json& s : g) group.push_back(sequence_from_json(s));
    groups.push_back(std::move(group));
  }
  return build_minimal_sum(std::move(groups));
}

json shape_to_json(const BipartiteShape& s) {
  return {{"h1", s.h1}, {"h2", s.h2}, {"k1", s.k1}, {"k2", s.k2}};
}

BipartiteShape shape_from_json(const json& j) {
  BipartiteShape s{field<std::size_t>(j, "h1"), field<std::size_t>(j, "h2"),
                   field<std::size_t>(j, "k1"), field<std::size_t>(j, "k2")};
  try {
    s.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return s;
}

json fsr_to_json(const FSROperator& f) {
  json terms = json::array();
  for (const FactorPair& t : f.terms())
    terms.push_back({{"A", operator_to_json(t.first)}, {"B", operator_to_json(t.second)}});
  return {{"shape", shape_to_json(f.shape())}, {"terms", std::move(terms)}};
}

FSROperator fsr_from_json(const json& j) {
  if (!j.contains("shape")) throw ParseError("missing field \"shape\"");
  const BipartiteShape shape = shape_from_json(j.at("shape"));
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("missing array field \"terms\"");
  std::vector<FactorPair> terms;
  for (const json& t : j.at("terms")) {
    if (!t.contains("A") || !t.contains("B")) throw ParseError("terms need \"A\" and \"B\"");
    terms.push_back({operator_from_json(t.at("A")), operator_from_json(t.at("B"))});
  }
  try {
    return FSROperator(shape, std::move(terms));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid FSR operator: ") + e.what());
  }
}

json window_to_json(const ZNWindow& w) {
  json out = vector_to_json(w.g);
  out["N"] = w.N;
  out["generator"] = w.generator;
  return out;
}

ZNWindow window_from_json(const json& j) {
  CVector g = vector_from_json(j);
  const std::string generator = j.contains("generator") && j.at("generator").is_string()
                                    ? j.at("generator").get<std::string>()
                                    : "file";
  if (j.contains("N") && field<std::size_t>(j, "N") != static_cast<std::size_t>(g.size()))
    throw ParseError("window \"N\" disagrees with \"dim\"");
  return make_window(std::move(g), generator);
}

json frame_report_to_json(const FrameReport& r) {
  return {{"A", r.lower_bound}, {"B", r.bessel_bound}, {"is_frame", r.is_frame}, {"is_riesz", r.is_riesz}};
}

json main_theorem_report_to_json(const MainTheoremReport& r) {
  json out = frame_report_to_json(r.sum);
  json groups = json::array();
  for (const GroupFrameStats& g : r.per_group)
    groups.push_back({{"group", g.group}, {"lambda_min", g.lambda_min}, {"lambda_max", g.lambda_max},
                      {"is_frame", g.is_frame}});
  out["per_group"] = std::move(groups);
  out["claim_applies"] = r.claim_applies;
  out["bessel_sum_bound"] = r.bessel_sum_bound;
  out["bessel_subadditive"] = r.bessel_subadditive;
  out["product_law"] = r.product_law ? json(*r.product_law) : json(nullptr);
  out["holds"] = r.holds;
  out["note"] = r.note;
  return out;
}

json disjunction_report_to_json(const DisjunctionReport& r) {
  json out = frame_report_to_json(r.sum);
  out["claim_applies"] = r.claim_applies;
  out["branch"] = r.branch;
  out["first_term_frame"] = r.first_term_frame;
  out["second_term_frame"] = r.second_term_frame;
  out["removable_index"] = r.removable_index ? json(*r.removable_index) : json(nullptr);
  json groups = json::array();
  for (std::size_t j = 0; j < r.component_frames.size(); ++j)
    groups.push_back({{"group", j}, {"component_frames", r.component_frames[j]}});
  out["per_group"] = std::move(groups);
  out["holds"] = r.holds;
  return out;
}

json perturbation_report_to_json(const PerturbationReport& r) {
  json out = frame_report_to_json(r.frame);
  out["N"] = r.lattice.N;
  out["a"] = r.lattice.a;
  out["b"] = r.lattice.b;
  out["alpha"] = r.alpha;
  out["beta"] = r.beta;
  out["c_phase"] = r.c_phase;
  out["conditions_hold"] = r.conditions_hold;
  if (!r.conditions_hold) out["condition_violation"] = r.condition_violation;
  out["lambda_ratio"] = r.ratio;
  out["spectrum"] = std::vector<double>(r.spectrum.begin(), r.spectrum.end());
  return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "N,a,b,count,A,B,is_frame,is_riesz,ab_over_N\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (const SweepRow& r : rows) {
    line.str("");
    line << r.N << ',' << r.a << ',' << r.b << ',' << r.count << ',' << r.A << ',' << r.B << ','
         << (r.is_frame ? "true" : "false") << ',' << (r.is_riesz ? "true" : "false") << ','
         << r.ab_over_N << '\n';
    out << line.str();
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw ParseError("write failed for " + path.string());
}

}  // namespace frameforge::io
