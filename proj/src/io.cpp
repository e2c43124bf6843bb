#include "nprclust/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace nprc {

namespace {

using json = nlohmann::json;

std::int64_t id_of(Vertex v, const std::vector<std::int64_t>& ids) {
  return ids.empty() ? static_cast<std::int64_t>(v) : ids.at(static_cast<std::size_t>(v));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

json record_json(const ExperimentRecord& r, const std::vector<std::int64_t>& ids) {
  json per_p = json::array();
  for (const auto& q : r.per_p)
    per_p.push_back({{"p", q.p},
                     {"phi", q.phi},
                     {"fscore", q.fscore},
                     {"iterations", q.iterations},
                     {"status", to_string(q.status)}});
  json j = {{"repetition", r.repetition},
            {"seed", id_of(r.seed, ids)},
            {"best_p", r.best_p},
            {"phi", r.phi},
            {"fscore", r.fscore},
            {"iterations", r.iterations},
            {"wall_seconds", r.wall_seconds},
            {"cluster_size", r.cluster_size},
            {"truth_size", r.truth_size},
            {"per_p", per_p}};
  if (!r.ok()) j["error"] = r.error;
  return j;
}

json aggregate_json(const Aggregate& a) {
  return {{"mean", a.mean}, {"std", a.stddev}, {"count", a.count}};
}

}  // namespace

std::string trace_jsonl(const LmTrace& trace) {
  std::string out;
  for (const auto& it : trace.iterations) {
    json j = {{"iter", it.iter},
              {"psi", it.psi},
              {"grad_norm", it.grad_norm},
              {"lambda", it.lambda},
              {"rho", it.rho},
              {"accepted", it.accepted}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_trace_jsonl(const LmTrace& trace, const std::string& path) {
  write_text(path, trace_jsonl(trace));
}

void write_profile_csv(const SweepProfile& profile, const std::string& path,
                       const std::vector<std::int64_t>& ids) {
  auto out = open_out(path);
  out << "j,vertex_id,phi\n";
  for (std::size_t j = 0; j < profile.phi.size(); ++j)
    out << j + 1 << ',' << id_of(profile.ordering[j], ids) << ',' << profile.phi[j] << '\n';
  finish(out, path);
}

void write_solution_csv(const Vector& x, const std::string& path,
                        const std::vector<std::int64_t>& ids) {
  auto out = open_out(path);
  out << "vertex_id,value\n";
  for (Eigen::Index v = 0; v < x.size(); ++v)
    out << id_of(static_cast<Vertex>(v), ids) << ',' << x[v] << '\n';
  finish(out, path);
}

void write_members(const std::vector<Vertex>& members, const std::string& path,
                   const std::vector<std::int64_t>& ids) {
  auto out = open_out(path);
  for (Vertex v : members) out << id_of(v, ids) << '\n';
  finish(out, path);
}

void write_report_csv(const ExperimentReport& report, const std::string& path,
                      const std::vector<std::int64_t>& ids) {
  auto out = open_out(path);
  out << "repetition,seed,best_p,phi,fscore,iterations,wall_seconds,cluster_size,truth_size,error\n";
  for (const auto& r : report.records) {
    std::string err = r.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    out << r.repetition << ',' << id_of(r.seed, ids) << ',' << r.best_p << ',' << r.phi << ','
        << r.fscore << ',' << r.iterations << ',' << r.wall_seconds << ',' << r.cluster_size << ','
        << r.truth_size << ',' << err << '\n';
  }
  out << "mean,," << "," << report.phi.mean << ',' << report.fscore.mean << ",,,,,\n";
  out << "std,," << "," << report.phi.stddev << ',' << report.fscore.stddev << ",,,,,\n";
  finish(out, path);
}

std::string report_json(const ExperimentReport& report, const std::vector<std::int64_t>& ids) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_json(r, ids));
  json j = {{"method", to_string(report.method)},
            {"records", records},
            {"phi", aggregate_json(report.phi)},
            {"fscore", aggregate_json(report.fscore)},
            {"failures", report.failures}};
  return j.dump(2);
}

void write_report_json(const ExperimentReport& report, const std::string& path,
                       const std::vector<std::int64_t>& ids) {
  write_text(path, report_json(report, ids) + "\n");
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace nprc
