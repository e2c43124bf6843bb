#pragma once

#include <string>
#include <vector>

#include "nprclust/eval.hpp"

namespace nprc {

/// One JSON object per iteration: iter, psi, grad_norm, lambda, rho, accepted.
void write_trace_jsonl(const LmTrace& trace, const std::string& path);
std::string trace_jsonl(const LmTrace& trace);

/// "j,vertex_id,phi" for j = 1..n-1; ids mapped through `ids` when given.
void write_profile_csv(const SweepProfile& profile, const std::string& path,
                       const std::vector<std::int64_t>& ids = {});

/// "vertex_id,value" per vertex.
void write_solution_csv(const Vector& x, const std::string& path,
                        const std::vector<std::int64_t>& ids = {});

/// One vertex id per line.
void write_members(const std::vector<Vertex>& members, const std::string& path,
                   const std::vector<std::int64_t>& ids = {});

/// One row per repetition, then mean and std footer rows.
void write_report_csv(const ExperimentReport& report, const std::string& path,
                      const std::vector<std::int64_t>& ids = {});
std::string report_json(const ExperimentReport& report, const std::vector<std::int64_t>& ids = {});
void write_report_json(const ExperimentReport& report, const std::string& path,
                       const std::vector<std::int64_t>& ids = {});

/// Writes `text` to `path`, throwing IoError on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace nprc
