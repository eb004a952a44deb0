// Copyright 2026 The isolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "isolab/isolab.h"

#include <memory>
#include <string>
#include <vector>

#include "isolab/lamperti.hpp"
#include "isolab/scenario.hpp"

struct isolab_space {
  isolab::LpSpace space;
};

struct isolab_isometry {
  isolab::LampertiIsometry map;
};

struct isolab_report {
  isolab::Report report;
  std::string json, csv, trace, status, message;
  int exit_code = 2;
};

struct isolab_sweep {
  std::vector<std::unique_ptr<isolab_report>> reports;
  std::string csv;
};

namespace {

thread_local std::string last_error;

template <class F>
isolab_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return ISOLAB_OK;
  } catch (const isolab::Error& e) {
    last_error = e.what();
    return static_cast<isolab_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return ISOLAB_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return ISOLAB_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) isolab::fail(isolab::ErrorCode::invalid_argument, std::string(what) + " is null");
}

isolab::Vec load(const double* v, std::size_t n) {
  require(v, "vector");
  return Eigen::Map<const isolab::Vec>(v, static_cast<Eigen::Index>(n));
}

void store(const isolab::Vec& v, double* out) {
  require(out, "output");
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i];
}

isolab::RunOptions convert(const isolab_run_options* o) {
  isolab::RunOptions r;
  if (!o) return r;
  if (o->has_seed) r.seed = o->seed;
  if (o->has_tol) r.tol = o->tol;
  if (o->has_budget) r.budget = o->budget;
  if (o->has_p) r.p = o->p;
  if (o->task) r.task = std::string(o->task);
  return r;
}

std::unique_ptr<isolab_report> wrap(isolab::Report r) {
  auto h = std::make_unique<isolab_report>();
  h->json = isolab::report_json(r);
  h->csv = isolab::report_csv(r);
  h->trace = isolab::trace_csv(r);
  h->status = isolab::to_string(r.status);
  h->message = r.message;
  h->exit_code = isolab::exit_code(r);
  h->report = std::move(r);
  return h;
}

}  // namespace

extern "C" {

const char* isolab_version(void) { return isolab::version(); }

const char* isolab_status_string(isolab_status status) {
  if (status == ISOLAB_OK) return "ok";
  if (status == ISOLAB_INTERNAL) return "internal";
  if (status < ISOLAB_OK || status > ISOLAB_INTERNAL) return "unknown";
  return isolab::to_string(static_cast<isolab::ErrorCode>(static_cast<int>(status)));
}

const char* isolab_last_error(void) { return last_error.c_str(); }

isolab_status isolab_space_create(size_t dim, double p, const double* weights, isolab_space** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    if (weights) {
      *out = new isolab_space{isolab::LpSpace(p, load(weights, dim))};
    } else {
      *out = new isolab_space{isolab::LpSpace(dim, p)};
    }
  });
}

void isolab_space_free(isolab_space* space) { delete space; }

size_t isolab_space_dim(const isolab_space* space) { return space ? space->space.dim() : 0; }

double isolab_space_p(const isolab_space* space) { return space ? space->space.p() : 0.0; }

isolab_status isolab_space_norm(const isolab_space* space, const double* v, double* out) {
  return guard([&] {
    require(space, "space");
    require(out, "out");
    *out = space->space.norm(load(v, space->space.dim()));
  });
}

isolab_status isolab_space_duality_map(const isolab_space* space, const double* v, double* out) {
  return guard([&] {
    require(space, "space");
    store(isolab::duality_map(space->space, load(v, space->space.dim())), out);
  });
}

isolab_status isolab_space_mazur_map(const isolab_space* space, const double* v, double q,
                                     double* out) {
  return guard([&] {
    require(space, "space");
    store(isolab::mazur_map(space->space, load(v, space->space.dim()), q), out);
  });
}

isolab_status isolab_isometry_create(const size_t* sigma, const int* signs,
                                     const isolab_space* source, const isolab_space* target,
                                     isolab_isometry** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(sigma, "sigma");
    require(signs, "signs");
    require(source, "source");
    require(target, "target");
    const std::size_t n = source->space.dim();
    *out = new isolab_isometry{isolab::LampertiIsometry(std::vector<std::size_t>(sigma, sigma + n),
                                                        std::vector<int>(signs, signs + n),
                                                        source->space, target->space)};
  });
}

void isolab_isometry_free(isolab_isometry* u) { delete u; }

size_t isolab_isometry_dim(const isolab_isometry* u) { return u ? u->map.dim() : 0; }

isolab_status isolab_isometry_apply(const isolab_isometry* u, const double* v, double* out) {
  return guard([&] {
    require(u, "isometry");
    store(u->map.apply(load(v, u->map.dim())), out);
  });
}

isolab_status isolab_isometry_compose(const isolab_isometry* u, const isolab_isometry* v,
                                      isolab_isometry** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(u, "u");
    require(v, "v");
    *out = new isolab_isometry{isolab::compose(u->map, v->map)};
  });
}

isolab_status isolab_isometry_inverse(const isolab_isometry* u, isolab_isometry** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(u, "isometry");
    *out = new isolab_isometry{isolab::inverse(u->map)};
  });
}

isolab_status isolab_isometry_mazur_conjugate(const isolab_isometry* u, isolab_isometry** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(u, "isometry");
    *out = new isolab_isometry{isolab::mazur_conjugate(u->map)};
  });
}

isolab_status isolab_isometry_matrix(const isolab_isometry* u, double* out_row_major) {
  return guard([&] {
    require(u, "isometry");
    require(out_row_major, "output");
    const isolab::Mat m = u->map.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) out_row_major[i * m.cols() + j] = m(i, j);
  });
}

isolab_status isolab_run(const char* scenario_text, const isolab_run_options* options,
                         isolab_report** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(scenario_text, "scenario text");
    *out = wrap(isolab::run_scenario(scenario_text, convert(options))).release();
  });
}

isolab_status isolab_run_file(const char* path, const isolab_run_options* options,
                              isolab_report** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    *out = wrap(isolab::run_scenario_file(path, convert(options))).release();
  });
}

void isolab_report_free(isolab_report* report) { delete report; }

const char* isolab_report_json(const isolab_report* report) { return report ? report->json.c_str() : ""; }

const char* isolab_report_csv(const isolab_report* report) { return report ? report->csv.c_str() : ""; }

const char* isolab_report_trace_csv(const isolab_report* report) {
  return report ? report->trace.c_str() : "";
}

const char* isolab_report_status(const isolab_report* report) {
  return report ? report->status.c_str() : "";
}

const char* isolab_report_message(const isolab_report* report) {
  return report ? report->message.c_str() : "";
}

int isolab_report_exit_code(const isolab_report* report) { return report ? report->exit_code : 2; }

isolab_status isolab_sweep_run(const char* scenario_text, const double* ps, size_t count,
                               const isolab_run_options* options, isolab_sweep** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    require(scenario_text, "scenario text");
    if (count > 0) require(ps, "p list");
    std::vector<isolab::SweepRow> rows =
        isolab::sweep(scenario_text, std::vector<double>(ps, ps + count), convert(options));
    auto s = std::make_unique<isolab_sweep>();
    s->csv = isolab::sweep_csv(rows);
    for (auto& row : rows) s->reports.push_back(wrap(std::move(row.report)));
    *out = s.release();
  });
}

void isolab_sweep_free(isolab_sweep* sweep) { delete sweep; }

size_t isolab_sweep_size(const isolab_sweep* sweep) { return sweep ? sweep->reports.size() : 0; }

const char* isolab_sweep_csv(const isolab_sweep* sweep) { return sweep ? sweep->csv.c_str() : ""; }

const isolab_report* isolab_sweep_report(const isolab_sweep* sweep, size_t index) {
  if (!sweep || index >= sweep->reports.size()) return nullptr;
  return sweep->reports[index].get();
}

}  // extern "C"
