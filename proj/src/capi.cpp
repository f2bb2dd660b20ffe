#include <qhd/qhd.h>

#include "io.hpp"
#include "monodromy.hpp"
#include "quasi_hopf.hpp"
#include "reps.hpp"

#include <cstring>
#include <memory>

using namespace qhd;

namespace {

// One registry per loaded root object; derived handles share it.
struct Workspace {
  SpaceRegistry reg;
};

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

qhd_status classify(const std::exception& e) {
  set_error(e.what());
  if (dynamic_cast<const IoError*>(&e)) {
    std::string w = e.what();
    return w.rfind("cannot open", 0) == 0 || w.rfind("cannot write", 0) == 0 ? QHD_ERR_IO
                                                                             : QHD_ERR_PARSE;
  }
  if (dynamic_cast<const Error*>(&e)) return QHD_ERR_INVALID;
  return QHD_ERR_INTERNAL;
}

Options to_options(const qhd_options* o) {
  Options opt;
  if (o) {
    opt.tol = o->tol;
    opt.prune = o->prune;
    opt.seed = o->seed;
    opt.force_deep_checks = o->force_deep_checks != 0;
  }
  return opt;
}

}  // namespace

struct qhd_algebra {
  std::shared_ptr<Workspace> ws;
  QuasiHopf H;
  std::string name;
};
struct qhd_group {
  FiniteGroup G;
};
struct qhd_cocycle {
  ThreeCocycle w;
};
struct qhd_report {
  Report rep;
};

extern "C" {

void qhd_options_init(qhd_options* opts) {
  if (!opts) return;
  Options d;
  opts->tol = d.tol;
  opts->prune = d.prune;
  opts->seed = d.seed;
  opts->force_deep_checks = 0;
}

const char* qhd_last_error(void) { return g_last_error.c_str(); }

qhd_status qhd_algebra_load(const char* path, qhd_algebra** out) {
  if (!path || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    auto ws = std::make_shared<Workspace>();
    QuasiHopf H = load_algebra(ws->reg, path);
    *out = new qhd_algebra{std::move(ws), std::move(H), path};
    return QHD_OK;
  } catch (const std::exception& e) {
    return classify(e);
  }
}

qhd_status qhd_algebra_export(const qhd_algebra* a, const char* name, const char* path) {
  if (!a || !path) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    export_algebra_sc_json(a->H, name ? name : a->name, path);
    return QHD_OK;
  } catch (const std::exception& e) {
    return classify(e);
  }
}

uint32_t qhd_algebra_dim(const qhd_algebra* a) { return a ? a->H.dim : 0; }
int qhd_algebra_has_rmatrix(const qhd_algebra* a) { return a && a->H.R ? 1 : 0; }
void qhd_algebra_free(qhd_algebra* a) { delete a; }

qhd_status qhd_group_load(const char* path, qhd_group** out) {
  if (!path || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    *out = new qhd_group{load_group(path)};
    return QHD_OK;
  } catch (const std::exception& e) {
    return classify(e);
  }
}

uint32_t qhd_group_order(const qhd_group* g) { return g ? g->G.order : 0; }
void qhd_group_free(qhd_group* g) { delete g; }

qhd_status qhd_cocycle_load(const qhd_group* g, const char* path, qhd_cocycle** out) {
  if (!g || !path || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    *out = new qhd_cocycle{load_cocycle(g->G, path)};
    return QHD_OK;
  } catch (const std::exception& e) {
    return classify(e);
  }
}

void qhd_cocycle_free(qhd_cocycle* w) { delete w; }

qhd_status qhd_verify(const qhd_algebra* a, const qhd_options* opts, qhd_report** out) {
  if (!a || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    Options opt = to_options(opts);
    Report rep = verify_quasi_hopf(a->H, opt);
    derived_twists(a->H, opt, rep);
    pq_elements(a->H, opt, rep);
    if (a->H.R) {
      rep.merge(verify_quasitriangular(a->H, opt));
      Report rrep;
      r_inverse_formula(a->H, opt, rrep);
      rep.merge(rrep);
      rep.merge(antipode_image_check(a->H, opt));
    }
    *out = new qhd_report{std::move(rep)};
    return QHD_OK;
  } catch (const std::exception& e) {
    return classify(e);
  }
}

qhd_status qhd_double_build(const qhd_algebra* a, const qhd_options* opts,
                            qhd_algebra** out_double, qhd_report** out) {
  if (!a || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    Options opt = to_options(opts);
    Report rep;
    // Validate the base first so a broken input names the violated identity
    // instead of failing structurally during assembly.
    rep.merge(verify_quasi_hopf(a->H, opt));
    if (!rep.all_pass()) {
      *out = new qhd_report{std::move(rep)};
      if (out_double) *out_double = nullptr;
      return QHD_OK;
    }
    DoubleAlgebra da = build_double(a->H, opt, rep);
    rep.merge(verify_quasi_hopf(da.dbl, opt));
    rep.merge(verify_quasitriangular(da.dbl, opt));
    if (out_double) *out_double = new qhd_algebra{a->ws, da.dbl, a->name + "_double"};
    *out = new qhd_report{std::move(rep)};
    return QHD_OK;
  } catch (const std::exception& e) {
    if (out_double) *out_double = nullptr;
    return classify(e);
  }
}

qhd_status qhd_twisted_double(const qhd_group* g, const qhd_cocycle* w, const qhd_options* opts,
                              qhd_algebra** out_double, qhd_report** out) {
  if (!g || !w || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  try {
    Options opt = to_options(opts);
    Report rep = verify_cocycle(g->G, w->w, opt);
    if (!rep.all_pass()) {
      *out = new qhd_report{std::move(rep)};
      if (out_double) *out_double = nullptr;
      return QHD_OK;
    }
    auto ws = std::make_shared<Workspace>();
    QuasiHopf H = fun_qha(ws->reg, g->G, w->w, opt);
    rep.merge(verify_quasi_hopf(H, opt));
    DoubleAlgebra da = build_double(H, opt, rep);
    rep.merge(verify_quasi_hopf(da.dbl, opt));
    rep.merge(verify_quasitriangular(da.dbl, opt));
    ExplicitDouble dd = explicit_double(ws->reg, g->G, w->w, opt, rep);
    rep.merge(sigma_check(g->G, w->w, da, dd, opt));
    if (out_double)
      *out_double = new qhd_algebra{ws, da.dbl, "double_fun_" + g->G.name};
    *out = new qhd_report{std::move(rep)};
    return QHD_OK;
  } catch (const std::exception& e) {
    if (out_double) *out_double = nullptr;
    return classify(e);
  }
}

qhd_status qhd_monodromy(const qhd_algebra* a, const qhd_options* opts, qhd_report** out) {
  if (!a || !out) return set_error("null argument"), QHD_ERR_ARGUMENT;
  if (!a->H.R) return set_error("monodromy requires an R-matrix on the input algebra"),
               QHD_ERR_INVALID;
  try {
    Options opt = to_options(opts);
    Report rep = verify_quasitriangular(a->H, opt);
    if (!rep.all_pass()) {
      *out = new qhd_report{std::move(rep)};
      return QHD_OK;
    }
    bool big = a->H.dim > 8;
    DoubleAlgebra da = build_double(a->H, opt, rep, /*algebra_only=*/true, /*lazy_product=*/big);
    MonodromyData md = monodromy_matrix(da, opt);
    rep.merge(verify_monodromy(da, md, opt, /*rank_check=*/a->H.dim <= 8));
    *out = new qhd_report{std::move(rep)};
    return QHD_OK;
  } catch (const std::exception& e) {
    return classify(e);
  }
}

size_t qhd_report_count(const qhd_report* r) { return r ? r->rep.checks.size() : 0; }
int qhd_report_all_pass(const qhd_report* r) { return r && r->rep.all_pass() ? 1 : 0; }
const char* qhd_report_check_name(const qhd_report* r, size_t i) {
  return r && i < r->rep.checks.size() ? r->rep.checks[i].name.c_str() : "";
}
const char* qhd_report_check_anchor(const qhd_report* r, size_t i) {
  return r && i < r->rep.checks.size() ? r->rep.checks[i].anchor.c_str() : "";
}
double qhd_report_check_residual(const qhd_report* r, size_t i) {
  return r && i < r->rep.checks.size() ? r->rep.checks[i].residual : -1.0;
}
int qhd_report_check_pass(const qhd_report* r, size_t i) {
  return r && i < r->rep.checks.size() && r->rep.checks[i].pass ? 1 : 0;
}
const char* qhd_report_check_detail(const qhd_report* r, size_t i) {
  return r && i < r->rep.checks.size() ? r->rep.checks[i].detail.c_str() : "";
}

char* qhd_report_to_jsonl(const qhd_report* r) {
  if (!r) return nullptr;
  std::string s = r->rep.jsonl();
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) return nullptr;
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

void qhd_string_free(char* s) { std::free(s); }
void qhd_report_free(qhd_report* r) { delete r; }

}  // extern "C"
