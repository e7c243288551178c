#include "hlab/hlab.h"

#include <new>
#include <stdexcept>
#include <string>

#include "core/runner.hpp"
#include "core/specs.hpp"

namespace {

thread_local std::string t_last_error = "no error";

hlab_status fail(hlab_status code, const char* what) {
  t_last_error = what;
  return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
hlab_status guarded(Fn&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    return fail(HLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(HLAB_ERR_DOMAIN, e.what());
  } catch (const std::out_of_range& e) {
    return fail(HLAB_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HLAB_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(HLAB_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(HLAB_ERR_RUNTIME, "unknown error");
  }
}

}  // namespace

struct hlab_weights {
  hlab::WeightSequence seq;
  std::string label;
};

struct hlab_series {
  hlab::PowerSeries f;
};

struct hlab_report {
  hlab::RunReport rep;
  std::string json_text;
};

extern "C" {

const char* hlab_last_error(void) { return t_last_error.c_str(); }

const char* hlab_version(void) { return "0.1.0"; }

/* ---- weights -------------------------------------------------------------- */

hlab_status hlab_weights_create(const char* spec, hlab_weights** out) {
  if (!spec || !out) return fail(HLAB_ERR_NULL, "spec/out must not be NULL");
  return guarded([&] {
    auto seq = hlab::parse_weight_spec(spec);
    *out = new hlab_weights{seq, seq.label()};
    return HLAB_OK;
  });
}

hlab_status hlab_weights_invert(const hlab_weights* w, hlab_weights** out) {
  if (!w || !out) return fail(HLAB_ERR_NULL, "w/out must not be NULL");
  return guarded([&] {
    auto seq = w->seq.invert();
    *out = new hlab_weights{seq, seq.label()};
    return HLAB_OK;
  });
}

hlab_status hlab_weights_lift(const hlab_weights* w, hlab_weights** out) {
  if (!w || !out) return fail(HLAB_ERR_NULL, "w/out must not be NULL");
  return guarded([&] {
    auto seq = w->seq.lift();
    *out = new hlab_weights{seq, seq.label()};
    return HLAB_OK;
  });
}

hlab_status hlab_weights_w(const hlab_weights* w, long k, double* out) {
  if (!w || !out) return fail(HLAB_ERR_NULL, "w/out must not be NULL");
  return guarded([&] {
    *out = w->seq.w(k);
    return HLAB_OK;
  });
}

hlab_status hlab_weights_beta(const hlab_weights* w, long k, double* out) {
  if (!w || !out) return fail(HLAB_ERR_NULL, "w/out must not be NULL");
  return guarded([&] {
    *out = w->seq.beta(k);
    return HLAB_OK;
  });
}

hlab_status hlab_weights_log_beta(const hlab_weights* w, long k, double* out) {
  if (!w || !out) return fail(HLAB_ERR_NULL, "w/out must not be NULL");
  return guarded([&] {
    *out = w->seq.log_beta(k);
    return HLAB_OK;
  });
}

const char* hlab_weights_label(const hlab_weights* w) {
  return w ? w->label.c_str() : nullptr;
}

void hlab_weights_free(hlab_weights* w) { delete w; }

/* ---- series --------------------------------------------------------------- */

hlab_status hlab_series_from_symbol(const char* spec, int order,
                                    hlab_series** out) {
  if (!spec || !out) return fail(HLAB_ERR_NULL, "spec/out must not be NULL");
  return guarded([&] {
    *out = new hlab_series{hlab::symbol_series(hlab::parse_symbol_spec(spec), order)};
    return HLAB_OK;
  });
}

hlab_status hlab_series_create(const double* coeffs, int order,
                               hlab_series** out) {
  if (!coeffs || !out) return fail(HLAB_ERR_NULL, "coeffs/out must not be NULL");
  if (order <= 0)
    return fail(HLAB_ERR_INVALID_ARGUMENT, "order must be positive");
  hlab::PowerSeries f(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k)
    f[static_cast<std::size_t>(k)] = hlab::cplx(coeffs[2 * k], coeffs[2 * k + 1]);
  *out = new (std::nothrow) hlab_series{std::move(f)};
  if (!*out) return fail(HLAB_ERR_RUNTIME, "out of memory");
  return HLAB_OK;
}

int hlab_series_order(const hlab_series* s) {
  return s ? static_cast<int>(s->f.size()) : 0;
}

hlab_status hlab_series_coeffs(const hlab_series* s, double* coeffs_out) {
  if (!s || !coeffs_out)
    return fail(HLAB_ERR_NULL, "series/coeffs_out must not be NULL");
  for (std::size_t k = 0; k < s->f.size(); ++k) {
    coeffs_out[2 * k] = s->f[k].real();
    coeffs_out[2 * k + 1] = s->f[k].imag();
  }
  return HLAB_OK;
}

hlab_status hlab_series_mul(const hlab_series* f, const hlab_series* g,
                            hlab_series** out) {
  if (!f || !g || !out) return fail(HLAB_ERR_NULL, "f/g/out must not be NULL");
  return guarded([&] {
    *out = new hlab_series{hlab::mul(f->f, g->f)};
    return HLAB_OK;
  });
}

hlab_status hlab_series_compose(const hlab_series* f, const hlab_series* g,
                                hlab_series** out) {
  if (!f || !g || !out) return fail(HLAB_ERR_NULL, "f/g/out must not be NULL");
  return guarded([&] {
    *out = new hlab_series{hlab::compose(f->f, g->f)};
    return HLAB_OK;
  });
}

hlab_status hlab_series_weighted_log_norm(const hlab_series* s,
                                          const hlab_weights* w, double* out) {
  if (!s || !w || !out) return fail(HLAB_ERR_NULL, "s/w/out must not be NULL");
  return guarded([&] {
    *out = hlab::weighted_log_norm(s->f, w->seq);
    return HLAB_OK;
  });
}

void hlab_series_free(hlab_series* s) { delete s; }

/* ---- runner --------------------------------------------------------------- */

hlab_status hlab_run_config_text(const char* text, hlab_report** out) {
  if (!text || !out) return fail(HLAB_ERR_NULL, "text/out must not be NULL");
  return guarded([&] {
    auto rep = hlab::run_config(hlab::ExperimentConfig::parse(text));
    auto* r = new hlab_report{std::move(rep), ""};
    r->json_text = hlab::report_to_string(r->rep);
    *out = r;
    return HLAB_OK;
  });
}

hlab_status hlab_run_config_file(const char* path, hlab_report** out) {
  if (!path || !out) return fail(HLAB_ERR_NULL, "path/out must not be NULL");
  return guarded([&] {
    auto rep = hlab::run_config(hlab::ExperimentConfig::from_file(path));
    auto* r = new hlab_report{std::move(rep), ""};
    r->json_text = hlab::report_to_string(r->rep);
    *out = r;
    return HLAB_OK;
  });
}

const char* hlab_report_json(const hlab_report* r) {
  return r ? r->json_text.c_str() : nullptr;
}

const char* hlab_report_csv(const hlab_report* r) {
  return r ? r->rep.csv.c_str() : nullptr;
}

int hlab_report_exit_code(const hlab_report* r) {
  return r ? r->rep.exit_code : -1;
}

void hlab_report_free(hlab_report* r) { delete r; }

} /* extern "C" */
