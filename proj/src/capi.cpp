#include "radeuler/radeuler.h"

#include <exception>
#include <new>
#include <string>

#include "radeuler/commands.hpp"
#include "radeuler/config.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/model.hpp"

struct re_model {
  radeuler::GasModel model;
};

struct re_config {
  radeuler::RunConfig config;
  radeuler::CommandOptions options;
};

struct re_result {
  radeuler::CommandResult result;
};

namespace {

thread_local std::string g_last_error;

re_status fail(re_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Maps the exception in flight to a status code.
re_status translate() {
  try {
    throw;
  } catch (const radeuler::ConfigError& e) {
    return fail(RE_ERR_CONFIG, e.what());
  } catch (const radeuler::DomainError& e) {
    return fail(RE_ERR_DOMAIN, e.what());
  } catch (const radeuler::NumericalError& e) {
    return fail(RE_ERR_NUMERICAL, e.what());
  } catch (const radeuler::IoError& e) {
    return fail(RE_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RE_ERR_GENERIC, "out of memory");
  } catch (const std::exception& e) {
    return fail(RE_ERR_GENERIC, e.what());
  } catch (...) {
    return fail(RE_ERR_GENERIC, "unknown error");
  }
}

template <class F>
re_status guarded(F&& f) {
  try {
    return f();
  } catch (...) {
    return translate();
  }
}

using Command = radeuler::CommandResult (*)(const radeuler::RunConfig&, const radeuler::CommandOptions&);

re_status run_command(Command cmd, const re_config* config, re_result** out) {
  if (!config || !out) return fail(RE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* r = new re_result{cmd(config->config, config->options)};
    *out = r;
    if (!r->result.passed) return fail(RE_ERR_VERDICT, "verdict failure: " + std::to_string(r->result.failures.size()) + " failed");
    return RE_OK;
  });
}

}  // namespace

extern "C" {

const char* re_last_error(void) { return g_last_error.c_str(); }

re_status re_model_create(double gamma, double kappa, double delta, int n_dim, re_model** out) {
  if (!out) return fail(RE_ERR_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    *out = kappa > 0.0 ? new re_model{radeuler::GasModel(gamma, kappa, delta, n_dim)}
                       : new re_model{radeuler::GasModel::normalized(gamma, delta, n_dim)};
    return RE_OK;
  });
}

void re_model_destroy(re_model* model) { delete model; }

re_status re_model_pressure(const re_model* model, double rho, double* p, double* dp) {
  if (!model || !p || !dp) return fail(RE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const radeuler::PressureValue v = radeuler::pressure_delta(model->model, rho);
    *p = v.p;
    *dp = v.dp;
    return RE_OK;
  });
}

re_status re_model_riemann(const re_model* model, double rho, double m, double* w, double* z) {
  if (!model || !w || !z) return fail(RE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const radeuler::RiemannInvariants v = radeuler::riemann_invariants(model->model, rho, m);
    *w = v.w;
    *z = v.z;
    return RE_OK;
  });
}

re_status re_model_relative_energy(const re_model* model, double rho_bar, double rho, double m, double* out) {
  if (!model || !out) return fail(RE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = radeuler::relative_energy_density(model->model, rho_bar, rho, m);
    return RE_OK;
  });
}

re_status re_config_load(const char* path, re_config** out) {
  if (!path || !out) return fail(RE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new re_config{radeuler::parse_config_file(path), {}};
    return RE_OK;
  });
}

re_status re_config_set_levels(re_config* config, size_t levels) {
  if (!config) return fail(RE_ERR_ARGUMENT, "null config");
  if (levels == 0) return fail(RE_ERR_CONFIG, "--levels must be positive");
  config->options.levels = levels;
  return RE_OK;
}

re_status re_config_set_output(re_config* config, const char* directory) {
  if (!config || !directory) return fail(RE_ERR_ARGUMENT, "null argument");
  config->options.out_dir = directory;
  return RE_OK;
}

re_status re_config_set_seed(re_config* config, uint64_t seed) {
  if (!config) return fail(RE_ERR_ARGUMENT, "null config");
  config->options.seed = seed;
  return RE_OK;
}

void re_config_destroy(re_config* config) { delete config; }

re_status re_command_run(const re_config* c, re_result** out) { return run_command(radeuler::command_run, c, out); }
re_status re_command_sweep(const re_config* c, re_result** out) { return run_command(radeuler::command_sweep, c, out); }
re_status re_command_check_entropy(const re_config* c, re_result** out) {
  return run_command(radeuler::command_check_entropy, c, out);
}
re_status re_command_report(const re_config* c, re_result** out) {
  return run_command(radeuler::command_report, c, out);
}

int re_result_passed(const re_result* r) { return r && r->result.passed ? 1 : 0; }
const char* re_result_summary(const re_result* r) { return r ? r->result.summary.c_str() : ""; }
const char* re_result_manifest(const re_result* r) { return r ? r->result.manifest.c_str() : ""; }
void re_result_destroy(re_result* r) { delete r; }

}  // extern "C"
