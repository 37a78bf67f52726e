/* C interface to the radial Euler vanishing-viscosity library. */
#ifndef RADEULER_RADEULER_H
#define RADEULER_RADEULER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RE_API __declspec(dllexport)
#else
#define RE_API __attribute__((visibility("default")))
#endif

typedef enum re_status {
  RE_OK = 0,
  RE_ERR_GENERIC = 1,
  RE_ERR_CONFIG = 2,
  RE_ERR_NUMERICAL = 3,
  RE_ERR_VERDICT = 4,
  RE_ERR_DOMAIN = 5,
  RE_ERR_IO = 6,
  RE_ERR_ARGUMENT = 7
} re_status;

typedef struct re_model re_model;
typedef struct re_config re_config;
typedef struct re_result re_result;

/* Message of the last failing call on this thread; never NULL. */
RE_API const char* re_last_error(void);

/* kappa <= 0 selects the normalized constant (gamma-1)^2/(4 gamma). */
RE_API re_status re_model_create(double gamma, double kappa, double delta, int n_dim, re_model** out);
RE_API void re_model_destroy(re_model* model);
RE_API re_status re_model_pressure(const re_model* model, double rho, double* p, double* dp);
RE_API re_status re_model_riemann(const re_model* model, double rho, double m, double* w, double* z);
RE_API re_status re_model_relative_energy(const re_model* model, double rho_bar, double rho, double m,
                                          double* out);

RE_API re_status re_config_load(const char* path, re_config** out);
RE_API re_status re_config_set_levels(re_config* config, size_t levels);
RE_API re_status re_config_set_output(re_config* config, const char* directory);
RE_API re_status re_config_set_seed(re_config* config, uint64_t seed);
RE_API void re_config_destroy(re_config* config);

/* Each command stores a result even when verdicts fail (status RE_ERR_VERDICT).
   On other errors *out is NULL. */
RE_API re_status re_command_run(const re_config* config, re_result** out);
RE_API re_status re_command_sweep(const re_config* config, re_result** out);
RE_API re_status re_command_check_entropy(const re_config* config, re_result** out);
RE_API re_status re_command_report(const re_config* config, re_result** out);

RE_API int re_result_passed(const re_result* result);
/* Borrowed strings, valid until re_result_destroy. */
RE_API const char* re_result_summary(const re_result* result);
RE_API const char* re_result_manifest(const re_result* result);
RE_API void re_result_destroy(re_result* result);

#ifdef __cplusplus
}
#endif

#endif /* RADEULER_RADEULER_H */
