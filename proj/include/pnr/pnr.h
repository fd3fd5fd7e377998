/*
 * C interface of the park-and-ride planner.
 *
 * All functions return a pnr_status. Strings handed out through `char**`
 * parameters are heap-allocated and must be released with pnr_string_free.
 * On failure, pnr_last_error() describes the problem for the calling thread.
 *
 * A pnr_scenario is immutable after loading and may be shared by threads.
 */
#ifndef PNR_PNR_H
#define PNR_PNR_H

#include <stddef.h>

#if defined(_WIN32)
#define PNR_API __declspec(dllexport)
#else
#define PNR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pnr_scenario pnr_scenario;

typedef enum pnr_status {
  PNR_OK = 0,
  PNR_E_INVALID_ARGUMENT = 1,
  PNR_E_NOT_FOUND = 2,
  PNR_E_PARSE = 3,
  PNR_E_VALIDATION = 4,
  PNR_E_UNITS = 5,
  PNR_E_IO = 6,
  PNR_E_INTERNAL = 7
} pnr_status;

typedef enum pnr_format { PNR_FORMAT_TABLE = 0, PNR_FORMAT_CSV = 1, PNR_FORMAT_JSON = 2 } pnr_format;

typedef enum pnr_report {
  PNR_REPORT_TIMES = 0,
  PNR_REPORT_PRICES = 1,
  PNR_REPORT_AVAILABILITY = 2,
  PNR_REPORT_COST = 3
} pnr_report;

PNR_API const char* pnr_version(void);
PNR_API const char* pnr_last_error(void);
PNR_API const char* pnr_status_name(pnr_status status);
PNR_API void pnr_string_free(char* s);

PNR_API pnr_status pnr_scenario_load_file(const char* path, pnr_scenario** out);
PNR_API pnr_status pnr_scenario_load_text(const char* text, size_t length, pnr_scenario** out);
PNR_API void pnr_scenario_free(pnr_scenario* scenario);

/* Canonical scenario document. */
PNR_API pnr_status pnr_scenario_save(const pnr_scenario* scenario, char** out);

/* Validation report of a loaded scenario (one finding per line, warnings
 * included). PNR_E_VALIDATION when errors are present. */
PNR_API pnr_status pnr_scenario_validate(const pnr_scenario* scenario, char** report);

/* Copy of the scenario with extra access minutes per facility, given as a
 * JSON object such as {"1": 3, "5": 1}. */
PNR_API pnr_status pnr_scenario_perturb(const pnr_scenario* scenario, const char* deltas_json,
                                        pnr_scenario** out);

/* JSON for GET /api/scenario and GET /api/parkings. */
PNR_API pnr_status pnr_scenario_info_json(const pnr_scenario* scenario, char** out);
PNR_API pnr_status pnr_parkings_json(const pnr_scenario* scenario, char** out);

/* Plans a named profile of the scenario. `deltas_json` may be NULL.
 * `has_best` (may be NULL) receives 1 if a feasible plan exists. */
PNR_API pnr_status pnr_plan_profile(const pnr_scenario* scenario, const char* profile_name,
                                    const char* deltas_json, pnr_format format,
                                    pnr_report report, char** out, int* has_best);

/* Body of POST /api/plan:
 *   {"profile": {"alpha", "beta", "gamma0", "gamma": [4], "lambda", "depart_min"},
 *    "perturb": {"<facility>": minutes}}
 * Response is the same JSON document as pnr_plan_profile with PNR_FORMAT_JSON. */
PNR_API pnr_status pnr_plan_request_json(const pnr_scenario* scenario, const char* request_json,
                                         char** response_json, int* has_best);

#ifdef __cplusplus
}
#endif

#endif /* PNR_PNR_H */
