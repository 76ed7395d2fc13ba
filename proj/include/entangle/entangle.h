#ifndef ENTANGLE_ENTANGLE_H_
#define ENTANGLE_ENTANGLE_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ENT_API __attribute__((visibility("default")))
#else
#define ENT_API
#endif

typedef enum ent_status {
  ENT_OK = 0,
  ENT_ERR_INVALID_ARGUMENT = 1,
  ENT_ERR_PARSE = 2,
  ENT_ERR_DEGENERATE = 3,
  ENT_ERR_CAPACITY = 4,
  ENT_ERR_CONDITIONING = 5,
  ENT_ERR_DOMAIN = 6,
  ENT_ERR_INTERNAL = 7,
  ENT_ERR_UNSUPPORTED = 8
} ent_status;

typedef struct ent_chain_t ent_chain_t;
typedef struct ent_chain_list_t ent_chain_list_t;
typedef struct ent_poly_t ent_poly_t;
typedef struct ent_estimate_t ent_estimate_t;
typedef struct ent_distribution_t ent_distribution_t;

typedef struct ent_mc_options {
  uint64_t samples;
  uint64_t seed;
  unsigned threads; /* 0: one per hardware thread */
} ent_mc_options;

/* Message for the last failing call on this thread. */
ENT_API const char* ent_last_error(void);
ENT_API const char* ent_status_name(ent_status status);

/* Strings returned through char** are owned by the caller. */
ENT_API void ent_string_free(char* s);

/* Chains. xyz holds 3*n_vertices coordinates. */
ENT_API ent_status ent_chain_create(const double* xyz, size_t n_vertices, int closed, ent_chain_t** out);
ENT_API ent_chain_t* ent_chain_clone(const ent_chain_t* c);
ENT_API void ent_chain_free(ent_chain_t* c);
ENT_API size_t ent_chain_vertex_count(const ent_chain_t* c);
ENT_API size_t ent_chain_edge_count(const ent_chain_t* c);
ENT_API int ent_chain_is_closed(const ent_chain_t* c);
ENT_API ent_status ent_chain_vertex(const ent_chain_t* c, size_t i, double xyz[3]);

ENT_API ent_status ent_chain_list_load(const char* path, ent_chain_list_t** out);
ENT_API ent_status ent_chain_list_parse(const char* content, ent_chain_list_t** out);
ENT_API size_t ent_chain_list_size(const ent_chain_list_t* l);
/* Borrowed; valid while the list lives. */
ENT_API const ent_chain_t* ent_chain_list_get(const ent_chain_list_t* l, size_t i);
ENT_API void ent_chain_list_free(ent_chain_list_t* l);

/* Gauss integrals. */
ENT_API ent_status ent_gauss_linking(const ent_chain_t* a, const ent_chain_t* b, double* out);
ENT_API ent_status ent_writhe(const ent_chain_t* c, double* out);
ENT_API ent_status ent_acn(const ent_chain_t* c, double* out);

/* Finite forms; ENT_ERR_UNSUPPORTED when the chain has no closed form. */
ENT_API ent_status ent_bracket_exact(const ent_chain_t* c, ent_poly_t** out);
ENT_API ent_status ent_jones_exact(const ent_chain_t* c, ent_poly_t** out);

enum { ENT_K21_NONE = 0, ENT_K21_BI = 1, ENT_K21_BII = 2 };
ENT_API ent_status ent_p_k21(const ent_chain_t* c, double* probability, int* which_case, int* writhe_sign);

/* Monte-Carlo averages over projection directions. */
ENT_API ent_status ent_mc_bracket(const ent_chain_t* c, const ent_mc_options* opt, ent_estimate_t** out);
/* Jones polynomial in t. */
ENT_API ent_status ent_mc_jones(const ent_chain_t* c, const ent_mc_options* opt, ent_estimate_t** out);
/* Borrowed; valid while the estimate lives. */
ENT_API const ent_poly_t* ent_estimate_mean(const ent_estimate_t* e);
ENT_API double ent_estimate_stderr(const ent_estimate_t* e, int quarter_exp);
ENT_API uint64_t ent_estimate_samples(const ent_estimate_t* e);
ENT_API uint64_t ent_estimate_rejected(const ent_estimate_t* e);
ENT_API ent_status ent_estimate_to_json(const ent_estimate_t* e, char** out);
ENT_API void ent_estimate_free(ent_estimate_t* e);

/* (knotoid class, writhe) frequencies for 4-edge open chains. */
ENT_API ent_status ent_mc_distribution(const ent_chain_t* c, const ent_mc_options* opt, ent_distribution_t** out);
ENT_API size_t ent_distribution_size(const ent_distribution_t* d);
ENT_API ent_status ent_distribution_entry(const ent_distribution_t* d, size_t i, const char** class_name,
                                          int* writhe, double* probability, double* stderr_value);
ENT_API uint64_t ent_distribution_rejected(const ent_distribution_t* d);
ENT_API ent_status ent_distribution_to_json(const ent_distribution_t* d, char** out);
ENT_API void ent_distribution_free(ent_distribution_t* d);

/* Laurent polynomials; exponents are in quarter units (k means x^(k/4)). */
ENT_API ent_status ent_poly_from_json(const char* json, char variable, ent_poly_t** out);
ENT_API ent_poly_t* ent_poly_clone(const ent_poly_t* p);
ENT_API char ent_poly_variable(const ent_poly_t* p);
ENT_API size_t ent_poly_term_count(const ent_poly_t* p);
/* Terms in descending exponent order. */
ENT_API ent_status ent_poly_term(const ent_poly_t* p, size_t i, int* quarter_exp, double* coeff);
ENT_API ent_status ent_poly_eval(const ent_poly_t* p, double x, double* out);
ENT_API double ent_poly_distance(const ent_poly_t* a, const ent_poly_t* b);
ENT_API ent_status ent_poly_to_t(const ent_poly_t* p, ent_poly_t** out);
ENT_API ent_status ent_poly_to_string(const ent_poly_t* p, char** out);
ENT_API ent_status ent_poly_to_json(const ent_poly_t* p, char** out);
ENT_API void ent_poly_free(ent_poly_t* p);

#ifdef __cplusplus
}
#endif

#endif /* ENTANGLE_ENTANGLE_H_ */
