/* C API of the generalized hyperbolic triangle / prescribed-curvature
 * toolkit. The library is a C++ core behind this extern-C surface: opaque
 * handles for surfaces, plain structs for triangles, status codes for
 * every failure path. Strings returned through char** are heap-allocated
 * and must be released with genhyp_string_free.
 */
#ifndef GENHYP_H
#define GENHYP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum genhyp_status {
    GENHYP_OK = 0,
    GENHYP_ERR_INPUT = 1,         /* invalid argument / out-of-interval value */
    GENHYP_ERR_PARSE = 2,         /* malformed file or flag */
    GENHYP_ERR_VALIDATION = 3,    /* complex violates a structural invariant */
    GENHYP_ERR_DOMAIN = 4,        /* law value with no preimage (no such triangle) */
    GENHYP_ERR_DEGENERATE = 5,    /* Gram determinant not safely negative */
    GENHYP_ERR_REALIZABILITY = 6, /* SAS data outside the realizability domain */
    GENHYP_ERR_INFEASIBLE = 7,    /* target outside an image polytope */
    GENHYP_ERR_CONVERGENCE = 8,   /* iteration budget exhausted */
    GENHYP_ERR_UNSUPPORTED = 9,   /* case with no established rigidity */
    GENHYP_ERR_SIZE = 10,         /* enumeration cap exceeded */
    GENHYP_ERR_OVERFLOW = 11,     /* floating range exceeded */
    GENHYP_ERR_QUADRATURE = 12,   /* quadrature tolerance unreachable */
    GENHYP_ERR_DOMAIN_EXIT = 13,  /* flow left its domain */
    GENHYP_ERR_INTERNAL = 14
} genhyp_status;

const char* genhyp_status_name(genhyp_status status);

/* Message and optional JSON detail of the last error on this thread. */
const char* genhyp_last_error(void);
const char* genhyp_last_error_detail(void);

const char* genhyp_version(void);

void genhyp_string_free(char* text);

/* ---- generalized triangles -------------------------------------------- */

/* theta[i] is the generalized angle at corner i (type eps[i] in {-1,0,1}),
 * len[i] the generalized length of the opposite edge. */
typedef struct genhyp_triangle {
    int eps[3];
    double theta[3];
    double len[3];
} genhyp_triangle;

genhyp_status genhyp_triangle_from_angles(const int eps[3], const double theta[3],
                                          genhyp_triangle* out);
genhyp_status genhyp_triangle_from_lengths(const int eps[3], const double len[3],
                                           genhyp_triangle* out);
/* Sides l0, l1 flank the included angle at corner 2. */
genhyp_status genhyp_triangle_sas(const int eps[3], double l0, double l1, double included,
                                  genhyp_triangle* out);
/* Row-major 3x3 Jacobians of the derivative cosine law; either output may
 * be NULL. */
genhyp_status genhyp_triangle_jacobians(const genhyp_triangle* tri, double dl_dtheta[9],
                                        double dtheta_dl[9]);

/* ---- law verification -------------------------------------------------- */

/* types: "all" or ';'-separated "e1,e2,e3" triples. Writes a JSON report
 * (byte-stable for fixed inputs) and the overall pass flag. */
genhyp_status genhyp_verify_laws(const char* types, int samples, unsigned long long seed,
                                 double tolerance, int* pass, char** json_report);

/* ---- surfaces ----------------------------------------------------------- */

typedef struct genhyp_surface genhyp_surface;           /* genhyp-tri/1 */
typedef struct genhyp_cell_surface genhyp_cell_surface; /* genhyp-cell/1 */

genhyp_status genhyp_surface_parse(const char* json_text, genhyp_surface** out);
void genhyp_surface_free(genhyp_surface* surface);
int genhyp_surface_vertex_count(const genhyp_surface* surface);
int genhyp_surface_edge_count(const genhyp_surface* surface);
int genhyp_surface_triangle_count(const genhyp_surface* surface);
const char* genhyp_surface_vertex_id(const genhyp_surface* surface, int index);
const char* genhyp_surface_edge_id(const genhyp_surface* surface, int index);
genhyp_status genhyp_surface_serialize(const genhyp_surface* surface, char** json_text);

genhyp_status genhyp_cell_surface_parse(const char* json_text, genhyp_cell_surface** out);
void genhyp_cell_surface_free(genhyp_cell_surface* surface);
int genhyp_cell_surface_vertex_count(const genhyp_cell_surface* surface);
int genhyp_cell_surface_edge_count(const genhyp_cell_surface* surface);
int genhyp_cell_surface_face_count(const genhyp_cell_surface* surface);
const char* genhyp_cell_surface_face_id(const genhyp_cell_surface* surface, int index);
const char* genhyp_cell_surface_edge_id(const genhyp_cell_surface* surface, int index);
genhyp_status genhyp_cell_surface_serialize(const genhyp_cell_surface* surface, char** json_text);

/* Value files ({"edge_weights":...}, {"vertex_values":...},
 * {"face_values":...}) parsed into the surface's canonical index order. */
genhyp_status genhyp_surface_edge_values(const genhyp_surface* surface, const char* json_text,
                                         double* out);
genhyp_status genhyp_surface_vertex_values(const genhyp_surface* surface, const char* json_text,
                                           double* out);
genhyp_status genhyp_cell_surface_edge_values(const genhyp_cell_surface* surface,
                                              const char* json_text, double* out);
genhyp_status genhyp_cell_surface_face_values(const genhyp_cell_surface* surface,
                                              const char* json_text, double* out);

/* ---- Penner edge invariants -------------------------------------------- */

/* z[e] = sum of the two radius invariants at edge e (arrays by edge index). */
genhyp_status genhyp_penner_map(const genhyp_surface* surface, const double* lengths, double* z);
/* feasible = 1 iff every edge-cycle sum is positive; when infeasible a JSON
 * array of the witness cycle's edge ids is returned (may be NULL if not
 * wanted). */
genhyp_status genhyp_penner_check(const genhyp_surface* surface, const double* z, int* feasible,
                                  char** witness_json);
genhyp_status genhyp_penner_solve(const genhyp_surface* surface, const double* z, double tol,
                                  int max_iter, double* lengths, int* iterations, double* residual);

/* ---- generalized circle packing ----------------------------------------- */

genhyp_status genhyp_packing_curvature(const genhyp_surface* surface, int eps, int delta,
                                       const double* phi, const double* r, double* curvature);
genhyp_status genhyp_packing_solve(const genhyp_surface* surface, int eps, int delta,
                                   const double* phi, const double* target, double tol,
                                   int max_iter, double* r, int* iterations, double* residual);
/* Integrates the target curvature flow; writes the final radii and, when
 * trace_csv is non-NULL, the full trace as CSV
 * (header t,<vertex ids...>,K_<vertex ids...>,gradnorm). */
genhyp_status genhyp_packing_flow(const genhyp_surface* surface, int eps, int delta,
                                  const double* phi, const double* r0, const double* target,
                                  double dt, int steps, double* r_final, char** trace_csv);

/* ---- generalized circle pattern ----------------------------------------- */

genhyp_status genhyp_pattern_curvature(const genhyp_cell_surface* surface, int eps, int delta,
                                       double h, const double* theta, const double* r,
                                       double* curvature);
genhyp_status genhyp_pattern_solve(const genhyp_cell_surface* surface, int eps, int delta,
                                   double h, const double* theta, const double* target, double tol,
                                   int max_iter, double* r, int* iterations, double* residual);
genhyp_status genhyp_pattern_flow(const genhyp_cell_surface* surface, int eps, int delta, double h,
                                  const double* theta, const double* r0, const double* target,
                                  double dt, int steps, double* r_final, char** trace_csv);

#ifdef __cplusplus
}
#endif

#endif /* GENHYP_H */
