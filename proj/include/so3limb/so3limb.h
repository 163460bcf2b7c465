/* C interface to the so3limb screw-theory constraint-analysis library.
 *
 * All functions return so3_status; SO3_OK means success. On failure the
 * thread-local message from so3_last_error() describes what went wrong.
 * Strings returned through char** are heap-allocated and must be released
 * with so3_string_free(); handles with their matching *_free function.
 */
#ifndef SO3LIMB_H
#define SO3LIMB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum so3_status {
    SO3_OK = 0,
    SO3_ERR_PARSE = 1,          /* malformed limb spec or descriptor id */
    SO3_ERR_VALIDATION = 2,     /* structurally invalid limb */
    SO3_ERR_ARGUMENT = 3,       /* bad argument (index, counts, format) */
    SO3_ERR_SINGULAR = 4,       /* singular or locked configuration */
    SO3_ERR_UNKNOWN_DESCRIPTOR = 5,
    SO3_ERR_INTERNAL = 6
} so3_status;

typedef enum so3_format {
    SO3_FORMAT_HUMAN = 0,
    SO3_FORMAT_CSV = 1,
    SO3_FORMAT_JSONL = 2
} so3_format;

/* Opaque validated limb model. */
typedef struct so3_limb so3_limb;

const char* so3_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* so3_last_error(void);

void so3_string_free(char* s);

/* ---- limb handles ------------------------------------------------------ */

/* Parses the limb spec text format and builds the limb. Parse warnings are
 * appended to the report produced by so3_analyze_render. */
so3_status so3_limb_parse_text(const char* text, so3_limb** out);
so3_status so3_limb_parse_file(const char* path, so3_limb** out);
void so3_limb_free(so3_limb* limb);

so3_status so3_limb_joint_count(const so3_limb* limb, int* out);
/* zero-pitch (revolute) and infinite-pitch (prismatic) joint counts */
so3_status so3_limb_signature(const so3_limb* limb, int* zero_pitch, int* infinite_pitch);
so3_status so3_limb_constraint_count(const so3_limb* limb, int* out);
/* coords = [direction; moment] of constraint wrench `index` about the center */
so3_status so3_limb_constraint_wrench(const so3_limb* limb, int index, double coords[6]);
so3_status so3_limb_so3_necessary(const so3_limb* limb, int* out);

/* ---- reports ----------------------------------------------------------- */

/* Catalog of the 73 limb variants. category may be NULL or a system code
 * such as "5s0". */
so3_status so3_catalog_render(so3_format format, const char* category, char** out);
so3_status so3_catalog_size(int* out);

/* symmetric / asymmetric / total robot counts for a pool of limb_types. */
so3_status so3_counts(int limb_types, long long* symmetric, long long* asymmetric,
                      long long* total);

/* Constraint report for a parsed limb. checklist_id may be NULL; when the
 * parsed spec embeds a descriptor id it is used unless overridden here. */
so3_status so3_analyze_render(const so3_limb* limb, const char* checklist_id, so3_format format,
                              char** out);

/* Verification harness. descriptor_id NULL means every catalog row.
 * all_pass is set to 1 iff every non-redundant descriptor passed. */
so3_status so3_verify_render(const char* descriptor_id, int trials, uint64_t seed,
                             so3_format format, char** out, int* all_pass);

/* Builds a three-limb robot from catalog descriptor ids and verifies the
 * platform motion; ok is set to 1 iff the platform is SO(3). */
so3_status so3_robot_render(const char* id1, const char* id2, const char* id3, uint64_t seed,
                            so3_format format, char** out, int* ok);

/* Geometric proposition suite; ok is 1 iff all residuals are <= 1e-10. */
so3_status so3_props_render(int trials, uint64_t seed, so3_format format, char** out, int* ok);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SO3LIMB_H */
