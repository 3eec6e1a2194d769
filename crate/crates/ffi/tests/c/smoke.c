#include <stdio.h>
#include <string.h>

#include "tamequot.h"

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);    \
      return 1;                                                     \
    }                                                               \
  } while (0)

int main(void) {
  uint64_t root = 0;
  CHECK(tq_primitive_root(7, 3, &root) == TQ_STATUS_OK && root == 2);
  CHECK(tq_primitive_root(6, 2, &root) == TQ_STATUS_NOT_PRIME);
  CHECK(strcmp(tq_status_name(TQ_STATUS_NOT_PRIME), "NotPrime") == 0);
  CHECK(tq_last_error_message() != NULL);

  const uint64_t weights[] = {1, 2};
  TqPresentation *p = NULL;
  CHECK(tq_presentation_new(3, weights, 2, &p) == TQ_STATUS_OK);
  CHECK(tq_presentation_generator_count(p) == 3);
  CHECK(tq_presentation_uniformizer(p) == 1);
  char *json = tq_presentation_json(p);
  CHECK(json != NULL && strstr(json, "s*c = b^3") != NULL);
  tq_string_free(json);
  tq_presentation_free(p);

  const uint64_t model_weights[] = {1, 0, 1};
  TqModel *m = NULL;
  CHECK(tq_model_new("projective:1", 2, model_weights, 3, &m) == TQ_STATUS_OK);
  int64_t lhs = 0, rhs = 0;
  bool pass = false;
  CHECK(tq_model_serre(m, &lhs, &rhs, &pass) == TQ_STATUS_OK && pass && lhs == 2);
  uint64_t counted = 0;
  int64_t predicted = 0;
  CHECK(tq_model_count(m, 5, &counted, &predicted) == TQ_STATUS_OK && counted == 6 && predicted == 6);
  tq_model_free(m);

  const char *argv[] = {"quotient", "--r", "2", "--weights", "1,1"};
  char *out = NULL;
  CHECK(tq_run_cli(5, argv, &out) == 0 && strstr(out, "s*c = b^2") != NULL);
  tq_string_free(out);

  puts("ok");
  return 0;
}
