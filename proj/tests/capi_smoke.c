/* The public header must compile as C and the library must link from C. */
#include <stdio.h>
#include <string.h>

#include "tailspace/tailspace.h"

int main(void) {
  double v = 0.0;
  ts_poly* p = NULL;
  double norm = 0.0;
  if (ts_hermite_eval(3, 1.0, &v) != TS_OK || v != -2.0) return 1;
  if (ts_poly_from_json("{\"basis\": \"hermite\", \"dim\": 1, \"terms\": "
                        "[{\"alpha\": [1], \"re\": 1}]}", &p) != TS_OK)
    return 1;
  if (ts_poly_lp_norm(p, 2.0, 1e-10, &norm, NULL, NULL) != TS_OK) return 1;
  ts_poly_free(p);
  if (norm < 1.0 - 1e-14 || norm > 1.0 + 1e-14) return 1;
  printf("tailspace %s ok\n", ts_version());
  return 0;
}
