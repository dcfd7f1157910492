#include <math.h>
#include <stdio.h>
#include <string.h>

#include "pmconv.h"

int main(void) {
  PmIdeal *i = NULL;
  PmSet *a = NULL;
  bool in = false;
  if (pm_ideal_parse("join(powerset(ap:0,4), powerset(ap:3,4))", &i) != PM_STATUS_OK) return 1;
  if (pm_set_parse("ap:0,4 | ap:3,4", &a) != PM_STATUS_OK) return 2;
  if (pm_ideal_contains(i, a, &in) != PM_STATUS_OK || !in) return 3;
  pm_set_free(a);
  pm_ideal_free(i);

  double loc[2] = {0.5, INFINITY};
  double val[2] = {0.75, 1.0};
  PmDdf *g = NULL;
  double d = 0.0;
  if (pm_ddf_new(loc, val, 2, &g) != PM_STATUS_OK) return 4;
  if (pm_distance_to_identity(g, &d) != PM_STATUS_OK || d != 0.5) return 5;
  pm_ddf_free(g);

  if (pm_set_parse("ap:0,0", &a) == PM_STATUS_OK) return 6;
  char *msg = pm_last_error();
  if (msg == NULL || strlen(msg) == 0) return 7;
  pm_string_free(msg);
  puts("ok");
  return 0;
}
