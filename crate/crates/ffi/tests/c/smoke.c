#include <stdio.h>
#include <string.h>

#include "permlab.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,    \
              #cond, pm_last_error());                           \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  size_t images[] = {1, 2, 0, 3};
  PmPerm *p = NULL, *inv = NULL, *id = NULL;
  CHECK(pm_perm_new(images, 4, &p) == PM_STATUS_OK);
  CHECK(pm_perm_inverse(p, &inv) == PM_STATUS_OK);
  CHECK(pm_perm_compose(p, inv, &id) == PM_STATUS_OK);
  for (size_t x = 0; x < 4; x++) {
    size_t y = 99;
    CHECK(pm_perm_apply(id, x, &y) == PM_STATUS_OK && y == x);
  }
  size_t bad[] = {0, 0};
  PmPerm *q = NULL;
  CHECK(pm_perm_new(bad, 2, &q) == PM_STATUS_INVALID_ARGUMENT);
  CHECK(q == NULL && strlen(pm_last_error()) > 0);

  PmLattice *l = NULL;
  size_t size = 0;
  CHECK(pm_lattice_new(4, &l) == PM_STATUS_OK);
  CHECK(pm_lattice_size(l, 4, &size) == PM_STATUS_OK && size == 215);
  bool pass = false;
  char *report = NULL;
  CHECK(pm_lattice_verify(l, 3, &pass, &report) == PM_STATUS_OK && pass);
  CHECK(strstr(report, "\"level-3\"") != NULL);
  pm_string_free(report);
  char *dot = NULL;
  CHECK(pm_lattice_export(l, 2, PM_FORMAT_DOT, &dot) == PM_STATUS_OK);
  CHECK(strncmp(dot, "digraph", 7) == 0);
  pm_string_free(dot);
  CHECK(pm_lattice_size(l, 9, &size) == PM_STATUS_CAP_EXCEEDED);

  pm_lattice_free(l);
  pm_perm_free(id);
  pm_perm_free(inv);
  pm_perm_free(p);
  puts("ok");
  return 0;
}
