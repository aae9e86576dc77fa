#include <stdio.h>
#include <string.h>

#include "bmcp.h"

#define CHECK(cond)                                                      \
  do {                                                                   \
    if (!(cond)) {                                                       \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);         \
      return 1;                                                          \
    }                                                                    \
  } while (0)

int main(void) {
  const char *text = "BMCP 1\n3 3 10\n4 5 6\n3 7 2\n2 1 2\n2 2 3\n2 1 3\n";
  BmcpInstance *inst = NULL;
  CHECK(bmcp_instance_parse(text, &inst) == BMCP_STATUS_OK);
  CHECK(bmcp_instance_item_count(inst) == 3);

  uint64_t opt = 0;
  CHECK(bmcp_exact_optimum(inst, &opt) == BMCP_STATUS_OK);
  CHECK(opt == 12);

  BmcpSolverConfig cfg = bmcp_solver_config_default();
  cfg.rounds = 2;
  cfg.seed = 5;
  BmcpRunResult *run = NULL;
  CHECK(bmcp_solve(inst, &cfg, &run) == BMCP_STATUS_OK);
  CHECK(bmcp_run_result_objective(run) == 12);
  size_t items[3];
  size_t k = bmcp_run_result_selected_count(run);
  CHECK(bmcp_run_result_selected_items(run, items, 3) == BMCP_STATUS_OK);
  CHECK(k == 2 && items[0] == 0);

  BmcpInstance *bad = NULL;
  CHECK(bmcp_instance_parse("BMCP 2\n", &bad) == BMCP_STATUS_PARSE);
  CHECK(strstr(bmcp_last_error(), "line 1") != NULL);

  double a[] = {3, 5, 8, 12, 20};
  double b[] = {2, 3, 5, 8, 15};
  BmcpWilcoxon w;
  CHECK(bmcp_wilcoxon(a, b, 5, &w) == BMCP_STATUS_OK);
  CHECK(w.p_value == 0.0625);

  bmcp_run_result_free(run);
  bmcp_instance_free(inst);
  printf("ok\n");
  return 0;
}
