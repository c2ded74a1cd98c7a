/* Licensed under the Apache License, Version 2.0. */
#include <stdio.h>

#include "prismext.h"

int main(void) {
  PxGraph *c5 = NULL, *p = NULL;
  PxColoring *c = NULL, *ext = NULL;
  PxVerdict verdict;
  uint32_t chi = 0;

  if (px_graph_build(PX_FAMILY_CYCLE, 5, &c5) != PX_STATUS_OK) return 1;
  if (px_graph_prism(c5, &p) != PX_STATUS_OK) return 1;
  if (px_chromatic_index(p, 0, &chi) != PX_STATUS_OK) return 1;
  printf("chi %u\n", chi);

  if (px_coloring_parse(p, "4 2\n0 1 1\n5 6 2\n", &c) != PX_STATUS_OK) {
    fprintf(stderr, "%s\n", px_last_error());
    return 1;
  }
  if (px_extend_auto(c, 0, &verdict, &ext, NULL) != PX_STATUS_OK) return 1;
  printf("verdict %d colored %zu\n", (int)verdict, px_coloring_colored_count(ext));

  px_coloring_free(ext);
  px_coloring_free(c);
  px_graph_free(p);
  px_graph_free(c5);
  return 0;
}
