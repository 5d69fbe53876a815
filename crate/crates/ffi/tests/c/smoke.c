#include <stdio.h>
#include <string.h>

#include "homex.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);         \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    HomexComplex *x = NULL;
    CHECK(homex_build_mh(2, 1, &x) == HOMEX_STATUS_OK);
    size_t n = 0, betti = 0, tlen = 0;
    CHECK(homex_complex_num_vertices(x, &n) == HOMEX_STATUS_OK && n == 5);
    CHECK(homex_homology_group(x, 1, true, &betti, NULL, 0, &tlen) == HOMEX_STATUS_OK);
    CHECK(betti == 1 && tlen == 0);
    homex_complex_free(x);

    const char *rp2 = "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 6 2\n2 3 5\n3 4 6\n4 5 2\n5 6 3\n6 2 4\n";
    CHECK(homex_complex_parse(rp2, &x) == HOMEX_STATUS_OK);
    uint64_t torsion[4];
    CHECK(homex_homology_group(x, 1, false, &betti, torsion, 4, &tlen) == HOMEX_STATUS_OK);
    CHECK(betti == 0 && tlen == 1 && torsion[0] == 2);
    char *text = NULL;
    CHECK(homex_complex_to_sc(x, &text) == HOMEX_STATUS_OK && strncmp(text, "1 2 3\n", 6) == 0);
    homex_string_free(text);
    homex_complex_free(x);

    size_t bound = 0;
    CHECK(homex_bound_rel(4, 2, 3, &bound) == HOMEX_STATUS_DOMAIN_ERROR);
    CHECK(strstr(homex_last_error_message(), "threshold") != NULL);
    CHECK(homex_find_minimal_witness(2, 1, HOMEX_SEARCH_MODE_PURE, 0, 0, 1, &n, NULL) == HOMEX_STATUS_OK);
    CHECK(n == 5);
    puts("ok");
    return 0;
}
