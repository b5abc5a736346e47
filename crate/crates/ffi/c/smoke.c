#include <stdio.h>
#include "surface_bracket.h"

static const char *GRID =
    "{\"name\":\"g\",\"crossings\":[{\"darts\":[0,1,2,3]}],\"edges\":[[0,2],[1,3]]}";

int main(int argc, char **argv) {
    const char *json = argc > 1 ? argv[1] : GRID;
    SbDiagram *d = NULL;
    SbStatus s = sb_diagram_from_json(json, &d);
    if (s != SB_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", sb_last_error());
        return s;
    }
    size_t genus = 0;
    sb_diagram_genus(d, &genus);
    char *poly = NULL;
    s = sb_bracket(d, 0, 0, &poly);
    if (s == SB_STATUS_OK) {
        printf("genus %zu: %s\n", genus, poly);
        sb_string_free(poly);
    } else {
        fprintf(stderr, "bracket: %s\n", sb_last_error());
    }
    sb_diagram_free(d);
    return s;
}
