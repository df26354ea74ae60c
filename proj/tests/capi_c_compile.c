/* Compiled as C to keep the public header C-clean. */
#include "nmkdv.h"

const char* nmkdv_capi_c_probe(void) { return nmkdv_strerror(NMKDV_OK); }
