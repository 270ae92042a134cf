#include "defs.h"

int clamp(int v, int lo, int hi) {
    if (v < lo) {
        return lo;
    }
    if (v > hi) {
        return hi;
    }
    return v;
}

static unsigned hash_mix(unsigned a, unsigned b) {
    unsigned h = a * 31u + b;
    h = h ^ (h >> 16);
    return h;
}
