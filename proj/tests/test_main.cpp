#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <mpfr.h>

int main(int argc, char** argv) {
    doctest::Context context(argc, argv);
    const int rc = context.run();
    // release mpfr's internal constant caches so leak checkers stay quiet
    mpfr_free_cache();
    return rc;
}
