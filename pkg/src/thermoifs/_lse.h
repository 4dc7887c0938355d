/* Vectorisable exp-sum used by _kernels.pyx.
 *
 * With THERMOIFS_MVEC defined (x86-64 glibc, linked against libmvec) exp is
 * declared as a SIMD function so GCC calls the vector variant; otherwise
 * the loop runs on scalar libm exp. Either way no fast-math flags are
 * needed, so infinities and NaNs keep their IEEE meaning.
 */
#ifndef THERMOIFS_LSE_H
#define THERMOIFS_LSE_H

#include <math.h>

#if defined(THERMOIFS_MVEC) && defined(__x86_64__) && defined(__GNUC__)
__attribute__((__simd__("notinbranch"))) double exp(double);
/* runtime dispatch: 4-wide vector exp where AVX2 is available */
#define THERMOIFS_CLONES __attribute__((target_clones("avx2", "default")))
#else
#define THERMOIFS_CLONES
#endif

THERMOIFS_CLONES static double thermoifs_sum_exp(const double *buf, long k, double m)
{
    double s = 0.0;
#pragma omp simd reduction(+:s)
    for (long i = 0; i < k; i++)
        s += exp(buf[i] - m);
    return s;
}

#endif
