"""Console entry point.

BLAS and OpenMP thread counts are pinned to 1 before numpy is imported:
multi-threaded reductions may change summation order between runs, and the
report files are meant to be byte-identical for identical configs.
"""

import os


def main(argv=None) -> int:
    for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, "1")
    from .cli import run_main

    return run_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
