"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs once per backend to confirm identical results, then the best of
``--repeat`` timings is reported.
"""

import argparse
import timeit

from ucdensity import search


def cases(quick):
    out = [
        ("enumerate n=4", lambda b: search.enumerate_ucf_counted(4, backend=b)),
        ("search n=4", lambda b: _sn(4, None, b)),
        ("search n=5", lambda b: _sn(5, None, b)),
    ]
    if not quick:
        out += [
            ("enumerate n=5", lambda b: search.enumerate_ucf_counted(5, backend=b)),
            ("search n=6 max_m=16", lambda b: _sn(6, 16, b)),
        ]
    return out


def _sn(n, max_m, backend):
    rec = search.compute_sn(n, max_m=max_m, backend=backend)
    return rec.sn, rec.minimizers, rec.families_explored


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="skip the slow pure-Python cases")
    args = parser.parse_args(argv)

    if search.BACKEND != "compiled":
        parser.error("the compiled kernel is not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'case':<22}{'compiled s':>12}{'python s':>12}{'speedup':>10}")
    for name, fn in cases(args.quick):
        if fn("compiled") != fn("python"):
            raise SystemExit(f"{name}: backends disagree")
        fast = min(timeit.repeat(lambda: fn("compiled"), number=1, repeat=args.repeat))
        slow = min(timeit.repeat(lambda: fn("python"), number=1, repeat=args.repeat))
        print(f"{name:<22}{fast:>12.4f}{slow:>12.4f}{slow / fast:>9.0f}x")


if __name__ == "__main__":
    main()
