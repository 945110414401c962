"""Check the associativity identity with the extended solution family, case by case.

    python scripts/rtc_sweep.py [--max-rank N]
"""
import argparse
import time

from gerbelevels.cases import all_cases
from gerbelevels.center import center_data
from gerbelevels.cohomology import lemma3_extend, minimal_level, verify_rtc


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-rank", type=int, default=6)
    args = parser.parse_args()
    bad = 0
    for spec in all_cases(args.max_rank):
        start = time.perf_counter()
        cd = center_data(spec.root_system(), spec.group())
        rep = minimal_level(cd, classify=False)
        ok, where = verify_rtc(cd, rep.k_min, lemma3_extend(cd, rep.k_min, rep.solution))
        bad += not ok
        status = "ok" if ok else f"FAIL {where}"
        print(f"{spec.name:<6} {spec.subgroup:<8} k={rep.k_min}  {status}  "
              f"{time.perf_counter() - start:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
