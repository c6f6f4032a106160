"""Time corpus verification.

    python3 scripts/bench_verify.py [--repeat 20] [--corpus FILE]
"""

from __future__ import annotations

import argparse
import statistics
import time
from dataclasses import dataclass

from qcalc.corpus import bundled_corpus, parse_corpus, verify


@dataclass
class Config:
    repeat: int = 20
    corpus: str | None = None


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description="Time parsing and checking of a .qeq corpus.")
    p.add_argument("--repeat", type=int, default=Config.repeat)
    p.add_argument("--corpus", default=None, help="defaults to the bundled corpus")
    cfg = Config(**vars(p.parse_args(argv)))

    path = cfg.corpus or str(bundled_corpus())
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    parse_times, check_times = [], []
    for _ in range(cfg.repeat):
        t0 = time.perf_counter()
        assertions = parse_corpus(text)
        t1 = time.perf_counter()
        rep = verify(assertions)
        t2 = time.perf_counter()
        parse_times.append(t1 - t0)
        check_times.append(t2 - t1)
    n = len(assertions)
    print(f"corpus: {path}")
    print(f"assertions: {n}  passed {rep.passed}  failed {rep.failed}  errata {rep.errata}")
    for label, ts in (("parse", parse_times), ("check", check_times)):
        med = statistics.median(ts)
        print(f"{label:6s} median {med * 1e3:8.2f} ms  ({med / n * 1e6:7.1f} us/assertion)")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
