"""Audit every identity in each (class, representation) pair and write JSON reports."""

import argparse
import time
from pathlib import Path

from twoproduct.algebra import CompositionClass
from twoproduct.audit import run_audit
from twoproduct.config import AuditConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=AuditConfig.samples)
    ap.add_argument("--seed", type=int, default=AuditConfig.seed)
    ap.add_argument("--out", type=Path, default=Path("results/audits"))
    args = ap.parse_args()
    cfg = AuditConfig(samples=args.samples, seed=args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    jobs = [(name, rep, False, cfg.samples) for name, rep in cfg.pairs]
    jobs += [(name, rep, True, cfg.composite_samples)
             for name, rep in cfg.pairs if name != "hyperbolic" or rep == "matrix"]
    all_ok = True
    for name, rep, composite, n in jobs:
        start = time.perf_counter()
        report = run_audit(CompositionClass.named(name), rep, n, cfg.seed, composite=composite)
        elapsed = time.perf_counter() - start
        tag = f"{name}-{rep}{'-composite' if composite else ''}"
        (args.out / f"{tag}.json").write_text(report.to_json() + "\n")
        status = "PASS" if report.passed else "FAIL"
        print(f"{status}  {tag:<28} {n:>4} samples  {elapsed:6.2f} s")
        all_ok &= report.passed
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
