"""Run every check suite on the shipped default configuration.

Equivalent to `conebraid verify --config configs/default.json`, kept as a
script so the whole experiment is reproducible with one command and the
summary table stays in the console log.
"""

import argparse
from pathlib import Path

from conebraid.config import load_config
from conebraid.report import emit_report
from conebraid.suites import plan_counts, run_suite

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default=ROOT / "configs" / "default.json")
    parser.add_argument("--out", default=ROOT / "out")
    parser.add_argument("--seed", type=int, default=None)
    args = parser.parse_args()

    config = load_config(args.config)
    plan = plan_counts(config, "all")
    print("plan:", ", ".join(f"{name}={n}" for name, n in plan))
    report = run_suite(config, "all", seed=args.seed)
    emit_report(report, args.out, "both")

    by_check: dict[str, list] = {}
    for row in report.sorted_rows():
        by_check.setdefault(row.check_id, []).append(row)
    print(f"{'check':42s} {'rows':>4s} {'worst residual':>15s} {'threshold':>10s} ok")
    for check_id, rows in sorted(by_check.items()):
        worst = max(r.residual for r in rows)
        ok = all(r.passed for r in rows)
        print(f"{check_id:42s} {len(rows):4d} {worst:15.6e} {rows[0].threshold:10.0e} {ok}")
    print(f"total {len(report.rows)} rows in {report.wall_time_s:.2f}s, all_passed={report.all_passed()}")
    return 0 if report.all_passed() else 1


if __name__ == "__main__":
    raise SystemExit(main())
